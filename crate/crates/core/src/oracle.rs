//! Brute-force reference expansions of every polynomial family the
//! constructions target. Everything here enumerates definitions directly
//! (subsets, permutations, injections) with no shared machinery with the
//! branching-program side, so it can serve as an independent oracle.

use itertools::Itertools;

use crate::error::Result;
use crate::poly::{check_guard, permutation_parity, NcPoly, RectVars, Word};
use crate::scalar::{sign_scalar, Scalar};

fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

fn falling(n: u64, k: u64) -> u128 {
    (0..k as u128).map(|i| n as u128 - i).product()
}

/// `S*_{n,k}`: every multilinear degree-`k` word over `n` variables, each
/// with coefficient 1. Enumerated as subsets times permutations.
pub fn s_star<S: Scalar>(n: u32, k: u32) -> Result<NcPoly<S>> {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    check_guard(crate::sets::binomial(n as u64, k as u64) * factorial(k as u64))?;
    let mut out = NcPoly::new(n);
    for subset in (0..n).combinations(k as usize) {
        for perm in subset.iter().copied().permutations(k as usize) {
            out.add_term(Word(perm), S::one());
        }
    }
    Ok(out)
}

/// Rectangular permanent of the `k x n` symbolic matrix: the sum over
/// injections `[k] -> [n]` of the row-ordered cell product.
pub fn rect_permanent<S: Scalar>(k: u32, n: u32, commutative: bool) -> Result<NcPoly<S>> {
    assert!(k <= n, "need k <= n");
    check_guard(falling(n as u64, k as u64))?;
    let grid = RectVars::new(k, n);
    let mut out = if commutative {
        NcPoly::new_commutative(grid.nvars())
    } else {
        NcPoly::new(grid.nvars())
    };
    for image in (0..n).permutations(k as usize) {
        let word = Word(
            image
                .iter()
                .enumerate()
                .map(|(row, &col)| grid.var(row as u32, col))
                .collect(),
        );
        out.add_term(word, S::one());
    }
    Ok(out)
}

/// Noncommutative determinant of the `k x k` symbolic matrix, rows in
/// left-to-right order, signed by permutation parity.
pub fn determinant<S: Scalar>(k: u32) -> Result<NcPoly<S>> {
    assert!(k >= 1);
    check_guard(factorial(k as u64))?;
    let grid = RectVars::new(k, k);
    let mut out = NcPoly::new(grid.nvars());
    for perm in (0..k).permutations(k as usize) {
        let word = Word(
            perm.iter()
                .enumerate()
                .map(|(row, &col)| grid.var(row as u32, col))
                .collect(),
        );
        out.add_term(word, sign_scalar(permutation_parity(&perm)));
    }
    Ok(out)
}

/// Rectangular determinant of the `k x n` symbolic matrix: the sum over all
/// size-`k` column subsets of the determinant of that square submatrix.
/// Returned in commutative mode. Each injection appears with the parity of
/// its value pattern.
pub fn rect_determinant<S: Scalar>(k: u32, n: u32) -> Result<NcPoly<S>> {
    assert!(1 <= k && k <= n, "need 1 <= k <= n");
    check_guard(crate::sets::binomial(n as u64, k as u64) * factorial(k as u64))?;
    let grid = RectVars::new(k, n);
    let mut out = NcPoly::new_commutative(grid.nvars());
    for cols in (0..n).combinations(k as usize) {
        for perm in (0..k as usize).permutations(k as usize) {
            // Row i takes the perm[i]-th smallest chosen column.
            let word = Word(
                perm.iter()
                    .enumerate()
                    .map(|(row, &pos)| grid.var(row as u32, cols[pos]))
                    .collect(),
            );
            let parity = permutation_parity(&perm.iter().map(|&p| p as u32).collect::<Vec<_>>());
            out.add_term(word, sign_scalar(parity));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = NcPoly<Rational>;

    fn one() -> Rational {
        Rational::from_int(1)
    }

    #[test]
    fn s_star_two_two() {
        let p: P = s_star(2, 2).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Word(vec![0, 1])), one());
        assert_eq!(p.coeff(&Word(vec![1, 0])), one());
    }

    #[test]
    fn s_star_degree_one() {
        let p: P = s_star(3, 1).unwrap();
        assert_eq!(p.num_terms(), 3);
        for v in 0..3 {
            assert_eq!(p.coeff(&Word(vec![v])), one());
        }
    }

    #[test]
    fn s_star_four_three_term_count() {
        // C(4,3) * 3! = 24 distinct multilinear words, all coefficient 1.
        let p: P = s_star(4, 3).unwrap();
        assert_eq!(p.num_terms(), 24);
        assert!(p.iter().all(|(w, c)| w.is_multilinear() && *c == one()));
    }

    #[test]
    fn rect_permanent_single_row() {
        let p: P = rect_permanent(1, 3, false).unwrap();
        assert_eq!(p.num_terms(), 3);
        let grid = RectVars::new(1, 3);
        for c in 0..3 {
            assert_eq!(p.coeff(&Word(vec![grid.var(0, c)])), one());
        }
    }

    #[test]
    fn rect_permanent_square_two() {
        let p: P = rect_permanent(2, 2, false).unwrap();
        let g = RectVars::new(2, 2);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Word(vec![g.var(0, 0), g.var(1, 1)])), one());
        assert_eq!(p.coeff(&Word(vec![g.var(0, 1), g.var(1, 0)])), one());
    }

    #[test]
    fn rect_permanent_two_three_injections() {
        let p: P = rect_permanent(2, 3, false).unwrap();
        assert_eq!(p.num_terms(), 6);
    }

    #[test]
    fn determinant_two_by_two() {
        let p: P = determinant(2).unwrap();
        let g = RectVars::new(2, 2);
        assert_eq!(p.coeff(&Word(vec![g.var(0, 0), g.var(1, 1)])), one());
        assert_eq!(p.coeff(&Word(vec![g.var(0, 1), g.var(1, 0)])), one().neg());
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn rect_determinant_single_row() {
        let p: P = rect_determinant(1, 2).unwrap();
        let g = RectVars::new(1, 2);
        assert_eq!(p.coeff(&Word(vec![g.var(0, 0)])), one());
        assert_eq!(p.coeff(&Word(vec![g.var(0, 1)])), one());
    }

    #[test]
    fn rect_determinant_matches_per_subset_determinants() {
        // rdet(2,3) is the sum of three 2x2 determinants; check each
        // column pair against a relabeled square determinant expansion.
        let k = 2u32;
        let n = 3u32;
        let rdet: P = rect_determinant(k, n).unwrap();
        let grid = RectVars::new(k, n);
        let mut rebuilt = NcPoly::new_commutative(grid.nvars());
        for cols in (0..n).combinations(k as usize) {
            let det: P = determinant(k).unwrap();
            for (w, c) in det.iter() {
                let relabeled = Word(
                    w.0.iter()
                        .map(|&id| {
                            let (row, local) = RectVars::new(k, k).cell(id);
                            grid.var(row, cols[local as usize])
                        })
                        .collect(),
                );
                rebuilt.add_term(relabeled, c.clone());
            }
        }
        assert_eq!(rdet, rebuilt);
    }

    #[test]
    fn symmetrize_of_sorted_monomials_is_s_star() {
        for (n, k) in [(3u32, 2u32), (4, 2), (4, 3), (5, 3)] {
            let mut sorted_sum: P = NcPoly::new(n);
            for subset in (0..n).combinations(k as usize) {
                sorted_sum.add_term(Word(subset), one());
            }
            let sym = sorted_sum.symmetrize().unwrap();
            assert_eq!(sym, s_star(n, k).unwrap());
        }
    }

    #[test]
    fn set_multilinearize_bridges_s_star_to_rect_permanent() {
        for (n, k) in [(3u32, 2u32), (4, 2), (4, 3)] {
            let star: P = s_star(n, k).unwrap();
            let grid = RectVars::new(k, n);
            assert_eq!(
                star.set_multilinearize(grid).unwrap(),
                rect_permanent(k, n, false).unwrap()
            );
        }
    }

    #[test]
    fn symmetrized_polynomials_are_reverse_invariant() {
        for (n, k) in [(3u32, 2u32), (4, 3)] {
            let star: P = s_star(n, k).unwrap();
            assert_eq!(star.reverse(), star);
        }
    }

    #[test]
    fn s_star_hadamard_idempotent() {
        let p: P = s_star(4, 2).unwrap();
        assert_eq!(p.hadamard(&p), p);
    }

    #[test]
    fn guard_rejects_huge_requests() {
        assert!(s_star::<Rational>(40, 12).is_err());
    }
}
