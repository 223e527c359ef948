//! Explicit branching-program constructions.
//!
//! The flagship construction computes the symmetrized elementary symmetric
//! polynomial `S*_{n,k}` from two multi-output stages: a subset lattice that
//! computes the symmetrization of every squarefree monomial of half degree,
//! and a superset-sum stage realized as re-wiring layers of scalar edges. An
//! inclusion-exclusion mirror join then cancels everything except the
//! multilinear words. Renaming variables by position turns the same program
//! into one for the noncommutative rectangular permanent.
//!
//! Subset-chain programs with insertion signs give the `2^k`-node
//! noncommutative determinant, a weakly equivalent Vandermonde variant, and
//! the commutative rectangular determinant via a Hadamard filter.

use std::collections::HashMap;

use crate::abp::{hadamard_abp, hadamard_abp_pruned, mirror_join, nc_lift, Abp, LinForm};
use crate::error::{Error, Result};
use crate::poly::{PolyScalar, RectVars};
use crate::scalar::{sign_scalar, Scalar};
use crate::sets::{elements, insert_parity, mask_label, subsets_of_size, subsets_up_to};

/// A multi-output program whose sinks are indexed by subsets; `sink_masks`
/// records which subset each sink computes, in sink order.
#[derive(Clone, Debug)]
pub struct SubsetFamilyAbp<S: Scalar> {
    pub abp: Abp<S>,
    pub sink_masks: Vec<u64>,
}

fn guarded_pow2(k: u32) -> Result<()> {
    if k >= 24 {
        return Err(Error::SizeGuard { needed: 1u128 << k, limit: 1 << 23 });
    }
    Ok(())
}

/// Multi-output program whose sink for each size-`h` subset `A` computes the
/// symmetrization of `prod_{j in A} y_j`, built on the recurrence
/// `m*_A = sum_{j in A} m*_{A \ {j}} * y_j`.
pub fn symmetrized_subsets_abp<S: Scalar>(n: u32, h: u32) -> SubsetFamilyAbp<S> {
    assert!(h <= n, "need h <= n");
    let layer_sets: Vec<Vec<u64>> = (0..=h).map(|l| subsets_of_size(n, l)).collect();
    let layers: Vec<usize> = layer_sets.iter().map(|s| s.len()).collect();
    let mut abp = Abp::new(n, layers);
    for l in 1..=h as usize {
        let prev_index: HashMap<u64, usize> =
            layer_sets[l - 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for (to, &mask) in layer_sets[l].iter().enumerate() {
            for j in elements(mask) {
                let from = prev_index[&(mask & !(1u64 << j))];
                abp.add_edge(l - 1, from, to, LinForm::var(j));
            }
        }
    }
    for (l, sets) in layer_sets.iter().enumerate() {
        for (i, &m) in sets.iter().enumerate() {
            abp.set_label(l, i, mask_label(m));
        }
    }
    abp.set_sinks((0..layer_sets[h as usize].len()).collect());
    abp.normalize();
    SubsetFamilyAbp { abp, sink_masks: layer_sets[h as usize].clone() }
}

/// Extends the subset program by `n` re-wiring layers of scalar edges that
/// accumulate superset sums: the final sink for `S` computes
/// `sum_{S ⊆ A, |A| = h} m*_A`. Working from stage `i = n` down to `0`,
/// stage `i-1` of subset `S` adds stage `i` of `S` and of `S ∪ {i}`.
pub fn superset_sums_abp<S: Scalar>(n: u32, h: u32) -> SubsetFamilyAbp<S> {
    assert!(h <= n, "need h <= n");
    let base = symmetrized_subsets_abp::<S>(n, h);
    let all_sets = subsets_up_to(n, h);
    let index: HashMap<u64, usize> = all_sets.iter().enumerate().map(|(i, &m)| (m, i)).collect();

    let mut layers = base.abp.layer_sizes().to_vec();
    layers.extend(std::iter::repeat_n(all_sets.len(), n as usize));
    let mut abp = Abp::new(n, layers);
    for e in base.abp.edges() {
        abp.add_edge(e.layer, e.from, e.to, e.label.clone());
    }
    for l in 0..=h as usize {
        for u in 0..abp.layer_sizes()[l] {
            if let Some(text) = base.abp.label(l, u) {
                let text = text.to_string();
                abp.set_label(l, u, text);
            }
        }
    }

    for t in 1..=n {
        let layer = (h + t) as usize - 1; // edges from node-layer `layer` to `layer + 1`
        let elem_bit = n - t; // stage recurrence inserts element with this 0-based bit
        for (to, &mask) in all_sets.iter().enumerate() {
            let prev_node = |m: u64| -> Option<usize> {
                if t == 1 {
                    base.sink_masks.iter().position(|&s| s == m)
                } else {
                    index.get(&m).copied()
                }
            };
            if let Some(from) = prev_node(mask) {
                abp.add_edge(layer, from, to, LinForm::scalar(S::one()));
            }
            if mask & (1u64 << elem_bit) == 0 {
                if let Some(from) = prev_node(mask | (1u64 << elem_bit)) {
                    abp.add_edge(layer, from, to, LinForm::scalar(S::one()));
                }
            }
            abp.set_label(layer + 1, to, mask_label(mask));
        }
    }
    abp.set_sinks((0..all_sets.len()).collect());
    abp.normalize();

    // Pruning only removes interior nodes: every sink survives, in order.
    debug_assert_eq!(abp.sinks().len(), all_sets.len());
    SubsetFamilyAbp { abp, sink_masks: all_sets }
}

/// Single-output program for `S*_{n,k}`: every multilinear degree-`k` word
/// over `n` variables with coefficient 1.
///
/// The degree splits as `ceil(k/2)` on the left and `floor(k/2)` on the
/// mirrored right; inclusion-exclusion runs over the common subsets of size
/// at most `floor(k/2)` with link weight `(-1)^|S|`.
pub fn s_star_abp<S: Scalar>(n: u32, k: u32) -> Result<Abp<S>> {
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let h_left = k.div_ceil(2);
    let h_right = k / 2;
    let left = superset_sums_abp::<S>(n, h_left);
    let right = if h_left == h_right { left.clone() } else { superset_sums_abp::<S>(n, h_right) };

    // Keep only the left sinks whose subsets also appear on the right.
    let mut left_abp = left.abp;
    let kept: Vec<usize> = left
        .sink_masks
        .iter()
        .enumerate()
        .filter(|(_, &m)| m.count_ones() <= h_right)
        .map(|(i, _)| left_abp.sinks()[i])
        .collect();
    let kept_masks: Vec<u64> =
        left.sink_masks.iter().copied().filter(|m| m.count_ones() <= h_right).collect();
    left_abp.set_sinks(kept);
    left_abp.normalize();
    debug_assert_eq!(kept_masks, right.sink_masks);

    let links: Vec<S> =
        kept_masks.iter().map(|m| sign_scalar(m.count_ones() % 2 == 1)).collect();
    mirror_join(&left_abp, &right.abp, &links)
}

/// Noncommutative rectangular permanent program over the `k x n` grid,
/// obtained from the `S*` program by renaming the variable on every linear
/// edge to the grid variable of its position: a letter consumed at degree
/// `d` lands in row `d + 1`.
pub fn rect_permanent_nc_abp<S: Scalar>(k: u32, n: u32) -> Result<Abp<S>> {
    if k > n {
        return Err(Error::InvalidParameter(format!("need k <= n, got k={k}, n={n}")));
    }
    let star = s_star_abp::<S>(n, k)?;
    let degrees = star.node_degrees()?;
    let grid = RectVars::new(k, n);
    let mut out = Abp::new(grid.nvars(), star.layer_sizes().to_vec());
    for e in star.edges() {
        if e.label.is_scalar() {
            out.add_edge(e.layer, e.from, e.to, e.label.clone());
            continue;
        }
        let row =
            degrees[e.layer][e.from].expect("normalized program has no unreachable nodes") as u32;
        let mut label = LinForm::zero();
        for (v, c) in e.label.terms() {
            label.add_term(grid.var(row, v), c.clone());
        }
        out.add_edge(e.layer, e.from, e.to, label);
    }
    out.set_sources(star.sources().to_vec());
    out.set_sinks(star.sinks().to_vec());
    out.normalize();
    Ok(out)
}

/// Chain product of insertion signs along a permutation (0-based images):
/// equals the parity sign of the permutation.
pub fn insertion_sign_chain(perm: &[u32]) -> i32 {
    let k = perm.len() as u32;
    debug_assert!(perm.iter().all(|&v| v < k));
    let mut seen = 0u64;
    let mut parity = false;
    for &v in perm {
        debug_assert!(seen & (1 << v) == 0, "not a permutation");
        parity ^= insert_parity(seen, v);
        seen |= 1 << v;
    }
    if parity {
        -1
    } else {
        1
    }
}

/// Subset-chain program over `[k]`: layer `l` holds the size-`l` subsets and
/// each edge inserts one new element, labeled by the callback.
fn subset_chain_abp<S: Scalar>(
    k: u32,
    nvars: u32,
    mut label: impl FnMut(u32, u64, u32) -> LinForm<S>,
) -> Result<Abp<S>> {
    let layer_sets: Vec<Vec<u64>> = (0..=k).map(|l| subsets_of_size(k, l)).collect();
    let layers: Vec<usize> = layer_sets.iter().map(|s| s.len()).collect();
    let mut abp = Abp::new(nvars, layers);
    for l in 0..k as usize {
        let next_index: HashMap<u64, usize> =
            layer_sets[l + 1].iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for (from, &mask) in layer_sets[l].iter().enumerate() {
            for j in 0..k {
                if mask & (1u64 << j) != 0 {
                    continue;
                }
                let to = next_index[&(mask | (1u64 << j))];
                abp.add_edge(l, from, to, label(l as u32, mask, j));
            }
        }
    }
    for (l, sets) in layer_sets.iter().enumerate() {
        for (i, &m) in sets.iter().enumerate() {
            abp.set_label(l, i, mask_label(m));
        }
    }
    abp.normalize();
    Ok(abp)
}

/// `2^k`-node program for the noncommutative determinant of a `k x k`
/// symbolic matrix. Nodes are subsets of the column set; the edge
/// `(S, S ∪ {j})` at layer `i` carries `sgn(S, j) * y_{i+1, j}`.
pub fn nc_determinant_abp<S: Scalar>(k: u32) -> Result<Abp<S>> {
    if k < 1 {
        return Err(Error::InvalidParameter("need k >= 1".into()));
    }
    guarded_pow2(k)?;
    let grid = RectVars::new(k, k);
    subset_chain_abp(k, grid.nvars(), |layer, mask, j| {
        let sign: S = sign_scalar(insert_parity(mask, j));
        LinForm::term(grid.var(layer, j), sign)
    })
}

/// Default evaluation points `1, 2, .., n` for the weak-equivalence
/// construction. Over `F_p` with `p <= n` these collide, which the
/// construction rejects.
pub fn default_alphas<S: Scalar>(n: u32) -> Vec<S> {
    (1..=n as i64).map(S::from_int).collect()
}

/// `2^k`-node program weakly equivalent to `S*_{n,k}`: the edge inserting
/// `j` carries `sgn(S, j) * sum_i alpha_i^j x_i`, so the coefficient of
/// `x_{i_1} .. x_{i_k}` is a Vandermonde-style determinant in the alphas,
/// nonzero exactly on multilinear words.
pub fn weak_s_star_abp<S: Scalar>(n: u32, k: u32, alphas: &[S]) -> Result<Abp<S>> {
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    guarded_pow2(k)?;
    if alphas.len() != n as usize {
        return Err(Error::InvalidParameter(format!("expected {n} alphas, got {}", alphas.len())));
    }
    if alphas.iter().any(|a| a.is_zero()) {
        return Err(Error::BadAlphas);
    }
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            if alphas[i] == alphas[j] {
                return Err(Error::BadAlphas);
            }
        }
    }
    // powers[i][j] = alpha_i^(j+1) for inserted element j (0-based).
    let powers: Vec<Vec<S>> = alphas
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(k as usize);
            let mut acc = a.clone();
            for _ in 0..k {
                row.push(acc.clone());
                acc = acc.mul(a);
            }
            row
        })
        .collect();
    subset_chain_abp(k, n, |_, mask, j| {
        let sign: S = sign_scalar(insert_parity(mask, j));
        let mut label = LinForm::zero();
        for i in 0..n {
            label.add_term(i, sign.mul(&powers[i as usize][j as usize]));
        }
        label
    })
}

/// Hadamard square of the weak-equivalence program: coefficients on the
/// multilinear support become squares, hence strictly positive.
pub fn positive_weak_abp<S: Scalar>(n: u32, k: u32) -> Result<Abp<S>> {
    let g = weak_s_star_abp::<S>(n, k, &default_alphas(n))?;
    hadamard_abp(&g, &g)
}

/// Classic elementary-symmetric grid: node `(j, d)` means "`d` variables
/// chosen among the first `j`"; skip edges carry scalar 1 and take edges
/// carry `x_{j+1}`.
pub fn elementary_symmetric_abp<S: Scalar>(n: u32, k: u32) -> Result<Abp<S>> {
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let width = (k + 1) as usize;
    let mut abp = Abp::new(n, vec![width; (n + 1) as usize]);
    for j in 0..n as usize {
        for d in 0..width {
            abp.add_edge(j, d, d, LinForm::scalar(S::one()));
            if d + 1 < width {
                abp.add_edge(j, d, d + 1, LinForm::var(j as u32));
            }
        }
    }
    abp.set_sinks(vec![k as usize]);
    abp.normalize();
    Ok(abp)
}

/// Noncommutative version of the grid: same graph, with the layer order now
/// the multiplication order, so exactly the increasing words survive.
pub fn elementary_symmetric_nc_abp<S: Scalar>(n: u32, k: u32) -> Result<Abp<S>> {
    Ok(nc_lift(&elementary_symmetric_abp::<S>(n, k)?))
}

/// Commutative rectangular determinant program over the `k x n` grid.
///
/// Builds the subset chain whose edge inserting row `j` carries
/// `sgn(S, j) * sum_i x_{j,i} z_i` with the `x` weights kept symbolic,
/// filters the `z` words down to increasing ones by a Hadamard product with
/// the noncommutative elementary-symmetric program, then substitutes
/// `z = 1`, flattening the symbolic weights into honest linear forms over
/// the `x` grid.
pub fn rect_determinant_abp<S: Scalar>(k: u32, n: u32) -> Result<Abp<S>> {
    if !(1 <= k && k <= n) {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    guarded_pow2(k)?;
    let xgrid = RectVars::new(k, n);
    let lattice = subset_chain_abp::<PolyScalar<S>>(k, n, |_, mask, j| {
        let mut label = LinForm::zero();
        for i in 0..n {
            let mut weight = PolyScalar::variable(xgrid.var(j, i), xgrid.nvars());
            if insert_parity(mask, j) {
                weight = weight.neg();
            }
            label.add_term(i, weight);
        }
        label
    })?;
    let filter =
        elementary_symmetric_nc_abp::<S>(n, k)?.map_scalars(|c| PolyScalar::constant(c.clone()));
    let product = hadamard_abp_pruned(&lattice, &filter)?;
    flatten_weights(&product, xgrid.nvars())
}

/// Substitutes 1 for every program variable and reinterprets the symbolic
/// edge weights (degree at most one) as the new edge labels.
fn flatten_weights<S: Scalar>(b: &Abp<PolyScalar<S>>, nvars: u32) -> Result<Abp<S>> {
    let mut out = Abp::new(nvars, b.layer_sizes().to_vec());
    for e in b.edges() {
        let mut total = e.label.constant_part().clone();
        for (_, c) in e.label.terms() {
            total = total.add(c);
        }
        let mut label = LinForm::zero();
        for (word, c) in total.0.iter() {
            match word.0.as_slice() {
                [] => label.add_constant(c),
                [v] => label.add_term(*v, c.clone()),
                _ => {
                    return Err(Error::InvalidParameter(
                        "edge weight has degree above one, cannot flatten".into(),
                    ))
                }
            }
        }
        out.add_edge(e.layer, e.from, e.to, label);
    }
    out.set_sources(b.sources().to_vec());
    out.set_sinks(b.sinks().to_vec());
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::poly::{NcPoly, Word};
    use crate::scalar::{Fp, Rational};
    use crate::sets::{binomial, binomial_tail};
    use itertools::Itertools;

    type P = NcPoly<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn subsets_stage_small_outputs() {
        let fam = symmetrized_subsets_abp::<Rational>(3, 1);
        let outs = fam.abp.expand_sinks(false).unwrap();
        assert_eq!(outs.len(), 3);
        for (i, p) in outs.iter().enumerate() {
            assert_eq!(p.coeff(&Word(vec![i as u32])), q(1));
            assert_eq!(p.num_terms(), 1);
        }
    }

    #[test]
    fn subsets_stage_symmetrizes_pairs() {
        let fam = symmetrized_subsets_abp::<Rational>(3, 2);
        let outs = fam.abp.expand_sinks(false).unwrap();
        let i12 = fam.sink_masks.iter().position(|&m| m == 0b011).unwrap();
        let p = &outs[i12];
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(1));
        assert_eq!(p.coeff(&Word(vec![1, 0])), q(1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn subsets_stage_node_count() {
        let fam = symmetrized_subsets_abp::<Rational>(5, 2);
        let expected: u128 = (0..=2).map(|l| binomial(5, l)).sum();
        assert_eq!(fam.abp.node_count() as u128, expected);
    }

    fn symmetrized_monomial(n: u32, mask: u64) -> P {
        let mut m = P::new(n);
        m.add_term(Word(elements(mask).collect()), q(1));
        m.symmetrize().unwrap()
    }

    #[test]
    fn superset_stage_outputs_match_direct_sums() {
        let (n, h) = (4u32, 2u32);
        let fam = superset_sums_abp::<Rational>(n, h);
        let outs = fam.abp.expand_sinks(false).unwrap();
        for (i, &mask) in fam.sink_masks.iter().enumerate() {
            let mut expect = P::new(n);
            for &a in subsets_of_size(n, h).iter() {
                if a & mask == mask {
                    expect = expect.add(&symmetrized_monomial(n, a));
                }
            }
            assert_eq!(outs[i], expect, "sink {}", mask_label(mask));
        }
    }

    #[test]
    fn superset_stage_full_size_subsets_pass_through() {
        let fam = superset_sums_abp::<Rational>(4, 2);
        let outs = fam.abp.expand_sinks(false).unwrap();
        for (i, &mask) in fam.sink_masks.iter().enumerate() {
            if mask.count_ones() == 2 {
                assert_eq!(outs[i], symmetrized_monomial(4, mask));
            }
        }
    }

    #[test]
    fn s_star_two_two_exact() {
        let star = s_star_abp::<Rational>(2, 2).unwrap();
        let p = star.expand(false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(1));
        assert_eq!(p.coeff(&Word(vec![1, 0])), q(1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn s_star_matches_oracle_even_and_odd() {
        for (n, k) in [(2u32, 1u32), (3, 1), (3, 2), (3, 3), (4, 2), (4, 3), (5, 3)] {
            let star = s_star_abp::<Rational>(n, k).unwrap();
            assert_eq!(star.expand(false).unwrap(), oracle::s_star(n, k).unwrap(), "S*({n},{k})");
        }
    }

    #[test]
    fn s_star_node_bound() {
        for (n, k) in [(4u32, 2u32), (5, 3), (6, 4)] {
            let star = s_star_abp::<Rational>(n, k).unwrap();
            let h = k.div_ceil(2);
            let bound = 2 * (n as u128 + h as u128 + 2) * binomial_tail(n as u64, h as u64);
            assert!((star.node_count() as u128) <= bound, "({n},{k})");
        }
    }

    #[test]
    fn s_star_over_prime_field() {
        let star = s_star_abp::<Fp>(3, 2).unwrap();
        let p = star.expand(false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 2])), Fp::from_int(1));
        assert_eq!(p.num_terms(), 6);
    }

    #[test]
    fn rect_permanent_nc_small() {
        let b = rect_permanent_nc_abp::<Rational>(1, 2).unwrap();
        let p = b.expand(false).unwrap();
        let g = RectVars::new(1, 2);
        assert_eq!(p.coeff(&Word(vec![g.var(0, 0)])), q(1));
        assert_eq!(p.coeff(&Word(vec![g.var(0, 1)])), q(1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn rect_permanent_nc_matches_oracle() {
        for (k, n) in [(2u32, 2u32), (2, 3), (3, 4)] {
            let b = rect_permanent_nc_abp::<Rational>(k, n).unwrap();
            assert_eq!(
                b.expand(false).unwrap(),
                oracle::rect_permanent(k, n, false).unwrap(),
                "rper({k},{n})"
            );
        }
    }

    #[test]
    fn rect_permanent_nc_size_matches_s_star() {
        let star = s_star_abp::<Rational>(4, 3).unwrap();
        let rper = rect_permanent_nc_abp::<Rational>(3, 4).unwrap();
        assert_eq!(star.node_count(), rper.node_count());
    }

    #[test]
    fn nc_determinant_two_by_two() {
        let b = nc_determinant_abp::<Rational>(2).unwrap();
        let p = b.expand(false).unwrap();
        let g = RectVars::new(2, 2);
        assert_eq!(p.coeff(&Word(vec![g.var(0, 0), g.var(1, 1)])), q(1));
        assert_eq!(p.coeff(&Word(vec![g.var(0, 1), g.var(1, 0)])), q(-1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn nc_determinant_matches_oracle_and_node_count() {
        for k in 1..=4u32 {
            let b = nc_determinant_abp::<Rational>(k).unwrap();
            assert_eq!(b.node_count(), 1 << k, "k={k}");
            assert_eq!(b.expand(false).unwrap(), oracle::determinant(k).unwrap(), "k={k}");
        }
    }

    #[test]
    fn determinant_hadamard_square_has_permanent_support() {
        // Squaring the determinant program coefficient-wise turns every
        // sign into +1, giving the permanent's support.
        let det = nc_determinant_abp::<Rational>(2).unwrap();
        let squared = hadamard_abp(&det, &det).unwrap();
        let p = squared.expand(false).unwrap();
        let per = oracle::rect_permanent::<Rational>(2, 2, false).unwrap();
        assert_eq!(p, per);
    }

    #[test]
    fn insertion_chain_examples() {
        assert_eq!(insertion_sign_chain(&[0, 1, 2]), 1);
        assert_eq!(insertion_sign_chain(&[1, 0]), -1);
    }

    #[test]
    fn insertion_chain_equals_parity_exhaustive() {
        for k in 1..=6usize {
            for perm in (0..k as u32).permutations(k) {
                let expect = if crate::poly::permutation_parity(&perm) { -1 } else { 1 };
                assert_eq!(insertion_sign_chain(&perm), expect, "{perm:?}");
            }
        }
    }

    #[test]
    fn weak_s_star_vandermonde_coefficients() {
        let alphas = vec![q(1), q(2)];
        let b = weak_s_star_abp::<Rational>(2, 2, &alphas).unwrap();
        let p = b.expand(false).unwrap();
        // Coefficient of x1 x2 is det [[1, 2], [1, 4]] = 2.
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(2));
        assert_eq!(p.coeff(&Word(vec![0, 0])), q(0));
    }

    #[test]
    fn weak_s_star_support_is_multilinear() {
        for (n, k) in [(3u32, 2u32), (4, 2), (4, 3)] {
            let b = weak_s_star_abp::<Rational>(n, k, &default_alphas(n)).unwrap();
            let p = b.expand(false).unwrap();
            let star: P = oracle::s_star(n, k).unwrap();
            assert!(p.same_support(&star), "({n},{k})");
        }
    }

    #[test]
    fn weak_s_star_rejects_bad_alphas() {
        let dup = vec![q(1), q(1)];
        assert!(matches!(weak_s_star_abp::<Rational>(2, 2, &dup), Err(Error::BadAlphas)));
        let zero = vec![q(0), q(1)];
        assert!(matches!(weak_s_star_abp::<Rational>(2, 2, &zero), Err(Error::BadAlphas)));
        // Over F_3 the defaults 1..=4 collide.
        let folded: Vec<Fp> = (1..=4).map(|v| Fp::new(v, 3)).collect();
        assert!(matches!(weak_s_star_abp::<Fp>(4, 2, &folded), Err(Error::BadAlphas)));
    }

    #[test]
    fn positive_weak_squares_coefficients() {
        let b = positive_weak_abp::<Rational>(2, 2).unwrap();
        let p = b.expand(false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(4));
        assert_eq!(p.coeff(&Word(vec![0, 0])), q(0));
        assert!(b.node_count() <= (1 << 2) * (1 << 2));
    }

    #[test]
    fn elementary_symmetric_counts_subsets() {
        let b = elementary_symmetric_abp::<Rational>(3, 2).unwrap();
        let ones = vec![q(1); 3];
        assert_eq!(b.eval_scalar(&ones).unwrap(), q(3));
    }

    #[test]
    fn elementary_symmetric_nc_sorted_words() {
        let b = elementary_symmetric_nc_abp::<Rational>(3, 2).unwrap();
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 3);
        for (w, c) in p.iter() {
            assert!(w.0.windows(2).all(|ab| ab[0] < ab[1]), "{w}");
            assert_eq!(*c, q(1));
        }
    }

    #[test]
    fn elementary_symmetric_full_degree_single_word() {
        let b = elementary_symmetric_nc_abp::<Rational>(3, 3).unwrap();
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Word(vec![0, 1, 2])), q(1));
    }

    #[test]
    fn rect_determinant_single_row() {
        let b = rect_determinant_abp::<Rational>(1, 2).unwrap();
        let p = b.expand(true).unwrap();
        assert_eq!(p, oracle::rect_determinant(1, 2).unwrap());
    }

    #[test]
    fn rect_determinant_matches_oracle() {
        for (k, n) in [(2u32, 2u32), (2, 3), (3, 3), (3, 4)] {
            let b = rect_determinant_abp::<Rational>(k, n).unwrap();
            assert_eq!(
                b.expand(true).unwrap(),
                oracle::rect_determinant(k, n).unwrap(),
                "rdet({k},{n})"
            );
        }
    }

    #[test]
    fn rect_determinant_square_is_determinant() {
        // Evaluate the square case at a concrete matrix and compare against
        // the noncommutative determinant expansion at the same entries.
        let b = rect_determinant_abp::<Rational>(3, 3).unwrap();
        let point: Vec<Rational> = [2, -1, 3, 0, 1, 4, -2, 5, 1].iter().map(|&v| q(v)).collect();
        let det: P = oracle::determinant(3).unwrap();
        assert_eq!(b.eval_scalar(&point).unwrap(), det.substitute(&point).unwrap());
    }
}
