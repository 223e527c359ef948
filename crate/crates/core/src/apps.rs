//! Path-counting pipelines built from the core constructions.
//!
//! The direct pipeline filters the walk polynomial of a digraph through the
//! symmetrized elementary symmetric program: only multilinear walk words
//! (simple paths) survive the Hadamard product, so evaluating at all-ones
//! counts them. The rectangular-determinant pipeline reaches the same count
//! the long way around, through a doubled variable grid: an injection
//! filter, a split walk program, and a noncommutative rectangular
//! determinant whose sign on the filtered support is the constant
//! `(-1)^{k(k-1)/2}`.

use std::collections::BTreeSet;

use crate::abp::{hadamard_abp_pruned, Abp, LinForm};
use crate::algebra::Grid;
use crate::constructions::s_star_abp;
use crate::error::{Error, Result};
use crate::matrix::SquareMat;
use crate::poly::RectVars;
use crate::scalar::{sign_scalar, Rational, Scalar};
use crate::sets::{binomial_tail, insert_parity, mask_label, subsets_of_size};

/// Directed graph on vertices `0 .. n-1` with no parallel arcs. Self-loops
/// are allowed; simple-path counts never use them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    n: u32,
    arcs: BTreeSet<(u32, u32)>,
}

impl Digraph {
    pub fn new(n: u32) -> Self {
        Digraph { n, arcs: BTreeSet::new() }
    }

    pub fn add_arc(&mut self, from: u32, to: u32) {
        assert!(from < self.n && to < self.n, "vertex out of range");
        self.arcs.insert((from, to));
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, from: u32, to: u32) -> bool {
        self.arcs.contains(&(from, to))
    }

    /// Parses an edge list, one `u v` pair per line, 1-indexed. Blank lines
    /// and `#` comments are skipped; the vertex count is the largest id.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut max_id = 0u32;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let bad = || Error::Parse(format!("line {}: expected \"u v\"", lineno + 1));
            let u: u32 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let v: u32 = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() || u == 0 || v == 0 {
                return Err(bad());
            }
            max_id = max_id.max(u).max(v);
            pairs.push((u - 1, v - 1));
        }
        if pairs.is_empty() {
            return Err(Error::Parse("edge list is empty".into()));
        }
        let mut g = Digraph::new(max_id);
        for (u, v) in pairs {
            g.add_arc(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: u32) -> Self {
        let mut g = Digraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.add_arc(u, v);
                }
            }
        }
        g
    }

    pub fn directed_cycle(n: u32) -> Self {
        let mut g = Digraph::new(n);
        for u in 0..n {
            g.add_arc(u, (u + 1) % n);
        }
        g
    }

    pub fn directed_path(n: u32) -> Self {
        let mut g = Digraph::new(n);
        for u in 0..n.saturating_sub(1) {
            g.add_arc(u, u + 1);
        }
        g
    }
}

/// Walk polynomial program: the sum over `k`-walks `v_1 .. v_k` of
/// `z_{v_1} .. z_{v_k}`. Strictly homogeneous; width is the vertex count.
pub fn graph_walk_abp<S: Scalar>(g: &Digraph, k: u32) -> Abp<S> {
    assert!(k >= 1);
    let n = g.n() as usize;
    if k == 1 {
        let mut abp = Abp::new(g.n(), vec![1, 1]);
        let mut label = LinForm::zero();
        for v in 0..g.n() {
            label.add_term(v, S::one());
        }
        abp.add_edge(0, 0, 0, label);
        abp.normalize();
        return abp;
    }
    let mut layers = vec![1usize];
    layers.extend(std::iter::repeat_n(n, (k - 1) as usize));
    layers.push(1);
    let mut abp = Abp::new(g.n(), layers);
    for v in 0..g.n() {
        abp.add_edge(0, 0, v as usize, LinForm::var(v));
    }
    for step in 1..k - 1 {
        for (u, v) in g.arcs() {
            abp.add_edge(step as usize, u as usize, v as usize, LinForm::var(v));
        }
    }
    // The last step folds into the sink: one merged linear form per tail.
    for u in 0..g.n() {
        let mut label = LinForm::zero();
        for v in 0..g.n() {
            if g.has_arc(u, v) {
                label.add_term(v, S::one());
            }
        }
        if !label.is_zero() {
            abp.add_edge((k - 1) as usize, u as usize, 0, label);
        }
    }
    abp.normalize();
    abp
}

/// Walk program on the doubled `2k x 2n` grid: the walk step that chose
/// vertex `v` at position `i` emits the two letters `y_{2i-1, v}` and
/// `y_{2i, n+v}`, so walk `v_1 .. v_k` maps to the doubled injection word.
pub fn split_walk_abp<S: Scalar>(g: &Digraph, k: u32) -> Abp<S> {
    assert!(k >= 1);
    let n = g.n();
    let grid = RectVars::new(2 * k, 2 * n);
    let mut layers = vec![1usize];
    for i in 1..=k {
        layers.push(n as usize);
        layers.push(if i == k { 1 } else { n as usize });
    }
    let mut abp = Abp::new(grid.nvars(), layers);
    for v in 0..n {
        abp.add_edge(0, 0, v as usize, LinForm::var(grid.var(0, v)));
    }
    for i in 1..=k {
        // Second letter of position i: row 2i-1 (0-based), column n + v.
        let layer = (2 * i - 1) as usize;
        for v in 0..n {
            let to = if i == k { 0 } else { v as usize };
            abp.add_edge(layer, v as usize, to, LinForm::var(grid.var(2 * i - 1, n + v)));
        }
        if i < k {
            let layer = (2 * i) as usize;
            for (u, v) in g.arcs() {
                abp.add_edge(layer, u as usize, v as usize, LinForm::var(grid.var(2 * i, v)));
            }
        }
    }
    abp.normalize();
    abp
}

/// Injection-doubling filter on the `2k x 2n` grid: one node per even
/// level, `n` per odd level; the words produced are exactly
/// `y_{1,c_1} y_{2,n+c_1} .. y_{2k-1,c_k} y_{2k,n+c_k}` for column
/// sequences `c` in `[n]^k`, each with coefficient 1. Restricted to
/// injection words, the support is exactly the doubled injections.
pub fn injection_filter_abp<S: Scalar>(k: u32, n: u32) -> Abp<S> {
    assert!(k >= 1 && n >= 1);
    let grid = RectVars::new(2 * k, 2 * n);
    let mut layers = Vec::with_capacity((2 * k + 1) as usize);
    for i in 0..=2 * k {
        layers.push(if i % 2 == 0 { 1 } else { n as usize });
    }
    let mut abp = Abp::new(grid.nvars(), layers);
    for i in 0..2 * k {
        if i % 2 == 0 {
            for j in 0..n {
                abp.add_edge(i as usize, 0, j as usize, LinForm::var(grid.var(i, j)));
            }
        } else {
            for j in 0..n {
                abp.add_edge(i as usize, j as usize, 0, LinForm::var(grid.var(i, n + j)));
            }
        }
    }
    abp.normalize();
    abp
}

/// Noncommutative rectangular determinant program over a `rows x cols`
/// grid: `sum_f sgn(f) y_{1,f(1)} .. y_{rows,f(rows)}` over injections `f`,
/// signed by the parity of the value pattern. Nodes track the set of used
/// columns, so the size is `C(cols, <= rows)`: exponential, which is what
/// the Hadamard filtering pipeline needs to stay exact.
pub fn nc_rect_determinant_abp<S: Scalar>(rows: u32, cols: u32) -> Result<Abp<S>> {
    if !(1 <= rows && rows <= cols) {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= rows <= cols, got {rows} x {cols}"
        )));
    }
    let states = binomial_tail(cols as u64, rows as u64 - 1) + 1;
    if states > 2_000_000 {
        return Err(Error::SizeGuard { needed: states, limit: 2_000_000 });
    }
    let grid = RectVars::new(rows, cols);
    let layer_sets: Vec<Vec<u64>> = (0..rows).map(|l| subsets_of_size(cols, l)).collect();
    let mut layers: Vec<usize> = layer_sets.iter().map(|s| s.len()).collect();
    layers.push(1);
    let mut abp = Abp::new(grid.nvars(), layers);
    for l in 0..rows {
        let sets = &layer_sets[l as usize];
        let next_index: std::collections::HashMap<u64, usize> = if l + 1 < rows {
            layer_sets[(l + 1) as usize].iter().enumerate().map(|(i, &m)| (m, i)).collect()
        } else {
            Default::default()
        };
        for (from, &mask) in sets.iter().enumerate() {
            for j in 0..cols {
                if mask & (1u64 << j) != 0 {
                    continue;
                }
                let to = if l + 1 < rows { next_index[&(mask | (1u64 << j))] } else { 0 };
                let sign: S = sign_scalar(insert_parity(mask, j));
                abp.add_edge(l as usize, from, to, LinForm::term(grid.var(l, j), sign));
            }
        }
        for (i, &m) in sets.iter().enumerate() {
            abp.set_label(l as usize, i, mask_label(m));
        }
    }
    abp.normalize();
    Ok(abp)
}

fn to_count(value: Rational) -> Result<u64> {
    value.to_integer().and_then(|v| u64::try_from(v).ok()).ok_or_else(|| {
        Error::InvalidParameter(format!("expected a nonnegative integer, got {value}"))
    })
}

/// `(-1)^(k(k-1)/2)`, the constant pattern sign of every doubled injection.
pub fn doubled_injection_sign(k: u32) -> i32 {
    if (k * (k - 1) / 2) % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Counts simple directed `k`-paths by filtering the walk program through
/// the multilinear-support program and evaluating at all-ones.
pub fn count_k_paths_direct(g: &Digraph, k: u32) -> Result<u64> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    let star: Abp<Rational> = s_star_abp(g.n(), k)?;
    let walks: Abp<Rational> = graph_walk_abp(g, k);
    let product = hadamard_abp_pruned(&star, &walks)?;
    let ones = vec![Rational::one(); g.n() as usize];
    to_count(product.eval_scalar(&ones)?)
}

/// Same count through the transition matrices of the walk program: the
/// multilinear filter is evaluated at those matrices and the source-sink
/// entry read off.
pub fn count_k_paths_direct_matrix(g: &Digraph, k: u32) -> Result<u64> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    let star: Abp<Rational> = s_star_abp(g.n(), k)?;
    let walks: Abp<Rational> = graph_walk_abp(g, k);
    let tm = walks.transition_matrices()?;
    let out = star.eval_matrix(&tm.mats)?;
    to_count(out.get(tm.source, tm.sink).clone())
}

/// Counts simple `k`-paths through the rectangular-determinant pipeline:
/// Hadamard-compose the noncommutative rectangular determinant on the
/// doubled grid with the injection filter and the split walk program,
/// evaluate at all-ones, and divide out the constant doubled-injection
/// sign.
pub fn count_k_paths_via_rdet(g: &Digraph, k: u32) -> Result<u64> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    let n = g.n();
    let rdet: Abp<Rational> = nc_rect_determinant_abp(2 * k, 2 * n)?;
    let filter: Abp<Rational> = injection_filter_abp(k, n);
    let splits: Abp<Rational> = split_walk_abp(g, k);
    let filtered = hadamard_abp_pruned(&rdet, &filter)?;
    let product = hadamard_abp_pruned(&filtered, &splits)?;
    let ones = vec![Rational::one(); 4 * (k as usize) * (n as usize)];
    let value = product.eval_scalar(&ones)?;
    let signed = value.mul(&Rational::from_int(doubled_injection_sign(k) as i64));
    to_count(signed)
}

/// The same determinant count via matrix-valued evaluation: the determinant
/// is evaluated, by direct injection enumeration, on the transition
/// matrices of the filter-walk product program. Feasible only at tiny
/// sizes; the guard reflects that.
pub fn count_k_paths_via_rdet_matrix(g: &Digraph, k: u32) -> Result<u64> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    let n = g.n();
    let injections: u128 = (0..2 * k as u128).map(|i| 2 * n as u128 - i).product();
    if injections > 1_000 {
        return Err(Error::SizeGuard { needed: injections, limit: 1_000 });
    }
    let filter: Abp<Rational> = injection_filter_abp(k, n);
    let splits: Abp<Rational> = split_walk_abp(g, k);
    let product = hadamard_abp_pruned(&filter, &splits)?;
    let tm = product.transition_matrices()?;
    let grid = RectVars::new(2 * k, 2 * n);
    let entries = Grid::from_rows(
        (0..2 * k)
            .map(|i| (0..2 * n).map(|j| tm.mats[grid.var(i, j) as usize].clone()).collect())
            .collect(),
    )?;
    let out = rect_determinant_matrix_naive(&entries);
    let value = out.get(tm.source, tm.sink).clone();
    let signed = value.mul(&Rational::from_int(doubled_injection_sign(k) as i64));
    to_count(signed)
}

/// Injection-enumeration rectangular determinant with matrix entries, rows
/// multiplying in order.
fn rect_determinant_matrix_naive(entries: &Grid<SquareMat<Rational>>) -> SquareMat<Rational> {
    fn rec(
        entries: &Grid<SquareMat<Rational>>,
        image: &mut Vec<usize>,
        acc: &mut SquareMat<Rational>,
    ) {
        let k = entries.rows();
        if image.len() == k {
            let mut prod = entries.get(0, image[0]).clone();
            for (i, &col) in image.iter().enumerate().skip(1) {
                prod = prod.mul(entries.get(i, col));
            }
            let inversions = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| image[a] > image[b])
                .count();
            let signed =
                if inversions % 2 == 1 { prod.scale(&Rational::from_int(-1)) } else { prod };
            *acc = acc.add(&signed);
            return;
        }
        for j in 0..entries.cols() {
            if image.contains(&j) {
                continue;
            }
            image.push(j);
            rec(entries, image, acc);
            image.pop();
        }
    }
    let dim = entries.get(0, 0).dim();
    let mut acc = SquareMat::zero(dim);
    let mut image = Vec::with_capacity(entries.rows());
    rec(entries, &mut image, &mut acc);
    acc
}

/// Exhaustive simple-path count: depth-first over ordered vertex sequences.
pub fn enumerate_k_paths(g: &Digraph, k: u32) -> Result<u64> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={k}")));
    }
    let bound: u128 = (0..k as u128).map(|i| g.n() as u128 - i).product();
    if bound > 100_000_000 {
        return Err(Error::SizeGuard { needed: bound, limit: 100_000_000 });
    }
    fn rec(g: &Digraph, remaining: u32, last: u32, used: u64, count: &mut u64) {
        if remaining == 0 {
            *count += 1;
            return;
        }
        for v in 0..g.n() {
            if used & (1u64 << v) == 0 && g.has_arc(last, v) {
                rec(g, remaining - 1, v, used | (1u64 << v), count);
            }
        }
    }
    let mut count = 0u64;
    for start in 0..g.n() {
        rec(g, k - 1, start, 1u64 << start, &mut count);
    }
    Ok(count)
}

/// Collapses the doubled grid back to walk variables: the first letter of
/// each position becomes `z_column`, the second becomes the constant 1.
/// Mirrors, on programs, the substitution that turns doubled injection
/// words into plain walk words.
pub fn collapse_doubled_grid<S: Scalar>(b: &Abp<S>, grid: RectVars) -> Result<Abp<S>> {
    let cols = grid.cols;
    let mut out = Abp::new(cols, b.layer_sizes().to_vec());
    for e in b.edges() {
        let mut label = LinForm::zero();
        label.add_constant(e.label.constant_part());
        for (v, c) in e.label.terms() {
            let (row, col) = grid.cell(v);
            if row % 2 == 0 {
                label.add_term(col, c.clone());
            } else {
                label.add_constant(c);
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
    use itertools::Itertools;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn triangle() -> Digraph {
        Digraph::directed_cycle(3)
    }

    #[test]
    fn walk_program_of_a_single_arc() {
        let mut g = Digraph::new(2);
        g.add_arc(0, 1);
        let b: Abp<Rational> = graph_walk_abp(&g, 2);
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(1));
    }

    #[test]
    fn walk_program_degree_one_sums_vertices() {
        let b: Abp<Rational> = graph_walk_abp(&triangle(), 1);
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn triangle_three_walks_are_simple() {
        let b: Abp<Rational> = graph_walk_abp(&triangle(), 3);
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert!(p.iter().all(|(w, c)| w.is_multilinear() && *c == q(1)));
    }

    #[test]
    fn walk_count_on_complete_digraph() {
        // Every length-3 sequence with distinct consecutive entries.
        let g = Digraph::complete(3);
        let b: Abp<Rational> = graph_walk_abp(&g, 3);
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 3 * 2 * 2);
    }

    #[test]
    fn filter_support_for_one_row() {
        let b: Abp<Rational> = injection_filter_abp(1, 2);
        let p = b.expand(false).unwrap();
        let grid = RectVars::new(2, 4);
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Word(vec![grid.var(0, 0), grid.var(1, 2)])), q(1));
        assert_eq!(p.coeff(&Word(vec![grid.var(0, 1), grid.var(1, 3)])), q(1));
    }

    #[test]
    fn filter_is_exact_on_injection_words() {
        // Every doubled injection word has coefficient 1; every other
        // injection word has coefficient 0. Non-injection words (repeated
        // column sequences) are also produced, by design of the wiring.
        let (k, n) = (2u32, 3u32);
        let b: Abp<Rational> = injection_filter_abp(k, n);
        let p = b.expand(false).unwrap();
        let grid = RectVars::new(2 * k, 2 * n);
        assert_eq!(p.num_terms(), (n as usize).pow(k));
        for cols in (0..n).permutations(k as usize) {
            let word = Word(
                cols.iter()
                    .enumerate()
                    .flat_map(|(i, &c)| [grid.var(2 * i as u32, c), grid.var(2 * i as u32 + 1, n + c)])
                    .collect(),
            );
            assert_eq!(p.coeff(&word), q(1));
        }
        // An injection word outside the doubled family.
        let stray =
            Word(vec![grid.var(0, 0), grid.var(1, n + 1), grid.var(2, 2), grid.var(3, n)]);
        assert_eq!(p.coeff(&stray), q(0));
    }

    #[test]
    fn doubled_injections_have_constant_sign() {
        // Inversion count of (c_1, n+c_1, .., c_k, n+c_k) depends only on k.
        for (k, n) in [(1u32, 2u32), (2, 3), (3, 4)] {
            for cols in (0..n).permutations(k as usize) {
                let doubled: Vec<u32> = cols.iter().flat_map(|&c| [c, n + c]).collect();
                let inversions = (0..doubled.len())
                    .flat_map(|a| (a + 1..doubled.len()).map(move |b| (a, b)))
                    .filter(|&(a, b)| doubled[a] > doubled[b])
                    .count();
                let sign = if inversions % 2 == 1 { -1 } else { 1 };
                assert_eq!(sign, doubled_injection_sign(k), "k={k} cols={cols:?}");
            }
        }
    }

    #[test]
    fn nc_rect_determinant_signs_match_patterns() {
        let (rows, cols) = (2u32, 3u32);
        let b: Abp<Rational> = nc_rect_determinant_abp(rows, cols).unwrap();
        let p = b.expand(false).unwrap();
        let grid = RectVars::new(rows, cols);
        let mut expect = NcPoly::<Rational>::new(grid.nvars());
        for image in (0..cols).permutations(rows as usize) {
            let inversions = (0..image.len())
                .flat_map(|a| (a + 1..image.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| image[a] > image[b])
                .count();
            let word =
                Word(image.iter().enumerate().map(|(i, &c)| grid.var(i as u32, c)).collect());
            expect.add_term(word, q(if inversions % 2 == 1 { -1 } else { 1 }));
        }
        assert_eq!(p, expect);
    }

    #[test]
    fn split_walks_collapse_back_to_walks() {
        let g = triangle();
        let k = 2u32;
        let split: Abp<Rational> = split_walk_abp(&g, k);
        let collapsed = collapse_doubled_grid(&split, RectVars::new(2 * k, 2 * g.n())).unwrap();
        let walks: Abp<Rational> = graph_walk_abp(&g, k);
        let mut expect = NcPoly::<Rational>::new(2 * g.n());
        for (w, c) in walks.expand(false).unwrap().iter() {
            expect.add_term(w.clone(), c.clone());
        }
        assert_eq!(collapsed.expand(false).unwrap(), expect);
    }

    #[test]
    fn filtered_determinant_collapses_to_signed_multilinear_sum() {
        let (k, n) = (2u32, 3u32);
        let rdet: Abp<Rational> = nc_rect_determinant_abp(2 * k, 2 * n).unwrap();
        let filter: Abp<Rational> = injection_filter_abp(k, n);
        let filtered = hadamard_abp_pruned(&rdet, &filter).unwrap();
        let collapsed = collapse_doubled_grid(&filtered, RectVars::new(2 * k, 2 * n)).unwrap();
        let p = collapsed.expand(false).unwrap();
        let mut expect = NcPoly::<Rational>::new(2 * n);
        let sign = q(doubled_injection_sign(k) as i64);
        for (w, c) in oracle::s_star::<Rational>(n, k).unwrap().iter() {
            expect.add_term(w.clone(), c.mul(&sign));
        }
        assert_eq!(p, expect);
    }

    #[test]
    fn counts_on_fixtures() {
        let g = triangle();
        assert_eq!(enumerate_k_paths(&g, 3).unwrap(), 3);
        assert_eq!(count_k_paths_direct(&g, 3).unwrap(), 3);
        assert_eq!(count_k_paths_direct_matrix(&g, 3).unwrap(), 3);
        assert_eq!(count_k_paths_via_rdet(&g, 3).unwrap(), 3);

        let mut single = Digraph::new(2);
        single.add_arc(0, 1);
        assert_eq!(count_k_paths_direct(&single, 2).unwrap(), 1);
        assert_eq!(count_k_paths_via_rdet(&single, 2).unwrap(), 1);

        let k3 = Digraph::complete(3);
        assert_eq!(enumerate_k_paths(&k3, 2).unwrap(), 6);
        assert_eq!(count_k_paths_direct(&k3, 2).unwrap(), 6);
        assert_eq!(count_k_paths_via_rdet(&k3, 2).unwrap(), 6);
        assert_eq!(enumerate_k_paths(&k3, 3).unwrap(), 6);

        let path = Digraph::directed_path(4);
        assert_eq!(count_k_paths_direct(&path, 4).unwrap(), 1);
        assert_eq!(count_k_paths_via_rdet(&path, 4).unwrap(), 1);
    }

    #[test]
    fn count_zero_on_loop_only_graph() {
        let mut g = Digraph::new(3);
        g.add_arc(0, 0); // only a self-loop
        assert_eq!(enumerate_k_paths(&g, 2).unwrap(), 0);
        assert_eq!(count_k_paths_direct(&g, 2).unwrap(), 0);
        assert_eq!(count_k_paths_via_rdet(&g, 2).unwrap(), 0);
    }

    #[test]
    fn nc_rect_determinant_program_matches_algebra_evaluator() {
        // Evaluating the column-tracking determinant program at matrix
        // entries multiplies rows in order, exactly like the signed
        // basis-decomposition evaluator.
        use crate::algebra::{
            eval_abp_algebra, rect_permanent_algebra, Algebra, AlgebraElement, Grid,
        };
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let alg = Algebra::<Rational>::matrix(2);
        for (k, n) in [(1u32, 2u32), (2, 2), (2, 3), (3, 4)] {
            let abp: Abp<Rational> = nc_rect_determinant_abp(k, n).unwrap();
            let rows: Vec<Vec<AlgebraElement<Rational>>> = (0..k)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let coords =
                                (0..alg.dim()).map(|_| q(rng.gen_range(-2i64..=2))).collect();
                            AlgebraElement::new(&alg, coords).unwrap()
                        })
                        .collect()
                })
                .collect();
            let flat: Vec<AlgebraElement<Rational>> =
                rows.iter().flatten().cloned().collect();
            let entries = Grid::from_rows(rows).unwrap();
            let via_abp = eval_abp_algebra(&abp, &flat).unwrap();
            let via_sweep = rect_permanent_algebra(&entries, true).unwrap();
            assert_eq!(via_abp, via_sweep, "k={k} n={n}");
        }
    }

    #[test]
    fn matrix_route_matches_at_tiny_scale() {
        let g = triangle();
        assert_eq!(count_k_paths_via_rdet_matrix(&g, 1).unwrap(), 3);
        let mut two = Digraph::new(2);
        two.add_arc(0, 1);
        two.add_arc(1, 0);
        assert_eq!(count_k_paths_via_rdet_matrix(&two, 2).unwrap(), 2);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Digraph::from_edge_list("1 2\n2 3\n3 1\n").unwrap();
        assert_eq!(g, triangle());
        assert!(Digraph::from_edge_list("").is_err());
        assert!(Digraph::from_edge_list("1 2 3").is_err());
        assert!(Digraph::from_edge_list("0 1").is_err());
    }
}
