//! Layered algebraic branching programs with exact edge labels.
//!
//! An ABP is a layered DAG whose edges carry linear forms; the polynomial
//! between a source and a sink is the sum over directed paths of the
//! left-to-right product of edge labels. Multi-source and multi-output
//! programs are first-class; the single-output program is the special case.
//!
//! Edges are either *linear* (a homogeneous linear form, consuming one
//! letter) or *scalar* (a constant weight, consuming none). Re-wiring layers
//! such as subset-sum transforms use scalar edges; the product and
//! transition-matrix operations state which mix they accept.

mod io;
mod mirror;
mod product;

pub use io::{peek_header, read_json, read_json_fp, read_json_rational, to_dot, to_json, PeekedHeader};
pub use mirror::{mirror_join, reverse_mirror};
pub use product::{hadamard_abp, hadamard_abp_pruned};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::SquareMat;
use crate::poly::{check_guard, NcPoly, Word};
use crate::scalar::Scalar;

/// A linear form `sum_i c_i * y_i + c0` labeling one edge. The form is
/// homogeneous when the constant vanishes; it is scalar when it has no
/// variable terms at all. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinForm<S: Scalar> {
    coeffs: BTreeMap<u32, S>,
    constant: S,
}

impl<S: Scalar> LinForm<S> {
    pub fn zero() -> Self {
        LinForm { coeffs: BTreeMap::new(), constant: S::zero() }
    }

    pub fn scalar(c: S) -> Self {
        LinForm { coeffs: BTreeMap::new(), constant: c }
    }

    pub fn var(v: u32) -> Self {
        Self::term(v, S::one())
    }

    pub fn term(v: u32, c: S) -> Self {
        let mut f = Self::zero();
        f.add_term(v, c);
        f
    }

    pub fn add_term(&mut self, v: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_constant(&mut self, c: &S) {
        self.constant = self.constant.add(c);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (v, c) in &rhs.coeffs {
            out.add_term(*v, c.clone());
        }
        out.constant = out.constant.add(&rhs.constant);
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(v, k)| (*v, k.mul(c))).collect();
        LinForm { coeffs, constant: self.constant.mul(c) }
    }

    pub fn coeff(&self, v: u32) -> S {
        self.coeffs.get(&v).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_part(&self) -> &S {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &S)> {
        self.coeffs.iter().map(|(v, c)| (*v, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.constant.is_zero()
    }

    /// No constant part (and at least implicitly degree one on every term).
    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    /// A pure constant weight, consuming no letter.
    pub fn is_scalar(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, point: &[S]) -> Result<S> {
        let mut acc = self.constant.clone();
        for (v, c) in &self.coeffs {
            let x = point.get(*v as usize).ok_or(Error::MissingAssignment(*v))?;
            acc = acc.add(&c.mul(x));
        }
        Ok(acc)
    }

    pub fn map_scalars<T: Scalar>(&self, f: &impl Fn(&S) -> T) -> LinForm<T> {
        let mut out = LinForm::scalar(f(&self.constant));
        for (v, c) in &self.coeffs {
            out.add_term(*v, f(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for LinForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(v, c)| {
                if c.is_one() {
                    format!("y{}", v + 1)
                } else {
                    format!("{}*y{}", c, v + 1)
                }
            })
            .collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format!("{}", self.constant));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge<S: Scalar> {
    pub layer: usize,
    pub from: usize,
    pub to: usize,
    pub label: LinForm<S>,
}

/// Layered branching program. `layers[l]` is the node count of node-layer
/// `l`; edges run only between adjacent layers. Node labels are optional
/// strings kept for diagnostics and DOT output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Abp<S: Scalar> {
    pub(crate) nvars: u32,
    pub(crate) layers: Vec<usize>,
    pub(crate) edges: Vec<Edge<S>>,
    pub(crate) sources: Vec<usize>,
    pub(crate) sinks: Vec<usize>,
    pub(crate) labels: BTreeMap<(usize, usize), String>,
    pub(crate) pruned: bool,
}

impl<S: Scalar> Abp<S> {
    pub fn new(nvars: u32, layers: Vec<usize>) -> Self {
        assert!(!layers.is_empty(), "an ABP needs at least one node layer");
        Abp {
            nvars,
            layers,
            edges: Vec::new(),
            sources: vec![0],
            sinks: vec![0],
            labels: BTreeMap::new(),
            pruned: false,
        }
    }

    /// The 0-layer program computing the empty path product, i.e. 1.
    pub fn point(nvars: u32) -> Self {
        Abp::new(nvars, vec![1])
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layers
    }

    /// Number of edge layers, which equals the degree for programs whose
    /// edges are all linear.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn node_count(&self) -> usize {
        self.layers.iter().sum()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn set_sources(&mut self, sources: Vec<usize>) {
        assert!(sources.iter().all(|&u| u < self.layers[0]));
        self.sources = sources;
        self.pruned = false;
    }

    pub fn set_sinks(&mut self, sinks: Vec<usize>) {
        let last = *self.layers.last().unwrap();
        assert!(sinks.iter().all(|&u| u < last));
        self.sinks = sinks;
        self.pruned = false;
    }

    pub fn add_edge(&mut self, layer: usize, from: usize, to: usize, label: LinForm<S>) {
        assert!(layer + 1 < self.layers.len(), "edge layer out of range");
        assert!(from < self.layers[layer] && to < self.layers[layer + 1], "edge endpoint out of range");
        if label.is_zero() {
            return;
        }
        self.edges.push(Edge { layer, from, to, label });
        self.pruned = false;
    }

    pub fn set_label(&mut self, layer: usize, node: usize, text: impl Into<String>) {
        self.labels.insert((layer, node), text.into());
    }

    pub fn label(&self, layer: usize, node: usize) -> Option<&str> {
        self.labels.get(&(layer, node)).map(|s| s.as_str())
    }

    /// Every edge label is a homogeneous linear form (no scalar edges), so
    /// layer index equals degree.
    pub fn is_strictly_homogeneous(&self) -> bool {
        self.edges.iter().all(|e| e.label.is_homogeneous() && !e.label.is_scalar())
    }

    /// True when some edge carries a pure constant weight.
    pub fn has_scalar_edges(&self) -> bool {
        self.edges.iter().any(|e| e.label.is_scalar())
    }

    pub(crate) fn edges_by_layer(&self) -> Vec<Vec<&Edge<S>>> {
        let mut buckets: Vec<Vec<&Edge<S>>> = vec![Vec::new(); self.depth()];
        for e in &self.edges {
            buckets[e.layer].push(e);
        }
        buckets
    }

    /// Letters consumed on any source-to-node path. Fails when two paths
    /// disagree (the program is then not degree-uniform) or when an edge
    /// mixes a constant with variable terms.
    pub fn node_degrees(&self) -> Result<Vec<Vec<Option<usize>>>> {
        let mut deg: Vec<Vec<Option<usize>>> =
            self.layers.iter().map(|&w| vec![None; w]).collect();
        for &s in &self.sources {
            deg[0][s] = Some(0);
        }
        let buckets = self.edges_by_layer();
        for l in 0..self.depth() {
            for e in &buckets[l] {
                let Some(d) = deg[l][e.from] else { continue };
                let step = edge_kind(&e.label)?;
                let nd = d + matches!(step, EdgeKind::Linear) as usize;
                match deg[l + 1][e.to] {
                    None => deg[l + 1][e.to] = Some(nd),
                    Some(old) if old == nd => {}
                    Some(old) => {
                        return Err(Error::InvalidParameter(format!(
                            "ambiguous node degree at layer {}, node {}: {} vs {}",
                            l + 1,
                            e.to,
                            old,
                            nd
                        )))
                    }
                }
            }
        }
        Ok(deg)
    }

    /// Merges parallel edges, drops edges that cancel to zero, and sorts
    /// edges canonically. Does not remove nodes.
    pub fn canonicalize(&mut self) {
        let mut merged: BTreeMap<(usize, usize, usize), LinForm<S>> = BTreeMap::new();
        for e in self.edges.drain(..) {
            match merged.entry((e.layer, e.from, e.to)) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(e.label);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    let sum = slot.get().add(&e.label);
                    *slot.get_mut() = sum;
                }
            }
        }
        self.edges = merged
            .into_iter()
            .filter(|(_, label)| !label.is_zero())
            .map(|((layer, from, to), label)| Edge { layer, from, to, label })
            .collect();
    }

    /// Canonicalizes and removes every node that lies on no source-to-sink
    /// path. Sources and sinks are always kept, so a program computing the
    /// zero polynomial stays representable.
    pub fn normalize(&mut self) {
        self.canonicalize();
        let buckets = self.edges_by_layer();

        let mut forward: Vec<Vec<bool>> = self.layers.iter().map(|&w| vec![false; w]).collect();
        for &s in &self.sources {
            forward[0][s] = true;
        }
        for l in 0..self.depth() {
            for e in &buckets[l] {
                if forward[l][e.from] {
                    forward[l + 1][e.to] = true;
                }
            }
        }
        let mut backward: Vec<Vec<bool>> = self.layers.iter().map(|&w| vec![false; w]).collect();
        for &t in &self.sinks {
            backward[self.depth()][t] = true;
        }
        for l in (0..self.depth()).rev() {
            for e in &buckets[l] {
                if backward[l + 1][e.to] {
                    backward[l][e.from] = true;
                }
            }
        }

        let mut keep: Vec<Vec<bool>> = forward
            .iter()
            .zip(&backward)
            .map(|(f, b)| f.iter().zip(b).map(|(x, y)| *x && *y).collect())
            .collect();
        for &s in &self.sources {
            keep[0][s] = true;
        }
        for &t in &self.sinks {
            keep[self.depth()][t] = true;
        }

        // Old index -> new index per layer.
        let remap: Vec<Vec<Option<usize>>> = keep
            .iter()
            .map(|layer| {
                let mut next = 0usize;
                layer
                    .iter()
                    .map(|&k| {
                        if k {
                            next += 1;
                            Some(next - 1)
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();

        self.layers = keep.iter().map(|l| l.iter().filter(|&&k| k).count()).collect();
        self.edges = std::mem::take(&mut self.edges)
            .into_iter()
            .filter_map(|e| {
                let from = remap[e.layer][e.from]?;
                let to = remap[e.layer + 1][e.to]?;
                Some(Edge { layer: e.layer, from, to, label: e.label })
            })
            .collect();
        self.edges.sort_by_key(|e| (e.layer, e.from, e.to));
        self.sources = self.sources.iter().map(|&s| remap[0][s].unwrap()).collect();
        let last = self.depth();
        self.sinks = self.sinks.iter().map(|&t| remap[last][t].unwrap()).collect();
        self.labels = std::mem::take(&mut self.labels)
            .into_iter()
            .filter_map(|((l, u), text)| Some(((l, remap[l][u]?), text)))
            .collect();
        self.pruned = true;
    }

    /// Full expansion between one source and one sink, by layer-sweeping
    /// dynamic programming. Refuses once the live monomial count passes the
    /// term guard.
    pub fn expand_pair(&self, source: usize, sink: usize, commutative: bool) -> Result<NcPoly<S>> {
        let polys = self.expand_from(source, commutative)?;
        let empty = if commutative {
            NcPoly::new_commutative(self.nvars)
        } else {
            NcPoly::new(self.nvars)
        };
        Ok(polys[sink].clone().unwrap_or(empty))
    }

    /// Expansion of the single-output program.
    pub fn expand(&self, commutative: bool) -> Result<NcPoly<S>> {
        self.single_ended()?;
        self.expand_pair(self.sources[0], self.sinks[0], commutative)
    }

    /// Per-sink expansions from one source, in sink order.
    pub fn expand_sinks(&self, commutative: bool) -> Result<Vec<NcPoly<S>>> {
        if self.sources.len() != 1 {
            return Err(Error::InvalidParameter("expected a single source".into()));
        }
        let polys = self.expand_from(self.sources[0], commutative)?;
        let empty = if commutative {
            NcPoly::new_commutative(self.nvars)
        } else {
            NcPoly::new(self.nvars)
        };
        Ok(self
            .sinks
            .iter()
            .map(|&t| polys[t].clone().unwrap_or_else(|| empty.clone()))
            .collect())
    }

    fn expand_from(&self, source: usize, commutative: bool) -> Result<Vec<Option<NcPoly<S>>>> {
        assert!(source < self.layers[0], "source out of range");
        let fresh = |nv| if commutative { NcPoly::new_commutative(nv) } else { NcPoly::new(nv) };
        let mut current: Vec<Option<NcPoly<S>>> = vec![None; self.layers[0]];
        let mut start = fresh(self.nvars);
        start.add_term(Word::empty(), S::one());
        current[source] = Some(start);

        let buckets = self.edges_by_layer();
        for (l, bucket) in buckets.iter().enumerate() {
            let mut next: Vec<Option<NcPoly<S>>> = vec![None; self.layers[l + 1]];
            for e in bucket {
                let Some(src_poly) = &current[e.from] else { continue };
                let slot = next[e.to].get_or_insert_with(|| fresh(self.nvars));
                for (w, c) in src_poly.iter() {
                    for (v, cv) in e.label.terms() {
                        slot.add_term(w.appended(v), c.mul(cv));
                    }
                    let c0 = e.label.constant_part();
                    if !c0.is_zero() {
                        slot.add_term(w.clone(), c.mul(c0));
                    }
                }
            }
            let live: u128 = next
                .iter()
                .map(|p| p.as_ref().map_or(0, |p| p.num_terms() as u128))
                .sum();
            check_guard(live)?;
            current = next;
        }
        Ok(current)
    }

    fn single_ended(&self) -> Result<()> {
        if self.sources.len() != 1 || self.sinks.len() != 1 {
            return Err(Error::InvalidParameter(
                "operation expects a single-source, single-sink program".into(),
            ));
        }
        Ok(())
    }

    /// Exact value of the computed polynomial at a scalar point.
    pub fn eval_scalar(&self, point: &[S]) -> Result<S> {
        self.single_ended()?;
        if (point.len() as u32) < self.nvars {
            return Err(Error::MissingAssignment(point.len() as u32));
        }
        let mut current = vec![S::zero(); self.layers[0]];
        current[self.sources[0]] = S::one();
        let buckets = self.edges_by_layer();
        for (l, bucket) in buckets.iter().enumerate() {
            let mut next = vec![S::zero(); self.layers[l + 1]];
            for e in bucket {
                if current[e.from].is_zero() {
                    continue;
                }
                let val = e.label.eval(point)?;
                next[e.to] = next[e.to].add(&current[e.from].mul(&val));
            }
            current = next;
        }
        Ok(current[self.sinks[0]].clone())
    }

    /// Evaluates with one square matrix substituted per variable; path
    /// products multiply matrices left to right. Scalar edge weights act as
    /// multiples of the identity.
    pub fn eval_matrix(&self, mats: &[SquareMat<S>]) -> Result<SquareMat<S>> {
        self.single_ended()?;
        if (mats.len() as u32) < self.nvars {
            return Err(Error::MissingAssignment(mats.len() as u32));
        }
        let dim = mats.first().map_or(1, |m| m.dim());
        if mats.iter().any(|m| m.dim() != dim) {
            return Err(Error::InvalidParameter("matrix dimensions differ".into()));
        }
        let mut current: Vec<Option<SquareMat<S>>> = vec![None; self.layers[0]];
        current[self.sources[0]] = Some(SquareMat::identity(dim));
        let buckets = self.edges_by_layer();
        for (l, bucket) in buckets.iter().enumerate() {
            let mut next: Vec<Option<SquareMat<S>>> = vec![None; self.layers[l + 1]];
            for e in bucket {
                let Some(src) = &current[e.from] else { continue };
                let mut edge_val = SquareMat::zero(dim);
                for (v, c) in e.label.terms() {
                    edge_val = edge_val.add(&mats[v as usize].scale(c));
                }
                let c0 = e.label.constant_part();
                if !c0.is_zero() {
                    edge_val = edge_val.add(&SquareMat::identity(dim).scale(c0));
                }
                let contrib = src.mul(&edge_val);
                match &mut next[e.to] {
                    None => next[e.to] = Some(contrib),
                    Some(m) => *m = m.add(&contrib),
                }
            }
            current = next;
        }
        Ok(current[self.sinks[0]].clone().unwrap_or_else(|| SquareMat::zero(dim)))
    }

    /// Per-variable transition matrices over globally indexed nodes:
    /// `M_v[u, w]` is the coefficient of variable `v` on edge `(u, w)`.
    /// Requires a strictly homogeneous program.
    pub fn transition_matrices(&self) -> Result<TransitionMatrices<S>> {
        self.single_ended()?;
        if !self.is_strictly_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let size = self.node_count();
        let offsets = self.layer_offsets();
        let mut mats = vec![SquareMat::zero(size); self.nvars as usize];
        for e in &self.edges {
            let u = offsets[e.layer] + e.from;
            let w = offsets[e.layer + 1] + e.to;
            for (v, c) in e.label.terms() {
                mats[v as usize].add_to(u, w, c);
            }
        }
        Ok(TransitionMatrices {
            mats,
            size,
            source: offsets[0] + self.sources[0],
            sink: offsets[self.depth()] + self.sinks[0],
        })
    }

    pub fn layer_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.layers.len());
        let mut acc = 0;
        for &w in &self.layers {
            offsets.push(acc);
            acc += w;
        }
        offsets
    }

    /// Same graph over a different coefficient type.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Abp<T> {
        Abp {
            nvars: self.nvars,
            layers: self.layers.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    layer: e.layer,
                    from: e.from,
                    to: e.to,
                    label: e.label.map_scalars(&f),
                })
                .collect(),
            sources: self.sources.clone(),
            sinks: self.sinks.clone(),
            labels: self.labels.clone(),
            pruned: self.pruned,
        }
    }
}

/// A commutative-intent program reinterpreted over noncommuting variables:
/// the graph is identical and the layer order becomes the multiplication
/// order. Expansion mode is what changes downstream.
pub fn nc_lift<S: Scalar>(b: &Abp<S>) -> Abp<S> {
    b.clone()
}

pub(crate) enum EdgeKind {
    Scalar,
    Linear,
}

pub(crate) fn edge_kind<S: Scalar>(label: &LinForm<S>) -> Result<EdgeKind> {
    match (label.is_scalar(), label.is_homogeneous()) {
        (true, _) => Ok(EdgeKind::Scalar),
        (false, true) => Ok(EdgeKind::Linear),
        (false, false) => Err(Error::InvalidParameter(
            "edge label mixes a constant with variable terms".into(),
        )),
    }
}

/// Transition matrices of a strictly homogeneous single-output program,
/// with the global indices of its source and sink.
#[derive(Clone, Debug)]
pub struct TransitionMatrices<S: Scalar> {
    pub mats: Vec<SquareMat<S>>,
    pub size: usize,
    pub source: usize,
    pub sink: usize,
}

impl<S: Scalar> TransitionMatrices<S> {
    /// The matrices scaled entrywise by the coordinates of a point, as used
    /// when a polynomial is evaluated "through" this program.
    pub fn scaled_by(&self, point: &[S]) -> Result<Vec<SquareMat<S>>> {
        if point.len() < self.mats.len() {
            return Err(Error::MissingAssignment(point.len() as u32));
        }
        Ok(self
            .mats
            .iter()
            .zip(point)
            .map(|(m, a)| m.scale(a))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type A = Abp<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn lf(terms: &[(u32, i64)]) -> LinForm<Rational> {
        let mut f = LinForm::zero();
        for &(v, c) in terms {
            f.add_term(v, q(c));
        }
        f
    }

    #[test]
    fn single_edge_expands_to_its_label() {
        let mut b = A::new(2, vec![1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1), (1, 1)]));
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&Word(vec![0])), q(1));
        assert_eq!(p.coeff(&Word(vec![1])), q(1));
    }

    #[test]
    fn two_layer_path_product() {
        let mut b = A::new(2, vec![1, 1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(1, 0, 0, lf(&[(1, 1)]));
        let p = b.expand(false).unwrap();
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(1));
    }

    #[test]
    fn zero_layer_program_computes_one() {
        let b = A::point(0);
        let p = b.expand(false).unwrap();
        assert_eq!(p.coeff(&Word::empty()), q(1));
        assert_eq!(b.eval_scalar(&[]).unwrap(), q(1));
    }

    #[test]
    fn eval_matches_substituted_expansion() {
        let mut b = A::new(3, vec![1, 2, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 2), (1, -1)]));
        b.add_edge(0, 0, 1, lf(&[(2, 1)]));
        b.add_edge(1, 0, 0, lf(&[(1, 3)]));
        b.add_edge(1, 1, 0, lf(&[(0, 1), (2, -2)]));
        let point = vec![Rational::new(1, 2), q(3), Rational::new(-2, 3)];
        let expanded = b.expand(false).unwrap();
        assert_eq!(
            b.eval_scalar(&point).unwrap(),
            expanded.substitute(&point).unwrap()
        );
    }

    #[test]
    fn eval_matches_substitution_on_random_programs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let b = crate::verify::random_homogeneous_abp(&mut rng, 3, 3, 3);
            let point: Vec<Rational> = (0..3)
                .map(|_| Rational::new(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4)))
                .collect();
            assert_eq!(
                b.eval_scalar(&point).unwrap(),
                b.expand(false).unwrap().substitute(&point).unwrap()
            );
        }
    }

    #[test]
    fn scalar_edges_participate_in_expansion() {
        // y1 * 1 * y2 across three edge layers.
        let mut b = A::new(2, vec![1, 1, 1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(1, 0, 0, LinForm::scalar(q(1)));
        b.add_edge(2, 0, 0, lf(&[(1, 1)]));
        let p = b.expand(false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 1])), q(1));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn normalize_prunes_dead_nodes_but_keeps_sinks() {
        let mut b = A::new(1, vec![1, 3, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(0, 0, 2, lf(&[(0, 1)]));
        b.add_edge(1, 0, 0, lf(&[(0, 1)]));
        // Node 1 of layer 1 is untouched; node 2 has no way out.
        b.normalize();
        assert_eq!(b.layer_sizes(), &[1, 1, 1]);
        assert!(b.is_pruned());
        let p = b.expand(false).unwrap();
        assert_eq!(p.coeff(&Word(vec![0, 0])), q(1));
    }

    #[test]
    fn normalize_keeps_zero_program_valid() {
        let mut b = A::new(1, vec![1, 2, 1]);
        b.add_edge(0, 0, 1, lf(&[(0, 1)]));
        // No edge reaches the sink.
        b.normalize();
        assert!(b.expand(false).unwrap().is_zero());
    }

    #[test]
    fn parallel_edges_merge_on_canonicalize() {
        let mut b = A::new(1, vec![1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(0, 0, 0, lf(&[(0, 2)]));
        b.canonicalize();
        assert_eq!(b.edge_count(), 1);
        assert_eq!(b.expand(false).unwrap().coeff(&Word(vec![0])), q(3));
    }

    #[test]
    fn transition_matrix_of_single_edge() {
        let mut b = A::new(1, vec![1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        let tm = b.transition_matrices().unwrap();
        assert_eq!(tm.size, 2);
        assert_eq!(*tm.mats[0].get(0, 1), q(1));
        assert_eq!(*tm.mats[0].get(1, 0), q(0));
        assert_eq!((tm.source, tm.sink), (0, 1));
    }

    #[test]
    fn transition_matrices_of_edgeless_program_are_zero() {
        let b = A::new(2, vec![1, 1]);
        let tm = b.transition_matrices().unwrap();
        assert!(tm.mats.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn transition_matrices_reject_scalar_edges() {
        let mut b = A::new(1, vec![1, 1]);
        b.add_edge(0, 0, 0, LinForm::scalar(q(2)));
        assert!(matches!(b.transition_matrices(), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn transition_matrix_power_reproduces_eval() {
        let mut b = A::new(2, vec![1, 2, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1), (1, 2)]));
        b.add_edge(0, 0, 1, lf(&[(1, -1)]));
        b.add_edge(1, 0, 0, lf(&[(0, 3)]));
        b.add_edge(1, 1, 0, lf(&[(0, 1), (1, 1)]));
        let point = vec![q(2), Rational::new(1, 3)];
        let tm = b.transition_matrices().unwrap();
        let scaled = tm.scaled_by(&point).unwrap();
        let total = scaled.iter().fold(SquareMat::zero(tm.size), |acc, m| acc.add(m));
        let powered = total.mul(&total);
        assert_eq!(*powered.get(tm.source, tm.sink), b.eval_scalar(&point).unwrap());
    }

    #[test]
    fn node_degrees_with_scalar_edges() {
        let mut b = A::new(1, vec![1, 2, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(0, 0, 1, LinForm::scalar(q(1)));
        b.add_edge(1, 1, 0, lf(&[(0, 1)]));
        b.add_edge(1, 0, 0, LinForm::scalar(q(1)));
        let deg = b.node_degrees().unwrap();
        assert_eq!(deg[1], vec![Some(1), Some(0)]);
        assert_eq!(deg[2], vec![Some(1)]);
    }

    #[test]
    fn eval_matrix_on_one_by_one_matrices_is_scalar_eval() {
        let mut b = A::new(2, vec![1, 2, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(0, 0, 1, lf(&[(1, 2)]));
        b.add_edge(1, 0, 0, lf(&[(1, 1)]));
        b.add_edge(1, 1, 0, lf(&[(0, -1)]));
        let point = vec![q(3), Rational::new(5, 7)];
        let mats: Vec<SquareMat<Rational>> = point
            .iter()
            .map(|v| {
                let mut m = SquareMat::zero(1);
                m.set(0, 0, v.clone());
                m
            })
            .collect();
        let out = b.eval_matrix(&mats).unwrap();
        assert_eq!(*out.get(0, 0), b.eval_scalar(&point).unwrap());
    }
}
