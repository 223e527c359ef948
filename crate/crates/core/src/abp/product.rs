//! Hadamard product of branching programs.
//!
//! For two strictly homogeneous programs of the same degree the product
//! program pairs nodes layer by layer; the edge between `(u, u')` and
//! `(v, v')` carries `sum_i ([y_i]L1)([y_i]L2) y_i`, so its expansion is the
//! coefficient-wise product of the operand expansions and layer `l` has
//! exactly `w1(l) * w2(l)` nodes.
//!
//! One operand may instead interleave scalar (degree-0) edges with its
//! linear layers; subset-sum re-wiring and skip edges produce those. The
//! pair construction then lets that operand drive the layering while the
//! strictly homogeneous operand advances only on joint letter steps.

use std::collections::HashMap;

use crate::abp::{edge_kind, Abp, EdgeKind, LinForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn joint_label<S: Scalar>(a: &LinForm<S>, b: &LinForm<S>) -> LinForm<S> {
    let mut out = LinForm::zero();
    for (v, ca) in a.terms() {
        let cb = b.coeff(v);
        if !cb.is_zero() {
            out.add_term(v, ca.mul(&cb));
        }
    }
    out
}

fn check_operands<S: Scalar>(a: &Abp<S>, b: &Abp<S>) -> Result<()> {
    if a.sources.len() != 1 || a.sinks.len() != 1 || b.sources.len() != 1 || b.sinks.len() != 1 {
        return Err(Error::InvalidParameter(
            "hadamard product expects single-source, single-sink programs".into(),
        ));
    }
    if a.nvars != b.nvars {
        return Err(Error::VariableMismatch { left: a.nvars, right: b.nvars });
    }
    Ok(())
}

/// Product construction for two strictly homogeneous programs of equal
/// degree. Emits the full node grid, so per-layer sizes are exactly the
/// products of the operand sizes. Falls back to the pruned pair
/// construction when one operand carries scalar edges.
pub fn hadamard_abp<S: Scalar>(a: &Abp<S>, b: &Abp<S>) -> Result<Abp<S>> {
    check_operands(a, b)?;
    if !a.is_strictly_homogeneous() || !b.is_strictly_homogeneous() {
        return hadamard_abp_pruned(a, b);
    }
    if a.depth() != b.depth() {
        return Err(Error::DegreeMismatch { left: a.depth(), right: b.depth() });
    }

    let widths_b = b.layers.clone();
    let layers: Vec<usize> = a.layers.iter().zip(&widths_b).map(|(x, y)| x * y).collect();
    let mut out = Abp::new(a.nvars, layers);
    let pair = |layer: usize, u: usize, w: usize| u * widths_b[layer] + w;

    let buckets_a = a.edges_by_layer();
    let buckets_b = b.edges_by_layer();
    for l in 0..a.depth() {
        for ea in &buckets_a[l] {
            for eb in &buckets_b[l] {
                let label = joint_label(&ea.label, &eb.label);
                if !label.is_zero() {
                    out.add_edge(l, pair(l, ea.from, eb.from), pair(l + 1, ea.to, eb.to), label);
                }
            }
        }
    }
    out.set_sources(vec![pair(0, a.sources[0], b.sources[0])]);
    out.set_sinks(vec![pair(a.depth(), a.sinks[0], b.sinks[0])]);
    out.canonicalize();
    Ok(out)
}

/// Pair construction that only materializes reachable node pairs and prunes
/// afterwards. Accepts scalar edges on at most one operand; both operands
/// may also be strictly homogeneous. Expansion equals the coefficient-wise
/// product either way.
pub fn hadamard_abp_pruned<S: Scalar>(a: &Abp<S>, b: &Abp<S>) -> Result<Abp<S>> {
    check_operands(a, b)?;
    match (a.has_scalar_edges(), b.has_scalar_edges()) {
        (true, true) => Err(Error::InvalidParameter(
            "at most one hadamard operand may carry scalar edges".into(),
        )),
        (false, true) => pair_product(b, a),
        _ => pair_product(a, b),
    }
}

/// `driver` may mix scalar and linear edges; `tracker` must be strictly
/// homogeneous. Product layers follow the driver; the tracker position
/// advances only on linear steps.
fn pair_product<S: Scalar>(driver: &Abp<S>, tracker: &Abp<S>) -> Result<Abp<S>> {
    if !tracker.is_strictly_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let depth = driver.depth();
    // State per driver layer: (driver node, tracker layer, tracker node).
    let mut index: Vec<HashMap<(usize, usize, usize), usize>> = vec![HashMap::new(); depth + 1];
    let mut states: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); depth + 1];
    let intern = |layer: usize,
                  state: (usize, usize, usize),
                  index: &mut Vec<HashMap<(usize, usize, usize), usize>>,
                  states: &mut Vec<Vec<(usize, usize, usize)>>| {
        let next = index[layer].len();
        *index[layer].entry(state).or_insert_with(|| {
            states[layer].push(state);
            next
        })
    };

    let start = (driver.sources[0], 0usize, tracker.sources[0]);
    intern(0, start, &mut index, &mut states);

    // Edges indexed per (layer, tail node) so state expansion is local.
    fn by_tail<S: Scalar>(abp: &Abp<S>) -> Vec<Vec<Vec<&crate::abp::Edge<S>>>> {
        let mut out: Vec<Vec<Vec<&crate::abp::Edge<S>>>> = abp
            .layer_sizes()
            .iter()
            .take(abp.depth())
            .map(|&w| vec![Vec::new(); w])
            .collect();
        for e in abp.edges() {
            out[e.layer][e.from].push(e);
        }
        out
    }
    let buckets_d = by_tail(driver);
    let buckets_t = by_tail(tracker);
    struct PendingEdge<S: Scalar> {
        layer: usize,
        from: usize,
        to: (usize, usize, usize),
        label: LinForm<S>,
    }
    let mut pending: Vec<PendingEdge<S>> = Vec::new();

    for l in 0..depth {
        // states[l] can grow while we iterate only for later layers, so a
        // plain index loop is safe here.
        let mut i = 0;
        while i < states[l].len() {
            let (u, tl, w) = states[l][i];
            let from_idx = i;
            i += 1;
            for ed in &buckets_d[l][u] {
                match edge_kind(&ed.label)? {
                    EdgeKind::Scalar => {
                        let to = (ed.to, tl, w);
                        intern(l + 1, to, &mut index, &mut states);
                        pending.push(PendingEdge {
                            layer: l,
                            from: from_idx,
                            to,
                            label: ed.label.clone(),
                        });
                    }
                    EdgeKind::Linear => {
                        if tl >= tracker.depth() {
                            continue;
                        }
                        for et in &buckets_t[tl][w] {
                            let label = joint_label(&ed.label, &et.label);
                            if label.is_zero() {
                                continue;
                            }
                            let to = (ed.to, tl + 1, et.to);
                            intern(l + 1, to, &mut index, &mut states);
                            pending.push(PendingEdge { layer: l, from: from_idx, to, label });
                        }
                    }
                }
            }
        }
    }

    let goal = (driver.sinks[0], tracker.depth(), tracker.sinks[0]);
    let sink_idx = match index[depth].get(&goal) {
        Some(&i) => i,
        None => intern(depth, goal, &mut index, &mut states),
    };

    let layer_sizes: Vec<usize> = states.iter().map(|s| s.len().max(1)).collect();
    let mut out = Abp::new(driver.nvars, layer_sizes);
    for e in pending {
        let to_idx = index[e.layer + 1][&e.to];
        out.add_edge(e.layer, e.from, to_idx, e.label);
    }
    // Carry driver-side labels over for diagnostics where unambiguous.
    for (layer, layer_states) in states.iter().enumerate() {
        for (i, (u, _, _)) in layer_states.iter().enumerate() {
            if let Some(text) = driver.label(layer, *u) {
                out.set_label(layer, i, text);
            }
        }
    }
    out.set_sources(vec![0]);
    out.set_sinks(vec![sink_idx]);
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Word;
    use crate::scalar::Rational;

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
    fn product_of_single_edges() {
        let mut b = Abp::new(2, vec![1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1), (1, 1)]));
        let p = hadamard_abp(&b, &b).unwrap();
        assert_eq!(p.expand(false).unwrap(), b.expand(false).unwrap());
        assert_eq!(p.layer_sizes(), &[1, 1]);
    }

    #[test]
    fn product_layer_sizes_multiply() {
        let mut a = Abp::new(2, vec![1, 2, 1]);
        a.add_edge(0, 0, 0, lf(&[(0, 1)]));
        a.add_edge(0, 0, 1, lf(&[(1, 1)]));
        a.add_edge(1, 0, 0, lf(&[(1, 1)]));
        a.add_edge(1, 1, 0, lf(&[(0, 1)]));
        let mut b = Abp::new(2, vec![1, 3, 1]);
        for t in 0..3u32 {
            b.add_edge(0, 0, t as usize, lf(&[(t % 2, 1)]));
            b.add_edge(1, t as usize, 0, lf(&[((t + 1) % 2, 1)]));
        }
        let p = hadamard_abp(&a, &b).unwrap();
        assert_eq!(p.layer_sizes(), &[1, 6, 1]);
        assert_eq!(
            p.expand(false).unwrap(),
            a.expand(false).unwrap().hadamard(&b.expand(false).unwrap())
        );
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let mut a = Abp::new(1, vec![1, 1]);
        a.add_edge(0, 0, 0, lf(&[(0, 1)]));
        let mut b = Abp::new(1, vec![1, 1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 1)]));
        b.add_edge(1, 0, 0, lf(&[(0, 1)]));
        assert!(hadamard_abp(&a, &b).is_err());
    }

    #[test]
    fn scalar_edges_on_one_side() {
        // driver computes y1 y2 with a scalar detour: y1 * (2) * y2.
        let mut a = Abp::new(2, vec![1, 1, 1, 1]);
        a.add_edge(0, 0, 0, lf(&[(0, 1)]));
        a.add_edge(1, 0, 0, LinForm::scalar(q(2)));
        a.add_edge(2, 0, 0, lf(&[(1, 1)]));
        let mut b = Abp::new(2, vec![1, 1, 1]);
        b.add_edge(0, 0, 0, lf(&[(0, 3)]));
        b.add_edge(1, 0, 0, lf(&[(1, 5)]));
        let p = hadamard_abp_pruned(&a, &b).unwrap();
        let expect = a.expand(false).unwrap().hadamard(&b.expand(false).unwrap());
        assert_eq!(p.expand(false).unwrap(), expect);
        assert_eq!(expect.coeff(&Word(vec![0, 1])), q(30));
        // Orientation is symmetric.
        let p2 = hadamard_abp_pruned(&b, &a).unwrap();
        assert_eq!(p2.expand(false).unwrap(), expect);
    }

    #[test]
    fn both_sides_scalar_is_rejected() {
        let mut a = Abp::new(1, vec![1, 1]);
        a.add_edge(0, 0, 0, LinForm::scalar(q(1)));
        assert!(hadamard_abp_pruned(&a, &a).is_err());
    }

    #[test]
    fn disjoint_supports_give_zero_program() {
        let mut a = Abp::new(2, vec![1, 1]);
        a.add_edge(0, 0, 0, lf(&[(0, 1)]));
        let mut b = Abp::new(2, vec![1, 1]);
        b.add_edge(0, 0, 0, lf(&[(1, 1)]));
        let p = hadamard_abp(&a, &b).unwrap();
        assert!(p.expand(false).unwrap().is_zero());
    }
}
