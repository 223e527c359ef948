//! Mirror constructions: glue a multi-output program to the reversal of
//! another one, sink by sink, with a scalar link weight per pair.

use crate::abp::{Abp, Edge};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Joins `left` to the mirror image of `right`. Sink `i` of `left` is
/// identified with sink `i` of `right`; the polynomial computed is
/// `sum_i left_i * links[i] * reverse(right_i)`.
///
/// The link scalars are multiplied into the first mirrored edge out of each
/// identified sink instead of being kept as separate weight-one edges, so no
/// extra layer appears. The result is normalized.
pub fn mirror_join<S: Scalar>(left: &Abp<S>, right: &Abp<S>, links: &[S]) -> Result<Abp<S>> {
    if left.sources.len() != 1 || right.sources.len() != 1 {
        return Err(Error::InvalidParameter("mirror_join expects single-source operands".into()));
    }
    if left.sinks.len() != right.sinks.len() || links.len() != left.sinks.len() {
        return Err(Error::InvalidParameter(format!(
            "sink/link count mismatch: {} vs {} vs {}",
            left.sinks.len(),
            right.sinks.len(),
            links.len()
        )));
    }
    if right.depth() == 0 {
        return Err(Error::InvalidParameter("mirror_join needs a right side with edges".into()));
    }

    let nvars = left.nvars.max(right.nvars);
    let l_last = left.layers.len() - 1;
    let r_last = right.layers.len() - 1;
    // Mirrored copy of right layer l2 < r_last lands at this output layer.
    let out_layer = |l2: usize| l_last + (r_last - l2);

    let mut layers = left.layers.clone();
    layers.extend(right.layers[..r_last].iter().rev().copied());
    let mut out = Abp::new(nvars, layers);

    for e in &left.edges {
        out.add_edge(e.layer, e.from, e.to, e.label.clone());
    }
    for ((l, u), text) in &left.labels {
        out.set_label(*l, *u, text.clone());
    }

    // Where a node of right's sink layer appears in the merged middle layer.
    let middle_of = |node: usize| -> Option<(usize, &S)> {
        right
            .sinks
            .iter()
            .position(|&t| t == node)
            .map(|i| (left.sinks[i], &links[i]))
    };

    for e in &right.edges {
        let Edge { layer, from, to, label } = e;
        if layer + 1 == r_last {
            // Edge into right's sink layer: reversed, it leaves the merged
            // middle layer, and the link scalar folds into its label.
            let Some((mid, link)) = middle_of(*to) else { continue };
            out.add_edge(l_last, mid, *from, label.scale(link));
        } else {
            out.add_edge(out_layer(*layer + 1), *to, *from, label.clone());
        }
    }
    for ((l, u), text) in &right.labels {
        if *l < r_last {
            out.set_label(out_layer(*l), *u, text.clone());
        }
    }

    out.set_sources(left.sources.clone());
    out.set_sinks(vec![right.sources[0]]);
    out.normalize();
    Ok(out)
}

/// `sum_i f_i * links[i] * reverse(f_i)` over the outputs of one program.
pub fn reverse_mirror<S: Scalar>(b: &Abp<S>, links: &[S]) -> Result<Abp<S>> {
    mirror_join(b, b, links)
}
