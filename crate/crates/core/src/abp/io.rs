//! Stable JSON and DOT renderings of a branching program.
//!
//! The JSON layout is canonical: edges sorted by (layer, from, to), terms by
//! variable id, coefficients in their text form. Writing the same program
//! twice yields identical bytes, which golden tests rely on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::abp::{Abp, LinForm};
use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Fp, Rational, Scalar};

#[derive(Serialize, Deserialize)]
struct AbpDoc {
    field: String,
    nvars: u32,
    layers: Vec<usize>,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    layer: usize,
    from: usize,
    to: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    terms: Vec<TermDoc>,
    #[serde(rename = "const", default, skip_serializing_if = "String::is_empty")]
    constant: String,
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    var: u32,
    coef: String,
}

pub fn to_json<S: Scalar>(abp: &Abp<S>, field: FieldSpec) -> String {
    let mut edges: Vec<&crate::abp::Edge<S>> = abp.edges.iter().collect();
    edges.sort_by_key(|e| (e.layer, e.from, e.to));
    let doc = AbpDoc {
        field: field.to_string(),
        nvars: abp.nvars,
        layers: abp.layers.clone(),
        sources: abp.sources.clone(),
        sinks: abp.sinks.clone(),
        edges: edges
            .into_iter()
            .map(|e| EdgeDoc {
                layer: e.layer,
                from: e.from,
                to: e.to,
                terms: e
                    .label
                    .terms()
                    .map(|(v, c)| TermDoc { var: v, coef: c.to_string() })
                    .collect(),
                constant: if e.label.constant_part().is_zero() {
                    String::new()
                } else {
                    e.label.constant_part().to_string()
                },
            })
            .collect(),
        labels: abp
            .labels
            .iter()
            .map(|((l, u), text)| (format!("{l}:{u}"), text.clone()))
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("serialization cannot fail")
}

/// Field tag of a serialized program, read without committing to a
/// coefficient type.
pub struct PeekedHeader {
    pub field: FieldSpec,
}

pub fn peek_header(text: &str) -> Result<PeekedHeader> {
    let doc: serde_json::Value = serde_json::from_str(text)?;
    let field = doc
        .get("field")
        .and_then(|f| f.as_str())
        .ok_or_else(|| Error::Parse("missing field tag".into()))?;
    Ok(PeekedHeader { field: field.parse()? })
}

/// Parses a program using the supplied coefficient parser. Returns the
/// program and its field tag.
pub fn read_json<S: Scalar>(
    text: &str,
    parse_scalar: impl Fn(&str) -> Result<S>,
) -> Result<(Abp<S>, FieldSpec)> {
    let doc: AbpDoc = serde_json::from_str(text)?;
    let field: FieldSpec = doc.field.parse()?;
    if doc.layers.is_empty() {
        return Err(Error::Parse("program needs at least one layer".into()));
    }
    let mut abp = Abp::new(doc.nvars, doc.layers);
    for e in doc.edges {
        if e.layer + 1 >= abp.layers.len()
            || e.from >= abp.layers[e.layer]
            || e.to >= abp.layers[e.layer + 1]
        {
            return Err(Error::Parse(format!(
                "edge ({}, {} -> {}) is out of range",
                e.layer, e.from, e.to
            )));
        }
        let mut label = LinForm::zero();
        for t in e.terms {
            if t.var >= abp.nvars {
                return Err(Error::Parse(format!("variable id {} out of range", t.var)));
            }
            label.add_term(t.var, parse_scalar(&t.coef)?);
        }
        if !e.constant.is_empty() {
            label.add_constant(&parse_scalar(&e.constant)?);
        }
        abp.add_edge(e.layer, e.from, e.to, label);
    }
    let max_source = abp.layers[0];
    let max_sink = *abp.layers.last().unwrap();
    if doc.sources.iter().any(|&s| s >= max_source) || doc.sinks.iter().any(|&t| t >= max_sink) {
        return Err(Error::Parse("source or sink index out of range".into()));
    }
    abp.set_sources(doc.sources);
    abp.set_sinks(doc.sinks);
    for (key, text) in doc.labels {
        let (l, u) = key
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad label key {key:?}")))?;
        let l: usize = l.parse().map_err(|_| Error::Parse(format!("bad label key {key:?}")))?;
        let u: usize = u.parse().map_err(|_| Error::Parse(format!("bad label key {key:?}")))?;
        abp.set_label(l, u, text);
    }
    Ok((abp, field))
}

pub fn read_json_rational(text: &str) -> Result<Abp<Rational>> {
    let (abp, field) = read_json(text, |s| s.parse::<Rational>())?;
    if field != FieldSpec::Rational {
        return Err(Error::Parse(format!("expected a rational program, found {field}")));
    }
    Ok(abp)
}

pub fn read_json_fp(text: &str) -> Result<(Abp<Fp>, u64)> {
    let header = peek_header(text)?;
    let FieldSpec::Fp(p) = header.field else {
        return Err(Error::Parse("expected a prime-field program".into()));
    };
    let (abp, _) = read_json(text, |s| s.parse::<Fp>().map(|v| v.bind(p)))?;
    Ok((abp, p))
}

/// Graphviz rendering with one rank per layer.
pub fn to_dot<S: Scalar>(abp: &Abp<S>) -> String {
    use std::fmt::Write;
    let mut out = String::from("digraph abp {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (l, &width) in abp.layers.iter().enumerate() {
        let _ = writeln!(out, "  {{ rank=same;");
        for u in 0..width {
            let mut attrs = String::new();
            if let Some(text) = abp.label(l, u) {
                attrs = format!(" [label=\"{}\"]", text.replace('"', "'"));
            } else if l == 0 && abp.sources.contains(&u) {
                attrs = " [label=\"src\"]".into();
            } else if l + 1 == abp.layers.len() && abp.sinks.contains(&u) {
                attrs = " [label=\"sink\"]".into();
            }
            let _ = writeln!(out, "    n{l}_{u}{attrs};");
        }
        let _ = writeln!(out, "  }}");
    }
    let mut edges: Vec<&crate::abp::Edge<S>> = abp.edges.iter().collect();
    edges.sort_by_key(|e| (e.layer, e.from, e.to));
    for e in edges {
        let _ = writeln!(
            out,
            "  n{}_{} -> n{}_{} [label=\"{}\"];",
            e.layer,
            e.from,
            e.layer + 1,
            e.to,
            e.label
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Word;

    fn sample() -> Abp<Rational> {
        let mut b = Abp::new(2, vec![1, 2, 1]);
        let mut f = LinForm::term(0, Rational::new(1, 2));
        f.add_term(1, Rational::from_int(-2));
        b.add_edge(0, 0, 0, f);
        b.add_edge(0, 0, 1, LinForm::var(1));
        b.add_edge(1, 0, 0, LinForm::var(0));
        b.add_edge(1, 1, 0, LinForm::scalar(Rational::from_int(3)));
        b.set_label(1, 0, "{1}");
        b
    }

    #[test]
    fn json_round_trip_preserves_expansion() {
        let b = sample();
        let text = to_json(&b, FieldSpec::Rational);
        let loaded = read_json_rational(&text).unwrap();
        assert_eq!(loaded.expand(false).unwrap(), b.expand(false).unwrap());
        assert_eq!(loaded.label(1, 0), Some("{1}"));
        // Canonical bytes: serializing again is identical.
        assert_eq!(to_json(&loaded, FieldSpec::Rational), text);
    }

    #[test]
    fn fp_round_trip_binds_modulus() {
        let mut b = Abp::<Fp>::new(1, vec![1, 1]);
        b.add_edge(0, 0, 0, LinForm::term(0, Fp::new(3, 7)));
        let text = to_json(&b, FieldSpec::Fp(7));
        let (loaded, p) = read_json_fp(&text).unwrap();
        assert_eq!(p, 7);
        let x = loaded.expand(false).unwrap();
        assert_eq!(x.coeff(&Word(vec![0])), Fp::new(3, 7));
    }

    #[test]
    fn header_peek_dispatches() {
        let text = to_json(&sample(), FieldSpec::Rational);
        assert_eq!(peek_header(&text).unwrap().field, FieldSpec::Rational);
    }

    #[test]
    fn rejects_out_of_range_edges() {
        let text = r#"{"field":"rational","nvars":1,"layers":[1,1],
                       "sources":[0],"sinks":[0],
                       "edges":[{"layer":0,"from":0,"to":5,"terms":[{"var":0,"coef":"1"}]}]}"#;
        assert!(read_json_rational(text).is_err());
    }

    #[test]
    fn dot_contains_every_edge() {
        let b = sample();
        let dot = to_dot(&b);
        assert!(dot.contains("n0_0 -> n1_0"));
        assert!(dot.contains("n1_1 -> n2_0"));
        assert!(dot.contains("rank=same"));
    }
}
