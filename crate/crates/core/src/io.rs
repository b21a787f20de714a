//! JSON interchange.
//!
//! Rationals are always strings of the form `"p/q"` or `"p"`; line
//! coefficients are JSON integers of arbitrary size. Object keys are emitted
//! in sorted order, so equal values serialize to identical bytes.
//!
//! Node set: `{"degree": n, "nodes": [["p/q", "p/q"], …], "labels": [..]}`
//! with `labels` optional.
//!
//! Certificate: an array with one entry per node,
//! `{"node": k, "constant": "p/q", "lines": [[a, b, c], …],
//! "witnesses": {"a,b,c": [j, …]}}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::gc::{GCCertificate, NodeCertificate};
use crate::geom::{fmt_scalar, scalar, Line, Point};
use crate::gm::{Counterexample, GMReport, IncidenceProfile, SearchSummary};
use crate::interp::NodeSet;
use crate::mdseq::{MDSequence, MLineSequence};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeSetDoc {
    degree: usize,
    nodes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

pub fn load_nodeset(text: &str) -> Result<NodeSet> {
    let doc: NodeSetDoc = serde_json::from_str(text).map_err(parse_error)?;
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, row) in doc.nodes.iter().enumerate() {
        if row.len() != 2 {
            return Err(Error::Parse {
                location: format!("nodes[{i}]"),
                message: format!("expected 2 coordinates, found {}", row.len()),
            });
        }
        let coord = |c: usize| {
            scalar(&row[c]).map_err(|_| Error::BadRational(format!("nodes[{i}][{c}] = {:?}", row[c])))
        };
        nodes.push(Point::new(coord(0)?, coord(1)?));
    }
    NodeSet::with_labels(doc.degree, nodes, doc.labels)
}

fn nodeset_doc(xs: &NodeSet) -> NodeSetDoc {
    NodeSetDoc {
        degree: xs.degree(),
        nodes: xs
            .nodes()
            .iter()
            .map(|p| vec![fmt_scalar(&p.x), fmt_scalar(&p.y)])
            .collect(),
        labels: xs.labels().map(<[String]>::to_vec),
    }
}

pub fn nodeset_value(xs: &NodeSet) -> Value {
    serde_json::to_value(nodeset_doc(xs)).expect("node set serializes")
}

pub fn save_nodeset(xs: &NodeSet) -> String {
    to_text(&nodeset_value(xs))
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn line_value(l: &Line) -> Value {
    json!([big(l.a()), big(l.b()), big(l.c())])
}

pub fn line_key(l: &Line) -> String {
    l.to_string()
}

/// Parses `a,b,c` (as used in witness keys and on the command line).
pub fn parse_line_key(s: &str) -> Result<Line> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Error::Parse {
        location: "line".into(),
        message: format!("expected a,b,c integers, got {s:?}"),
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<BigInt> = parts
        .iter()
        .map(|p| p.parse::<BigInt>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    Line::new(v[0].clone(), v[1].clone(), v[2].clone())
}

fn node_certificate_value(nc: &NodeCertificate) -> Value {
    let witnesses: serde_json::Map<String, Value> = nc
        .witnesses
        .iter()
        .map(|(l, w)| (line_key(l), json!(w)))
        .collect();
    json!({
        "node": nc.node,
        "constant": fmt_scalar(&nc.constant),
        "lines": nc.lines.iter().map(line_value).collect::<Vec<_>>(),
        "witnesses": witnesses,
    })
}

pub fn certificate_value(cert: &GCCertificate) -> Value {
    Value::Array(cert.nodes.iter().map(node_certificate_value).collect())
}

pub fn save_certificate(cert: &GCCertificate) -> String {
    to_text(&certificate_value(cert))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeCertDoc {
    node: usize,
    constant: String,
    lines: Vec<[Value; 3]>,
    witnesses: BTreeMap<String, Vec<usize>>,
}

fn int_value(v: &Value, at: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| Error::Parse {
            location: at.into(),
            message: format!("{n} is not an integer"),
        }),
        other => Err(Error::Parse {
            location: at.into(),
            message: format!("expected integer, got {other}"),
        }),
    }
}

/// Reads a certificate for `xs` and re-verifies it.
pub fn load_certificate(xs: &NodeSet, text: &str) -> Result<GCCertificate> {
    let docs: Vec<NodeCertDoc> = serde_json::from_str(text).map_err(parse_error)?;
    let mut nodes = Vec::with_capacity(docs.len());
    for (i, d) in docs.into_iter().enumerate() {
        let mut lines = Vec::with_capacity(d.lines.len());
        for (t, [a, b, c]) in d.lines.iter().enumerate() {
            let at = format!("[{i}].lines[{t}]");
            lines.push(Line::new(int_value(a, &at)?, int_value(b, &at)?, int_value(c, &at)?)?);
        }
        let witnesses = d
            .witnesses
            .into_iter()
            .map(|(k, w)| Ok((parse_line_key(&k)?, w)))
            .collect::<Result<_>>()?;
        nodes.push(NodeCertificate {
            node: d.node,
            constant: scalar(&d.constant).map_err(|_| Error::BadRational(format!("[{i}].constant = {:?}", d.constant)))?,
            lines,
            witnesses,
        });
    }
    let cert = GCCertificate {
        nodeset: xs.clone(),
        nodes,
    };
    cert.verify().map_err(|m| Error::Parse {
        location: "certificate".into(),
        message: m,
    })?;
    Ok(cert)
}

fn histogram_value<V: Serialize>(h: &BTreeMap<usize, V>) -> Value {
    // JSON keys are strings; sort numerically by building in key order.
    let mut m = serde_json::Map::new();
    for (k, v) in h {
        m.insert(k.to_string(), serde_json::to_value(v).expect("histogram value"));
    }
    Value::Object(m)
}

fn nested_histogram(h: &BTreeMap<usize, BTreeMap<usize, usize>>) -> Value {
    let mut m = serde_json::Map::new();
    for (k, inner) in h {
        m.insert(k.to_string(), histogram_value(inner));
    }
    Value::Object(m)
}

pub fn counterexample_value(c: &Counterexample) -> Value {
    json!({
        "nodeset": nodeset_value(&c.certificate.nodeset),
        "certificate": certificate_value(&c.certificate),
    })
}

pub fn report_value(r: &GMReport) -> Value {
    json!({
        "degree": r.degree,
        "satisfied": r.satisfied,
        "maximal_lines": r.maximal_lines.iter().map(|m| json!({
            "line": line_value(&m.line),
            "nodes": m.nodes,
            "users": m.users,
        })).collect::<Vec<_>>(),
        "line_histogram": histogram_value(&r.line_histogram),
        "use_counts": nested_histogram(&r.use_counts),
        "counterexample": r.counterexample.as_ref().map(counterexample_value),
    })
}

pub fn save_report(r: &GMReport) -> String {
    to_text(&report_value(r))
}

pub fn summary_value(s: &SearchSummary) -> Value {
    json!({
        "degree": s.degree,
        "kinds": s.kinds.name(),
        "seed": s.seed,
        "trials": s.trials,
        "certified": s.certified,
        "gm_satisfied": s.gm_satisfied,
        "multiplicity_sets": s.multiplicity_sets,
        "use_counts": nested_histogram(&s.use_counts),
        "failures": s.failures.iter().map(|f| json!({
            "trial": f.trial,
            "kind": f.kind.name(),
            "seed": f.seed,
            "error": f.error,
            "counterexample": f.counterexample.as_ref().map(counterexample_value),
        })).collect::<Vec<_>>(),
    })
}

pub fn save_summary(s: &SearchSummary) -> String {
    to_text(&summary_value(s))
}

pub fn sequence_value(s: &MLineSequence) -> Value {
    let primary: Vec<Value> = (0..s.lines.len())
        .map(|pos| json!({ "primary": s.primary_nodes_of(pos), "secondary": s.secondary_nodes_of(pos) }))
        .collect();
    json!({
        "node": s.node,
        "lines": s.lines.iter().map(line_value).collect::<Vec<_>>(),
        "counts": s.counts,
        "nodes": primary,
        "fixed_first": s.fixed_first.as_ref().map(line_value),
        "greedy": s.is_greedy(),
        "violations": s.law_violations(),
    })
}

pub fn mdsequences_value(all: &std::collections::BTreeSet<MDSequence>) -> Value {
    Value::Array(all.iter().map(|m| json!(m.counts)).collect())
}

pub fn profile_value(p: &IncidenceProfile) -> Value {
    json!({
        "center": p.center,
        "target_size": p.target.len(),
        "counts": histogram_value(&p.counts),
        "weighted_sum": p.weighted_sum(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gc::certify_gc;
    use crate::gen::{generate, GeneratorKind, GeneratorSpec};
    use crate::geom::ratio;

    #[test]
    fn load_simple() {
        let xs = load_nodeset(r#"{"degree":1,"nodes":[["0","0"],["1","0"],["0","1"]]}"#).unwrap();
        assert_eq!(xs.len(), 3);
        let third = load_nodeset(r#"{"degree":0,"nodes":[["1/3","-2/6"]]}"#).unwrap();
        assert_eq!(third.nodes()[0], Point::new(ratio(1, 3), ratio(-1, 3)));
    }

    #[test]
    fn load_errors() {
        assert_eq!(
            load_nodeset(r#"{"degree":1,"nodes":[["0","0"],["0","0"]]}"#),
            Err(Error::DuplicateNode(1))
        );
        assert!(matches!(
            load_nodeset(r#"{"degree":1,"nodes":[["0","1/0"]]}"#),
            Err(Error::BadRational(m)) if m.contains("nodes[0][1]")
        ));
        assert!(matches!(load_nodeset(r#"{"degree":1,"nodes":[["0.5","0"]]}"#), Err(Error::BadRational(_))));
        assert!(matches!(load_nodeset("{\"degree\":1,\n\"nodes\":[}"), Err(Error::Parse { location, .. }) if location.starts_with("line 2")));
        assert!(matches!(load_nodeset(r#"{"degree":1,"nodes":[["0"]]}"#), Err(Error::Parse { .. })));
    }

    #[test]
    fn labels_round_trip() {
        let text = r#"{"degree":1,"nodes":[["0","0"],["1","0"],["0","1"]],"labels":["A","B","C"]}"#;
        let xs = load_nodeset(text).unwrap();
        assert_eq!(load_nodeset(&save_nodeset(&xs)).unwrap(), xs);
    }

    #[test]
    fn certificate_round_trip() {
        let g = generate(&GeneratorSpec::new(GeneratorKind::ProjectiveImage, 3, 8)).unwrap();
        let text = save_certificate(&g.certificate);
        let back = load_certificate(&g.nodeset, &text).unwrap();
        assert_eq!(back, g.certificate);
        assert_eq!(save_certificate(&back), text);
    }

    #[test]
    fn certificate_schema_shape() {
        let xs = load_nodeset(r#"{"degree":1,"nodes":[["0","0"],["1","0"],["0","1"]]}"#).unwrap();
        let cert = certify_gc(&xs).unwrap().certificate().unwrap();
        let v = certificate_value(&cert);
        assert_eq!(
            v[0],
            json!({"node": 0, "constant": "-1", "lines": [[1, 1, -1]], "witnesses": {"1,1,-1": [1, 2]}})
        );
    }

    #[test]
    fn tampered_certificate_rejected() {
        let xs = load_nodeset(r#"{"degree":1,"nodes":[["0","0"],["1","0"],["0","1"]]}"#).unwrap();
        let text = r#"[{"node":0,"constant":"1","lines":[[1,1,-1]],"witnesses":{"1,1,-1":[1,2]}},
                      {"node":1,"constant":"1","lines":[[1,0,0]],"witnesses":{"1,0,0":[0,2]}},
                      {"node":2,"constant":"1","lines":[[0,1,0]],"witnesses":{"0,1,0":[0,1]}}]"#;
        assert!(matches!(load_certificate(&xs, text), Err(Error::Parse { .. })));
    }

    #[test]
    fn line_keys() {
        assert_eq!(parse_line_key("-2, 4, 6").unwrap(), Line::from_ints(1, -2, -3).unwrap());
        assert!(parse_line_key("1,2").is_err());
        assert!(parse_line_key("0,0,1").is_err());
    }
}
