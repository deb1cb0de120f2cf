//! JSON and DOT serialization for hypergraphs, matrices, signal sets and
//! points.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{MemsError, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{Rational, RationalMatrix};
use crate::partitions::{bits, popcount, Partition, VertexSet};
use crate::reduction::{parse_rational, shared_index, SignalSet};
use crate::structure::MemsPoint;

fn parse_err(e: serde_json::Error) -> MemsError {
    MemsError::Parse(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

/// `{"vertices": [...], "edges": [[...], ...]}` with edges as sorted lists
/// of sorted labels.
pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    let mut edges = h.edge_labels();
    edges.sort();
    let doc = GraphJson { vertices: h.vertices().labels().to_vec(), edges };
    serde_json::to_string_pretty(&doc).expect("graph serializes")
}

pub fn hypergraph_from_json(text: &str) -> Result<Hypergraph> {
    let doc: GraphJson = serde_json::from_str(text).map_err(parse_err)?;
    let vs = VertexSet::new(doc.vertices)?;
    Hypergraph::from_labels(vs, &doc.edges)
}

fn rational_text(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row_labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    col_labels: Option<Vec<String>>,
}

pub fn matrix_to_json(m: &RationalMatrix) -> String {
    let doc = MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| m.row(i).iter().map(rational_text).collect()).collect(),
        row_labels: m.row_labels().map(<[String]>::to_vec),
        col_labels: m.col_labels().map(<[String]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("matrix serializes")
}

pub fn matrix_from_json(text: &str) -> Result<RationalMatrix> {
    let doc: MatrixJson = serde_json::from_str(text).map_err(parse_err)?;
    if doc.entries.len() != doc.rows {
        return Err(MemsError::Parse(format!("{} entry rows, expected {}", doc.entries.len(), doc.rows)));
    }
    let rows = doc
        .entries
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(doc.cols, rows)?.with_labels(doc.row_labels, doc.col_labels)
}

/// Recovers the vertex set from macro-order labels: the finest partition
/// lists every vertex as its own block.
fn vertices_from_order(order: &[String]) -> Result<VertexSet> {
    let finest = order
        .iter()
        .max_by_key(|l| l.split('|').count())
        .ok_or_else(|| MemsError::Parse("empty macro order".into()))?;
    VertexSet::new(finest.split('|').map(|s| s.trim().to_string()))
}

/// Maps each label to its canonical position, rejecting duplicates and gaps.
fn order_positions(order: &[String], vs: &VertexSet, normalize: bool) -> Result<Vec<usize>> {
    let idx = shared_index(vs.full_mask());
    if order.len() != idx.len() {
        return Err(MemsError::DimensionMismatch(format!(
            "{} labels for {} nontrivial partitions",
            order.len(),
            idx.len()
        )));
    }
    let mut seen = vec![false; idx.len()];
    order
        .iter()
        .map(|label| {
            let p = Partition::parse(label, vs, normalize)?;
            let pos = idx
                .position(&p)
                .ok_or_else(|| MemsError::InvalidPartition(format!("`{label}` is not a nontrivial partition of V")))?;
            if std::mem::replace(&mut seen[pos], true) {
                return Err(MemsError::Parse(format!("partition `{label}` listed twice")));
            }
            Ok(pos)
        })
        .collect()
}

#[derive(Serialize)]
struct SignalJsonOut {
    macro_order: Vec<String>,
    signals: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
struct SignalJsonIn {
    macro_order: Vec<String>,
    signals: Vec<Vec<Value>>,
}

fn int_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(n.to_string()),
    }
}

/// `{"macro_order": [...], "signals": [[int, ...], ...]}`.
pub fn signals_to_json(sig: &SignalSet) -> String {
    let doc = SignalJsonOut {
        macro_order: sig.macro_index().labels(sig.vertices()),
        signals: sig.integer_rows().iter().map(|r| r.iter().map(int_value).collect()).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("signals serialize")
}

fn coefficient(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(x) => Ok(Rational::from_integer(x.into())),
            None => Err(MemsError::Parse(format!("coefficient {n} is not an integer"))),
        },
        Value::String(s) => parse_rational(s),
        other => Err(MemsError::Parse(format!("bad coefficient {other}"))),
    }
}

/// Parses a signal set; `macro_order` may be any permutation of the
/// nontrivial partitions. Rows are re-canonicalized. Labels must be in
/// canonical spelling unless `normalize` is set.
pub fn signals_from_json(text: &str, normalize: bool) -> Result<SignalSet> {
    let doc: SignalJsonIn = serde_json::from_str(text).map_err(parse_err)?;
    let vs = vertices_from_order(&doc.macro_order)?;
    let pos = order_positions(&doc.macro_order, &vs, normalize)?;
    let dim = pos.len();
    let mut rows = Vec::with_capacity(doc.signals.len());
    for row in &doc.signals {
        if row.len() != dim {
            return Err(MemsError::DimensionMismatch(format!(
                "signal row has {} coefficients, expected {dim}",
                row.len()
            )));
        }
        let mut out = vec![Rational::from_integer(0.into()); dim];
        for (v, &p) in row.iter().zip(&pos) {
            out[p] = coefficient(v)?;
        }
        rows.push(out);
    }
    SignalSet::from_rows(vs, RationalMatrix::from_rows(dim, rows)?)
}

#[derive(Serialize, Deserialize)]
struct PointJson {
    order: Vec<String>,
    values: Vec<f64>,
}

/// `{"order": [...], "values": [...]}`.
pub fn point_to_json(p: &MemsPoint) -> String {
    let doc = PointJson { order: p.order(), values: p.values().to_vec() };
    serde_json::to_string_pretty(&doc).expect("point serializes")
}

pub fn point_from_json(text: &str, normalize: bool) -> Result<MemsPoint> {
    let doc: PointJson = serde_json::from_str(text).map_err(parse_err)?;
    if doc.order.len() != doc.values.len() {
        return Err(MemsError::DimensionMismatch("order and values differ in length".into()));
    }
    let vs = vertices_from_order(&doc.order)?;
    let pos = order_positions(&doc.order, &vs, normalize)?;
    let mut values = vec![0.0; pos.len()];
    for (v, &p) in doc.values.iter().zip(&pos) {
        values[p] = *v;
    }
    MemsPoint::new(vs, values)
}

fn dot_id(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering: pairs as plain edges, larger hyperedges as labeled
/// auxiliary nodes joined to their members.
pub fn hypergraph_to_dot(h: &Hypergraph) -> String {
    let vs = h.vertices();
    let mut out = String::from("graph hypergraph {\n");
    for label in vs.labels() {
        let _ = writeln!(out, "  {};", dot_id(label));
    }
    for (k, &e) in h.edges().iter().enumerate() {
        let members: Vec<&str> = bits(e).map(|v| vs.label(v)).collect();
        if popcount(e) == 2 {
            let _ = writeln!(out, "  {} -- {};", dot_id(members[0]), dot_id(members[1]));
        } else {
            let aux = format!("e{k}");
            let _ = writeln!(out, "  {aux} [shape=box, label={}];", dot_id(&vs.format_mask(e)));
            for m in members {
                let _ = writeln!(out, "  {aux} -- {};", dot_id(m));
            }
        }
    }
    out.push_str("}\n");
    out
}
