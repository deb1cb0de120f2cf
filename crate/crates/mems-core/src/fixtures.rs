//! Bundled reference data for the two four-party classes and the triangle,
//! and the report that regenerates and checks it.
//!
//! Table fixtures keep the published row and column label orders together
//! with the permutation into canonical order, so comparisons are bit-exact
//! without changing the internal ordering.

use std::fmt;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::error::{MemsError, Result};
use crate::hypergraph::Hypergraph;
use crate::io;
use crate::linalg::{self, Rational, RationalMatrix};
use crate::partitions::Partition;
use crate::reduction::{build_reduction_matrix, codimension, parse_signal_text, shared_index, signals, MicroIndex};

pub const TABLE1_JSON: &str = include_str!("../../../fixtures/table1.json");
pub const TABLE2_JSON: &str = include_str!("../../../fixtures/table2.json");
pub const EQUALITIES_JSON: &str = include_str!("../../../fixtures/equalities.json");
pub const TRIANGLE_JSON: &str = include_str!("../../../fixtures/triangle.json");
pub const K3N4_JSON: &str = include_str!("../../../fixtures/k3n4.json");
pub const K2N4_JSON: &str = include_str!("../../../fixtures/k2n4.json");

pub fn triangle() -> Hypergraph {
    io::hypergraph_from_json(TRIANGLE_JSON).expect("bundled triangle")
}

pub fn k3n4() -> Hypergraph {
    io::hypergraph_from_json(K3N4_JSON).expect("bundled k3n4")
}

pub fn k2n4() -> Hypergraph {
    io::hypergraph_from_json(K2N4_JSON).expect("bundled k2n4")
}

#[derive(Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct TableDoc {
    name: String,
    hypergraph: GraphDoc,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    row_permutation: Vec<usize>,
    col_permutation: Vec<usize>,
    bits: Vec<String>,
}

/// A published 0-1 matrix in its published label order.
#[derive(Clone, Debug)]
pub struct TableFixture {
    pub name: String,
    pub hypergraph: Hypergraph,
    pub row_labels: Vec<String>,
    /// `edge:partition`, e.g. `ABC:C|AB`.
    pub col_labels: Vec<String>,
    /// Canonical macro position of each published row.
    pub row_permutation: Vec<usize>,
    /// Canonical micro position of each published column.
    pub col_permutation: Vec<usize>,
    pub bits: Vec<Vec<u8>>,
}

impl TableFixture {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: TableDoc = serde_json::from_str(text).map_err(|e| MemsError::Parse(e.to_string()))?;
        let vs = crate::partitions::VertexSet::new(doc.hypergraph.vertices)?;
        let hypergraph = Hypergraph::from_labels(vs, &doc.hypergraph.edges)?;
        let bits = doc
            .bits
            .iter()
            .map(|row| {
                row.chars()
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(MemsError::Parse(format!("bad matrix bit `{other}`"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let fixture = Self {
            name: doc.name,
            hypergraph,
            row_labels: doc.row_labels,
            col_labels: doc.col_labels,
            row_permutation: doc.row_permutation,
            col_permutation: doc.col_permutation,
            bits,
        };
        if fixture.bits.len() != fixture.row_labels.len()
            || fixture.bits.iter().any(|r| r.len() != fixture.col_labels.len())
        {
            return Err(MemsError::DimensionMismatch(format!("{}: bits do not match labels", fixture.name)));
        }
        Ok(fixture)
    }

    /// Canonical positions derived from the labels themselves.
    pub fn derive_permutations(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let vs = self.hypergraph.vertices();
        let idx = shared_index(vs.full_mask());
        let rows = self
            .row_labels
            .iter()
            .map(|l| {
                let p = Partition::parse(l, vs, true)?;
                idx.position(&p).ok_or_else(|| MemsError::InvalidPartition(format!("row `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let micro = MicroIndex::new(&self.hypergraph);
        let cols = self
            .col_labels
            .iter()
            .map(|l| {
                let (edge, part) = l
                    .split_once(':')
                    .ok_or_else(|| MemsError::Parse(format!("column `{l}` is not `edge:partition`")))?;
                let (e, _) = vs.parse_block(edge)?;
                let p = Partition::parse(part, vs, true)?;
                micro
                    .entries()
                    .iter()
                    .position(|(me, mp)| *me == e && *mp == p)
                    .ok_or_else(|| MemsError::InvalidPartition(format!("column `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((rows, cols))
    }
}

pub fn table1() -> TableFixture {
    TableFixture::from_json(TABLE1_JSON).expect("bundled table 1")
}

pub fn table2() -> TableFixture {
    TableFixture::from_json(TABLE2_JSON).expect("bundled table 2")
}

/// Published equality texts for one class, parsed into macro coordinates.
pub fn equality_rows(class: &str, h: &Hypergraph) -> Result<RationalMatrix> {
    let doc: std::collections::BTreeMap<String, Vec<String>> =
        serde_json::from_str(EQUALITIES_JSON).map_err(|e| MemsError::Parse(e.to_string()))?;
    let texts = doc.get(class).ok_or_else(|| MemsError::Parse(format!("no equalities for `{class}`")))?;
    let vs = h.vertices();
    let idx = shared_index(vs.full_mask());
    let rows = texts
        .iter()
        .map(|t| parse_signal_text(t, &idx, vs, true))
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(idx.len(), rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.to_string(), passed, detail }
    }
}

/// Compares a table against the computed reduction matrix, naming the
/// first differing entry by its published labels.
pub fn check_table(t: &TableFixture) -> Result<Check> {
    let (rows, cols) = t.derive_permutations()?;
    if rows != t.row_permutation || cols != t.col_permutation {
        return Ok(Check::new(&t.name, false, "stored permutation disagrees with the labels".into()));
    }
    let r = build_reduction_matrix(&t.hypergraph).matrix;
    if r.rows() != rows.len() || r.cols() != cols.len() {
        return Ok(Check::new(
            &t.name,
            false,
            format!("shape {}x{} but computed {}x{}", rows.len(), cols.len(), r.rows(), r.cols()),
        ));
    }
    for (i, &ri) in rows.iter().enumerate() {
        for (j, &cj) in cols.iter().enumerate() {
            let computed = u8::from(r.get(ri, cj).is_one());
            if computed != t.bits[i][j] {
                return Ok(Check::new(
                    &t.name,
                    false,
                    format!(
                        "row `{}`, column `{}`: fixture {} but computed {}",
                        t.row_labels[i], t.col_labels[j], t.bits[i][j], computed
                    ),
                ));
            }
        }
    }
    Ok(Check::new(&t.name, true, format!("{}x{} bit-exact", rows.len(), cols.len())))
}

/// Span of the computed signals versus the span of the published equalities.
pub fn check_equalities(class: &str, h: &Hypergraph) -> Result<Check> {
    let published = equality_rows(class, h)?;
    let computed = signals(h);
    let same = linalg::same_span(&computed.coefficients().transpose(), &published.transpose())?;
    Ok(Check::new(
        &format!("equalities {class}"),
        same,
        format!("{} published, {} computed", published.rows(), computed.len()),
    ))
}

/// The triangle's single signal is proportional to `(2, -1, -1, -1)`.
pub fn check_triangle() -> Result<Check> {
    let h = triangle();
    let sig = signals(&h);
    let published = equality_rows("triangle", &h)?;
    let ok = sig.len() == 1 && linalg::same_span(&sig.coefficients().transpose(), &published.transpose())?;
    let detail = sig.render().join("; ");
    Ok(Check::new("triangle signal", ok, detail))
}

pub fn check_codimensions() -> Check {
    let (a, b) = (codimension(&k3n4()), codimension(&k2n4()));
    let (sa, sb) = (signals(&k3n4()).len(), signals(&k2n4()).len());
    Check::new("codimensions", (a, b, sa, sb) == (4, 8, 4, 8), format!("k3n4: {a}, k2n4: {b}"))
}

/// Replacement table texts, used to run the report against edited data.
#[derive(Clone, Debug, Default)]
pub struct FixtureOverrides {
    pub table1: Option<String>,
    pub table2: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FixtureReport {
    pub checks: Vec<Check>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{status}  {:width$}  {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

pub fn emit_fixture_report(overrides: &FixtureOverrides) -> Result<FixtureReport> {
    let t1 = TableFixture::from_json(overrides.table1.as_deref().unwrap_or(TABLE1_JSON))?;
    let t2 = TableFixture::from_json(overrides.table2.as_deref().unwrap_or(TABLE2_JSON))?;
    let checks = vec![
        check_table(&t1)?,
        check_table(&t2)?,
        check_triangle()?,
        check_equalities("k3n4", &k3n4())?,
        check_equalities("k2n4", &k2n4())?,
        check_codimensions(),
    ];
    Ok(FixtureReport { checks })
}

/// Whether every published equality row is a left null vector of `R(H)`.
pub fn equalities_annihilate(class: &str, h: &Hypergraph) -> Result<bool> {
    let rows = equality_rows(class, h)?;
    let r = build_reduction_matrix(h).matrix;
    Ok((0..rows.rows()).all(|i| linalg::row_times(rows.row(i), &r).iter().all(Rational::is_zero)))
}
