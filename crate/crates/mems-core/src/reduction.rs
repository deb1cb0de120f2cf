//! Partition-reduction matrices and the signals they induce.
//!
//! For a hypergraph `H` on `V`, the reduction matrix has one row per
//! nontrivial partition of `V` and one column per pair `(e, π_e)` with `e` an
//! edge and `π_e` a nontrivial partition of `e`. The entry is 1 exactly when
//! restricting the row partition to `e` gives `π_e`. Signals are the left
//! nullspace of this matrix: linear functionals on measure coordinates that
//! vanish on every state of the class.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{MemsError, Result};
use crate::hypergraph::Hypergraph;
use crate::linalg::{self, Rational, RationalMatrix};
use crate::partitions::{bell_usize, popcount, Partition, PartitionIndex, VertexSet};

/// Shared, lazily built partition index for a ground mask.
pub fn shared_index(ground: u64) -> Arc<PartitionIndex> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<PartitionIndex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(idx) = cache.lock().unwrap().get(&ground) {
        return idx.clone();
    }
    let idx = Arc::new(PartitionIndex::new(ground));
    cache.lock().unwrap().entry(ground).or_insert(idx).clone()
}

/// Column index of a reduction matrix: `(edge, partition of that edge)`.
#[derive(Clone, Debug)]
pub struct MicroIndex {
    entries: Vec<(u64, Partition)>,
    offsets: Vec<usize>,
}

impl MicroIndex {
    pub fn new(h: &Hypergraph) -> Self {
        let mut entries = Vec::new();
        let mut offsets = Vec::with_capacity(h.edges().len());
        for &e in h.edges() {
            offsets.push(entries.len());
            entries.extend(shared_index(e).partitions().iter().map(|p| (e, p.clone())));
        }
        Self { entries, offsets }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u64, Partition)] {
        &self.entries
    }

    /// First column belonging to the `k`-th edge.
    pub fn offset(&self, k: usize) -> usize {
        self.offsets[k]
    }

    pub fn labels(&self, vs: &VertexSet) -> Vec<String> {
        self.entries
            .iter()
            .map(|(e, p)| format!("{}:{}", vs.format_mask(*e), p.format(vs)))
            .collect()
    }
}

/// `R(H)` together with its row and column indices.
#[derive(Clone, Debug)]
pub struct ReductionMatrix {
    pub hypergraph: Hypergraph,
    pub macro_index: Arc<PartitionIndex>,
    pub micro: MicroIndex,
    pub matrix: RationalMatrix,
}

pub fn build_reduction_matrix(h: &Hypergraph) -> ReductionMatrix {
    let vs = h.vertices();
    let macro_index = shared_index(vs.full_mask());
    let micro = MicroIndex::new(h);
    let mut matrix = RationalMatrix::zeros(macro_index.len(), micro.len());
    for (row, pi) in macro_index.partitions().iter().enumerate() {
        for (k, &e) in h.edges().iter().enumerate() {
            let r = pi.restrict_unchecked(e);
            if r.is_trivial() {
                continue;
            }
            let local = shared_index(e).position(&r).expect("restriction is a partition of the edge");
            matrix.set(row, micro.offset(k) + local, Rational::one());
        }
    }
    let matrix = matrix
        .with_labels(Some(macro_index.labels(vs)), Some(micro.labels(vs)))
        .expect("labels match dimensions");
    ReductionMatrix { hypergraph: h.clone(), macro_index, micro, matrix }
}

pub fn rank_by_matrix(h: &Hypergraph) -> usize {
    linalg::rank(&build_reduction_matrix(h).matrix)
}

/// Inclusion-exclusion over non-empty edge families: each family `F`
/// contributes `(-1)^{|F|+1} (B_{k(F)} - 1)` where `k(F)` is the size of the
/// common intersection. Families whose intersection has at most one vertex
/// contribute zero, as do all their supersets, so the search prunes there.
pub fn rank_by_formula(h: &Hypergraph) -> usize {
    fn dfs(edges: &[u64], start: usize, inter: u64, size: usize, bell: &[i128], acc: &mut i128) {
        for j in start..edges.len() {
            let next = inter & edges[j];
            let k = popcount(next);
            if k <= 1 {
                continue;
            }
            let term = bell[k] - 1;
            if (size + 1) % 2 == 1 {
                *acc += term;
            } else {
                *acc -= term;
            }
            dfs(edges, j + 1, next, size + 1, bell, acc);
        }
    }
    let bell: Vec<i128> = (0..=h.n()).map(|k| bell_usize(k) as i128).collect();
    let mut acc = 0i128;
    dfs(h.edges(), 0, h.vertices().full_mask(), 0, &bell, &mut acc);
    usize::try_from(acc).expect("rank formula is non-negative")
}

/// Canonical basis of linear equalities over `Π*(V)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignalSet {
    vertices: VertexSet,
    coefficients: RationalMatrix,
}

impl SignalSet {
    /// Canonicalizes arbitrary rows (RREF, coprime integers, first nonzero
    /// positive). Rows must have one entry per nontrivial partition of `V`.
    pub fn from_rows(vertices: VertexSet, rows: RationalMatrix) -> Result<Self> {
        let dim = bell_usize(vertices.len()) - 1;
        if rows.cols() != dim {
            return Err(MemsError::DimensionMismatch(format!(
                "signals have {} coordinates, expected {dim}",
                rows.cols()
            )));
        }
        Ok(Self { vertices, coefficients: linalg::canonical_row_basis(&rows) })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn macro_index(&self) -> Arc<PartitionIndex> {
        shared_index(self.vertices.full_mask())
    }

    pub fn coefficients(&self) -> &RationalMatrix {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.rows() == 0
    }

    pub fn dim(&self) -> usize {
        self.coefficients.cols()
    }

    /// Rows as integers (exact, since the canonical form is integral).
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.len())
            .map(|i| self.coefficients.row(i).iter().map(|x| x.to_integer()).collect())
            .collect()
    }

    pub fn f64_rows(&self) -> Vec<Vec<f64>> {
        self.coefficients.to_f64_rows()
    }

    pub fn render(&self) -> Vec<String> {
        let idx = self.macro_index();
        (0..self.len())
            .map(|i| signal_to_text(self.coefficients.row(i), &idx, &self.vertices))
            .collect()
    }
}

pub fn signals(h: &Hypergraph) -> SignalSet {
    let r = build_reduction_matrix(h);
    SignalSet {
        vertices: h.vertices().clone(),
        coefficients: linalg::left_nullspace(&r.matrix),
    }
}

fn coordinate_name(p: &Partition, vs: &VertexSet) -> String {
    format!("E{}({})", p.block_count(), p.format(vs))
}

/// Renders a functional as `2*E3(A|B|C) - E2(A|BC) - ... = 0`. Terms follow
/// the partition index order; zero coefficients are omitted.
pub fn signal_to_text(row: &[Rational], idx: &PartitionIndex, vs: &VertexSet) -> String {
    let mut out = String::new();
    for (c, p) in row.iter().zip(idx.partitions()) {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if !mag.is_one() {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(&coordinate_name(p, vs));
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

/// Parses the text form produced by [`signal_to_text`], accepting any term
/// order, repeated terms, rational coefficients like `1/3*`, and (with
/// `normalize`) non-canonical partition spellings.
pub fn parse_signal_text(
    text: &str,
    idx: &PartitionIndex,
    vs: &VertexSet,
    normalize: bool,
) -> Result<Vec<Rational>> {
    let lhs = match text.split_once('=') {
        Some((l, r)) if r.trim() == "0" => l,
        _ => return Err(MemsError::Parse(format!("expected `... = 0`, got `{text}`"))),
    };
    let mut coeffs = vec![Rational::zero(); idx.len()];
    let cleaned: String = lhs.split_whitespace().collect();
    if cleaned == "0" {
        return Ok(coeffs);
    }
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes = cleaned.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if (b == b'+' || b == b'-') && i >= start {
            if i > start {
                terms.push((negative, &cleaned[start..i]));
            }
            negative = b == b'-';
            start = i + 1;
        }
    }
    if start < cleaned.len() {
        terms.push((negative, &cleaned[start..]));
    }
    for (neg, term) in terms {
        let (coef, body) = match term.split_once('*') {
            Some((c, b)) => (parse_rational(c)?, b),
            None => (Rational::one(), term),
        };
        let rest = body
            .strip_prefix('E')
            .ok_or_else(|| MemsError::Parse(format!("term `{term}` must start with E")))?;
        let open = rest.find('(').ok_or_else(|| MemsError::Parse(format!("missing `(` in `{term}`")))?;
        let order: usize = rest[..open]
            .parse()
            .map_err(|_| MemsError::Parse(format!("bad block count in `{term}`")))?;
        let inner = rest[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| MemsError::Parse(format!("missing `)` in `{term}`")))?;
        let p = Partition::parse(inner, vs, normalize)?;
        if p.block_count() != order {
            return Err(MemsError::Parse(format!(
                "`{term}` labels a {}-block partition as E{order}",
                p.block_count()
            )));
        }
        let pos = idx
            .position(&p)
            .ok_or_else(|| MemsError::Parse(format!("`{inner}` is not a nontrivial partition of V")))?;
        let c = if neg { -coef } else { coef };
        coeffs[pos] += c;
    }
    Ok(coeffs)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || MemsError::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Codimension of the class, `(B_n - 1) - rank`.
pub fn codimension(h: &Hypergraph) -> usize {
    bell_usize(h.n()) - 1 - rank_by_formula(h)
}

/// `s · p` for a signal row and a floating-point point.
pub fn dot_f64(row: &[Rational], point: &[f64]) -> f64 {
    row.iter()
        .zip(point)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, x)| c.to_f64().unwrap_or(f64::NAN) * x)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{enumerate_antichains, k_uniform_complete};

    fn q(x: i64) -> Rational {
        Rational::from_integer(x.into())
    }

    fn h(n: usize, edges: &[&str]) -> Hypergraph {
        let v = VertexSet::letters(n).unwrap();
        let masks = edges.iter().map(|e| v.parse_block(e).unwrap().0).collect();
        Hypergraph::new(v, masks).unwrap()
    }

    fn triangle() -> Hypergraph {
        h(3, &["AB", "BC", "AC"])
    }

    #[test]
    fn triangle_matrix() {
        let r = build_reduction_matrix(&triangle());
        let vs = triangle().vertices().clone();
        let row_of = |t: &str| {
            r.macro_index.position(&Partition::parse(t, &vs, true).unwrap()).unwrap()
        };
        // Columns are edges in hypergraph order: AB, AC, BC.
        assert_eq!(r.micro.labels(&vs), ["AB:A|B", "AC:A|C", "BC:B|C"]);
        let bits = |t: &str| -> Vec<i64> {
            let i = row_of(t);
            (0..3).map(|j| r.matrix.get(i, j).to_integer().try_into().unwrap()).collect()
        };
        assert_eq!(bits("A|BC"), [1, 1, 0]);
        assert_eq!(bits("B|AC"), [1, 0, 1]);
        assert_eq!(bits("C|AB"), [0, 1, 1]);
        assert_eq!(bits("A|B|C"), [1, 1, 1]);
    }

    #[test]
    fn empty_hypergraph_matrix() {
        let g = Hypergraph::empty(VertexSet::letters(4).unwrap());
        let r = build_reduction_matrix(&g);
        assert_eq!((r.matrix.rows(), r.matrix.cols()), (14, 0));
        assert_eq!(rank_by_matrix(&g), 0);
        assert_eq!(rank_by_formula(&g), 0);
        assert_eq!(signals(&g).len(), 14);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_by_matrix(&triangle()), 3);
        assert_eq!(rank_by_formula(&triangle()), 3);
        let v4 = VertexSet::letters(4).unwrap();
        let k3 = k_uniform_complete(v4.clone(), 3).unwrap();
        let k2 = k_uniform_complete(v4, 2).unwrap();
        assert_eq!(rank_by_matrix(&k3), 10);
        assert_eq!(rank_by_formula(&k3), 10);
        assert_eq!(rank_by_matrix(&k2), 6);
        assert_eq!(rank_by_formula(&k2), 6);
        assert_eq!(codimension(&k3), 4);
        assert_eq!(codimension(&k2), 8);
    }

    #[test]
    fn disjoint_edges_have_additive_rank() {
        let g = h(5, &["ABC", "DE"]);
        assert_eq!(rank_by_formula(&g), (5 - 1) + (2 - 1));
        assert_eq!(rank_by_matrix(&g), 5);
    }

    #[test]
    fn triangle_signal() {
        let s = signals(&triangle());
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficients().row(0), [q(2), q(-1), q(-1), q(-1)]);
        assert_eq!(s.render(), ["2*E3(A|B|C) - E2(A|BC) - E2(AC|B) - E2(AB|C) = 0"]);
        let vs = triangle().vertices().clone();
        let idx = s.macro_index();
        let displayed = "2*E3(A|B|C) - E2(A|BC) - E2(B|AC) - E2(C|AB) = 0";
        assert_eq!(parse_signal_text(displayed, &idx, &vs, true).unwrap(), s.coefficients().row(0));
    }

    #[test]
    fn full_edge_has_no_signals() {
        assert!(signals(&h(3, &["ABC"])).is_empty());
        assert!(signals(&h(4, &["ABCD"])).is_empty());
    }

    #[test]
    fn text_rendering_edge_cases() {
        let vs = VertexSet::letters(3).unwrap();
        let idx = PartitionIndex::for_vertices(&vs);
        assert_eq!(signal_to_text(&vec![q(0); 4], &idx, &vs), "0 = 0");
        let row = [q(-1), Rational::new(1.into(), 3.into()), q(0), q(1)];
        let text = signal_to_text(&row, &idx, &vs);
        assert_eq!(text, "-E3(A|B|C) + 1/3*E2(A|BC) + E2(AB|C) = 0");
        assert_eq!(parse_signal_text(&text, &idx, &vs, false).unwrap(), row);
        assert!(parse_signal_text("E2(A|BC)", &idx, &vs, false).is_err());
        assert!(parse_signal_text("E3(A|BC) = 0", &idx, &vs, false).is_err());
    }

    #[test]
    fn signals_annihilate_and_complement_rank() {
        let v = VertexSet::letters(4).unwrap();
        for g in enumerate_antichains(&v).unwrap() {
            let r = build_reduction_matrix(&g);
            let s = signals(&g);
            assert_eq!(s.len() + linalg::rank(&r.matrix), 14);
            for i in 0..s.len() {
                assert!(linalg::row_times(s.coefficients().row(i), &r.matrix).iter().all(Zero::is_zero));
            }
        }
    }
}
