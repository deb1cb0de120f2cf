//! Subspace structure of the measure space: indicator subspaces, hypergraph
//! recovery from signals, the witness function, k-sensitivity counts, point
//! classification and the lattice/subspace correspondence.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{MemsError, Result};
use crate::hypergraph::{self, antichain_normalize, dominates, Hypergraph};
use crate::linalg::{self, Rational, RationalMatrix};
use crate::par::{self, Execution};
use crate::partitions::{bell_number, bell_usize, is_subset, popcount, Partition, VertexSet};
use crate::reduction::{self, build_reduction_matrix, shared_index, SignalSet};

/// Default absolute tolerance for floating-point signal evaluation.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Largest vertex set accepted by [`classify_point`].
pub const CLASSIFY_LIMIT: usize = 5;

/// `1_{S,σ}` over `Π*(ground)`: 1 where the restriction to `S` equals `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorVector {
    pub subset: u64,
    pub sigma: Partition,
    pub values: Vec<u8>,
}

impl IndicatorVector {
    pub fn to_rational(&self) -> Vec<Rational> {
        self.values.iter().map(|&v| Rational::from_integer(v.into())).collect()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.iter().enumerate().filter(|(_, &v)| v == 1).map(|(i, _)| i)
    }
}

/// Indicator over the nontrivial partitions of an arbitrary ground mask.
pub fn indicator_over(ground: u64, subset: u64, sigma: &Partition) -> Result<IndicatorVector> {
    if popcount(subset) < 2 {
        return Err(MemsError::InvalidSubset("indicator subsets need at least two vertices".into()));
    }
    if !is_subset(subset, ground) {
        return Err(MemsError::InvalidSubset("subset outside the ground set".into()));
    }
    if sigma.ground() != subset {
        return Err(MemsError::InvalidPartition("σ must partition exactly the subset".into()));
    }
    let idx = shared_index(ground);
    let values = idx
        .partitions()
        .iter()
        .map(|pi| u8::from(&pi.restrict_unchecked(subset) == sigma))
        .collect();
    Ok(IndicatorVector { subset, sigma: sigma.clone(), values })
}

pub fn indicator_vector(subset: u64, sigma: &Partition, vs: &VertexSet) -> Result<IndicatorVector> {
    indicator_over(vs.full_mask(), subset, sigma)
}

/// Basis of `U_S`: one indicator column per `σ ∈ Π*(S)`.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    pub subset: u64,
    pub matrix: RationalMatrix,
}

pub fn subspace_basis_over(ground: u64, subset: u64) -> Result<SubspaceBasis> {
    if popcount(subset) < 2 {
        return Err(MemsError::InvalidSubset("U_S needs |S| >= 2".into()));
    }
    let sigmas = shared_index(subset);
    let dim = shared_index(ground).len();
    let mut matrix = RationalMatrix::zeros(dim, sigmas.len());
    for (j, sigma) in sigmas.partitions().iter().enumerate() {
        let ind = indicator_over(ground, subset, sigma)?;
        for i in ind.support() {
            matrix.set(i, j, Rational::one());
        }
    }
    Ok(SubspaceBasis { subset, matrix })
}

pub fn subspace_basis(subset: u64, vs: &VertexSet) -> Result<SubspaceBasis> {
    subspace_basis_over(vs.full_mask(), subset)
}

/// Columns spanning `Σ_i U_{S_i}`; subsets with fewer than two vertices
/// contribute nothing.
pub fn subspace_sum_over(ground: u64, subsets: &[u64]) -> Result<RationalMatrix> {
    let dim = shared_index(ground).len();
    let mut out = RationalMatrix::zeros(dim, 0);
    for &s in subsets {
        if popcount(s) >= 2 {
            out = out.hstack(&subspace_basis_over(ground, s)?.matrix)?;
        }
    }
    Ok(out)
}

/// Signals as integer rows, checking they match the vertex set's dimension.
fn checked_rows(sig: &SignalSet) -> Result<Vec<Vec<BigInt>>> {
    let expected = bell_usize(sig.vertices().len()) - 1;
    if sig.dim() != expected {
        return Err(MemsError::DimensionMismatch(format!(
            "signal rows have {} coordinates, expected {expected}",
            sig.dim()
        )));
    }
    Ok(sig.integer_rows())
}

/// Whether every signal row annihilates all of `U_S`.
fn annihilates_subspace(rows: &[Vec<BigInt>], ground: u64, subset: u64) -> bool {
    let idx = shared_index(ground);
    let sigmas = shared_index(subset);
    // Group macro coordinates by their restriction to S.
    let classes: Vec<Option<usize>> = idx
        .partitions()
        .iter()
        .map(|pi| sigmas.position(&pi.restrict_unchecked(subset)))
        .collect();
    rows.iter().all(|row| {
        let mut sums = vec![BigInt::zero(); sigmas.len()];
        for (c, class) in row.iter().zip(&classes) {
            if let Some(k) = class {
                if !c.is_zero() {
                    sums[*k] += c;
                }
            }
        }
        sums.iter().all(Zero::is_zero)
    })
}

/// Recovers the hypergraph whose signal space is `sig`: the maximal subsets
/// `S` (|S| ≥ 2) whose indicator subspace is annihilated by every signal.
pub fn recover_hypergraph(sig: &SignalSet) -> Result<Hypergraph> {
    let vs = sig.vertices();
    if vs.len() < 2 {
        return Err(MemsError::InvalidVertexSet("recovery needs at least two vertices".into()));
    }
    let rows = checked_rows(sig)?;
    let ground = vs.full_mask();
    let admissible =
        (1..=ground).filter(|&s| popcount(s) >= 2 && annihilates_subspace(&rows, ground, s));
    Ok(antichain_normalize(vs.clone(), admissible))
}

/// `w(π) = (-1)^{|S|-|π|} (|π|-1)!` over `Π*(S)` in index order.
pub fn witness(subset: u64) -> Result<Vec<BigInt>> {
    let s = popcount(subset);
    if s < 3 {
        return Err(MemsError::InvalidSubset("the witness is defined for |S| >= 3".into()));
    }
    Ok(shared_index(subset)
        .partitions()
        .iter()
        .map(|pi| {
            let k = pi.block_count();
            let fact: BigInt = (1..k).map(BigInt::from).product();
            if (s - k).is_multiple_of(2) {
                fact
            } else {
                -fact
            }
        })
        .collect())
}

/// `⟨w, 1̄_{T,τ}⟩` over `Π*(S)`, summed exactly.
pub fn witness_pairing(w: &[BigInt], subset: u64, t: u64, tau: &Partition) -> Result<BigInt> {
    let ind = indicator_over(subset, t, tau)?;
    if w.len() != ind.values.len() {
        return Err(MemsError::DimensionMismatch("witness length".into()));
    }
    Ok(ind.support().map(|i| &w[i]).sum())
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Number of independent combinations sensitive to `k`-party entanglement
/// but not to entanglement among fewer parties:
/// `C(n,k) Σ_{j=0}^{k} (-1)^j C(k,j) B_{k-j}`.
pub fn count_sensitive(n: usize, k: usize) -> Result<BigUint> {
    if k < 2 || k > n {
        return Err(MemsError::OutOfRange(format!("need 2 <= k <= n, got n = {n}, k = {k}")));
    }
    let mut inner = BigInt::zero();
    for j in 0..=k {
        let term = BigInt::from(binomial(k, j)) * BigInt::from(bell_number(k - j));
        if j % 2 == 0 {
            inner += term;
        } else {
            inner -= term;
        }
    }
    let total = BigInt::from(binomial(n, k)) * inner;
    Ok(total.to_biguint().expect("count is non-negative"))
}

/// Measure values, one per nontrivial partition in index order.
#[derive(Clone, Debug, PartialEq)]
pub struct MemsPoint {
    vertices: VertexSet,
    values: Vec<f64>,
}

impl MemsPoint {
    pub fn new(vertices: VertexSet, values: Vec<f64>) -> Result<Self> {
        let dim = bell_usize(vertices.len()) - 1;
        if values.len() != dim {
            return Err(MemsError::DimensionMismatch(format!(
                "point has {} values, expected {dim}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(MemsError::InvalidState("point values must be finite".into()));
        }
        Ok(Self { vertices, values })
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn order(&self) -> Vec<String> {
        shared_index(self.vertices.full_mask()).labels(&self.vertices)
    }
}

/// Whether every signal row satisfies `|s·p| <= tol`.
pub fn point_satisfies(sig: &SignalSet, p: &MemsPoint, tol: f64) -> bool {
    (0..sig.len()).all(|i| reduction::dot_f64(sig.coefficients().row(i), p.values()).abs() <= tol)
}

/// Dominance-minimal hypergraphs whose signals all vanish on `p`.
pub fn classify_point(p: &MemsPoint, tol: f64, exec: Execution) -> Result<Vec<Hypergraph>> {
    if tol.is_nan() || tol < 0.0 {
        return Err(MemsError::OutOfRange("tolerance must be non-negative".into()));
    }
    let vs = p.vertices();
    if vs.len() > CLASSIFY_LIMIT {
        return Err(MemsError::EnumerationLimit(format!(
            "classification supports at most {CLASSIFY_LIMIT} vertices, got {}",
            vs.len()
        )));
    }
    let all: Vec<Hypergraph> = hypergraph::enumerate_antichains(vs)?.collect();
    let fits = par::map(exec, &all, |h| point_satisfies(&reduction::signals(h), p, tol));
    let fitting: Vec<&Hypergraph> = all.iter().zip(fits).filter(|(_, f)| *f).map(|(h, _)| h).collect();
    let minimal = fitting
        .iter()
        .filter(|h| {
            !fitting.iter().any(|g| g != *h && dominates(h, g).expect("same vertex set"))
        })
        .map(|h| (*h).clone())
        .collect();
    Ok(minimal)
}

/// Outcome of checking both span identities for a pair of hypergraphs.
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub join: Hypergraph,
    pub meet: Hypergraph,
    /// `Col R(a ∨ b) = Col R(a) + Col R(b)`.
    pub join_ok: bool,
    /// `Col R(a ∧ b) = Col R(a) ∩ Col R(b)`.
    pub meet_ok: bool,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.join_ok && self.meet_ok
    }
}

pub fn verify_lattice_correspondence(a: &Hypergraph, b: &Hypergraph) -> Result<LatticeReport> {
    let join = hypergraph::join(a, b)?;
    let meet = hypergraph::meet(a, b)?;
    let ra = build_reduction_matrix(a).matrix;
    let rb = build_reduction_matrix(b).matrix;
    let sum = ra.hstack(&rb)?;
    let join_ok = linalg::same_span(&build_reduction_matrix(&join).matrix, &sum)?;
    let inter = linalg::span_intersection(&ra, &rb)?;
    let meet_ok = linalg::same_span(&build_reduction_matrix(&meet).matrix, &inter)?;
    Ok(LatticeReport { join, meet, join_ok, meet_ok })
}

/// Whether `col(a) ∩ col(b) = col(r)`, by exact ranks: `r` must lie in
/// both spans and `dim(a ∩ b) = rank a + rank b - rank [a | b]` must equal
/// `rank r`.
fn intersection_is(a: &RationalMatrix, b: &RationalMatrix, r: &RationalMatrix) -> Result<bool> {
    let (ra, rb, rr) = (linalg::rank(a), linalg::rank(b), linalg::rank(r));
    let meet_dim = ra + rb - linalg::rank(&a.hstack(b)?);
    Ok(meet_dim == rr && linalg::rank(&a.hstack(r)?) == ra && linalg::rank(&b.hstack(r)?) == rb)
}

/// Checks `U_S ∩ U_T = U_{S∩T}` (or `{0}` when `|S∩T| < 2`) inside `Π*(ground)`.
pub fn check_pair_meet_law(ground: u64, s: u64, t: u64) -> Result<bool> {
    let us = subspace_sum_over(ground, &[s])?;
    let ut = subspace_sum_over(ground, &[t])?;
    intersection_is(&us, &ut, &subspace_sum_over(ground, &[s & t])?)
}

/// Checks `U_S ∩ Σ_i U_{T_i} = Σ_i U_{S∩T_i}`.
pub fn check_family_meet_law(ground: u64, s: u64, ts: &[u64]) -> Result<bool> {
    let us = subspace_sum_over(ground, &[s])?;
    let sum_t = subspace_sum_over(ground, ts)?;
    let cut: Vec<u64> = ts.iter().map(|&t| s & t).collect();
    intersection_is(&us, &sum_t, &subspace_sum_over(ground, &cut)?)
}

/// Checks `(Σ_i U_{S_i}) ∩ (Σ_j U_{T_j}) = Σ_{i,j} U_{S_i ∩ T_j}`.
pub fn check_double_sum_meet_law(ground: u64, ss: &[u64], ts: &[u64]) -> Result<bool> {
    let cut: Vec<u64> = ss.iter().flat_map(|&s| ts.iter().map(move |&t| s & t)).collect();
    intersection_is(
        &subspace_sum_over(ground, ss)?,
        &subspace_sum_over(ground, ts)?,
        &subspace_sum_over(ground, &cut)?,
    )
}

/// Witness certificate that the proper-subset subspaces of `S` do not fill
/// `U_S`: `w` is nonzero, orthogonal to every `1̄_{T,τ}` with `T ⊊ S`, and
/// the combined rank of those subspaces is below `B_|S| - 1`.
#[derive(Clone, Debug)]
pub struct StrictContainment {
    pub subset: u64,
    pub pairings_checked: usize,
    pub orthogonal: bool,
    pub proper_rank: usize,
    pub full_dim: usize,
}

impl StrictContainment {
    pub fn passed(&self) -> bool {
        self.orthogonal && self.proper_rank < self.full_dim
    }
}

pub fn check_strict_containment(subset: u64) -> Result<StrictContainment> {
    let w = witness(subset)?;
    let mut orthogonal = w.iter().any(|x| !x.is_zero());
    let mut pairings_checked = 0;
    let proper: Vec<u64> = (1..subset)
        .filter(|&t| is_subset(t, subset) && t != subset && popcount(t) >= 2)
        .collect();
    for &t in &proper {
        for tau in shared_index(t).partitions() {
            pairings_checked += 1;
            if !witness_pairing(&w, subset, t, tau)?.is_zero() {
                orthogonal = false;
            }
        }
    }
    let proper_rank = linalg::rank(&subspace_sum_over(subset, &proper)?);
    Ok(StrictContainment {
        subset,
        pairings_checked,
        orthogonal,
        proper_rank,
        full_dim: bell_usize(popcount(subset)) - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{enumerate_antichains, k_uniform_complete, random_antichain};
    use crate::reduction::signals;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vs(n: usize) -> VertexSet {
        VertexSet::letters(n).unwrap()
    }

    fn h(n: usize, edges: &[&str]) -> Hypergraph {
        let v = vs(n);
        let masks = edges.iter().map(|e| v.parse_block(e).unwrap().0).collect();
        Hypergraph::new(v, masks).unwrap()
    }

    fn part(text: &str, v: &VertexSet) -> Partition {
        Partition::parse(text, v, true).unwrap()
    }

    #[test]
    fn intersection_check_rejects_wrong_answers() {
        let g = 0b1111;
        let (s, t) = (0b0111, 0b1110);
        let us = subspace_sum_over(g, &[s]).unwrap();
        let ut = subspace_sum_over(g, &[t]).unwrap();
        assert!(intersection_is(&us, &ut, &subspace_sum_over(g, &[s & t]).unwrap()).unwrap());
        assert!(!intersection_is(&us, &ut, &us).unwrap());
        assert!(!intersection_is(&us, &ut, &RationalMatrix::zeros(14, 0)).unwrap());
        assert!(!intersection_is(&us, &ut, &subspace_sum_over(g, &[0b0011]).unwrap()).unwrap());
    }

    #[test]
    fn indicator_example() {
        let v = vs(3);
        let ab = v.mask_of(&["A", "B"]).unwrap();
        let ind = indicator_vector(ab, &part("A|B", &v), &v).unwrap();
        let idx = shared_index(v.full_mask());
        let on: Vec<String> = ind.support().map(|i| idx.get(i).format(&v)).collect();
        assert_eq!(on, ["A|B|C", "A|BC", "AC|B"]);
        assert!(indicator_vector(0b001, &Partition::trivial(0b001), &v).is_err());
    }

    #[test]
    fn indicator_on_whole_set_is_standard_basis() {
        let v = vs(4);
        let idx = shared_index(v.full_mask());
        for (i, sigma) in idx.partitions().iter().enumerate() {
            let ind = indicator_vector(v.full_mask(), sigma, &v).unwrap();
            assert_eq!(ind.support().collect::<Vec<_>>(), vec![i]);
        }
    }

    #[test]
    fn indicator_supports_are_disjoint() {
        let v = vs(5);
        for s in (1..=v.full_mask()).filter(|&s| popcount(s) >= 2) {
            let mut seen = [false; 51];
            for sigma in shared_index(s).partitions() {
                for i in indicator_vector(s, sigma, &v).unwrap().support() {
                    assert!(!seen[i]);
                    seen[i] = true;
                }
            }
        }
    }

    #[test]
    fn subspace_dimensions() {
        let v = vs(5);
        for s in (1..=v.full_mask()).filter(|&s| popcount(s) >= 2) {
            let b = subspace_basis(s, &v).unwrap();
            let expected = bell_usize(popcount(s)) - 1;
            assert_eq!(b.matrix.cols(), expected);
            assert_eq!(linalg::rank(&b.matrix), expected);
        }
        assert!(subspace_basis(0b1, &v).is_err());
    }

    #[test]
    fn recovery_examples() {
        let tri = h(3, &["AB", "BC", "AC"]);
        assert_eq!(recover_hypergraph(&signals(&tri)).unwrap(), tri);
        let v4 = vs(4);
        let empty = SignalSet::from_rows(v4.clone(), RationalMatrix::zeros(0, 14)).unwrap();
        assert_eq!(recover_hypergraph(&empty).unwrap(), Hypergraph::full(v4.clone()).unwrap());
        let k2 = k_uniform_complete(v4.clone(), 2).unwrap();
        assert_eq!(recover_hypergraph(&signals(&k2)).unwrap(), k2);
        let none = Hypergraph::empty(v4);
        assert_eq!(recover_hypergraph(&signals(&none)).unwrap(), none);
    }

    #[test]
    fn recovery_round_trip_exhaustive_n4() {
        for g in enumerate_antichains(&vs(4)).unwrap() {
            assert_eq!(recover_hypergraph(&signals(&g)).unwrap(), g, "{}", g.describe());
        }
    }

    #[test]
    fn witness_values() {
        let w = witness(0b111).unwrap();
        // Order: A|B|C, then the three bipartitions.
        assert_eq!(w, [2, -1, -1, -1].map(BigInt::from));
        assert!(witness(0b11).is_err());
    }

    #[test]
    fn strict_containment_up_to_five() {
        for s in [0b111u64, 0b1111, 0b11111, 0b10111] {
            let r = check_strict_containment(s).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn sensitivity_counts() {
        let c = |n, k| count_sensitive(n, k).unwrap();
        assert_eq!(c(4, 4), BigUint::from(4u32));
        assert_eq!(c(4, 3), BigUint::from(4u32));
        assert_eq!(c(4, 2), BigUint::from(6u32));
        assert!(count_sensitive(4, 1).is_err());
        assert!(count_sensitive(4, 5).is_err());
        for n in 2..=7 {
            let total: BigUint = (2..=n).map(|k| c(n, k)).sum();
            assert_eq!(total, bell_number(n) - BigUint::one(), "n = {n}");
        }
    }

    #[test]
    fn sensitivity_matches_signal_count_differences() {
        for n in 2..=5 {
            let v = vs(n);
            let count = |k: usize| -> usize {
                if k < 2 {
                    bell_usize(n) - 1
                } else {
                    signals(&k_uniform_complete(v.clone(), k).unwrap()).len()
                }
            };
            for k in 2..=n {
                let diff = count(k - 1) - count(k);
                assert_eq!(BigUint::from(diff), count_sensitive(n, k).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn classify_origin_and_generic() {
        let v = vs(3);
        let origin = MemsPoint::new(v.clone(), vec![0.0; 4]).unwrap();
        let classes = classify_point(&origin, 0.0, Execution::Parallel).unwrap();
        assert_eq!(classes, vec![Hypergraph::empty(v.clone())]);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let values: Vec<f64> = (0..4).map(|_| rng.random_range(1..1000) as f64 / 7.0).collect();
        let generic = MemsPoint::new(v.clone(), values).unwrap();
        let classes = classify_point(&generic, 0.0, Execution::Sequential).unwrap();
        assert_eq!(classes, vec![Hypergraph::full(v).unwrap()]);
    }

    #[test]
    fn classify_point_on_class_subspace() {
        // A point in Col R(triangle) built from independent micro values.
        let tri = h(3, &["AB", "BC", "AC"]);
        let r = build_reduction_matrix(&tri).matrix.to_f64_rows();
        let micro = [0.3, 1.7, 0.9];
        let values: Vec<f64> = r.iter().map(|row| row.iter().zip(micro).map(|(a, b)| a * b).sum()).collect();
        let p = MemsPoint::new(vs(3), values).unwrap();
        let classes = classify_point(&p, 1e-9, Execution::Parallel).unwrap();
        assert_eq!(classes, vec![tri]);
        assert!(classify_point(&p, -1.0, Execution::Parallel).is_err());
        let big = MemsPoint::new(vs(6), vec![0.0; 202]).unwrap();
        assert!(matches!(
            classify_point(&big, 0.0, Execution::Parallel),
            Err(MemsError::EnumerationLimit(_))
        ));
    }

    #[test]
    fn lattice_examples() {
        let a = h(4, &["ABC"]);
        let b = h(4, &["BCD"]);
        let r = verify_lattice_correspondence(&a, &b).unwrap();
        assert_eq!(r.meet, h(4, &["BC"]));
        assert!(r.passed());
        let tri = h(3, &["AB", "BC", "AC"]);
        let full = h(3, &["ABC"]);
        let r = verify_lattice_correspondence(&tri, &full).unwrap();
        assert_eq!(r.join, full);
        assert!(r.passed());
        assert_eq!(rank_of(&r.join), 4);
        let r = verify_lattice_correspondence(&tri, &tri).unwrap();
        assert!(r.passed());
    }

    fn rank_of(g: &Hypergraph) -> usize {
        linalg::rank(&build_reduction_matrix(g).matrix)
    }

    #[test]
    fn lattice_exhaustive_n3() {
        let all: Vec<Hypergraph> = enumerate_antichains(&vs(3)).unwrap().collect();
        for a in &all {
            for b in &all {
                assert!(verify_lattice_correspondence(a, b).unwrap().passed());
            }
        }
    }

    #[test]
    fn pairwise_meet_law_n4() {
        let ground = 0b1111;
        let subsets: Vec<u64> = (1..=ground).filter(|&s| popcount(s) >= 2).collect();
        for &s in &subsets {
            for &t in &subsets {
                assert!(check_pair_meet_law(ground, s, t).unwrap());
            }
        }
    }

    #[test]
    fn family_meet_laws_random_n5() {
        let ground = 0b11111;
        let v = vs(5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let s = random_antichain(&v, &mut rng);
            let t = random_antichain(&v, &mut rng);
            if let Some(&first) = s.edges().first() {
                assert!(check_family_meet_law(ground, first, t.edges()).unwrap());
            }
            assert!(check_double_sum_meet_law(ground, s.edges(), t.edges()).unwrap());
        }
    }

    #[test]
    fn dominance_implies_signal_containment() {
        let all: Vec<Hypergraph> = enumerate_antichains(&vs(3)).unwrap().collect();
        for a in &all {
            for b in &all {
                if dominates(a, b).unwrap() {
                    let sa = signals(a);
                    let sb = signals(b);
                    let cols = sb.coefficients().transpose();
                    for i in 0..sa.len() {
                        assert!(linalg::in_span(sa.coefficients().row(i), &cols).unwrap());
                    }
                }
            }
        }
    }
}
