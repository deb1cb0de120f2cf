//! Explicit Sperner states at qubit scale and the sum-of-block-entropies
//! measure evaluated on them.
//!
//! A state is a dense amplitude vector over parties in vertex order; each
//! party may own several tensor legs (one per incident hyperedge plus an
//! optional local leg), which are contiguous within that party.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{MemsError, Result};
use crate::hypergraph::Hypergraph;
use crate::par::{self, Execution};
use crate::partitions::{bits, is_subset, popcount, Partition, VertexSet};
use crate::reduction::{self, build_reduction_matrix, shared_index, SignalSet};
use crate::structure::MemsPoint;

pub const DEFAULT_DIMENSION_CAP: usize = 1 << 14;

const NORM_TOLERANCE: f64 = 1e-12;

/// Where a tensor leg comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    /// The `k`-th hyperedge in hypergraph order.
    Edge(usize),
    /// A party's private leg, carrying an unentangled local state.
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Leg {
    pub party: usize,
    pub factor: Factor,
    pub dim: usize,
}

/// Assignment of local factor dimensions to every (party, edge) incidence.
#[derive(Clone, Debug)]
pub struct FactorLayout {
    hypergraph: Hypergraph,
    /// `edge_dims[k][j]`: leg dimension of the `j`-th member of edge `k`.
    edge_dims: Vec<Vec<usize>>,
    local_dims: Vec<usize>,
    cap: usize,
}

impl FactorLayout {
    /// Every incidence gets a `d`-dimensional factor (`d = 2` is one qubit).
    pub fn uniform(h: &Hypergraph, d: usize) -> Result<Self> {
        let edge_dims = h.edges().iter().map(|&e| vec![d; popcount(e)]).collect();
        Self::new(h, edge_dims, vec![1; h.n()])
    }

    pub fn new(h: &Hypergraph, edge_dims: Vec<Vec<usize>>, local_dims: Vec<usize>) -> Result<Self> {
        if edge_dims.len() != h.edges().len() {
            return Err(MemsError::LayoutMismatch("one dimension list per edge required".into()));
        }
        for (dims, &e) in edge_dims.iter().zip(h.edges()) {
            if dims.len() != popcount(e) {
                return Err(MemsError::LayoutMismatch(format!(
                    "edge `{}` needs {} factor dimensions",
                    h.vertices().format_mask(e),
                    popcount(e)
                )));
            }
            if dims.iter().any(|&d| d < 2) {
                return Err(MemsError::LayoutMismatch("factor dimensions must be at least 2".into()));
            }
        }
        if local_dims.len() != h.n() || local_dims.contains(&0) {
            return Err(MemsError::LayoutMismatch("one positive local dimension per party".into()));
        }
        let layout = Self { hypergraph: h.clone(), edge_dims, local_dims, cap: DEFAULT_DIMENSION_CAP };
        Ok(layout)
    }

    /// Gives every party a private leg of the given dimension (1 = none).
    pub fn with_local_dims(mut self, local_dims: Vec<usize>) -> Result<Self> {
        if local_dims.len() != self.hypergraph.n() || local_dims.contains(&0) {
            return Err(MemsError::LayoutMismatch("one positive local dimension per party".into()));
        }
        self.local_dims = local_dims;
        Ok(self)
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Legs in party-major order: for each party, its edge legs in edge
    /// order, then its local leg if that has dimension above one.
    pub fn legs(&self) -> Vec<Leg> {
        let mut legs = Vec::new();
        for party in 0..self.hypergraph.n() {
            for (k, &e) in self.hypergraph.edges().iter().enumerate() {
                if e & (1 << party) != 0 {
                    let j = bits(e).position(|v| v == party).unwrap();
                    legs.push(Leg { party, factor: Factor::Edge(k), dim: self.edge_dims[k][j] });
                }
            }
            if self.local_dims[party] > 1 {
                legs.push(Leg { party, factor: Factor::Local, dim: self.local_dims[party] });
            }
        }
        legs
    }

    pub fn party_dims(&self) -> Vec<usize> {
        let mut dims = vec![1usize; self.hypergraph.n()];
        for leg in self.legs() {
            dims[leg.party] = dims[leg.party].saturating_mul(leg.dim);
        }
        dims
    }

    pub fn total_dim(&self) -> usize {
        self.legs().iter().fold(1usize, |a, l| a.saturating_mul(l.dim))
    }
}

/// A normalized pure state on a set of parties.
#[derive(Clone, Debug)]
pub struct PureState {
    vertices: VertexSet,
    parties: u64,
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Validates dimensions and normalization (within 1e-12).
    pub fn new(vertices: VertexSet, parties: u64, dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        if parties == 0 || !is_subset(parties, vertices.full_mask()) {
            return Err(MemsError::InvalidState("party set must be a non-empty subset of V".into()));
        }
        if dims.len() != popcount(parties) || dims.contains(&0) {
            return Err(MemsError::InvalidState("one positive dimension per party required".into()));
        }
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(MemsError::InvalidState(format!(
                "{} amplitudes for total dimension {total}",
                amps.len()
            )));
        }
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(MemsError::InvalidState(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { vertices, parties, dims, amps })
    }

    /// A state on all of `V`.
    pub fn on_all(vertices: VertexSet, dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let full = vertices.full_mask();
        Self::new(vertices, full, dims, amps)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn parties(&self) -> u64 {
        self.parties
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn total_dim(&self) -> usize {
        self.amps.len()
    }

    fn local_position(&self, vertex: usize) -> usize {
        bits(self.parties).position(|v| v == vertex).expect("vertex belongs to the state")
    }

    /// Applies `u` to one party's space.
    pub fn apply_local_unitary(&mut self, vertex: usize, u: &DMatrix<Complex64>) -> Result<()> {
        if self.parties & (1 << vertex) == 0 {
            return Err(MemsError::InvalidState("unitary on a party outside the state".into()));
        }
        let p = self.local_position(vertex);
        let d = self.dims[p];
        if u.nrows() != d || u.ncols() != d {
            return Err(MemsError::DimensionMismatch("unitary size differs from party dimension".into()));
        }
        apply_on_axis(&mut self.amps, &self.dims, p, u);
        Ok(())
    }

    /// Per-party tensor product of two states on the same parties; each
    /// party's space becomes the product of both spaces.
    pub fn tensor_parties(&self, other: &PureState) -> Result<PureState> {
        if self.parties != other.parties || self.vertices != other.vertices {
            return Err(MemsError::InvalidState("tensor_parties needs identical party sets".into()));
        }
        let m = self.dims.len();
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        // Legs are now [self parties..., other parties...]; interleave per party.
        let mut src_dims = self.dims.clone();
        src_dims.extend_from_slice(&other.dims);
        let perm: Vec<usize> = (0..m).flat_map(|p| [p, m + p]).collect();
        let amps = permute_legs(&amps, &src_dims, &perm);
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a * b).collect();
        Ok(PureState { vertices: self.vertices.clone(), parties: self.parties, dims, amps })
    }

    /// Product state on the union of two disjoint party sets.
    pub fn product_with(&self, other: &PureState) -> Result<PureState> {
        if self.vertices != other.vertices || self.parties & other.parties != 0 {
            return Err(MemsError::InvalidState("product_with needs disjoint party sets".into()));
        }
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        let order: Vec<usize> = bits(self.parties).chain(bits(other.parties)).collect();
        let mut src_dims = self.dims.clone();
        src_dims.extend_from_slice(&other.dims);
        let union = self.parties | other.parties;
        let perm: Vec<usize> =
            bits(union).map(|v| order.iter().position(|&x| x == v).unwrap()).collect();
        let amps = permute_legs(&amps, &src_dims, &perm);
        let dims = perm.iter().map(|&i| src_dims[i]).collect();
        Ok(PureState { vertices: self.vertices.clone(), parties: union, dims, amps })
    }

    /// Physically moves party `perm[i]`'s subsystem to party position `i`
    /// (positions within the state's party set).
    pub fn permute_parties(&self, perm: &[usize]) -> Result<PureState> {
        let m = self.dims.len();
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..m).collect::<Vec<_>>() {
            return Err(MemsError::InvalidState("not a permutation of the parties".into()));
        }
        let amps = permute_legs(&self.amps, &self.dims, perm);
        let dims = perm.iter().map(|&i| self.dims[i]).collect();
        Ok(PureState { vertices: self.vertices.clone(), parties: self.parties, dims, amps })
    }
}

/// Reorders tensor legs: destination leg `i` is source leg `perm[i]`.
fn permute_legs(amps: &[Complex64], src_dims: &[usize], perm: &[usize]) -> Vec<Complex64> {
    let n = src_dims.len();
    let mut src_strides = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        src_strides[i] = src_strides[i + 1] * src_dims[i + 1];
    }
    let dst_dims: Vec<usize> = perm.iter().map(|&p| src_dims[p]).collect();
    let mut out = vec![Complex64::new(0.0, 0.0); amps.len()];
    let mut idx = vec![0usize; n];
    for slot in out.iter_mut() {
        let src: usize = (0..n).map(|i| idx[i] * src_strides[perm[i]]).sum();
        *slot = amps[src];
        for i in (0..n).rev() {
            idx[i] += 1;
            if idx[i] < dst_dims[i] {
                break;
            }
            idx[i] = 0;
        }
    }
    out
}

/// Applies `u` to tensor axis `axis`.
fn apply_on_axis(amps: &mut [Complex64], dims: &[usize], axis: usize, u: &DMatrix<Complex64>) {
    let d = dims[axis];
    let post: usize = dims[axis + 1..].iter().product();
    let pre: usize = dims[..axis].iter().product();
    let mut col = vec![Complex64::new(0.0, 0.0); d];
    for a in 0..pre {
        for b in 0..post {
            for (j, c) in col.iter_mut().enumerate() {
                *c = amps[(a * d + j) * post + b];
            }
            for i in 0..d {
                let mut s = Complex64::new(0.0, 0.0);
                for (j, c) in col.iter().enumerate() {
                    s += u[(i, j)] * c;
                }
                amps[(a * d + i) * post + b] = s;
            }
        }
    }
}

fn complex_gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random pure state of dimension `d` (normalized complex Gaussian).
pub fn haar_state(d: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..d).map(|_| complex_gaussian(rng)).collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in v.iter_mut() {
        *a /= norm;
    }
    v
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn haar_unitary(d: usize, rng: &mut ChaCha8Rng) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// A built Sperner state together with its pre-unitary edge factors.
#[derive(Clone, Debug)]
pub struct SpernerState {
    pub state: PureState,
    /// One pure state per hyperedge, on that edge's parties.
    pub edge_states: Vec<PureState>,
}

fn layout_checks(layout: &FactorLayout) -> Result<Vec<Leg>> {
    let legs = layout.legs();
    if legs.is_empty() {
        return Err(MemsError::NoFactors(
            "the hypergraph has no edges and no party has a local leg".into(),
        ));
    }
    let dim = layout.total_dim();
    if dim > layout.cap {
        return Err(MemsError::DimensionCap { dim, cap: layout.cap });
    }
    Ok(legs)
}

/// Builds `ψ = (⊗_p U_p)(⊗_e ψ_e ⊗ local states)` deterministically from `seed`.
pub fn build_sperner(layout: &FactorLayout, seed: u64) -> Result<SpernerState> {
    let legs = layout_checks(layout)?;
    let h = &layout.hypergraph;
    let vs = h.vertices().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Factor order: edges in hypergraph order (members in vertex order), then locals.
    let mut factor_legs: Vec<Leg> = Vec::new();
    let mut factor_amps: Vec<Vec<Complex64>> = Vec::new();
    let mut edge_states = Vec::with_capacity(h.edges().len());
    for (k, &e) in h.edges().iter().enumerate() {
        let dims = layout.edge_dims[k].clone();
        let amps = haar_state(dims.iter().product(), &mut rng);
        for (party, &dim) in bits(e).zip(&dims) {
            factor_legs.push(Leg { party, factor: Factor::Edge(k), dim });
        }
        edge_states.push(PureState { vertices: vs.clone(), parties: e, dims, amps: amps.clone() });
        factor_amps.push(amps);
    }
    for (party, &d) in layout.local_dims.iter().enumerate() {
        if d > 1 {
            factor_legs.push(Leg { party, factor: Factor::Local, dim: d });
            factor_amps.push(haar_state(d, &mut rng));
        }
    }

    let mut amps = vec![Complex64::new(1.0, 0.0)];
    for f in &factor_amps {
        let mut next = Vec::with_capacity(amps.len() * f.len());
        for a in &amps {
            for b in f {
                next.push(a * b);
            }
        }
        amps = next;
    }
    let src_dims: Vec<usize> = factor_legs.iter().map(|l| l.dim).collect();
    let perm: Vec<usize> = legs
        .iter()
        .map(|l| factor_legs.iter().position(|f| f.party == l.party && f.factor == l.factor).unwrap())
        .collect();
    let amps = permute_legs(&amps, &src_dims, &perm);

    let dims = layout.party_dims();
    let mut state = PureState { vertices: vs, parties: h.vertices().full_mask(), dims, amps };
    for party in 0..h.n() {
        let d = state.dims[party];
        if d > 1 {
            let u = haar_unitary(d, &mut rng);
            apply_on_axis(&mut state.amps, &state.dims, party, &u);
        }
    }
    Ok(SpernerState { state, edge_states })
}

pub fn build_sperner_state(h: &Hypergraph, layout: &FactorLayout, seed: u64) -> Result<PureState> {
    if layout.hypergraph != *h {
        return Err(MemsError::LayoutMismatch("layout was built for a different hypergraph".into()));
    }
    Ok(build_sperner(layout, seed)?.state)
}

/// Eigenvalues of the reduced density matrix on `block`.
fn reduced_spectrum(psi: &PureState, block: u64) -> Vec<f64> {
    let members: Vec<usize> = bits(psi.parties).collect();
    let in_block: Vec<bool> = members.iter().map(|&v| block & (1 << v) != 0).collect();
    let d_block: usize = psi.dims.iter().zip(&in_block).filter(|(_, &b)| b).map(|(d, _)| d).product();
    let d_rest = psi.amps.len() / d_block;
    // M[block index][rest index], both mixed-radix with earlier parties major.
    let mut m = DMatrix::<Complex64>::zeros(d_block, d_rest);
    let n = members.len();
    let mut idx = vec![0usize; n];
    for a in &psi.amps {
        let (mut bi, mut ri) = (0usize, 0usize);
        for p in 0..n {
            if in_block[p] {
                bi = bi * psi.dims[p] + idx[p];
            } else {
                ri = ri * psi.dims[p] + idx[p];
            }
        }
        m[(bi, ri)] = *a;
        for p in (0..n).rev() {
            idx[p] += 1;
            if idx[p] < psi.dims[p] {
                break;
            }
            idx[p] = 0;
        }
    }
    // Both Gram matrices share their nonzero spectrum; use the smaller one.
    let gram = if d_block <= d_rest { &m * m.adjoint() } else { m.adjoint() * &m };
    gram.symmetric_eigenvalues().iter().copied().collect()
}

fn entropy_bits(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .map(|&l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy (bits) of the reduced state on `block`.
pub fn reduced_entropy(psi: &PureState, block: u64) -> Result<f64> {
    if block == 0 || block == psi.parties || !is_subset(block, psi.parties) {
        return Err(MemsError::InvalidSubset(
            "block must be a non-empty proper subset of the state's parties".into(),
        ));
    }
    Ok(entropy_bits(&reduced_spectrum(psi, block)))
}

/// `E_π(ψ) = Σ_{b ∈ π} S(ρ_b)`.
pub fn measure_sum_entropy(psi: &PureState, pi: &Partition) -> Result<f64> {
    if pi.ground() != psi.parties {
        return Err(MemsError::InvalidPartition("partition must cover exactly the state's parties".into()));
    }
    if pi.is_trivial() {
        return Err(MemsError::InvalidPartition("the measure is defined on nontrivial partitions".into()));
    }
    pi.blocks().iter().map(|&b| reduced_entropy(psi, b)).sum()
}

fn sum_entropy_cached(psi: &PureState, pi: &Partition, cache: &mut HashMap<u64, f64>) -> f64 {
    pi.blocks()
        .iter()
        .map(|&b| *cache.entry(b).or_insert_with(|| entropy_bits(&reduced_spectrum(psi, b))))
        .sum()
}

/// Measure values on every nontrivial partition of `V`, in index order.
pub fn mems_point(psi: &PureState) -> Result<MemsPoint> {
    let full = psi.vertices.full_mask();
    if psi.parties != full {
        return Err(MemsError::InvalidState("mems_point needs a state on all of V".into()));
    }
    let idx = shared_index(full);
    let mut cache = HashMap::new();
    let values = idx.partitions().iter().map(|pi| sum_entropy_cached(psi, pi, &mut cache)).collect();
    MemsPoint::new(psi.vertices.clone(), values)
}

/// Micro values `E_{π_e}(ψ_e)` in micro-index order.
pub fn micro_vector(h: &Hypergraph, edge_states: &[PureState]) -> Vec<f64> {
    let mut out = Vec::new();
    for (&e, psi) in h.edges().iter().zip(edge_states) {
        let mut cache = HashMap::new();
        for pi in shared_index(e).partitions() {
            out.push(sum_entropy_cached(psi, pi, &mut cache));
        }
    }
    out
}

/// `max_π |V_macro(π) - (R(H) V_micro)(π)|` for one seeded Sperner state.
pub fn verify_decomposition(h: &Hypergraph, layout: &FactorLayout, seed: u64) -> Result<f64> {
    if layout.hypergraph != *h {
        return Err(MemsError::LayoutMismatch("layout was built for a different hypergraph".into()));
    }
    let built = build_sperner(layout, seed)?;
    let macro_point = mems_point(&built.state)?;
    let micro = micro_vector(h, &built.edge_states);
    let r = build_reduction_matrix(h).matrix.to_f64_rows();
    Ok(r.iter()
        .zip(macro_point.values())
        .map(|(row, m)| {
            let predicted: f64 = row.iter().zip(&micro).map(|(a, b)| a * b).sum();
            (m - predicted).abs()
        })
        .fold(0.0, f64::max))
}

/// `s · p` for every signal row.
pub fn evaluate_signals(sig: &SignalSet, p: &MemsPoint) -> Result<Vec<f64>> {
    if sig.vertices() != p.vertices() || sig.dim() != p.values().len() {
        return Err(MemsError::DimensionMismatch("signals and point live in different spaces".into()));
    }
    Ok((0..sig.len()).map(|i| reduction::dot_f64(sig.coefficients().row(i), p.values())).collect())
}

/// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
pub fn ghz(n: usize) -> Result<PureState> {
    let vs = VertexSet::letters(n)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    PureState::on_all(vs, vec![2; n], amps)
}

/// `|0…0⟩` on `n` qubits.
pub fn product_zero(n: usize) -> Result<PureState> {
    let vs = VertexSet::letters(n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(1.0, 0.0);
    PureState::on_all(vs, vec![2; n], amps)
}

/// Built-in states by name: `ghz3`, `ghz4`, `product`.
pub fn named_state(name: &str) -> Result<PureState> {
    match name {
        "ghz3" => ghz(3),
        "ghz4" => ghz(4),
        "product" => product_zero(4),
        other => Err(MemsError::Parse(format!("unknown state `{other}` (expected ghz3, ghz4 or product)"))),
    }
}

/// Result of checking one seed.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedReport {
    pub seed: u64,
    pub residual: f64,
    pub max_signal: f64,
}

/// Decomposition residual and largest own-class signal value for each seed.
pub fn verify_class(
    h: &Hypergraph,
    layout: &FactorLayout,
    seeds: &[u64],
    exec: Execution,
) -> Result<Vec<SeedReport>> {
    layout_checks(layout)?;
    let sig = reduction::signals(h);
    par::map(exec, seeds, |&seed| {
        let built = build_sperner(layout, seed)?;
        let point = mems_point(&built.state)?;
        let micro = micro_vector(h, &built.edge_states);
        let r = build_reduction_matrix(h).matrix.to_f64_rows();
        let residual = r
            .iter()
            .zip(point.values())
            .map(|(row, m)| (m - row.iter().zip(&micro).map(|(a, b)| a * b).sum::<f64>()).abs())
            .fold(0.0, f64::max);
        let max_signal = evaluate_signals(&sig, &point)?.iter().map(|v| v.abs()).fold(0.0, f64::max);
        Ok(SeedReport { seed, residual, max_signal })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::k_uniform_complete;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn h(n: usize, edges: &[&str]) -> Hypergraph {
        let v = VertexSet::letters(n).unwrap();
        let masks = edges.iter().map(|e| v.parse_block(e).unwrap().0).collect();
        Hypergraph::new(v, masks).unwrap()
    }

    fn part(t: &str, n: usize) -> Partition {
        Partition::parse(t, &VertexSet::letters(n).unwrap(), true).unwrap()
    }

    fn random_state(n: usize, d: usize, seed: u64) -> PureState {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amps = haar_state(d.pow(n as u32), &mut rng);
        PureState::on_all(VertexSet::letters(n).unwrap(), vec![d; n], amps).unwrap()
    }

    #[test]
    fn state_dimensions() {
        let tri = h(3, &["AB", "BC", "AC"]);
        let psi = build_sperner_state(&tri, &FactorLayout::uniform(&tri, 2).unwrap(), 1).unwrap();
        assert_eq!(psi.total_dim(), 64);
        let k3 = k_uniform_complete(VertexSet::letters(4).unwrap(), 3).unwrap();
        let psi = build_sperner_state(&k3, &FactorLayout::uniform(&k3, 2).unwrap(), 1).unwrap();
        assert_eq!(psi.total_dim(), 1 << 12);
        assert_eq!(psi.dims(), [8, 8, 8, 8]);
    }

    #[test]
    fn empty_hypergraph_needs_local_legs() {
        let g = Hypergraph::empty(VertexSet::letters(3).unwrap());
        let layout = FactorLayout::uniform(&g, 2).unwrap();
        assert!(matches!(build_sperner_state(&g, &layout, 0), Err(MemsError::NoFactors(_))));
        let layout = layout.with_local_dims(vec![2, 2, 2]).unwrap();
        let psi = build_sperner_state(&g, &layout, 0).unwrap();
        let p = mems_point(&psi).unwrap();
        assert!(p.values().iter().all(|v| v.abs() < 1e-9));
    }

    #[test]
    fn dimension_cap_enforced() {
        let k2 = k_uniform_complete(VertexSet::letters(5).unwrap(), 2).unwrap();
        let layout = FactorLayout::uniform(&k2, 2).unwrap();
        assert!(matches!(build_sperner_state(&k2, &layout, 0), Err(MemsError::DimensionCap { .. })));
        let other = h(3, &["ABC"]);
        assert!(build_sperner_state(&other, &layout, 0).is_err());
    }

    #[test]
    fn seeds_are_reproducible() {
        let tri = h(3, &["AB", "BC", "AC"]);
        let layout = FactorLayout::uniform(&tri, 2).unwrap();
        let a = build_sperner_state(&tri, &layout, 9).unwrap();
        let b = build_sperner_state(&tri, &layout, 9).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        let norm: f64 = a.amplitudes().iter().map(|x| x.norm_sqr()).sum();
        assert!(close(norm, 1.0, 1e-12));
    }

    #[test]
    fn entropy_examples() {
        let zero = product_zero(4).unwrap();
        for block in 1..15u64 {
            assert_eq!(reduced_entropy(&zero, block).unwrap(), 0.0);
        }
        let g = ghz(4).unwrap();
        assert!(close(reduced_entropy(&g, 0b0001).unwrap(), 1.0, 1e-12));
        assert!(close(reduced_entropy(&g, 0b0011).unwrap(), 1.0, 1e-12));
        assert!(reduced_entropy(&g, 0).is_err());
        assert!(reduced_entropy(&g, 0b1111).is_err());
    }

    #[test]
    fn sum_entropy_examples() {
        let g = ghz(4).unwrap();
        assert!(close(measure_sum_entropy(&g, &part("A|B|C|D", 4)).unwrap(), 4.0, 1e-12));
        assert!(close(measure_sum_entropy(&g, &part("AB|CD", 4)).unwrap(), 2.0, 1e-12));
        assert!(measure_sum_entropy(&g, &part("ABCD", 4)).is_err());
        let psi = random_state(4, 2, 3);
        let x = 0b0101;
        let e = measure_sum_entropy(&psi, &part("AC|BD", 4)).unwrap();
        assert!(close(e, 2.0 * reduced_entropy(&psi, x).unwrap(), 1e-9));
    }

    #[test]
    fn ghz4_point() {
        let p = mems_point(&ghz(4).unwrap()).unwrap();
        let idx = shared_index(0b1111);
        for (pi, v) in idx.partitions().iter().zip(p.values()) {
            let expected = pi.block_count().max(2) as f64;
            assert!(close(*v, expected, 1e-12), "{pi}: {v}");
        }
        let zero = mems_point(&product_zero(4).unwrap()).unwrap();
        assert!(zero.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn decomposition_holds_for_fixture_graphs() {
        let v4 = VertexSet::letters(4).unwrap();
        let graphs = [
            h(3, &["AB", "BC", "AC"]),
            k_uniform_complete(v4.clone(), 2).unwrap(),
            k_uniform_complete(v4.clone(), 3).unwrap(),
            h(4, &["ABC", "CD"]),
            h(4, &["AB", "BCD"]),
            h(4, &["AB", "CD"]),
            h(4, &["ABCD"]),
        ];
        for g in &graphs {
            let layout = FactorLayout::uniform(g, 2).unwrap();
            for seed in 0..10 {
                let r = verify_decomposition(g, &layout, seed).unwrap();
                assert!(r < 1e-9, "{} seed {seed}: {r}", g.describe());
            }
        }
    }

    #[test]
    fn own_class_signals_vanish() {
        let k3 = k_uniform_complete(VertexSet::letters(4).unwrap(), 3).unwrap();
        let layout = FactorLayout::uniform(&k3, 2).unwrap();
        let seeds: Vec<u64> = (0..10).collect();
        for r in verify_class(&k3, &layout, &seeds, Execution::Parallel).unwrap() {
            assert!(r.residual < 1e-9 && r.max_signal < 1e-9, "{r:?}");
        }
    }

    #[test]
    fn ghz4_violates_three_uniform_class() {
        let k3 = k_uniform_complete(VertexSet::letters(4).unwrap(), 3).unwrap();
        let values = evaluate_signals(&reduction::signals(&k3), &mems_point(&ghz(4).unwrap()).unwrap()).unwrap();
        assert!(values.iter().any(|v| v.abs() >= 1.9), "{values:?}");
    }

    #[test]
    fn triangle_signal_vanishes_on_any_pure_state() {
        let tri = h(3, &["AB", "BC", "AC"]);
        let sig = reduction::signals(&tri);
        for seed in 0..5 {
            let p = mems_point(&random_state(3, 2, seed)).unwrap();
            assert!(evaluate_signals(&sig, &p).unwrap()[0].abs() < 1e-9);
        }
    }

    #[test]
    fn measure_axioms_on_random_states() {
        let vs4 = VertexSet::letters(4).unwrap();
        let idx = shared_index(vs4.full_mask());
        for seed in 0..4 {
            let psi = random_state(4, 2, seed);
            let phi = random_state(4, 2, seed + 100);
            let both = psi.tensor_parties(&phi).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 200);
            let mut rotated = psi.clone();
            for v in 0..4 {
                rotated.apply_local_unitary(v, &haar_unitary(2, &mut rng)).unwrap();
            }
            // Symmetry: party i of the permuted state is party perm[i] of psi.
            let perm = [2usize, 0, 3, 1];
            let permuted = psi.permute_parties(&perm).unwrap();
            for pi in idx.partitions() {
                let e = measure_sum_entropy(&psi, pi).unwrap();
                let add = measure_sum_entropy(&both, pi).unwrap();
                assert!(close(add, e + measure_sum_entropy(&phi, pi).unwrap(), 1e-9));
                assert!(close(measure_sum_entropy(&rotated, pi).unwrap(), e, 1e-9));
                let mapped: Vec<u64> = pi
                    .blocks()
                    .iter()
                    .map(|&b| {
                        (0..4).filter(|&i| b & (1 << perm[i]) != 0).fold(0u64, |m, i| m | 1 << i)
                    })
                    .collect();
                let mapped = Partition::from_blocks(mapped).unwrap();
                assert!(close(measure_sum_entropy(&permuted, &mapped).unwrap(), e, 1e-9));
            }
        }
    }

    #[test]
    fn reducibility_with_a_pure_extra_party() {
        let vs = VertexSet::letters(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let rest = PureState::new(vs.clone(), 0b0111, vec![2, 2, 2], haar_state(8, &mut rng)).unwrap();
        let extra = PureState::new(vs.clone(), 0b1000, vec![3], haar_state(3, &mut rng)).unwrap();
        let joint = rest.product_with(&extra).unwrap();
        let four = measure_sum_entropy(&joint, &Partition::singletons(0b1111)).unwrap();
        let three = measure_sum_entropy(&rest, &Partition::singletons(0b0111)).unwrap();
        assert!(close(four, three, 1e-9));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let u = haar_unitary(5, &mut rng);
        let id = u.adjoint() * &u;
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn named_states() {
        assert_eq!(named_state("ghz3").unwrap().total_dim(), 8);
        assert_eq!(named_state("product").unwrap().total_dim(), 16);
        assert!(named_state("w4").is_err());
        let bad = PureState::on_all(VertexSet::letters(1).unwrap(), vec![2], vec![Complex64::new(1.0, 0.0); 2]);
        assert!(bad.is_err());
    }
}
