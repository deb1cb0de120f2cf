//! Antichain ("Sperner") hypergraphs and their lattice operations.

use std::cmp::Ordering;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{MemsError, Result};
use crate::partitions::{bits, is_subset, popcount, VertexSet};

/// Largest vertex set accepted by [`enumerate_antichains`].
pub const ANTICHAIN_ENUMERATION_LIMIT: usize = 6;

/// Edge order: larger edges first, then lexicographic on sorted vertex positions.
pub fn edge_cmp(a: &u64, b: &u64) -> Ordering {
    popcount(*b).cmp(&popcount(*a)).then_with(|| bits(*a).cmp(bits(*b)))
}

/// A hypergraph whose edges (each of size at least two) form an antichain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    vertices: VertexSet,
    edges: Vec<u64>,
}

impl Hypergraph {
    /// Validates an edge list; fails if it is not already an antichain of
    /// subsets of size at least two.
    pub fn new(vertices: VertexSet, edges: Vec<u64>) -> Result<Self> {
        let full = vertices.full_mask();
        for &e in &edges {
            if !is_subset(e, full) {
                return Err(MemsError::InvalidHypergraph("edge outside the vertex set".into()));
            }
            if popcount(e) < 2 {
                return Err(MemsError::InvalidHypergraph(format!(
                    "edge `{}` has fewer than two vertices",
                    vertices.format_mask(e)
                )));
            }
        }
        for (i, &a) in edges.iter().enumerate() {
            for &b in &edges[i + 1..] {
                if is_subset(a, b) || is_subset(b, a) {
                    return Err(MemsError::InvalidHypergraph(format!(
                        "edges `{}` and `{}` violate the antichain rule",
                        vertices.format_mask(a),
                        vertices.format_mask(b)
                    )));
                }
            }
        }
        let mut edges = edges;
        edges.sort_by(edge_cmp);
        Ok(Self { vertices, edges })
    }

    pub fn empty(vertices: VertexSet) -> Self {
        Self { vertices, edges: Vec::new() }
    }

    /// The single edge `V`; needs at least two vertices.
    pub fn full(vertices: VertexSet) -> Result<Self> {
        let full = vertices.full_mask();
        Self::new(vertices, vec![full])
    }

    pub fn from_labels<S: AsRef<str>>(vertices: VertexSet, edges: &[Vec<S>]) -> Result<Self> {
        let masks = edges.iter().map(|e| vertices.mask_of(e)).collect::<Result<Vec<_>>>()?;
        Self::new(vertices, masks)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[u64] {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_labels(&self) -> Vec<Vec<String>> {
        self.edges.iter().map(|&e| self.vertices.labels_of(e)).collect()
    }

    /// Compact text such as `{AB, BC, AC}`.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.edges.iter().map(|&e| self.vertices.format_mask(e)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    fn check_same(&self, other: &Hypergraph) -> Result<()> {
        if self.vertices != other.vertices {
            return Err(MemsError::VertexSetMismatch);
        }
        Ok(())
    }
}

/// Drops edges of size at most one and edges contained in another edge.
pub fn antichain_normalize<I>(vertices: VertexSet, edges: I) -> Hypergraph
where
    I: IntoIterator<Item = u64>,
{
    let full = vertices.full_mask();
    let mut candidates: Vec<u64> =
        edges.into_iter().map(|e| e & full).filter(|&e| popcount(e) >= 2).collect();
    candidates.sort_by(edge_cmp);
    candidates.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(candidates.len());
    // Larger edges come first, so anything containing `e` is already kept.
    for e in candidates {
        if !kept.iter().any(|&k| is_subset(e, k)) {
            kept.push(e);
        }
    }
    Hypergraph { vertices, edges: kept }
}

/// `H1 ⪰ H2`: every edge of `h2` lies inside some edge of `h1`.
pub fn dominates(h1: &Hypergraph, h2: &Hypergraph) -> Result<bool> {
    h1.check_same(h2)?;
    Ok(h2.edges.iter().all(|&f| h1.edges.iter().any(|&e| is_subset(f, e))))
}

pub fn join(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph> {
    a.check_same(b)?;
    Ok(antichain_normalize(a.vertices.clone(), a.edges.iter().chain(&b.edges).copied()))
}

pub fn meet(a: &Hypergraph, b: &Hypergraph) -> Result<Hypergraph> {
    a.check_same(b)?;
    let pairs = a.edges.iter().flat_map(|&e| b.edges.iter().map(move |&f| e & f));
    Ok(antichain_normalize(a.vertices.clone(), pairs))
}

/// All `k`-subsets of the vertex set as edges.
pub fn k_uniform_complete(vertices: VertexSet, k: usize) -> Result<Hypergraph> {
    let n = vertices.len();
    if k < 2 || k > n {
        return Err(MemsError::OutOfRange(format!("k = {k} must satisfy 2 <= k <= {n}")));
    }
    let edges: Vec<u64> = (1..=vertices.full_mask()).filter(|&m| popcount(m) == k).collect();
    Hypergraph::new(vertices, edges)
}

/// Streams every antichain of size-≥2 subsets, starting with the empty one.
#[derive(Clone, Debug)]
pub struct Antichains {
    vertices: VertexSet,
    candidates: Vec<u64>,
    chosen: Vec<usize>,
    started: bool,
    done: bool,
}

impl Antichains {
    fn compatible_from(&self, from: usize) -> Option<usize> {
        (from..self.candidates.len()).find(|&j| {
            let c = self.candidates[j];
            self.chosen.iter().all(|&i| {
                let e = self.candidates[i];
                !is_subset(c, e) && !is_subset(e, c)
            })
        })
    }

    fn current(&self) -> Hypergraph {
        // Candidates are in edge order, so chosen indices are already sorted.
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: self.chosen.iter().map(|&i| self.candidates[i]).collect(),
        }
    }
}

impl Iterator for Antichains {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current());
        }
        let start = self.chosen.last().map_or(0, |&i| i + 1);
        if let Some(j) = self.compatible_from(start) {
            self.chosen.push(j);
            return Some(self.current());
        }
        while let Some(i) = self.chosen.pop() {
            if let Some(j) = self.compatible_from(i + 1) {
                self.chosen.push(j);
                return Some(self.current());
            }
        }
        self.done = true;
        None
    }
}

/// All subsets of size at least two, in edge order.
pub fn candidate_edges(vertices: &VertexSet) -> Vec<u64> {
    let mut c: Vec<u64> = (1..=vertices.full_mask()).filter(|&m| popcount(m) >= 2).collect();
    c.sort_by(edge_cmp);
    c
}

pub fn enumerate_antichains(vertices: &VertexSet) -> Result<Antichains> {
    if vertices.len() > ANTICHAIN_ENUMERATION_LIMIT {
        return Err(MemsError::EnumerationLimit(format!(
            "antichain enumeration supports at most {ANTICHAIN_ENUMERATION_LIMIT} vertices, got {}",
            vertices.len()
        )));
    }
    Ok(Antichains {
        candidates: candidate_edges(vertices),
        vertices: vertices.clone(),
        chosen: Vec::new(),
        started: false,
        done: false,
    })
}

/// Draws a random antichain: candidates are visited in shuffled order and
/// each compatible one is kept with a per-draw acceptance probability.
pub fn random_antichain<R: Rng + ?Sized>(vertices: &VertexSet, rng: &mut R) -> Hypergraph {
    let mut candidates = candidate_edges(vertices);
    candidates.shuffle(rng);
    let accept: f64 = rng.random_range(0.05..1.0);
    let mut kept: Vec<u64> = Vec::new();
    for c in candidates {
        if rng.random_bool(accept) && kept.iter().all(|&e| !is_subset(c, e) && !is_subset(e, c)) {
            kept.push(c);
        }
    }
    kept.sort_by(edge_cmp);
    Hypergraph { vertices: vertices.clone(), edges: kept }
}

/// Every vertex subset (as a mask) contained in some edge and of size ≥ 2.
pub fn covered_subsets(h: &Hypergraph) -> impl Iterator<Item = u64> + '_ {
    (1..=h.vertices.full_mask())
        .filter(move |&s| popcount(s) >= 2 && h.edges.iter().any(|&e| is_subset(s, e)))
}
