//! Set partitions of small vertex sets.
//!
//! Vertices are identified by their position in a [`VertexSet`]; subsets are
//! `u64` bitmasks over those positions. A [`Partition`] stores its blocks as
//! masks sorted by smallest member, which is the canonical form used for
//! hashing, printing and parsing.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{MemsError, Result};

/// Largest vertex set representable with `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// Iterates the set bit positions of `mask` in increasing order.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> + Clone {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        }
    })
}

pub(crate) fn popcount(mask: u64) -> usize {
    mask.count_ones() as usize
}

pub(crate) fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

/// Ordered list of distinct party names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    labels: Vec<String>,
}

impl VertexSet {
    /// Builds a vertex set from labels, sorting them. Labels must be unique,
    /// non-empty and free of the separators `|` and `,`.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(MemsError::InvalidVertexSet("at least one vertex required".into()));
        }
        if labels.len() > MAX_VERTICES {
            return Err(MemsError::InvalidVertexSet(format!(
                "{} vertices exceeds the limit of {MAX_VERTICES}",
                labels.len()
            )));
        }
        for l in &labels {
            if l.is_empty() || l.contains(['|', ',']) || l.chars().any(char::is_whitespace) {
                return Err(MemsError::InvalidVertexSet(format!("bad label `{l}`")));
            }
        }
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(MemsError::InvalidVertexSet("duplicate labels".into()));
        }
        Ok(Self { labels })
    }

    /// `A`, `B`, ... for `n ≤ 26`; zero-padded `V01`, `V02`, ... beyond.
    pub fn letters(n: usize) -> Result<Self> {
        if n <= 26 {
            Self::new((0..n).map(|i| char::from(b'A' + i as u8).to_string()))
        } else {
            Self::new((1..=n).map(|i| format!("V{i:02}")))
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| MemsError::UnknownVertex(label.to_string()))
    }

    /// True when every label is a single character, so blocks print as
    /// concatenated names (`AB|C`). Otherwise vertices are comma separated.
    pub fn is_compact(&self) -> bool {
        self.labels.iter().all(|l| l.chars().count() == 1)
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for l in labels {
            let i = self.index_of(l.as_ref())?;
            if mask & (1 << i) != 0 {
                return Err(MemsError::InvalidSubset(format!("repeated vertex `{}`", l.as_ref())));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    pub fn labels_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    /// Prints a subset as one block, e.g. `ABD` or `V01,V03`.
    pub fn format_mask(&self, mask: u64) -> String {
        let sep = if self.is_compact() { "" } else { "," };
        bits(mask).map(|i| self.labels[i].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Parses one block of vertex names. Returns the mask and whether the
    /// names appeared in sorted order.
    pub fn parse_block(&self, text: &str) -> Result<(u64, bool)> {
        let names: Vec<String> = if self.is_compact() {
            text.chars().map(String::from).collect()
        } else {
            text.split(',').map(|s| s.trim().to_string()).collect()
        };
        if names.is_empty() || names.iter().any(String::is_empty) {
            return Err(MemsError::InvalidPartition(format!("empty block in `{text}`")));
        }
        let idx = names.iter().map(|n| self.index_of(n)).collect::<Result<Vec<_>>>()?;
        let sorted = idx.windows(2).all(|w| w[0] < w[1]);
        let mask = self.mask_of(&names)?;
        Ok((mask, sorted))
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.labels.iter().all(|l| other.index_of(l).is_ok())
    }
}

/// Bell number `B_n` by the Bell triangle.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().cloned().unwrap_or_else(BigUint::one));
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

/// `B_n` as a machine integer; panics if it does not fit (n > 25).
pub fn bell_usize(n: usize) -> usize {
    bell_number(n).to_usize().expect("Bell number overflows usize")
}

/// A set partition of a ground set of vertex positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<u64>,
}

impl Partition {
    /// Validates and canonicalizes a list of blocks.
    pub fn from_blocks(mut blocks: Vec<u64>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(MemsError::InvalidPartition("no blocks".into()));
        }
        let mut seen = 0u64;
        for &b in &blocks {
            if b == 0 {
                return Err(MemsError::InvalidPartition("empty block".into()));
            }
            if seen & b != 0 {
                return Err(MemsError::InvalidPartition("overlapping blocks".into()));
            }
            seen |= b;
        }
        blocks.sort_by_key(|b| b.trailing_zeros());
        Ok(Self { blocks })
    }

    /// Builds a partition from a restricted-growth string over the elements
    /// of `ground` in increasing order.
    pub fn from_rgs(ground: u64, rgs: &[usize]) -> Result<Self> {
        if popcount(ground) != rgs.len() {
            return Err(MemsError::InvalidPartition("rgs length differs from ground size".into()));
        }
        let mut blocks: Vec<u64> = Vec::new();
        for (v, &b) in bits(ground).zip(rgs) {
            match b.cmp(&blocks.len()) {
                Ordering::Less => blocks[b] |= 1 << v,
                Ordering::Equal => blocks.push(1 << v),
                Ordering::Greater => {
                    return Err(MemsError::InvalidPartition("not a restricted-growth string".into()))
                }
            }
        }
        Self::from_blocks(blocks)
    }

    pub fn trivial(ground: u64) -> Self {
        assert!(ground != 0, "empty ground set");
        Self { blocks: vec![ground] }
    }

    pub fn singletons(ground: u64) -> Self {
        Self { blocks: bits(ground).map(|i| 1u64 << i).collect() }
    }

    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn ground(&self) -> u64 {
        self.blocks.iter().fold(0, |a, b| a | b)
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Restricted-growth string over the ground elements in increasing order.
    pub fn rgs(&self) -> Vec<usize> {
        bits(self.ground())
            .map(|v| self.blocks.iter().position(|b| b & (1 << v) != 0).unwrap())
            .collect()
    }

    /// `π|_S`: intersect every block with `subset` and drop the empty ones.
    pub fn restrict(&self, subset: u64) -> Result<Partition> {
        if subset == 0 {
            return Err(MemsError::EmptyRestriction);
        }
        if !is_subset(subset, self.ground()) {
            return Err(MemsError::InvalidSubset("restriction target outside the ground set".into()));
        }
        Ok(self.restrict_unchecked(subset))
    }

    /// Restriction without validation; `subset` must be a non-empty subset of
    /// the ground set.
    pub(crate) fn restrict_unchecked(&self, subset: u64) -> Partition {
        let mut blocks: Vec<u64> =
            self.blocks.iter().map(|b| b & subset).filter(|&b| b != 0).collect();
        blocks.sort_by_key(|b| b.trailing_zeros());
        Partition { blocks }
    }

    /// Adds one singleton block per vertex of `superset` outside the ground set.
    pub fn extend_singleton(&self, superset: u64) -> Result<Partition> {
        let ground = self.ground();
        if !is_subset(ground, superset) {
            return Err(MemsError::NotSuperset);
        }
        let mut blocks = self.blocks.clone();
        blocks.extend(bits(superset & !ground).map(|i| 1u64 << i));
        Partition::from_blocks(blocks)
    }

    /// Canonical text, e.g. `AB|C|D`.
    pub fn format(&self, vs: &VertexSet) -> String {
        self.blocks.iter().map(|&b| vs.format_mask(b)).collect::<Vec<_>>().join("|")
    }

    /// Parses `block ("|" block)*`. The ground set is the union of the blocks.
    /// Non-canonical spellings (unsorted blocks or vertices) are rejected
    /// unless `normalize` is set.
    pub fn parse(text: &str, vs: &VertexSet, normalize: bool) -> Result<Partition> {
        let text = text.trim();
        if text.is_empty() {
            return Err(MemsError::InvalidPartition("empty text".into()));
        }
        let mut blocks = Vec::new();
        let mut vertices_sorted = true;
        for part in text.split('|') {
            let (mask, sorted) = vs.parse_block(part.trim())?;
            vertices_sorted &= sorted;
            blocks.push(mask);
        }
        let blocks_sorted = blocks.windows(2).all(|w| w[0].trailing_zeros() < w[1].trailing_zeros());
        let p = Partition::from_blocks(blocks)?;
        let canonical = p.format(vs);
        if !normalize && (!vertices_sorted || !blocks_sorted || canonical != text) {
            return Err(MemsError::NonCanonicalPartition { given: text.to_string(), canonical });
        }
        Ok(p)
    }

    /// Position in the canonical order of `Π*(ground)`: finer partitions
    /// first, then restricted-growth strings in descending lexicographic order.
    pub fn canonical_cmp(&self, other: &Partition) -> Ordering {
        self.ground()
            .cmp(&other.ground())
            .then_with(|| other.block_count().cmp(&self.block_count()))
            .then_with(|| other.rgs().cmp(&self.rgs()))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|&b| bits(b).map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// All restricted-growth strings of length `m`, in lexicographic order.
fn all_rgs(m: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, max: usize, m: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        let limit = if cur.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            cur.push(b);
            rec(cur, max.max(b), m, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(&mut Vec::with_capacity(m), 0, m, &mut out);
    }
    out
}

/// Every partition of `ground`, including the trivial one, in canonical order.
pub fn all_partitions(ground: u64) -> Vec<Partition> {
    let mut out: Vec<Partition> = all_rgs(popcount(ground))
        .into_iter()
        .map(|r| Partition::from_rgs(ground, &r).expect("generated rgs is valid"))
        .collect();
    out.sort_by(Partition::canonical_cmp);
    out
}

/// `Π*(ground)` in canonical order.
pub fn nontrivial_partitions(ground: u64) -> Vec<Partition> {
    all_partitions(ground).into_iter().filter(|p| !p.is_trivial()).collect()
}

/// `Π*(V)` for a whole vertex set.
pub fn enumerate_nontrivial_partitions(vs: &VertexSet) -> Vec<Partition> {
    nontrivial_partitions(vs.full_mask())
}

/// Canonical ordering of `Π*(S)` with reverse lookup.
#[derive(Clone, Debug)]
pub struct PartitionIndex {
    ground: u64,
    order: Vec<Partition>,
    positions: HashMap<Partition, usize>,
}

impl PartitionIndex {
    pub fn new(ground: u64) -> Self {
        let order = nontrivial_partitions(ground);
        let positions = order.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        Self { ground, order, positions }
    }

    pub fn for_vertices(vs: &VertexSet) -> Self {
        Self::new(vs.full_mask())
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.order
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.order[i]
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.positions.get(p).copied()
    }

    pub fn labels(&self, vs: &VertexSet) -> Vec<String> {
        self.order.iter().map(|p| p.format(vs)).collect()
    }
}
