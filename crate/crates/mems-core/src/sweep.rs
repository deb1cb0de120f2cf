//! Seeded and exhaustive verification sweeps over antichains and subsets.
//!
//! Inputs are generated sequentially from the seed, then checked through
//! [`par::map`], so results never depend on the execution mode.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hypergraph::{enumerate_antichains, random_antichain, Hypergraph};
use crate::par::{self, Execution};
use crate::partitions::{popcount, VertexSet};
use crate::reduction::{rank_by_formula, rank_by_matrix, signals};
use crate::structure::{
    check_double_sum_meet_law, check_family_meet_law, check_pair_meet_law, check_strict_containment,
    recover_hypergraph, verify_lattice_correspondence,
};

/// Which inputs a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub checked: usize,
    /// Human-readable description of each failing input.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(mut self, other: SweepReport) -> SweepReport {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }

    fn collect(results: Vec<Option<String>>) -> SweepReport {
        SweepReport { checked: results.len(), failures: results.into_iter().flatten().collect() }
    }
}

pub fn antichains(n: usize, sampling: Sampling) -> Result<Vec<Hypergraph>> {
    let vs = VertexSet::letters(n)?;
    Ok(match sampling {
        Sampling::Exhaustive => enumerate_antichains(&vs)?.collect(),
        Sampling::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| random_antichain(&vs, &mut rng)).collect()
        }
    })
}

/// `rank_by_formula == rank_by_matrix` for every visited antichain.
pub fn theorem1(n: usize, sampling: Sampling, exec: Execution) -> Result<SweepReport> {
    let graphs = antichains(n, sampling)?;
    Ok(SweepReport::collect(par::map(exec, &graphs, |h| {
        let (m, f) = (rank_by_matrix(h), rank_by_formula(h));
        (m != f).then(|| format!("{}: matrix={m} formula={f}", h.describe()))
    })))
}

/// `recover_hypergraph(signals(H)) == H` for every visited antichain.
pub fn round_trip(n: usize, sampling: Sampling, exec: Execution) -> Result<SweepReport> {
    let graphs = antichains(n, sampling)?;
    Ok(SweepReport::collect(par::map(exec, &graphs, |h| match recover_hypergraph(&signals(h)) {
        Ok(back) if back == *h => None,
        Ok(back) => Some(format!("{} recovered as {}", h.describe(), back.describe())),
        Err(e) => Some(format!("{}: {e}", h.describe())),
    })))
}

/// Join and meet span identities on pairs: all ordered pairs when
/// exhaustive, otherwise seeded pairs.
pub fn lattice(n: usize, sampling: Sampling, exec: Execution) -> Result<SweepReport> {
    let pairs: Vec<(Hypergraph, Hypergraph)> = match sampling {
        Sampling::Exhaustive => {
            let all = antichains(n, Sampling::Exhaustive)?;
            all.iter().flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone()))).collect()
        }
        Sampling::Random { samples, seed } => {
            let vs = VertexSet::letters(n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| (random_antichain(&vs, &mut rng), random_antichain(&vs, &mut rng))).collect()
        }
    };
    Ok(SweepReport::collect(par::map(exec, &pairs, |(a, b)| match verify_lattice_correspondence(a, b) {
        Ok(r) if r.passed() => None,
        Ok(r) => Some(format!(
            "{} / {}: join_ok={} meet_ok={}",
            a.describe(),
            b.describe(),
            r.join_ok,
            r.meet_ok
        )),
        Err(e) => Some(format!("{} / {}: {e}", a.describe(), b.describe())),
    })))
}

fn describe(vs: &VertexSet, subsets: &[u64]) -> String {
    let parts: Vec<String> = subsets.iter().map(|&s| vs.format_mask(s)).collect();
    format!("[{}]", parts.join(", "))
}

fn random_family(rng: &mut ChaCha8Rng, pool: &[u64], max_len: usize) -> Vec<u64> {
    let len = rng.random_range(1..=max_len);
    pool.choose_multiple(rng, len).copied().collect()
}

/// Subspace laws on the vertex set of size `n`:
/// the pairwise meet law for every pair `S, T` (|S| ≥ 3, |T| ≥ 2), the
/// family and double-sum laws on `families` seeded families per `S`, and
/// the strict-containment witness for every `S` with |S| ≥ 3.
///
/// Each identity is evaluated inside `Π*(ground)` for `ground` the union of
/// the subsets involved; pulling back along restriction is injective, so
/// this is equivalent to working in `Π*(V)`.
pub fn subspace_laws(n: usize, families: usize, seed: u64, exec: Execution) -> Result<SweepReport> {
    let vs = VertexSet::letters(n)?;
    let full = vs.full_mask();
    let pool: Vec<u64> = (1..=full).filter(|&s| popcount(s) >= 2).collect();
    let big: Vec<u64> = pool.iter().copied().filter(|&s| popcount(s) >= 3).collect();

    let pairs: Vec<(u64, u64)> = big.iter().flat_map(|&s| pool.iter().map(move |&t| (s, t))).collect();
    let pair_report = SweepReport::collect(par::map(exec, &pairs, |&(s, t)| {
        match check_pair_meet_law(s | t, s, t) {
            Ok(true) => None,
            Ok(false) => Some(format!("pair law {}", describe(&vs, &[s, t]))),
            Err(e) => Some(format!("pair law {}: {e}", describe(&vs, &[s, t]))),
        }
    }));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for &s in &big {
        for _ in 0..families {
            cases.push((vec![s], random_family(&mut rng, &pool, 3)));
            cases.push((random_family(&mut rng, &pool, 2), random_family(&mut rng, &pool, 2)));
        }
    }
    let family_report = SweepReport::collect(par::map(exec, &cases, |(ss, ts)| {
        let ground = ss.iter().chain(ts).fold(0, |a, b| a | b);
        let result = if ss.len() == 1 {
            check_family_meet_law(ground, ss[0], ts)
        } else {
            check_double_sum_meet_law(ground, ss, ts)
        };
        match result {
            Ok(true) => None,
            Ok(false) => Some(format!("meet law {} / {}", describe(&vs, ss), describe(&vs, ts))),
            Err(e) => Some(format!("meet law {} / {}: {e}", describe(&vs, ss), describe(&vs, ts))),
        }
    }));

    let witness_report = SweepReport::collect(par::map(exec, &big, |&s| match check_strict_containment(s) {
        Ok(r) if r.passed() => None,
        Ok(r) => Some(format!("witness {}: {r:?}", vs.format_mask(s))),
        Err(e) => Some(format!("witness {}: {e}", vs.format_mask(s))),
    }));

    Ok(pair_report.merge(family_report).merge(witness_report))
}
