//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mems_core::error::Result;
use mems_core::fixtures::{self, check_equalities, check_table, equality_rows};
use mems_core::hypergraph::{k_uniform_complete, Hypergraph};
use mems_core::par::Execution;
use mems_core::partitions::{bell_usize, Partition, VertexSet};
use mems_core::quantum::{self, FactorLayout};
use mems_core::reduction::{self, codimension, shared_index, signals};
use mems_core::structure::count_sensitive;
use mems_core::sweep::{self, Sampling};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { passed, detail: detail.into() })
}

fn table1() -> Result<Outcome> {
    let c = check_table(&fixtures::table1())?;
    outcome(c.passed, c.detail)
}

fn table2() -> Result<Outcome> {
    let c = check_table(&fixtures::table2())?;
    outcome(c.passed, c.detail)
}

fn codimensions() -> Result<Outcome> {
    let (a, b) = (signals(&fixtures::k3n4()).len(), signals(&fixtures::k2n4()).len());
    let (ca, cb) = (codimension(&fixtures::k3n4()), codimension(&fixtures::k2n4()));
    outcome((a, b, ca, cb) == (4, 8, 4, 8), format!("signal counts {a} and {b}"))
}

fn equality_spans() -> Result<Outcome> {
    let a = check_equalities("k3n4", &fixtures::k3n4())?;
    let b = check_equalities("k2n4", &fixtures::k2n4())?;
    outcome(a.passed && b.passed, format!("k3n4 {}; k2n4 {}", a.detail, b.detail))
}

fn triangle() -> Result<Outcome> {
    let h = fixtures::triangle();
    let vs = h.vertices();
    let sig = signals(&h);
    let idx = shared_index(vs.full_mask());
    let mut expected = vec![0i64; idx.len()];
    for (text, c) in [("A|B|C", 2), ("A|BC", -1), ("AC|B", -1), ("AB|C", -1)] {
        let p = Partition::parse(text, vs, false)?;
        expected[idx.position(&p).expect("nontrivial")] = c;
    }
    let rows = sig.integer_rows();
    let got: Vec<i64> = rows.first().map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect()).unwrap_or_default();
    let published = equality_rows("triangle", &h)?;
    let same = mems_core::linalg::same_span(&sig.coefficients().transpose(), &published.transpose())?;
    outcome(rows.len() == 1 && got == expected && same, sig.render().join("; "))
}

fn theorem1() -> Result<Outcome> {
    let exec = Execution::default();
    let mut report = sweep::SweepReport::default();
    for n in 2..=5 {
        report = report.merge(sweep::theorem1(n, Sampling::Exhaustive, exec)?);
    }
    let exhaustive = report.checked;
    report = report.merge(sweep::theorem1(6, Sampling::Random { samples: 200, seed: 2024 }, exec)?);
    outcome(
        report.passed(),
        format!("{exhaustive} exhaustive (n <= 5) + 200 seeded (n = 6), {} failures", report.failures.len()),
    )
}

fn round_trip() -> Result<Outcome> {
    let exec = Execution::default();
    let mut report = sweep::SweepReport::default();
    for n in 2..=4 {
        report = report.merge(sweep::round_trip(n, Sampling::Exhaustive, exec)?);
    }
    let exhaustive = report.checked;
    report = report.merge(sweep::round_trip(5, Sampling::Random { samples: 100, seed: 7 }, exec)?);
    outcome(
        report.passed(),
        format!("{exhaustive} exhaustive (n <= 4) + 100 seeded (n = 5), {} failures", report.failures.len()),
    )
}

fn lattice() -> Result<Outcome> {
    let exec = Execution::default();
    let mut report = sweep::lattice(3, Sampling::Exhaustive, exec)?;
    report = report.merge(sweep::lattice(4, Sampling::Random { samples: 100, seed: 41 }, exec)?);
    report = report.merge(sweep::lattice(5, Sampling::Random { samples: 100, seed: 51 }, exec)?);
    outcome(report.passed(), format!("{} pairs, {} failures", report.checked, report.failures.len()))
}

fn subspace_laws() -> Result<Outcome> {
    let report = sweep::subspace_laws(6, 2, 9, Execution::default())?;
    outcome(report.passed(), format!("{} identities, {} failures", report.checked, report.failures.len()))
}

fn k_sensitivity() -> Result<Outcome> {
    let counts: Vec<usize> = (2..=4)
        .map(|k| count_sensitive(4, k).map(|c| usize::try_from(c).unwrap()))
        .collect::<Result<_>>()?;
    let mut ok = counts == [6, 4, 4] && counts.iter().sum::<usize>() == bell_usize(4) - 1;
    for n in 2..=5 {
        let vs = VertexSet::letters(n)?;
        let class = |k: usize| -> Result<Hypergraph> {
            if k == 1 {
                Ok(Hypergraph::empty(vs.clone()))
            } else {
                k_uniform_complete(vs.clone(), k)
            }
        };
        for k in 2..=n {
            let diff = signals(&class(k - 1)?).len() - signals(&class(k)?).len();
            ok &= count_sensitive(n, k)? == diff.into();
        }
    }
    outcome(ok, format!("count_sensitive(4, 2..=4) = {counts:?}"))
}

fn quantum_vanishing() -> Result<Outcome> {
    let seeds: Vec<u64> = (0..10).collect();
    let mut worst_residual = 0.0f64;
    let mut worst_signal = 0.0f64;
    for h in [fixtures::triangle(), fixtures::k3n4(), fixtures::k2n4()] {
        let layout = FactorLayout::uniform(&h, 2)?;
        for r in quantum::verify_class(&h, &layout, &seeds, Execution::default())? {
            worst_residual = worst_residual.max(r.residual);
            worst_signal = worst_signal.max(r.max_signal);
        }
    }
    outcome(
        worst_residual < 1e-9 && worst_signal < 1e-9,
        format!("max residual {worst_residual:.2e}, max signal {worst_signal:.2e} bits"),
    )
}

fn quantum_violation() -> Result<Outcome> {
    let h = k_uniform_complete(VertexSet::letters(4)?, 3)?;
    let point = quantum::mems_point(&quantum::ghz(4)?)?;
    let values = quantum::evaluate_signals(&signals(&h), &point)?;
    let max = values.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let eq1 = equality_rows("k3n4", &h)?;
    let direction = reduction::dot_f64(eq1.row(0), point.values());
    outcome(
        max >= 1.9 && (direction - 2.0).abs() < 1e-6,
        format!("max |signal| {max:.6} bits, first k3n4 equality {direction:.6} bits"),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>, Duration);

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("k3n4 reduction matrix", table1, secs(1)),
        ("k2n4 reduction matrix", table2, secs(1)),
        ("codimensions 4 and 8", codimensions, secs(1)),
        ("equality spans", equality_spans, secs(1)),
        ("triangle signal", triangle, secs(1)),
        ("rank formula sweep", theorem1, secs(300)),
        ("recovery round trip", round_trip, secs(120)),
        ("lattice correspondence", lattice, secs(300)),
        ("subspace laws and witness", subspace_laws, secs(60)),
        ("k-sensitivity", k_sensitivity, secs(1)),
        ("quantum vanishing", quantum_vanishing, secs(30)),
        ("quantum violation", quantum_violation, secs(1)),
    ];
    // Warm the shared partition indices so the first criterion is not
    // charged for them.
    for n in 2..=6 {
        shared_index((1u64 << n) - 1);
    }
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed && elapsed <= *limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {:<26} {}  [{:.2?} / limit {:?}]  {}",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            elapsed,
            limit,
            detail
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
