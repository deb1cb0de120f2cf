//! The `mems` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors. Results go to stdout, diagnostics to stderr.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use mems_core::error::MemsError;
use mems_core::fixtures::{emit_fixture_report, FixtureOverrides};
use mems_core::hypergraph::{self, Hypergraph};
use mems_core::io;
use mems_core::par::Execution;
use mems_core::partitions::{PartitionIndex, VertexSet};
use mems_core::quantum::{self, FactorLayout, DEFAULT_DIMENSION_CAP};
use mems_core::reduction::{self, build_reduction_matrix, codimension, rank_by_formula, rank_by_matrix};
use mems_core::structure::{self, DEFAULT_TOLERANCE};
use mems_core::sweep::{self, Sampling};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const PARTITION_LISTING_LIMIT: usize = 10;
const K_COMPLETE_LIMIT: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "mems", version, about = "Sperner hypergraph classes and their entanglement signals")]
pub struct Cli {
    /// Accept non-canonical partition spellings such as `B|AC` and normalize them.
    #[arg(long, global = true)]
    pub normalize: bool,

    /// Run sweeps on the current thread only.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RankMethod {
    Matrix,
    Formula,
    Both,
}

#[derive(Args, Debug)]
pub struct GraphOut {
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the nontrivial partitions of `n` vertices in canonical order.
    Partitions {
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the partition-reduction matrix as JSON.
    Matrix { graph: PathBuf },
    /// Rank of the reduction matrix and codimension of the class.
    Rank {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: RankMethod,
    },
    /// Canonical signal basis of the class.
    Signals {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Join of two hypergraphs.
    Join {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Meet of two hypergraphs.
    Meet {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Recover the hypergraph whose signal space is given.
    Recover {
        signals: PathBuf,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Minimal classes whose signals vanish on a point.
    Classify {
        point: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// The k-uniform-complete hypergraph on n vertices.
    KComplete {
        n: usize,
        k: usize,
        #[command(flatten)]
        out: GraphOut,
    },
    /// Number of coordinates sensitive to k-party entanglement.
    CountSensitive { n: usize, k: usize },
    /// Compare the rank formula with the matrix rank.
    VerifyTheorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the join and meet span identities for two hypergraphs.
    VerifyLattice { a: PathBuf, b: PathBuf },
    /// Decomposition residuals and signal values on seeded Sperner states.
    VerifyQuantum {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        qubits_per_factor: u32,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
        dimension_cap: usize,
    },
    /// Regenerate the bundled reference tables and equalities and compare.
    Fixtures {
        /// Replacement for the bundled k3n4 reduction-matrix fixture.
        #[arg(long)]
        table1: Option<PathBuf>,
        /// Replacement for the bundled k2n4 reduction-matrix fixture.
        #[arg(long)]
        table2: Option<PathBuf>,
    },
    /// Measure values of a named state or a seeded Sperner state.
    Point {
        #[arg(long, value_parser = ["ghz3", "ghz4", "product"], conflicts_with = "graph", required_unless_present = "graph")]
        state: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        qubits_per_factor: u32,
        #[arg(long, default_value_t = DEFAULT_DIMENSION_CAP)]
        dimension_cap: usize,
    },
}

/// Failure modes, each mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Verification(String),
}

impl From<MemsError> for CliError {
    fn from(e: MemsError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Hypergraph, CliError> {
    io::hypergraph_from_json(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn write_graph(out: &mut dyn Write, h: &Hypergraph, format: Format) -> CliResult {
    match format {
        Format::Json => writeln!(out, "{}", io::hypergraph_to_json(h))?,
        Format::Dot => write!(out, "{}", io::hypergraph_to_dot(h))?,
        Format::Text => writeln!(out, "{}", h.describe())?,
    }
    Ok(())
}

fn factor_layout(h: &Hypergraph, qubits: u32, cap: usize) -> Result<FactorLayout, CliError> {
    if qubits == 0 || qubits > 8 {
        return Err(CliError::Usage("--qubits-per-factor must be between 1 and 8".into()));
    }
    Ok(FactorLayout::uniform(h, 1 << qubits)?.with_cap(cap))
}

fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let normalize = cli.normalize;
    match cli.command {
        Command::Partitions { n, format } => {
            if n > PARTITION_LISTING_LIMIT {
                return Err(CliError::Usage(format!("partitions lists at most {PARTITION_LISTING_LIMIT} vertices")));
            }
            let vs = VertexSet::letters(n)?;
            let labels = PartitionIndex::for_vertices(&vs).labels(&vs);
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&labels).expect("labels"))?,
                _ => {
                    for l in labels {
                        writeln!(out, "{l}")?;
                    }
                }
            }
        }
        Command::Matrix { graph } => {
            let h = read_graph(&graph)?;
            let r = build_reduction_matrix(&h);
            let vs = h.vertices();
            let m = r.matrix.with_labels(Some(r.macro_index.labels(vs)), Some(r.micro.labels(vs)))?;
            writeln!(out, "{}", io::matrix_to_json(&m))?;
        }
        Command::Rank { graph, method } => {
            let h = read_graph(&graph)?;
            let codim = codimension(&h);
            match method {
                RankMethod::Matrix => writeln!(out, "matrix={} codim={codim}", rank_by_matrix(&h))?,
                RankMethod::Formula => writeln!(out, "formula={} codim={codim}", rank_by_formula(&h))?,
                RankMethod::Both => {
                    let (m, f) = (rank_by_matrix(&h), rank_by_formula(&h));
                    writeln!(out, "matrix={m} formula={f} codim={codim}")?;
                    if m != f {
                        return Err(CliError::Verification(format!("ranks disagree for {}", h.describe())));
                    }
                }
            }
        }
        Command::Signals { graph, format } => {
            let sig = reduction::signals(&read_graph(&graph)?);
            match format {
                Format::Json => writeln!(out, "{}", io::signals_to_json(&sig))?,
                Format::Text => {
                    for line in sig.render() {
                        writeln!(out, "{line}")?;
                    }
                }
                Format::Dot => return Err(CliError::Usage("signals support json or text".into())),
            }
        }
        Command::Join { a, b, out: o } => {
            let h = hypergraph::join(&read_graph(&a)?, &read_graph(&b)?)?;
            write_graph(out, &h, o.format)?;
        }
        Command::Meet { a, b, out: o } => {
            let h = hypergraph::meet(&read_graph(&a)?, &read_graph(&b)?)?;
            write_graph(out, &h, o.format)?;
        }
        Command::Recover { signals, out: o } => {
            let sig = io::signals_from_json(&read(&signals)?, normalize)?;
            write_graph(out, &structure::recover_hypergraph(&sig)?, o.format)?;
        }
        Command::Classify { point, tol } => {
            let p = io::point_from_json(&read(&point)?, normalize)?;
            let classes = structure::classify_point(&p, tol, exec)?;
            let docs: Vec<serde_json::Value> = classes
                .iter()
                .map(|h| serde_json::from_str(&io::hypergraph_to_json(h)).expect("graph json"))
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&docs).expect("classes"))?;
        }
        Command::KComplete { n, k, out: o } => {
            if n > K_COMPLETE_LIMIT {
                return Err(CliError::Usage(format!("k-complete supports at most {K_COMPLETE_LIMIT} vertices")));
            }
            let h = hypergraph::k_uniform_complete(VertexSet::letters(n)?, k)?;
            write_graph(out, &h, o.format)?;
        }
        Command::CountSensitive { n, k } => {
            writeln!(out, "{}", structure::count_sensitive(n, k)?)?;
        }
        Command::VerifyTheorem1 { n, exhaustive, samples, seed } => {
            let sampling = match (exhaustive, samples) {
                (true, _) => Sampling::Exhaustive,
                (false, Some(samples)) => Sampling::Random { samples, seed },
                (false, None) => return Err(CliError::Usage("pass --exhaustive or --samples N".into())),
            };
            if !(2..=6).contains(&n) {
                return Err(CliError::Usage("--n must be between 2 and 6".into()));
            }
            let report = sweep::theorem1(n, sampling, exec)?;
            for f in &report.failures {
                writeln!(out, "FAIL {f}")?;
            }
            let passed = report.checked - report.failures.len();
            writeln!(out, "n={n} checked={} passed={passed}", report.checked)?;
            if !report.passed() {
                return Err(CliError::Verification(format!("{} rank mismatches", report.failures.len())));
            }
        }
        Command::VerifyLattice { a, b } => {
            let r = structure::verify_lattice_correspondence(&read_graph(&a)?, &read_graph(&b)?)?;
            let word = |ok: bool| if ok { "pass" } else { "fail" };
            writeln!(out, "join {} {}", r.join.describe(), word(r.join_ok))?;
            writeln!(out, "meet {} {}", r.meet.describe(), word(r.meet_ok))?;
            if !r.passed() {
                return Err(CliError::Verification("lattice correspondence failed".into()));
            }
        }
        Command::VerifyQuantum { graph, qubits_per_factor, seeds, tol, dimension_cap } => {
            if tol.is_nan() || tol < 0.0 {
                return Err(CliError::Usage("--tol must be non-negative".into()));
            }
            let h = read_graph(&graph)?;
            let layout = factor_layout(&h, qubits_per_factor, dimension_cap)?;
            let seeds: Vec<u64> = (0..seeds).collect();
            let reports = quantum::verify_class(&h, &layout, &seeds, exec)?;
            let mut bad = 0;
            for r in &reports {
                let ok = r.residual < tol && r.max_signal < tol;
                bad += usize::from(!ok);
                writeln!(
                    out,
                    "seed={} residual={:.3e} max_signal={:.3e} {}",
                    r.seed,
                    r.residual,
                    r.max_signal,
                    if ok { "pass" } else { "fail" }
                )?;
            }
            writeln!(out, "{} of {} seeds within {tol:e}", reports.len() - bad, reports.len())?;
            if bad > 0 {
                return Err(CliError::Verification(format!("{bad} seeds exceeded the tolerance")));
            }
        }
        Command::Fixtures { table1, table2 } => {
            let overrides = FixtureOverrides {
                table1: table1.as_deref().map(read).transpose()?,
                table2: table2.as_deref().map(read).transpose()?,
            };
            let report = emit_fixture_report(&overrides)?;
            write!(out, "{report}")?;
            if let Some(f) = report.first_failure() {
                return Err(CliError::Verification(format!("{}: {}", f.name, f.detail)));
            }
        }
        Command::Point { state, graph, seed, qubits_per_factor, dimension_cap } => {
            let psi = match (state, graph) {
                (Some(name), _) => quantum::named_state(&name)?,
                (None, Some(path)) => {
                    let h = read_graph(&path)?;
                    let layout = factor_layout(&h, qubits_per_factor, dimension_cap)?;
                    quantum::build_sperner_state(&h, &layout, seed)?
                }
                (None, None) => return Err(CliError::Usage("pass --state or --graph".into())),
            };
            writeln!(out, "{}", io::point_to_json(&quantum::mems_point(&psi)?))?;
        }
    }
    Ok(())
}

/// Sizes the rayon pool from `MEMS_THREADS` when set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("MEMS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("MEMS_THREADS must be a positive integer, got `{value}`")))?;
    #[cfg(feature = "parallel")]
    {
        // A pool may already exist when run repeatedly in one process.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = configure_threads().and_then(|()| execute(cli, out));
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            EXIT_FAILED
        }
    }
}
