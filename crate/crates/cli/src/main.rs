//! `entropy`: entropy pipelines and verification suites for graph and
//! ultragraph shift spaces.
//!
//! Exit codes: 0 success, 1 failed verification or unusable input, 2 parse
//! or usage error, 3 disagreement between pipelines or broken doubling.

mod commands;
mod graph_file;
mod report;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use dr_entropy::graph_model::{parse_builtin, Ultragraph};

use commands::{CoverSpec, MetricChoice, MetricOptions};
use graph_file::{parse_graph, ParseError};
use report::{Format, Report};
use verify::Suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {err}")]
    Parse { path: String, err: ParseError },
    #[error("{0}")]
    Input(String),
    #[error("{path}: {err}")]
    Io { path: String, err: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Input(_) | CliError::Io { .. } => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "entropy", version, about = "Entropy of graph and ultragraph shift spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in system, e.g. rose:3, ladder:4, golden_mean, union(rose:3,ladder).
    #[arg(long)]
    builtin: Option<String>,
    /// Graph file with `vertex` and `edge` lines.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Path counting and spectral radius of a finite graph, side by side.
    Finite {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Spectral entropy of finite subgraphs along ascending edge budgets.
    Rowfinite {
        #[command(flatten)]
        source: Source,
        /// `A..B` (inclusive) or a comma list.
        #[arg(long, default_value = "2..20")]
        budgets: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Minimal subcover counts of iterated joins: `renewal:m` or a word cover of a finite graph.
    Cover {
        #[arg(long)]
        builtin: String,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
        /// Word length of the cover for finite graphs.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Separated-set counts `ssep(n, 1/2^j)` and metric entropy estimates.
    Metric {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "first-difference")]
        metric: MetricChoice,
        /// Dyadic exponents j of eps = 1/2^j, increasing.
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        eps: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        /// Edge budget of the compact set (default: every edge of a finite graph).
        #[arg(long)]
        budget: Option<usize>,
        /// Length of the enumeration prefix behind d_X.
        #[arg(long, default_value_t = 300)]
        enum_budget: usize,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of random instances (sep-span, cover-lemmas).
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn load(source: &Source) -> Result<(Ultragraph, String), CliError> {
    if let Some(spec) = &source.builtin {
        let g = parse_builtin(spec).map_err(|e| CliError::Input(format!("{spec}: {e}")))?;
        return Ok((g, spec.clone()));
    }
    let path = source.file.as_ref().expect("clap requires a source");
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|err| CliError::Io { path: shown.clone(), err })?;
    let name = path.file_stem().map_or("graph".into(), |s| s.to_string_lossy().into_owned());
    let g = parse_graph(&name, &text).map_err(|err| CliError::Parse { path: shown.clone(), err })?;
    Ok((g, shown))
}

fn parse_budgets(spec: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Input(format!("bad budget list {spec:?}: use A..B or a comma list"));
    let out: Vec<usize> = if let Some((a, b)) = spec.split_once("..") {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        (a..=b).collect()
    } else {
        spec.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

/// The report and the exit code it carries.
fn execute(cmd: &Command) -> Result<(Report, u8), CliError> {
    match cmd {
        Command::Finite { source, nmax, tol } => {
            positive("nmax", *nmax)?;
            let (g, shown) = load(source)?;
            let r = commands::finite(&g, &shown, *nmax, *tol)?;
            let code = if r.ok { 0 } else { 3 };
            Ok((r, code))
        }
        Command::Rowfinite { source, budgets, tol } => {
            let (g, shown) = load(source)?;
            let r = commands::rowfinite(&g, &shown, &parse_budgets(budgets)?, *tol)?;
            Ok((r, 0))
        }
        Command::Cover { builtin, nmax, depth } => {
            positive("nmax", *nmax)?;
            positive("depth", *depth)?;
            let spec = commands::parse_cover_spec(builtin, *depth)?;
            let (r, doubling) = commands::cover(&spec, builtin, *nmax)?;
            let code = match (&spec, doubling, r.ok) {
                (CoverSpec::Renewal(_), false, _) => 3,
                (_, _, false) => 1,
                _ => 0,
            };
            Ok((r, code))
        }
        Command::Metric { source, metric, eps, nmax, budget, enum_budget } => {
            positive("nmax", *nmax)?;
            let (g, shown) = load(source)?;
            let o = MetricOptions { metric: *metric, eps: eps.clone(), n_max: *nmax, budget: *budget, enum_budget: *enum_budget };
            Ok((commands::metric(&g, &shown, &o)?, 0))
        }
        Command::Verify { suite, seed, samples } => {
            let r = verify::run(*suite, *seed, *samples)?;
            let code = if r.ok { 0 } else { 1 };
            Ok((r, code))
        }
    }
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Input(format!("--{name} must be positive")));
    }
    Ok(())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|err| CliError::Io { path: p.display().to_string(), err }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("DR_ENTROPY_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let result = execute(&cli.command).and_then(|(r, code)| {
        write_out(cli.out.as_deref(), &r.render(cli.format))?;
        if let Some(j) = r.columns.iter().position(|c| c == "holds") {
            for row in r.rows.iter().filter(|row| row[j] == false.into()) {
                eprintln!("failed: {}", r.row_text(row));
            }
        }
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
