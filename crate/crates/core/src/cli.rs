//! Command-line front end of the `spdmeans` binary.
//!
//! Exit codes: 0 success, 1 an inequality check failed, 2 bad input or
//! configuration, 3 a solver did not converge.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::means::{self, MeanResult, SpdTuple, WeightVector};
use crate::posmaps::{MapKind, PositiveMap};
use crate::symmat::{format_matrix, read_matrix_file, read_spd_file};
use crate::verify::{run_examples, run_suite, TheoremId, TrialSpec};
use crate::{Error, NumericConfig, SpdMatrix};

/// Environment variable capping the worker threads of `verify`.
pub const THREADS_ENV: &str = "SPDMEANS_THREADS";

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_CHECK: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "spdmeans",
    version,
    about = "Means of SPD matrices and checks of their operator inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute a mean of matrices read from files.
    Mean(MeanArgs),
    /// Run seeded inequality suites or the worked examples.
    Verify(VerifyArgs),
    /// Apply a positive map from a description file to a matrix.
    Apply(ApplyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeanKind {
    Geo,
    Arith,
    Harm,
    Power,
    Karcher,
    Alm,
}

#[derive(Debug, clap::Args)]
struct MeanArgs {
    kind: MeanKind,
    /// Matrix files (first line the dimension, then the rows).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Weight of the second matrix for `geo`.
    #[arg(long, default_value_t = 0.5)]
    nu: f64,
    /// Exponent of the power mean, `0 < |t| <= 1`.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Comma-separated weights, normalized to sum 1 (uniform by default).
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<f64>>,
    /// Output file; the matrix goes to standard output when absent.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    /// TOML file with suite fields; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated theorem names or short codes (`T1`, `Schwarz`, ...).
    #[arg(long, value_delimiter = ',')]
    theorems: Option<Vec<String>>,
    /// Comma-separated map kinds.
    #[arg(long, value_delimiter = ',')]
    maps: Option<Vec<String>>,
    /// Directory receiving `report.jsonl` and `summary.csv`.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Recompute the two worked examples instead of running a suite.
    #[arg(long)]
    examples: bool,
}

#[derive(Debug, clap::Args)]
struct ApplyArgs {
    /// Map description file (TOML).
    #[arg(long)]
    map: PathBuf,
    input: PathBuf,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let outcome = match cli.command {
        Command::Mean(a) => cmd_mean(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Apply(a) => cmd_apply(&a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoConvergence { .. } => EXIT_NO_CONVERGENCE,
        _ => EXIT_INPUT,
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidInput(format!("{}: {e}", path.display()))
}

fn emit_matrix(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_mean(args: &MeanArgs) -> Result<u8, Error> {
    let cfg = NumericConfig::default();
    let ms: Vec<SpdMatrix> = args
        .inputs
        .iter()
        .map(|p| read_spd_file(p, &cfg))
        .collect::<Result<_, _>>()?;
    let dim = ms[0].dim();
    if let Some((p, m)) = args.inputs.iter().zip(&ms).find(|(_, m)| m.dim() != dim) {
        return Err(Error::InvalidInput(format!(
            "{}: dimension {} differs from {dim}",
            p.display(),
            m.dim()
        )));
    }
    let n = ms.len();
    let weights = || match &args.weights {
        Some(w) if w.len() != n => Err(Error::InvalidWeights(format!(
            "{} weights given for {n} matrices",
            w.len()
        ))),
        Some(w) => WeightVector::normalized(w),
        None => WeightVector::uniform(n),
    };
    if args.weights.is_some() && matches!(args.kind, MeanKind::Geo | MeanKind::Alm) {
        return Err(Error::InvalidInput(
            "--weights does not apply to geo (use --nu) or alm (unweighted)".into(),
        ));
    }
    let tuple = SpdTuple::new(ms)?;
    let result = match args.kind {
        MeanKind::Geo => {
            if n != 2 {
                return Err(Error::InvalidInput(format!(
                    "geo needs exactly 2 matrices, got {n}"
                )));
            }
            if !(0.0..=1.0).contains(&args.nu) {
                return Err(Error::Domain(format!(
                    "--nu must lie in [0, 1], got {}",
                    args.nu
                )));
            }
            let s = tuple.as_slice();
            exact(means::geo_mean(&s[0], &s[1], args.nu)?)
        }
        MeanKind::Arith => exact(means::arithmetic_mean(&weights()?, &tuple)?),
        MeanKind::Harm => exact(means::harmonic_mean(&weights()?, &tuple)?),
        MeanKind::Power => {
            let t = args
                .t
                .ok_or_else(|| Error::InvalidInput("power mean needs --t".into()))?;
            means::power_mean(t, &weights()?, &tuple, &cfg)?
        }
        MeanKind::Karcher => means::karcher_mean(&weights()?, &tuple, &cfg)?,
        MeanKind::Alm => means::alm_mean(&tuple, &cfg)?,
    };
    emit_matrix(
        args.out.as_deref(),
        &format_matrix(result.value.as_matrix()),
    )?;
    let diag = format!(
        "iterations: {}\nresidual: {:e}",
        result.iterations, result.residual
    );
    if args.out.is_some() {
        println!("{diag}");
    } else {
        eprintln!("{diag}");
    }
    Ok(EXIT_OK)
}

fn exact(value: SpdMatrix) -> MeanResult {
    MeanResult {
        value,
        iterations: 0,
        residual: 0.0,
    }
}

fn cmd_apply(args: &ApplyArgs) -> Result<u8, Error> {
    let cfg = NumericConfig::default();
    let map = PositiveMap::from_file(&args.map)
        .map_err(|e| Error::InvalidMap(format!("{}: {e}", args.map.display())))?;
    let x = read_matrix_file(&args.input, &cfg)?;
    let y = map
        .apply(&x)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", args.input.display())))?;
    emit_matrix(args.out.as_deref(), &format_matrix(y.as_matrix()))?;
    Ok(EXIT_OK)
}

/// Suite spec from the config file (if any) with flag overrides applied.
fn resolve_spec(args: &VerifyArgs) -> Result<TrialSpec, Error> {
    let mut spec = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            TrialSpec::from_toml(&text)
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?
        }
        None => TrialSpec::default(),
    };
    if let Some(d) = args.dim {
        spec.dim = d;
    }
    if let Some(c) = args.count {
        spec.count = c;
    }
    if let Some(s) = args.seed {
        spec.master_seed = s;
    }
    if let Some(ts) = &args.theorems {
        spec.theorems = ts
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<TheoremId>, _>>()?;
    }
    if let Some(ms) = &args.maps {
        spec.map_kinds = ms
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<MapKind>, _>>()?;
    }
    spec.validate()?;
    Ok(spec)
}

fn thread_count() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidInput(format!(
                "{THREADS_ENV} must be a positive integer, got `{v}`"
            ))),
        },
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    if args.examples {
        return verify_examples();
    }
    let spec = resolve_spec(args)?;
    let cfg = NumericConfig::default();
    let report = match thread_count()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?
            .install(|| run_suite(&spec, &cfg))?,
        None => run_suite(&spec, &cfg)?,
    };

    std::fs::create_dir_all(&args.out_dir).map_err(|e| io_error(&args.out_dir, e))?;
    let jsonl = args.out_dir.join("report.jsonl");
    std::fs::write(&jsonl, report.to_jsonl()).map_err(|e| io_error(&jsonl, e))?;
    let csv = args.out_dir.join("summary.csv");
    let summary = report.summary_csv();
    std::fs::write(&csv, &summary).map_err(|e| io_error(&csv, e))?;
    print!("{summary}");

    let failed = report.failures().filter(|r| r.error.is_none()).count();
    let errored = report.failures().filter(|r| r.error.is_some()).count();
    eprintln!(
        "{} records, {failed} failed checks, {errored} solver errors",
        report.reports.len()
    );
    Ok(if failed > 0 {
        EXIT_FAILED_CHECK
    } else if errored > 0 {
        EXIT_NO_CONVERGENCE
    } else {
        EXIT_OK
    })
}

fn verify_examples() -> Result<u8, Error> {
    let checks = run_examples()?;
    let mut out = String::new();
    for c in &checks {
        let _ = writeln!(
            out,
            "{} {:<10} {:<26} {:.12e} {} {:.12e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.example,
            c.claim,
            c.lhs,
            c.relation,
            c.rhs
        );
    }
    print!("{out}");
    Ok(if checks.iter().all(|c| c.pass) {
        EXIT_OK
    } else {
        EXIT_FAILED_CHECK
    })
}
