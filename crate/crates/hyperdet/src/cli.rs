//! Command line front end.
//!
//! Five subcommands: `hdet` evaluates a tensor document, `precompute`
//! fills a contractor cache, `concurrence` scores a state document,
//! `verify` runs the seeded self-checks, and `bench` times the engines.
//! Every failure maps to a stable exit code through
//! [`Error::exit_code`](crate::error::Error::exit_code), so scripts can
//! tell malformed input from domain violations from refused budgets.

use crate::bench::{self, BenchConfig, BenchEngine};
use crate::cache;
use crate::doc::{Layout, StateDocument, TensorDocument};
use crate::error::{Error, Result};
use crate::hdet::{hdet, Budgets, EngineChoice, HdetOptions};
use crate::scalar::{Backend, Rational, Scalar};
use crate::verify::run_all;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hyperdet",
    version,
    about = "Hyperdeterminants of cubical hypermatrices and the entanglement they measure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the hyperdeterminant of a JSON tensor document.
    Hdet(HdetArgs),
    /// Build contractors or Levi-Civita powers ahead of time.
    Precompute(PrecomputeArgs),
    /// Compute the concurrence of a JSON state document.
    Concurrence(ConcurrenceArgs),
    /// Run the seeded property checks.
    Verify(VerifyArgs),
    /// Time the engines and print one JSON line per measurement.
    Bench(BenchArgs),
}

#[derive(Args)]
struct HdetArgs {
    /// Path to the tensor document.
    #[arg(long)]
    input: PathBuf,

    /// Engine: auto, naive, levicivita, or symmetric.
    #[arg(long, default_value = "auto")]
    engine: String,

    /// Scalar backend: rational, float64, or complex64. Defaults to the
    /// backend the document declares, then to rational.
    #[arg(long)]
    backend: Option<String>,

    /// Directory holding cached contractors, used by the symmetric path.
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Ceiling on sparse nonzeros and contractor entries.
    #[arg(long)]
    budget: Option<u64>,

    /// Elementwise tolerance for symmetry detection.
    #[arg(long)]
    tolerance: Option<f64>,

    /// Element order of the data array, overriding the document:
    /// first-axis-fastest or last-axis-fastest.
    #[arg(long)]
    layout: Option<String>,
}

#[derive(Args)]
struct PrecomputeArgs {
    /// Input side d.
    #[arg(long)]
    side: usize,

    /// Input order N.
    #[arg(long)]
    order: usize,

    /// What to build: contractor, epsilon-power, or both.
    #[arg(long, default_value = "contractor")]
    kind: String,

    /// Scalar backend: rational, float64, or complex64.
    #[arg(long, default_value = "rational")]
    backend: String,

    /// Directory to store the table in.
    #[arg(long, default_value = "./hdet-cache")]
    cache_dir: PathBuf,

    /// Ceiling on sparse nonzeros and contractor entries.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct ConcurrenceArgs {
    /// Path to the state document.
    #[arg(long)]
    input: PathBuf,

    /// Engine: auto, naive, levicivita, or symmetric.
    #[arg(long, default_value = "auto")]
    engine: String,

    /// Directory holding cached contractors.
    #[arg(long)]
    cache_dir: Option<PathBuf>,

    /// Ceiling on sparse nonzeros and contractor entries.
    #[arg(long)]
    budget: Option<u64>,

    /// Elementwise tolerance for symmetry detection.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for every randomized property.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Corrupt one check on purpose to exercise the failure path.
    #[arg(long, hide = true, default_value_t = false)]
    inject_fault: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// A size to time, as "d,N". Repeatable.
    #[arg(long = "size", value_name = "D,N")]
    sizes: Vec<String>,

    /// An engine to time: naive, levicivita, or symmetric. Repeatable,
    /// defaults to all three.
    #[arg(long = "engine")]
    engines: Vec<String>,

    /// Seed for the generated inputs.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Timed repetitions per point; the median is reported.
    #[arg(long, default_value_t = 5)]
    repetitions: usize,

    /// Ceiling on sparse nonzeros and contractor entries.
    #[arg(long)]
    budget: Option<u64>,

    /// Skip the exact cross-check of each engine's value.
    #[arg(long, default_value_t = false)]
    no_check: bool,
}

/// Parses the process arguments, runs the chosen subcommand, and returns
/// the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Hdet(args) => run_hdet(args),
        Command::Precompute(args) => run_precompute(args),
        Command::Concurrence(args) => run_concurrence(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn parse_backend(name: &str) -> Result<Backend> {
    match name {
        "rational" => Ok(Backend::Rational),
        "float64" => Ok(Backend::Float64),
        "complex64" => Ok(Backend::Complex64),
        other => Err(Error::Parse {
            detail: format!(
                "unknown backend {other:?}, expected \"rational\", \"float64\", or \
                 \"complex64\""
            ),
        }),
    }
}

fn build_options(
    engine: &str,
    budget: Option<u64>,
    tolerance: Option<f64>,
    cache_dir: Option<PathBuf>,
) -> Result<HdetOptions> {
    let engine: EngineChoice = engine.parse()?;
    let budgets = match budget {
        Some(b) => Budgets::uniform(b),
        None => Budgets::default(),
    };
    Ok(HdetOptions {
        engine,
        budgets,
        tolerance,
        cache_dir,
    })
}

fn run_hdet(args: HdetArgs) -> Result<i32> {
    let mut document = TensorDocument::from_path(&args.input)?;
    if let Some(layout) = &args.layout {
        document.set_layout(layout.parse::<Layout>()?);
    }
    let backend = match &args.backend {
        Some(name) => parse_backend(name)?,
        None => document.declared_backend().unwrap_or(Backend::Rational),
    };
    let options = build_options(&args.engine, args.budget, args.tolerance, args.cache_dir)?;
    let (value_line, engine) = match backend {
        Backend::Rational => {
            let a = document.rational_hypermatrix()?;
            let outcome = hdet(&a, &options)?;
            (outcome.value.display_full(), outcome.engine)
        }
        Backend::Float64 => {
            let a = document.float_hypermatrix()?;
            let outcome = hdet(&a, &options)?;
            (outcome.value.display_full(), outcome.engine)
        }
        Backend::Complex64 => {
            let a = document.complex_hypermatrix()?;
            let outcome = hdet(&a, &options)?;
            (outcome.value.display_full(), outcome.engine)
        }
    };
    println!("{value_line}");
    println!("engine: {engine}");
    Ok(0)
}

fn run_precompute(args: PrecomputeArgs) -> Result<i32> {
    if args.order % 2 == 1 {
        eprintln!(
            "warning: order {} is odd, so every hyperdeterminant it computes is zero",
            args.order
        );
    }
    let backend = parse_backend(&args.backend)?;
    let budgets = match args.budget {
        Some(b) => Budgets::uniform(b),
        None => Budgets::default(),
    };
    let build_contractor_entry = args.kind == "contractor" || args.kind == "both";
    let build_power_entry = args.kind == "epsilon-power" || args.kind == "both";
    if !build_contractor_entry && !build_power_entry {
        return Err(Error::Parse {
            detail: format!(
                "unknown kind {:?}, expected \"contractor\", \"epsilon-power\", or \"both\"",
                args.kind
            ),
        });
    }
    if build_contractor_entry {
        let provenance = match backend {
            Backend::Rational => {
                cache::ensure_contractor::<Rational>(
                    args.side,
                    args.order,
                    &args.cache_dir,
                    &budgets,
                )?
                .1
            }
            Backend::Float64 => {
                cache::ensure_contractor::<f64>(args.side, args.order, &args.cache_dir, &budgets)?
                    .1
            }
            Backend::Complex64 => {
                cache::ensure_contractor::<Complex64>(
                    args.side,
                    args.order,
                    &args.cache_dir,
                    &budgets,
                )?
                .1
            }
        };
        let key = cache::CacheKey {
            kind: cache::CacheKind::Contractor,
            side: args.side,
            order: args.order,
            backend,
        };
        println!(
            "contractor d={} N={} {}: {} -> {}",
            args.side,
            args.order,
            backend.as_str(),
            provenance.as_str(),
            key.path_in(&args.cache_dir).display()
        );
    }
    if build_power_entry {
        let provenance = match backend {
            Backend::Rational => {
                cache::ensure_epsilon_power::<Rational>(
                    args.side,
                    args.order,
                    &args.cache_dir,
                    budgets.levicivita_nnz,
                )?
                .1
            }
            Backend::Float64 => {
                cache::ensure_epsilon_power::<f64>(
                    args.side,
                    args.order,
                    &args.cache_dir,
                    budgets.levicivita_nnz,
                )?
                .1
            }
            Backend::Complex64 => {
                cache::ensure_epsilon_power::<Complex64>(
                    args.side,
                    args.order,
                    &args.cache_dir,
                    budgets.levicivita_nnz,
                )?
                .1
            }
        };
        let key = cache::CacheKey {
            kind: cache::CacheKind::EpsilonPower,
            side: args.side,
            order: args.order,
            backend,
        };
        println!(
            "epsilon-power d={} N={} {}: {} -> {}",
            args.side,
            args.order,
            backend.as_str(),
            provenance.as_str(),
            key.path_in(&args.cache_dir).display()
        );
    }
    Ok(0)
}

fn run_concurrence(args: ConcurrenceArgs) -> Result<i32> {
    let state = StateDocument::from_path(&args.input)?.to_state()?;
    let options = build_options(&args.engine, args.budget, args.tolerance, args.cache_dir)?;
    let outcome = state.concurrence_with(&options)?;
    println!("{}", outcome.value.display_full());
    println!("engine: {}", outcome.engine);
    println!("boson: {}", outcome.boson);
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<i32> {
    let report = run_all(args.seed, args.inject_fault);
    for outcome in &report.outcomes {
        let verdict = if outcome.passed { "pass" } else { "FAIL" };
        println!("{verdict} {}: {}", outcome.name, outcome.detail);
        if let Some(counterexample) = &outcome.counterexample {
            println!("  counterexample: {counterexample}");
        }
    }
    let failed = report.outcomes.iter().filter(|o| !o.passed).count();
    if failed == 0 {
        println!(
            "all {} properties passed (seed {})",
            report.outcomes.len(),
            report.seed
        );
        Ok(0)
    } else {
        println!(
            "{failed} of {} properties failed (seed {})",
            report.outcomes.len(),
            report.seed
        );
        Ok(1)
    }
}

fn parse_size(text: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse {
            detail: format!("size {text:?} is not of the form \"d,N\""),
        });
    }
    let side = parts[0].trim().parse().map_err(|_| Error::Parse {
        detail: format!("size {text:?} has a bad side"),
    })?;
    let order = parts[1].trim().parse().map_err(|_| Error::Parse {
        detail: format!("size {text:?} has a bad order"),
    })?;
    Ok((side, order))
}

fn run_bench(args: BenchArgs) -> Result<i32> {
    let mut config = BenchConfig::default();
    if !args.sizes.is_empty() {
        config.sizes = args
            .sizes
            .iter()
            .map(|s| parse_size(s))
            .collect::<Result<Vec<_>>>()?;
    }
    if !args.engines.is_empty() {
        config.engines = args
            .engines
            .iter()
            .map(|e| e.parse::<BenchEngine>())
            .collect::<Result<Vec<_>>>()?;
    }
    config.seed = args.seed;
    config.repetitions = args.repetitions;
    config.check_against_rational = !args.no_check;
    if let Some(b) = args.budget {
        config.budgets = Budgets::uniform(b);
    }
    let points = bench::run(&config)?;
    eprintln!(
        "{:<12} {:>4} {:>4} {:>10} {:>14} {:>16} {:>10}",
        "engine", "d", "N", "reduced", "ns/op", "value", "ratio"
    );
    for point in &points {
        println!("{}", point.to_json_line());
        eprintln!(
            "{:<12} {:>4} {:>4} {:>10} {:>14.1} {:>16.6e} {:>10.4}",
            point.engine.as_str(),
            point.side,
            point.order,
            point.reduced_length,
            point.nanos,
            point.value,
            point.complexity_ratio
        );
    }
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse_and_reject() {
        assert_eq!(parse_size("2,8").unwrap(), (2, 8));
        assert_eq!(parse_size(" 3 , 4 ").unwrap(), (3, 4));
        assert!(parse_size("2").is_err());
        assert!(parse_size("2,x").is_err());
        assert!(parse_size("2,3,4").is_err());
    }

    #[test]
    fn backends_parse_and_reject() {
        assert_eq!(parse_backend("rational").unwrap(), Backend::Rational);
        assert_eq!(parse_backend("float64").unwrap(), Backend::Float64);
        assert_eq!(parse_backend("complex64").unwrap(), Backend::Complex64);
        let err = parse_backend("decimal").unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn command_line_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
