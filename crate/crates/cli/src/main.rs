use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ensconc::config::{check_eta, check_lambda, check_n_max, check_phi};
use ensconc::selftest::run_selftest;
use ensconc::sweep::render;
use ensconc::{evaluate_row, find_crossover, run_sweep, CliError, FileConfig, LambdaGrid, OutputFormat, Result, SweepRow, SweepSpec};
use ensconc_core::params::PHI_FIDELITY_BOUND;
use ensconc_core::DEFAULT_N_MAX;

#[derive(Parser)]
#[command(name = "ensconc", version, about = "Entanglement concentration for two atomic ensembles")]
struct Cli {
    /// Flat key = value recipe file; flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single (lambda, phi, eta) point
    Point(PointArgs),
    /// Sweep a lambda grid over lists of phi and eta and write the rows to a file
    Sweep(SweepArgs),
    /// Locate the lambda where heralding stops increasing the log-negativity
    Crossover(CrossoverArgs),
    /// Compare the analytic heralded states with the dense oracle
    Selftest,
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Report the wall time of the evaluation
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    lambda_min: Option<f64>,
    #[arg(long)]
    lambda_max: Option<f64>,
    #[arg(long)]
    lambda_steps: Option<usize>,
    /// Repeatable
    #[arg(long)]
    phi: Vec<f64>,
    /// Repeatable
    #[arg(long)]
    eta: Vec<f64>,
    #[arg(long)]
    nmax: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Leave the E_N_tmss column empty
    #[arg(long)]
    no_baseline: bool,
    /// Fill the wall_time_ms column (makes output non-reproducible)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct CrossoverArgs {
    #[arg(long)]
    phi: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    nmax: Option<usize>,
}

fn required<T>(flag: Option<T>, file: Option<T>, name: &str) -> Result<T> {
    flag.or(file).ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn first(list: Option<Vec<f64>>) -> Option<f64> {
    list.and_then(|v| v.first().copied())
}

fn warn_row(row: &SweepRow) {
    if row.phi > PHI_FIDELITY_BOUND {
        eprintln!("warning: phi = {} exceeds {PHI_FIDELITY_BOUND}, beyond the validated beamsplitter regime", row.phi);
    }
    if !row.is_converged() {
        eprintln!(
            "warning: lambda = {} phi = {} eta = {} not converged at nmax = {} (delta {:e})",
            row.lambda,
            row.phi,
            row.eta,
            row.n_max,
            row.convergence_delta.unwrap_or(f64::NAN)
        );
    }
}

fn point(args: PointArgs, cfg: FileConfig) -> Result<()> {
    let lambda = required(args.lambda, cfg.lambda, "lambda")?;
    let phi = required(args.phi, first(cfg.phi), "phi")?;
    let eta = args.eta.or(first(cfg.eta)).unwrap_or(1.0);
    let n_max = args.nmax.or(cfg.nmax).unwrap_or(DEFAULT_N_MAX);
    check_lambda(lambda)?;
    check_phi(phi)?;
    check_eta(eta)?;
    check_n_max(n_max)?;
    let timing = args.timing || cfg.timing.unwrap_or(false);
    let baseline = cfg.include_tmss_baseline.unwrap_or(true);
    let row = evaluate_row(lambda, phi, eta, n_max, baseline, timing)?;
    warn_row(&row);
    match args.format.or(cfg.format).unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&row).map_err(std::io::Error::from)?)
        }
        OutputFormat::Csv => print!("{}", render(std::slice::from_ref(&row), OutputFormat::Csv)?),
    }
    Ok(())
}

fn sweep(args: SweepArgs, cfg: FileConfig) -> Result<()> {
    let phi_list = if args.phi.is_empty() { cfg.phi.unwrap_or_default() } else { args.phi };
    let eta_list = if args.eta.is_empty() { cfg.eta.unwrap_or_else(|| vec![1.0]) } else { args.eta };
    let spec = SweepSpec {
        lambda_grid: LambdaGrid {
            min: required(args.lambda_min, cfg.lambda_min, "lambda-min")?,
            max: required(args.lambda_max, cfg.lambda_max, "lambda-max")?,
            steps: required(args.lambda_steps, cfg.lambda_steps, "lambda-steps")?,
        },
        phi_list,
        eta_list,
        n_max: args.nmax.or(cfg.nmax).unwrap_or(DEFAULT_N_MAX),
        output_path: required(args.out, cfg.out, "out")?,
        format: args.format.or(cfg.format).unwrap_or_default(),
        include_tmss_baseline: !args.no_baseline && cfg.include_tmss_baseline.unwrap_or(true),
        timing: args.timing || cfg.timing.unwrap_or(false),
    };
    let rows = run_sweep(&spec)?;
    rows.iter().for_each(warn_row);
    eprintln!("wrote {} rows to {}", rows.len(), spec.output_path.display());
    Ok(())
}

fn crossover(args: CrossoverArgs, cfg: FileConfig) -> Result<()> {
    let phi = required(args.phi, first(cfg.phi), "phi")?;
    let eta = args.eta.or(first(cfg.eta)).unwrap_or(1.0);
    let n_max = args.nmax.or(cfg.nmax).unwrap_or(DEFAULT_N_MAX);
    let found = find_crossover(phi, eta, n_max)?;
    let doc = match &found {
        Some(c) => serde_json::json!({ "phi": phi, "eta": eta, "n_max": n_max, "crossover": c }),
        None => serde_json::json!({ "phi": phi, "eta": eta, "n_max": n_max, "crossover": null }),
    };
    println!("{}", serde_json::to_string_pretty(&doc).map_err(std::io::Error::from)?);
    if found.is_none() {
        eprintln!("no crossover in (0.01, 0.99)");
    }
    Ok(())
}

fn selftest() -> Result<bool> {
    let checks = run_selftest()?;
    let mut ok = true;
    for c in &checks {
        let verdict = if c.passed() { "PASS" } else { "FAIL" };
        println!("{verdict} {} (worst {:.3e}, tol {:.0e})", c.name, c.worst, c.tolerance);
        ok &= c.passed();
    }
    println!("{} / {} checks passed", checks.iter().filter(|c| c.passed()).count(), checks.len());
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Point(a) => point(a, cfg).map(|_| true),
        Command::Sweep(a) => sweep(a, cfg).map(|_| true),
        Command::Crossover(a) => crossover(a, cfg).map(|_| true),
        Command::Selftest => selftest(),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
