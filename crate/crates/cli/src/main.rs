use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chanest_core::harness::{parse_estimators, run_experiment, write_csv, write_csv_to, ExperimentConfig};
use chanest_core::num_complex::Complex64;
use chanest_core::selftest::run_selftest;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chanest", version, about = "Monte-Carlo runner for one-bit LOS channel estimators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run an SNR sweep and write the CSV.
    Run(RunArgs),
    /// Run the invariant checks.
    Selftest,
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with experiment settings; flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Rician K-factor in dB.
    #[arg(long, allow_hyphen_values = true)]
    k_db: Option<f64>,
    /// Comma-separated SNR list in dB, e.g. -10,-5,0.
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    grid_bits: Option<u32>,
    /// Comma-separated subset of mips,pml,lmmse.
    #[arg(long)]
    estimators: Option<String>,
    /// Fixed LOS DOA in radians (needs --fixed-g0 unless the config sets it).
    #[arg(long, allow_hyphen_values = true)]
    fixed_theta0: Option<f64>,
    /// Fixed LOS gain as re,im.
    #[arg(long, allow_hyphen_values = true)]
    fixed_g0: Option<String>,
    #[arg(long)]
    lmmse_samples: Option<usize>,
    /// Worker threads (0 = one per core).
    #[arg(long)]
    workers: Option<usize>,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|e| format!("bad {what} value '{v}': {e}")))
        .collect()
}

fn build_config(args: &RunArgs) -> Result<ExperimentConfig, String> {
    let mut cfg = match &args.config {
        Some(path) => ExperimentConfig::from_file(path).map_err(|e| e.to_string())?,
        None => ExperimentConfig::default(),
    };
    macro_rules! set {
        ($($arg:ident => $field:ident),*) => { $( if let Some(v) = args.$arg { cfg.$field = v; } )* };
    }
    set!(m => m, n => n, l => l, k_db => k_db, trials => trials, seed => master_seed,
         grid_bits => grid_bits, lmmse_samples => lmmse_samples, workers => workers);
    if let Some(s) = &args.snr {
        cfg.snr_db = parse_list(s, "SNR")?;
    }
    if let Some(s) = &args.estimators {
        cfg.estimators = parse_estimators(s).map_err(|e| e.to_string())?;
    }
    let g0 = match &args.fixed_g0 {
        Some(s) => match parse_list(s, "fixed-g0")?.as_slice() {
            &[re, im] => Some(Complex64::new(re, im)),
            _ => return Err(format!("--fixed-g0 expects re,im, got '{s}'")),
        },
        None => None,
    };
    if args.fixed_theta0.is_some() || g0.is_some() {
        let current = cfg.fixed_realization;
        let theta = args.fixed_theta0.or(current.map(|c| c.0));
        let g = g0.or(current.map(|c| c.1));
        match (theta, g) {
            (Some(theta), Some(g)) => cfg.fixed_realization = Some((theta, g)),
            _ => return Err("--fixed-theta0 and --fixed-g0 must be given together".into()),
        }
    }
    if args.out.is_some() {
        cfg.output = args.out.clone();
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn run(args: &RunArgs) -> ExitCode {
    let cfg = match build_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("chanest: {e}");
            return ExitCode::from(1);
        }
    };
    let result = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("chanest: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cfg.output {
        Some(path) => write_csv(&result, path),
        None => write_csv_to(&result, std::io::stdout().lock(), Path::new("<stdout>")),
    };
    if let Err(e) = written {
        eprintln!("chanest: {e}");
        return ExitCode::from(1);
    }
    for (row, stats) in result.rows.iter().zip(&result.stats) {
        if stats.failed > 0 || stats.cap_exits > 0 {
            eprintln!(
                "{} at {} dB: {} failed trials, {} capped GDM runs{}",
                row.estimator,
                row.snr_db,
                stats.failed,
                stats.cap_exits,
                if stats.flagged { " [FLAGGED: over 1% failed]" } else { "" }
            );
        }
    }
    if result.any_flagged() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn selftest() -> ExitCode {
    let checks = run_selftest();
    let mut failed = 0;
    for check in &checks {
        println!("{} {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
        failed += usize::from(!check.passed);
    }
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    // Exit code 2 is reserved for flagged failure rates, so usage errors map to 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match &cli.command {
        Command::Run(args) => run(args),
        Command::Selftest => selftest(),
    }
}
