use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use causal_capacity::bounds::{
    analytic_report, causality_bound, hw_bound, linspace, maxrains_surrogate,
    sweep_shifted_depol_with_threads, OptimizerConfig,
};
use causal_capacity::channel::{named_channel, ChannelParams, CHANNEL_NAMES};
use causal_capacity::verify::{run_suite, Suite};
use causal_capacity::{Channel, Error, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::{csv_row, report_json, summary_json, CSV_HEADER};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CHANNEL_FILE: u8 = 3;
pub const EXIT_OUTPUT: u8 = 4;

pub const THREADS_VAR: &str = "CAUSAL_CAPACITY_THREADS";

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ChannelFile(_) => EXIT_CHANNEL_FILE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<ExitCode, CliError>;

/// Capacity upper bounds for quantum channels.
#[derive(Debug, Parser)]
#[command(name = "causal-capacity", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute capacity bounds for one channel, one JSON object per line.
    Bound(BoundArgs),
    /// Sweep the shifted depolarizing family over a (p, gamma) grid into a CSV file.
    Sweep(SweepArgs),
    /// Run randomized property suites.
    Verify(VerifyArgs),
    /// Print structural information about a channel as JSON.
    ChannelInfo(ChannelArgs),
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Named channel or path to a JSON channel file.
    #[arg(long)]
    pub channel: String,
    #[arg(long)]
    pub qubits: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Causality,
    Hw,
    Analytic,
    Maxrains,
    All,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    #[arg(long, value_enum, default_value = "causality")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub p_min: f64,
    #[arg(long, default_value_t = 0.25)]
    pub p_max: f64,
    #[arg(long, default_value_t = 26)]
    pub p_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 21)]
    pub gamma_steps: usize,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn load_channel(args: &ChannelArgs) -> Result<Channel, CliError> {
    if CHANNEL_NAMES.contains(&args.channel.as_str()) {
        let mut params = ChannelParams::new();
        let given = [
            ("qubits", args.qubits.map(|q| q as f64)),
            ("p", args.p),
            ("gamma", args.gamma),
            ("eta", args.eta),
        ];
        for (key, value) in given {
            if let Some(v) = value {
                params.insert(key.to_string(), v);
            }
        }
        return Ok(named_channel(&args.channel, &params)?);
    }
    let looks_like_path = args.channel.contains(['.', '/', '\\']);
    if !looks_like_path {
        return Err(CliError::usage(format!(
            "unknown channel '{}' (expected one of {} or a JSON file)",
            args.channel,
            CHANNEL_NAMES.join(", ")
        )));
    }
    let text = fs::read_to_string(&args.channel).map_err(|e| CliError {
        code: EXIT_CHANNEL_FILE,
        message: format!("cannot read channel file {}: {e}", args.channel),
    })?;
    Channel::from_json(&text).map_err(|e| CliError {
        code: EXIT_CHANNEL_FILE,
        message: format!("invalid channel file {}: {e}", args.channel),
    })
}

pub fn bound(args: BoundArgs) -> CliResult {
    let channel = load_channel(&args.channel)?;
    let cfg = OptimizerConfig {
        restarts: args.restarts,
        ..OptimizerConfig::with_seed(args.seed)
    };
    cfg.validate()?;
    let shifted = matches!(
        args.channel.channel.as_str(),
        "shifted-depolarizing" | "depolarizing"
    );
    let analytic = || -> Result<Report, CliError> {
        if !shifted {
            return Err(CliError::usage(
                "the analytic bound exists only for the (shifted) depolarizing family",
            ));
        }
        let mut r = analytic_report::<f64>(
            args.channel.p.unwrap_or(0.0),
            args.channel.gamma.unwrap_or(0.0),
        )?;
        r.channel_label = channel.label().to_string();
        Ok(r)
    };
    let reports = match args.method {
        MethodArg::Causality => vec![causality_bound(&channel)?],
        MethodArg::Hw => vec![hw_bound(&channel, &cfg)?],
        MethodArg::Analytic => vec![analytic()?],
        MethodArg::Maxrains => vec![maxrains_surrogate(&channel)?],
        MethodArg::All => {
            let mut all = vec![causality_bound(&channel)?];
            if shifted {
                all.push(analytic()?);
            }
            all.push(hw_bound(&channel, &cfg)?);
            all.push(maxrains_surrogate(&channel)?);
            all
        }
    };
    let mut out = std::io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", report_json(r)).map_err(io_failure)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn io_failure(e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_OUTPUT,
        message: e.to_string(),
    }
}

fn thread_count() -> Result<usize, CliError> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(0),
        Ok(v) if v.trim().is_empty() => Ok(0),
        Ok(v) => v.trim().parse().map_err(|_| {
            CliError::usage(format!(
                "{THREADS_VAR} must be a non-negative integer, got '{v}'"
            ))
        }),
    }
}

fn grid(name: &str, lo: f64, hi: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if steps == 0 || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(CliError::usage(format!(
            "{name} grid needs finite min <= max and at least one step"
        )));
    }
    Ok(linspace(lo, hi, steps))
}

pub fn sweep(args: SweepArgs) -> CliResult {
    let ps = grid("p", args.p_min, args.p_max, args.p_steps)?;
    let gs = grid("gamma", args.gamma_min, args.gamma_max, args.gamma_steps)?;
    let cfg = OptimizerConfig {
        restarts: args.restarts,
        ..OptimizerConfig::with_seed(args.seed)
    };
    cfg.validate()?;
    let threads = thread_count()?;
    // Fail on an unwritable destination before spending time on the sweep.
    let mut file = fs::File::create(&args.out).map_err(|e| CliError {
        code: EXIT_OUTPUT,
        message: format!("cannot write {}: {e}", args.out.display()),
    })?;
    let rows = sweep_shifted_depol_with_threads::<f64>(&ps, &gs, &cfg, threads)?;
    let mut text = String::from(CSV_HEADER);
    text.push('\n');
    for row in &rows {
        text.push_str(&csv_row(row));
        text.push('\n');
    }
    file.write_all(text.as_bytes()).map_err(io_failure)?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> CliResult {
    let suite: Suite = args.suite.parse()?;
    if args.cases == 0 {
        return Err(CliError::usage("--cases must be at least 1"));
    }
    let report = run_suite(suite, args.cases, args.seed)?;
    println!("{report}");
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    })
}

pub fn channel_info(args: ChannelArgs) -> CliResult {
    let channel = load_channel(&args)?;
    println!("{}", summary_json(&channel));
    Ok(ExitCode::SUCCESS)
}
