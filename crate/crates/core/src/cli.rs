//! Command-line front end. The `meritlab` binary is a thin wrapper around [`run`].

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::asymptotics::{convergence_table, littlewood_refutation, ConvergenceRow};
use crate::asymptotics::write_convergence_csv;
use crate::autocorrelation::{acf, acf_direct, acf_fft};
use crate::closed_forms::{chu_l4_closed, frank_l4_closed};
use crate::error::MeritError;
use crate::format::json_number;
use crate::norms::{l4_from_acf, l4_quadrature, NormReport};
use crate::sequences::{chu, frank, Family, UnimodularSequence};
use crate::verify::{all_pass, run_verification, VerifyCaps, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "meritlab", version, about = "L4 norms and merit factors of Chu and Frank polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format (defaults to csv for generate/acf/table, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write output to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Worker threads (default: available cores)
    #[arg(long, global = true, value_name = "K")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit the coefficients of one sequence as CSV
    Generate(SequenceArgs),
    /// Emit the aperiodic autocorrelation profile as CSV
    Acf {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// Emit a norm report as JSON
    Norms {
        #[command(flatten)]
        seq: SequenceArgs,
        #[arg(long, value_enum, default_value_t = Method::Acf)]
        method: Method,
    },
    /// Emit the convergence table of α_n (Chu) or β_n (Frank) over a range of n
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[command(flatten)]
        range: RangeArgs,
        /// Fill the runtime_ms column (makes output machine-dependent)
        #[arg(long)]
        timings: bool,
    },
    /// Run the identity and bound suite and emit the JSON verification report
    Verify {
        /// Halve every n cap
        #[arg(long)]
        quick: bool,
        /// key=value file overriding the n caps
        #[arg(long, value_name = "PATH", env = CONFIG_ENV)]
        config: Option<PathBuf>,
    },
    /// Compare α_n with Littlewood's constant, Mercer's bound and 2/π
    Limits {
        #[arg(long, default_value_t = 100)]
        n_min: usize,
        #[arg(long, default_value_t = 1000)]
        n_max: usize,
    },
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Family parameter (chu, frank)
    #[arg(long)]
    pub n: Option<usize>,
    /// CSV file with header index,re,im (custom)
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    pub n: Option<usize>,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Chu,
    Frank,
    Custom,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Chu => Family::Chu,
            FamilyArg::Frank => Family::Frank,
            FamilyArg::Custom => Family::Custom,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Acf,
    Quadrature,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Auto,
    Direct,
    Fft,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(MeritError),
}

impl From<MeritError> for CliError {
    fn from(e: MeritError) -> Self {
        match e {
            MeritError::InvalidParameter(_) | MeritError::Parse(_) => CliError::Usage(e.to_string()),
            other => CliError::Failed(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(MeritError::Io(e.into()))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Entry point for the binary: parses `std::env::args_os` and returns the exit code.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(CliError::Failed(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<i32> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Failed(MeritError::Io(io::Error::other(e))))?;

    let mut buffer = Vec::new();
    let code = pool.install(|| dispatch(cli, &mut buffer))?;

    match &cli.out {
        Some(path) => {
            let mut f = BufWriter::new(File::create(path)?);
            f.write_all(&buffer)?;
            f.flush()?;
        }
        None => {
            stdout.write_all(&buffer)?;
            stdout.flush()?;
        }
    }
    Ok(code)
}

fn require_format(cli: &Cli, default: OutputFormat, allowed: &[OutputFormat]) -> CliResult<OutputFormat> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("--format {f:?} is not supported by this command").to_lowercase()))
    }
}

fn load_sequence(args: &SequenceArgs) -> CliResult<UnimodularSequence> {
    match (args.family, args.n, &args.input) {
        (FamilyArg::Custom, None, Some(path)) => {
            Ok(UnimodularSequence::read_csv(File::open(path)?)?)
        }
        (FamilyArg::Custom, _, _) => Err(CliError::Usage(
            "--family custom needs --input PATH and no --n".into(),
        )),
        (_, _, Some(_)) => Err(CliError::Usage("--input is only valid with --family custom".into())),
        (_, None, None) => Err(CliError::Usage("--n is required".into())),
        (FamilyArg::Chu, Some(n), None) => Ok(chu(n)?),
        (FamilyArg::Frank, Some(n), None) => Ok(frank(n)?),
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> CliResult<i32> {
    match &cli.command {
        Command::Generate(seq) => {
            require_format(cli, OutputFormat::Csv, &[OutputFormat::Csv])?;
            load_sequence(seq)?.write_csv(out)?;
            Ok(EXIT_OK)
        }
        Command::Acf { seq, engine } => {
            require_format(cli, OutputFormat::Csv, &[OutputFormat::Csv])?;
            let s = load_sequence(seq)?;
            let profile = match engine {
                Engine::Auto => acf(&s),
                Engine::Direct => acf_direct(&s),
                Engine::Fft => acf_fft(&s),
            };
            profile.write_csv(out)?;
            Ok(EXIT_OK)
        }
        Command::Norms { seq, method } => {
            require_format(cli, OutputFormat::Json, &[OutputFormat::Json])?;
            let report = match method {
                Method::Closed => {
                    let n = match (seq.family, seq.n, &seq.input) {
                        (FamilyArg::Custom, _, _) => {
                            return Err(CliError::Usage(
                                "--method closed is only available for chu and frank".into(),
                            ))
                        }
                        (_, Some(n), None) => n,
                        _ => return Err(CliError::Usage("--n is required".into())),
                    };
                    let (family, b) = match seq.family {
                        FamilyArg::Frank => (Family::Frank, frank_l4_closed(n)?),
                        _ => (Family::Chu, chu_l4_closed(n)?),
                    };
                    NormReport::from_closed_form(family, &b)?
                }
                Method::Acf => l4_from_acf(&load_sequence(seq)?)?,
                Method::Quadrature => l4_quadrature(&load_sequence(seq)?)?,
            };
            writeln!(out, "{}", report.to_json())?;
            Ok(EXIT_OK)
        }
        Command::Table { family, range, timings } => {
            let format = require_format(cli, OutputFormat::Csv, &[OutputFormat::Csv, OutputFormat::Json])?;
            let ns = match (range.n, range.n_min, range.n_max) {
                (Some(n), None, None) => vec![n],
                (None, Some(lo), Some(hi)) if lo <= hi => (lo..=hi).collect(),
                (None, Some(lo), Some(hi)) => {
                    return Err(CliError::Usage(format!("--n-min {lo} exceeds --n-max {hi}")))
                }
                _ => return Err(CliError::Usage("give either --n or both --n-min and --n-max".into())),
            };
            if ns.contains(&0) {
                return Err(CliError::Usage("n must be at least 1".into()));
            }
            let rows = convergence_table((*family).into(), &ns)?;
            match format {
                OutputFormat::Csv => write_convergence_csv(&rows, *timings, &mut *out)?,
                OutputFormat::Json => {
                    let json: Vec<_> = rows.iter().map(|r| JsonRow::new(r, *timings)).collect();
                    serde_json::to_writer(&mut *out, &json)?;
                    writeln!(out)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify { quick, config } => {
            require_format(cli, OutputFormat::Json, &[OutputFormat::Json])?;
            let mut caps = VerifyCaps::default();
            if let Some(path) = config {
                caps = VerifyCaps::from_file(path, caps)?;
            }
            if *quick {
                caps = caps.halved();
            }
            let checks = run_verification(&caps);
            serde_json::to_writer_pretty(&mut *out, &checks)?;
            writeln!(out)?;
            Ok(if all_pass(&checks) { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Limits { n_min, n_max } => {
            require_format(cli, OutputFormat::Json, &[OutputFormat::Json])?;
            let report = littlewood_refutation(*n_min, *n_max)?;
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
            Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
        }
    }
}

#[derive(Serialize)]
struct JsonRow {
    family: Family,
    n: usize,
    ratio: Box<RawValue>,
    limit_gap: Box<RawValue>,
    bc_residual: Option<Box<RawValue>>,
    runtime_ms: Option<Box<RawValue>>,
}

impl JsonRow {
    fn new(r: &ConvergenceRow, timings: bool) -> Self {
        Self {
            family: r.family,
            n: r.n,
            ratio: json_number(r.ratio),
            limit_gap: json_number(r.limit_gap),
            bc_residual: r.bc_residual.map(json_number),
            runtime_ms: timings.then(|| json_number(r.runtime_ms)),
        }
    }
}
