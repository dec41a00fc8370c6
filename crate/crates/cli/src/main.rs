mod report;
mod svg;

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nrdyn_core::ratmap::{ExtReal, Params};
use nrdyn_core::symdyn::{scan_cell, GridRange, ScanRecord, ScanStatus};

/// Process exit codes: 0 success, 1 failed check, 2 usage error,
/// 3 partition structural failure, 4 unwritable output.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "nrdyn",
    version,
    about = "Numerical range and symbolic dynamics of f(x) = (x^2-a)/(x^2-b)",
    after_help = "Exit codes: 0 ok, 1 check failed, 2 usage, 3 partition failure, 4 unwritable output."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Args)]
struct ParamArgs {
    /// Parameter a (requires a > b > 0)
    #[arg(long)]
    a: f64,
    /// Parameter b (requires a > b > 0)
    #[arg(long)]
    b: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Output format (defaults to the command's native format)
    #[arg(long, value_enum)]
    format: Option<Format>,
}

impl OutputArgs {
    /// Commands each produce one native format; an explicit mismatched
    /// `--format` is a usage error rather than a silent ignore.
    fn ensure(&self, native: Format, name: &str) -> CliResult<()> {
        match self.format {
            None => Ok(()),
            Some(f) if f == native => Ok(()),
            Some(_) => Err(CliError::usage(format!(
                "unsupported --format for {name}"
            ))),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline report: ellipse, matrices, partition, transfer matrix
    Analyze {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The thirteen partition points with verification detail
    Partition {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Interval and arc itineraries of one orbit, with periodicity verdict
    Itinerary {
        #[command(flatten)]
        params: ParamArgs,
        /// Start point: a real number, or "inf"
        #[arg(long, default_value = "0")]
        x0: String,
        /// Number of iteration steps
        #[arg(long, default_value_t = 5000)]
        n: usize,
        /// Numeric cycle-detection tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol_cycle: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grid scan of critical-orbit periodicity (CSV; b varies fastest)
    Scan {
        /// Range lo:hi:step for a
        #[arg(long)]
        a_range: String,
        /// Range lo:hi:step for b
        #[arg(long)]
        b_range: String,
        /// Number of iteration steps per cell
        #[arg(long, default_value_t = 5000)]
        n: usize,
        /// Numeric cycle-detection tolerance
        #[arg(long, default_value_t = 1e-8)]
        tol_cycle: f64,
        /// Worker threads (default: NRDYN_THREADS or available parallelism)
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant battery for one parameter pair
    Check {
        #[command(flatten)]
        params: ParamArgs,
        /// Maximum ellipse-equation residual for embedded points
        #[arg(long, default_value_t = 1e-8)]
        tol_ellipse: f64,
        /// Random sample seed for the sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// SVG figure: both ellipses, labeled partition points, arc arrows
    Plot {
        #[command(flatten)]
        params: ParamArgs,
        /// Optional orbit start to draw as an embedded polyline
        #[arg(long)]
        x0: Option<String>,
        /// Orbit length for the polyline
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { params, output } => {
            output.ensure(Format::Json, "analyze")?;
            let p = parse_params(&params)?;
            let rep = report::analyze(&p).map_err(partition_error)?;
            emit(&output, &to_json(&rep)?)
        }
        Command::Partition { params, output } => {
            output.ensure(Format::Json, "partition")?;
            let p = parse_params(&params)?;
            let rep = report::partition(&p).map_err(partition_error)?;
            emit(&output, &to_json(&rep)?)
        }
        Command::Itinerary {
            params,
            x0,
            n,
            tol_cycle,
            output,
        } => {
            output.ensure(Format::Json, "itinerary")?;
            let p = parse_params(&params)?;
            let x0 = parse_x0(&x0)?;
            let rep = report::itinerary(&p, x0, n, tol_cycle).map_err(partition_error)?;
            emit(&output, &to_json(&rep)?)
        }
        Command::Scan {
            a_range,
            b_range,
            n,
            tol_cycle,
            threads,
            output,
        } => {
            output.ensure(Format::Csv, "scan")?;
            let a_range = parse_range(&a_range)?;
            let b_range = parse_range(&b_range)?;
            let threads = resolve_threads(threads)?;
            let records = run_scan(a_range, b_range, n, tol_cycle, threads);
            emit(&output, &scan_csv(&records))
        }
        Command::Check {
            params,
            tol_ellipse,
            seed,
            output,
        } => {
            output.ensure(Format::Json, "check")?;
            let p = parse_params(&params)?;
            let rep = report::check(&p, tol_ellipse, seed);
            let text = to_json(&rep)?;
            emit(&output, &text)?;
            if rep.passed {
                Ok(())
            } else {
                Err(CliError {
                    code: 1,
                    message: String::from("one or more checks failed"),
                })
            }
        }
        Command::Plot {
            params,
            x0,
            n,
            output,
        } => {
            output.ensure(Format::Svg, "plot")?;
            let p = parse_params(&params)?;
            let x0 = x0.as_deref().map(parse_x0).transpose()?;
            let doc = svg::render(&p, x0, n).map_err(partition_error)?;
            emit(&output, &doc)
        }
    }
}

fn parse_params(args: &ParamArgs) -> CliResult<Params> {
    Params::new(args.a, args.b)
        .map_err(|e| CliError::usage(format!("{e}")))
}

fn parse_x0(text: &str) -> CliResult<ExtReal> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(ExtReal::Infinity);
    }
    t.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(ExtReal::Finite)
        .ok_or_else(|| CliError::usage(format!("invalid --x0 value {text:?} (real number or \"inf\")")))
}

fn parse_range(text: &str) -> CliResult<GridRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let err = || CliError::usage(format!("malformed range {text:?}, expected lo:hi:step"));
    if parts.len() != 3 {
        return Err(err());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| err())?;
    let (lo, hi, step) = (nums[0], nums[1], nums[2]);
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(err());
    }
    Ok(GridRange { lo, hi, step })
}

fn resolve_threads(flag: Option<usize>) -> CliResult<usize> {
    if let Some(t) = flag {
        if t == 0 {
            return Err(CliError::usage("--threads must be at least 1"));
        }
        return Ok(t);
    }
    if let Ok(env) = std::env::var("NRDYN_THREADS") {
        let t: usize = env
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("invalid NRDYN_THREADS value {env:?}")))?;
        if t == 0 {
            return Err(CliError::usage("NRDYN_THREADS must be at least 1"));
        }
        return Ok(t);
    }
    Ok(std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Scan cells fanned out over `threads` workers; assembly stays in grid
/// order (b fastest), so the output is independent of the thread count.
fn run_scan(
    a_range: GridRange,
    b_range: GridRange,
    n: usize,
    tol: f64,
    threads: usize,
) -> Vec<ScanRecord> {
    let mut cells: Vec<(f64, f64)> = Vec::new();
    for a in a_range.values() {
        for b in b_range.values() {
            cells.push((a, b));
        }
    }
    let mut results: Vec<Option<ScanRecord>> = vec![None; cells.len()];
    if threads <= 1 || cells.len() <= 1 {
        for (slot, &(a, b)) in results.iter_mut().zip(&cells) {
            *slot = Some(scan_cell(a, b, n, tol));
        }
    } else {
        let chunk = cells.len().div_ceil(threads);
        std::thread::scope(|s| {
            for (cell_chunk, out_chunk) in cells.chunks(chunk).zip(results.chunks_mut(chunk)) {
                s.spawn(move || {
                    for (slot, &(a, b)) in out_chunk.iter_mut().zip(cell_chunk) {
                        *slot = Some(scan_cell(a, b, n, tol));
                    }
                });
            }
        });
    }
    results.into_iter().map(|r| r.unwrap()).collect()
}

fn scan_csv(records: &[ScanRecord]) -> String {
    let mut out = String::from("a,b,status,preperiod,period\n");
    for r in records {
        let status = match &r.status {
            ScanStatus::Periodic => "periodic",
            ScanStatus::AperiodicBudget => "aperiodic-budget",
            ScanStatus::Skipped => "skipped",
            ScanStatus::Error(_) => "error",
        };
        let pre = r.preperiod.map(|v| v.to_string()).unwrap_or_default();
        let per = r.period.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", r.a, r.b, status, pre, per));
    }
    out
}

fn to_json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value).map_err(|e| CliError {
        code: 4,
        message: format!("serialization failed: {e}"),
    })
}

fn partition_error(e: nrdyn_core::Error) -> CliError {
    CliError {
        code: 3,
        message: format!("partition construction failed: {e}"),
    }
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| {
                    if text.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
                .map_err(|e| CliError {
                    code: 4,
                    message: format!("cannot write to stdout: {e}"),
                })
        }
        Some(path) => std::fs::write(path, text).map_err(|e| CliError {
            code: 4,
            message: format!("cannot write {}: {e}", path.display()),
        }),
    }
}
