use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use janet_core::families::Family;
use janet_core::run::{
    parse_bench_spec, parse_strategies, run_bench, solve, Outcome, OutputKind, SolveOptions, SolveReport,
};
use janet_core::system::parse_system;
use janet_core::OrderKind;

const USAGE_ERROR: u8 = 1;

#[derive(Parser)]
#[command(name = "janet", version, about = "Minimal Janet bases of polynomial ideals over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the Janet basis of a system file.
    Solve {
        file: PathBuf,
        /// baseline, I, II-high, II-low or all
        #[arg(long, default_value = "II-low")]
        strategy: String,
        /// Override the order declared in the file.
        #[arg(long)]
        order: Option<String>,
        /// janet, groebner or both
        #[arg(long, default_value = "janet")]
        output: String,
        /// Certify every result against the Buchberger oracle.
        #[arg(long)]
        verify: bool,
        /// Print per-strategy counters to stderr.
        #[arg(long, value_enum)]
        stats: Option<StatsFormat>,
        /// Per-strategy wall time limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Write a benchmark system in the input format.
    Gen {
        /// cyclic, katsura, eco, noon or reimer
        family: String,
        n: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run the jobs of a bench spec file and print a CSV table.
    Bench {
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Solve { file, strategy, order, output, verify, stats, timeout } => {
            run_solve(&file, &strategy, order.as_deref(), &output, verify, stats, timeout)
        }
        Command::Gen { family, n, output } => run_gen(&family, n, output.as_deref()),
        Command::Bench { spec, jobs } => run_bench_file(&spec, jobs),
    };
    match result {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_solve(
    file: &Path,
    strategy: &str,
    order: Option<&str>,
    output: &str,
    verify: bool,
    stats: Option<StatsFormat>,
    timeout: Option<f64>,
) -> Result<Outcome, String> {
    let strategies = parse_strategies(strategy).map_err(|e| e.to_string())?;
    let order: Option<OrderKind> = order.map(str::parse).transpose().map_err(|e| format!("{e}"))?;
    let output: OutputKind = output.parse().map_err(|e| format!("{e}"))?;
    let timeout = match timeout {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(format!("timeout must be a positive number of seconds, got {t}")),
        None => None,
    };
    let system = parse_system(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
    let options = SolveOptions { strategies, order, verify, timeout };
    let name = file.file_stem().map_or_else(|| file.display().to_string(), |s| s.to_string_lossy().into_owned());
    let report = solve(&name, &system, &options).map_err(|e| e.to_string())?;

    let mut stdout = std::io::stdout().lock();
    stdout.write_all(report.render_output(output).as_bytes()).map_err(|e| e.to_string())?;
    stdout.flush().map_err(|e| e.to_string())?;
    emit_stats(&report, stats);
    for line in report.problems() {
        eprintln!("{line}");
    }
    Ok(report.outcome())
}

fn emit_stats(report: &SolveReport, format: Option<StatsFormat>) {
    match format {
        Some(StatsFormat::Csv) => {
            eprintln!("{}", SolveReport::stats_csv_header());
            for row in report.stats_csv_rows() {
                eprintln!("{row}");
            }
        }
        Some(StatsFormat::Json) => {
            eprintln!("{}", serde_json::to_string_pretty(&report.stats_json()).expect("json values serialize"));
        }
        None => {
            for run in &report.runs {
                eprintln!(
                    "# {} {}: {} elements, {:.3} ms",
                    run.strategy, run.status, run.stats.basis_size, run.stats.wall_time_ms
                );
            }
        }
    }
}

fn run_gen(family: &str, n: usize, output: Option<&Path>) -> Result<Outcome, String> {
    let family: Family = family.parse().map_err(|e| format!("{e}"))?;
    let text = family.generate(n).map_err(|e| e.to_string())?.render();
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(Outcome::Success)
}

fn run_bench_file(spec_path: &Path, jobs: usize) -> Result<Outcome, String> {
    if jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    let base = spec_path.parent().unwrap_or(Path::new("."));
    let spec = parse_bench_spec(&read(spec_path)?, base).map_err(|e| format!("{}: {e}", spec_path.display()))?;
    let reports = run_bench(&spec, jobs).map_err(|e| e.to_string())?;
    println!("{}", SolveReport::stats_csv_header());
    let mut outcome = Outcome::Success;
    for report in &reports {
        for row in report.stats_csv_rows() {
            println!("{row}");
        }
        for line in report.problems() {
            eprintln!("{line}");
        }
        outcome = outcome.combine(report.outcome());
    }
    Ok(outcome)
}
