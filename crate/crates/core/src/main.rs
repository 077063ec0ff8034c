use std::process::ExitCode;

use clap::Parser;

use superlefschetz::report::{self, Executor, Format, Suite, SuiteConfig};
use superlefschetz::Algebra;

/// Exact verification suites for superalgebra actions on differential forms.
#[derive(Parser, Debug)]
#[command(name = "superlefschetz", version)]
struct Cli {
    /// Normed algebra: R, C, H or O.
    #[arg(long, default_value = "R")]
    algebra: String,
    /// Rank of V = K^n.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Suite to run; repeat for several. Defaults to every applicable suite.
    #[arg(long = "suite")]
    suites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest coefficient degree of sampled polynomial sections.
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Report format: text or json.
    #[arg(long, default_value = "text")]
    report: String,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// List check ids and references without running them.
    #[arg(long)]
    list: bool,
    /// Record per-group wall time in the report.
    #[arg(long)]
    timings: bool,
    /// Run groups on one thread.
    #[arg(long)]
    sequential: bool,
}

fn config(cli: &Cli) -> Result<SuiteConfig, String> {
    let algebra = Algebra::parse(&cli.algebra).ok_or_else(|| format!("unknown algebra {:?}", cli.algebra))?;
    let suites = cli
        .suites
        .iter()
        .map(|s| Suite::parse(s).ok_or_else(|| format!("unknown suite {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let format = Format::parse(&cli.report).ok_or_else(|| format!("unknown report format {:?}", cli.report))?;
    SuiteConfig::new(algebra, cli.n, &suites, cli.seed, cli.max_degree, format).map_err(|e| e.to_string())
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.list {
        return match emit(&cli, &report::render_list(&config)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let executor = if cli.sequential { Executor::Sequential } else { Executor::Parallel };
    let results = report::run(&config, executor, cli.timings);
    if let Err(e) = emit(&cli, &report::render(&config, &results)) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report::exit_code(&results) as u8)
}
