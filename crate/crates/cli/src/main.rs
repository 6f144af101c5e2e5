//! `ghz`: classify GHZ graphs, certify their paradoxes and evaluate the
//! Bell and KS bounds, with JSON reports.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ghz_core::{Error, DEFAULT_DENSE_CAP, DEFAULT_SEARCH_CAP, DEFAULT_STATE_CAP};

#[derive(Parser, Debug)]
#[command(name = "ghz", version, about = "GHZ paradoxes from qudit graph states")]
struct Cli {
    #[command(flatten)]
    config: RunArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunArgs {
    /// Largest search space scanned exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_CAP)]
    cap: u64,
    /// Largest Hilbert-space dimension for dense checks.
    #[arg(long, global = true, default_value_t = DEFAULT_DENSE_CAP)]
    dense_cap: u64,
    /// Largest number of basis amplitudes of an exact state.
    #[arg(long, global = true, default_value_t = DEFAULT_STATE_CAP)]
    state_cap: u64,
    /// Agreement tolerance for floating-point comparisons, in (0, 1e-3).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum MethodArg {
    Algebraic,
    Exhaustive,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a graph file (exit 1 when not GHZ).
    Check { graph: PathBuf },
    /// List connected GHZ graphs on n vertices over Z_d, one per line.
    Enumerate {
        n: usize,
        d: u32,
        /// One graph per isomorphism class.
        #[arg(long)]
        dedup: bool,
    },
    /// Certify that the paradox has no classical solution.
    Paradox {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Algebraic)]
        method: MethodArg,
        /// Restrict to the paradox of an induced GHZ subgraph, e.g. `0,1,2`.
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<usize>>,
    },
    /// Bell inequality: classical maximum and quantum value.
    Bell { graph: PathBuf },
    /// KS inequality: noncontextual bound and quantum value.
    Ks { graph: PathBuf },
    /// Lattice maximum C_{n,d} by brute force, sweep and closed form.
    Lemma { n: usize, d: u32 },
    /// Check the stabilizer relations on the exact graph state.
    StateVerify {
        graph: PathBuf,
        /// Include every basis amplitude exponent.
        #[arg(long)]
        dump: bool,
    },
}

pub struct Outcome {
    /// Report lines; JSON mode pretty-prints one value unless `lines` is set.
    pub report: serde_json::Value,
    pub lines: Option<Vec<serde_json::Value>>,
    pub code: u8,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::DedupTooLarge { .. } => 3,
        Error::NotGhz(_) | Error::NoContradiction(_) | Error::CrossCheck(_) => 1,
        _ => 2,
    }
}

fn render(cli: &Cli, mut outcome: Outcome, elapsed: Option<f64>) -> String {
    let RunArgs { format, .. } = cli.config;
    if let Some(lines) = outcome.lines.as_mut() {
        let mut out = String::new();
        for line in lines.iter_mut() {
            output::round_floats(line);
            match format {
                Format::Json => out.push_str(&line.to_string()),
                Format::Text => out.push_str(output::render_text(line).trim_end()),
            }
            out.push('\n');
        }
        return out;
    }
    let mut report = output::object(vec![
        ("command", command_name(&cli.command).into()),
        ("elapsed_seconds", elapsed.into()),
        ("result", outcome.report),
    ]);
    output::round_floats(&mut report);
    match format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Text => output::render_text(&report),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Enumerate { .. } => "enumerate",
        Command::Paradox { .. } => "paradox",
        Command::Bell { .. } => "bell",
        Command::Ks { .. } => "ks",
        Command::Lemma { .. } => "lemma",
        Command::StateVerify { .. } => "state-verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    if !(cfg.tolerance > 0.0 && cfg.tolerance < 1e-3) {
        eprintln!(
            "error: --tolerance must lie in (0, 1e-3), got {}",
            cfg.tolerance
        );
        return ExitCode::from(2);
    }
    if cfg.cap == 0 || cfg.dense_cap == 0 || cfg.state_cap == 0 {
        eprintln!("error: caps must be positive");
        return ExitCode::from(2);
    }

    let start = Instant::now();
    let result = commands::run(&cli.command, cfg);
    let elapsed = cfg.timing.then(|| start.elapsed().as_secs_f64());
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let code = outcome.code;
    let text = render(&cli, outcome, elapsed);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
