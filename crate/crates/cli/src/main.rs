use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sumsetdim::{parse_problem, run_command, Command, Overrides, Settings};

/// Structure and Hausdorff dimension of sums of self-similar sets.
#[derive(Debug, Parser)]
#[command(name = "sumsetdim", version)]
struct Args {
    command: Command,
    /// Problem file.
    file: PathBuf,
    /// Matching length to enumerate to (the dimension bracket may raise it).
    #[arg(long)]
    lmax: Option<usize>,
    /// Target width of the dimension bracket.
    #[arg(long)]
    tol: Option<f64>,
    /// Coding depth for box counting.
    #[arg(long)]
    depth: Option<usize>,
    /// Print sorted `key = value` lines instead of the report.
    #[arg(long)]
    machine: bool,
}

const CAP_VAR: &str = "SUMSETDIM_CAP";

fn run(args: &Args) -> Result<u8, (u8, String)> {
    let input = |m: String| (1, m);
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| input(format!("{}: {e}", args.file.display())))?;
    let spec = parse_problem(&text).map_err(|e| input(format!("{}: {e}", args.file.display())))?;
    let cap = match std::env::var(CAP_VAR) {
        Ok(v) => Some(
            v.trim()
                .parse::<u64>()
                .ok()
                .filter(|&c| c >= 1)
                .ok_or_else(|| input(format!("{CAP_VAR} must be a positive integer, got '{v}'")))?,
        ),
        Err(_) => None,
    };
    let overrides = Overrides {
        lmax: args.lmax,
        tol: args.tol,
        depth: args.depth,
        cap,
    };
    let settings = Settings::resolve(&spec.options, &overrides);
    let outcome =
        run_command(args.command, &spec, &settings).map_err(|e| (e.exit_code(), e.to_string()))?;
    if args.machine {
        print!("{}", outcome.report.machine());
    } else {
        print!("{}", outcome.report.human());
    }
    if outcome.truncated {
        eprintln!("warning: resource cap reached; results are partial");
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
