use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fano_cli::{run_with_threads, selftest_scenarios, Catalog, CliError, Overrides, Scenario, EXIT_INPUT_ERROR};

#[derive(Parser)]
#[command(name = "fano", version, about = "Exact checks for bundles on Fano threefolds and K3 surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its JSON report.
    Verify {
        scenario: PathBuf,
        /// Report path; the report goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        trials: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Run over GF(P) instead of the scenario's field.
        #[arg(long)]
        prime: Option<u64>,
        /// Worker threads for trials (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the family catalog.
    Catalog,
    /// Run the oracle-equivalence suite.
    Selftest {
        #[arg(long)]
        threads: Option<usize>,
    },
}

fn code(c: i32) -> ExitCode {
    ExitCode::from(c as u8)
}

fn verify(
    path: PathBuf,
    out: Option<PathBuf>,
    overrides: Overrides,
    threads: Option<usize>,
) -> Result<i32, CliError> {
    let mut scenario = Scenario::load(&path)?;
    scenario.apply(overrides)?;
    let report = run_with_threads(&scenario, &Catalog::builtin(), threads)?;
    let json = report.to_json();
    match out {
        Some(p) => std::fs::write(&p, json).map_err(|source| CliError::Write {
            path: p.display().to_string(),
            source,
        })?,
        None => print!("{json}"),
    }
    let a = &report.aggregate;
    eprintln!(
        "{}: {:?} ({} pass, {} fail, {} error, {} capped, {} insufficient)",
        report.name, a.status, a.passes, a.failures, a.errors, a.resource_capped, a.insufficient
    );
    Ok(report.exit_code())
}

fn selftest(threads: Option<usize>) -> Result<i32, CliError> {
    let catalog = Catalog::builtin();
    let mut worst = 0;
    for s in selftest_scenarios() {
        let r = run_with_threads(&s, &catalog, threads)?;
        println!("{} {}", if r.passed() { "PASS" } else { "FAIL" }, r.name);
        for t in r.results.iter().filter(|t| !t.pass) {
            for m in &t.mismatches {
                println!("  trial {}: {m}", t.trial);
            }
            if let Some(msg) = &t.message {
                println!("  trial {}: {msg}", t.trial);
            }
        }
        worst = worst.max(r.exit_code());
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify {
            scenario,
            out,
            trials,
            seed,
            prime,
            threads,
        } => verify(scenario, out, Overrides { trials, seed, prime }, threads),
        Command::Catalog => {
            print!("{}", Catalog::builtin().table());
            Ok(0)
        }
        Command::Selftest { threads } => selftest(threads),
    };
    match result {
        Ok(c) => code(c),
        Err(e) => {
            eprintln!("error: {e}");
            code(EXIT_INPUT_ERROR)
        }
    }
}
