//! `rank-lab`: construct, verify and report on scattered subspaces and MRD
//! codes.
//!
//! Exit codes: 0 success, 1 usage or unreadable input, 2 a precondition or
//! gate failed, 3 a budget ran out.

mod args;
mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use ranklab::{Budget, Error};
use serde::Serialize;
use serde_json::Value;

use args::Cli;
use commands::{Failure, Outcome};

#[derive(Serialize)]
struct RunReport {
    command: &'static str,
    parameters: Value,
    results: Value,
    timings: Timings,
    budgets: Budget,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Timings {
    elapsed_ms: u128,
}

#[derive(Serialize)]
struct ErrorReport {
    command: &'static str,
    parameters: Value,
    error: ErrorBody,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::Io(_) | Error::Malformed(_) => 1,
        _ => 2,
    }
}

/// The fields of the chosen verb, without the enum tag.
fn parameters(cli: &Cli) -> Value {
    match serde_json::to_value(&cli.command) {
        Ok(Value::Object(m)) if m.len() == 1 => m.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
        Ok(v) => v,
        Err(_) => Value::Null,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot set up {t} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let budget = Budget {
        codewords: cli.codeword_budget,
        subspaces: cli.subspace_budget,
    };
    let name = cli.command.name();
    let params = parameters(&cli);
    let start = Instant::now();
    match commands::run(&cli.command, cli.seed, &budget) {
        Ok(Outcome { results, exhausted }) => {
            let report = RunReport {
                command: name,
                parameters: params,
                results,
                timings: Timings {
                    elapsed_ms: start.elapsed().as_millis(),
                },
                budgets: budget,
                seed: cli.seed,
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print_human(&report);
            }
            if exhausted {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            if cli.json {
                let report = ErrorReport {
                    command: name,
                    parameters: params,
                    error: ErrorBody {
                        kind: e.kind().to_string(),
                        message: e.to_string(),
                    },
                    seed: cli.seed,
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                eprintln!("error [{}]: {e}", e.kind());
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print_human(report: &RunReport) {
    println!("rank-lab {} ({} ms)", report.command, report.timings.elapsed_ms);
    let Value::Object(results) = &report.results else {
        println!("{}", report.results);
        return;
    };
    for (key, value) in results {
        match (key.as_str(), value) {
            ("spectrum", Value::Array(rows)) => {
                println!("spectrum:");
                println!("  {:>3}  {:>8}  {:>12}  {:>12}", "i", "weight", "t_i", "formula");
                for row in rows {
                    println!(
                        "  {:>3}  {:>8}  {:>12}  {:>12}",
                        row["i"].to_string(),
                        row["weight"].to_string(),
                        row["count"].as_str().unwrap_or("?"),
                        row["formula"].as_str().unwrap_or("?")
                    );
                }
            }
            ("u" | "generator" | "points" | "basis" | "conjugator", _) => {
                println!("{key}: ({} entries; use --json for the full value)", count(value));
            }
            _ => println!("{key}: {}", compact(value)),
        }
    }
}

fn count(v: &Value) -> usize {
    match v {
        Value::Array(a) => a.len(),
        Value::Object(o) => o.len(),
        _ => 1,
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
