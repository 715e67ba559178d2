//! `absval`: run JSON job documents and print JSON reports.
//!
//! Exit status: 0 when every asserted identity passes, 2 for a job that does
//! not validate, 3 when a mathematical precondition fails, 4 for a failed
//! identity or an internal error.

mod job;
mod report;
mod run;

use absval::places::PlaceOptions;
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use report::Report;
use serde_json::Value;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Parser, Debug)]
#[command(name = "absval", version, about = "Extensions of discrete absolute values: batch jobs in, reports out")]
struct Args {
    /// Job document; `-` or absent reads standard input.
    job: Option<PathBuf>,
    /// A JSON array of jobs, run concurrently; reports keep the input order.
    #[arg(long, conflicts_with = "job")]
    batch: Option<PathBuf>,
    /// Working precision in digits of the uniformizer. Overrides VF_PRECISION.
    #[arg(long)]
    precision: Option<usize>,
    /// Integer shifts tried before the maximal-order fallback [default: 20].
    #[arg(long)]
    shift_budget: Option<u32>,
    /// Seed for randomized factoring.
    #[arg(long)]
    seed: Option<u64>,
    /// Cross-check fiber counts with Puiseux branch counting.
    #[arg(long, value_enum)]
    oracle: Option<Switch>,
    /// Leave the timestamp out, for byte-reproducible reports.
    #[arg(long)]
    no_timestamp: bool,
    /// Print the job schema and exit.
    #[arg(long)]
    print_schema: bool,
}

fn read(path: Option<&PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn env_precision() -> Result<Option<usize>, String> {
    match std::env::var("VF_PRECISION") {
        Ok(v) => v.trim().parse::<usize>().ok().filter(|&n| n >= 1).map(Some).ok_or(format!("VF_PRECISION={v:?} is not a positive integer")),
        Err(_) => Ok(None),
    }
}

fn run_one(doc: &Value, args: &Args, env_prec: Option<usize>) -> Report {
    let command = doc.get("command").and_then(Value::as_str).map(str::to_string);
    let job = match job::parse(doc) {
        Ok(j) => j,
        Err(e) => return Report::invalid(command, &e.pointer, &e.message),
    };
    let defaults = PlaceOptions::default();
    let settings = run::Settings {
        places: PlaceOptions {
            precision: args.precision.or(job.options.precision).or(env_prec),
            shift_budget: args.shift_budget.or(job.options.shift_budget).unwrap_or(defaults.shift_budget),
            seed: args.seed.or(job.options.seed).unwrap_or(defaults.seed),
            fallback: defaults.fallback,
        },
        oracle: match args.oracle {
            Some(Switch::On) => true,
            Some(Switch::Off) => false,
            None => job.options.oracle.unwrap_or(true),
        },
    };
    run::run(&job, &settings)
}

fn stamp(mut r: Report, args: &Args) -> Report {
    if !args.no_timestamp {
        r.timestamp = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).ok().map(|d| d.as_secs());
    }
    r
}

fn emit(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("reports serialize"));
}

fn fail_early(pointer: &str, message: &str, args: &Args) -> ExitCode {
    eprintln!("absval: {pointer}: {message}");
    let r = stamp(Report::invalid(None, pointer, message), args);
    emit(&r);
    ExitCode::from(r.exit_code() as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.print_schema {
        print!("{}", job::SCHEMA);
        return ExitCode::SUCCESS;
    }
    let env_prec = match env_precision() {
        Ok(p) => p,
        Err(m) => return fail_early("env:VF_PRECISION", &m, &args),
    };
    let text = match read(args.batch.as_ref().or(args.job.as_ref())) {
        Ok(t) => t,
        Err(e) => return fail_early("", &format!("cannot read input: {e}"), &args),
    };
    let doc: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return fail_early("", &format!("not JSON: {e}"), &args),
    };
    let code = if args.batch.is_some() {
        let Some(jobs) = doc.as_array() else {
            return fail_early("", "a batch is a JSON array of jobs", &args);
        };
        let reports: Vec<Report> = jobs.par_iter().map(|j| stamp(run_one(j, &args, env_prec), &args)).collect();
        emit(&reports);
        reports.iter().map(Report::exit_code).max().unwrap_or(0)
    } else {
        let r = stamp(run_one(&doc, &args, env_prec), &args);
        if let Some(e) = &r.error {
            eprintln!("absval: {}: {}", e.name, e.pointer.as_deref().map_or(e.message.clone(), |p| format!("{p}: {}", e.message)));
        }
        emit(&r);
        r.exit_code()
    };
    ExitCode::from(code as u8)
}
