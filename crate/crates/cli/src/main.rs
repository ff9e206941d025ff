use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qlink::catalog::{self, CatalogEntry};
use qlink::conway::SkeinCache;
use qlink::diagram::{parse_diagram, Parsed};
use qlink::trace::HomotopyTrace;
use qlink::verify::{run_suite, DEFAULT_CASES, SUITES};
use rayon::prelude::*;

use qlink_cli::report::{entry_report, link_report, tangle_report, trace_report, InvariantReport};

const INPUT_ERROR: u8 = 2;
const VERIFY_FAILED: u8 = 1;

#[derive(Parser)]
#[command(name = "qlink", version, about = "Invariants of links up to 1-quasi-isotopy")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Every applicable invariant of diagram files or catalog entries.
    Invariants {
        #[arg(required = true)]
        inputs: Vec<String>,
        /// Parameter for parametrized catalog entries such as `H_n`.
        #[arg(long)]
        n: Option<i64>,
    },
    /// Evaluates a crossing-change trace (JSON lines file or catalog entry).
    Trace { input: String },
    /// Runs verification suites; all of them if none is named.
    Verify {
        suite: Option<String>,
        #[arg(long = "suite")]
        suite_flag: Option<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
    /// Lists the catalog, or exports one entry.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        n: Option<i64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let json = cli.format == Format::Json;
    match cli.command {
        Command::Invariants { inputs, n } => {
            let cache = SkeinCache::from_env();
            // Computed in parallel, printed in input order.
            let reports: Vec<Result<InvariantReport, String>> =
                inputs.par_iter().map(|i| invariants(i, n, &cache)).collect();
            let _ = cache.persist();
            let reports = reports.into_iter().collect::<Result<Vec<_>, _>>()?;
            if json {
                let text = if reports.len() == 1 {
                    serde_json::to_string_pretty(&reports[0])
                } else {
                    serde_json::to_string_pretty(&reports)
                };
                out(&format!("{}\n", text.expect("plain data")));
            } else {
                reports.iter().for_each(|r| out(&r.to_text()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { input } => {
            let tr = load_trace(&input)?;
            emit(&trace_report(&input, &tr), json);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, suite_flag, seed, cases } => {
            let names: Vec<String> = match suite.or(suite_flag) {
                Some(s) if s == "all" => SUITES.iter().map(|s| s.to_string()).collect(),
                Some(s) => vec![s],
                None => SUITES.iter().map(|s| s.to_string()).collect(),
            };
            let mut reports = Vec::new();
            for name in &names {
                reports.push(run_suite(name, seed, cases).map_err(|e| e.to_string())?);
            }
            let passed = reports.iter().all(|r| r.passed());
            if json {
                out(&format!("{}\n", serde_json::to_string_pretty(&reports).expect("plain data")));
            } else {
                reports.iter().for_each(|r| out(&r.to_string()));
                out(&format!("{}\n", if passed { "all checks passed" } else { "verification FAILED" }));
            }
            Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(VERIFY_FAILED) })
        }
        Command::Catalog { name: None, .. } => {
            let names = catalog::list();
            if json {
                out(&format!("{}\n", serde_json::to_string_pretty(&names).expect("plain data")));
            } else {
                names.iter().for_each(|n| out(&format!("{n}\n")));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { name: Some(name), n } => {
            let e = lookup(&name, n)?;
            if json {
                out(&format!("{}\n", serde_json::to_string_pretty(&e.to_json()).expect("plain data")));
            } else {
                out(&format!("# {} ({}) — {}\n", e.name, e.kind.name(), e.provenance));
                out(&e.export());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn out(s: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(INPUT_ERROR as i32);
    }
}

fn emit(r: &InvariantReport, json: bool) {
    if json {
        out(&format!("{}\n", serde_json::to_string_pretty(r).expect("plain data")));
    } else {
        out(&r.to_text());
    }
}

fn lookup(name: &str, n: Option<i64>) -> Result<CatalogEntry, String> {
    if n.is_some() && name.contains(':') {
        return Err(format!("`{name}` already carries a parameter; drop --n"));
    }
    match n {
        Some(_) => catalog::get_with(name, n),
        None => catalog::get(name),
    }
    .map_err(|e| e.to_string())
}

fn read_file(path: &str) -> Result<Option<String>, String> {
    let p = Path::new(path);
    if !p.is_file() {
        return Ok(None);
    }
    std::fs::read_to_string(p).map(Some).map_err(|e| format!("{path}: {e}"))
}

fn invariants(input: &str, n: Option<i64>, cache: &SkeinCache) -> Result<InvariantReport, String> {
    match read_file(input)? {
        Some(text) => match parse_diagram(&text).map_err(|e| format!("{input}: {e}"))? {
            Parsed::Link(d) => Ok(link_report(input, &d, cache)),
            Parsed::Tangle(t) => Ok(tangle_report(input, &t, cache)),
        },
        None => {
            let e = lookup(input, n).map_err(|e| format!("{e} (and no file `{input}`)"))?;
            Ok(entry_report(&e, cache))
        }
    }
}

fn load_trace(input: &str) -> Result<HomotopyTrace, String> {
    match read_file(input)? {
        Some(text) => HomotopyTrace::from_jsonl(&text).map_err(|e| format!("{input}: {e}")),
        None => {
            let e = catalog::get(input).map_err(|e| format!("{e} (and no file `{input}`)"))?;
            e.payload.trace().cloned().ok_or_else(|| format!("catalog entry `{input}` is not a trace"))
        }
    }
}
