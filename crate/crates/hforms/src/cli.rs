//! The `hforms` command-line front end.
//!
//! Every subcommand prints a human-readable account to stdout and, with
//! `--out <path>`, writes the canonical JSON report.  Exit codes make the
//! binary scriptable: `0` when everything checked is proven or clear, `2`
//! when anything is refuted or obstructed, `3` when anything stays
//! inconclusive, and `1` for usage, I/O, or parse errors.

use crate::catalog::{self, CatalogEntry};
use crate::exterior::standard_kaehler;
use crate::iwasawa_c;
use crate::obstructions::{cone_image_search, ConeSearchMode};
use crate::parse::{self, AlgebraFile, ValidateIssue};
use crate::report::{self, CheckSelection, Report, CHECK_NAMES};
use crate::scalar::GaussRational;
use crate::{SearchConfig, Verdict};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "hforms",
    version,
    about = "Exact checks for balanced metrics of Hodge–Riemann type on Lie \
             algebras with complex structures"
)]
struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Scale factor on all search budgets (restarts, samples, iterations).
    #[arg(long, global = true, value_name = "FACTOR")]
    budget: Option<f64>,

    /// Write the canonical JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse an algebra file and check integrability and the Jacobi identity.
    Validate {
        /// Path to a file in the algebra grammar.
        file: PathBuf,
    },

    /// Run the check suite against an algebra file.
    Check {
        /// Path to a file in the algebra grammar.
        file: PathBuf,

        /// Run every check (the default when no --check is given).
        #[arg(long, conflicts_with = "check")]
        all: bool,

        /// Run only the named check; may be repeated.
        #[arg(long = "check", value_name = "NAME")]
        check: Vec<String>,
    },

    /// List the built-in algebras or run the suite on one of them.
    Catalog {
        #[command(subcommand)]
        action: Option<CatalogAction>,
    },

    /// Verify the balanced Hodge–Riemann structure on the Iwasawa algebra
    /// times a complex line.
    #[command(name = "iwasawa-c")]
    IwasawaC {
        /// Numeric cross-check sample count.
        #[arg(long, value_name = "N")]
        samples: Option<u32>,

        /// Print the JSON section instead of the human-readable lines.
        #[arg(long)]
        json: bool,
    },

    /// Search for a cone obstruction witness against an algebra file.
    Obstruct {
        /// Path to a file in the algebra grammar.
        file: PathBuf,

        /// Witness cone: pk (decomposable squares), cpd (positive
        /// semidefinite squares), hrt (primitive squares against the
        /// standard diagonal metric).
        #[arg(long, default_value = "pk", value_parser = ["pk", "cpd", "hrt"])]
        mode: String,

        /// Structure degree p of the metrics being obstructed (default n−2).
        #[arg(long, value_name = "K")]
        p: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print every built-in algebra with its dimension.
    List,
    /// Run the full check suite on a named entry.
    Run {
        /// A name as printed by `hforms catalog list`.
        name: String,
    },
}

/// Parse `argv` and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let config = {
        let mut c = SearchConfig::default();
        if let Some(factor) = cli.budget {
            c = c.with_budget(factor);
        }
        if let Some(seed) = cli.seed {
            c = c.with_seed(seed);
        }
        c
    };
    match dispatch(cli.command, &config, cli.seed, cli.out.as_deref()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}

fn dispatch(
    command: Command,
    config: &SearchConfig,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<i32, String> {
    match command {
        Command::Validate { file } => {
            let parsed = load(&file)?;
            Ok(run_validate(&parsed))
        }
        Command::Check { file, all: _, check } => {
            let parsed = load(&file)?;
            let selection = selection_from(&check)?;
            let report = report::run_suite(&parsed.name, &parsed.to_algebra(), &selection, config);
            finish_report(&report, out)
        }
        Command::Catalog { action } => match action.unwrap_or(CatalogAction::List) {
            CatalogAction::List => {
                for entry in catalog::catalog() {
                    println!("{:<24} n = {}  {}", entry.name, entry.algebra.n(), entry.description);
                }
                Ok(0)
            }
            CatalogAction::Run { name } => {
                let entry = find_entry(&name)?;
                let report =
                    report::run_suite(entry.name, &entry.algebra, &CheckSelection::All, config);
                finish_report(&report, out)
            }
        },
        Command::IwasawaC { samples, json } => {
            let samples = samples.unwrap_or(iwasawa_c::DEFAULT_SAMPLES);
            let report = match seed {
                Some(seed) => iwasawa_c::verify_all_seeded(samples, seed),
                None => iwasawa_c::verify_all(samples),
            };
            let value = report::iwasawa_c_json(&report);
            if json {
                println!("{}", serde_json::to_string_pretty(&value).expect("serializes"));
            } else {
                print!("{}", iwasawa_c::render_report(&report));
            }
            if let Some(path) = out {
                write_out(path, &serde_json::to_string_pretty(&value).expect("serializes"))?;
            }
            Ok(if report.all_passed() { 0 } else { 2 })
        }
        Command::Obstruct { file, mode, p } => {
            let parsed = load(&file)?;
            run_obstruct(&parsed, &mode, p, config, out)
        }
    }
}

fn load(path: &Path) -> Result<AlgebraFile, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn selection_from(names: &[String]) -> Result<CheckSelection, String> {
    if names.is_empty() {
        return Ok(CheckSelection::All);
    }
    for name in names {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(format!(
                "unknown check `{name}`; available: {}",
                CHECK_NAMES.join(", ")
            ));
        }
    }
    Ok(CheckSelection::Named(names.to_vec()))
}

fn find_entry(name: &str) -> Result<CatalogEntry, String> {
    catalog::catalog().into_iter().find(|e| e.name == name).ok_or_else(|| {
        let names: Vec<&str> = catalog::catalog().iter().map(|e| e.name).collect();
        format!("no catalog entry `{name}`; available: {}", names.join(", "))
    })
}

fn run_validate(parsed: &AlgebraFile) -> i32 {
    match parsed.validate() {
        Verdict::Proven(ok) => {
            println!(
                "{}: integrable complex structure, Jacobi identity holds (n = {})",
                parsed.name, ok.n
            );
            0
        }
        Verdict::Refuted(issue) => {
            match &issue {
                ValidateIssue::ZeroMonomial { .. } => {
                    println!("{}: refuted: {issue}", parsed.name)
                }
                ValidateIssue::Algebra(failure) => println!(
                    "{}: refuted at coframe index {}: {}",
                    parsed.name,
                    failure.coframe_index,
                    match &failure.kind {
                        crate::lie_complex::ValidationFailureKind::NonIntegrable(f) =>
                            format!("non-integrable, (0,2)-part {f}"),
                        crate::lie_complex::ValidationFailureKind::JacobiFailure(f) =>
                            format!("Jacobi identity fails, d² residual {f}"),
                    }
                ),
            }
            2
        }
        Verdict::Inconclusive { reason } => {
            println!("{}: inconclusive ({reason})", parsed.name);
            3
        }
    }
}

fn finish_report(report: &Report, out: Option<&Path>) -> Result<i32, String> {
    print!("{}", report.render_text());
    if let Some(path) = out {
        write_out(path, &report.canonical_json())?;
    }
    Ok(report.exit_code())
}

fn run_obstruct(
    parsed: &AlgebraFile,
    mode_name: &str,
    p: Option<u32>,
    config: &SearchConfig,
    out: Option<&Path>,
) -> Result<i32, String> {
    let g = parsed.to_algebra();
    let n = u32::from(g.n());
    let p = p.unwrap_or_else(|| n.saturating_sub(2));
    let mode = match mode_name {
        "pk" => ConeSearchMode::DecomposableForms,
        "cpd" => ConeSearchMode::PositiveSemidefinite,
        "hrt" => ConeSearchMode::PrimitiveSemidefinite {
            fundamental: standard_kaehler::<GaussRational>(g.n()),
        },
        other => return Err(format!("unknown mode `{other}`")),
    };
    let verdict = cone_image_search(&g, &mode, p, config);
    let (status, detail, witness_json) = match &verdict {
        Verdict::Refuted(witness) => {
            println!("{}: obstructed (mode {mode_name}, p = {p})", parsed.name);
            print!("{}", witness.proof_sketch());
            ("obstructed", witness.proof_sketch(), Some(report::obstruction_witness_json(witness)))
        }
        Verdict::Inconclusive { reason } if reason.starts_with("no invariant form of degree") => {
            println!("{}: clear (mode {mode_name}, p = {p}): {reason}", parsed.name);
            ("clear", reason.clone(), None)
        }
        Verdict::Inconclusive { reason } => {
            println!("{}: inconclusive (mode {mode_name}, p = {p}): {reason}", parsed.name);
            ("inconclusive", reason.clone(), None)
        }
        Verdict::Proven(never) => match *never {},
    };
    if let Some(path) = out {
        let value = json!({
            "schema": 1,
            "section": "obstruct",
            "algebra": parsed.name,
            "mode": mode_name,
            "p": p,
            "status": status,
            "detail": detail,
            "witness": witness_json,
        });
        write_out(path, &serde_json::to_string_pretty(&value).expect("serializes"))?;
    }
    Ok(match status {
        "obstructed" => 2,
        "clear" => 0,
        _ => 3,
    })
}

fn write_out(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}
