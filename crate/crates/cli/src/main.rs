//! `binom4k` command-line verifier. Exit status is 0 when every executed
//! check passes, 1 when any check fails or errors, and 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use binom4k::catalog::{builtin_catalog, lookup, parse_catalog, parse_component_file, serialize_catalog, IdentityEntry};
use binom4k::exact::{parse_rational, Rational};
use binom4k::series::{sum_series_with, SumOptions};
use binom4k::numerics::format_sci;
use binom4k::verify::{
    crosscheck, render_crosscheck, render_exact, render_verification, run_exact_checks, verify_all, verify_entry,
    ReportFormat, Status, DEFAULT_DIGITS,
};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "binom4k", version, about = "Certified verification of binomial-harmonic sum identities")]
struct Cli {
    /// Catalog JSON file to use instead of the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct DigitsArg {
    /// Decimal digits D; PASS needs a difference enclosure of width at most 10^(1-D).
    #[arg(long, env = "BINOM4K_DIGITS", default_value_t = DEFAULT_DIGITS,
          value_parser = clap::value_parser!(u32).range(10..=10_000))]
    digits: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one catalog identity.
    Verify {
        id: String,
        #[command(flatten)]
        digits: DigitsArg,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Verify every catalog identity.
    VerifyAll {
        #[command(flatten)]
        digits: DigitsArg,
        /// Worker threads (default: available parallelism).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Run the exact symbolic and series checks.
    ExactChecks {
        /// Run only the check with this name or names extending it at a '-'.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Compare a quadrature of the integral representation with the series.
    Crosscheck {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        j: u8,
        /// Rational argument p/q.
        #[arg(long, value_parser = parse_q)]
        x: Rational,
        #[arg(long, default_value_t = 1e-20)]
        tol: f64,
        #[arg(long, default_value = "text")]
        format: ReportFormat,
    },
    /// Inspect the catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Sum a series described by a JSON component file.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        digits: DigitsArg,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// One line per entry: id and closed form.
    List,
    /// Full JSON of one entry.
    Show { id: String },
    /// The whole catalog as JSON.
    Export,
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn status_code(all_pass: bool) -> ExitCode {
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_catalog(path: Option<&PathBuf>) -> Result<Vec<IdentityEntry>, String> {
    match path {
        None => Ok(builtin_catalog()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_catalog(&text).map_err(|e| format!("{}: {e}", p.display()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { id, digits, format } => {
            let entries = match load_catalog(cli.catalog.as_ref()) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let entry = match lookup(&entries, &id) {
                Ok(e) => e,
                Err(e) => return usage(e),
            };
            let r = verify_entry(entry, digits.digits);
            print!("{}", render_verification(std::slice::from_ref(&r), format));
            status_code(r.status == Status::Pass)
        }
        Command::VerifyAll { digits, jobs, format } => {
            let entries = match load_catalog(cli.catalog.as_ref()) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            let jobs = jobs
                .map(|j| j as usize)
                .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
            let rs = verify_all(&entries, digits.digits, jobs);
            print!("{}", render_verification(&rs, format));
            status_code(rs.iter().all(|r| r.status == Status::Pass))
        }
        Command::ExactChecks { only, format } => {
            let rs = run_exact_checks(only.as_deref());
            if rs.is_empty() {
                return usage(format!("no exact check matches `{}`", only.unwrap_or_default()));
            }
            print!("{}", render_exact(&rs, format));
            status_code(rs.iter().all(|r| r.status == Status::Pass))
        }
        Command::Crosscheck { j, x, tol, format } => match crosscheck(j, &x, tol) {
            Ok(r) => {
                print!("{}", render_crosscheck(&r, format));
                status_code(r.status == Status::Pass)
            }
            Err(e) => usage(e),
        },
        Command::Catalog { action } => {
            let entries = match load_catalog(cli.catalog.as_ref()) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            match action {
                CatalogAction::List => {
                    for e in &entries {
                        println!("{:<16} {}", e.id, e.rhs);
                    }
                }
                CatalogAction::Show { id } => match lookup(&entries, &id) {
                    Ok(e) => {
                        let full: serde_json::Value =
                            serde_json::from_str(&serialize_catalog(std::slice::from_ref(e))).expect("own output");
                        println!("{}", serde_json::to_string_pretty(&full["entries"][0]).expect("serializable"));
                    }
                    Err(e) => return usage(e),
                },
                CatalogAction::Export => print!("{}", serialize_catalog(&entries)),
            }
            ExitCode::SUCCESS
        }
        Command::Eval { spec, digits } => {
            let text = match std::fs::read_to_string(&spec) {
                Ok(t) => t,
                Err(e) => return usage(format!("{}: {e}", spec.display())),
            };
            let comp = match parse_component_file(&text) {
                Ok(c) => c,
                Err(e) => return usage(format!("{}: {e}", spec.display())),
            };
            match sum_series_with(&comp.spec, digits.digits, SumOptions::default()) {
                Ok(s) => {
                    let v = s.value.mul_rational(&comp.weight);
                    println!("value  {}", v.to_mid_rad_string(digits.digits as usize));
                    println!("cutoff {}", s.cutoff);
                    println!("tail   {}", format_sci(&s.tail, 3, true));
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
    }
}
