use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use visibility_core::analysis::{row_epsilon_family, run_sweep};
use visibility_core::numeric::{action_setup, certify, CertificateStatus, CertifyOptions, ACTIONS};
use visibility_core::realizations::{build, Dataset, Family, RowFilter, DEFAULT_MAX_AMBIENT};
use visibility_core::roots::k_epsilon_family;
use visibility_core::Error;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "visibility", version, about = "Verify involution tables and certify strongly visible actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Involution tables.
    Tables {
        #[command(subcommand)]
        command: TablesCommand,
    },
    /// Numerically certify a strongly visible action.
    Certify(CertifyArgs),
    /// List the twisted involutions of an ε-family, one line per signature.
    Epsilon(EpsilonArgs),
    /// List the action ids accepted by `certify`.
    Actions,
}

#[derive(Subcommand)]
enum TablesCommand {
    /// Verify every selected row instance exactly.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Row selector: comma-separated `tableN`, `tableN:L`, `row=L` or `L`.
    #[arg(long, default_value = "")]
    filter: String,
    /// Largest ambient matrix size of the instances checked.
    #[arg(long, default_value_t = DEFAULT_MAX_AMBIENT)]
    max_ambient: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dataset file; defaults to $VISIBILITY_DATASET, then the built-in tables.
    #[arg(long, env = "VISIBILITY_DATASET")]
    dataset: Option<PathBuf>,
}

#[derive(clap::Args)]
struct CertifyArgs {
    /// Action id, e.g. `sl2R:K`; see `visibility actions`.
    action: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct EpsilonArgs {
    /// Ambient algebra, e.g. `sl(3,R)` or `su(2,2)`.
    family: String,
    /// Twist the table 1 involution pair of this row instead of the Cartan
    /// involution, and check each twist.
    #[arg(long)]
    row: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_AMBIENT)]
    max_ambient: usize,
    #[arg(long, env = "VISIBILITY_DATASET")]
    dataset: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Tables { command: TablesCommand::Verify(a) } => tables_verify(&a),
        Command::Certify(a) => cmd_certify(&a),
        Command::Epsilon(a) => cmd_epsilon(&a),
        Command::Actions => {
            for id in ACTIONS {
                println!("{id}");
            }
            Ok(EXIT_PASS)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Dataset(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tables_verify(a: &VerifyArgs) -> Result<u8, Error> {
    let ds = Dataset::load(a.dataset.as_deref())?;
    let filter = RowFilter::parse(&a.filter)?;
    if !ds.rows.iter().any(|r| filter.matches(r.table, &r.label)) {
        return Err(Error::Dataset(format!("filter `{}` selects no rows", a.filter)));
    }
    let report = run_sweep(&ds, &filter, &a.filter, a.max_ambient)?;
    let mut text = match a.format {
        Format::Json => report.to_json(),
        Format::Md => report.to_markdown(),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(&text, a.out.as_deref())?;
    let s = &report.summary;
    eprintln!(
        "{} pass, {} fail, {} error, {} data-only, {} boundary",
        s.pass, s.fail, s.error, s.data_only, s.boundary
    );
    Ok(if report.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_certify(a: &CertifyArgs) -> Result<u8, Error> {
    let setup = action_setup(&a.action)?;
    let opts = CertifyOptions { samples: a.samples, tol: a.tol, seed: a.seed, restarts: a.restarts };
    let cert = certify(&setup, &opts)?;
    emit(&(cert.to_json() + "\n"), a.out.as_deref())?;
    Ok(match cert.status {
        CertificateStatus::Pass => EXIT_PASS,
        CertificateStatus::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn cmd_epsilon(a: &EpsilonArgs) -> Result<u8, Error> {
    let family: Family = a.family.parse()?;
    let mut out = String::new();
    let code = match &a.row {
        None => {
            let r = build(&family, a.max_ambient)?;
            for m in k_epsilon_family(&r.algebra, &r.theta, &r.p)? {
                let _ = writeln!(out, "{}  {}", m.signature, m.fingerprint);
            }
            EXIT_PASS
        }
        Some(label) => {
            let ds = Dataset::load(a.dataset.as_deref())?;
            let rep = row_epsilon_family(&ds, label, &family, a.max_ambient)?;
            for m in &rep.members {
                let verdict = if m.pass { "pass" } else { "fail" };
                let _ = writeln!(out, "{}  {verdict}  rank {}", m.signature, m.triple.rank_pair);
            }
            if rep.pass {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
    };
    print!("{out}");
    Ok(code)
}
