//! Catalog loading, validation and the `tnd` command line.
//!
//! Exit codes: 0 success, 1 validation failure, 2 missing data,
//! 3 internal cross-check mismatch.

mod catalog;
mod commands;
mod report;
mod validate;

pub use catalog::{parse_op, Catalog, CatalogEntry, ComponentSpec, PairSpec, BUILTIN_CATALOG};
pub use commands::{run, Command, Options, PRIMITIVE_WINDOW};
pub use report::{plain, Check, EntryValidation, Field, Report, ValidationReport, REPORT_SCHEMA, VALIDATION_SCHEMA};
pub use validate::{validate_catalog, validate_entry, AXIOM_DEGREE, BETTI_DEGREE, ENUMERATION_CAP};

use crate::error::Error;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_MISSING: i32 = 2;
pub const EXIT_CROSS_CHECK: i32 = 3;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MissingData(_) | Error::Unsupported(_) => EXIT_MISSING,
        Error::CrossCheck(_) => EXIT_CROSS_CHECK,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Parser, Debug)]
#[command(name = "tnd", version, about = "Centers, central essential ideals and d0 bounds for unstable algebras")]
pub struct Cli {
    /// Catalog file; the built-in catalog when absent.
    #[arg(long, global = true, env = "TND_CATALOG")]
    pub catalog: Option<PathBuf>,
    /// Prime the target must be catalogued at.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree bound for axiom checks, invariant generation and primitive search.
    #[arg(long = "degree-bound", global = true)]
    pub degree_bound: Option<u32>,
    /// Run the expensive spot-checks as well.
    #[arg(long, global = true)]
    pub thorough: bool,
    /// Emit JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Args, Debug)]
pub struct Target {
    /// Catalog entry id.
    pub target: String,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Check every entry of the catalog.
    ValidateCatalog,
    /// List catalog entries.
    List,
    /// Center of the Rector category.
    Center(Target),
    /// p-central defect.
    Defect(Target),
    /// Depth, dimension and the Cohen-Macaulay property.
    Depth(Target),
    /// Castelnuovo-Mumford regularity.
    Reg(Target),
    /// Central essential ideal with e_indec and e_prim.
    Cess(Target),
    /// Upper bound for d0 with its certificate.
    D0Bound(Target),
    /// d0 interval from the calculus (an entry id or an expression).
    D0Calc(Target),
    /// Poincaré dimension bound for H-space presentations.
    #[command(name = "hspace")]
    HSpace(Target),
    /// Invariant ring of a representation entry.
    Invariants(Target),
    /// Quillen category of a group entry or a named group.
    Quillen(Target),
}

/// Rendered output and exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn fail(e: &Error) -> Outcome {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(e) }
    }
}

pub fn load_catalog(path: Option<&PathBuf>) -> crate::Result<Catalog> {
    match path {
        None => Catalog::parse(BUILTIN_CATALOG),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::MissingData(format!("cannot read {}: {e}", path.display())))?;
            Catalog::parse(&text)
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let cat = match load_catalog(cli.catalog.as_ref()) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(&e),
    };
    let opts = Options { degree_bound: cli.degree_bound, thorough: cli.thorough };
    let (command, target) = match &cli.command {
        CliCommand::ValidateCatalog => {
            let report = validate_catalog(&cat, &opts);
            let stdout = if cli.json { report.render_json() } else { report.render_text() };
            let code = if report.passed() { EXIT_OK } else { EXIT_VALIDATION };
            return Outcome { stdout, stderr: String::new(), code };
        }
        CliCommand::List => {
            let mut stdout = String::new();
            for e in &cat.entries {
                stdout += &format!("{:10} p={}  {}\n", e.id, e.prime.get(), e.source);
            }
            return Outcome { stdout, stderr: String::new(), code: EXIT_OK };
        }
        CliCommand::Center(t) => (Command::Center, t),
        CliCommand::Defect(t) => (Command::Defect, t),
        CliCommand::Depth(t) => (Command::Depth, t),
        CliCommand::Reg(t) => (Command::Reg, t),
        CliCommand::Cess(t) => (Command::Cess, t),
        CliCommand::D0Bound(t) => (Command::D0Bound, t),
        CliCommand::D0Calc(t) => (Command::D0Calc, t),
        CliCommand::HSpace(t) => (Command::HSpace, t),
        CliCommand::Invariants(t) => (Command::Invariants, t),
        CliCommand::Quillen(t) => (Command::Quillen, t),
    };
    match run(&cat, command, &target.target, cli.p, &opts) {
        Ok(report) => Outcome {
            stdout: if cli.json { report.render_json() } else { report.render_text() },
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(e) => Outcome::fail(&e),
    }
}

/// Parses the process arguments, prints the outcome and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_MISSING } else { EXIT_OK };
        }
    };
    let outcome = execute(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    outcome.code
}

#[cfg(test)]
mod tests;
