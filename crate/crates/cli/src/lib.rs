//! Command-line front end for `ckbound`: spectra, blowup bound
//! certificates, table reproduction, verification and search.
//!
//! All commands write results to `out` and diagnostics to `err`, and return
//! a process exit code, so they can be driven in-process by tests.

use std::io::{self, Write};
use std::path::PathBuf;

use ckbound::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
pub mod expr;
mod search;
mod verify;

pub use expr::{GraphExpr, ParseError};
pub use verify::{run_checks, CheckReport};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    /// A verification check or a table row failed.
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERIC: i32 = 3;
    /// A search found a ratio above an open or published threshold.
    pub const EXCEEDANCE: i32 = 10;
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) => exit::NUMERIC,
        Error::InternalConsistency(_) | Error::TableMismatch(_) => exit::FAILURE,
        Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::InfeasibleParameters(_)
        | Error::InfeasibleArray(_)
        | Error::Stream { .. }
        | Error::NoCandidates => exit::USAGE,
    }
}

#[derive(Parser, Debug)]
#[command(name = "ckbound", version, about = "Spectral lower bounds on c_k via closed blowups")]
pub struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the adjacency spectrum of a graph expression.
    Spectrum(SpectrumArgs),
    /// Certify c_k >= ratio from closed blowups of a graph.
    Bound(BoundArgs),
    /// Reproduce the table of best known lower bounds.
    Table(TableArgs),
    /// Search for graphs with a large blowup ratio.
    Search(SearchArgs),
    /// Seeded k = 3 local search over a range of vertex counts.
    Campaign(CampaignArgs),
    /// Run the built-in cross-checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Graph expression, e.g. `icosahedron`, `srg:57,24,11,9`, `union:cycle:5+complete:3`.
    pub expr: String,
    /// Exact values (the default when a closed form is known).
    #[arg(long, conflicts_with = "numeric")]
    pub exact: bool,
    /// Floating-point values from the eigensolver or the exact form.
    #[arg(long)]
    pub numeric: bool,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    pub expr: String,
    #[arg(long)]
    pub k: usize,
    /// Blowup factor, or `sup` for the limit over all factors.
    #[arg(long, default_value = "sup")]
    pub t: String,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Inclusive range of k, written `a..b` or a single value.
    #[arg(long, default_value = "4..24")]
    pub range: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exhaustive,
    HillClimb,
    Anneal,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    pub k: usize,
    /// Vertex count (exhaustive and local search).
    #[arg(long)]
    pub n: Option<usize>,
    /// Defaults to `anneal` unless `--g6-file` is given.
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Read candidates as graph6 lines from a file, or `-` for stdin.
    #[arg(long)]
    pub g6_file: Option<String>,
    /// Defaults to 0x00c0ffee.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Maximum objective evaluations. Defaults to 100000.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Extra runs from fresh random graphs. Defaults to 0.
    #[arg(long)]
    pub restarts: Option<usize>,
    /// Initial annealing temperature. Defaults to 0.05.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Geometric cooling factor per accepted move. Defaults to 0.999.
    #[arg(long)]
    pub cooling: Option<f64>,
    /// Consecutive rejections that end an annealing run. Defaults to 5000.
    #[arg(long)]
    pub max_rejections: Option<usize>,
    /// Allow exhaustive search on 8 vertices (2^28 graphs).
    #[arg(long)]
    pub allow_n8: bool,
    /// Skip malformed graph6 lines instead of failing.
    #[arg(long)]
    pub skip_invalid: bool,
    /// Where to write the witness if the threshold is exceeded.
    #[arg(long, default_value = "ckbound-witness.json")]
    pub witness: PathBuf,
}

#[derive(Args, Debug)]
pub struct CampaignArgs {
    /// Inclusive range of vertex counts, `a..b`.
    #[arg(long, default_value = "6..12")]
    pub n: String,
    /// Inclusive range of seeds, `a..b`.
    #[arg(long, default_value = "1..4")]
    pub seeds: String,
    #[arg(long, default_value_t = 20_000)]
    pub budget: u64,
    #[arg(long, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, default_value = "ckbound-witness.json")]
    pub witness: PathBuf,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Replace the built-in icosahedron edge list (one `u v` pair per line).
    #[arg(long)]
    pub icosahedron_edges: Option<PathBuf>,
}

/// Output sinks for a command.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Io<'_> {
    /// Reports `e` on the error stream and returns its exit code.
    pub(crate) fn fail(&mut self, e: &Error) -> io::Result<i32> {
        writeln!(self.err, "error: {e}")?;
        Ok(exit_code(e))
    }

    pub(crate) fn usage(&mut self, msg: impl std::fmt::Display) -> io::Result<i32> {
        writeln!(self.err, "error: {msg}")?;
        Ok(exit::USAGE)
    }

    pub(crate) fn json<T: serde::Serialize>(&mut self, value: &T) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *self.out, value)?;
        writeln!(self.out)
    }
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single value `a`.
pub fn parse_inclusive_range(s: &str) -> Option<(u64, u64)> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let (a, b) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (a <= b).then_some((a, b))
}

pub fn run(cli: &Cli, io: &mut Io<'_>) -> i32 {
    let result = match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, cli.json, io),
        Command::Bound(a) => commands::bound(a, cli.json, io),
        Command::Table(a) => commands::table(a, cli.json, io),
        Command::Search(a) => search::search(a, cli.json, io),
        Command::Campaign(a) => search::campaign(a, cli.json, io),
        Command::Verify(a) => verify::verify(a, cli.json, io),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(io.err, "error: output failed: {e}");
        exit::FAILURE
    })
}

/// Parses `args` (without the program name) and runs the command,
/// capturing both streams. Clap errors map to exit code 2.
pub fn run_captured<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("ckbound")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => return (e.exit_code(), String::new(), e.to_string()),
    };
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        &cli,
        &mut Io {
            out: &mut out,
            err: &mut err,
        },
    );
    (
        code,
        String::from_utf8_lossy(&out).into_owned(),
        String::from_utf8_lossy(&err).into_owned(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_inclusive_range("4..24"), Some((4, 24)));
        assert_eq!(parse_inclusive_range("8..=8"), Some((8, 8)));
        assert_eq!(parse_inclusive_range("5"), Some((5, 5)));
        assert_eq!(parse_inclusive_range("9..3"), None);
        assert_eq!(parse_inclusive_range("x..3"), None);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::Numeric("x".into())), exit::NUMERIC);
        assert_eq!(exit_code(&Error::TableMismatch("x".into())), exit::FAILURE);
        assert_eq!(exit_code(&Error::NoCandidates), exit::USAGE);
    }

    #[test]
    fn clap_usage_errors_exit_2() {
        assert_eq!(run_captured(["bound", "icosahedron"]).0, 2);
        assert_eq!(run_captured(["spectrum", "petersen", "--exact", "--numeric"]).0, 2);
        assert_eq!(run_captured(["frobnicate"]).0, 2);
    }
}
