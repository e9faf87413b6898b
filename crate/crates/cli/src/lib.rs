//! Command-line front end: argument parsing, dispatch, exit codes.

pub mod json;
pub mod render;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use purefield::exactmath::DEFAULT_SQUARE_FREE_BOUND;
use purefield::newton::{ore_factors, pure_polynomial};
use purefield::oracle::{certify, CertificationReport, CertifyOptions, MaximalityStrategy, DEFAULT_ENUM_BUDGET};
use purefield::periodicity::{atlas_row, period_modulus, AtlasOptions, AtlasRow, PeriodAtlas};
use purefield::purebasis::{construct_basis, index_report, PureField};
use purefield::Error;
use rayon::prelude::*;
use serde_json::Value;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "purefield", version, about = "Integral bases of pure number fields Q(m^(1/n))")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the JSON result to this file instead of stdout.
    #[arg(long, global = true)]
    output_path: Option<PathBuf>,

    /// Accept m whose square-freeness trial division could not settle.
    #[arg(long, global = true)]
    allow_unknown_squarefree: bool,

    /// Exit 0 even if a maximality enumeration or witness scan hit its bound.
    #[arg(long, global = true)]
    allow_skipped: bool,

    /// Candidates enumerated per prime before p-maximality is reported as skipped.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_BUDGET)]
    enum_budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Strategy::Reduced)]
    strategy: Strategy,

    /// Atlas witnesses are searched among |m| <= this bound (default 10 * n0).
    #[arg(long, global = true)]
    scan_bound: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified integral basis and index report for Q(m^(1/n)).
    Basis {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// p-indices of X^n - m and the field discriminant.
    Index {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Principal Newton polygon of X^(p^k) - m at p.
    Polygon {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// One basis per residue class of m modulo n0.
    Atlas {
        #[arg(long)]
        n: u64,
    },
    /// Independent certification of the computed basis.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Reduced,
    Exhaustive,
}

/// A finished command: its JSON, its pretty form, exit code and diagnostics.
struct Outcome {
    json: Value,
    pretty: String,
    code: i32,
    notes: Vec<String>,
}

impl Outcome {
    fn ok(json: Value, pretty: String) -> Self {
        Self { json, pretty, code: EXIT_OK, notes: Vec::new() }
    }

    fn flag(&mut self, code: i32, note: String) {
        self.code = self.code.max(code);
        self.notes.push(note);
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegreeTooSmall(_)
            | Error::TrivialRadicand(_)
            | Error::NotSquareFree { .. }
            | Error::NotPrime(_)
            | Error::SUndefined(_)
            | Error::DivisibleByP(_)
            | Error::TOutOfRange { .. }
            | Error::NotCoprime(..)
            | Error::Precondition(_) => EXIT_INPUT,
            Error::SquareFreeUnknown { .. } => EXIT_RESOURCE,
            _ => EXIT_VERIFICATION,
        };
        Self { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

impl Cli {
    fn certify_options(&self) -> CertifyOptions {
        let strategy = match self.strategy {
            Strategy::Reduced => MaximalityStrategy::Reduced,
            Strategy::Exhaustive => MaximalityStrategy::Exhaustive,
        };
        CertifyOptions { budget: self.enum_budget, strategy }
    }

    fn field(&self, n: u64, m: i64) -> Result<PureField, Failure> {
        let field = PureField::with_bound(n, m, DEFAULT_SQUARE_FREE_BOUND, self.allow_unknown_squarefree)?;
        Ok(field)
    }

    fn skip_code(&self) -> i32 {
        if self.allow_skipped {
            EXIT_OK
        } else {
            EXIT_RESOURCE
        }
    }
}

fn certification_notes(report: &CertificationReport, out: &mut Outcome, skip_code: i32) {
    for f in report.failures() {
        out.flag(EXIT_VERIFICATION, f);
    }
    for (p, o) in &report.maximality {
        if let purefield::oracle::MaximalityOutcome::Skipped(reason) = o {
            out.flag(skip_code, format!("{p}-maximality skipped: {reason}"));
        }
    }
}

fn basis_cmd(cli: &Cli, n: u64, m: i64) -> Result<Outcome, Failure> {
    let field = cli.field(n, m)?;
    let basis = construct_basis(&field)?;
    let report = index_report(&field)?;
    info!("certifying basis of Q({m}^(1/{n}))");
    let cert = certify(&basis, &cli.certify_options())?;
    let mut out = Outcome::ok(json::basis(&basis, &report), render::basis(&basis, &report, period_modulus(n)));
    certification_notes(&cert, &mut out, cli.skip_code());
    Ok(out)
}

fn index_cmd(cli: &Cli, n: u64, m: i64) -> Result<Outcome, Failure> {
    let report = index_report(&cli.field(n, m)?)?;
    Ok(Outcome::ok(json::index(&report), render::index(&report)))
}

fn polygon_cmd(p: u64, k: u32, m: i64) -> Result<Outcome, Failure> {
    if k == 0 {
        return Err(input_error("k must be at least 1"));
    }
    if m == 0 {
        return Err(input_error("m must be nonzero"));
    }
    let n = p.checked_pow(k).ok_or_else(|| input_error("p^k overflows"))?;
    let factors = ore_factors(&pure_polynomial(n, m), p)?;
    // X^(p^k) - m is a p^k-th power of a linear polynomial modulo p
    let [factor] = factors.as_slice() else {
        return Err(Failure { code: EXIT_VERIFICATION, message: format!("expected one factor mod {p}, got {}", factors.len()) });
    };
    Ok(Outcome::ok(json::polygon(p, k, m, factor), render::polygon(p, k, m, factor)))
}

fn atlas_cmd(cli: &Cli, n: u64) -> Result<Outcome, Failure> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n).into());
    }
    let n0 = period_modulus(n);
    let options = AtlasOptions { scan_bound: cli.scan_bound, certify: cli.certify_options() };
    info!("atlas for n = {n}: {n0} residue classes");
    let rows: Vec<(u64, AtlasRow)> = (0..n0)
        .into_par_iter()
        .map(|r| atlas_row(n, r, &options).map(|row| (r, row)))
        .collect::<purefield::Result<_>>()?;
    let atlas = PeriodAtlas { n, n0, rows: rows.into_iter().collect::<BTreeMap<_, _>>() };
    let mut out = Outcome::ok(json::atlas(&atlas), render::atlas(&atlas));
    for (r, row) in &atlas.rows {
        if let AtlasRow::Unknown { bound } = row {
            out.flag(cli.skip_code(), format!("class {r}: no square-free witness with |m| <= {bound}"));
        }
    }
    Ok(out)
}

fn verify_cmd(cli: &Cli, n: u64, m: i64) -> Result<Outcome, Failure> {
    let field = cli.field(n, m)?;
    let basis = construct_basis(&field)?;
    let cert = certify(&basis, &cli.certify_options())?;
    let mut out = Outcome::ok(json::certification(n, m, &cert), render::certification(n, m, &cert));
    certification_notes(&cert, &mut out, cli.skip_code());
    Ok(out)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Basis { n, m } => basis_cmd(cli, n, m),
        Command::Index { n, m } => index_cmd(cli, n, m),
        Command::Polygon { p, k, m } => polygon_cmd(p, k, m),
        Command::Atlas { n } => atlas_cmd(cli, n),
        Command::Verify { n, m } => verify_cmd(cli, n, m),
    }
}

/// Runs one invocation; results go to `out`, diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INPUT
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let json_text = json::to_text(&outcome.json);
    let written = match (&cli.output_path, cli.format) {
        (Some(path), format) => std::fs::write(path, &json_text)
            .and_then(|()| if format == Format::Pretty { out.write_all(outcome.pretty.as_bytes()) } else { Ok(()) }),
        (None, Format::Json) => out.write_all(json_text.as_bytes()),
        (None, Format::Pretty) => out.write_all(outcome.pretty.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_INPUT;
    }
    for note in &outcome.notes {
        let _ = writeln!(err, "{note}");
    }
    outcome.code
}
