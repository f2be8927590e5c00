//! The `gcdfam` command line.
//!
//! Every command produces a [`RunReport`]: `key=value` lines with stable
//! keys. Commands that also produce a document (a polynomial listing, a
//! family file) write the document to stdout and the report to stderr, so
//! the document can be redirected straight into a file.
//!
//! Exit codes: 0 on success, 1 when a verification came out false, 2 on
//! invalid arguments or input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::characterization::check_certificate;
use crate::constructions::{construct_lower_bound, construct_maximal_f2, ConstructionParams};
use crate::error::{Error, Result};
use crate::family::{lower_bound_cardinality, maximal_cardinality_f2_d1, Family};
use crate::irreducible::{restricted_count, IrreducibleIndex};
use crate::oracle::{max_family_bruteforce, sn_size, OracleConfig};
use crate::poly::FieldChar;

#[derive(Debug, Parser)]
#[command(
    name = "gcdfam",
    version,
    about = "Families of monic polynomials over GF(p) with bounded pairwise GCD degree"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List (or count) the irreducibles of a degree with nonzero constant term.
    Irr {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Build a family with one of the constructions.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Check membership of a family file in M_n^d.
    Verify {
        #[arg(long)]
        d: usize,
        file: PathBuf,
    },
    /// Evaluate the maximality certificate of a family file over GF(2), d = 1.
    Characterize { file: PathBuf },
    /// Exact maximum family size by exhaustive clique search.
    Oracle {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Closed-form counts for (p, n, d).
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// The lower-bound construction (any prime p, d < n/2).
    LowerBound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The maximal construction over GF(2) with d = 1, n >= 3.
    Maximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    VerifiedFalse,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub entries: Vec<(String, String)>,
    /// Document written to stdout ahead of the report, if any.
    pub document: Option<String>,
    pub outcome: Outcome,
    pub wall_time_ms: u128,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            entries: Vec::new(),
            document: None,
            outcome: Outcome::Success,
            wall_time_ms: 0,
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = format!("command={}\n", self.command);
        for (k, v) in &self.entries {
            let _ = writeln!(out, "{k}={v}");
        }
        let _ = writeln!(out, "wall_time_ms={}", self.wall_time_ms);
        out
    }
}

pub fn run(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Irr { p, deg, count_only } => cmd_irr(*p, *deg, *count_only)?,
        Command::Construct { kind } => cmd_construct(kind)?,
        Command::Verify { d, file } => cmd_verify(file, *d)?,
        Command::Characterize { file } => cmd_characterize(file)?,
        Command::Oracle { p, n, d, witness } => {
            cmd_oracle(*p, *n, *d, witness.as_ref(), &OracleConfig::from_env()?)?
        }
        Command::Count { p, n, d } => cmd_count(*p, *n, *d)?,
    };
    report.wall_time_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_irr(p: u64, deg: usize, count_only: bool) -> Result<RunReport> {
    let field = FieldChar::new(p)?;
    if deg == 0 {
        return Err(Error::OutOfRange("--deg must be at least 1".into()));
    }
    let mut report = RunReport::new("irr");
    report.push("p", p).push("deg", deg);
    if count_only {
        let k = u32::try_from(deg).map_err(|_| Error::OutOfRange("--deg is too large".into()))?;
        report.push("count", restricted_count(field, k));
    } else {
        let index = IrreducibleIndex::new(field, deg)?;
        let list = index.irreducibles(deg)?;
        let mut doc = String::new();
        for g in list {
            let _ = writeln!(doc, "{g}");
        }
        report.push("count", list.len());
        report.document = Some(doc);
    }
    Ok(report)
}

fn finish_family(report: &mut RunReport, family: &Family, d: usize, out: Option<&PathBuf>) -> Result<()> {
    if !family.is_member(d)? {
        return Err(Error::Invariant(format!(
            "constructed family is not a member of M_{}^{d}",
            family.degree()
        )));
    }
    report.push("size", family.len()).push("member", true);
    match out {
        Some(path) => {
            family.write_to(path)?;
            report.push("out", path.display());
        }
        None => report.document = Some(family.to_file_string()),
    }
    Ok(())
}

pub fn cmd_construct(kind: &ConstructKind) -> Result<RunReport> {
    match kind {
        ConstructKind::LowerBound { p, n, d, out } => {
            let field = FieldChar::new(*p)?;
            let params = ConstructionParams::new(field, *n, *d)?;
            let index = IrreducibleIndex::new(field, *n)?;
            let family = construct_lower_bound(&params, &index)?;
            let mut report = RunReport::new("construct lower-bound");
            report.push("p", p).push("n", n).push("d", d);
            report.push("formula", lower_bound_cardinality(field, *n, *d)?);
            finish_family(&mut report, &family, *d, out.as_ref())?;
            Ok(report)
        }
        ConstructKind::Maximal { n, out } => {
            let formula = maximal_cardinality_f2_d1(*n)?;
            let index = IrreducibleIndex::new(FieldChar::TWO, *n)?;
            let family = construct_maximal_f2(*n, &index)?;
            let mut report = RunReport::new("construct maximal");
            report.push("p", 2).push("n", n).push("d", 1);
            report.push("formula", formula);
            finish_family(&mut report, &family, 1, out.as_ref())?;
            Ok(report)
        }
    }
}

pub fn cmd_verify(file: &PathBuf, d: usize) -> Result<RunReport> {
    let family = Family::read_from(file)?;
    let member = family.is_member(d)?;
    let profile = family.max_pairwise_gcd_degree();
    let mut report = RunReport::new("verify");
    report
        .push("file", file.display())
        .push("q", family.field())
        .push("n", family.degree())
        .push("d", d)
        .push("size", family.len())
        .push("member", member)
        .push("max_gcd_degree", profile.max_degree);
    if let Some((a, b)) = &profile.witness {
        report.push("witness_pair", format!("{a},{b}"));
    }
    if !member {
        report.outcome = Outcome::VerifiedFalse;
    }
    Ok(report)
}

pub fn cmd_characterize(file: &PathBuf) -> Result<RunReport> {
    let family = Family::read_from(file)?;
    let index = IrreducibleIndex::new(family.field(), family.degree())?;
    let cert = check_certificate(&family, &index)?;
    let mut report = RunReport::new("characterize");
    report.push("file", file.display());
    report.push("expected_size", maximal_cardinality_f2_d1(family.degree())?);
    for line in cert.to_lines() {
        let (k, v) = line.split_once('=').expect("certificate lines are key=value");
        report.push(k, v);
    }
    if !cert.verdict {
        report.outcome = Outcome::VerifiedFalse;
    }
    Ok(report)
}

pub fn cmd_oracle(p: u64, n: usize, d: usize, witness: Option<&PathBuf>, config: &OracleConfig) -> Result<RunReport> {
    let field = FieldChar::new(p)?;
    let result = max_family_bruteforce(field, n, d, config)?;
    let mut report = RunReport::new("oracle");
    report.push("p", p).push("n", n).push("d", d);
    if let Some(size) = sn_size(field, n) {
        report.push("vertices", size);
    }
    report.push("max", result.size).push("witness_member", true);
    if let Some(path) = witness {
        result.witness.write_to(path)?;
        report.push("witness", path.display());
    }
    Ok(report)
}

pub fn cmd_count(p: u64, n: usize, d: usize) -> Result<RunReport> {
    let field = FieldChar::new(p)?;
    let lower = lower_bound_cardinality(field, n, d)?;
    let mut report = RunReport::new("count");
    report.push("p", p).push("n", n).push("d", d);
    for k in 1..=n {
        report.push(format!("i_{k}"), restricted_count(field, k as u32));
    }
    if let Some(size) = sn_size(field, n) {
        report.push("size_sn", size);
    }
    report.push("lower_bound", lower);
    if p == 2 && d == 1 && n >= 3 {
        report.push("maximal_f2_d1", maximal_cardinality_f2_d1(n)?);
    }
    Ok(report)
}

/// Parses arguments, runs the command and prints the report.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(report) => {
            let stdout = std::io::stdout();
            let stderr = std::io::stderr();
            match &report.document {
                Some(doc) => {
                    let _ = stdout.lock().write_all(doc.as_bytes());
                    let _ = stderr.lock().write_all(report.render().as_bytes());
                }
                None => {
                    let _ = stdout.lock().write_all(report.render().as_bytes());
                }
            }
            match report.outcome {
                Outcome::Success => ExitCode::SUCCESS,
                Outcome::VerifiedFalse => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
