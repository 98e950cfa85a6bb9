//! The `qverify` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qseries::modeq::degree_check;
use qseries::{parse, Bindings};
use serde::Serialize;

use crate::registry::{self, Registry};
use crate::report::{summarize, VerificationReport};
use crate::runner::{verify, verify_all};

/// Exact q-series expansion and identity verification.
#[derive(Debug, Parser)]
#[command(name = "qverify", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Truncation order in q (default: 20 for expand, each record's own order otherwise).
    #[arg(short = 'n', long, global = true, value_parser = clap::value_parser!(i64).range(1..))]
    pub order: Option<i64>,

    /// Lattice q^(1/D) for printed expansions; 0 picks the coarsest that fits.
    #[arg(short = 'g', long, global = true, default_value_t = 0, value_parser = granularity)]
    pub granularity: i64,

    /// Registry file to use instead of the built-in corpus.
    #[arg(long, global = true)]
    pub registry: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Only verify records whose id contains this string.
    #[arg(long, global = true)]
    pub id: Option<String>,

    /// Also run the floating-point degree-5 check at this q (repeatable).
    #[arg(long = "numeric-q", global = true)]
    pub numeric_q: Vec<f64>,

    /// Print only failures, errors and the summary.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the expansion of an expression.
    Expand { expr: String },
    /// Verify one registry record.
    Verify { id: String },
    /// Verify every registry record.
    VerifyAll,
    /// Validate the registry against its schema.
    CorpusLint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn granularity(s: &str) -> Result<i64, String> {
    match s.parse::<i64>() {
        Ok(d @ (0 | 1 | 2 | 4 | 8)) => Ok(d),
        _ => Err(format!("must be one of 0, 1, 2, 4, 8; got {s}")),
    }
}

#[derive(Serialize)]
struct Expansion {
    expr: String,
    order: String,
    terms: Vec<(String, String)>,
}

#[derive(Serialize)]
struct NumericReport {
    q: f64,
    alpha: f64,
    beta: f64,
    ratio: f64,
    m: f64,
    m_hypergeometric: f64,
    status: &'static str,
    error: Option<String>,
}

fn load(cli: &Cli) -> Result<Registry, registry::RegistryError> {
    match &cli.registry {
        Some(p) => Registry::load(p),
        None => Registry::builtin(),
    }
}

fn json<T: Serialize>(out: &mut dyn Write, v: &T) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let mut code = match &cli.command {
        Command::Expand { expr } => expand(cli, expr, out, err)?,
        Command::Verify { id } => {
            let reg = match load(cli) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(1);
                }
            };
            let Some(rec) = reg.get(id) else {
                writeln!(err, "error: no record with id {id}")?;
                return Ok(1);
            };
            reports(cli, &[verify(rec, cli.order)], out)?
        }
        Command::VerifyAll => {
            let reg = match load(cli) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(1);
                }
            };
            reports(cli, &verify_all(&reg, cli.order, cli.id.as_deref()), out)?
        }
        Command::CorpusLint => {
            let text = match &cli.registry {
                Some(p) => match std::fs::read_to_string(p) {
                    Ok(t) => t,
                    Err(e) => {
                        writeln!(err, "error: cannot read {}: {e}", p.display())?;
                        return Ok(1);
                    }
                },
                None => registry::BUILTIN.to_string(),
            };
            let issues = registry::lint(&text);
            match cli.format {
                Format::Json => json(out, &issues.iter().map(|i| i.to_string()).collect::<Vec<_>>())?,
                Format::Text => {
                    for i in &issues {
                        writeln!(out, "{i}")?;
                    }
                    if issues.is_empty() && !cli.quiet {
                        writeln!(out, "registry ok")?;
                    }
                }
            }
            i32::from(!issues.is_empty())
        }
    };
    if !cli.numeric_q.is_empty() && numeric(cli, out)? != 0 {
        code = code.max(1);
    }
    Ok(code)
}

fn expand(cli: &Cli, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let e = match parse(text) {
        Ok(e) => e,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(1);
        }
    };
    let order = cli.order.unwrap_or(20);
    let s = match qseries::expr::evaluate(&e, &Bindings::new(), order, cli.granularity.max(1)) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(1);
        }
    };
    match cli.format {
        Format::Text => writeln!(out, "{s}")?,
        Format::Json => json(
            out,
            &Expansion {
                expr: e.to_string(),
                order: s.order().to_string(),
                terms: s.terms().map(|(k, c)| (k.to_string(), c.to_string())).collect(),
            },
        )?,
    }
    Ok(0)
}

fn reports(cli: &Cli, reports: &[VerificationReport], out: &mut dyn Write) -> std::io::Result<i32> {
    let summary = summarize(reports);
    match cli.format {
        Format::Json => json(out, &reports)?,
        Format::Text => {
            for r in reports {
                if !cli.quiet || r.status != crate::report::Status::Pass {
                    writeln!(out, "{r}")?;
                }
            }
            writeln!(out, "{summary}")?;
        }
    }
    Ok(i32::from(summary.broken > 0))
}

fn numeric(cli: &Cli, out: &mut dyn Write) -> std::io::Result<i32> {
    let tol = 1e-8;
    let mut code = 0;
    let mut rows = Vec::new();
    for &q in &cli.numeric_q {
        let row = match degree_check(q, tol) {
            Ok(s) => {
                let ok = s.ratio_ok() && s.multiplier_ok();
                if !ok {
                    code = 1;
                }
                NumericReport {
                    q,
                    alpha: s.alpha,
                    beta: s.beta,
                    ratio: s.ratio,
                    m: s.m,
                    m_hypergeometric: s.m_hypergeometric,
                    status: if ok { "pass" } else { "fail" },
                    error: None,
                }
            }
            Err(e) => {
                code = 1;
                NumericReport {
                    q,
                    alpha: f64::NAN,
                    beta: f64::NAN,
                    ratio: f64::NAN,
                    m: f64::NAN,
                    m_hypergeometric: f64::NAN,
                    status: "error",
                    error: Some(e.to_string()),
                }
            }
        };
        rows.push(row);
    }
    match cli.format {
        Format::Json => json(out, &rows)?,
        Format::Text => {
            for r in &rows {
                match &r.error {
                    Some(e) => writeln!(out, "ERROR numeric q={}: {e}", r.q)?,
                    None => writeln!(
                        out,
                        "{:<5} numeric q={}: alpha={:.12} beta={:.12e} period ratio={:.12} m={:.12} F(alpha)/F(beta)={:.12}",
                        r.status.to_uppercase(),
                        r.q,
                        r.alpha,
                        r.beta,
                        r.ratio,
                        r.m,
                        r.m_hypergeometric
                    )?,
                }
            }
        }
    }
    Ok(code)
}
