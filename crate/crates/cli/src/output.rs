use std::fmt;
use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;
use twist_torsion::algebra::{MPoly, Var};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or an output format the command does not offer; exit 2.
    Usage(String),
    /// A computation error or a failed verification; exit 1.
    Compute(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(s) | Failure::Compute(s) => write!(f, "{s}"),
        }
    }
}

impl From<twist_torsion::Error> for Failure {
    fn from(e: twist_torsion::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

pub fn unsupported(format: Format, command: &str) -> Failure {
    let name = format!("{format:?}").to_lowercase();
    Failure::Usage(format!("`{command}` has no {name} output"))
}

pub fn json<T: Serialize>(x: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(x).map_err(|e| Failure::Compute(e.to_string()))?;
    println!("{text}");
    Ok(())
}

pub fn csv<T: Serialize>(rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for r in rows {
        w.serialize(r).map_err(|e| Failure::Compute(e.to_string()))?;
    }
    w.flush().map_err(|e| Failure::Compute(e.to_string()))
}

#[derive(Serialize)]
pub struct CoefficientRow {
    pub degree: usize,
    pub coefficient: String,
}

/// Coefficients of `p` in `v`, lowest degree first, zero rows skipped.
pub fn coefficient_rows(p: &MPoly, v: Var) -> Vec<CoefficientRow> {
    p.coefficients_in(v)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(degree, c)| CoefficientRow {
            degree,
            coefficient: c.to_string(),
        })
        .collect()
}

/// Progress and verification notes, kept off the data stream.
pub fn note(msg: &str) {
    let _ = writeln!(std::io::stderr(), "{msg}");
}

pub fn verified(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        note(&format!("verified: {what}"));
        Ok(())
    } else {
        Err(Failure::Compute(format!("verification failed: {what}")))
    }
}
