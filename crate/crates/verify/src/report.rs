//! Verification reports and their text and JSON renderings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::registry::Expected;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Evaluation broke before a comparison was possible.
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        })
    }
}

/// Outcome of checking one record. Rationals are rendered as strings such
/// as `"-3/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    #[serde(rename = "ref")]
    pub reference: String,
    pub quote: String,
    /// Order in `q` up to which the two sides are known to agree.
    pub order: String,
    pub status: Status,
    pub first_fail_exponent: Option<String>,
    /// Coefficient of `lhs - rhs` at the first failing exponent.
    pub discrepancy: Option<String>,
    pub elapsed_ms: u64,
    pub expected: Expected,
    pub error: Option<String>,
}

impl VerificationReport {
    /// Whether this report leaves the run green.
    pub fn acceptable(&self) -> bool {
        self.status == Status::Pass || self.expected == Expected::Flagged
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<5} {:<18}", self.status, self.id)?;
        match self.status {
            Status::Pass => write!(f, " to q^{}", self.order)?,
            Status::Fail => write!(
                f,
                " at q^{}: lhs - rhs = {} (checked to q^{})",
                self.first_fail_exponent.as_deref().unwrap_or("?"),
                self.discrepancy.as_deref().unwrap_or("?"),
                self.order
            )?,
            Status::Error => write!(f, " {}", self.error.as_deref().unwrap_or(""))?,
        }
        if self.expected == Expected::Flagged {
            f.write_str(" [flagged as printed]")?;
        }
        write!(f, " ({} ms)", self.elapsed_ms)
    }
}

/// Counts per status plus the number of unacceptable reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub flagged: usize,
    pub broken: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    let mut s = Summary::default();
    for r in reports {
        match r.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::Error => s.errors += 1,
        }
        if r.expected == Expected::Flagged {
            s.flagged += 1;
        }
        if !r.acceptable() {
            s.broken += 1;
        }
    }
    s
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} passed, {} failed, {} errors; {} flagged as printed; {} unexpected",
            self.passed, self.failed, self.errors, self.flagged, self.broken
        )
    }
}
