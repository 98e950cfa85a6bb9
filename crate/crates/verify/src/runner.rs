//! Running records through the identity checker.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use qseries::{check_identity, Expr, Outcome};
use rayon::prelude::*;

use crate::registry::{IdentityRecord, Registry};
use crate::report::{Status, VerificationReport};

/// Checks `rec` at its own order, or at `order` when given.
pub fn verify(rec: &IdentityRecord, order: Option<i64>) -> VerificationReport {
    verify_sides(rec, &rec.lhs, &rec.rhs, order)
}

/// Like [`verify`] with the two sides replaced.
pub fn verify_sides(rec: &IdentityRecord, lhs: &Expr, rhs: &Expr, order: Option<i64>) -> VerificationReport {
    let n = order.unwrap_or(rec.order);
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| check_identity(lhs, rhs, &rec.instances, n)));
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut report = VerificationReport {
        id: rec.id.clone(),
        reference: rec.reference.clone(),
        quote: rec.quote.clone(),
        order: n.to_string(),
        status: Status::Error,
        first_fail_exponent: None,
        discrepancy: None,
        elapsed_ms,
        expected: rec.expected,
        error: None,
    };
    match result {
        Ok(Ok(Outcome { order_checked, failure })) => {
            report.order = order_checked.to_string();
            match failure {
                None if order_checked >= qseries::rational::exp_int(n) => report.status = Status::Pass,
                None => {
                    report.error = Some(format!("precision ran out: only agreed below q^{order_checked}"));
                }
                Some(f) => {
                    report.status = Status::Fail;
                    report.first_fail_exponent = Some(f.exponent.to_string());
                    report.discrepancy = Some(f.difference.to_string());
                    if rec.instances.len() > 1 {
                        report.error = Some(format!("instantiation {}", f.instance));
                    }
                }
            }
        }
        Ok(Err(e)) => report.error = Some(e.to_string()),
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            report.error = Some(format!("internal error: {msg}"));
        }
    }
    report
}

/// Checks every record whose id contains `filter`, in parallel, sorted by id.
pub fn verify_all(registry: &Registry, order: Option<i64>, filter: Option<&str>) -> Vec<VerificationReport> {
    let mut reports: Vec<VerificationReport> = registry
        .records()
        .par_iter()
        .filter(|r| filter.is_none_or(|f| r.id.contains(f)))
        .map(|r| verify(r, order))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}
