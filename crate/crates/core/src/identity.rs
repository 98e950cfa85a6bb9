//! Checking an identity `lhs = rhs` coefficient by coefficient.

use alloc::vec::Vec;

use crate::expr::{Evaluator, Expr, ExprError};
use crate::rational::{Exponent, Rational};
use crate::series::Comparison;

pub use crate::expr::Bindings;

/// Working precision beyond the requested order, tried in turn until the
/// difference is known far enough.
const GUARDS: [i64; 4] = [8, 24, 56, 120];

/// The first coefficient where the two sides disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Index of the failing instantiation.
    pub instance: usize,
    pub exponent: Exponent,
    /// Coefficient of `lhs - rhs` at `exponent`.
    pub difference: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// The smallest order reached over all instantiations.
    pub order_checked: Exponent,
    pub failure: Option<Failure>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares both sides below `q^order` at every instantiation.
///
/// An empty instantiation list checks the identity once without bindings.
/// Checking stops at the first failing instantiation.
pub fn check_identity(lhs: &Expr, rhs: &Expr, instances: &[Bindings], order: i64) -> Result<Outcome, ExprError> {
    let empty = [Bindings::new()];
    let instances = if instances.is_empty() { &empty[..] } else { instances };
    let target = Exponent::from_integer(order);
    let mut reached: Vec<Exponent> = Vec::with_capacity(instances.len());
    for (i, b) in instances.iter().enumerate() {
        let mut ev = Evaluator::new(b);
        let mut checked = Exponent::from_integer(i64::MIN / 4);
        for g in GUARDS {
            let work = Exponent::from_integer(order + g);
            let l = ev.series(lhs, work)?;
            let r = ev.series(rhs, work)?;
            match l.eq_to_order(&r, target) {
                Comparison::Differ { exponent, difference, checked } => {
                    return Ok(Outcome {
                        order_checked: checked,
                        failure: Some(Failure { instance: i, exponent, difference }),
                    });
                }
                Comparison::Equal { checked: c } => {
                    checked = c;
                    if c >= target {
                        break;
                    }
                }
            }
        }
        reached.push(checked);
    }
    Ok(Outcome { order_checked: reached.into_iter().min().unwrap_or(target), failure: None })
}
