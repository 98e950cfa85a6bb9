use alloc::string::String;
use core::fmt;

use crate::rational::Exponent;

/// Failures of exact series arithmetic and of the constructions built on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesError {
    /// An exponent is not a multiple of `1/granularity`.
    Granularity { exponent: Exponent, granularity: i64 },
    /// Inverting a series that is zero to its known precision.
    DivisionByZero,
    /// The leading coefficient has no rational n-th root.
    AlgebraicRoot { index: u32 },
    /// An argument outside the domain of the operation.
    Domain(String),
    /// A coefficient was requested at or beyond the truncation order.
    Precision { exponent: Exponent, order: Exponent },
    /// A q-Pochhammer product contains the factor `1 - 1`.
    ZeroProduct,
    /// A Lambert denominator vanishes identically.
    Pole(String),
    /// The requested sum has no formal power series expansion.
    Divergent(String),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::Granularity { exponent, granularity } => {
                write!(f, "exponent {exponent} is not representable at granularity {granularity}")
            }
            SeriesError::DivisionByZero => write!(f, "division by a series that is zero to its precision"),
            SeriesError::AlgebraicRoot { index } => {
                write!(f, "leading coefficient is not a perfect {index}-th power of a rational")
            }
            SeriesError::Domain(msg) => write!(f, "domain error: {msg}"),
            SeriesError::Precision { exponent, order } => {
                write!(f, "coefficient at q^{exponent} is beyond the truncation order {order}")
            }
            SeriesError::ZeroProduct => write!(f, "product contains a vanishing factor (1 - 1)"),
            SeriesError::Pole(msg) => write!(f, "pole: {msg}"),
            SeriesError::Divergent(msg) => write!(f, "divergent sum: {msg}"),
        }
    }
}

impl core::error::Error for SeriesError {}

pub type Result<T> = core::result::Result<T, SeriesError>;
