//! Signed monomials `±q^e`.

use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::rational::{format_exponent, lcm, Exponent, Rational};
use crate::series::QSeries;

/// A term `±q^e`: the argument type of theta functions, q-Pochhammer
/// products and bilateral sums.
///
/// [`SignedMonomial::new`] enforces `e >= 0`. Theta arguments may legitimately
/// have a negative exponent (`f(q^-1, q^11)`), so [`SignedMonomial::laurent`]
/// skips that check; consumers that need `e >= 0` validate it themselves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedMonomial {
    negative: bool,
    exponent: Exponent,
}

#[allow(clippy::should_implement_trait)]
impl SignedMonomial {
    pub fn new(negative: bool, exponent: Exponent) -> Result<Self> {
        if exponent < Exponent::zero() {
            return Err(SeriesError::Domain(alloc::format!("monomial exponent {exponent} must be non-negative")));
        }
        Ok(SignedMonomial { negative, exponent })
    }

    pub fn laurent(negative: bool, exponent: Exponent) -> Self {
        SignedMonomial { negative, exponent }
    }

    /// `+q^e`.
    pub fn q(exponent: Exponent) -> Self {
        Self::laurent(false, exponent)
    }

    /// `-q^e`.
    pub fn neg_q(exponent: Exponent) -> Self {
        Self::laurent(true, exponent)
    }

    pub fn q_int(e: i64) -> Self {
        Self::q(Exponent::from_integer(e))
    }

    pub fn neg_q_int(e: i64) -> Self {
        Self::neg_q(Exponent::from_integer(e))
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn exponent(&self) -> Exponent {
        self.exponent
    }

    pub fn coefficient(&self) -> Rational {
        if self.negative {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    pub fn mul(self, other: SignedMonomial) -> SignedMonomial {
        SignedMonomial { negative: self.negative != other.negative, exponent: self.exponent + other.exponent }
    }

    pub fn recip(self) -> SignedMonomial {
        SignedMonomial { negative: self.negative, exponent: -self.exponent }
    }

    pub fn div(self, other: SignedMonomial) -> SignedMonomial {
        self.mul(other.recip())
    }

    pub fn pow(self, k: i64) -> SignedMonomial {
        SignedMonomial {
            negative: self.negative && k.rem_euclid(2) == 1,
            exponent: self.exponent * Exponent::from_integer(k),
        }
    }

    pub fn negated(self) -> SignedMonomial {
        SignedMonomial { negative: !self.negative, exponent: self.exponent }
    }

    /// The smallest granularity on which this monomial lives.
    pub fn granularity(&self) -> i64 {
        *self.exponent.denom()
    }

    /// As a series on the lattice `(1/den)Z` refined as needed.
    pub fn to_series(&self, den: i64, order: i64) -> Result<QSeries> {
        QSeries::monomial(self.coefficient(), self.exponent, lcm(den, self.granularity()), order)
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.exponent.is_zero() {
            return write!(f, "1");
        }
        if self.exponent.is_integer() && *self.exponent.numer() >= 0 {
            write!(f, "q^{}", self.exponent.numer())
        } else {
            write!(f, "q^({})", format_exponent(&self.exponent))
        }
    }
}
