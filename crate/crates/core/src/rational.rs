//! Coefficient and exponent number types.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// Exact coefficient field of every series.
pub type Rational = BigRational;

/// Exponents are small rationals: multiples of `1/D` for a modest `D`.
pub type Exponent = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn exp(n: i64, d: i64) -> Exponent {
    Exponent::new(n, d)
}

pub fn exp_int(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

/// The rational n-th root of `c`, if it exists.
///
/// For even `n` only non-negative `c` qualify and the non-negative root is
/// returned; for odd `n` the real root is returned.
pub fn exact_root(c: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if n == 1 {
        return Some(c.clone());
    }
    if c.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let num = int_root(c.numer(), n)?;
    let den = int_root(c.denom(), n)?;
    Some(Rational::new(num, den))
}

fn int_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `p/q` or `p` for integers.
pub fn format_exponent(e: &Exponent) -> String {
    let mut s = String::new();
    if e.is_integer() {
        let _ = write!(s, "{}", e.numer());
    } else {
        let _ = write!(s, "{}/{}", e.numer(), e.denom());
    }
    s
}

pub fn is_unit(c: &Rational) -> bool {
    c.abs().is_one()
}

pub fn is_zero(c: &Rational) -> bool {
    c.is_zero()
}
