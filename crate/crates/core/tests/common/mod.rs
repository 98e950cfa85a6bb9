//! Brute-force reference computations. Nothing here calls into the series
//! machinery beyond building a `QSeries` from finished coefficients.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qseries::{QSeries, SignedMonomial};

pub type Poly = BTreeMap<i64, BigRational>;

/// `sum_{d | n} d^k` by trial division.
pub fn sigma(k: u32, n: u64) -> BigInt {
    (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| num_traits::pow(BigInt::from(d), k as usize)).sum()
}

/// Coefficient of `q^n` in `(q; q)_inf`: `(-1)^j` at `n = j(3j-1)/2`, else 0.
pub fn pentagonal(n: i64) -> i64 {
    for j in -200i64..=200 {
        if j * (3 * j - 1) / 2 == n {
            return if j % 2 == 0 { 1 } else { -1 };
        }
    }
    0
}

fn signed_power(m: SignedMonomial, k: i64) -> (i64, BigRational) {
    let e = m.exponent() * num_rational::Ratio::from_integer(k);
    assert!(e.is_integer(), "oracle handles integer exponents only");
    let c = if m.is_negative() && k.rem_euclid(2) == 1 { -BigRational::one() } else { BigRational::one() };
    (e.to_integer(), c)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (i, x) in a {
        for (j, y) in b {
            let v = out.entry(i + j).or_insert_with(BigRational::zero);
            *v += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `(1 - c q^e)^p` as a Laurent polynomial.
fn one_minus_pow(e: i64, c: &BigRational, p: u32) -> Poly {
    let mut base = Poly::new();
    *base.entry(0).or_insert_with(BigRational::zero) += BigRational::one();
    *base.entry(e).or_insert_with(BigRational::zero) -= c.clone();
    base.retain(|_, v| !v.is_zero());
    let mut acc: Poly = [(0, BigRational::one())].into_iter().collect();
    for _ in 0..p {
        acc = poly_mul(&acc, &base);
    }
    acc
}

/// Laurent expansion of `num / den` below `q^order` by long division.
pub fn divide(num: &Poly, den: &Poly, order: i64) -> Poly {
    let (&v, d0) = den.iter().next().expect("nonzero denominator");
    let shifted: Vec<(i64, BigRational)> = den.iter().map(|(k, c)| (k - v, c.clone())).collect();
    let start = match num.keys().next() {
        Some(&k) => k - v,
        None => return Poly::new(),
    };
    let mut r: BTreeMap<i64, BigRational> = BTreeMap::new();
    for k in start..order {
        let mut acc = num.get(&(k + v)).cloned().unwrap_or_else(BigRational::zero);
        for (j, dj) in shifted.iter().skip(1) {
            if let Some(rv) = r.get(&(k - j)) {
                acc -= dj * rv;
            }
        }
        let val = acc / d0;
        if !val.is_zero() {
            r.insert(k, val);
        }
    }
    r
}

fn to_series(p: Poly, order: i64) -> QSeries {
    QSeries::from_units(1, order, p)
}

fn add_into(acc: &mut Poly, p: Poly) {
    for (k, c) in p {
        *acc.entry(k).or_insert_with(BigRational::zero) += c;
    }
    acc.retain(|_, v| !v.is_zero());
}

/// Partial sum over `|n| <= range` of `x q^(Mn) / (1 - x q^(Mn))^p`, every
/// term expanded as a rational function.
pub fn bilateral_lambert_partial(x: SignedMonomial, modulus: i64, p: u32, range: i64, order: i64) -> QSeries {
    let mut acc = Poly::new();
    for n in -range..=range {
        let (ex, cx) = signed_power(x, 1);
        let e = ex + modulus * n;
        let num: Poly = [(e, cx.clone())].into_iter().collect();
        let den = one_minus_pow(e, &cx, p);
        add_into(&mut acc, divide(&num, &den, order));
    }
    to_series(acc, order)
}

/// Partial sum over `|n| <= range` of `z^n / (1 - a q^(Mn))`.
pub fn bilateral_ratio_partial(z: SignedMonomial, a: SignedMonomial, modulus: i64, range: i64, order: i64) -> QSeries {
    let mut acc = Poly::new();
    for n in -range..=range {
        let (ez, cz) = signed_power(z, n);
        let (ea, ca) = signed_power(a, 1);
        let num: Poly = [(ez, cz)].into_iter().collect();
        let den = one_minus_pow(ea + modulus * n, &ca, 1);
        add_into(&mut acc, divide(&num, &den, order));
    }
    to_series(acc, order)
}

/// `prod (1 - c_k q^(e_k))` by repeated multiplication, each factor given
/// as `(negative, exponent)` meaning `1 - (±q^e)`.
pub fn naive_product(factors: &[(bool, i64)], order: i64) -> QSeries {
    let mut acc: Poly = [(0, BigRational::one())].into_iter().collect();
    for &(neg, e) in factors {
        let c = if neg { -BigRational::one() } else { BigRational::one() };
        acc = poly_mul(&acc, &one_minus_pow(e, &c, 1));
        acc.retain(|k, _| *k < order);
    }
    to_series(acc, order)
}
