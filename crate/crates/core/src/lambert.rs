//! Lambert-type sums, bilateral sums and Eisenstein series.
//!
//! Every denominator is expanded with
//! `1/(1 - w)^p = sum_{m >= 0} C(m+p-1, p-1) w^m`, which is only a formal
//! power series when `w` has positive exponent. Bilateral sums therefore
//! rewrite each negative-index term so that its expansion variable has
//! positive exponent before expanding:
//!
//! * `x q^(-Mm) / (1 - x q^(-Mm))^p = (-1)^p w^(p-1) / (1 - w)^p`
//!   with `w = x^-1 q^(Mm)`;
//! * `z^(-m) / (1 - a q^(-Mm)) = -z^(-m) sum_{j >= 1} (a^-1 q^(Mm))^j`.
//!
//! Sums are accumulated one index block at a time and stop once a block's
//! smallest exponent reaches the truncation order; that smallest exponent is
//! checked to grow with `|n|`.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::monomial::SignedMonomial;
use crate::rational::{binomial, exp_int, lcm, Exponent, Rational};
use crate::series::{Comparison, QSeries};

fn units(e: Exponent, den: i64) -> i64 {
    let s = e * Exponent::from_integer(den);
    debug_assert!(s.is_integer());
    s.to_integer()
}

fn sign_pow(negative: bool, k: i64) -> i64 {
    if negative && k.rem_euclid(2) == 1 {
        -1
    } else {
        1
    }
}

/// `sum_{n >= start} n^weight q^(a n + b) / (1 - s q^(c n + d))^p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambertSpec {
    pub start: i64,
    pub weight: u32,
    pub num_slope: Exponent,
    pub num_offset: Exponent,
    /// `s`, either `1` or `-1`.
    pub den_sign: i64,
    pub den_slope: Exponent,
    pub den_offset: Exponent,
    pub power: u32,
}

impl LambertSpec {
    /// `sum_{n >= 0} q^(a n + b) / (1 - s q^(c n + d))^p`.
    pub fn new(a: Exponent, b: Exponent, s: i64, c: Exponent, d: Exponent, p: u32) -> Self {
        LambertSpec {
            start: 0,
            weight: 0,
            num_slope: a,
            num_offset: b,
            den_sign: s,
            den_slope: c,
            den_offset: d,
            power: p,
        }
    }

    /// `sum_{n >= 1} n^w q^n / (1 - q^n)`.
    pub fn divisor(w: u32) -> Self {
        LambertSpec {
            start: 1,
            weight: w,
            num_slope: exp_int(1),
            num_offset: exp_int(0),
            den_sign: 1,
            den_slope: exp_int(1),
            den_offset: exp_int(0),
            power: 1,
        }
    }

    fn granularity(&self) -> i64 {
        [self.num_slope, self.num_offset, self.den_slope, self.den_offset].iter().fold(1, |g, e| lcm(g, *e.denom()))
    }

    fn validate(&self) -> Result<()> {
        if self.den_sign != 1 && self.den_sign != -1 {
            return Err(SeriesError::Domain(format!("denominator sign {} must be 1 or -1", self.den_sign)));
        }
        if self.power == 0 {
            return Err(SeriesError::Domain("denominator power must be positive".into()));
        }
        if self.num_slope <= Exponent::zero() {
            return Err(SeriesError::Divergent(format!(
                "numerator exponent slope {} must be positive",
                self.num_slope
            )));
        }
        if self.den_slope < Exponent::zero() {
            return Err(SeriesError::Divergent(format!(
                "denominator exponent slope {} must be non-negative",
                self.den_slope
            )));
        }
        Ok(())
    }
}

/// Adds `coef * w^first_power / (1 - w)^p` where `w = sign q^step`
/// (`step > 0`, in lattice units), starting at lattice key `base`.
fn add_geometric(out: &mut QSeries, base: i64, coef: &BigInt, w_negative: bool, step: i64, p: u32, first_power: i64) {
    debug_assert!(step > 0);
    let trunc = out.trunc_units();
    let mut m = 0i64;
    loop {
        let power = first_power + m;
        let e = base + power * step;
        if e >= trunc {
            break;
        }
        let c = binomial((m + p as i64 - 1) as u64, (p - 1) as u64) * coef * sign_pow(w_negative, power);
        out.add_at(e, Rational::from_integer(c));
        m += 1;
    }
}

pub fn unilateral_lambert(spec: &LambertSpec, order: i64) -> Result<QSeries> {
    spec.validate()?;
    let den = spec.granularity();
    let trunc = order * den;
    let mut out = QSeries::zero_units(den, trunc);
    let p = spec.power;
    let mut n = spec.start;
    loop {
        let nn = Exponent::from_integer(n);
        let base = units(spec.num_slope * nn + spec.num_offset, den);
        if base >= trunc {
            break;
        }
        let weight = num_traits::pow(BigInt::from(n), spec.weight as usize);
        if weight.is_zero() {
            n += 1;
            continue;
        }
        let step = units(spec.den_slope * nn + spec.den_offset, den);
        if step < 0 {
            return Err(SeriesError::Divergent(format!("denominator exponent negative at n = {n}")));
        }
        if step == 0 {
            if spec.den_sign == 1 {
                return Err(SeriesError::Pole(format!("denominator 1 - q^0 at n = {n}")));
            }
            let c = Rational::new(weight, num_traits::pow(BigInt::from(2), p as usize));
            out.add_at(base, c);
        } else {
            add_geometric(&mut out, base, &weight, spec.den_sign == -1, step, p, 0);
        }
        n += 1;
    }
    Ok(out)
}

/// `sum_{n in Z} x q^(Mn) / (1 - x q^(Mn))^p` for `p >= 2`.
///
/// `p = 1` has no formal expansion: its negative-index terms tend to `-1`.
pub fn bilateral_lambert(x: SignedMonomial, modulus: i64, p: u32, order: i64) -> Result<QSeries> {
    let e = x.exponent();
    let m_exp = Exponent::from_integer(modulus);
    if modulus <= 0 || e < Exponent::zero() || e >= m_exp {
        return Err(SeriesError::Domain(format!("need 0 <= exponent({x}) < {modulus}")));
    }
    if e.is_zero() && !x.is_negative() {
        return Err(SeriesError::Pole(format!("x = {x} makes the n = 0 denominator vanish")));
    }
    if p < 2 {
        return Err(SeriesError::Divergent(format!("bilateral Lambert sum with power {p} does not converge formally")));
    }
    let den = x.granularity();
    let trunc = order * den;
    let ex = units(e, den);
    let mu = modulus * den;
    let mut out = QSeries::zero_units(den, trunc);
    let one = BigInt::one();

    // n >= 0: sum_j C(j+p-1, p-1) (x q^(Mn))^(j+1)
    let mut n = 0i64;
    let mut last_min = i64::MIN;
    loop {
        let step = ex + mu * n;
        if step >= trunc {
            break;
        }
        assert!(step > last_min, "block minima must increase");
        last_min = step;
        if step == 0 {
            // x = -1: x / (1 - x)^p
            let c = Rational::new(-BigInt::one(), num_traits::pow(BigInt::from(2), p as usize));
            out.add_at(0, c);
        } else {
            add_geometric(&mut out, 0, &one, x.is_negative(), step, p, 1);
        }
        n += 1;
    }

    // n = -m: (-1)^p w^(p-1) / (1 - w)^p, w = x^-1 q^(Mm)
    let sign = if p.is_multiple_of(2) { one.clone() } else { -one.clone() };
    let mut m = 1i64;
    let mut last_min = i64::MIN;
    loop {
        let step = mu * m - ex;
        let block_min = step * (p as i64 - 1);
        if block_min >= trunc {
            break;
        }
        assert!(block_min > last_min, "block minima must increase");
        last_min = block_min;
        add_geometric(&mut out, 0, &sign, x.is_negative(), step, p, p as i64 - 1);
        m += 1;
    }
    Ok(out)
}

/// `sum_{n in Z} z^n / (1 - a q^(Mn))`.
pub fn bilateral_ratio(z: SignedMonomial, a: SignedMonomial, modulus: i64, order: i64) -> Result<QSeries> {
    let m_exp = Exponent::from_integer(modulus);
    if modulus <= 0 || z.exponent() <= Exponent::zero() || z.exponent() >= m_exp {
        return Err(SeriesError::Divergent(format!("need 0 < exponent(z) < {modulus}, got z = {z}")));
    }
    if a.exponent() < Exponent::zero() || a.exponent() >= m_exp {
        return Err(SeriesError::Domain(format!("need 0 <= exponent(a) < {modulus}, got a = {a}")));
    }
    if a.exponent().is_zero() && !a.is_negative() {
        return Err(SeriesError::Pole(format!("a = {a} makes the n = 0 denominator vanish")));
    }
    let den = lcm(z.granularity(), a.granularity());
    let trunc = order * den;
    let ez = units(z.exponent(), den);
    let ea = units(a.exponent(), den);
    let mu = modulus * den;
    let mut out = QSeries::zero_units(den, trunc);

    // n >= 0: z^n sum_{j >= 0} (a q^(Mn))^j
    let mut n = 0i64;
    loop {
        let base = ez * n;
        if base >= trunc {
            break;
        }
        let zs = BigInt::from(sign_pow(z.is_negative(), n));
        let step = ea + mu * n;
        if step == 0 {
            out.add_at(base, Rational::new(zs, BigInt::from(2)));
        } else {
            add_geometric(&mut out, base, &zs, a.is_negative(), step, 1, 0);
        }
        n += 1;
    }

    // n = -m: -z^(-m) sum_{j >= 1} (a^-1 q^(Mm))^j
    let mut m = 1i64;
    let mut last_min = i64::MIN;
    loop {
        let step = mu * m - ea;
        let base = -ez * m;
        let block_min = base + step;
        if block_min >= trunc {
            break;
        }
        assert!(block_min > last_min, "block minima must increase");
        last_min = block_min;
        let zs = BigInt::from(-sign_pow(z.is_negative(), m));
        add_geometric(&mut out, base, &zs, a.is_negative(), step, 1, 1);
        m += 1;
    }
    Ok(out)
}

/// Bernoulli numbers `B_0..=B_k` with `B_1 = -1/2`, from
/// `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(k: u32) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(k as usize + 1);
    b.push(Rational::one());
    for m in 1..=k as u64 {
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(m + 1, j as u64)) * bj;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli(k: u32) -> Rational {
    bernoulli_numbers(k).pop().expect("at least B_0")
}

/// `E_w = 1 - (2w / B_w) sum_{n >= 1} n^(w-1) q^n / (1 - q^n)` for even `w >= 2`.
///
/// `E_2 = L`, `E_4 = M`, `E_6 = N`.
pub fn eisenstein_e(weight: u32, order: i64) -> Result<QSeries> {
    if weight < 2 || weight % 2 == 1 {
        return Err(SeriesError::Domain(format!("Eisenstein weight {weight} must be even and >= 2")));
    }
    let b = bernoulli(weight);
    let factor = Rational::from_integer(BigInt::from(2 * weight)) / b;
    let sum = unilateral_lambert(&LambertSpec::divisor(weight - 1), order)?;
    Ok(&QSeries::one(order) - &sum.scale(&factor))
}

/// `L_n = L(q^n)`.
pub fn eisenstein_l(n: i64, order: i64) -> Result<QSeries> {
    if n <= 0 {
        return Err(SeriesError::Domain(format!("L_n needs n > 0, got {n}")));
    }
    let inner = (order + n - 1) / n;
    Ok(eisenstein_e(2, inner)?.substitute(exp_int(n))?.truncate(exp_int(order)))
}

/// `sum_{n >= 1} q^n / (1 + q^n)^2` against
/// `sum n q^n / (1 - q^n) - 4 sum n q^(2n) / (1 - q^(2n))`.
pub fn lambert_reorganize_check(order: i64) -> Result<Comparison> {
    let lhs = unilateral_lambert(
        &LambertSpec { start: 1, ..LambertSpec::new(exp_int(1), exp_int(0), -1, exp_int(1), exp_int(0), 2) },
        order,
    )?;
    let d1 = unilateral_lambert(&LambertSpec::divisor(1), order)?;
    let d2 = d1.substitute(exp_int(2))?.truncate(exp_int(order));
    let rhs = &d1 - &d2.scale(&Rational::from_integer(BigInt::from(4)));
    Ok(lhs.eq_to_order(&rhs, exp_int(order)))
}
