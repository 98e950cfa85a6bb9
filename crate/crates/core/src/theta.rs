//! q-Pochhammer products and Ramanujan theta functions.
//!
//! The general theta function is
//!
//! ```text
//! f(r, s) = sum_{n in Z} r^(n(n+1)/2) s^(n(n-1)/2) = (-r; rs)_inf (-s; rs)_inf (rs; rs)_inf
//! ```
//!
//! [`theta_product`] expands the product side and [`theta_sum`] the sum side.
//! The two are coded independently so that comparing them is a real check of
//! the Jacobi triple product rather than a restatement of one routine.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Result, SeriesError};
use crate::monomial::SignedMonomial;
use crate::rational::{exp_int, lcm, Exponent, Rational};
use crate::series::QSeries;

fn units(e: Exponent, den: i64) -> i64 {
    let s = e * Exponent::from_integer(den);
    debug_assert!(s.is_integer());
    s.to_integer()
}

/// `(b; q^step)_inf = prod_{k >= 0} (1 - b q^(step k))` to order `q^order`.
pub fn pochhammer_inf(b: SignedMonomial, step: Exponent, order: i64) -> Result<QSeries> {
    if step <= Exponent::zero() {
        return Err(SeriesError::Domain(alloc::format!("step {step} must be positive")));
    }
    pochhammer_signed(b, SignedMonomial::q(step), order)
}

/// `(b; base)_inf = prod_{k >= 0} (1 - b base^k)` for a signed base `±q^t`.
///
/// Factors whose monomial lies at or beyond `q^order` are `1 + O(q^order)`
/// and are skipped.
pub fn pochhammer_signed(b: SignedMonomial, base: SignedMonomial, order: i64) -> Result<QSeries> {
    if base.exponent() <= Exponent::zero() {
        return Err(SeriesError::Domain(alloc::format!("q-Pochhammer base {base} must have positive exponent")));
    }
    if b.exponent() < Exponent::zero() {
        return Err(SeriesError::Domain(alloc::format!("q-Pochhammer parameter {b} must have non-negative exponent")));
    }
    let den = lcm(b.granularity(), base.granularity());
    let trunc = order * den;
    let len = trunc.max(0) as usize;
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); len];
    if len > 0 {
        coeffs[0] = BigInt::one();
    }
    let start = units(b.exponent(), den);
    let step = units(base.exponent(), den);
    let mut k = 0i64;
    loop {
        let t = start + k * step;
        if t >= trunc {
            break;
        }
        // factor 1 + c q^t
        let negative = b.is_negative() != (base.is_negative() && k % 2 == 1);
        let c_positive = negative;
        if t == 0 {
            if !c_positive {
                return Err(SeriesError::ZeroProduct);
            }
            for v in coeffs.iter_mut() {
                *v *= 2;
            }
        } else {
            let t = t as usize;
            for i in (t..len).rev() {
                if coeffs[i - t].is_zero() {
                    continue;
                }
                let (lo, hi) = coeffs.split_at_mut(i);
                if c_positive {
                    hi[0] += &lo[i - t];
                } else {
                    hi[0] -= &lo[i - t];
                }
            }
        }
        k += 1;
    }
    Ok(QSeries::from_units(
        den,
        trunc,
        coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as i64, Rational::from_integer(c))),
    ))
}

/// The pair `(r, s)` of a theta value `f(r, s)`; requires `|rs| < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaArgs {
    pub r: SignedMonomial,
    pub s: SignedMonomial,
}

impl ThetaArgs {
    pub fn new(r: SignedMonomial, s: SignedMonomial) -> Result<Self> {
        if r.exponent() + s.exponent() <= Exponent::zero() {
            return Err(SeriesError::Domain(alloc::format!(
                "theta arguments ({r}, {s}) need a positive total exponent"
            )));
        }
        Ok(ThetaArgs { r, s })
    }

    pub fn ints(r: i64, s: i64) -> Self {
        let m = |e: i64| {
            if e < 0 {
                SignedMonomial::neg_q_int(-e)
            } else {
                SignedMonomial::q_int(e)
            }
        };
        Self::new(m(r), m(s)).expect("positive total exponent")
    }

    fn granularity(&self) -> i64 {
        lcm(self.r.granularity(), self.s.granularity())
    }
}

/// Product side of `f(r, s)`.
///
/// A negative exponent is first moved out with `f(a, b) = a f(a^2 b, 1/a)`.
/// A factor `(1 - 1)` makes the value exactly zero (`f(-1, b) = 0`).
pub fn theta_product(args: ThetaArgs, order: i64) -> Result<QSeries> {
    let ThetaArgs { mut r, mut s } = ThetaArgs::new(args.r, args.s)?;
    let mut pre = SignedMonomial::q_int(0);
    loop {
        if r.exponent() < Exponent::zero() {
            pre = pre.mul(r);
            let next_r = r.mul(r).mul(s);
            s = r.recip();
            r = next_r;
        } else if s.exponent() < Exponent::zero() {
            pre = pre.mul(s);
            let next_s = s.mul(s).mul(r);
            r = s.recip();
            s = next_s;
        } else {
            break;
        }
    }
    let inner_order = (Exponent::from_integer(order) - pre.exponent()).ceil().to_integer();
    let rs = r.mul(s);
    let den = args.granularity();
    let factors = [
        pochhammer_signed(r.negated(), rs, inner_order),
        pochhammer_signed(s.negated(), rs, inner_order),
        pochhammer_signed(rs, rs, inner_order),
    ];
    let mut acc = QSeries::one(inner_order).refine(den)?;
    for f in factors {
        match f {
            Ok(p) => acc = &acc * &p,
            Err(SeriesError::ZeroProduct) => return Ok(QSeries::zero(den, exp_int(order))),
            Err(e) => return Err(e),
        }
    }
    Ok(acc.mul_monomial(&pre.coefficient(), pre.exponent()).truncate(exp_int(order)))
}

/// Sum side of `f(r, s)`: every `n` whose exponent lies below `q^order`.
pub fn theta_sum(args: ThetaArgs, order: i64) -> Result<QSeries> {
    let ThetaArgs { r, s } = ThetaArgs::new(args.r, args.s)?;
    let den = args.granularity();
    let two = Exponent::from_integer(2);
    let a = (r.exponent() + s.exponent()) / two;
    let b = (r.exponent() - s.exponent()) / two;
    let limit = Exponent::from_integer(order);
    let expo = |n: i64| {
        let n = Exponent::from_integer(n);
        a * n * n + b * n
    };
    let vertex = -b / (two * a);
    let n0 = vertex.floor().to_integer();
    let mut out = QSeries::zero_units(den, order * den);
    let mut add = |n: i64| {
        let tri_r = n * (n + 1) / 2;
        let tri_s = n * (n - 1) / 2;
        let flips = (r.is_negative() as i64) * tri_r + (s.is_negative() as i64) * tri_s;
        let c = if flips.rem_euclid(2) == 1 { -Rational::one() } else { Rational::one() };
        out.add_at(units(expo(n), den), c);
    };
    let mut n = n0;
    loop {
        let e = expo(n);
        if e >= limit {
            if Exponent::from_integer(n) > vertex {
                break;
            }
        } else {
            add(n);
        }
        n += 1;
    }
    let mut n = n0 - 1;
    loop {
        let e = expo(n);
        if e >= limit {
            if Exponent::from_integer(n) < vertex {
                break;
            }
        } else {
            add(n);
        }
        n -= 1;
    }
    Ok(out)
}

/// Classical specialisations of `f(r, s)` at argument `q^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedFn {
    /// `phi(q) = f(q, q)`
    Phi,
    /// `psi(q) = f(q, q^3)`
    Psi,
    /// `f(-q) = (q; q)_inf`, written `f_1`
    EulerF,
    /// `chi(-q) = (q; q^2)_inf`
    ChiNeg,
    /// `chi(q) = (-q; q^2)_inf`
    ChiPos,
    /// `phi(-q) = f_1^2 / f_2`
    PhiNeg,
    /// `psi(-q) = f_1 f_4 / f_2`
    PsiNeg,
    /// `f(q) = f_2^3 / (f_1 f_4)`
    FPlus,
}

impl NamedFn {
    pub const ALL: [NamedFn; 8] = [
        NamedFn::Phi,
        NamedFn::Psi,
        NamedFn::EulerF,
        NamedFn::ChiNeg,
        NamedFn::ChiPos,
        NamedFn::PhiNeg,
        NamedFn::PsiNeg,
        NamedFn::FPlus,
    ];
}

fn euler(k: Exponent, order: i64) -> Result<QSeries> {
    pochhammer_signed(SignedMonomial::q(k), SignedMonomial::q(k), order)
}

/// The named function at `q^k`, `k > 0`.
pub fn named(f: NamedFn, k: Exponent, order: i64) -> Result<QSeries> {
    if k <= Exponent::zero() {
        return Err(SeriesError::Domain(alloc::format!("argument exponent {k} must be positive")));
    }
    let m = SignedMonomial::q(k);
    let two = Exponent::from_integer(2);
    let four = Exponent::from_integer(4);
    match f {
        NamedFn::Phi => theta_product(ThetaArgs::new(m, m)?, order),
        NamedFn::Psi => theta_product(ThetaArgs::new(m, m.pow(3))?, order),
        NamedFn::EulerF => euler(k, order),
        NamedFn::ChiNeg => pochhammer_signed(m, m.pow(2), order),
        NamedFn::ChiPos => pochhammer_signed(m.negated(), m.pow(2), order),
        NamedFn::PhiNeg => {
            let f1 = euler(k, order)?;
            let f2 = euler(k * two, order)?;
            Ok(&f1.pow(2)? * &f2.inverse()?)
        }
        NamedFn::PsiNeg => {
            let f1 = euler(k, order)?;
            let f2 = euler(k * two, order)?;
            let f4 = euler(k * four, order)?;
            Ok(&(&f1 * &f4) * &f2.inverse()?)
        }
        NamedFn::FPlus => {
            let f1 = euler(k, order)?;
            let f2 = euler(k * two, order)?;
            let f4 = euler(k * four, order)?;
            Ok(&f2.pow(3)? * &(&f1 * &f4).inverse()?)
        }
    }
}

/// The named function at an arbitrary signed monomial, through its theta or
/// product definition (no eta-quotient shortcuts).
pub fn named_at(f: NamedFn, m: SignedMonomial, order: i64) -> Result<QSeries> {
    match f {
        NamedFn::Phi => theta_product(ThetaArgs::new(m, m)?, order),
        NamedFn::Psi => theta_product(ThetaArgs::new(m, m.pow(3))?, order),
        NamedFn::PhiNeg => theta_product(ThetaArgs::new(m.negated(), m.negated())?, order),
        NamedFn::PsiNeg => theta_product(ThetaArgs::new(m.negated(), m.negated().pow(3))?, order),
        NamedFn::EulerF => pochhammer_signed(m, m, order),
        NamedFn::ChiNeg => pochhammer_signed(m, m.pow(2), order),
        NamedFn::ChiPos => pochhammer_signed(m.negated(), m.pow(2), order),
        NamedFn::FPlus => theta_product(ThetaArgs::new(m, m.pow(2).negated())?, order),
    }
}

/// The level-ten quotients built from `f(q^j, q^(10-j))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GammaOmega {
    /// `f(q, q^9) / f(-q, -q^9)`
    Gamma1,
    /// `f(q^3, q^7) / f(-q^3, -q^7)`
    Gamma2,
    /// `f(q^4, q^6) / f(-q, -q^9)`
    Omega1,
    /// `q f(q^2, q^8) / f(-q^3, -q^7)`
    Omega2,
}

pub fn gamma_omega(which: GammaOmega, order: i64) -> Result<QSeries> {
    let t = |r: i64, s: i64| theta_product(ThetaArgs::ints(r, s), order);
    let (num, den) = match which {
        GammaOmega::Gamma1 => (t(1, 9)?, t(-1, -9)?),
        GammaOmega::Gamma2 => (t(3, 7)?, t(-3, -7)?),
        GammaOmega::Omega1 => (t(4, 6)?, t(-1, -9)?),
        GammaOmega::Omega2 => (t(2, 8)?, t(-3, -7)?),
    };
    let ratio = &num * &den.inverse()?;
    Ok(match which {
        GammaOmega::Omega2 => ratio.mul_monomial(&Rational::one(), exp_int(1)),
        _ => ratio,
    })
}
