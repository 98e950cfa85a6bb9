//! The degree-5 modular equation in signature two.
//!
//! The moduli are parametrized by theta functions:
//!
//! ```text
//! alpha = 16 q psi^4(q^2) / phi^4(q),   1 - alpha = phi^4(-q) / phi^4(q),
//! beta  = alpha(q^5),                    m = phi^2(q) / phi^2(q^5).
//! ```
//!
//! [`modular_eq_residual`] expands both sides of the equation exactly on the
//! lattice `q^(1/8)`. The numeric half ([`agm`], [`hyp2f1_half`],
//! [`degree_check`]) confirms in floating point that `beta` has degree 5
//! over `alpha` and that `m` is the ratio of the two hypergeometric values.

use alloc::format;

use crate::error::{Result, SeriesError};
use crate::rational::{exp_int, int};
use crate::series::QSeries;
use crate::theta::{named, NamedFn};

/// Granularity used for all root work.
pub const ROOT_GRANULARITY: i64 = 8;

/// Extra working precision: the eighth-root radicand has valuation 16.
const GUARD: i64 = 20;

pub fn alpha_series(order: i64) -> Result<QSeries> {
    let inner = order.max(0) + 1;
    let psi2 = named(NamedFn::Psi, exp_int(2), inner)?;
    let phi = named(NamedFn::Phi, exp_int(1), inner)?;
    let num = psi2.pow(4)?.mul_monomial(&int(16), exp_int(1));
    Ok((&num * &phi.pow(4)?.inverse()?).truncate(exp_int(order)))
}

pub fn beta_series(order: i64) -> Result<QSeries> {
    let inner = (order.max(0) + 4) / 5;
    Ok(alpha_series(inner)?.substitute(exp_int(5))?.truncate(exp_int(order)))
}

pub fn multiplier_series(order: i64) -> Result<QSeries> {
    let phi = named(NamedFn::Phi, exp_int(1), order)?;
    let phi5 = named(NamedFn::Phi, exp_int(5), order)?;
    Ok(&phi.pow(2)? * &phi5.pow(2)?.inverse()?)
}

/// `alpha`, `beta` and `m` on a common lattice.
#[derive(Clone, Debug)]
pub struct ModularTriple {
    pub alpha: QSeries,
    pub beta: QSeries,
    pub m: QSeries,
}

impl ModularTriple {
    pub fn new(order: i64) -> Result<Self> {
        let d = ROOT_GRANULARITY;
        Ok(ModularTriple {
            alpha: alpha_series(order)?.refine(d)?,
            beta: beta_series(order)?.refine(d)?,
            m: multiplier_series(order)?.refine(d)?,
        })
    }
}

/// Which form of the equation to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `m^2 + 1 - 2m + 8((1-b)^5/(1-a))^(1/8) - 8(1-b)
    ///  = m^2 a + b - 2m (ab)^(1/2) + 8(a b^3 (1-b)^5/(1-a))^(1/8)`
    Derived,
    /// `m^2 + 1 - 2m + 8((1-b)^5/(1-a))^(1/8) - 8(1-a)^(1/2)(1-b)^(1/2)
    ///  = m^2 a + b - 2m^2 (ab)^(1/2) + 8(a b^3 (1-b)^5/(1-a))^(1/8)`
    Printed,
}

/// The three radical terms, before their rational multipliers.
#[derive(Clone, Debug)]
pub struct RadicalTerms {
    /// `((1-b)^5 / (1-a))^(1/8)`
    pub unit_root: QSeries,
    /// `(a b^3 (1-b)^5 / (1-a))^(1/8)`
    pub mixed_root: QSeries,
    /// `(ab)^(1/2)`
    pub sqrt_ab: QSeries,
}

pub fn radical_terms(t: &ModularTriple) -> Result<RadicalTerms> {
    let order = t.alpha.order().to_integer();
    let one = QSeries::one(order);
    let one_a = &one - &t.alpha;
    let one_b = &one - &t.beta;
    let ratio = &one_b.pow(5)? * &one_a.inverse()?;
    let unit_root = ratio.nth_root(8)?;
    let mixed = &(&t.alpha * &t.beta.pow(3)?) * &ratio;
    let mixed_root = mixed.nth_root(8)?;
    let sqrt_ab = (&t.alpha * &t.beta).nth_root(2)?;
    for s in [&unit_root, &mixed_root, &sqrt_ab] {
        if ROOT_GRANULARITY % s.normalized().granularity() != 0 {
            return Err(SeriesError::Domain(format!("radical term left the lattice q^(1/{ROOT_GRANULARITY})")));
        }
    }
    Ok(RadicalTerms { unit_root, mixed_root, sqrt_ab })
}

/// Left side minus right side, to `q^order`.
///
/// Fails with a domain error if a root precondition breaks or the residual
/// has a non-integer exponent; either would mean an implementation bug.
pub fn modular_eq_residual(order: i64, variant: Variant) -> Result<QSeries> {
    let t = ModularTriple::new(order + GUARD)?;
    let r = radical_terms(&t)?;
    let n = order + GUARD;
    let one = QSeries::one(n);
    let eight = int(8);
    let two = int(2);
    let m2 = t.m.pow(2)?;
    let mut lhs = &(&m2 + &one) - &t.m.scale(&two);
    lhs = &lhs + &r.unit_root.scale(&eight);
    let mut rhs = &(&m2 * &t.alpha) + &t.beta;
    rhs = &rhs + &r.mixed_root.scale(&eight);
    match variant {
        Variant::Derived => {
            lhs = &lhs - &(&one - &t.beta).scale(&eight);
            rhs = &rhs - &(&t.m * &r.sqrt_ab).scale(&two);
        }
        Variant::Printed => {
            let prod = &(&one - &t.alpha) * &(&one - &t.beta);
            lhs = &lhs - &prod.nth_root(2)?.scale(&eight);
            rhs = &rhs - &(&m2 * &r.sqrt_ab).scale(&two);
        }
    }
    let residual = (&lhs - &rhs).truncate(exp_int(order));
    if residual.order() < exp_int(order) {
        return Err(SeriesError::Precision { exponent: exp_int(order), order: residual.order() });
    }
    if !residual.has_integral_support() {
        return Err(SeriesError::Domain("modular equation residual has non-integer exponents".into()));
    }
    Ok(residual.normalized())
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(SeriesError::Domain(format!("agm needs positive arguments, got ({a}, {b})")));
    }
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if libm::fabs(a - b) <= tol * a {
            break;
        }
        let next = ((a + b) / 2.0, libm::sqrt(a * b));
        a = next.0;
        b = next.1;
    }
    Ok((a + b) / 2.0)
}

/// `2F1(1/2, 1/2; 1; x) = 1 / agm(1, sqrt(1 - x))` for `0 <= x < 1`.
pub fn hyp2f1_half(x: f64, tol: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&x) {
        return Err(SeriesError::Domain(format!("2F1(1/2,1/2;1;x) needs 0 <= x < 1, got {x}")));
    }
    Ok(1.0 / agm(1.0, libm::sqrt(1.0 - x), tol)?)
}

/// `2F1(1/2, 1/2; 1; 1 - x) = 1 / agm(1, sqrt(x))` for `0 < x <= 1`, without
/// forming `1 - x`.
pub fn hyp2f1_half_complement(x: f64, tol: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(SeriesError::Domain(format!("2F1(1/2,1/2;1;1-x) needs 0 < x <= 1, got {x}")));
    }
    Ok(1.0 / agm(1.0, libm::sqrt(x), tol)?)
}

/// Direct summation of `pFq(a_1..a_p; b_1..b_q; x)` for `|x| < 1`.
pub fn hypergeometric(upper: &[f64], lower: &[f64], x: f64, tol: f64) -> Result<f64> {
    if libm::fabs(x) >= 1.0 {
        return Err(SeriesError::Domain(format!("series summation needs |x| < 1, got {x}")));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..100_000u32 {
        let n = n as f64;
        let num: f64 = upper.iter().map(|a| a + n).product();
        let den: f64 = lower.iter().map(|b| b + n).product::<f64>() * (n + 1.0);
        if den == 0.0 {
            return Err(SeriesError::Pole("lower parameter is a non-positive integer".into()));
        }
        term *= num / den * x;
        sum += term;
        if libm::fabs(term) <= tol * libm::fabs(sum) {
            return Ok(sum);
        }
    }
    Err(SeriesError::Divergent(format!("hypergeometric series at x = {x} did not converge")))
}

/// Sums `q^e(n) + q^e(-n-1)` over `n >= 0` until a pair drops below `tol`.
fn theta_numeric(q: f64, tol: f64, exponent: impl Fn(i64) -> i64) -> f64 {
    let mut sum = 0.0;
    let mut n = 0i64;
    loop {
        let e1 = exponent(n);
        let e2 = exponent(-n - 1);
        let term = libm::pow(q, e1 as f64) + libm::pow(q, e2 as f64);
        sum += term;
        if term <= tol * sum {
            return sum;
        }
        n += 1;
    }
}

/// `phi(q) = sum_{n in Z} q^(n^2)` for real `0 <= q < 1`.
pub fn phi_numeric(q: f64, tol: f64) -> f64 {
    theta_numeric(q, tol, |n| n * n)
}

/// `psi(q) = sum_{n >= 0} q^(n(n+1)/2)` for real `0 <= q < 1`.
pub fn psi_numeric(q: f64, tol: f64) -> f64 {
    // n(2n+1) and its mirror run through the triangular numbers
    theta_numeric(q, tol, |n| n * (2 * n + 1))
}

/// One floating-point sample of the degree-5 relation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericSample {
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    /// `phi^2(q) / phi^2(q^5)`
    pub m: f64,
    /// `F(alpha) / F(beta)`
    pub m_hypergeometric: f64,
    /// `[F(1-beta)/F(beta)] / [F(1-alpha)/F(alpha)]`, expected to be 5
    pub ratio: f64,
    pub tol: f64,
}

impl NumericSample {
    pub fn ratio_ok(&self) -> bool {
        libm::fabs(self.ratio - 5.0) <= self.tol
    }

    pub fn multiplier_ok(&self) -> bool {
        libm::fabs(self.m - self.m_hypergeometric) <= self.tol
    }
}

fn alpha_numeric(q: f64, tol: f64) -> f64 {
    let psi2 = psi_numeric(q * q, tol);
    let phi = phi_numeric(q, tol);
    16.0 * q * libm::pow(psi2 / phi, 4.0)
}

/// Checks the degree-5 relation at a real `q` in `(0, 0.2]`.
pub fn degree_check(q: f64, tol: f64) -> Result<NumericSample> {
    if !(q > 0.0 && q <= 0.2) {
        return Err(SeriesError::Domain(format!("degree check needs 0 < q <= 0.2, got {q}")));
    }
    let eps = 1e-16;
    let alpha = alpha_numeric(q, eps);
    let beta = alpha_numeric(libm::pow(q, 5.0), eps);
    if !(0.0 < beta && beta < alpha && alpha < 1.0) {
        return Err(SeriesError::Domain(format!("moduli out of range: alpha = {alpha}, beta = {beta}")));
    }
    let f = |x: f64| hyp2f1_half(x, eps);
    let period = |x: f64| -> Result<f64> { Ok(hyp2f1_half_complement(x, eps)? / f(x)?) };
    let ratio = period(beta)? / period(alpha)?;
    let m = libm::pow(phi_numeric(q, eps) / phi_numeric(libm::pow(q, 5.0), eps), 2.0);
    Ok(NumericSample { q, alpha, beta, m, m_hypergeometric: f(alpha)? / f(beta)?, ratio, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::exp;
    use crate::theta::named;

    #[test]
    fn alpha_leading_terms() {
        let a = alpha_series(10).unwrap();
        assert_eq!(a.valuation(), Some(exp_int(1)));
        assert_eq!(a.coefficient(exp_int(1)).unwrap(), int(16));
        let one_minus = &QSeries::one(10) - &a;
        assert_eq!(one_minus.coefficient(exp_int(0)).unwrap(), int(1));
        let m = multiplier_series(10).unwrap();
        assert_eq!(m.coefficient(exp_int(0)).unwrap(), int(1));
    }

    #[test]
    fn complementary_modulus() {
        let n = 80;
        let a = alpha_series(n).unwrap();
        let phi = named(NamedFn::Phi, exp_int(1), n).unwrap();
        let phineg = named(NamedFn::PhiNeg, exp_int(1), n).unwrap();
        let c = &phineg.pow(4).unwrap() * &phi.pow(4).unwrap().inverse().unwrap();
        assert!((&a + &c).eq_to_order(&QSeries::one(n), exp_int(n)).is_equal());
    }

    #[test]
    fn beta_is_alpha_at_q5() {
        let a = alpha_series(100).unwrap();
        let b = beta_series(100).unwrap();
        let sub = a.substitute(exp_int(5)).unwrap();
        assert!(b.eq_to_order(&sub, exp_int(100)).is_equal());
        assert_eq!(b.valuation(), Some(exp_int(5)));
    }

    #[test]
    fn mixed_root_leading_term() {
        let t = ModularTriple::new(30).unwrap();
        let r = radical_terms(&t).unwrap();
        assert_eq!(r.mixed_root.valuation(), Some(exp_int(2)));
        assert_eq!(r.mixed_root.leading_coefficient(), Some(&int(4)));
        assert_eq!(r.sqrt_ab.valuation(), Some(exp_int(3)));
        assert_eq!(r.sqrt_ab.leading_coefficient(), Some(&int(16)));
        for s in [&r.unit_root, &r.mixed_root, &r.sqrt_ab] {
            assert!(s.terms().all(|(e, _)| (e * exp_int(8)).is_integer()));
        }
        assert!(r.unit_root.coefficient(exp(1, 8)).is_ok());
    }

    #[test]
    fn derived_equation_vanishes() {
        let r = modular_eq_residual(40, Variant::Derived).unwrap();
        assert!(r.is_zero(), "residual {r}");
        assert_eq!(r.order(), exp_int(40));
    }

    #[test]
    fn printed_equation_does_not() {
        let r = modular_eq_residual(20, Variant::Printed).unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn agm_and_hypergeometric() {
        assert_eq!(agm(1.0, 1.0, 1e-15).unwrap(), 1.0);
        assert_eq!(hyp2f1_half(0.0, 1e-15).unwrap(), 1.0);
        let a = hyp2f1_half(0.5, 1e-15).unwrap();
        let b = hypergeometric(&[0.5, 0.5], &[1.0], 0.5, 1e-16).unwrap();
        assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        assert!(hyp2f1_half(1.0, 1e-15).is_err());
        assert!(agm(-1.0, 1.0, 1e-15).is_err());
    }

    #[test]
    fn numeric_thetas_match_series() {
        let q = 0.1;
        let phi = named(NamedFn::Phi, exp_int(1), 30).unwrap().eval_f64(q);
        let psi = named(NamedFn::Psi, exp_int(1), 30).unwrap().eval_f64(q);
        assert!((phi_numeric(q, 1e-17) - phi).abs() < 1e-14);
        assert!((psi_numeric(q, 1e-17) - psi).abs() < 1e-14);
    }

    #[test]
    fn degree_five() {
        for q in [0.05, 0.1] {
            let s = degree_check(q, 1e-8).unwrap();
            assert!(s.ratio_ok(), "{s:?}");
            assert!(s.multiplier_ok(), "{s:?}");
            let m_series = multiplier_series(60).unwrap().eval_f64(q);
            assert!((m_series - s.m).abs() <= 1e-10);
        }
        let tiny = degree_check(1e-4, 1e-8).unwrap();
        assert!(tiny.alpha < 1e-2 && tiny.beta < 1e-15 && (tiny.m - 1.0).abs() < 1e-3);
        assert!(degree_check(0.5, 1e-8).is_err());
    }
}
