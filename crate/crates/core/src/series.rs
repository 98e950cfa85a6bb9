//! Truncated formal power series in `q^(1/D)` with exact rational coefficients.
//!
//! A [`QSeries`] stores its coefficients sparsely, keyed by the integer `k`
//! that stands for the exponent `k/D`. Every series also carries its own
//! truncation: coefficients are known exactly for all keys below `trunc`
//! and nothing is claimed beyond it. Binary operations take the pessimistic
//! truncation of their inputs, so a result never claims more precision than
//! its ingredients support.
//!
//! Negative keys are allowed. They show up after inverting a series with
//! positive valuation and in Laurent-type theta values such as
//! `f(q^-1, q^11)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Result, SeriesError};
use crate::rational::{exact_root, lcm, Exponent, Rational};

#[derive(Clone, Debug)]
pub struct QSeries {
    den: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, Rational>,
}

/// Outcome of comparing two series coefficient by coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// No difference below `checked`.
    Equal { checked: Exponent },
    /// First differing exponent and the coefficient of `a - b` there.
    Differ { exponent: Exponent, difference: Rational, checked: Exponent },
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }

    pub fn checked(&self) -> Exponent {
        match self {
            Comparison::Equal { checked } | Comparison::Differ { checked, .. } => *checked,
        }
    }
}

fn units(e: Exponent, den: i64) -> Result<i64> {
    let scaled = e * Exponent::from_integer(den);
    if scaled.is_integer() {
        Ok(scaled.to_integer())
    } else {
        Err(SeriesError::Granularity { exponent: e, granularity: den })
    }
}

/// Smallest key count `k` with `k/den >= order`.
fn ceil_units(order: Exponent, den: i64) -> i64 {
    (order * Exponent::from_integer(den)).ceil().to_integer()
}

impl QSeries {
    /// The zero series, known to be zero below `trunc` (in units of `1/den`).
    pub fn zero_units(den: i64, trunc: i64) -> Self {
        assert!(den >= 1, "granularity must be positive");
        QSeries { den, trunc, coeffs: BTreeMap::new() }
    }

    /// The zero series known below `q^order`, rounded up to the lattice.
    pub fn zero(den: i64, order: Exponent) -> Self {
        Self::zero_units(den, ceil_units(order, den))
    }

    /// `c * q^e`, truncated at `q^order`, on the lattice `(1/den)Z`.
    pub fn monomial(c: Rational, e: Exponent, den: i64, order: i64) -> Result<Self> {
        if den < 1 {
            return Err(SeriesError::Domain(format!("granularity {den} must be positive")));
        }
        let k = units(e, den)?;
        let trunc = order.checked_mul(den).ok_or_else(|| SeriesError::Domain(format!("order {order} too large")))?;
        let mut s = Self::zero_units(den, trunc);
        if k < trunc && !c.is_zero() {
            s.coeffs.insert(k, c);
        }
        Ok(s)
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::monomial(c, Exponent::zero(), 1, order).expect("integral exponent")
    }

    pub fn one(order: i64) -> Self {
        Self::constant(Rational::one(), order)
    }

    /// Builds a series from `(key, coefficient)` pairs; keys at or beyond
    /// `trunc` are dropped and repeated keys are summed.
    pub fn from_units<I>(den: i64, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut s = Self::zero_units(den, trunc);
        for (k, c) in terms {
            if k < trunc {
                s.add_at(k, c);
            }
        }
        s
    }

    pub(crate) fn add_at(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    pub fn granularity(&self) -> i64 {
        self.den
    }

    pub fn trunc_units(&self) -> i64 {
        self.trunc
    }

    /// Exponents strictly below this are known exactly.
    pub fn order(&self) -> Exponent {
        Exponent::new(self.trunc, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Option<Exponent> {
        self.coeffs.keys().next().map(|&k| Exponent::new(k, self.den))
    }

    /// Valuation in lattice units; a zero series counts as `O(q^trunc)`.
    fn val_units(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.trunc)
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.coeffs.values().next()
    }

    pub fn coefficient(&self, e: Exponent) -> Result<Rational> {
        let k = units(e, self.den)?;
        if k >= self.trunc {
            return Err(SeriesError::Precision { exponent: e, order: self.order() });
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero))
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &Rational)> + '_ {
        let den = self.den;
        self.coeffs.iter().map(move |(&k, c)| (Exponent::new(k, den), c))
    }

    /// Nonzero terms keyed by lattice units.
    pub fn raw_terms(&self) -> &BTreeMap<i64, Rational> {
        &self.coeffs
    }

    /// True when every stored exponent is an integer.
    pub fn has_integral_support(&self) -> bool {
        self.coeffs.keys().all(|k| k % self.den == 0)
    }

    /// Re-expresses the series on the finer lattice `(1/den)Z`.
    pub fn refine(&self, den: i64) -> Result<Self> {
        if den < 1 || den % self.den != 0 {
            return Err(SeriesError::Domain(format!("granularity {den} is not a multiple of {}", self.den)));
        }
        let f = den / self.den;
        if f == 1 {
            return Ok(self.clone());
        }
        Ok(QSeries {
            den,
            trunc: self.trunc * f,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k * f, c.clone())).collect(),
        })
    }

    fn at(&self, den: i64) -> Self {
        self.refine(den).expect("granularity is a multiple")
    }

    /// The same series on the coarsest lattice that still holds every key
    /// and the truncation point.
    pub fn normalized(&self) -> Self {
        let mut g = self.den.gcd(&self.trunc);
        for &k in self.coeffs.keys() {
            if g == 1 {
                break;
            }
            g = g.gcd(&k);
        }
        if g <= 1 {
            return self.clone();
        }
        QSeries {
            den: self.den / g,
            trunc: self.trunc / g,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k / g, c.clone())).collect(),
        }
    }

    /// Drops everything at or beyond `q^order` (never raises precision).
    pub fn truncate(&self, order: Exponent) -> Self {
        let t = ceil_units(order, self.den).min(self.trunc);
        QSeries { den: self.den, trunc: t, coeffs: self.coeffs.range(..t).map(|(&k, c)| (k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_units(self.den, self.trunc);
        }
        QSeries { den: self.den, trunc: self.trunc, coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Exact multiplication by `c * q^e`; the truncation moves with the terms.
    pub fn mul_monomial(&self, c: &Rational, e: Exponent) -> Self {
        let den = lcm(self.den, *e.denom());
        let s = self.at(den);
        let shift = units(e, den).expect("lattice contains e");
        if c.is_zero() {
            return Self::zero_units(den, s.trunc + shift);
        }
        QSeries { den, trunc: s.trunc + shift, coeffs: s.coeffs.iter().map(|(&k, v)| (k + shift, v * c)).collect() }
    }

    fn reconcile(a: &QSeries, b: &QSeries) -> (QSeries, QSeries) {
        let den = lcm(a.den, b.den);
        (a.at(den), b.at(den))
    }

    fn add_impl(&self, other: &QSeries, negate: bool) -> QSeries {
        let (a, b) = Self::reconcile(self, other);
        let trunc = a.trunc.min(b.trunc);
        let mut out =
            QSeries { den: a.den, trunc, coeffs: a.coeffs.range(..trunc).map(|(&k, c)| (k, c.clone())).collect() };
        for (&k, c) in b.coeffs.range(..trunc) {
            out.add_at(k, if negate { -c.clone() } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let (a, b) = Self::reconcile(self, other);
        let trunc = (a.trunc + b.val_units()).min(b.trunc + a.val_units());
        // Clear denominators so the inner loop runs on integers.
        let (an, ad) = integerize(&a.coeffs);
        let (bn, bd) = integerize(&b.coeffs);
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (&i, x) in an.iter() {
            for (&j, y) in bn.iter() {
                if i + j >= trunc {
                    break;
                }
                let p = x * y;
                match acc.get_mut(&(i + j)) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(i + j, p);
                    }
                }
            }
        }
        let scale = Rational::new(BigInt::one(), ad * bd);
        let coeffs = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k, Rational::from_integer(v) * &scale))
            .collect();
        QSeries { den: a.den, trunc, coeffs }
    }

    /// Multiplicative inverse; the valuation flips sign.
    pub fn inverse(&self) -> Result<QSeries> {
        let (v, c) = match self.coeffs.iter().next() {
            Some((&v, c)) => (v, c.clone()),
            None => return Err(SeriesError::DivisionByZero),
        };
        let rel = self.trunc - v;
        let unit = self.unit_part(v, &c);
        let h = unit_power_series(&unit, rel, PowerKind::Inverse);
        let cinv = c.recip();
        Ok(QSeries { den: self.den, trunc: rel - v, coeffs: h.into_iter().map(|(k, x)| (k - v, x * &cinv)).collect() })
    }

    /// `u_j = a_{v+j} / c` for `0 < j < rel`.
    fn unit_part(&self, v: i64, c: &Rational) -> BTreeMap<i64, Rational> {
        self.coeffs.range(v + 1..self.trunc).map(|(&k, x)| (k - v, x / c)).collect()
    }

    /// The principal n-th root.
    ///
    /// The valuation must become a lattice point after division by `n`; the
    /// lattice is refined by the needed factor when it does not. The leading
    /// coefficient must be an exact rational n-th power.
    pub fn nth_root(&self, n: u32) -> Result<QSeries> {
        if n == 0 {
            return Err(SeriesError::Domain("root index must be positive".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let (v, c) = match self.coeffs.iter().next() {
            Some((&v, c)) => (v, c.clone()),
            None => return Err(SeriesError::Domain("root of a series that is zero to its precision".into())),
        };
        if c.is_negative() && n.is_multiple_of(2) {
            return Err(SeriesError::Domain(format!("even root of negative leading coefficient {c}")));
        }
        let root_c = exact_root(&c, n).ok_or(SeriesError::AlgebraicRoot { index: n })?;
        let ni = n as i64;
        let refine_by = ni / v.gcd(&ni).max(1);
        let s = self.at(self.den * refine_by);
        let v = v * refine_by;
        let rel = s.trunc - v;
        let unit = s.unit_part(v, &c);
        let h = unit_power_series(&unit, rel, PowerKind::Root(n));
        let lead = v / ni;
        Ok(QSeries {
            den: s.den,
            trunc: lead + rel,
            coeffs: h.into_iter().map(|(k, x)| (k + lead, x * &root_c)).collect(),
        })
    }

    /// Integer power; negative exponents go through [`QSeries::inverse`].
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        if k == 0 {
            let rel = self.trunc - self.val_units();
            return Ok(QSeries::from_units(self.den, rel.max(0), [(0, Rational::one())]));
        }
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => &a * &base,
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc.expect("k > 0"))
    }

    /// Replaces `q` by `q^k` for a positive rational `k`.
    pub fn substitute(&self, k: Exponent) -> Result<QSeries> {
        if k <= Exponent::zero() {
            return Err(SeriesError::Domain(format!("substitution exponent {k} must be positive")));
        }
        let p = *k.numer();
        let r = *k.denom();
        Ok(QSeries {
            den: self.den * r,
            trunc: self.trunc * p,
            coeffs: self.coeffs.iter().map(|(&key, c)| (key * p, c.clone())).collect(),
        }
        .normalized())
    }

    /// Replaces `q` by `-q`; only defined on integer exponents.
    pub fn negate_q(&self) -> Result<QSeries> {
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            if k % self.den != 0 {
                return Err(SeriesError::Domain(format!(
                    "q -> -q needs integer exponents, found {}",
                    Exponent::new(k, self.den)
                )));
            }
            let e = k / self.den;
            coeffs.insert(k, if e.rem_euclid(2) == 1 { -c.clone() } else { c.clone() });
        }
        Ok(QSeries { den: self.den, trunc: self.trunc, coeffs })
    }

    /// Compares `self` and `other` below `min(order, both truncations)`.
    pub fn eq_to_order(&self, other: &QSeries, order: Exponent) -> Comparison {
        let diff = self - other;
        let limit = order.min(diff.order());
        let first = diff.terms().next().map(|(e, c)| (e, c.clone()));
        match first {
            Some((e, c)) if e < limit => Comparison::Differ { exponent: e, difference: c, checked: limit },
            _ => Comparison::Equal { checked: limit },
        }
    }

    /// Floating-point value of the truncated sum at real `q`.
    pub fn eval_f64(&self, q: f64) -> f64 {
        self.terms()
            .map(|(e, c)| {
                let ef = e.numer().to_f64().unwrap_or(0.0) / e.denom().to_f64().unwrap_or(1.0);
                c.to_f64().unwrap_or(f64::NAN) * libm::pow(q, ef)
            })
            .sum()
    }
}

fn integerize(m: &BTreeMap<i64, Rational>) -> (BTreeMap<i64, BigInt>, BigInt) {
    let mut l = BigInt::one();
    for c in m.values() {
        if !c.denom().is_one() {
            l = l.lcm(c.denom());
        }
    }
    let nums = m.iter().map(|(&k, c)| (k, c.numer() * (&l / c.denom()))).collect();
    (nums, l)
}

enum PowerKind {
    Inverse,
    Root(u32),
}

/// `(1 + u)^(-1)` or `(1 + u)^(1/n)` below relative precision `rel`.
///
/// `u` holds keys in `1..rel`. Only multiples of the gcd of those keys can
/// appear in the result, so the recurrence runs on that sublattice.
fn unit_power_series(u: &BTreeMap<i64, Rational>, rel: i64, kind: PowerKind) -> Vec<(i64, Rational)> {
    if rel <= 0 {
        return Vec::new();
    }
    let step = u.keys().fold(0i64, |g, &k| g.gcd(&k));
    let mut out = alloc::vec![(0i64, Rational::one())];
    if step == 0 {
        return out;
    }
    let len = ((rel - 1) / step + 1) as usize;
    let mut h: Vec<Rational> = Vec::with_capacity(len);
    h.push(Rational::one());
    for idx in 1..len {
        let k = idx as i64 * step;
        let mut acc = Rational::zero();
        for (&j, uj) in u.range(..=k) {
            let hk = &h[((k - j) / step) as usize];
            if hk.is_zero() {
                continue;
            }
            match kind {
                PowerKind::Inverse => acc -= uj * hk,
                PowerKind::Root(n) => {
                    let w = (n as i64 + 1) * j - n as i64 * k;
                    acc += uj * hk * Rational::from_integer(BigInt::from(w));
                }
            }
        }
        if let PowerKind::Root(n) = kind {
            acc /= Rational::from_integer(BigInt::from(n as i64 * k));
        }
        if !acc.is_zero() {
            out.push((k, acc.clone()));
        }
        h.push(acc);
    }
    out
}

impl PartialEq for QSeries {
    /// Equal as truncated series: same truncation order and the same terms,
    /// regardless of the lattice each is stored on.
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order()
            && self.coeffs.len() == other.coeffs.len()
            && self.terms().zip(other.terms()).all(|(a, b)| a == b)
    }
}

impl Eq for QSeries {}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &'a QSeries) -> QSeries {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &'a QSeries) -> QSeries {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &'a QSeries) -> QSeries {
        self.mul_impl(rhs)
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        &self + &rhs
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        &self - &rhs
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        &self * &rhs
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-Rational::one())
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, e: Exponent) -> fmt::Result {
    if e.is_integer() {
        if e.to_integer() != 1 {
            write!(f, "^{}", e.to_integer())?;
        }
        Ok(())
    } else {
        write!(f, "^({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for QSeries {
    /// `1 + 2 q + 2 q^4`, ascending, without the truncation marker.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "q")?;
            write_exponent(f, e)?;
        }
        Ok(())
    }
}
