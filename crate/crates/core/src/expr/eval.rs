//! Evaluation of expressions to truncated series.
//!
//! Monomial subexpressions (`2*x`, `q^10/(x*y)`) stay exact until they meet
//! a series. Each node asks its children for enough precision to deliver
//! the order requested of it, using the children's valuations; a caller can
//! still end up short when cancellation raises a valuation, which is why
//! identity checks re-run with a larger guard.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArgKind, Expr, ExprError, Func};
use crate::error::SeriesError;
use crate::lambert::{bilateral_lambert, bilateral_ratio, eisenstein_e, eisenstein_l, unilateral_lambert, LambertSpec};
use crate::modeq::{alpha_series, beta_series, multiplier_series};
use crate::monomial::SignedMonomial;
use crate::rational::{exact_root, lcm, Exponent, Rational};
use crate::series::QSeries;
use crate::theta::{
    gamma_omega, named, named_at, pochhammer_signed, theta_product, theta_sum, GammaOmega, NamedFn, ThetaArgs,
};

/// Values of the free parameters of an expression.
pub type Bindings = BTreeMap<String, SignedMonomial>;

#[derive(Clone, Debug)]
enum Value {
    /// `c q^e`, exact.
    Term(Rational, Exponent),
    Series(QSeries),
}

impl Value {
    /// `None` for zero.
    fn valuation(&self) -> Option<Exponent> {
        match self {
            Value::Term(c, _) if c.is_zero() => None,
            Value::Term(_, e) => Some(*e),
            Value::Series(s) => s.valuation(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum ArgVal {
    Scale(Exponent),
    Mono(SignedMonomial),
    Lit(Rational),
}

fn term_series(c: &Rational, e: Exponent, order: Exponent) -> QSeries {
    let mut s = QSeries::zero(*e.denom(), order);
    let k = (e * Exponent::from_integer(*e.denom())).to_integer();
    if k < s.trunc_units() {
        s.add_at(k, c.clone());
    }
    s
}

fn lift(e: SeriesError) -> ExprError {
    ExprError::Eval { path: String::new(), error: e }
}

fn within(label: String, err: ExprError) -> ExprError {
    let join = |path: String| if path.is_empty() { label.clone() } else { format!("{label} > {path}") };
    match err {
        ExprError::Eval { path, error } => ExprError::Eval { path: join(path), error },
        ExprError::Unbound { path, name } => ExprError::Unbound { path: join(path), name },
        ExprError::Argument { path, message } => ExprError::Argument { path: join(path), message },
        other => other,
    }
}

fn to_exponent(c: &Rational) -> Option<Exponent> {
    Some(Exponent::new(c.numer().to_i64()?, c.denom().to_i64()?))
}

fn leaf_order(target: Exponent) -> i64 {
    target.ceil().to_integer().max(1)
}

/// Evaluates expressions under fixed bindings, caching function values.
pub struct Evaluator<'a> {
    bindings: &'a Bindings,
    cache: BTreeMap<(Func, Vec<ArgVal>), QSeries>,
}

impl<'a> Evaluator<'a> {
    pub fn new(bindings: &'a Bindings) -> Self {
        Evaluator { bindings, cache: BTreeMap::new() }
    }

    /// The expression as a series known at least below `q^target` when
    /// precision allows.
    pub fn series(&mut self, e: &Expr, target: Exponent) -> Result<QSeries, ExprError> {
        Ok(match self.eval(e, target)? {
            Value::Term(c, k) => term_series(&c, k, target),
            Value::Series(s) => s,
        })
    }

    fn child(&mut self, e: &Expr, label: &str, target: Exponent) -> Result<Value, ExprError> {
        self.eval(e, target).map_err(|err| within(label.into(), err))
    }

    fn eval(&mut self, e: &Expr, target: Exponent) -> Result<Value, ExprError> {
        match e {
            Expr::Num(c) => Ok(Value::Term(c.clone(), Exponent::zero())),
            Expr::QPow(k) => Ok(Value::Term(Rational::one(), *k)),
            Expr::Param(name) => match self.bindings.get(name) {
                Some(m) => Ok(Value::Term(m.coefficient(), m.exponent())),
                None => Err(ExprError::Unbound { path: String::new(), name: name.clone() }),
            },
            Expr::Neg(a) => Ok(match self.child(a, "neg", target)? {
                Value::Term(c, k) => Value::Term(-c, k),
                Value::Series(s) => Value::Series(-s),
            }),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let negate = matches!(e, Expr::Sub(..));
                let label = if negate { "-" } else { "+" };
                let va = self.child(a, &format!("{label}[0]"), target)?;
                let vb = self.child(b, &format!("{label}[1]"), target)?;
                let vb = match vb {
                    Value::Term(c, k) if negate => Value::Term(-c, k),
                    Value::Series(s) if negate => Value::Series(-s),
                    v => v,
                };
                Ok(add(va, vb, target))
            }
            Expr::Mul(a, b) => {
                let mut va = self.child(a, "*[0]", target)?;
                let vb = self.child(b, "*[1]", target - va.valuation().unwrap_or_else(Exponent::zero))?;
                if let Some(v) = vb.valuation() {
                    if v < Exponent::zero() && matches!(va, Value::Series(_)) {
                        va = self.child(a, "*[0]", target - v)?;
                    }
                }
                mul(va, vb).map_err(|err| within("*".into(), lift(err)))
            }
            Expr::Div(a, b) => {
                let mut vb = self.child(b, "/[1]", target)?;
                let v = vb.valuation().ok_or_else(|| within("/".into(), lift(SeriesError::DivisionByZero)))?;
                let va = self.child(a, "/[0]", target + v)?;
                if let (Some(u), Value::Series(_)) = (va.valuation(), &vb) {
                    let need = target + v + v - u;
                    if need > target {
                        vb = self.child(b, "/[1]", need)?;
                    }
                }
                let inv = invert(vb).map_err(|err| within("/".into(), lift(err)))?;
                mul(va, inv).map_err(|err| within("/".into(), lift(err)))
            }
            Expr::Pow(a, k) => {
                let label = format!("^{k}");
                let mut va = self.child(a, &label, target)?;
                if let (Some(v), Value::Series(_)) = (va.valuation(), &va) {
                    let need = target - (Exponent::from_integer(*k) - Exponent::one()) * v;
                    if need > target {
                        va = self.child(a, &label, need)?;
                    }
                }
                power(va, *k).map_err(|err| within(label, lift(err)))
            }
            Expr::Root(a, n) => {
                let label = format!("root{n}");
                let mut va = self.child(a, &label, target)?;
                if let (Some(v), Value::Series(_)) = (va.valuation(), &va) {
                    let need = target + v - v / Exponent::from_integer(*n as i64);
                    if need > target {
                        va = self.child(a, &label, need)?;
                    }
                }
                root(va, *n).map_err(|err| within(label, lift(err)))
            }
            Expr::SubQ(a, k) => {
                let label = format!("subq{k}");
                match self.child(a, &label, target / *k)? {
                    Value::Term(c, e) => Ok(Value::Term(c, e * *k)),
                    Value::Series(s) => s.substitute(*k).map(Value::Series).map_err(|err| within(label, lift(err))),
                }
            }
            Expr::Call(func, args) => {
                let label = String::from(func.name());
                let mut vals = Vec::with_capacity(args.len());
                for (i, (arg, kind)) in args.iter().zip(func.args()).enumerate() {
                    let v = self.argument(arg, *kind).map_err(|err| within(format!("{label}[{i}]"), err))?;
                    vals.push(v);
                }
                let order = leaf_order(target);
                let key = (*func, vals);
                if let Some(s) = self.cache.get(&key) {
                    if s.order() >= Exponent::from_integer(order) {
                        return Ok(Value::Series(s.truncate(Exponent::from_integer(order))));
                    }
                }
                let s = call(*func, &key.1, order).map_err(|err| within(label, lift(err)))?;
                self.cache.insert(key, s.clone());
                Ok(Value::Series(s))
            }
        }
    }

    fn argument(&mut self, arg: &Expr, kind: ArgKind) -> Result<ArgVal, ExprError> {
        let bad = |message: String| ExprError::Argument { path: String::new(), message };
        match kind {
            ArgKind::Literal | ArgKind::Integer => match arg {
                Expr::Num(c) => Ok(ArgVal::Lit(c.clone())),
                other => Err(bad(format!("expected a literal, found `{other}`"))),
            },
            ArgKind::Argument | ArgKind::Monomial => {
                if let (ArgKind::Argument, Expr::Num(k)) = (kind, arg) {
                    let k = to_exponent(k).ok_or_else(|| bad(format!("exponent {k} out of range")))?;
                    if k <= Exponent::zero() {
                        return Err(bad(format!("argument q^{k} needs a positive exponent")));
                    }
                    return Ok(ArgVal::Scale(k));
                }
                match self.eval(arg, Exponent::one())? {
                    Value::Term(c, e) if c.abs().is_one() => {
                        Ok(ArgVal::Mono(SignedMonomial::laurent(c.is_negative(), e)))
                    }
                    _ => Err(bad(format!("`{arg}` is not of the form ±q^e"))),
                }
            }
        }
    }
}

fn add(a: Value, b: Value, target: Exponent) -> Value {
    match (a, b) {
        (Value::Term(c1, e1), Value::Term(c2, e2)) if e1 == e2 => Value::Term(c1 + c2, e1),
        (Value::Term(c1, e1), Value::Term(c2, e2)) => {
            Value::Series(&term_series(&c1, e1, target) + &term_series(&c2, e2, target))
        }
        (Value::Series(s), Value::Term(c, e)) | (Value::Term(c, e), Value::Series(s)) => {
            let t = term_series(&c, e, s.order());
            Value::Series(&s + &t)
        }
        (Value::Series(s), Value::Series(t)) => Value::Series(&s + &t),
    }
}

fn mul(a: Value, b: Value) -> Result<Value, SeriesError> {
    Ok(match (a, b) {
        (Value::Term(c1, e1), Value::Term(c2, e2)) => Value::Term(c1 * c2, e1 + e2),
        (Value::Series(s), Value::Term(c, e)) | (Value::Term(c, e), Value::Series(s)) => {
            Value::Series(s.mul_monomial(&c, e))
        }
        (Value::Series(s), Value::Series(t)) => Value::Series(&s * &t),
    })
}

fn invert(a: Value) -> Result<Value, SeriesError> {
    match a {
        Value::Term(c, _) if c.is_zero() => Err(SeriesError::DivisionByZero),
        Value::Term(c, e) => Ok(Value::Term(c.recip(), -e)),
        Value::Series(s) => s.inverse().map(Value::Series),
    }
}

fn power(a: Value, k: i64) -> Result<Value, SeriesError> {
    match a {
        Value::Term(c, _) if c.is_zero() && k < 0 => Err(SeriesError::DivisionByZero),
        Value::Term(c, e) => {
            let base = if k < 0 { c.recip() } else { c };
            let mag = num_traits::pow(base, k.unsigned_abs() as usize);
            Ok(Value::Term(mag, e * Exponent::from_integer(k)))
        }
        Value::Series(s) => s.pow(k).map(Value::Series),
    }
}

fn root(a: Value, n: u32) -> Result<Value, SeriesError> {
    match a {
        Value::Term(c, e) => {
            if c.is_negative() && n.is_multiple_of(2) {
                return Err(SeriesError::Domain(format!("even root of negative coefficient {c}")));
            }
            let r = exact_root(&c, n).ok_or(SeriesError::AlgebraicRoot { index: n })?;
            Ok(Value::Term(r, e / Exponent::from_integer(n as i64)))
        }
        Value::Series(s) => s.nth_root(n).map(Value::Series),
    }
}

fn lit(v: &ArgVal) -> Result<Exponent, SeriesError> {
    match v {
        ArgVal::Lit(c) => to_exponent(c).ok_or_else(|| SeriesError::Domain(format!("literal {c} out of range"))),
        _ => unreachable!("literal argument"),
    }
}

fn int_arg(v: &ArgVal) -> Result<i64, SeriesError> {
    let e = lit(v)?;
    if e.is_integer() {
        Ok(e.to_integer())
    } else {
        Err(SeriesError::Domain(format!("expected an integer, found {e}")))
    }
}

fn positive_u32(v: &ArgVal) -> Result<u32, SeriesError> {
    let k = int_arg(v)?;
    u32::try_from(k).map_err(|_| SeriesError::Domain(format!("expected a non-negative integer, found {k}")))
}

fn mono(v: &ArgVal) -> SignedMonomial {
    match v {
        ArgVal::Mono(m) => *m,
        _ => unreachable!("monomial argument"),
    }
}

fn eisenstein_at(weight: u32, n: i64, order: i64) -> Result<QSeries, SeriesError> {
    if n <= 0 {
        return Err(SeriesError::Domain(format!("argument q^{n} needs n > 0")));
    }
    let inner = (order + n - 1) / n;
    Ok(eisenstein_e(weight, inner)?.substitute(Exponent::from_integer(n))?.truncate(Exponent::from_integer(order)))
}

fn call(func: Func, args: &[ArgVal], order: i64) -> Result<QSeries, SeriesError> {
    let named_fn = match func {
        Func::Phi => Some(NamedFn::Phi),
        Func::Psi => Some(NamedFn::Psi),
        Func::PhiNeg => Some(NamedFn::PhiNeg),
        Func::PsiNeg => Some(NamedFn::PsiNeg),
        Func::ChiNeg => Some(NamedFn::ChiNeg),
        Func::ChiPos => Some(NamedFn::ChiPos),
        Func::EulerF => Some(NamedFn::EulerF),
        Func::FPlus => Some(NamedFn::FPlus),
        _ => None,
    };
    if let Some(f) = named_fn {
        return match &args[0] {
            ArgVal::Scale(k) => named(f, *k, order),
            ArgVal::Mono(m) => named_at(f, *m, order),
            ArgVal::Lit(_) => unreachable!("argument kind"),
        };
    }
    match func {
        Func::Theta => theta_product(ThetaArgs::new(mono(&args[0]), mono(&args[1]))?, order),
        Func::ThetaNeg => theta_product(ThetaArgs::new(mono(&args[0]).negated(), mono(&args[1]).negated())?, order),
        Func::ThetaSum => theta_sum(ThetaArgs::new(mono(&args[0]), mono(&args[1]))?, order),
        Func::Pochhammer => match pochhammer_signed(mono(&args[0]), mono(&args[1]), order) {
            Err(SeriesError::ZeroProduct) => {
                let den = lcm(mono(&args[0]).granularity(), mono(&args[1]).granularity());
                Ok(QSeries::zero(den, Exponent::from_integer(order)))
            }
            other => other,
        },
        Func::Gamma1 => gamma_omega(GammaOmega::Gamma1, order),
        Func::Gamma2 => gamma_omega(GammaOmega::Gamma2, order),
        Func::Omega1 => gamma_omega(GammaOmega::Omega1, order),
        Func::Omega2 => gamma_omega(GammaOmega::Omega2, order),
        Func::L => eisenstein_l(int_arg(&args[0])?, order),
        Func::M => eisenstein_at(4, int_arg(&args[0])?, order),
        Func::N => eisenstein_at(6, int_arg(&args[0])?, order),
        Func::E => eisenstein_e(positive_u32(&args[0])?, order),
        Func::Alpha => alpha_series(order),
        Func::Beta => beta_series(order),
        Func::Mult => multiplier_series(order),
        Func::Lambert => {
            let p = positive_u32(&args[5])?;
            let spec =
                LambertSpec::new(lit(&args[0])?, lit(&args[1])?, int_arg(&args[2])?, lit(&args[3])?, lit(&args[4])?, p);
            unilateral_lambert(&spec, order)
        }
        Func::DivSum => unilateral_lambert(&LambertSpec::divisor(positive_u32(&args[0])?), order),
        Func::BiLambert => bilateral_lambert(mono(&args[0]), int_arg(&args[1])?, positive_u32(&args[2])?, order),
        Func::BiRatio => bilateral_ratio(mono(&args[0]), mono(&args[1]), int_arg(&args[2])?, order),
        _ => unreachable!("named functions handled above"),
    }
}

/// Expands `e` below `q^order` on a lattice at least as fine as
/// `q^(1/granularity)`.
///
/// The result may be known to less than `order` when intermediate
/// cancellation costs precision; its [`QSeries::order`] says how far.
pub fn evaluate(e: &Expr, bindings: &Bindings, order: i64, granularity: i64) -> Result<QSeries, ExprError> {
    let mut ev = Evaluator::new(bindings);
    let target = Exponent::from_integer(order);
    let s = ev.series(e, target)?.truncate(target);
    let d = lcm(granularity.max(1), s.granularity());
    s.refine(d).map_err(lift)
}

/// Evaluates an expression that must reduce to `±q^e`, such as a call
/// argument `-q^10/(x*y)`.
pub fn monomial_value(e: &Expr, bindings: &Bindings) -> Result<SignedMonomial, ExprError> {
    let mut ev = Evaluator::new(bindings);
    match ev.eval(e, Exponent::one())? {
        Value::Term(c, k) if c.abs().is_one() => Ok(SignedMonomial::laurent(c.is_negative(), k)),
        _ => Err(ExprError::Argument { path: String::new(), message: format!("`{e}` is not of the form ±q^e") }),
    }
}
