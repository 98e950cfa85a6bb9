//! A small language for writing q-series identities.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' int)?
//! atom   := rational | 'q' ('^' rational)? | name | name '(' args ')'
//!         | 'root' '(' expr ',' int ')' | 'subq' '(' expr ',' rational ')'
//!         | '(' expr ')'
//! ```
//!
//! A bare `name` is a parameter bound at evaluation time to a signed
//! monomial. `q^1/2` and `q^(1/2)` both denote `q^(1/2)`. A division of two
//! literals is folded into a single rational literal, as is a negated
//! literal, so `-3/4` is one [`Expr::Num`].

mod eval;
mod parser;
mod print;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::SeriesError;
use crate::rational::{Exponent, Rational};

pub use eval::{evaluate, monomial_value, Bindings, Evaluator};
pub use parser::parse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    /// `q^e`
    QPow(Exponent),
    Param(String),
    Call(Func, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Root(Box<Expr>, u32),
    /// `q -> q^k`
    SubQ(Box<Expr>, Exponent),
}

/// How a call argument is interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    /// An expression that evaluates to `±q^e`.
    Monomial,
    /// A positive literal `k` standing for `q^k`, or a monomial expression.
    Argument,
    /// A rational literal.
    Literal,
    /// An integer literal.
    Integer,
}

macro_rules! funcs {
    ($($variant:ident => $name:literal [$($kind:ident),*] $doc:literal;)*) => {
        /// Built-in functions of the language.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Func {
            $(#[doc = $doc] $variant,)*
        }

        impl Func {
            pub const ALL: &'static [Func] = &[$(Func::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Func::$variant => $name,)*
                }
            }

            pub fn args(self) -> &'static [ArgKind] {
                match self {
                    $(Func::$variant => &[$(ArgKind::$kind),*],)*
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(Func::$variant => $doc,)*
                }
            }
        }
    };
}

funcs! {
    Phi => "phi" [Argument] "phi(a) = f(a, a)";
    Psi => "psi" [Argument] "psi(a) = f(a, a^3)";
    PhiNeg => "phineg" [Argument] "phi(-a)";
    PsiNeg => "psineg" [Argument] "psi(-a)";
    ChiNeg => "chi_neg" [Argument] "chi(-a) = (a; a^2)_inf";
    ChiPos => "chi_pos" [Argument] "chi(a) = (-a; a^2)_inf";
    EulerF => "euler_f" [Argument] "f(-a) = (a; a)_inf";
    FPlus => "f_plus" [Argument] "f(a) = f(a, -a^2)";
    Theta => "theta" [Monomial, Monomial] "f(r, s), product form";
    ThetaNeg => "theta_neg" [Monomial, Monomial] "f(-r, -s), product form";
    ThetaSum => "thetasum" [Monomial, Monomial] "f(r, s), summed directly";
    Pochhammer => "pochhammer" [Monomial, Monomial] "(b; t)_inf";
    Gamma1 => "gamma1" [] "f(q, q^9) / f(-q, -q^9)";
    Gamma2 => "gamma2" [] "f(q^3, q^7) / f(-q^3, -q^7)";
    Omega1 => "omega1" [] "f(q^4, q^6) / f(-q, -q^9)";
    Omega2 => "omega2" [] "q f(q^2, q^8) / f(-q^3, -q^7)";
    L => "L" [Integer] "L(q^n) = E_2(q^n)";
    M => "M" [Integer] "M(q^n) = E_4(q^n)";
    N => "N" [Integer] "N(q^n) = E_6(q^n)";
    E => "E" [Integer] "Eisenstein series of the given even weight";
    Alpha => "alpha" [] "16 q psi^4(q^2) / phi^4(q)";
    Beta => "beta" [] "alpha(q^5)";
    Mult => "mult" [] "phi^2(q) / phi^2(q^5)";
    Lambert => "lambert" [Literal, Literal, Integer, Literal, Literal, Integer]
        "lambert(a, b, s, c, d, p) = sum_{n >= 0} q^(an+b) / (1 - s q^(cn+d))^p";
    DivSum => "divsum" [Integer] "sum_{n >= 1} n^w q^n / (1 - q^n)";
    BiLambert => "bilambert" [Monomial, Integer, Integer]
        "bilambert(x, M, p) = sum_{n in Z} x q^(Mn) / (1 - x q^(Mn))^p";
    BiRatio => "biratio" [Monomial, Monomial, Integer]
        "biratio(z, a, M) = sum_{n in Z} z^n / (1 - a q^(Mn))";
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn arity(self) -> usize {
        self.args().len()
    }
}

/// Errors from parsing or evaluating an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    UnknownName {
        line: usize,
        column: usize,
        name: String,
    },
    Arity {
        line: usize,
        column: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    Unbound {
        path: String,
        name: String,
    },
    Argument {
        path: String,
        message: String,
    },
    /// An algebraic failure, located by the path of AST nodes leading to it.
    Eval {
        path: String,
        error: SeriesError,
    },
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { line, column, message } => {
                write!(f, "syntax error at {line}:{column}: {message}")
            }
            ExprError::UnknownName { line, column, name } => {
                write!(f, "unknown function `{name}` at {line}:{column}")
            }
            ExprError::Arity { line, column, name, expected, found } => {
                write!(f, "`{name}` at {line}:{column} takes {expected} argument(s), found {found}")
            }
            ExprError::Unbound { path, name } => write!(f, "unbound parameter `{name}` at {path}"),
            ExprError::Argument { path, message } => write!(f, "bad argument at {path}: {message}"),
            ExprError::Eval { path, error } => write!(f, "{error} (at {path})"),
        }
    }
}

impl core::error::Error for ExprError {}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn num(c: Rational) -> Expr {
        Expr::Num(c)
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    /// Names of all parameters, sorted and deduplicated.
    pub fn params(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_params(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_params(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) | Expr::QPow(_) => {}
            Expr::Param(p) => out.push(p.clone()),
            Expr::Call(_, args) => args.iter().for_each(|a| a.collect_params(out)),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Root(a, _) | Expr::SubQ(a, _) => a.collect_params(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_params(out);
                b.collect_params(out);
            }
        }
    }
}
