//! Printing with minimal parentheses; the output parses back to the same tree.

use core::fmt;

use num_traits::Signed;

use super::Expr;
use crate::rational::format_exponent;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Num(c) if !c.is_integer() => PRODUCT,
        Expr::Num(c) if c.is_negative() => UNARY,
        Expr::Num(_) => ATOM,
        Expr::QPow(_) | Expr::Pow(..) => POWER,
        Expr::Neg(_) => UNARY,
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::Param(_) | Expr::Call(..) | Expr::Root(..) | Expr::SubQ(..) => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        write!(f, "(")?;
        write_expr(f, e)?;
        write!(f, ")")
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Num(c) => write!(f, "{c}"),
        Expr::QPow(k) => {
            if *k == 1.into() {
                write!(f, "q")
            } else if k.is_integer() {
                write!(f, "q^{}", k.numer())
            } else {
                write!(f, "q^({})", format_exponent(k))
            }
        }
        Expr::Param(p) => write!(f, "{p}"),
        Expr::Call(func, args) => {
            write!(f, "{}(", func.name())?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write_expr(f, a)?;
            }
            write!(f, ")")
        }
        Expr::Neg(a) => {
            write!(f, "-")?;
            write_at(f, a, UNARY)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_at(f, a, SUM)?;
            write!(f, " {} ", if matches!(e, Expr::Add(..)) { '+' } else { '-' })?;
            write_at(f, b, PRODUCT)
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_at(f, a, PRODUCT)?;
            write!(f, "{}", if matches!(e, Expr::Mul(..)) { "*" } else { " / " })?;
            write_at(f, b, UNARY)
        }
        Expr::Pow(a, k) => {
            write_at(f, a, ATOM)?;
            write!(f, "^{k}")
        }
        Expr::Root(a, n) => {
            write!(f, "root(")?;
            write_expr(f, a)?;
            write!(f, ", {n})")
        }
        Expr::SubQ(a, k) => {
            write!(f, "subq(")?;
            write_expr(f, a)?;
            write!(f, ", {})", format_exponent(k))
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}
