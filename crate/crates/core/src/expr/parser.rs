//! Recursive-descent parser with line/column diagnostics.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{ArgKind, Expr, ExprError, Func};
use crate::rational::{Exponent, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            column += i - start;
            let n = s.parse::<BigInt>().expect("digits");
            out.push(Token { tok: Tok::Int(n), line: l0, column: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: l0, column: c0 });
            continue;
        }
        if "+-*/^(),".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, column: c0 });
            column += 1;
            i += 1;
            continue;
        }
        return Err(ExprError::Syntax { line, column, message: format!("unexpected character `{c}`") });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
        Tok::End => "end of input".to_string(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn error_here(&self, message: String) -> ExprError {
        let t = self.peek();
        ExprError::Syntax { line: t.line, column: t.column, message }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`, found {}", describe(&self.peek().tok))))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                acc = Expr::add(acc, self.term()?);
            } else if self.is_sym('-') {
                self.next();
                acc = Expr::sub(acc, self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut acc = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = Expr::mul(acc, self.unary()?);
            } else if self.is_sym('/') {
                self.next();
                let rhs = self.unary()?;
                acc = match (acc, rhs) {
                    (Expr::Num(a), Expr::Num(b)) if !b.is_zero() => Expr::Num(a / b),
                    (a, b) => Expr::div(a, b),
                };
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.is_sym('-') {
            self.next();
            return Ok(match self.unary()? {
                Expr::Num(c) => Expr::Num(-c),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.is_sym('^') {
            self.next();
            let k = self.signed_int()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    /// `-?int` or `( -?int )`.
    fn signed_int(&mut self) -> Result<i64, ExprError> {
        let paren = self.is_sym('(');
        if paren {
            self.next();
        }
        let neg = self.is_sym('-');
        if neg {
            self.next();
        }
        let t = self.next();
        let n = match t.tok {
            Tok::Int(n) => n,
            other => {
                return Err(ExprError::Syntax {
                    line: t.line,
                    column: t.column,
                    message: format!("expected an integer, found {}", describe(&other)),
                })
            }
        };
        let n = n.to_i64().ok_or(ExprError::Syntax {
            line: t.line,
            column: t.column,
            message: "integer out of range".to_string(),
        })?;
        if paren {
            self.expect(')')?;
        }
        Ok(if neg { -n } else { n })
    }

    /// `-?int ('/' int)?`, optionally parenthesised.
    fn rational(&mut self) -> Result<Exponent, ExprError> {
        let paren = self.is_sym('(');
        if paren {
            self.next();
        }
        let here = (self.peek().line, self.peek().column);
        let num = self.signed_int()?;
        let mut den = 1;
        if self.is_sym('/') && matches!(self.peek_at(1), Tok::Int(_)) {
            self.next();
            den = self.signed_int()?;
        }
        if den == 0 {
            return Err(ExprError::Syntax { line: here.0, column: here.1, message: "zero denominator".into() });
        }
        if paren {
            self.expect(')')?;
        }
        Ok(Exponent::new(num, den))
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(Expr::Num(Rational::from_integer(n))),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.named(name, t.line, t.column),
            other => Err(ExprError::Syntax {
                line: t.line,
                column: t.column,
                message: format!("expected an expression, found {}", describe(&other)),
            }),
        }
    }

    fn named(&mut self, name: String, line: usize, column: usize) -> Result<Expr, ExprError> {
        let call = self.is_sym('(');
        match name.as_str() {
            "q" if !call => {
                if self.is_sym('^') {
                    self.next();
                    Ok(Expr::QPow(self.rational()?))
                } else {
                    Ok(Expr::QPow(Exponent::from_integer(1)))
                }
            }
            "root" if call => {
                self.next();
                let e = self.expr()?;
                self.expect(',')?;
                let here = (self.peek().line, self.peek().column);
                let n = self.signed_int()?;
                self.expect(')')?;
                if n < 1 || n > u32::MAX as i64 {
                    return Err(ExprError::Syntax {
                        line: here.0,
                        column: here.1,
                        message: format!("root index {n} must be positive"),
                    });
                }
                Ok(Expr::Root(Box::new(e), n as u32))
            }
            "subq" if call => {
                self.next();
                let e = self.expr()?;
                self.expect(',')?;
                let here = (self.peek().line, self.peek().column);
                let k = self.rational()?;
                self.expect(')')?;
                if k <= Exponent::zero() {
                    return Err(ExprError::Syntax {
                        line: here.0,
                        column: here.1,
                        message: format!("substitution exponent {k} must be positive"),
                    });
                }
                Ok(Expr::SubQ(Box::new(e), k))
            }
            _ if call => {
                let func = Func::from_name(&name).ok_or(ExprError::UnknownName { line, column, name: name.clone() })?;
                self.next();
                let mut args = Vec::new();
                let mut positions = Vec::new();
                if !self.is_sym(')') {
                    loop {
                        positions.push((self.peek().line, self.peek().column));
                        args.push(self.expr()?);
                        if self.is_sym(',') {
                            self.next();
                        } else {
                            break;
                        }
                    }
                }
                self.expect(')')?;
                if args.len() != func.arity() {
                    return Err(ExprError::Arity { line, column, name, expected: func.arity(), found: args.len() });
                }
                for ((arg, kind), (l, c)) in args.iter().zip(func.args()).zip(positions) {
                    let ok = match kind {
                        ArgKind::Literal => matches!(arg, Expr::Num(_)),
                        ArgKind::Integer => matches!(arg, Expr::Num(n) if n.is_integer()),
                        ArgKind::Monomial | ArgKind::Argument => true,
                    };
                    if !ok {
                        return Err(ExprError::Syntax {
                            line: l,
                            column: c,
                            message: format!(
                                "argument of `{}` must be a literal {}",
                                func.name(),
                                match kind {
                                    ArgKind::Integer => "integer",
                                    _ => "rational",
                                }
                            ),
                        });
                    }
                }
                Ok(Expr::Call(func, args))
            }
            _ if Func::from_name(&name).is_some() || name == "root" || name == "subq" => {
                Err(ExprError::Syntax { line, column, message: format!("`{name}` needs an argument list") })
            }
            _ => Ok(Expr::Param(name)),
        }
    }
}

/// Parses one expression.
pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::End {
        return Err(p.error_here(format!("unexpected {}", describe(&p.peek().tok))));
    }
    Ok(e)
}
