//! Arithmetic expressions for coefficients, matrix entries and
//! polynomials: `+ - * / ^`, parentheses, integers and symbols.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' '-'? INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::coeff::CoeffDomain;
use crate::laurent::{LaurentPoly, LaurentRing};

/// Symbol for the root of unity of a cyclotomic domain.
pub const ROOT_OF_UNITY: &str = "w";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{0}` is not allowed here")]
    ForbiddenSymbol(String),
    #[error("division by {0} is not exact")]
    NotDivisible(String),
    #[error("negative power of the non-unit {0}")]
    NegativePower(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative integer literal; signs are `Neg` nodes.
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, ExprError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push(Token::Int(text[i..end].parse().expect("digits")));
        } else if c.is_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push(Token::Ident(text[i..end].to_string()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            chars.next();
        } else {
            return Err(ExprError::Syntax(format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(lhs.into(), rhs.into())
            } else {
                Expr::Sub(lhs.into(), rhs.into())
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(lhs.into(), rhs.into())
            } else {
                Expr::Div(lhs.into(), rhs.into())
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                Ok(Expr::Neg(self.unary()?.into()))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = self.peek_op() == Some('-');
        if negative {
            self.pos += 1;
        }
        match self.tokens.get(self.pos) {
            Some(Token::Int(k)) => {
                let k = k
                    .to_i64()
                    .ok_or_else(|| ExprError::Syntax("exponent too large".into()))?;
                self.pos += 1;
                Ok(Expr::Pow(base.into(), if negative { -k } else { k }))
            }
            _ => Err(ExprError::Syntax("expected an integer exponent after `^`".into())),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Int(n)) => Ok(Expr::Int(n)),
            Some(Token::Ident(s)) => Ok(Expr::Sym(s)),
            Some(Token::Op('(')) => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(ExprError::Syntax("missing `)`".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Token::Op(c)) => Err(ExprError::Syntax(format!("unexpected `{c}`"))),
            None => Err(ExprError::Syntax("unexpected end of expression".into())),
        }
    }
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr, ExprError> {
        let mut p = Parser {
            tokens: tokenize(text)?,
            pos: 0,
        };
        let e = p.expr()?;
        match p.tokens.get(p.pos) {
            None => Ok(e),
            Some(t) => Err(ExprError::Syntax(format!("unexpected trailing {t:?}"))),
        }
    }

    pub fn int(n: i64) -> Expr {
        if n < 0 {
            Expr::Neg(Expr::Int(BigInt::from(-n)).into())
        } else {
            Expr::Int(n.into())
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Sym(_) => 5,
        }
    }

    /// Evaluates in Λ. Symbols resolve to variables of `ring`, except that
    /// `w` names the root of unity of a cyclotomic domain. Variables in
    /// `forbidden` are rejected.
    pub fn eval<R: CoeffDomain>(&self, ring: &LaurentRing<R>, forbidden: &[usize]) -> Result<LaurentPoly<R>, ExprError> {
        Ok(match self {
            Expr::Int(n) => ring.constant(ring.domain().from_int(n)),
            Expr::Sym(s) => match ring.vars().index_of(s) {
                Some(v) if forbidden.contains(&v) => return Err(ExprError::ForbiddenSymbol(s.clone())),
                Some(v) => ring.var(v),
                None => match ring.domain().generator() {
                    Some(g) if s == ROOT_OF_UNITY => ring.constant(g),
                    _ => return Err(ExprError::UnknownSymbol(s.clone())),
                },
            },
            Expr::Neg(a) => -a.eval(ring, forbidden)?,
            Expr::Add(a, b) => a.eval(ring, forbidden)? + b.eval(ring, forbidden)?,
            Expr::Sub(a, b) => a.eval(ring, forbidden)? - b.eval(ring, forbidden)?,
            Expr::Mul(a, b) => a.eval(ring, forbidden)? * b.eval(ring, forbidden)?,
            Expr::Div(a, b) => {
                let d = b.eval(ring, forbidden)?;
                a.eval(ring, forbidden)?
                    .exact_div(&d)
                    .map_err(|_| ExprError::NotDivisible(d.render()))?
            }
            Expr::Pow(a, k) => {
                let base = a.eval(ring, forbidden)?;
                let e = u32::try_from(k.unsigned_abs())
                    .map_err(|_| ExprError::Syntax("exponent too large".into()))?;
                if *k >= 0 {
                    base.pow(e)
                } else {
                    base.unit_inverse()
                        .ok_or_else(|| ExprError::NegativePower(base.render()))?
                        .pow(e)
                }
            }
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "{}", if matches!(self, Expr::Mul(..)) { '*' } else { '/' })?;
                wrap(b, 3, f)
            }
            Expr::Pow(a, k) => {
                wrap(a, 5, f)?;
                write!(f, "^{k}")
            }
        }
    }
}

/// Parses a polynomial written in the canonical rendering (or any
/// expression) into `ring`.
pub fn parse_poly<R: CoeffDomain>(ring: &LaurentRing<R>, text: &str) -> Result<LaurentPoly<R>, ExprError> {
    Expr::parse(text)?.eval(ring, &[])
}
