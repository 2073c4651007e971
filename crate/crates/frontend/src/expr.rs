//! Expression grammar shared by input and output.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' INT)*
//! atom  := INT | IDENT | '(' expr ')'
//! ```

use std::fmt;

use idarc_core::algebra::{Modulus, MultiPoly, Poly, RatFunc, Ring};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(u64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable {name:?} at offset {offset}")]
    UnknownVariable { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownVariable { offset, .. } => {
                *offset
            }
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.src[self.pos..]
                .chars()
                .next()
                .map_or(0, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return self.error("expected a nonnegative integer exponent");
            }
            let Ok(exp) = digits.parse::<u32>() else {
                self.pos = start;
                return self.error("exponent out of range");
            };
            base = Expr::Pow(Box::new(base), exp);
        }
        Ok(base)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        self.pos += len;
        &self.src[start..start + len]
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits = self.digits();
                digits.parse::<u64>().map(Expr::Int).or_else(|_| {
                    self.pos = start;
                    self.error("integer literal out of range")
                })
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let len = self.src[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.src.len() - start);
                let name = &self.src[start..start + len];
                if !self.vars.contains(&name) {
                    return Err(ParseError::UnknownVariable {
                        offset: start,
                        name: name.to_string(),
                    });
                }
                self.pos += len;
                Ok(Expr::Var(name.to_string()))
            }
            Some(c) => self.error(format!("unexpected {c:?}")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses `src`, accepting only the variables in `vars`.
pub fn parse_expr(src: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0, vars };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.error(format!("unexpected {c:?}"));
    }
    Ok(e)
}

/// Splits a parenthesised, comma-separated list at top level. A bare
/// expression is a one-element list. Offsets are into `src`.
pub fn split_tuple(src: &str) -> Result<Vec<(usize, &str)>, ParseError> {
    let trimmed_start = src.len() - src.trim_start().len();
    let body = src.trim();
    let err = |offset: usize, message: &str| ParseError::Syntax {
        offset,
        message: message.to_string(),
    };
    let mut depth = 0usize;
    let mut parts = vec![];
    let mut start = trimmed_start;
    let is_tuple = body.starts_with('(') && {
        // The outer parentheses must enclose the whole input.
        let mut d = 0usize;
        let mut closes_at = None;
        for (i, c) in body.char_indices() {
            match c {
                '(' => d += 1,
                ')' => {
                    d = d.saturating_sub(1);
                    if d == 0 {
                        closes_at = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        closes_at == Some(body.len() - 1)
    };
    if !is_tuple {
        return Ok(vec![(trimmed_start, body)]);
    }
    let inner_start = trimmed_start + 1;
    let inner = &src[inner_start..trimmed_start + body.len() - 1];
    let mut has_comma = false;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| err(inner_start + i, "unbalanced ')'"))?;
            }
            ',' if depth == 0 => {
                has_comma = true;
                parts.push((
                    start.max(inner_start),
                    &src[start.max(inner_start)..inner_start + i],
                ));
                start = inner_start + i + 1;
            }
            _ => {}
        }
    }
    if !has_comma {
        // `(t + 1)` is a parenthesised expression, also a 1-tuple.
        return Ok(vec![(inner_start, inner)]);
    }
    parts.push((start, &src[start..inner_start + inner.len()]));
    Ok(parts
        .into_iter()
        .map(|(off, s)| (off + (s.len() - s.trim_start().len()), s.trim()))
        .collect())
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Var(_) => 5,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if prec(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Minimal parentheses; `+ -` and `* /` are left associative.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bin = |f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8| {
            write_at(f, a, p)?;
            f.write_str(op)?;
            write_at(f, b, p + 1)
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_at(f, a, 3)
            }
            Expr::Add(a, b) => bin(f, a, " + ", b, 1),
            Expr::Sub(a, b) => bin(f, a, " - ", b, 1),
            Expr::Mul(a, b) => bin(f, a, "*", b, 2),
            Expr::Div(a, b) => bin(f, a, "/", b, 2),
            Expr::Pow(a, n) => {
                write_at(f, a, 4)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("division by a non-invertible value")]
    NonInvertible,
    #[error("unbound variable {0:?}")]
    Unbound(String),
}

/// Evaluates into any ring; literals are reduced mod `p`.
pub fn eval<R: Ring>(
    e: &Expr,
    modulus: Modulus,
    one: &R,
    var: &dyn Fn(&str) -> Option<R>,
) -> Result<R, EvalError> {
    let go = |x: &Expr| eval(x, modulus, one, var);
    Ok(match e {
        Expr::Int(n) => one.int_like(modulus.reduce(*n) as i64),
        Expr::Var(v) => var(v).ok_or_else(|| EvalError::Unbound(v.clone()))?,
        Expr::Neg(a) => -go(a)?,
        Expr::Add(a, b) => go(a)? + go(b)?,
        Expr::Sub(a, b) => go(a)? - go(b)?,
        Expr::Mul(a, b) => go(a)? * go(b)?,
        Expr::Div(a, b) => {
            let d = go(b)?.unit_inverse().ok_or(EvalError::NonInvertible)?;
            go(a)? * d
        }
        Expr::Pow(a, n) => go(a)?.pow(*n),
    })
}

/// An element of F_p(t) written over the single variable `t`.
pub fn eval_ratfunc(e: &Expr, modulus: Modulus) -> Result<RatFunc, EvalError> {
    let t = RatFunc::t(modulus);
    eval(e, modulus, &RatFunc::one(modulus), &|v| {
        (v == "t").then(|| t.clone())
    })
}

fn var(name: &str) -> Box<Expr> {
    Box::new(Expr::Var(name.to_string()))
}

fn power_of(name: &str, n: u32) -> Expr {
    match n {
        1 => Expr::Var(name.to_string()),
        n => Expr::Pow(var(name), n),
    }
}

/// `c*f_1*f_2*..` as a left-nested product, dropping a unit coefficient.
fn scaled(c: Expr, factors: Vec<Expr>) -> Expr {
    let lead = match c {
        Expr::Int(1) if !factors.is_empty() => None,
        c => Some(c),
    };
    lead.into_iter()
        .chain(factors)
        .reduce(|a, b| Expr::Mul(Box::new(a), Box::new(b)))
        .expect("coefficient or factor present")
}

fn sum(terms: Vec<Expr>) -> Expr {
    terms
        .into_iter()
        .reduce(|a, b| Expr::Add(Box::new(a), Box::new(b)))
        .unwrap_or(Expr::Int(0))
}

/// Descending powers of `t`.
pub fn poly_expr(f: &Poly) -> Expr {
    sum(f
        .terms()
        .rev()
        .map(|(n, c)| {
            scaled(
                Expr::Int(c),
                (n > 0).then(|| power_of("t", n)).into_iter().collect(),
            )
        })
        .collect())
}

/// `num*f_1*.. / den`; the factors sit in the numerator.
fn quotient_term(x: &RatFunc, mono: Vec<Expr>) -> Expr {
    let num = scaled(poly_expr(x.numer()), mono);
    if x.is_polynomial() {
        num
    } else {
        Expr::Div(Box::new(num), Box::new(poly_expr(x.denom())))
    }
}

pub fn ratfunc_expr(x: &RatFunc) -> Expr {
    quotient_term(x, vec![])
}

/// `c_0 + c_1*e + ...` with zero coefficients omitted.
pub fn series_expr(coeffs: &[RatFunc]) -> Expr {
    sum(coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            quotient_term(
                c,
                (i > 0)
                    .then(|| power_of("e", i as u32))
                    .into_iter()
                    .collect(),
            )
        })
        .collect())
}

fn monomial(exps: &[u32], names: &[String]) -> Vec<Expr> {
    exps.iter()
        .zip(names)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, n)| power_of(n, e))
        .collect()
}

/// Terms by total degree, then exponent vector, both descending.
pub fn multipoly_expr(f: &MultiPoly, names: &[String]) -> Expr {
    let mut terms: Vec<(&Vec<u32>, &RatFunc)> = f.terms().collect();
    terms.sort_by(|(a, _), (b, _)| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        db.cmp(&da).then_with(|| b.cmp(a))
    });
    sum(terms
        .into_iter()
        .map(|(e, c)| quotient_term(c, monomial(e, names)))
        .collect())
}
