//! Text syntax for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | identifier | '(' expr ')'
//! ```
//!
//! Parsing is purely syntactic and produces an [`Expr`]; variables are
//! resolved against a ring afterwards, so syntax errors can be reported
//! before a ring is known.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Expected(Vec<&'static str>),
    UnknownVariable(String),
    ZeroDenominator,
    ExponentTooLarge,
}

/// A parse or resolution error at a character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Expected(set) => write!(f, "expected {}", set.join(" or ")),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            ParseErrorKind::ZeroDenominator => write!(f, "denominator is zero in this field"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent too large"),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.kind, self.offset)
    }
}

impl std::error::Error for ParseError {}

/// Syntax tree of a polynomial expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Number {
        num: BigInt,
        den: BigInt,
        offset: usize,
    },
    Var {
        name: String,
        offset: usize,
    },
    /// Signed summands; `true` marks a subtracted term.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Power(Box<Expr>, u32),
}

impl Expr {
    pub fn to_polynomial(&self, ring: &Arc<Ring>, order: MonomialOrder) -> Result<Polynomial, ParseError> {
        Ok(match self {
            Expr::Number { num, den, offset } => {
                let c = ring.field().from_ratio(num, den).ok_or(ParseError {
                    offset: *offset,
                    kind: ParseErrorKind::ZeroDenominator,
                })?;
                Polynomial::constant(ring, order, c)
            }
            Expr::Var { name, offset } => match ring.var_index(name) {
                Some(i) => Polynomial::variable(ring, order, i),
                None => {
                    return Err(ParseError {
                        offset: *offset,
                        kind: ParseErrorKind::UnknownVariable(name.clone()),
                    })
                }
            },
            Expr::Sum(parts) => {
                let mut acc = Polynomial::zero(ring, order);
                for (neg, e) in parts {
                    let p = e.to_polynomial(ring, order)?;
                    acc = if *neg { &acc - &p } else { &acc + &p };
                }
                acc
            }
            Expr::Product(parts) => {
                let mut acc = Polynomial::one(ring, order);
                for e in parts {
                    acc = &acc * &e.to_polynomial(ring, order)?;
                }
                acc
            }
            Expr::Power(base, k) => base.to_polynomial(ring, order)?.power(*k),
        })
    }
}

/// Character cursor shared by the polynomial parser and script parsers
/// built on top of it. Offsets are counted in characters.
pub struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

const MAX_EXPONENT: u32 = 10_000;

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    pub fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ' || c == '\t' || c == '\r') {
            self.pos += 1;
        }
    }

    pub fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError {
            offset: self.pos,
            kind: ParseErrorKind::Expected(expected),
        }
    }

    /// Consumes `c` (after whitespace) if present.
    pub fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(vec![what]))
        }
    }

    pub fn ident(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some((self.chars[start..self.pos].iter().collect(), start))
    }

    /// Consumes `word` if it is the next identifier.
    pub fn keyword(&mut self, word: &str) -> bool {
        let save = self.pos;
        match self.ident() {
            Some((w, _)) if w == word => true,
            _ => {
                self.pos = save;
                false
            }
        }
    }

    pub fn integer(&mut self) -> Option<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Some((s.parse().expect("digits parse"), start))
    }

    pub fn small_integer(&mut self, what: &'static str) -> Result<u64, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let (n, _) = self.integer().ok_or_else(|| self.error(vec![what]))?;
        n.to_u64().ok_or(ParseError {
            offset: at,
            kind: ParseErrorKind::Expected(vec![what]),
        })
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = Vec::new();
        let mut neg = false;
        self.skip_ws();
        if self.eat('-') {
            neg = true;
        } else {
            self.eat('+');
        }
        parts.push((neg, self.term()?));
        loop {
            if self.eat('+') {
                parts.push((false, self.term()?));
            } else if self.eat('-') {
                parts.push((true, self.term()?));
            } else {
                break;
            }
        }
        if parts.len() == 1 && !parts[0].0 {
            return Ok(parts.pop().expect("one part").1);
        }
        Ok(Expr::Sum(parts))
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '(')
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut factors = vec![self.factor()?];
        loop {
            // juxtaposition is multiplication
            if self.eat('*') || self.starts_factor() {
                factors.push(self.factor()?);
            } else {
                break;
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let (k, _) = self.integer().ok_or_else(|| self.error(vec!["exponent"]))?;
            let k = k.to_u32().filter(|&k| k <= MAX_EXPONENT).ok_or(ParseError {
                offset: at,
                kind: ParseErrorKind::ExponentTooLarge,
            })?;
            return Ok(Expr::Power(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if let Some((num, offset)) = self.integer() {
            let den = if self.eat('/') {
                let (d, at) = self.integer().ok_or_else(|| self.error(vec!["denominator"]))?;
                if d.is_zero() {
                    return Err(ParseError {
                        offset: at,
                        kind: ParseErrorKind::ZeroDenominator,
                    });
                }
                d
            } else {
                BigInt::from(1)
            };
            return Ok(Expr::Number { num, den, offset });
        }
        if let Some((name, offset)) = self.ident() {
            return Ok(Expr::Var { name, offset });
        }
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')', "`)`")?;
            return Ok(e);
        }
        Err(self.error(vec!["term"]))
    }
}

/// Parses a complete polynomial in `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>, order: MonomialOrder) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(text);
    let e = cur.expr()?;
    cur.skip_ws();
    if !cur.at_end() {
        return Err(cur.error(vec!["operator", "end of input"]));
    }
    e.to_polynomial(ring, order)
}

/// Parses a monomial exponent vector written as a polynomial with one term.
pub fn parse_monomial(text: &str, ring: &Arc<Ring>) -> Option<Monomial> {
    let p = parse_polynomial(text, ring, MonomialOrder::Grevlex).ok()?;
    if p.is_monomial() {
        p.leading_monomial().copied()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    #[test]
    fn syntax_errors_carry_offsets() {
        let mut c = Cursor::new("x,");
        let e = c.expr().unwrap();
        assert_eq!(
            e,
            Expr::Var {
                name: "x".into(),
                offset: 0
            }
        );
        let err = Cursor::new("x + ").expr().unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind.to_string(), "expected term");
    }

    #[test]
    fn implicit_multiplication_and_parentheses() {
        let r = Ring::new(&["x", "y"], Field::Rationals).unwrap();
        let a = parse_polynomial("2 x^2 y", &r, MonomialOrder::Grevlex).unwrap();
        let b = parse_polynomial("2*x^2*y", &r, MonomialOrder::Grevlex).unwrap();
        assert_eq!(a, b);
        let c = parse_polynomial("(x+y)^2 - (x-y)^2", &r, MonomialOrder::Grevlex).unwrap();
        assert_eq!(c.to_string(), "4*x*y");
    }

    #[test]
    fn resolution_errors() {
        let r = Ring::new(&["x", "y"], Field::Rationals).unwrap();
        let err = parse_polynomial("x + z", &r, MonomialOrder::Grevlex).unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::UnknownVariable("z".into()));
        assert!(parse_polynomial("1/0", &r, MonomialOrder::Grevlex).is_err());
        let f5 = Ring::new(&["x"], Field::Prime(5)).unwrap();
        assert_eq!(
            parse_polynomial("x/5", &f5, MonomialOrder::Grevlex).unwrap_err().kind,
            ParseErrorKind::Expected(vec!["operator", "end of input"])
        );
        assert_eq!(
            parse_polynomial("1/5*x", &f5, MonomialOrder::Grevlex).unwrap_err().kind,
            ParseErrorKind::ZeroDenominator
        );
        assert!(parse_polynomial("2.5*x", &r, MonomialOrder::Grevlex).is_err());
    }
}
