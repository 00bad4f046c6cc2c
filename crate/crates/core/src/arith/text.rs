//! Text form of ring elements: `3*x^2*y - 1/2*z + 7`.
//!
//! The parser is a small recursive-descent grammar accepting sums, products,
//! powers, unary minus, parentheses and `num/den` literals; the printer emits
//! the canonical term order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::monomial::Monomial;
use super::poly::{Ring, RingElement};
use crate::error::{Error, Result};

pub(crate) fn write_element(f: &mut fmt::Formatter<'_>, e: &RingElement) -> fmt::Result {
    if e.is_zero() {
        return f.write_str("0");
    }
    let vars = e.ring().vars();
    for (k, (m, c)) in e.terms().iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        let mut first = true;
        if !abs.is_one() || m.is_one() {
            write!(f, "{abs}")?;
            first = false;
        }
        for (i, &exp) in m.exponents().iter().enumerate() {
            if exp == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&vars[i])?;
            if exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Token::Int(digits.parse().expect("digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            _ => {
                out.push(match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    other => return Err(Error::parse(0, format!("unexpected character `{other}`"))),
                });
                i += 1;
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a Ring,
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RingElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RingElement> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RingElement> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RingElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e = n.to_u32().ok_or_else(|| Error::parse(0, "exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(Error::parse(0, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingElement> {
        match self.bump() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.pos += 1;
                    let d = match self.bump() {
                        Some(Token::Int(d)) if d != BigInt::from(0) => d,
                        _ => return Err(Error::parse(0, "expected a non-zero denominator")),
                    };
                    let q = self.ring.domain().from_rational(BigRational::new(n, d)).map_err(|e| Error::parse(0, e.to_string()))?;
                    return Ok(RingElement::constant(self.ring, q));
                }
                Ok(RingElement::from_integer(self.ring, n))
            }
            Some(Token::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(RingElement::variable(self.ring, i)),
                None => Err(Error::parse(0, format!("unknown variable `{name}`"))),
            },
            Some(Token::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(e),
                    _ => Err(Error::parse(0, "missing `)`")),
                }
            }
            Some(t) => Err(Error::parse(0, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(0, "unexpected end of input")),
        }
    }
}

impl RingElement {
    /// Parses the text form; line numbers in errors are zero (callers that
    /// read documents substitute their own).
    pub fn parse(ring: &Ring, s: &str) -> Result<RingElement> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(Error::parse(0, "empty ring element"));
        }
        let mut p = Parser { ring, tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::parse(0, format!("trailing input in `{s}`")));
        }
        Ok(e)
    }
}

/// Builds `c * x^e` style terms from exponent vectors; handy in tests.
pub fn term(ring: &Ring, c: i64, exps: &[u32]) -> RingElement {
    RingElement::monomial(ring, Monomial::from_exponents(exps), ring.domain().from_i64(c))
}
