//! Text form of hyperreal values.
//!
//! ```text
//! literal  := term (("+" | "-") term)*
//! term     := rational ["e" integer]
//! rational := integer ["/" positive-integer]
//! ```
//!
//! `e` stands for `ε`: `2e1` is `2ε`, `1/2e-1` is `ε⁻¹/2`, a bare rational is
//! a standard number. Whitespace between tokens is ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{Hyperreal, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {}: {message}", .position + 1)]
pub struct ParseError {
    /// Zero-based character offset into the input.
    pub position: usize,
    pub message: String,
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("ascii digits"))
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let n = self.digits()?;
        Ok(if negative { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let numer = self.integer()?;
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(ParseError {
                    position: at,
                    message: "denominator must be positive".into(),
                });
            }
            Ok(Rational::new(numer, denom))
        } else {
            Ok(Rational::from_integer(numer))
        }
    }

    fn term(&mut self) -> Result<(i64, Rational), ParseError> {
        let coeff = self.rational()?;
        let exp = if self.peek() == Some('e') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?;
            i64::try_from(e).map_err(|_| ParseError {
                position: at,
                message: "exponent out of range".into(),
            })?
        } else {
            0
        };
        Ok((exp, coeff))
    }

    fn literal(&mut self) -> Result<Hyperreal, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                None => break,
                Some(op @ ('+' | '-')) => {
                    self.pos += 1;
                    let (e, c) = self.term()?;
                    terms.push((e, if op == '-' { -c } else { c }));
                }
                Some(c) => return Err(self.error(format!("unexpected character '{c}'"))),
            }
        }
        Ok(Hyperreal::normalize(terms))
    }
}

/// Parses a hyperreal literal.
pub fn parse_literal(text: &str) -> Result<Hyperreal, ParseError> {
    let mut cursor = Cursor::new(text);
    if cursor.peek().is_none() {
        return Err(cursor.error("empty literal"));
    }
    cursor.literal()
}

impl FromStr for Hyperreal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, exp: i64, coeff: &Rational) -> fmt::Result {
    write!(f, "{coeff}")?;
    if exp != 0 {
        write!(f, "e{exp}")?;
    }
    Ok(())
}

pub(super) fn write_literal(x: &Hyperreal, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let Some(((e0, c0), rest)) = x.terms.split_first() else {
        return f.write_str("0");
    };
    write_term(f, *e0, c0)?;
    for (e, c) in rest {
        if c.is_negative() {
            f.write_str(" - ")?;
            write_term(f, *e, &-c)?;
        } else {
            f.write_str(" + ")?;
            write_term(f, *e, c)?;
        }
    }
    Ok(())
}
