//! Polynomial expressions in `x` and `y` with rational coefficients.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := rational | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Juxtaposition is not multiplication: `4x2y4` is rejected.

use field_tower::Rational;
use poly_core::QPoly;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {0}")]
    Syntax(usize),
    #[error("unknown identifier '{name}' at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
    #[error("exponent at offset {0} must be a natural number")]
    BadExponent(usize),
    #[error("empty input")]
    Empty,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {}
            Some(b'-') | Some(b'(') => return Err(ParseError::BadExponent(at)),
            _ => return Err(ParseError::Syntax(at)),
        }
        let e: u32 = self.digits().parse().map_err(|_| ParseError::BadExponent(at))?;
        if self.peek() == Some(b'/') {
            return Err(ParseError::BadExponent(at));
        }
        Ok(base.pow(e))
    }

    fn base(&mut self) -> Result<QPoly, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                let q: Rational = if self.src.get(self.pos) == Some(&b'/') {
                    self.pos += 1;
                    let den = self.digits();
                    if den.is_empty() || den.bytes().all(|b| b == b'0') {
                        return Err(ParseError::Syntax(self.pos));
                    }
                    format!("{num}/{den}").parse().map_err(|_| ParseError::Syntax(at))?
                } else {
                    num.parse().map_err(|_| ParseError::Syntax(at))?
                };
                Ok(QPoly::constant(q))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"x" => Ok(QPoly::x()),
                    b"y" => Ok(QPoly::y()),
                    name => Err(ParseError::UnknownIdentifier {
                        name: String::from_utf8_lossy(name).into_owned(),
                        offset: start,
                    }),
                }
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(ParseError::Syntax(self.pos));
                }
                Ok(inner)
            }
            _ => Err(ParseError::Syntax(at)),
        }
    }
}

/// Parses an expression; offsets in errors count bytes from the start.
pub fn parse_poly(s: &str) -> Result<QPoly, ParseError> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    if p.peek().is_none() {
        return Err(ParseError::Empty);
    }
    let f = p.expr()?;
    if p.peek().is_some() {
        return Err(ParseError::Syntax(p.pos));
    }
    Ok(f)
}

/// Parses a rational such as `7`, `-3/2`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let q: Rational = s.trim().parse().ok()?;
    Some(q)
}
