//! Text format for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := rational | 'x' | 'y' | generator | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and juxtaposition is not multiplication. A sign is
//! also accepted in front of the first term of an expression.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, Polynomial};
use crate::scalar::{format_rational, Field, Scalar};

const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown symbol {name:?} at {pos}")]
    UnknownSymbol { pos: usize, name: String },
}

pub fn parse_poly(text: &str, field: &Field) -> Result<Polynomial, ParseError> {
    Parser::new(text, field, "x", "y").parse()
}

/// Parses a univariate polynomial over ℚ in `var`, returning ascending
/// coefficients. Used for minimal polynomials.
pub fn parse_univariate(text: &str, var: &str) -> Result<Vec<BigRational>, ParseError> {
    let qq = Field::rationals();
    let p = Parser::new(text, &qq, var, "").parse()?;
    let deg = p.degree_x().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (m, c) in p.terms() {
        out[m.x as usize] = c.as_rational().expect("rational coefficient").clone();
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a Field,
    xname: &'a str,
    yname: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, field: &'a Field, xname: &'a str, yname: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
            field,
            xname,
            yname,
        }
    }

    fn parse(mut self) -> Result<Polynomial, ParseError> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(p)
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError::SyntaxError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self.digits().ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = n
                .try_into()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or(ParseError::SyntaxError {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        s.parse().ok()
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit present");
                let mut value = BigRational::from_integer(num);
                if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.digits().ok_or_else(|| self.error("expected denominator"))?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Polynomial::constant(Scalar::from_rational(value), self.field))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                if name == self.xname {
                    Ok(Polynomial::x(self.field))
                } else if !self.yname.is_empty() && name == self.yname {
                    Ok(Polynomial::y(self.field))
                } else if !self.field.is_rationals() && name == self.field.generator_name() {
                    let z = self.field.generator().expect("extension field");
                    Ok(Polynomial::constant(z, self.field))
                } else {
                    Err(ParseError::UnknownSymbol {
                        pos: start,
                        name: name.to_string(),
                    })
                }
            }
            Some(_) => Err(self.error("unexpected character")),
        }
    }
}

/// Canonical text: terms in descending graded order, coefficients exact.
pub(super) fn format_poly(p: &Polynomial) -> String {
    let terms = p.sorted_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let single = terms.len() == 1;
    let mut out = String::new();
    for (m, c) in terms {
        let first = out.is_empty();
        if m == Monomial::ONE {
            let s = c.to_string();
            if c.term_count() > 1 && !single {
                if !first {
                    out.push('+');
                }
                out.push('(');
                out.push_str(&s);
                out.push(')');
            } else {
                if !first && !s.starts_with('-') {
                    out.push('+');
                }
                out.push_str(&s);
            }
            continue;
        }
        let mon = m.to_string();
        if let Some(r) = c.as_rational() {
            let neg = r < &BigRational::zero();
            let abs = if neg { -r.clone() } else { r.clone() };
            if neg {
                out.push('-');
            } else if !first {
                out.push('+');
            }
            if abs != BigRational::from_integer(1.into()) {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&mon);
        } else if c.term_count() == 1 {
            let s = c.to_string();
            if !first && !s.starts_with('-') {
                out.push('+');
            }
            out.push_str(&s);
            out.push('*');
            out.push_str(&mon);
        } else {
            if !first {
                out.push('+');
            }
            out.push('(');
            out.push_str(&c.to_string());
            out.push_str(")*");
            out.push_str(&mon);
        }
    }
    out
}
