//! Text form for Q(q) scalars.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! qscalar ::= poly | '(' poly ')' '/' '(' poly ')'
//! poly    ::= ['-'] term (('+'|'-') term)*
//! term    ::= coeff ['*' qpow] | qpow
//! qpow    ::= 'q' ['^' uint]
//! coeff   ::= uint ['/' uint]
//! ```
//!
//! The printer emits terms in decreasing degree, omits zero terms, writes
//! `q` instead of `q^1`, and drops unit coefficients, e.g. `(3*q^2 - 1)/(2*q)`.

use num_bigint::BigInt;

use super::poly::QPoly;
use super::qscalar::QScalar;
use super::rational::Rat;
use crate::error::{EngineError, Result};

pub fn parse_qscalar(s: &str) -> Result<QScalar> {
    let mut p = Parser::new(s);
    let out = p.qscalar()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

pub fn parse_qpoly(s: &str) -> Result<QPoly> {
    let mut p = Parser::new(s);
    let out = p.poly()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: &str) -> EngineError {
        EngineError::Parse(format!(
            "{msg} at byte {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", b as char)))
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.err("bad integer"))
    }

    fn qscalar(&mut self) -> Result<QScalar> {
        // Parenthesized quotient form is detected by `(`...`)/(`...`)`.
        if self.peek() == Some(b'(') {
            let save = self.pos;
            self.pos += 1;
            let num = self.poly()?;
            self.expect(b')')?;
            if self.eat(b'/') {
                self.expect(b'(')?;
                let den = self.poly()?;
                self.expect(b')')?;
                return QScalar::new(num, den);
            }
            // Not a quotient after all; re-parse as a bare polynomial.
            self.pos = save;
        }
        Ok(QScalar::from_poly(self.poly()?))
    }

    fn poly(&mut self) -> Result<QPoly> {
        let mut out = QPoly::zero();
        let mut sign = if self.eat(b'-') {
            -Rat::one()
        } else {
            Rat::one()
        };
        loop {
            let (deg, coeff) = self.term()?;
            out.add_term(deg, &(&coeff * &sign));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                _ => break,
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(u32, Rat)> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok((self.exponent()?, Rat::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let coeff = if self.eat(b'/') {
                    let d = self.uint()?;
                    Rat::checked_new(n, d)?
                } else {
                    Rat::from_big(n)
                };
                if self.eat(b'*') {
                    self.skip_ws();
                    if !self.eat(b'q') {
                        return Err(self.err("expected `q` after `*`"));
                    }
                    Ok((self.exponent()?, coeff))
                } else {
                    Ok((0, coeff))
                }
            }
            _ => Err(self.err("expected term")),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            let e = self.uint()?;
            u32::try_from(e).map_err(|_| self.err("exponent out of range"))
        } else {
            Ok(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_example() {
        let s = "(3*q^2 - 1)/(2*q)";
        let v = parse_qscalar(s).unwrap();
        // Canonical form scales the denominator monic.
        assert_eq!(v.to_string(), "(3/2*q^2 - 1/2)/(q)");
        let back = parse_qscalar(&v.to_string()).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn parse_plain_poly() {
        assert_eq!(parse_qscalar("q + 1").unwrap().to_string(), "q + 1");
        assert_eq!(parse_qscalar("-q^2").unwrap().to_string(), "-q^2");
        assert_eq!(parse_qscalar("0").unwrap(), QScalar::zero());
        assert_eq!(parse_qscalar("1/2*q + 1/2").unwrap().to_string(), "1/2*q + 1/2");
    }

    #[test]
    fn reject_garbage() {
        assert!(parse_qscalar("q +").is_err());
        assert!(parse_qscalar("(q)/(0)").is_err());
        assert!(parse_qscalar("q q").is_err());
    }
}
