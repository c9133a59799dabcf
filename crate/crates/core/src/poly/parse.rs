//! Polynomial expression grammar.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { "*" unary } ;
//! unary   = ("+" | "-") unary | power ;
//! power   = primary [ "^" integer ] ;
//! primary = number [ "/" number ] | identifier | "(" expr ")" ;
//! ```
//!
//! Whitespace is ignored between tokens. Identifiers must be ring variables.

use alloc::string::{String, ToString};
use alloc::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parses `text` as a polynomial over `ring`.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let n = self
                .digits()
                .ok_or_else(|| self.error("expected exponent"))?;
            let e: u32 = n.parse().map_err(|_| Error::Parse {
                position: start,
                message: "exponent too large".to_string(),
            })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn primary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().expect("digits");
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self
                        .digits()
                        .ok_or_else(|| self.error("expected denominator"))?;
                    den = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                }
                let c = Scalar::Rational(BigRational::new(num, den));
                let c = self
                    .ring
                    .field()
                    .embed(&c)
                    .map_err(|_| self.error("denominator vanishes in field"))?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .ring
                    .var_index(name)
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                Ok(Polynomial::term(
                    self.ring,
                    Monomial::var(self.ring.nvars(), i),
                    Scalar::one(),
                ))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use alloc::format;

    fn xyz() -> Arc<PolyRing> {
        PolyRing::standard(&["x", "y", "z"], Field::Rationals)
    }

    #[test]
    fn fermat_cubic() {
        let p = parse_polynomial("x^3 + y^3 + z^3", &xyz()).unwrap();
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn coefficients() {
        let p = parse_polynomial("2*x*y - x^2", &xyz()).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            p.coefficient(&Monomial(alloc::vec![1, 1, 0])),
            Scalar::integer(2)
        );
        assert_eq!(
            p.coefficient(&Monomial(alloc::vec![2, 0, 0])),
            Scalar::integer(-1)
        );
    }

    #[test]
    fn unknown_variable() {
        let r = PolyRing::standard(&["x", "y"], Field::Rationals);
        assert_eq!(
            parse_polynomial("x + w", &r),
            Err(Error::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        match parse_polynomial("x + * y", &xyz()) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("(x + y", &xyz()).is_err());
        assert!(parse_polynomial("x^", &xyz()).is_err());
    }

    #[test]
    fn rationals_parentheses_and_unary_minus() {
        let p = parse_polynomial(" -x^2 + 1/2 * (y - z)^2 ", &xyz()).unwrap();
        assert_eq!(format!("{p}"), "-x^2 + 1/2*y^2 - y*z + 1/2*z^2");
    }
}
