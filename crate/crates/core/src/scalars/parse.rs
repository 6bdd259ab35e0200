//! Text formats: rationals as `p/q` or `p`, quadratic numbers as
//! `(p+q*sqrt(D))/r`. The quadratic parser accepts any arithmetic expression
//! over integers and `sqrt(..)` built with `+ - * /` and parentheses, which
//! covers the canonical form as well as shorthands like `sqrt(6)/2`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{QuadExt, Rational, ScalarError};

pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = |why: &str| ScalarError::Parse(s.to_string(), why.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn parse_quad(s: &str) -> Result<QuadExt, ScalarError> {
    let mut parser = Parser { src: s, bytes: s.as_bytes(), pos: 0 };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(value)
}

impl FromStr for QuadExt {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_quad(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, why: &str) -> ScalarError {
        ScalarError::Parse(self.src.to_string(), format!("{why} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QuadExt, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                acc = acc.checked_sub(&self.term()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadExt, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.checked_mul(&self.unary()?)?;
            } else if self.eat(b'/') {
                acc = acc.checked_div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadExt, ScalarError> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<QuadExt, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n = BigInt::from_str(&self.src[start..self.pos]).map_err(|_| self.error("bad integer"))?;
                Ok(QuadExt::from_int(n))
            }
            Some(b's') if self.src[self.pos..].starts_with("sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err(self.error("expected '(' after sqrt"));
                }
                let arg = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                if !arg.is_rational() {
                    return Err(self.error("sqrt of an irrational value"));
                }
                arg.sqrt().ok_or_else(|| self.error("sqrt of a negative value"))
            }
            _ => Err(self.error("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("101/50").unwrap(), q(101, 50));
        assert_eq!(parse_rational(" -4 ").unwrap(), q(-4, 1));
        assert_eq!(parse_rational("6/4").unwrap(), q(3, 2));
        assert_eq!(parse_rational("1/0"), Err(ScalarError::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_quadratic_format_round_trips() {
        for s in ["(1-2*sqrt(6))/10", "(0+1*sqrt(6))/2", "-101/50", "7", "(17+3*sqrt(21))/4"] {
            let v: QuadExt = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn shorthand_forms() {
        let half_root6: QuadExt = "sqrt(6)/2".parse().unwrap();
        assert_eq!(half_root6, "(0+1*sqrt(6))/2".parse().unwrap());
        let e11: QuadExt = "(17 - 2*sqrt(6)) / 10".parse().unwrap();
        assert_eq!(e11.to_string(), "(17-2*sqrt(6))/10");
        assert_eq!("sqrt(8)".parse::<QuadExt>().unwrap().to_string(), "(0+2*sqrt(2))/1");
    }

    #[test]
    fn rejects_garbage() {
        assert!("1+".parse::<QuadExt>().is_err());
        assert!("sqrt(-2)".parse::<QuadExt>().is_err());
        assert!("sqrt(2)+sqrt(3)".parse::<QuadExt>().is_err());
        assert!("(1".parse::<QuadExt>().is_err());
        assert!("1/0".parse::<QuadExt>().is_err());
    }
}
