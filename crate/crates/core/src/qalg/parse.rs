//! Parser for the rendering grammar: integers, the six variables, `+ - * / ^`
//! and parentheses. Exponents are integer literals and may be negative.

use num_bigint::BigInt;

use super::{Poly, RatFun, Var};
use crate::error::{Error, Result};

pub fn parse_ratfun(src: &str) -> Result<RatFun> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let r = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

/// Parse an expression that must be a polynomial.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let r = parse_ratfun(src)?;
    r.try_into_poly().ok_or(Error::Parse { pos: 0, msg: format!("not a polynomial: {r}") })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    if d.is_zero() {
                        return Err(Error::Parse { pos: at, msg: "division by zero".into() });
                    }
                    acc = &acc / &d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e: i32 = self.digits()?.parse().map_err(|_| self.err("exponent out of range"))?;
        base.pow(if neg { -e } else { e }).map_err(|_| self.err("negative power of zero"))
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                Ok(RatFun::constant(d.parse::<BigInt>().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = (c as char).to_string();
                let v = Var::from_name(&name).ok_or_else(|| self.err("unknown variable"))?;
                self.pos += 1;
                Ok(RatFun::var(v))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["(1 - t)/(1 - q*t)", "1 + X + 2*X^2 + X^3 + X^4", "-3*t + 2*q^2", "0"] {
            assert_eq!(parse_ratfun(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn negative_exponents() {
        let r = parse_ratfun("q^-2*t").unwrap();
        assert_eq!(r.to_string(), "t/q^2");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_ratfun("1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfun("w"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ratfun("1/0"), Err(Error::Parse { .. })));
        assert!(parse_poly("1/t").is_err());
    }
}
