//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' integer)?
//! atom   := integer ('/' integer)? | var | '(' expr ')' | '-' factor
//! var    := prefix digits
//! ```

use super::rat::Rat;
use super::{Monomial, Polynomial};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Variable naming for a ring: `prefix0`, `prefix1`, ...
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nvars: usize,
    pub prefix: String,
}

impl Ring {
    /// Coordinate ring of `P^n`: variables `x0..xn`.
    pub fn projective(n: usize) -> Self {
        Ring {
            nvars: n + 1,
            prefix: "x".into(),
        }
    }

    /// Parameter ring `t0..t(k-1)`.
    pub fn params(k: usize) -> Self {
        Ring {
            nvars: k,
            prefix: "t".into(),
        }
    }

    pub fn name(&self, i: usize) -> String {
        format!("{}{}", self.prefix, i)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        f.fmt_with(&|i| self.name(i))
    }
}

pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        s: text.as_bytes(),
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
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
        let n = self.ring.nvars;
        let mut acc = Polynomial::zero(n);
        let mut sign_neg = false;
        if self.eat(b'-') {
            sign_neg = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let t = self.term()?;
            acc = if sign_neg { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                sign_neg = false;
            } else if self.eat(b'-') {
                sign_neg = true;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            let k = self.integer()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| Error::Syntax {
                    pos: start,
                    msg: "exponent too large".into(),
                })?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let n = self.ring.nvars;
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut q = Rat::from_integer(num);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = self.pos;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    q /= Rat::from_integer(den);
                }
                Ok(Polynomial::constant(n, q))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let idx = name
                    .strip_prefix(self.ring.prefix.as_str())
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
                let index: usize = idx
                    .parse()
                    .map_err(|_| Error::UnknownVariable(name.to_string()))?;
                if index >= n {
                    return Err(Error::VariableOutOfRange { index, nvars: n });
                }
                Ok(Polynomial::term(Monomial::var(n, index), Rat::from_integer(1.into())))
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::{rat, ratio};

    #[test]
    fn quadric_of_q() {
        let r = Ring::projective(2);
        let f = parse_polynomial("x0*x1 + x0*x2 + x1*x2", &r).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.eval(&[rat(1), rat(1), rat(1)]), rat(3));
    }

    #[test]
    fn binomial_generator() {
        let r = Ring::projective(2);
        let f = parse_polynomial("x1^2 - 2*x0*x2", &r).unwrap();
        assert_eq!(f.to_string(), "x1^2 - 2*x0*x2");
    }

    #[test]
    fn zero_parses_as_polynomial() {
        let r = Ring::projective(2);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
    }

    #[test]
    fn rationals_and_parens() {
        let r = Ring::projective(2);
        let f = parse_polynomial("1/2*(x0 - x1)^2 + -x2", &r).unwrap();
        assert_eq!(f.eval(&[rat(3), rat(1), rat(1)]), rat(1));
        let g = parse_polynomial("-3/4", &r).unwrap();
        assert_eq!(g.as_constant(), Some(ratio(-3, 4)));
    }

    #[test]
    fn errors() {
        let r = Ring::projective(2);
        assert!(matches!(
            parse_polynomial("x0 + y", &r),
            Err(Error::UnknownVariable(_))
        ));
        assert!(matches!(
            parse_polynomial("x3", &r),
            Err(Error::VariableOutOfRange { index: 3, nvars: 3 })
        ));
        assert!(matches!(
            parse_polynomial("x0 +* x1", &r),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(parse_polynomial("(x0", &r), Err(Error::Syntax { .. })));
    }
}
