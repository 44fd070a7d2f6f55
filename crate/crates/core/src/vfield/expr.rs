//! Algebra-word expressions in the variable `o`, e.g. `"(o*e1)*o - 2*e3"`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := '-'? power ('*' power)*        products associate to the left
//! power  := atom ('^' integer)?
//! atom   := 'o' | 'e' integer | integer ('/' integer)? | '(' expr ')'
//! ```

use super::PolyVectorField;
use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::parse_rational;

/// Expands an expression into an algebra element with polynomial coefficients.
pub fn parse_expression(src: &str, algebra: Algebra) -> Result<Element<Poly>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, algebra };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v)
}

/// The coordinate field `λ_o(F(o))` of an algebra-valued polynomial map.
pub fn lift_field(src: &str, algebra: Algebra) -> Result<PolyVectorField> {
    let e = parse_expression(src, algebra)?;
    Ok(PolyVectorField::new(src.trim(), e.into_coeffs()))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    algebra: Algebra,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<Element<Poly>> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<Element<Poly>> {
        let neg = self.eat(b'-');
        let mut acc = self.power()?;
        while self.eat(b'*') {
            acc = &acc * &self.power()?;
        }
        Ok(if neg { -acc } else { acc })
    }

    fn power(&mut self) -> Result<Element<Poly>> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let n: u32 = self
            .integer()?
            .parse()
            .map_err(|_| Error::Parse { pos: at, msg: "exponent too large".into() })?;
        let mut acc = Element::one(self.algebra);
        for _ in 0..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Element<Poly>> {
        let alg = self.algebra;
        match self.peek() {
            Some(b'o') => {
                self.pos += 1;
                Ok(Element::new(alg, (0..alg.dim()).map(Poly::var).collect())?)
            }
            Some(b'e') => {
                self.pos += 1;
                let at = self.pos;
                let i: usize = self.integer()?.parse().unwrap_or(usize::MAX);
                if i >= alg.dim() {
                    return Err(Error::Parse { pos: at, msg: format!("basis index out of range for {alg}") });
                }
                Ok(Element::basis(alg, i))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let mut lit = self.integer()?.to_string();
                if self.eat(b'/') {
                    lit.push('/');
                    lit.push_str(self.integer()?);
                }
                let r = parse_rational(&lit).map_err(|e| Error::Parse { pos: at, msg: e.to_string() })?;
                Ok(Element::real(alg, Poly::constant(r)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
