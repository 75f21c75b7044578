//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: sums and differences of products of powers, where an atom is a
//! rational literal `a` or `a/b`, a single-letter variable, or a
//! parenthesized expression. Juxtaposition (`3X`) multiplies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::values::{ResidueElem, ResidueField};

/// The ring an expression is evaluated in.
pub(crate) trait Algebra {
    type Elem: Clone;
    fn constant(&self, r: &BigRational) -> Result<Self::Elem>;
    fn variable(&self, name: char) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct Parser<'a, A: Algebra> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    alg: &'a A,
}

pub(crate) fn parse_with<A: Algebra>(alg: &A, src: &str) -> Result<A::Elem> {
    let mut p = Parser {
        src,
        chars: src.chars().collect(),
        pos: 0,
        alg,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<A: Algebra> Parser<'_, A> {
    fn err(&self, what: &str) -> Error {
        Error::parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<A::Elem> {
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { self.alg.neg(&first) } else { first };
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' {
                self.alg.add(&acc, &t)
            } else {
                self.alg.add(&acc, &self.alg.neg(&t))
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<A::Elem> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                    let f = self.power()?;
                    acc = self.alg.mul(&acc, &f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<A::Elem> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.unsigned()?;
            let k: u32 = k
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            let mut acc = self.alg.constant(&BigRational::from_integer(1.into()))?;
            for _ in 0..k {
                acc = self.alg.mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as integer"))
    }

    fn atom(&mut self) -> Result<A::Elem> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.unsigned()?;
                let mut r = BigRational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.unsigned()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    r /= BigRational::from_integer(d);
                }
                self.alg.constant(&r)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                self.pos += 1;
                self.alg.variable(c).map_err(|_| self.err(&format!("unknown variable `{c}`")))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

struct RationalPolys;

impl Algebra for RationalPolys {
    type Elem = Poly;

    fn constant(&self, r: &BigRational) -> Result<Poly> {
        Ok(Poly::constant(r.clone()))
    }

    fn variable(&self, name: char) -> Result<Poly> {
        match name {
            'X' | 'x' => Ok(Poly::x()),
            _ => Err(Error::parse(format!("unknown variable `{name}`"))),
        }
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }

    fn neg(&self, a: &Poly) -> Poly {
        -a
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
}

pub(crate) fn parse_poly(s: &str) -> Result<Poly> {
    parse_with(&RationalPolys, s)
}

impl Algebra for ResidueField {
    type Elem = ResidueElem;

    fn constant(&self, r: &BigRational) -> Result<ResidueElem> {
        self.from_rational(r)
            .map_err(|_| Error::parse(format!("constant {r} has no residue modulo {}", self.p())))
    }

    fn variable(&self, name: char) -> Result<ResidueElem> {
        match (name, self.modulus()) {
            ('t', Some(_)) => Ok(self.generator()),
            _ => Err(Error::parse(format!("unknown variable `{name}` for {self}"))),
        }
    }

    fn add(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueField::add(self, a, b)
    }

    fn neg(&self, a: &ResidueElem) -> ResidueElem {
        ResidueField::neg(self, a)
    }

    fn mul(&self, a: &ResidueElem, b: &ResidueElem) -> ResidueElem {
        ResidueField::mul(self, a, b)
    }
}

pub(crate) fn parse_residue_elem(k: &ResidueField, s: &str) -> Result<ResidueElem> {
    parse_with(k, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::values::rat;

    #[test]
    fn accepts_common_spellings() {
        let want = Poly::from_ints(&[1, 0, 1]);
        for s in ["X^2+1", "x^2 + 1", "1 + X^2", "X*X+1", "(X+1)^2-2X", "+X^2+1"] {
            assert_eq!(parse_poly(s).unwrap(), want, "{s}");
        }
        assert_eq!(
            parse_poly("1/2*X - 3/4").unwrap(),
            Poly::new(vec![rat(-3, 4), rat(1, 2)])
        );
        assert_eq!(parse_poly("3X").unwrap(), Poly::from_ints(&[0, 3]));
    }

    #[test]
    fn rejects_malformed_input() {
        for s in ["", "X^", "X+", "2/0", "Y+1", "(X+1", "X^2+1)", "X @ 2"] {
            assert!(matches!(parse_poly(s), Err(Error::Parse(_))), "{s}");
        }
    }
}
