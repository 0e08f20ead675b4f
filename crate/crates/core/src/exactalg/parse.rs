//! Reader for the polynomial text form produced by the `render` methods.
//!
//! Accepts sums of products of factors; a factor is a rational literal
//! (`3`, `-2/5`), an imaginary literal (`i`, `1/2i`), a variable (`t`, `r`,
//! `s`, `x2_1`, `y3`) or a parenthesized expression, optionally raised to a
//! nonnegative integer power.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::mpoly::{MPoly, Var};
use super::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {col}: {msg}")]
pub struct ParseError {
    /// 1-based character column.
    pub col: usize,
    pub msg: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            col: self.pos + 1,
            msg: msg.into(),
        })
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    fn uint(&mut self) -> PResult<u32> {
        self.skip_ws();
        let start = self.pos;
        match self.digits() {
            Some(v) => u32::try_from(v).or_else(|_| {
                self.pos = start;
                self.err("exponent too large")
            }),
            None => self.err("expected a nonnegative integer exponent"),
        }
    }

    fn expr(&mut self) -> PResult<MPoly> {
        let mut acc = MPoly::zero();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else {
                if !self.eat('+') && !first {
                    break;
                }
                false
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            first = false;
            match self.peek() {
                Some('+') | Some('-') => continue,
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<MPoly> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<MPoly> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.uint()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<MPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().expect("digit present");
                let mut q = BigRational::from_integer(num);
                if self.chars.get(self.pos) == Some(&'/') {
                    self.pos += 1;
                    let den = match self.digits() {
                        Some(d) => d,
                        None => return self.err("expected a denominator"),
                    };
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    q /= BigRational::from_integer(den);
                }
                if self.chars.get(self.pos) == Some(&'i') && !self.ident_follows(self.pos + 1) {
                    self.pos += 1;
                    return Ok(MPoly::constant(Scalar::new(BigRational::zero(), q)));
                }
                Ok(MPoly::constant(Scalar::from(q)))
            }
            Some('i') if !self.ident_follows(self.pos + 1) => {
                self.pos += 1;
                Ok(MPoly::constant(Scalar::i()))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let v = self.variable()?;
                Ok(MPoly::var(v))
            }
            Some(c) => self.err(format!("unexpected character '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident_follows(&self, at: usize) -> bool {
        self.chars
            .get(at)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
    }

    fn small(&mut self) -> PResult<u32> {
        match self.digits() {
            Some(v) => u32::try_from(v).or_else(|_| self.err("index too large")),
            None => self.err("expected an index"),
        }
    }

    fn variable(&mut self) -> PResult<Var> {
        let start = self.pos;
        let c = self.chars[self.pos];
        self.pos += 1;
        let v = match c {
            't' => Var::T,
            'r' => Var::R,
            's' => Var::S,
            'x' => {
                let i = self.small()?;
                if self.chars.get(self.pos) != Some(&'_') {
                    return self.err("expected '_' in matrix variable");
                }
                self.pos += 1;
                let j = self.small()?;
                if i == 0 || j == 0 || i > 255 || j > 255 {
                    self.pos = start;
                    return self.err("matrix indices are 1-based and at most 255");
                }
                Var::X(i as u8, j as u8)
            }
            'y' => {
                let k = self.small()?;
                if k > u16::MAX as u32 {
                    return self.err("coordinate index too large");
                }
                Var::Y(k as u16)
            }
            _ => {
                self.pos = start;
                return self.err(format!("unknown variable starting with '{c}'"));
            }
        };
        if self.ident_follows(self.pos) {
            self.pos = start;
            return self.err("malformed variable name");
        }
        Ok(v)
    }
}

/// Parses a polynomial expression.
pub fn parse_poly(src: &str) -> Result<MPoly, ParseError> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        _src: src,
    };
    if p.peek().is_none() {
        return p.err("empty expression");
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses a constant expression into a Scalar.
pub fn parse_scalar(src: &str) -> Result<Scalar, ParseError> {
    let p = parse_poly(src)?;
    if !p.is_constant() {
        return Err(ParseError {
            col: 1,
            msg: "expected a constant".into(),
        });
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::unipoly::UniPoly;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_form() {
        let p = parse_poly("(3/2+1/2i)*t^2 - t + 1").unwrap();
        assert_eq!(p.render(), "(3/2+1/2i)*t^2 - t + 1");
        let q = parse_poly("x2_1^2*x1_3 - 2*y4 + (-i)").unwrap();
        assert_eq!(parse_poly(&q.render()).unwrap(), q);
    }

    #[test]
    fn nested_and_unary() {
        let p = parse_poly("-(t + 1)^2 + 2*-t").unwrap();
        assert_eq!(p.to_unipoly(Var::T).unwrap(), UniPoly::from_ints(&[-1, -4, -1]));
    }

    #[test]
    fn errors_have_columns() {
        let e = parse_poly("t + * 2").unwrap_err();
        assert_eq!(e.col, 5);
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x0_1").is_err());
        assert!(parse_poly("q").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("(t").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        let var = prop_oneof![
            Just(Var::T),
            Just(Var::R),
            Just(Var::S),
            (1u8..4, 1u8..4).prop_map(|(i, j)| Var::X(i, j)),
            (1u16..4).prop_map(Var::Y)
        ];
        let term = (-6i64..6, 1i64..4, -3i64..3, prop::collection::vec((var, 0u32..4), 0..3));
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            let mut p = MPoly::zero();
            for (a, b, c, vs) in ts {
                let coef = Scalar::new(
                    BigRational::new(a.into(), b.into()),
                    BigRational::from_integer(c.into()),
                );
                p.add_term(super::super::mpoly::Monomial::from_pairs(vs), &coef);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(p in arb_poly()) {
            prop_assert_eq!(parse_poly(&p.render()).unwrap(), p);
        }
    }
}
