//! Parser for Laurent polynomials written in plain infix notation.
//!
//! Products may be written by juxtaposition (`2 x^2 y (1+y)`), powers of
//! variables may be negative (`x^-5`), and exponents in parentheses may be
//! integer-linear expressions in named parameters (`y^(13+4 s1-s2)`).

use crate::error::{Error, Result};
use crate::integer::Integer;
use crate::laurent::LaurentPolynomial;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                out.push(Tok::Num(s.parse().map_err(|_| Error::Parse(format!("number {s} too large")))?));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                    s.push(d);
                    chars.next();
                }
                out.push(Tok::Ident(s));
            }
            _ => {
                out.push(match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' | '·' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' | '{' => Tok::Open,
                    ')' | '}' => Tok::Close,
                    _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
                });
                chars.next();
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
    params: &'a [(&'a str, i64)],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(ref u) if *u == t => Ok(()),
            other => Err(Error::Parse(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn sum(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = LaurentPolynomial::zero(self.vars.len());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign > 0 { acc.checked_add(&t)? } else { acc.checked_sub(&t)? };
            sign = match self.peek() {
                Some(Tok::Plus) => 1,
                Some(Tok::Minus) => -1,
                _ => return Ok(acc),
            };
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Open) => {}
                _ => return Ok(acc),
            }
            acc = acc.checked_mul(&self.power()?)?;
        }
    }

    fn power(&mut self) -> Result<LaurentPolynomial> {
        let n = self.vars.len();
        let base = match self.next() {
            Some(Tok::Num(v)) => LaurentPolynomial::constant(n, Integer::from(v)),
            Some(Tok::Ident(name)) => {
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
                LaurentPolynomial::variable(n, i)
            }
            Some(Tok::Open) => {
                let p = self.sum()?;
                self.expect(Tok::Close)?;
                p
            }
            other => return Err(Error::Parse(format!("unexpected {other:?}"))),
        };
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let k = self.exponent()?;
        if base.len() == 1 {
            let (m, c) = base.iter().next().map(|(m, c)| (*m, c.clone())).expect("one term");
            if k >= 0 || c == Integer::one() {
                let mut coeff = Integer::one();
                for _ in 0..k.max(0) {
                    coeff = &coeff * &c;
                }
                return Ok(LaurentPolynomial::from_monomial(n, m.scale(k), coeff));
            }
        }
        if k < 0 {
            return Err(Error::Parse("negative power of a non-monomial".into()));
        }
        let mut acc = LaurentPolynomial::one(n);
        for _ in 0..k {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// `5`, `-5`, a parameter name, or a parenthesized linear form.
    fn exponent(&mut self) -> Result<i64> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::Minus) => match self.next() {
                Some(Tok::Num(v)) => Ok(-v),
                other => Err(Error::Parse(format!("bad exponent near {other:?}"))),
            },
            Some(Tok::Ident(name)) => self.param(&name),
            Some(Tok::Open) => {
                let v = self.linear()?;
                self.expect(Tok::Close)?;
                Ok(v)
            }
            other => Err(Error::Parse(format!("bad exponent near {other:?}"))),
        }
    }

    fn param(&self, name: &str) -> Result<i64> {
        self.params
            .iter()
            .find(|(p, _)| *p == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::Parse(format!("unknown parameter {name:?}")))
    }

    fn linear(&mut self) -> Result<i64> {
        let mut total = 0;
        let mut sign = 1;
        let mut first = true;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    sign = -1;
                }
                _ if first => {}
                _ => return Ok(total),
            }
            first = false;
            let mut term = 1;
            let mut seen = false;
            while let Some(t) = self.peek().cloned() {
                match t {
                    Tok::Num(v) => term *= v,
                    Tok::Ident(name) => term *= self.param(&name)?,
                    Tok::Star if seen => {}
                    _ => break,
                }
                seen = true;
                self.pos += 1;
            }
            if !seen {
                return Err(Error::Parse("empty term in exponent".into()));
            }
            total += sign * term;
        }
    }
}

/// Parses `src` as a polynomial in `vars`, substituting `params` into
/// exponents.
pub fn parse_polynomial(src: &str, vars: &[&str], params: &[(&str, i64)]) -> Result<LaurentPolynomial> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        vars,
        params,
    };
    let poly = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(poly)
}
