//! Parser for the canonical text form of cyclotomic numbers, Laurent
//! polynomials and their fractions.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? digits)?
//! atom   := digits | 'z' | 't' | 't' digits | '(' expr ')'
//! ```
//!
//! `z` is the primitive root of unity of the supplied field, `t` and `t1`
//! name the first variable, `tK` the K-th.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclo::{CycloField, CycloNum};
use super::laurent::{LaurentPoly, Monomial};
use super::ratfunc::RatFunc;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().map_err(|_| Error::Parse {
                pos: start,
                msg: String::from("bad integer literal"),
            })?;
            out.push((start, Tok::Num(n)));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(String::from(&text[start..i]))));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character {ch:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: Option<&'a Arc<CycloField>>,
    nvars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                if d.is_zero() {
                    return self.err("division by zero");
                }
                acc = acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Num(n)) => {
                let e: i64 = n.try_into().map_err(|_| Error::Parse {
                    pos: self.offset(),
                    msg: String::from("exponent too large"),
                })?;
                self.pos += 1;
                e
            }
            _ => return self.err("expected integer exponent"),
        };
        let e = if neg { -e } else { e };
        if e < 0 && base.is_zero() {
            return self.err("negative power of zero");
        }
        let b = if e < 0 { base.inverse().unwrap() } else { base };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * &b;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        match tok {
            Tok::Num(n) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(LaurentPoly::constant(
                    CycloNum::from_rational(Rational::from_integer(n)),
                )))
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(v)
            }
            Tok::Ident(name) => {
                let v = self.ident(&name)?;
                self.pos += 1;
                Ok(v)
            }
            Tok::Sym(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn ident(&self, name: &str) -> Result<RatFunc> {
        if name == "z" {
            return match self.field {
                Some(f) => Ok(RatFunc::from_poly(LaurentPoly::constant(CycloNum::zeta(f)))),
                None => self.err("'z' needs a cyclotomic conductor"),
            };
        }
        let idx = if name == "t" {
            Some(0)
        } else {
            name.strip_prefix('t')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(|k| k - 1)
        };
        match idx {
            Some(i) if i < self.nvars => Ok(RatFunc::from_poly(LaurentPoly::var(i))),
            Some(_) => self.err(format!("variable {name} out of range (n = {})", self.nvars)),
            None => self.err(format!("unknown symbol {name:?}")),
        }
    }
}

/// Parses a fraction of Laurent polynomials in `nvars` variables.
pub fn parse_ratfunc(
    text: &str,
    field: Option<&Arc<CycloField>>,
    nvars: usize,
) -> Result<RatFunc> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        end: text.len(),
        field,
        nvars,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_laurent(
    text: &str,
    field: Option<&Arc<CycloField>>,
    nvars: usize,
) -> Result<LaurentPoly> {
    let f = parse_ratfunc(text, field, nvars)?;
    if !f.den().is_one() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("{text:?} is not a Laurent polynomial"),
        });
    }
    Ok(f.into_parts().0)
}

/// Parses an element of Q(zeta_N), e.g. `1/2*z^2 - 1`.
pub fn parse_cyclo(text: &str, field: Option<&Arc<CycloField>>) -> Result<CycloNum> {
    let p = parse_laurent(text, field, 0)?;
    let c = p.as_constant().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{text:?} is not a constant"),
    })?;
    Ok(match field {
        Some(f) => c.with_field(f),
        None => c,
    })
}

/// Parses a monomial exponent vector literal such as `t1^2*t2^-1`.
pub fn parse_monomial(text: &str, nvars: usize) -> Result<Monomial> {
    let p = parse_laurent(text, None, nvars)?;
    match p.leading() {
        Some((m, c)) if p.is_monomial() && c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse {
            pos: 0,
            msg: format!("{text:?} is not a monomial"),
        }),
    }
}
