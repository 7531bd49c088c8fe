//! Text forms of scalars and polynomials.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := ["-"] term (("+" | "-") term)*
//! term  := power (("*" | "/") power)*
//! power := atom ["^" integer]
//! atom  := integer | "z" | variable | "(" expr ")"
//! ```
//!
//! `z` is the primitive root of unity of the enclosing conductor; division is
//! only allowed by nonzero constants.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;

type Poly = MultiPoly<CycNum>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

struct Lexer<'a> {
    text: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn lex(text: &str) -> Result<Lexer<'_>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            toks.push((Tok::Int(text[start..i].parse().expect("digits")), start));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            toks.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^()".contains(ch) {
            toks.push((Tok::Op(ch), i));
            i += 1;
        } else {
            return Err(error_at(text, i, format!("unexpected character '{ch}'")));
        }
    }
    Ok(Lexer { text, toks })
}

fn error_at(text: &str, offset: usize, message: String) -> Error {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, str::len) + 1;
    Error::Parse { line, column, message }
}

struct Parser<'a> {
    lex: Lexer<'a>,
    pos: usize,
    conductor: u32,
    names: &'a [String],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.lex.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.lex.toks.get(self.pos).map_or(self.lex.text.len(), |(_, o)| *o)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(error_at(self.lex.text, self.offset(), message.into()))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let neg = self.eat('-');
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let at = self.offset();
                let d = self.power()?;
                let c = match d.degree().finite() {
                    Some(0) => d.coeff(&Monomial::one(self.nvars())),
                    _ => return Err(error_at(self.lex.text, at, "division by a non-constant".into())),
                };
                let inv = c.inv().ok_or_else(|| error_at(self.lex.text, at, "division by zero".into()))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        let n = self.nvars();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                let q = num_rational::BigRational::from_integer(v);
                Ok(Poly::constant(n, CycNum::rational(q)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(k) = self.names.iter().position(|v| *v == name) {
                    self.pos += 1;
                    Ok(Poly::var(n, k))
                } else if name == "z" {
                    self.pos += 1;
                    Ok(Poly::constant(n, CycNum::root_of_unity_at(self.conductor, 1)))
                } else {
                    self.err(format!("unknown symbol '{name}'"))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over `Q(ζ_m)` in the named variables.
pub fn parse_poly(text: &str, conductor: u32, names: &[String]) -> Result<Poly> {
    if conductor == 0 {
        return Err(Error::ZeroConductor);
    }
    if names.iter().any(|v| v == "z") {
        return Err(Error::Schema("'z' is reserved for the root of unity".into()));
    }
    let lex = lex(text)?;
    let mut p = Parser { lex, pos: 0, conductor, names };
    if p.lex.toks.is_empty() {
        return p.err("empty expression");
    }
    let out = p.expr()?;
    if p.pos < p.lex.toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses the `z`-polynomial text form of a scalar.
pub fn parse_scalar(text: &str, conductor: u32) -> Result<CycNum> {
    let p = parse_poly(text, conductor, &[])?;
    let c = p.coeff(&Monomial::one(0));
    debug_assert!(p.len() <= 1);
    Ok(if p.is_zero() { CycNum::zero() } else { c })
}
