//! Text grammar for polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary | unary)*      juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! `d`, `x`, `y`, `z` name ∂, λ, μ, ν (the Unicode symbols are accepted too);
//! every other identifier is resolved by the caller. Division is only allowed
//! by nonzero constants, so `3/2*x` is a rational literal times `x`.

use alloc::format;
use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::var::{VarId, D, LAMBDA, MU, NU};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<alloc::vec::Vec<(usize, Tok)>> {
    let mut out = alloc::vec::Vec::new();
    let chars: alloc::vec::Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Num(BigInt::from_str(&text).expect("digits"))));
        } else if ch.is_alphabetic() || ch == '_' || ch == '∂' {
            let start = i;
            i += 1;
            if ch != '∂' {
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
            }
            let text: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(text)));
        } else if "+-*/^()".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: pos + 1,
                message: format!("unexpected character `{}`", ch),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, F> {
    toks: alloc::vec::Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    resolve: &'a F,
}

impl<'a, F: Fn(&str) -> core::result::Result<VarId, String>> Parser<'a, F> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end) + 1
    }

    fn err<T>(&self, message: String) -> Result<T> {
        Err(Error::Parse { column: self.column(), message })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let col = self.column();
                let den = self.unary()?;
                match den.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        return Err(Error::Parse {
                            column: col,
                            message: "division is only defined by nonzero constants".to_string(),
                        })
                    }
                }
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                acc = acc * self.unary()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.to_string().parse().or_else(|_| self.err("exponent too large".to_string()))?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent".to_string()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                let col = self.column();
                self.pos += 1;
                let v = match name.as_str() {
                    "d" | "∂" => D,
                    "x" | "λ" => LAMBDA,
                    "y" | "μ" => MU,
                    "z" | "ν" => NU,
                    other => (self.resolve)(other).map_err(|message| Error::Parse { column: col, message })?,
                };
                Ok(Poly::var(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`".to_string());
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {:?}", t)),
            None => self.err("unexpected end of input".to_string()),
        }
    }
}

/// Parses with a caller-supplied resolver for non-formal identifiers.
pub fn parse_poly_with<F>(s: &str, resolve: &F) -> Result<Poly>
where
    F: Fn(&str) -> core::result::Result<VarId, String>,
{
    let toks = tokenize(s)?;
    let mut parser = Parser { toks, pos: 0, end: s.len(), resolve };
    if parser.peek().is_none() {
        return parser.err("empty expression".to_string());
    }
    let p = parser.expr()?;
    if parser.peek().is_some() {
        return parser.err("trailing input".to_string());
    }
    Ok(p)
}

impl FromStr for Poly {
    type Err = Error;

    /// Unknown identifiers are registered as parameters.
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly_with(s, &|name: &str| VarId::param(name).map_err(|e| e.to_string()))
    }
}
