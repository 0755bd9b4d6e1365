//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | '+' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | 'i' | identifier | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-x^2` is `-(x^2)`. Division is
//! only by nonzero constants. Juxtaposition is not multiplication.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::monomial::Monomial;
use super::polynomial::{Polynomial, Variables};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a Variables,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.unary()?;
                    let c = d.as_constant().ok_or_else(|| Error::Syntax {
                        pos,
                        msg: "division by a non-constant".into(),
                    })?;
                    let inv = c.inv().ok_or(Error::DivisionByZero)?;
                    acc = acc.scale(&inv);
                }
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self
                        .syntax("expected an operator (implicit multiplication is not allowed)");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = n.try_into().map_err(|_| Error::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?;
                Ok(base.pow(e))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent { pos }),
            _ => Err(Error::Syntax {
                pos,
                msg: "expected a non-negative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Polynomial::constant(
                self.vars,
                GaussianRational::real(BigRational::from_integer(n)),
            )),
            Some(Tok::Ident(name)) if name == "i" => {
                Ok(Polynomial::constant(self.vars, GaussianRational::i()))
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(k) => Ok(Polynomial::term(
                    self.vars,
                    GaussianRational::from_integer(1),
                    Monomial::var(self.vars.arity(), k, 1),
                )),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    self.at -= 1;
                    return self.syntax("expected `)`");
                }
                Ok(inner)
            }
            Some(_) => Err(Error::Syntax {
                pos,
                msg: "expected a number, variable, `i` or `(`".into(),
            }),
            None => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

/// Parses `text` as a polynomial in `vars`.
pub fn parse(text: &str, vars: &Variables) -> Result<Polynomial> {
    if vars.index_of("i").is_some() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "`i` is reserved and cannot be a variable".into(),
        });
    }
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        vars,
    };
    let out = p.expr()?;
    if p.at < p.toks.len() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn xyz(s: &str) -> Result<Polynomial> {
        parse(s, &Variables::xyz())
    }

    #[test]
    fn examples() {
        assert_eq!(xyz("x^2+y^2+z^2-1").unwrap().len(), 4);
        assert!(xyz("0").unwrap().is_zero());
        let p = xyz("1/2*i*x - 3*y*z^2").unwrap();
        assert_eq!(p.len(), 2);
        let half_i =
            GaussianRational::new(BigRational::zero(), BigRational::new(1.into(), 2.into()));
        assert_eq!(p.coefficient(&Monomial::var(3, 0, 1)), half_i);
    }

    #[test]
    fn precedence() {
        assert_eq!(xyz("-x^2").unwrap(), -xyz("x*x").unwrap());
        assert_eq!(xyz("2*x+3*y*z").unwrap(), xyz("(3*(y*z))+(2*x)").unwrap());
        assert_eq!(xyz("-2^2").unwrap(), xyz("-4").unwrap());
        assert_eq!(xyz("x/2").unwrap(), xyz("1/2*x").unwrap());
        assert_eq!(xyz("(x+y)^2").unwrap(), xyz("x^2+2*x*y+y^2").unwrap());
        assert_eq!(xyz("i^2").unwrap(), xyz("-1").unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(xyz("x^-1"), Err(Error::NegativeExponent { pos: 2 }));
        assert_eq!(
            xyz("x + w"),
            Err(Error::UnknownVariable {
                name: "w".into(),
                pos: 4
            })
        );
        assert!(matches!(xyz("2x"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(xyz("x+"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(xyz("(x+y"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(xyz("x $ y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(xyz("x/y"), Err(Error::Syntax { pos: 2, .. })));
        assert_eq!(xyz("x/0"), Err(Error::DivisionByZero));
        assert!(matches!(xyz("x)"), Err(Error::Syntax { pos: 1, .. })));
    }
}
