//! Literal grammar for polynomials and rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Rational coefficients are written `p/q`, which the grammar reads as a
//! quotient of two integers.

use num_bigint::BigInt;

use super::poly::{MultiPoly, Vars};
use super::ratfunc::RatFunc;
use super::rational::from_int;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { col, msg: msg.into() }
}

impl Lexer {
    fn new(s: &str) -> Result<Lexer> {
        let chars: Vec<char> = s.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(text.parse().expect("digits")), col));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            } else if "+-*/^()".contains(c) {
                toks.push((Tok::Sym(c), col));
                i += 1;
            } else {
                return Err(err(col, format!("unexpected character `{c}`")));
            }
        }
        toks.push((Tok::End, chars.len() + 1));
        Ok(Lexer { toks, pos: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }
}

struct Parser<'a> {
    lex: Lexer,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.lex.peek() {
                Tok::Sym('+') => {
                    self.lex.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Sym('-') => {
                    self.lex.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.lex.peek() {
                Tok::Sym('*') => {
                    self.lex.next();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Sym('/') => {
                    self.lex.next();
                    let col = self.lex.col();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(err(col, "division by zero"));
                    }
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.lex.peek() {
            Tok::Sym('-') => {
                self.lex.next();
                Ok(self.unary()?.neg())
            }
            Tok::Sym('+') => {
                self.lex.next();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.lex.peek() == &Tok::Sym('^') {
            self.lex.next();
            let col = self.lex.col();
            match self.lex.next() {
                Tok::Int(e) => {
                    let e: u32 = e.try_into().map_err(|_| err(col, "exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(col, "expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        let col = self.lex.col();
        match self.lex.next() {
            Tok::Int(n) => Ok(RatFunc::constant(self.vars.clone(), from_int(n))),
            Tok::Ident(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(RatFunc::var(self.vars.clone(), i)),
                None => Err(err(col, format!("unknown variable `{name}`"))),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                let c = self.lex.col();
                match self.lex.next() {
                    Tok::Sym(')') => Ok(e),
                    _ => Err(err(c, "expected `)`")),
                }
            }
            Tok::End => Err(err(col, "unexpected end of input")),
            t => Err(err(col, format!("unexpected token {t:?}"))),
        }
    }
}

/// Parses a rational-function literal over the given variables.
pub fn parse_ratfunc(s: &str, vars: Vars) -> Result<RatFunc> {
    let mut p = Parser { lex: Lexer::new(s)?, vars: &vars };
    let r = p.expr()?;
    if p.lex.peek() != &Tok::End {
        return Err(err(p.lex.col(), "trailing input"));
    }
    Ok(r)
}

/// Parses a polynomial literal; division is allowed only by constants.
pub fn parse_poly(s: &str, vars: Vars) -> Result<MultiPoly> {
    let r = parse_ratfunc(s, vars)?;
    r.as_polynomial().ok_or_else(|| err(1, "expected a polynomial, found a proper fraction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vars;

    #[test]
    fn parses_rational_coefficients() {
        let v = vars(&["z1", "z2"]);
        let p = parse_poly("1/2*z1^2 - 3*z1*z2 + 7/3", v).unwrap();
        assert_eq!(p.to_string(), "1/2*z1^2 - 3*z1*z2 + 7/3");
    }

    #[test]
    fn parses_fractions() {
        let v = vars(&["z"]);
        let r = parse_ratfunc("(z^2 - 1)/(z - 1)", v.clone()).unwrap();
        assert_eq!(r.to_string(), "z + 1");
        let r = parse_ratfunc("1/(1 - 2*z)", v).unwrap();
        assert_eq!(r.to_string(), "-1/(2*z - 1)");
    }

    #[test]
    fn reports_columns() {
        let v = vars(&["z"]);
        assert_eq!(parse_ratfunc("z + w", v.clone()).unwrap_err(), err(5, "unknown variable `w`"));
        assert!(matches!(parse_ratfunc("z +", v.clone()), Err(Error::Parse { col: 4, .. })));
        assert!(matches!(parse_poly("1/z", v), Err(Error::Parse { .. })));
    }
}
