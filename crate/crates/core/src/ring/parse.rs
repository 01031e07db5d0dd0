use num_bigint::BigInt;
use num_rational::BigRational;

use super::{RatFunc, Ring, Scalar, SparsePoly, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits parse")));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{ch}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} in `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
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
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.div(&d).ok_or(Error::DenominatorVanishes)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e: u32 = match self.peek() {
            Some(Tok::Num(n)) => n.try_into().map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        let p = base.pow(e);
        if neg {
            p.inv().ok_or(Error::DenominatorVanishes)
        } else {
            Ok(p)
        }
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(SparsePoly::constant(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RatFunc::from_poly(SparsePoly::var(Var::new(&name))))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("missing `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("unexpected end or token")),
        }
    }
}

/// Parses an expression in `+ - * / ^` and parentheses over integers and
/// identifiers `[A-Za-z][A-Za-z0-9_]*`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, src: s };
    let r = p.expr()?;
    if p.pos != toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Rational;

    #[test]
    fn parses_rationals_and_polys() {
        let r = parse_ratfunc("-3/7").unwrap();
        assert_eq!(r, RatFunc::from_rational(&Rational::new(-3, 7)));
        let p = parse_ratfunc("(q^2 - 1)/(q - 1)").unwrap();
        assert_eq!(p, parse_ratfunc("q + 1").unwrap());
        assert!(parse_ratfunc("q +").is_err());
        assert!(parse_ratfunc("1/0").is_err());
        assert!(parse_ratfunc("_x").is_err());
    }

    #[test]
    fn display_roundtrips() {
        for s in ["3/2*a^2*b - b + 7", "(a - b)/(a*b + 1)", "-1/3", "0"] {
            let r = parse_ratfunc(s).unwrap();
            assert_eq!(parse_ratfunc(&r.to_string()).unwrap(), r, "{s}");
        }
    }
}
