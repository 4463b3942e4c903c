//! Recursive-descent reader for polynomial text such as `3*s^-2*u^3 - (u+1)^2`.
//!
//! Juxtaposition means multiplication (`2u`, `(u+1)(u-1)`), division is only
//! allowed by nonzero constants, and negative exponents only on monomials in `s`.

use dashu::integer::IBig;

use super::mpoly::{MPoly, Var};
use super::scalar::ExactScalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(IBig),
    Var(Var),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| Error::Parse(text.clone()))?));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if let Some(v) = Var::from_char(c) {
            out.push(Tok::Var(v));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
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

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
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

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .constant_value()
                    .ok_or_else(|| Error::Parse(format!("division by non-constant `{d}`")))?;
                acc = acc.scale(&c.recip()?);
            } else if self.starts_factor() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let e = match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                i32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?
            }
            _ => return Err(Error::Parse("expected an integer exponent".into())),
        };
        if !neg {
            return Ok(base.pow(e as u32));
        }
        match base.terms() {
            [(m, c)] if m.iter().enumerate().all(|(i, &x)| x == 0 || i == Var::S.slot()) => {
                let k = m[Var::S.slot()];
                let coeff = c.recip()?.pow(e as usize);
                Ok(MPoly::var_pow(Var::S, -k * e).scale(&coeff))
            }
            _ => Err(Error::Parse(format!("negative power of `{base}`"))),
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(ExactScalar::from(n)))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(MPoly::var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(inner)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(src: &str) -> Result<MPoly> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn juxtaposition_and_powers() {
        assert_eq!(parse_poly("2u(u+1)").unwrap(), parse_poly("2*u^2 + 2*u").unwrap());
        assert_eq!(parse_poly("(2*s)^-2").unwrap(), parse_poly("1/4*s^-2").unwrap());
        assert_eq!(parse_poly("-u^2").unwrap().to_string(), "-u^2");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "u^", "u^-1", "1/u", "(u", "u)", "x+1", "u^^2"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
    }
}
