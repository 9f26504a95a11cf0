//! Infix polynomial parser: `+ - * ^`, parentheses, rationals `a/b` and variable names.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::Q;
use super::poly::{MvPoly, QPoly, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: String = cs[st..i].iter().collect();
            out.push(Tok::Num(n.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Input(format!("unexpected character {c:?} in polynomial")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a Arc<Ring<Q>>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly> {
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

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_constant() || d.is_zero() {
                    return Err(Error::Input("division only by nonzero constants".into()));
                }
                acc = acc.scale(&d.constant_coeff().recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        if self.eat('-') {
            return Ok(-&self.power()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| Error::Input("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Input("expected integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MvPoly::constant(self.ring, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                MvPoly::var(self.ring, &v)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Input("unbalanced parentheses".into()));
                }
                Ok(e)
            }
            t => Err(Error::Input(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse_poly(ring: &Arc<Ring<Q>>, s: &str) -> Result<QPoly> {
    let mut p = Parser { toks: lex(s)?, pos: 0, ring };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Input(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::monomial::MonomialOrder;

    #[test]
    fn parses_products_and_powers() {
        let r = Ring::new(&["x", "y"], MonomialOrder::GrevLex, ());
        let p = parse_poly(&r, "-(x - y)^2 + 1/2*x*y").unwrap();
        assert_eq!(p.to_string(), "-x^2 + 5/2*x*y - y^2");
        assert!(parse_poly(&r, "x + z").is_err());
        assert!(parse_poly(&r, "x / y").is_err());
        assert!(parse_poly(&r, "(x").is_err());
    }
}
