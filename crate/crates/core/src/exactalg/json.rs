//! JSON wire formats for polynomials, ideals and matrices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::field::{format_rational, parse_rational, Q};
use super::matrix::PolyMatrix;
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{MvPoly, QPoly, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &QPoly) -> Self {
        PolyJson {
            vars: p.ring().vars().to_vec(),
            terms: p
                .terms()
                .iter()
                .map(|(m, c)| TermJson { c: format_rational(c), e: m.exponents().to_vec() })
                .collect(),
        }
    }

    pub fn ring(&self, order: MonomialOrder) -> Arc<Ring<Q>> {
        Ring::new(&self.vars, order, ())
    }

    pub fn to_poly(&self, ring: &Arc<Ring<Q>>) -> Result<QPoly> {
        if ring.vars() != self.vars.as_slice() {
            let own = Ring::new(&self.vars, ring.order(), ());
            return self.to_poly(&own)?.change_ring(ring);
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.e.len() != self.vars.len() {
                return Err(Error::Input(format!(
                    "exponent vector of length {} for {} variables",
                    t.e.len(),
                    self.vars.len()
                )));
            }
            terms.push((Monomial::from_exponents(&t.e), parse_rational(&t.c)?));
        }
        Ok(MvPoly::from_terms(ring, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub gens: Vec<PolyJson>,
}

impl IdealJson {
    pub fn from_polys(ring: &Ring<Q>, gens: &[QPoly]) -> Self {
        IdealJson { vars: ring.vars().to_vec(), gens: gens.iter().map(PolyJson::from_poly).collect() }
    }

    pub fn to_polys(&self, order: MonomialOrder) -> Result<(Arc<Ring<Q>>, Vec<QPoly>)> {
        let ring = Ring::new(&self.vars, order, ());
        let gens = self.gens.iter().map(|g| g.to_poly(&ring)).collect::<Result<_>>()?;
        Ok((ring, gens))
    }
}

/// Matrix entry: a plain `"num/den"` string or a polynomial object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntryJson {
    Scalar(String),
    Poly(PolyJson),
}

pub fn matrix_to_json(m: &PolyMatrix<Q>) -> Vec<Vec<EntryJson>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|p| {
                    if p.is_constant() {
                        EntryJson::Scalar(format_rational(&p.constant_coeff()))
                    } else {
                        EntryJson::Poly(PolyJson::from_poly(p))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matrix_from_json(ring: &Arc<Ring<Q>>, rows: &[Vec<EntryJson>]) -> Result<PolyMatrix<Q>> {
    let polys = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    EntryJson::Scalar(s) => Ok(MvPoly::constant(ring, parse_rational(s)?)),
                    EntryJson::Poly(p) => p.to_poly(ring),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMatrix::from_rows(ring, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;

    #[test]
    fn poly_round_trip() {
        let r = Ring::new(&["u0", "u1"], MonomialOrder::GrevLex, ());
        let p = parse_poly(&r, "3/2*u0^2 - u1 + 7").unwrap();
        let j = PolyJson::from_poly(&p);
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains(r#"{"c":"3/2","e":[2,0]}"#));
        let back: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_poly(&r).unwrap(), p);
    }

    #[test]
    fn matrix_round_trip() {
        let r = Ring::new(&["x"], MonomialOrder::GrevLex, ());
        let m = PolyMatrix::from_rows(
            &r,
            vec![vec![parse_poly(&r, "x").unwrap(), parse_poly(&r, "1/3").unwrap()]],
        )
        .unwrap();
        let j = matrix_to_json(&m);
        assert_eq!(j[0][1], EntryJson::Scalar("1/3".into()));
        assert_eq!(matrix_from_json(&r, &j).unwrap(), m);
    }
}
