//! Rational linear factors of homogeneous polynomials by undetermined coefficients.

use std::collections::BTreeMap;

use crate::exactalg::{Monomial, MonomialOrder, MvPoly, QPoly, Ring, Q};
use crate::groebner::rational_solutions;

/// A rational linear factor `l` of the homogeneous `f`, with `f = l * rest`.
///
/// `l` is normalized as `x_p + a_{p+1} x_{p+1} + ...` for the first pivot `p`
/// admitting a solution; among several solutions the smallest coefficient
/// vector wins, so the result is deterministic.
pub fn linear_factor(f: &QPoly) -> Option<(QPoly, QPoly)> {
    if f.is_zero() || !f.is_homogeneous() || f.total_degree()? < 1 {
        return None;
    }
    let ring = f.ring();
    let n = ring.nvars();
    for p in 0..n {
        let unknowns: Vec<String> = (p + 1..n).map(|j| format!("_a{j}")).collect();
        let mut names = unknowns.clone();
        names.extend(ring.vars().iter().cloned());
        let big = Ring::new(&names, MonomialOrder::GrevLex, ());
        let k = unknowns.len();
        // x_p -> -sum a_j x_j
        let mut repl = MvPoly::zero(&big);
        for (i, j) in (p + 1..n).enumerate() {
            repl = &repl - &(&MvPoly::var_at(&big, i) * &MvPoly::var_at(&big, k + j));
        }
        let lifted = f.change_ring(&big).ok()?;
        let mut a = BTreeMap::new();
        a.insert(ring.vars()[p].clone(), repl);
        let sub = lifted.substitute(&a, &big).ok()?;

        // collect coefficients of each x-monomial as polynomials in the a's
        let coef_ring = Ring::new(&unknowns, MonomialOrder::GrevLex, ());
        let mut eqs: BTreeMap<Vec<u16>, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in sub.terms() {
            let e = m.exponents();
            eqs.entry(e[k..].to_vec()).or_default().push((Monomial::from_exponents(&e[..k]), c.clone()));
        }
        let eqs: Vec<QPoly> = eqs.into_values().map(|t| MvPoly::from_terms(&coef_ring, t)).collect();
        let sols = if k == 0 {
            if eqs.iter().all(|e| e.is_zero()) {
                vec![vec![]]
            } else {
                vec![]
            }
        } else {
            match rational_solutions(&eqs, &coef_ring) {
                Ok(s) => s,
                Err(_) => continue,
            }
        };
        if let Some(sol) = sols.first() {
            let mut l = MvPoly::var_at(ring, p);
            for (i, j) in (p + 1..n).enumerate() {
                l = &l + &MvPoly::var_at(ring, j).scale(&sol[i]);
            }
            let rest = f.exact_div(&l)?;
            return Some((l, rest));
        }
    }
    None
}

/// Split a ternary cubic as (line)·(conic) when it has a rational linear factor.
pub fn factor_cubic_line_conic(c: &QPoly) -> Option<(QPoly, QPoly)> {
    if c.ring().nvars() != 3 || c.total_degree() != Some(3) || !c.is_homogeneous() {
        return None;
    }
    linear_factor(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    #[test]
    fn splits_reducible_cubics() {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
        let c = parse_poly(&r, "x*(x^2 + y^2 + z^2)").unwrap();
        let (l, qd) = factor_cubic_line_conic(&c).unwrap();
        assert_eq!(l, parse_poly(&r, "x").unwrap());
        assert_eq!(qd, parse_poly(&r, "x^2 + y^2 + z^2").unwrap());

        let c = parse_poly(&r, "(2*y - 3*z)*(x*y - z^2)").unwrap();
        let (l, qd) = factor_cubic_line_conic(&c).unwrap();
        assert_eq!(l, parse_poly(&r, "y - 3/2*z").unwrap());
        assert_eq!(&l * &qd, c);

        assert!(factor_cubic_line_conic(&parse_poly(&r, "x^3 + y^3 + z^3").unwrap()).is_none());
        assert!(factor_cubic_line_conic(&parse_poly(&r, "x^3 - 2*z^3").unwrap()).is_none());
    }
}
