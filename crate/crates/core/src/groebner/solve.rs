//! Rational points of zero-dimensional affine systems over the rationals.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::buchberger::groebner_basis;
use crate::error::{Error, Result};
use crate::exactalg::{MonomialOrder, MvPoly, QPoly, Ring, UPoly, Q};

/// All rational solutions of `gens = 0` in the variables of `ring`, by a lex basis
/// and back substitution. Fails if a positive-dimensional component is met.
pub fn rational_solutions(gens: &[QPoly], ring: &Arc<Ring<Q>>) -> Result<Vec<Vec<Q>>> {
    let lex = Ring::new(ring.vars(), MonomialOrder::Lex, ());
    let gens: Vec<QPoly> = gens.iter().map(|g| g.change_ring(&lex)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    solve_rec(&gens, &lex, &mut BTreeMap::new(), &mut out)?;
    let names = ring.vars();
    let mut sols: Vec<Vec<Q>> = out
        .into_iter()
        .map(|m: BTreeMap<String, Q>| names.iter().map(|v| m[v].clone()).collect())
        .collect();
    sols.sort();
    sols.dedup();
    Ok(sols)
}

fn solve_rec(
    gens: &[QPoly],
    ring: &Arc<Ring<Q>>,
    fixed: &mut BTreeMap<String, Q>,
    out: &mut Vec<BTreeMap<String, Q>>,
) -> Result<()> {
    let free: Vec<usize> = (0..ring.nvars()).filter(|&i| !fixed.contains_key(&ring.vars()[i])).collect();
    let gb = groebner_basis(gens, ring);
    if gb.first().is_some_and(|g| g.is_constant()) {
        return Ok(());
    }
    let Some(&last) = free.last() else {
        if gb.is_empty() {
            out.push(fixed.clone());
        }
        return Ok(());
    };
    let uni = gb.iter().find(|g| g.support_vars() == vec![last]);
    let Some(uni) = uni else {
        return Err(Error::Construction(format!(
            "system is not zero-dimensional in {}",
            ring.vars()[last]
        )));
    };
    let mut coeffs = vec![Q::from_integer(0.into()); uni.degree_in(last) as usize + 1];
    for (m, c) in uni.terms() {
        coeffs[m.exponents()[last] as usize] = c.clone();
    }
    for root in UPoly::new(coeffs).rational_roots() {
        let mut a = BTreeMap::new();
        a.insert(ring.vars()[last].clone(), MvPoly::constant(ring, root.clone()));
        let sub: Vec<QPoly> = gb.iter().map(|g| g.substitute(&a, ring)).collect::<Result<_>>()?;
        fixed.insert(ring.vars()[last].clone(), root);
        solve_rec(&sub, ring, fixed, out)?;
        fixed.remove(&ring.vars()[last]);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, qq};

    #[test]
    fn circle_and_line() {
        let r = Ring::new(&["a", "b"], MonomialOrder::GrevLex, ());
        let gens: Vec<_> =
            ["a^2 + b^2 - 1", "5*a - 3"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let s = rational_solutions(&gens, &r).unwrap();
        assert_eq!(s, vec![vec![qq(3, 5), qq(-4, 5)], vec![qq(3, 5), qq(4, 5)]]);
        let none: Vec<_> = ["a^2 - 2", "b"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        assert!(rational_solutions(&none, &r).unwrap().is_empty());
        let line: Vec<_> = ["a - b"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        assert!(rational_solutions(&line, &r).is_err());
    }
}
