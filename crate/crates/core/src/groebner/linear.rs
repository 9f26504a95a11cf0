//! Removing linear forms from an ideal by solving for pivot variables.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{Field, MvPoly, Ring};

/// `I + <l_1, ..., l_c>` rewritten in the variables that remain after solving
/// each `l_i` for a pivot.
#[derive(Clone, Debug)]
pub struct LinearReduction<F: Field> {
    pub ring: Arc<Ring<F>>,
    pub gens: Vec<MvPoly<F>>,
    /// Pivot variable and its expression in the remaining variables.
    pub pivots: Vec<(String, MvPoly<F>)>,
}

/// Each form is substituted into the later ones before its pivot (the last
/// variable with a nonzero coefficient) is chosen. A form that vanishes after
/// substitution is dependent on the earlier ones and is reported as an error.
pub fn substitute_linear<F: Field>(gens: &[MvPoly<F>], forms: &[MvPoly<F>]) -> Result<LinearReduction<F>> {
    let ring = match gens.first().or(forms.first()) {
        Some(p) => p.ring().clone(),
        None => return Err(Error::Input("nothing to reduce".into())),
    };
    let mut pivots: Vec<(usize, MvPoly<F>)> = Vec::new();
    let apply = |p: &MvPoly<F>, pivots: &[(usize, MvPoly<F>)]| -> Result<MvPoly<F>> {
        let mut cur = p.clone();
        for (v, e) in pivots {
            let mut a = BTreeMap::new();
            a.insert(ring.vars()[*v].clone(), e.clone());
            cur = cur.substitute(&a, &ring)?;
        }
        Ok(cur)
    };
    for (i, f) in forms.iter().enumerate() {
        if f.total_degree().unwrap_or(0) > 1 || !f.is_homogeneous() {
            return Err(Error::Input(format!("form {i} is not a linear form")));
        }
        let g = apply(f, &pivots)?;
        let Some(&v) = g.support_vars().last() else {
            return Err(Error::Construction(format!("linear form {i} is dependent on the previous ones")));
        };
        let c = g.coeff(&crate::exactalg::Monomial::var(ring.nvars(), v));
        // v = -(g - c v) / c
        let rest = &g - &MvPoly::var_at(&ring, v).scale(&c);
        let expr = rest.scale(&c.inv().unwrap().neg_ref());
        // keep earlier pivot expressions free of v
        let mut a = BTreeMap::new();
        a.insert(ring.vars()[v].clone(), expr.clone());
        for (_, e) in pivots.iter_mut() {
            *e = e.substitute(&a, &ring)?;
        }
        pivots.push((v, expr));
    }
    let keep: Vec<String> = (0..ring.nvars())
        .filter(|i| !pivots.iter().any(|(v, _)| v == i))
        .map(|i| ring.vars()[i].clone())
        .collect();
    let small = Ring::new(&keep, ring.order(), ring.ctx().clone());
    let mut out = Vec::new();
    for g in gens {
        let h = apply(g, &pivots)?;
        if !h.is_zero() {
            out.push(h.change_ring(&small)?);
        }
    }
    let pivots = pivots
        .into_iter()
        .map(|(v, e)| Ok((ring.vars()[v].clone(), e.change_ring(&small)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearReduction { ring: small, gens: out, pivots })
}
