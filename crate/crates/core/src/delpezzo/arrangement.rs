//! Residual arrangement of a region and interpolation of its adjoint.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::factor::factor_cubic_line_conic;
use super::region::RegionSpec;
use crate::error::{Error, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::{q, Monomial, MvPoly, QPoly, Ring, Q};
use crate::groebner::{HilbertData, IdealHandle};

/// A linear form solved for one of its variables.
#[derive(Clone, Debug)]
pub struct PlaneChart {
    /// Ring of the remaining variables, in their original order.
    pub ring: Arc<Ring<Q>>,
    pub pivot: usize,
    /// Coefficient of the pivot variable in the linear form.
    pub pivot_coeff: Q,
    expr: QPoly,
}

impl PlaneChart {
    /// Solve `l = 0` for the variable with the largest absolute coefficient among
    /// all but the last (chart) variable; ties go to the earliest.
    pub fn new(l: &QPoly) -> Result<Self> {
        let ring = l.ring();
        let n = ring.nvars();
        if l.total_degree() != Some(1) || !l.is_homogeneous() {
            return Err(Error::Input("plane must be a nonzero linear form".into()));
        }
        let coeffs: Vec<Q> = (0..n).map(|i| l.coeff(&Monomial::var(n, i))).collect();
        let mut pivot = None;
        for (i, c) in coeffs.iter().enumerate().take(n - 1) {
            if !c.is_zero() && pivot.is_none_or(|p: usize| c.abs() > coeffs[p].abs()) {
                pivot = Some(i);
            }
        }
        let pivot = pivot.ok_or_else(|| Error::Input("plane is the chart's hyperplane at infinity".into()))?;
        let c = coeffs[pivot].clone();
        let rest = l - &MvPoly::var_at(ring, pivot).scale(&c);
        let keep: Vec<String> = (0..n).filter(|&i| i != pivot).map(|i| ring.vars()[i].clone()).collect();
        let small = Ring::new(&keep, ring.order(), ());
        let expr = rest.scale(&(-c.recip())).change_ring(&small)?;
        Ok(PlaneChart { ring: small, pivot, pivot_coeff: c, expr })
    }

    pub fn restrict(&self, f: &QPoly) -> Result<QPoly> {
        let mut a = BTreeMap::new();
        a.insert(f.ring().vars()[self.pivot].clone(), self.expr.clone());
        f.substitute(&a, &self.ring)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    /// Intersection of two opposite planes.
    Line,
    /// Intersection of the curved facet with its opposite plane.
    PlaneCurve,
    /// Residual conic of the curved facet inside an adjacent plane.
    Conic,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    pub ideal: IdealHandle<Q>,
    /// The plane containing the component.
    pub plane: String,
    /// Generator besides the plane: the other plane, the curved facet, or the lifted conic.
    pub other: QPoly,
}

impl Component {
    pub fn hilbert(&self) -> Result<HilbertData> {
        self.ideal.hilbert()
    }

    /// Degree, dimension and arithmetic genus this kind must have.
    pub fn expected(&self, cubic_degree: u32) -> (i64, i64, i64) {
        match self.kind {
            ComponentKind::Line => (1, 1, 0),
            ComponentKind::Conic => (1, 2, 0),
            ComponentKind::PlaneCurve => {
                let d = cubic_degree as i64;
                (1, d, (d - 1) * (d - 2) / 2)
            }
        }
    }
}

/// Edge line of the curved facet inside an adjacent plane, kept for reporting.
#[derive(Clone, Debug)]
pub struct EdgeLine {
    pub plane: String,
    pub line: QPoly,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub components: Vec<Component>,
    pub edges: Vec<EdgeLine>,
}

/// Opposite pairs give lines (or the plane curve cut by the curved facet); each
/// plane adjacent to the curved facet contributes the conic left after removing
/// the edge line from the plane section.
pub fn residual_arrangement(r: &RegionSpec) -> Result<Arrangement> {
    r.validate()?;
    let mut components = Vec::new();
    let mut edges = Vec::new();
    for (a, b) in &r.pairs {
        let (fa, fb) = (r.facet(a)?, r.facet(b)?);
        let (plane, other) = if fa.degree() == 1 { (fa, fb) } else { (fb, fa) };
        if plane.degree() != 1 {
            return Err(Error::Input(format!("opposite facets {a}, {b} are both curved")));
        }
        let kind = if other.degree() == 1 { ComponentKind::Line } else { ComponentKind::PlaneCurve };
        let name = match kind {
            ComponentKind::Line => format!("line({a},{b})"),
            _ => format!("curve({},{})", other.name, plane.name),
        };
        let ideal = IdealHandle::new(&r.ring, vec![plane.poly.clone(), other.poly.clone()])?;
        components.push(Component { name, kind, ideal, plane: plane.name.clone(), other: other.poly.clone() });
    }
    for s in r.curved() {
        for f in &r.facets {
            if f.degree() != 1 || r.opposite(&s.name) == Some(f.name.as_str()) {
                continue;
            }
            let chart = PlaneChart::new(&f.poly)?;
            let section = chart.restrict(&s.poly)?;
            let (line, conic) = factor_cubic_line_conic(&section).ok_or_else(|| {
                Error::Construction(format!("{} restricted to {} = 0 does not contain a line", s.name, f.name))
            })?;
            let conic = conic.change_ring(&r.ring)?;
            let ideal = IdealHandle::new(&r.ring, vec![f.poly.clone(), conic.clone()])?;
            components.push(Component {
                name: format!("conic({},{})", s.name, f.name),
                kind: ComponentKind::Conic,
                ideal,
                plane: f.name.clone(),
                other: conic,
            });
            edges.push(EdgeLine { plane: f.name.clone(), line: line.change_ring(&r.ring)? });
        }
    }
    Ok(Arrangement { components, edges })
}

/// Forms of one degree vanishing on every component.
#[derive(Clone, Debug)]
pub struct AdjointSpace {
    pub degree: u32,
    pub monomials: usize,
    pub basis: Vec<QPoly>,
}

impl AdjointSpace {
    pub fn nullity(&self) -> usize {
        self.basis.len()
    }

    /// The primitive integer generator when the space is a line.
    pub fn unique(&self) -> Result<QPoly> {
        match self.basis.len() {
            1 => Ok(self.basis[0].primitive().1),
            0 => Err(Error::Construction(format!("no degree-{} form vanishes on the arrangement", self.degree))),
            n => Err(Error::Construction(format!("{n}-dimensional space of degree-{} interpolants", self.degree))),
        }
    }
}

/// All monomials of total degree `d`, in decreasing order of the ring's term order.
pub fn monomials_of_degree(ring: &Arc<Ring<Q>>, d: u32) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut e = vec![0u16; n];
    fn rec(i: usize, left: u32, e: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == e.len() {
            e[i] = left as u16;
            out.push(Monomial::from_exponents(e));
            return;
        }
        for k in (0..=left).rev() {
            e[i] = k as u16;
            rec(i + 1, left - k, e, out);
        }
    }
    if n > 0 {
        rec(0, d, &mut e, &mut out);
    }
    let order = ring.order();
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

/// Degree-`d` forms in the ideal of every component: normal forms of all
/// monomials give linear conditions on the coefficients.
pub fn adjoint_interpolate(components: &[Component], ring: &Arc<Ring<Q>>, degree: u32) -> Result<AdjointSpace> {
    let mons = monomials_of_degree(ring, degree);
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for c in components {
        let nfs: Vec<QPoly> = mons.iter().map(|m| c.ideal.normal_form(&MvPoly::monomial(ring, m.clone(), q(1)))).collect::<Result<_>>()?;
        let support: BTreeSet<Vec<u16>> =
            nfs.iter().flat_map(|p| p.terms().iter().map(|(m, _)| m.exponents().to_vec())).collect();
        for e in support {
            let s = Monomial::from_exponents(&e);
            rows.push(nfs.iter().map(|p| p.coeff(&s)).collect());
        }
    }
    let ns = nullspace(&rows, mons.len(), &());
    let basis = ns
        .into_iter()
        .map(|v| MvPoly::from_terms(ring, mons.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero())))
        .collect();
    Ok(AdjointSpace { degree, monomials: mons.len(), basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delpezzo::region::{builtin_region, plain_cube_region};
    use crate::exactalg::{parse_poly, MonomialOrder};

    #[test]
    fn monomial_counts() {
        let r = Ring::<Q>::new(&["a", "b", "c", "d"], MonomialOrder::GrevLex, ());
        assert_eq!(monomials_of_degree(&r, 4).len(), 35);
        assert_eq!(monomials_of_degree(&r, 2).len(), 10);
    }

    #[test]
    fn chart_pivots_on_largest_coefficient() {
        let r = builtin_region();
        let ch = PlaneChart::new(&r.facet("L0").unwrap().poly).unwrap();
        assert_eq!(ch.ring.vars(), &["u0", "u2", "u3"]);
        assert_eq!(ch.pivot_coeff, Q::from_integer((-900).into()));
        assert!(ch.restrict(&r.facet("L0").unwrap().poly).unwrap().is_zero());
    }

    #[test]
    fn arrangement_shapes() {
        let r = builtin_region();
        let a = residual_arrangement(&r).unwrap();
        let kinds: Vec<_> = a.components.iter().map(|c| c.kind).collect();
        assert_eq!(kinds.iter().filter(|k| **k == ComponentKind::Line).count(), 2);
        assert_eq!(kinds.iter().filter(|k| **k == ComponentKind::Conic).count(), 4);
        for c in &a.components {
            let h = c.hilbert().unwrap();
            assert_eq!((h.dim, h.degree_i64(), h.genus_i64().unwrap()), c.expected(3), "{}", c.name);
        }
        let cube = residual_arrangement(&plain_cube_region()).unwrap();
        assert_eq!(cube.components.len(), 3);
        assert!(cube.components.iter().all(|c| c.kind == ComponentKind::Line));
    }

    #[test]
    fn conic_is_the_residual_quotient() {
        let r = builtin_region();
        let a = residual_arrangement(&r).unwrap();
        let s = &r.facet("S").unwrap().poly;
        for (edge, c) in a.edges.iter().zip(a.components.iter().filter(|c| c.kind == ComponentKind::Conic)) {
            let l = &r.facet(&edge.plane).unwrap().poly;
            let section = IdealHandle::new(&r.ring, vec![l.clone(), s.clone()]).unwrap();
            let edge_ideal = IdealHandle::new(&r.ring, vec![l.clone(), edge.line.clone()]).unwrap();
            assert!(section.quotient(&edge_ideal).unwrap().equals(&c.ideal), "{}", c.name);
        }
    }

    #[test]
    fn twisted_cubic_has_a_quadric_net() {
        let r = Ring::<Q>::new(&["a", "b", "c", "d"], MonomialOrder::GrevLex, ());
        let gens: Vec<_> =
            ["a*c - b^2", "b*d - c^2", "a*d - b*c"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let comp = Component {
            name: "tc".into(),
            kind: ComponentKind::PlaneCurve,
            ideal: IdealHandle::new(&r, gens).unwrap(),
            plane: String::new(),
            other: MvPoly::zero(&r),
        };
        assert_eq!(adjoint_interpolate(&[comp], &r, 2).unwrap().nullity(), 3);
    }
}
