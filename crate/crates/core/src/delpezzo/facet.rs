//! Residues along the quadrilateral facet, the kernel form, and a sampled
//! disjointness test for the residual arrangement.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::arrangement::{Arrangement, ComponentKind, PlaneChart};
use super::region::RegionSpec;
use super::vertex::{line_of, restrict_to_line, VertexCert};
use crate::error::{Error, Result};
use crate::exactalg::linalg::det_bareiss;
use crate::exactalg::univariate::sign_changes;
use crate::exactalg::{format_rational, q, Monomial, MvPoly, QPoly, UPoly, Q};

fn coeff_vector(l: &QPoly) -> Vec<Q> {
    let n = l.ring().nvars();
    (0..n).map(|i| l.coeff(&Monomial::var(n, i))).collect()
}

fn cross(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Canonical form `numerator / prod(lines)` of a plane quadrilateral, in the
/// chart where the last of the three plane variables is 1.
#[derive(Clone, Debug)]
pub struct QuadForm {
    /// Sides oriented to be positive inside, in cyclic order.
    pub lines: Vec<QPoly>,
    pub numerator: QPoly,
}

/// Sum of the two triangle forms of a diagonal split; both diagonals must agree.
/// `lines` are the four sides in cyclic order, `interior` an affine point inside.
pub fn quad_canonical_form(lines: &[QPoly], interior: &[Q]) -> Result<QuadForm> {
    if lines.len() != 4 || interior.len() != 2 {
        return Err(Error::Input("need four lines and a point of the affine plane".into()));
    }
    let ring = lines[0].ring().clone();
    if ring.nvars() != 3 {
        return Err(Error::Input("lines must live in a plane with three coordinates".into()));
    }
    let p = [interior[0].clone(), interior[1].clone(), q(1)];
    let mut ls = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        if l.total_degree() != Some(1) || !l.is_homogeneous() {
            return Err(Error::Input(format!("side {i} is not a linear form")));
        }
        let s = sign(&l.eval(&p));
        if s == 0 {
            return Err(Error::Input(format!("the interior point lies on side {i}")));
        }
        ls.push(l.scale(&q(s as i64)));
    }
    let cv: Vec<Vec<Q>> = ls.iter().map(coeff_vector).collect();
    // v[i] = side i ∩ side i+1, normalized to the chart
    let mut v = Vec::new();
    for i in 0..4 {
        let x = cross(&cv[i], &cv[(i + 1) % 4]);
        if x[2].is_zero() {
            return Err(Error::Input(format!("sides {i} and {} meet at infinity", (i + 1) % 4)));
        }
        v.push(x.iter().map(|c| c / &x[2]).collect::<Vec<Q>>());
    }
    let lin = |c: &[Q]| MvPoly::from_terms(&ring, (0..3).map(|i| (Monomial::var(3, i), c[i].clone())));
    // diagonal through v[a], v[a+2]; triangles (sides a+1, a+2) and (sides a+3, a)
    let split = |a: usize| -> Result<QPoly> {
        let d = cross(&v[a], &v[(a + 2) % 4]);
        let tri = |s1: usize, s2: usize, apex: &[Q]| -> (Q, i8) {
            let m = vec![cv[s1].clone(), cv[s2].clone(), d.clone()];
            (det_bareiss(m, &()).abs(), sign(&dot(&d, apex)))
        };
        let (d1, o1) = tri((a + 1) % 4, (a + 2) % 4, &v[(a + 1) % 4]);
        let (d2, o2) = tri((a + 3) % 4, a, &v[(a + 3) % 4]);
        if o1 == 0 || o2 == 0 || d1.is_zero() || d2.is_zero() {
            return Err(Error::Input("degenerate triangle in the diagonal split".into()));
        }
        let t1 = (&ls[(a + 3) % 4] * &ls[a]).scale(&(d1 * q(o1 as i64)));
        let t2 = (&ls[(a + 1) % 4] * &ls[(a + 2) % 4]).scale(&(d2 * q(o2 as i64)));
        (&t1 + &t2)
            .exact_div(&lin(&d))
            .ok_or_else(|| Error::Construction("triangle forms do not cancel along the diagonal".into()))
    };
    let na = split(0)?;
    let nb = split(1)?;
    if na != nb {
        return Err(Error::Construction("the two diagonal splits disagree".into()));
    }
    Ok(QuadForm { lines: ls, numerator: na })
}

#[derive(Clone, Debug, Serialize)]
pub struct FacetResidue {
    pub facet: String,
    pub pivot: String,
    pub pivot_coeff: String,
    /// Restricted adjoint divided by the restricted opposite facet.
    pub numerator: String,
    pub quad_numerator: String,
    /// `+1` or `-1`: the relative sign of the two forms.
    pub sign: i8,
}

fn quad_sides(r: &RegionSpec) -> [&str; 4] {
    let p = &r.pairs;
    [&p[1].0, &p[2].0, &p[1].1, &p[2].1]
}

/// Residue of `adj / prod(facets)` along the first facet of the first pair,
/// compared with the canonical form of its quadrilateral face.
pub fn facet_residue(r: &RegionSpec, adj: &QPoly) -> Result<FacetResidue> {
    let (fname, oname) = (&r.pairs[0].0, &r.pairs[0].1);
    let f = r.facet(fname)?;
    let chart = PlaneChart::new(&f.poly)?;
    let a = chart.restrict(adj)?;
    let o = chart.restrict(&r.facet(oname)?.poly)?;
    let num = a.exact_div(&o).ok_or_else(|| {
        Error::Construction(format!("{oname} restricted to {fname} = 0 does not divide the restricted adjoint"))
    })?;
    let raw: Vec<QPoly> =
        quad_sides(r).iter().map(|n| chart.restrict(&r.facet(n)?.poly)).collect::<Result<_>>()?;
    // vertex centroid of the face
    let cv: Vec<Vec<Q>> = raw.iter().map(coeff_vector).collect();
    let mut centre = vec![Q::zero(), Q::zero()];
    for i in 0..4 {
        let x = cross(&cv[i], &cv[(i + 1) % 4]);
        if x[2].is_zero() {
            return Err(Error::Construction("face vertex at infinity".into()));
        }
        centre[0] += &x[0] / &x[2] / q(4);
        centre[1] += &x[1] / &x[2] / q(4);
    }
    let quad = quad_canonical_form(&raw, &centre)?;
    let prod = |ls: &[QPoly]| ls.iter().skip(1).fold(ls[0].clone(), |acc, l| &acc * l);
    let lhs = &num * &prod(&quad.lines);
    let rhs = (&quad.numerator * &prod(&raw)).scale(&chart.pivot_coeff.abs());
    let sign = if lhs == rhs {
        1
    } else if lhs == rhs.scale(&q(-1)) {
        -1
    } else {
        return Err(Error::Construction(format!("residue along {fname} differs from the face's canonical form")));
    };
    Ok(FacetResidue {
        facet: fname.clone(),
        pivot: r.ring.vars()[chart.pivot].clone(),
        pivot_coeff: format_rational(&chart.pivot_coeff),
        numerator: num.to_string(),
        quad_numerator: quad.numerator.to_string(),
        sign,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelSample {
    pub lambda: String,
    /// The opposite facet divides the restricted numerator (no pole survives).
    pub divisible: bool,
    pub pass: bool,
}

/// For `adj + λ * prod(sides)`, divisibility by the restricted opposite facet
/// must hold exactly when `λ = 0`.
pub fn kernel_check(r: &RegionSpec, adj: &QPoly, lambdas: &[Q]) -> Result<Vec<KernelSample>> {
    let (fname, oname) = (&r.pairs[0].0, &r.pairs[0].1);
    let kappa = quad_sides(r)
        .iter()
        .map(|n| r.facet(n).map(|f| f.poly.clone()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .reduce(|a, b| &a * &b)
        .unwrap();
    if kappa.total_degree() != adj.total_degree() {
        return Err(Error::Input("kernel form numerator and adjoint differ in degree".into()));
    }
    let chart = PlaneChart::new(&r.facet(fname)?.poly)?;
    let o = chart.restrict(&r.facet(oname)?.poly)?;
    lambdas
        .iter()
        .map(|l| {
            let g = chart.restrict(&(adj + &kappa.scale(l)))?;
            let divisible = g.exact_div(&o).is_some();
            Ok(KernelSample { lambda: format_rational(l), divisible, pass: divisible == l.is_zero() })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DisjointResult {
    pub component: String,
    /// `certified` for exact line tests, `sampled` for curves, `meets` on failure.
    pub status: String,
    pub detail: String,
}

fn count_roots_closed(g: &UPoly, lo: &Q, hi: &Q) -> usize {
    let seq = g.sturm();
    let inner = sign_changes(&seq, lo) - sign_changes(&seq, hi);
    inner + usize::from(g.eval(lo).is_zero())
}

/// Lines are tested exactly (the set of line points satisfying all region
/// inequalities must be empty); curves by sampling the region's face in
/// their plane and requiring a constant nonzero sign of the curve's equation.
pub fn residual_disjointness(r: &RegionSpec, arr: &Arrangement, vertices: &[VertexCert]) -> Result<Vec<DisjointResult>> {
    let mut out = Vec::new();
    for c in &arr.components {
        let res = if c.kind == ComponentKind::Line {
            line_disjoint(r, &c.plane, &c.other)?
        } else {
            curve_sampled(r, &c.plane, &c.other, vertices)?
        };
        out.push(DisjointResult { component: c.name.clone(), status: res.0, detail: res.1 });
    }
    Ok(out)
}

fn line_disjoint(r: &RegionSpec, plane: &str, other: &QPoly) -> Result<(String, String)> {
    let l1 = &r.facet(plane)?.poly;
    let (n1, n2) = (coeff_vector(l1), coeff_vector(other));
    if cross(&n1[..3], &n2[..3]).iter().all(|x| x.is_zero()) {
        return Ok(("certified".into(), "the line lies at infinity".into()));
    }
    let (base, dir) = line_of(l1, other)?;
    let mut lo: Option<Q> = None;
    let mut hi: Option<Q> = None;
    let mut curved = Vec::new();
    for f in &r.facets {
        let g = restrict_to_line(&f.poly, &base, &dir).scale(&q(f.sign as i64));
        if &f.poly == l1 || &f.poly == other {
            continue;
        }
        match g.degree() {
            -1 => {}
            0 => {
                if g.lead().is_negative() {
                    return Ok(("certified".into(), format!("{} < 0 along the line", f.name)));
                }
            }
            1 => {
                let t = -&g.coeffs()[0] / &g.coeffs()[1];
                if g.coeffs()[1].is_positive() {
                    lo = Some(lo.map_or(t.clone(), |x| x.max(t)));
                } else {
                    hi = Some(hi.map_or(t.clone(), |x| x.min(t)));
                }
            }
            _ => curved.push((f.name.clone(), g)),
        }
    }
    if let (Some(a), Some(b)) = (&lo, &hi) {
        if a > b {
            return Ok(("certified".into(), "linear inequalities are infeasible on the line".into()));
        }
    }
    for (name, g) in &curved {
        let bound = g.root_bound();
        let a = lo.clone().unwrap_or_else(|| -bound.clone());
        let b = hi.clone().unwrap_or(bound);
        if a > b {
            continue;
        }
        if count_roots_closed(g, &a, &b) == 0 && g.eval(&((&a + &b) / q(2))).is_negative() {
            return Ok(("certified".into(), format!("{name} < 0 on the feasible segment")));
        }
    }
    Ok(("meets".into(), "the line has points satisfying every inequality".into()))
}

fn curve_sampled(r: &RegionSpec, plane: &str, curve: &QPoly, vertices: &[VertexCert]) -> Result<(String, String)> {
    const GRID: i64 = 16;
    let chart = PlaneChart::new(&r.facet(plane)?.poly)?;
    let keep: Vec<usize> = (0..3).filter(|&i| i != chart.pivot).collect();
    let on: Vec<Vec<Q>> =
        vertices.iter().filter(|v| v.triple.iter().any(|n| n == plane)).map(|v| v.point.approx()).collect();
    if on.is_empty() {
        return Ok(("meets".into(), format!("no vertex of the region lies on {plane}")));
    }
    let range = |k: usize| {
        let xs = on.iter().map(|p| p[keep[k]].clone());
        (xs.clone().min().unwrap(), xs.max().unwrap())
    };
    let (r0, r1) = (range(0), range(1));
    let facets: Vec<(QPoly, i8)> = r
        .facets
        .iter()
        .filter(|f| f.name != plane)
        .map(|f| Ok((chart.restrict(&f.poly)?, f.sign)))
        .collect::<Result<_>>()?;
    let g = chart.restrict(curve)?;
    let (mut n, mut seen) = (0usize, 0i8);
    for i in 0..=GRID {
        for j in 0..=GRID {
            let a = &r0.0 + (&r0.1 - &r0.0) * Q::new(i.into(), GRID.into());
            let b = &r1.0 + (&r1.1 - &r1.0) * Q::new(j.into(), GRID.into());
            let p = [a, b, q(1)];
            if facets.iter().any(|(f, s)| (f.eval(&p) * q(*s as i64)).is_negative()) {
                continue;
            }
            n += 1;
            let s = sign(&g.eval(&p));
            if s == 0 || (seen != 0 && s != seen) {
                return Ok(("meets".into(), format!("curve equation changes sign on the face of {plane}")));
            }
            seen = s;
        }
    }
    if n == 0 {
        return Ok(("meets".into(), format!("no sample points on the face of {plane}")));
    }
    Ok(("sampled".into(), format!("constant sign at {n} face samples on {plane}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, qq, MonomialOrder, Ring};

    #[test]
    fn unit_square() {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
        let ls: Vec<_> = ["x", "y", "z - x", "z - y"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let f = quad_canonical_form(&ls, &[qq(1, 2), qq(1, 3)]).unwrap();
        assert_eq!(f.numerator, parse_poly(&r, "z").unwrap());
        assert!(quad_canonical_form(&ls, &[q(0), qq(1, 2)]).is_err());
    }

    #[test]
    fn trapezoid_residues_are_units() {
        let r = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
        let ls: Vec<_> =
            ["x", "y", "2*z - x", "3*z - x - y"].iter().map(|s| parse_poly(&r, s).unwrap()).collect();
        let f = quad_canonical_form(&ls, &[qq(1, 2), qq(1, 2)]).unwrap();
        // residue at the vertex x = y = 0
        let j = q(1);
        let rest = (&f.lines[2] * &f.lines[3]).eval(&[q(0), q(0), q(1)]);
        let val = f.numerator.eval(&[q(0), q(0), q(1)]) / (j * rest);
        assert_eq!(val.abs(), q(1));
    }
}
