//! Vertices of a cube-like region and the residues of its canonical form there.

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::interval::{eval_poly, Interval};
use super::region::{Facet, RegionSpec};
use crate::error::{Error, Result};
use crate::exactalg::linalg::{det_bareiss, solve};
use crate::exactalg::{format_rational, q, qq, Monomial, QPoly, RootInterval, UPoly, Q};

/// Width below which residue enclosures at algebraic vertices are accepted.
pub fn residue_tolerance() -> Q {
    Q::new(num_bigint::BigInt::one(), num_bigint::BigInt::from(10u8).pow(20))
}

/// A point of the chart `u3 = 1`, given by its first three coordinates.
#[derive(Clone, Debug)]
pub enum VertexPoint {
    Exact(Vec<Q>),
    /// `base + t * dir` where `t` is the root of `poly` isolated by `root`.
    Algebraic { base: Vec<Q>, dir: Vec<Q>, poly: UPoly, root: RootInterval },
}

impl VertexPoint {
    pub fn is_exact(&self) -> bool {
        matches!(self, VertexPoint::Exact(_))
    }

    /// Enclosing box in all four homogeneous coordinates (last one fixed to 1).
    pub fn enclosure(&self) -> Vec<Interval> {
        let mut bx: Vec<Interval> = match self {
            VertexPoint::Exact(p) => p.iter().cloned().map(Interval::point).collect(),
            VertexPoint::Algebraic { base, dir, root, .. } => {
                let t = Interval::new(root.lo.clone(), root.hi.clone());
                base.iter().zip(dir).map(|(b, d)| &Interval::point(b.clone()) + &(&Interval::point(d.clone()) * &t)).collect()
            }
        };
        bx.push(Interval::point(q(1)));
        bx
    }

    /// A rational point near (or at) the vertex.
    pub fn approx(&self) -> Vec<Q> {
        self.enclosure()[..3].iter().map(|i| i.mid()).collect()
    }

    fn refine(&mut self) {
        if let VertexPoint::Algebraic { root, .. } = self {
            for _ in 0..8 {
                root.bisect();
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct VertexCert {
    pub triple: [String; 3],
    pub point: VertexPoint,
}

/// Exact value or certified enclosure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certified {
    Exact(Q),
    Enclosure(Interval),
}

impl Certified {
    pub fn scaled(&self, s: &Q) -> Certified {
        match self {
            Certified::Exact(v) => Certified::Exact(v * s),
            Certified::Enclosure(i) => Certified::Enclosure(&i.clone() * &Interval::point(s.clone())),
        }
    }

    /// Exactly ±1, or an enclosure narrower than the tolerance that contains ±1 and not 0.
    pub fn is_unit(&self) -> bool {
        match self {
            Certified::Exact(v) => v.abs().is_one(),
            Certified::Enclosure(i) => {
                i.width() < residue_tolerance() && i.sign() != 0 && (i.contains(&q(1)) || i.contains(&q(-1)))
            }
        }
    }

    pub fn sign(&self) -> i8 {
        match self {
            Certified::Exact(v) if v.is_positive() => 1,
            Certified::Exact(v) if v.is_negative() => -1,
            Certified::Exact(_) => 0,
            Certified::Enclosure(i) => i.sign(),
        }
    }
}

impl Serialize for Certified {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Certified::Exact(v) => s.serialize_str(&format_rational(v)),
            Certified::Enclosure(i) => [format_rational(&i.lo), format_rational(&i.hi)].serialize(s),
        }
    }
}

fn affine_linear(f: &QPoly) -> (Vec<Q>, Q) {
    let n = f.ring().nvars();
    let c = (0..n - 1).map(|i| f.coeff(&Monomial::var(n, i))).collect();
    (c, f.coeff(&Monomial::var(n, n - 1)))
}

fn cross(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![&a[1] * &b[2] - &a[2] * &b[1], &a[2] * &b[0] - &a[0] * &b[2], &a[0] * &b[1] - &a[1] * &b[0]]
}

fn eval_affine(f: &QPoly, p: &[Q]) -> Q {
    let mut pt = p.to_vec();
    pt.push(q(1));
    f.eval(&pt)
}

/// Line `{l1 = l2 = 0}` of the chart as `base + t * dir`, with `dir` scaled so
/// that `t` is one of the coordinates.
pub(crate) fn line_of(l1: &QPoly, l2: &QPoly) -> Result<(Vec<Q>, Vec<Q>)> {
    let (a, a0) = affine_linear(l1);
    let (b, b0) = affine_linear(l2);
    let d = cross(&a, &b);
    let free = (0..3)
        .filter(|&i| !d[i].is_zero())
        .max_by(|&i, &j| d[i].abs().cmp(&d[j].abs()).then(j.cmp(&i)))
        .ok_or_else(|| Error::Construction("parallel planes do not meet in the chart".into()))?;
    let dir: Vec<Q> = d.iter().map(|x| x / &d[free]).collect();
    let others: Vec<usize> = (0..3).filter(|&i| i != free).collect();
    let m = vec![vec![a[others[0]].clone(), a[others[1]].clone()], vec![b[others[0]].clone(), b[others[1]].clone()]];
    let sol = solve(&m, &[-a0, -b0]).ok_or_else(|| Error::Construction("degenerate plane pair".into()))?;
    let mut base = vec![Q::zero(); 3];
    base[others[0]] = sol[0].clone();
    base[others[1]] = sol[1].clone();
    Ok((base, dir))
}

/// `f(base + t dir, 1)` as a polynomial in `t`.
pub(crate) fn restrict_to_line(f: &QPoly, base: &[Q], dir: &[Q]) -> UPoly {
    let coords: Vec<UPoly> = (0..3).map(|i| UPoly::new(vec![base[i].clone(), dir[i].clone()])).collect();
    let mut acc = UPoly::new(vec![]);
    for (m, c) in f.terms() {
        let mut t = UPoly::new(vec![c.clone()]);
        for (i, &e) in m.exponents().iter().take(3).enumerate() {
            for _ in 0..e {
                t = t.mul(&coords[i]);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Sign of `facet.sign * facet` at the point: +1, -1 or 0 (exactly zero).
/// Algebraic points are refined until the sign is decided.
fn oriented_sign(f: &Facet, p: &mut VertexPoint) -> Result<i8> {
    if let VertexPoint::Exact(x) = p {
        let v = eval_affine(&f.poly, x) * q(f.sign as i64);
        return Ok(if v.is_positive() { 1 } else if v.is_negative() { -1 } else { 0 });
    }
    for _ in 0..64 {
        let s = eval_poly(&f.poly, &p.enclosure()).sign();
        if s != 0 {
            return Ok(s * f.sign);
        }
        p.refine();
    }
    Err(Error::Construction(format!("cannot decide the sign of {} at an algebraic point", f.name)))
}

fn candidates(r: &RegionSpec, triple: &[String; 3]) -> Result<Vec<VertexPoint>> {
    let f: Vec<&Facet> = triple.iter().map(|n| r.facet(n)).collect::<Result<_>>()?;
    let (base, dir) = line_of(&f[0].poly, &f[1].poly)?;
    let g = restrict_to_line(&f[2].poly, &base, &dir);
    if g.is_zero() {
        return Err(Error::Construction(format!("{} contains the line {} = {} = 0", f[2].name, f[0].name, f[1].name)));
    }
    let at = |t: &Q| base.iter().zip(&dir).map(|(b, d)| b + d * t).collect::<Vec<Q>>();
    let mut out = Vec::new();
    let mut rest = g.square_free();
    for t in g.rational_roots() {
        out.push(VertexPoint::Exact(at(&t)));
        rest = rest.div_rem(&UPoly::new(vec![-t, q(1)])).0;
    }
    for root in rest.isolate_roots() {
        if root.is_exact() {
            out.push(VertexPoint::Exact(at(&root.lo)));
        } else {
            out.push(VertexPoint::Algebraic { base: base.clone(), dir: dir.clone(), poly: rest.clone(), root });
        }
    }
    Ok(out)
}

/// The eight vertices, one per choice of a facet from each opposite pair. Each
/// triple must have exactly one intersection point satisfying the remaining
/// three inequalities.
pub fn vertex_enumerate(r: &RegionSpec) -> Result<Vec<VertexCert>> {
    r.validate()?;
    let mut out = Vec::new();
    for triple in r.vertex_triples() {
        let others: Vec<&Facet> = r.facets.iter().filter(|f| !triple.contains(&f.name)).collect();
        let mut admissible = Vec::new();
        let cands = candidates(r, &triple)?;
        let n = cands.len();
        for mut p in cands {
            let mut ok = true;
            for f in &others {
                if oriented_sign(f, &mut p)? < 0 {
                    ok = false;
                    break;
                }
            }
            if ok {
                admissible.push(p);
            }
        }
        if admissible.len() != 1 {
            return Err(Error::Construction(format!(
                "vertex {}: {} of {} real intersection points satisfy the other inequalities",
                triple.join(","),
                admissible.len(),
                n
            )));
        }
        out.push(VertexCert { triple, point: admissible.pop().unwrap() });
    }
    Ok(out)
}

/// Residue of `adj / prod(facets) du0 du1 du2` at a vertex:
/// `adj / (det J(f_a, f_b, f_c) * prod of the other facets)`, chart `u3 = 1`.
pub fn vertex_residue(r: &RegionSpec, adj: &QPoly, v: &VertexCert) -> Result<Certified> {
    let tri: Vec<&Facet> = v.triple.iter().map(|n| r.facet(n)).collect::<Result<_>>()?;
    let others: Vec<&Facet> = r.facets.iter().filter(|f| !v.triple.contains(&f.name)).collect();
    let jac: Vec<Vec<QPoly>> = tri.iter().map(|f| (0..3).map(|i| f.poly.derivative(i)).collect()).collect();
    match &v.point {
        VertexPoint::Exact(p) => {
            let m: Vec<Vec<Q>> = jac.iter().map(|row| row.iter().map(|d| eval_affine(d, p)).collect()).collect();
            let det = det_bareiss(m, &());
            if det.is_zero() {
                return Err(Error::Construction(format!("facets {} are not transversal", v.triple.join(","))));
            }
            let mut den = det;
            for f in &others {
                den *= eval_affine(&f.poly, p);
            }
            if den.is_zero() {
                return Err(Error::Construction(format!("a fourth facet passes through vertex {}", v.triple.join(","))));
            }
            Ok(Certified::Exact(eval_affine(adj, p) / den))
        }
        VertexPoint::Algebraic { .. } => {
            let mut pt = v.point.clone();
            let tol = residue_tolerance();
            for _ in 0..200 {
                let bx = pt.enclosure();
                let j: Vec<Vec<Interval>> = jac.iter().map(|row| row.iter().map(|d| eval_poly(d, &bx)).collect()).collect();
                let det = det3(&j);
                let mut den = det;
                for f in &others {
                    den = &den * &eval_poly(&f.poly, &bx);
                }
                if let Some(val) = eval_poly(adj, &bx).div(&den) {
                    if val.width() < tol {
                        return Ok(Certified::Enclosure(val));
                    }
                }
                pt.refine();
            }
            Err(Error::Construction(format!("residue enclosure at {} did not converge", v.triple.join(","))))
        }
    }
}

fn det3(j: &[Vec<Interval>]) -> Interval {
    let minor = |a: usize, b: usize| &(&j[1][a] * &j[2][b]) - &(&j[1][b] * &j[2][a]);
    let t0 = &j[0][0] * &minor(1, 2);
    let t1 = &j[0][1] * &minor(0, 2);
    let t2 = &j[0][2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// A rational point strictly inside the region, from a lattice search around
/// the vertex centroid.
pub fn interior_point(r: &RegionSpec, vertices: &[VertexCert]) -> Result<Vec<Q>> {
    let pts: Vec<Vec<Q>> = vertices.iter().map(|v| v.point.approx()).collect();
    let n = Q::from_integer(pts.len().into());
    let centroid: Vec<Q> = (0..3).map(|i| pts.iter().map(|p| p[i].clone()).sum::<Q>() / &n).collect();
    let extent = (0..3)
        .map(|i| {
            let lo = pts.iter().map(|p| p[i].clone()).min().unwrap();
            let hi = pts.iter().map(|p| p[i].clone()).max().unwrap();
            hi - lo
        })
        .max()
        .unwrap_or_else(Q::zero);
    let inside = |p: &[Q]| r.facets.iter().all(|f| (eval_affine(&f.poly, p) * q(f.sign as i64)).is_positive());
    // small denominators first: round the centroid, then walk a lattice
    for den in [1i64, 2, 4, 8, 16, 32, 64, 128, 256, 1024] {
        let step = (&extent / q(den)).max(qq(1, 1 << 20));
        let step = crate::exactalg::simplest_between(&(&step * qq(1, 2)), &step);
        let c: Vec<Q> = centroid.iter().map(|x| (x / &step).round() * &step).collect();
        let mut offsets: Vec<[i64; 3]> = Vec::new();
        for i in -3..=3 {
            for j in -3..=3 {
                for k in -3..=3 {
                    offsets.push([i, j, k]);
                }
            }
        }
        offsets.sort_by_key(|o| (o.iter().map(|x| x.abs()).sum::<i64>(), *o));
        for o in offsets {
            let p: Vec<Q> = (0..3).map(|i| &c[i] + &step * q(o[i])).collect();
            if inside(&p) {
                return Ok(p);
            }
        }
    }
    Err(Error::Construction("no interior point found on the search lattice".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delpezzo::region::builtin_region;
    use crate::exactalg::{parse_poly, MonomialOrder, Ring};

    fn unit_cube() -> RegionSpec {
        let ring = Ring::new(&["u0", "u1", "u2", "u3"], MonomialOrder::GrevLex, ());
        let f = |n: &str, t: &str| Facet { name: n.into(), poly: parse_poly(&ring, t).unwrap(), sign: 1 };
        RegionSpec {
            name: "unit".into(),
            ring: ring.clone(),
            facets: vec![
                f("a0", "u0"),
                f("a1", "u3 - u0"),
                f("b0", "u1"),
                f("b1", "u3 - u1"),
                f("c0", "u2"),
                f("c1", "u3 - u2"),
            ],
            pairs: vec![("a0".into(), "a1".into()), ("b0".into(), "b1".into()), ("c0".into(), "c1".into())],
            plane_data: None,
        }
    }

    #[test]
    fn unit_cube_residues() {
        let r = unit_cube();
        let adj = parse_poly(&r.ring, "u3^2").unwrap();
        let vs = vertex_enumerate(&r).unwrap();
        assert_eq!(vs.len(), 8);
        for v in &vs {
            let res = vertex_residue(&r, &adj, v).unwrap();
            assert!(res.is_unit(), "{:?}", v.triple);
            let twice = vertex_residue(&r, &adj.scale(&q(2)), v).unwrap();
            assert_eq!(twice, res.scaled(&q(2)));
        }
        let p = interior_point(&r, &vs).unwrap();
        assert_eq!(p, vec![qq(1, 2); 3]);
    }

    #[test]
    fn algebraic_vertex_enclosure() {
        // top face curved: over u0 = 1 the height is sqrt(3)
        let ring = Ring::new(&["u0", "u1", "u2", "u3"], MonomialOrder::GrevLex, ());
        let f = |n: &str, t: &str, s: i8| Facet { name: n.into(), poly: parse_poly(&ring, t).unwrap(), sign: s };
        let r = RegionSpec {
            name: "curved".into(),
            ring: ring.clone(),
            facets: vec![
                f("a0", "u0 - u3", 1),
                f("a1", "2*u3 - u0", 1),
                f("b0", "u1 - u3", 1),
                f("b1", "2*u3 - u1", 1),
                f("c0", "u2", 1),
                f("S", "3*u3^2 - u2^2 + u0*u3 - u0^2", 1),
            ],
            pairs: vec![("a0".into(), "a1".into()), ("b0".into(), "b1".into()), ("c0".into(), "S".into())],
            plane_data: None,
        };
        let vs = vertex_enumerate(&r).unwrap();
        let alg: Vec<_> = vs.iter().filter(|v| !v.point.is_exact()).collect();
        assert!(!alg.is_empty());
        let adj = parse_poly(&ring, "u3^3").unwrap();
        for v in alg {
            match vertex_residue(&r, &adj, v).unwrap() {
                Certified::Enclosure(i) => assert!(i.width() < residue_tolerance()),
                e => panic!("expected an enclosure, got {e:?}"),
            }
        }
    }

    #[test]
    fn builtin_vertices_are_rational() {
        let r = builtin_region();
        let vs = vertex_enumerate(&r).unwrap();
        assert_eq!(vs.len(), 8);
        assert!(vs.iter().all(|v| v.point.is_exact()));
        let p = interior_point(&r, &vs).unwrap();
        for f in &r.facets {
            assert!((eval_affine(&f.poly, &p) * q(f.sign as i64)).is_positive());
        }
    }
}
