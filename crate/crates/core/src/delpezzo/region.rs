//! Region data: facet polynomials with orientation signs, the opposite-facet
//! structure, and for the Del Pezzo region the plane data it was built from.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::json::PolyJson;
use crate::exactalg::linalg::det_bareiss;
use crate::exactalg::{format_rational, parse_poly, parse_rational, q, qq, MonomialOrder, QPoly, Ring, Q};

/// A boundary hypersurface; the region lies where `sign * poly >= 0` (chart u3 = 1).
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub name: String,
    pub poly: QPoly,
    pub sign: i8,
}

impl Facet {
    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }
}

/// Six plane points and the cubics through them, with per-cubic weights so that
/// `u_i = w_i c_i` parametrizes the surface.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneData {
    pub plane: Arc<Ring<Q>>,
    pub points: Vec<(String, Vec<Q>)>,
    pub cubics: Vec<QPoly>,
    pub weights: Vec<Q>,
}

/// A region with the combinatorics of a 3-cube in P^3, affine chart `u3 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegionSpec {
    pub name: String,
    pub ring: Arc<Ring<Q>>,
    pub facets: Vec<Facet>,
    /// Opposite facet pairs. The first facet of the first pair carries the
    /// quadrilateral face used for the facet-residue check.
    pub pairs: Vec<(String, String)>,
    pub plane_data: Option<PlaneData>,
}

impl RegionSpec {
    pub fn facet(&self, name: &str) -> Result<&Facet> {
        self.facets
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| Error::Input(format!("no facet named {name}")))
    }

    /// Facets of degree > 1 (the cubic surface, if any).
    pub fn curved(&self) -> Vec<&Facet> {
        self.facets.iter().filter(|f| f.degree() > 1).collect()
    }

    pub fn opposite(&self, name: &str) -> Option<&str> {
        self.pairs.iter().find_map(|(a, b)| {
            if a == name {
                Some(b.as_str())
            } else if b == name {
                Some(a.as_str())
            } else {
                None
            }
        })
    }

    /// Degree of the adjoint: total facet degree minus 4.
    pub fn adjoint_degree(&self) -> Result<u32> {
        let total: u32 = self.facets.iter().map(|f| f.degree()).sum();
        total.checked_sub(4).ok_or_else(|| Error::Input("total facet degree below 4".into()))
    }

    /// Facet triples of the eight vertices, one facet from each opposite pair.
    /// Curved facets go last, linear ones in ascending name order.
    pub fn vertex_triples(&self) -> Vec<[String; 3]> {
        let mut out = Vec::new();
        let p = &self.pairs;
        for a in [&p[0].0, &p[0].1] {
            for b in [&p[1].0, &p[1].1] {
                for c in [&p[2].0, &p[2].1] {
                    out.push(self.order_triple([a.clone(), b.clone(), c.clone()]));
                }
            }
        }
        out
    }

    pub fn order_triple(&self, mut t: [String; 3]) -> [String; 3] {
        let deg = |n: &String| self.facets.iter().find(|f| &f.name == n).map(|f| f.degree()).unwrap_or(1);
        t.sort_by(|a, b| (deg(a) > 1, a).cmp(&(deg(b) > 1, b)));
        t
    }

    pub fn validate(&self) -> Result<()> {
        if self.ring.nvars() != 4 {
            return Err(Error::Input("regions live in P^3 (four variables)".into()));
        }
        if self.pairs.len() != 3 {
            return Err(Error::Input("need exactly three opposite facet pairs".into()));
        }
        let mut seen = Vec::new();
        for (a, b) in &self.pairs {
            for n in [a, b] {
                self.facet(n)?;
                if seen.contains(&n) {
                    return Err(Error::Input(format!("facet {n} appears in two pairs")));
                }
                seen.push(n);
            }
        }
        if seen.len() != self.facets.len() {
            return Err(Error::Input("every facet must belong to an opposite pair".into()));
        }
        for f in &self.facets {
            if !f.poly.is_homogeneous() || f.poly.is_zero() {
                return Err(Error::Input(format!("facet {} is not a nonzero form", f.name)));
            }
            if f.sign != 1 && f.sign != -1 {
                return Err(Error::Input(format!("facet {} has orientation {}", f.name, f.sign)));
            }
            if f.poly.ring().vars() != self.ring.vars() {
                return Err(Error::Input(format!("facet {} uses a different ring", f.name)));
            }
        }
        if self.curved().len() > 1 {
            return Err(Error::Input("at most one non-linear facet is supported".into()));
        }
        Ok(())
    }
}

fn facet_ring() -> Arc<Ring<Q>> {
    Ring::new(&["u0", "u1", "u2", "u3"], MonomialOrder::GrevLex, ())
}

const S_TEXT: &str = "540*u0^3 - 381*u0^2*u1 + 19*u0*u1^2 + 58*u1^3 - 402*u0^2*u2 + 94*u0*u1*u2 \
    + 27*u1^2*u2 - 188*u0*u2^2 - 118*u1*u2^2 - 879*u0^2*u3 + 84*u0*u1*u3 + 32*u1^2*u3 \
    - 106*u1*u2*u3 + 212*u0*u3^2";

const L_TEXT: [&str; 5] = [
    "300*u0 - 900*u1 - 100*u2 - 691*u3",
    "267*u0 + 38*u1 + 38*u2 - 76*u3",
    "-6*u0 + u1 + 11*u3",
    "27*u0 - 8*u1 - 32*u2 - 36*u3",
    "-257*u0 + 359*u1 - 248*u2 + 16*u3",
];

const L_SIGNS: [i8; 5] = [-1, 1, 1, 1, -1];

const CUBICS: [&str; 4] = [
    "-16*x^3 - 48*x^2*y + 118*x*y^2 - 16*x^2*z + 53*x*y*z",
    "-32*x^3 + 10*x^2*y - 188*x*y^2 + 21*x^2*z + 53*x*z^2",
    "84*x^3 - 172*x^2*y - 487*x*y^2 - 106*y^3 + 84*x^2*z + 106*y*z^2",
    "-108*x^3 - 6*x^2*y + 717*x*y^2 - 161*x^2*z + 106*x*y*z - 53*y^2*z + 53*z^3",
];

fn linear_facets(ring: &Arc<Ring<Q>>) -> Vec<Facet> {
    L_TEXT
        .iter()
        .zip(L_SIGNS)
        .enumerate()
        .map(|(i, (t, s))| Facet { name: format!("L{i}"), poly: parse_poly(ring, t).expect("builtin"), sign: s })
        .collect()
}

/// The genus-one region bounded by the cubic surface S and the planes L0..L4.
pub fn builtin_region() -> RegionSpec {
    let ring = facet_ring();
    let mut facets = linear_facets(&ring);
    facets.push(Facet { name: "S".into(), poly: parse_poly(&ring, S_TEXT).expect("builtin"), sign: 1 });
    let plane = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
    let pt = |n: &str, x: Q, y: Q| (n.to_string(), vec![x, y, q(1)]);
    let points = vec![
        pt("A", q(0), q(1)),
        pt("B", q(-1), q(0)),
        pt("C", q(0), q(-1)),
        pt("D", q(1), qq(1, 2)),
        pt("E", qq(3, 4), qq(-1, 2)),
        pt("F", qq(-1, 4), qq(-1, 2)),
    ];
    let cubics = CUBICS.iter().map(|t| parse_poly(&plane, t).expect("builtin")).collect();
    let weights = vec![q(1), q(1), qq(1, 2), qq(1, 2)];
    RegionSpec {
        name: "del-pezzo".into(),
        ring,
        facets,
        pairs: vec![("L0".into(), "S".into()), ("L1".into(), "L2".into()), ("L3".into(), "L4".into())],
        plane_data: Some(PlaneData { plane, points, cubics, weights }),
    }
}

/// Five of the same planes and a sixth plane `L5 = L0 + 100 u3` parallel to L0:
/// a polytope with the combinatorics of a cube.
pub fn plain_cube_region() -> RegionSpec {
    let ring = facet_ring();
    let mut facets = linear_facets(&ring);
    let l5 = parse_poly(&ring, &format!("{} + 100*u3", L_TEXT[0])).expect("builtin");
    facets.push(Facet { name: "L5".into(), poly: l5, sign: 1 });
    RegionSpec {
        name: "plain-cube".into(),
        ring,
        facets,
        pairs: vec![("L0".into(), "L5".into()), ("L1".into(), "L2".into()), ("L3".into(), "L4".into())],
        plane_data: None,
    }
}

/// One construction check with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Incidences of the points with the cubics, the cubic map landing on S, and
/// general position of the six points.
pub fn verify_construction(r: &RegionSpec) -> Result<Vec<ConstructionCheck>> {
    let pd = r.plane_data.as_ref().ok_or_else(|| Error::Input("region carries no plane data".into()))?;
    let s = r.curved().first().map(|f| f.poly.clone()).ok_or_else(|| Error::Input("region has no cubic facet".into()))?;
    if pd.cubics.len() != r.ring.nvars() || pd.weights.len() != pd.cubics.len() {
        return Err(Error::Input("need one cubic and one weight per coordinate".into()));
    }
    let mut out = Vec::new();

    let mut bad = Vec::new();
    for (i, c) in pd.cubics.iter().enumerate() {
        for (n, p) in &pd.points {
            let v = c.eval(p);
            if v != q(0) {
                bad.push(format!("c{i}({n}) = {}", format_rational(&v)));
            }
        }
    }
    out.push(check("point_incidence", bad));

    let mut assign = std::collections::BTreeMap::new();
    for (i, v) in r.ring.vars().iter().enumerate() {
        assign.insert(v.clone(), pd.cubics[i].scale(&pd.weights[i]));
    }
    let image = s.substitute(&assign, &pd.plane)?;
    let w = if image.is_zero() { vec![] } else { vec![format!("S(w*c) = {}", truncate(&image.to_string()))] };
    out.push(check("cubic_map_on_surface", w));

    let pts = &pd.points;
    let mut bad = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                let m = vec![pts[i].1.clone(), pts[j].1.clone(), pts[k].1.clone()];
                if det_bareiss(m, &()) == q(0) {
                    bad.push(format!("{}, {}, {} collinear", pts[i].0, pts[j].0, pts[k].0));
                }
            }
        }
    }
    if pts.len() == 6 {
        let rows: Vec<Vec<Q>> = pts
            .iter()
            .map(|(_, p)| {
                let (x, y, z) = (&p[0], &p[1], &p[2]);
                vec![x * x, y * y, z * z, x * y, x * z, y * z]
            })
            .collect();
        if det_bareiss(rows, &()) == q(0) {
            bad.push("the six points lie on a conic".into());
        }
    } else {
        bad.push(format!("expected six points, got {}", pts.len()));
    }
    out.push(check("general_position", bad));
    Ok(out)
}

fn check(name: &str, witnesses: Vec<String>) -> ConstructionCheck {
    ConstructionCheck {
        name: name.into(),
        pass: witnesses.is_empty(),
        witness: if witnesses.is_empty() { None } else { Some(witnesses.join("; ")) },
    }
}

pub(crate) fn truncate(s: &str) -> String {
    if s.len() <= 200 {
        s.to_string()
    } else {
        let mut end = 200;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}...", &s[..end])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub name: String,
    pub sign: i8,
    pub poly: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub name: String,
    pub coords: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDataJson {
    pub points: Vec<PointJson>,
    pub cubics: Vec<PolyJson>,
    pub weights: Vec<String>,
}

/// Wire format of a region; polynomials use the standard polynomial schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub name: String,
    pub facets: Vec<FacetJson>,
    pub pairs: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plane_data: Option<PlaneDataJson>,
}

impl RegionJson {
    pub fn from_region(r: &RegionSpec) -> Self {
        RegionJson {
            name: r.name.clone(),
            facets: r
                .facets
                .iter()
                .map(|f| FacetJson { name: f.name.clone(), sign: f.sign, poly: PolyJson::from_poly(&f.poly) })
                .collect(),
            pairs: r.pairs.clone(),
            plane_data: r.plane_data.as_ref().map(|pd| PlaneDataJson {
                points: pd
                    .points
                    .iter()
                    .map(|(n, p)| PointJson { name: n.clone(), coords: p.iter().map(format_rational).collect() })
                    .collect(),
                cubics: pd.cubics.iter().map(PolyJson::from_poly).collect(),
                weights: pd.weights.iter().map(format_rational).collect(),
            }),
        }
    }

    pub fn to_region(&self) -> Result<RegionSpec> {
        let ring = facet_ring();
        let facets = self
            .facets
            .iter()
            .map(|f| Ok(Facet { name: f.name.clone(), sign: f.sign, poly: f.poly.to_poly(&ring)? }))
            .collect::<Result<Vec<_>>>()?;
        let plane_data = match &self.plane_data {
            None => None,
            Some(pd) => {
                let plane = Ring::new(&["x", "y", "z"], MonomialOrder::GrevLex, ());
                let points = pd
                    .points
                    .iter()
                    .map(|p| {
                        if p.coords.len() != 3 {
                            return Err(Error::Input(format!("point {} needs three coordinates", p.name)));
                        }
                        Ok((p.name.clone(), p.coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let cubics = pd.cubics.iter().map(|c| c.to_poly(&plane)).collect::<Result<Vec<_>>>()?;
                let weights = pd.weights.iter().map(|w| parse_rational(w)).collect::<Result<Vec<_>>>()?;
                Some(PlaneData { plane, points, cubics, weights })
            }
        };
        let r = RegionSpec { name: self.name.clone(), ring, facets, pairs: self.pairs.clone(), plane_data };
        r.validate()?;
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_construction_holds() {
        let r = builtin_region();
        r.validate().unwrap();
        for c in verify_construction(&r).unwrap() {
            assert!(c.pass, "{c:?}");
        }
        assert_eq!(r.adjoint_degree().unwrap(), 4);
        assert_eq!(plain_cube_region().adjoint_degree().unwrap(), 2);
    }

    #[test]
    fn unweighted_cubics_miss_the_surface() {
        let mut r = builtin_region();
        r.plane_data.as_mut().unwrap().weights = vec![q(1); 4];
        let checks = verify_construction(&r).unwrap();
        assert!(!checks.iter().find(|c| c.name == "cubic_map_on_surface").unwrap().pass);
    }

    #[test]
    fn triples_put_the_cubic_last() {
        let r = builtin_region();
        let t = r.vertex_triples();
        assert_eq!(t.len(), 8);
        assert_eq!(t[0], ["L0".to_string(), "L1".into(), "L3".into()]);
        assert_eq!(t[7], ["L2".to_string(), "L4".into(), "S".into()]);
    }

    #[test]
    fn json_round_trip() {
        let r = builtin_region();
        let j = RegionJson::from_region(&r);
        let text = serde_json::to_string(&j).unwrap();
        let back: RegionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_region().unwrap(), r);
    }
}
