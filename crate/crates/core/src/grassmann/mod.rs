//! Plücker embeddings, twistor coordinates and Grassmannian degree formulas.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::linalg::{det_bareiss, rank, rref};
use crate::exactalg::{format_rational, parse_rational, subsets, Monomial, MonomialOrder, MvPoly, QPoly, Ring, Q};
use crate::groebner::IdealHandle;

/// Gr(k, n) in its Plücker embedding.
#[derive(Clone, Debug)]
pub struct GrassmannContext {
    pub k: usize,
    pub n: usize,
    /// k-subsets of `1..=n`, lexicographic; position = variable index.
    pub subsets: Vec<Vec<usize>>,
    pub ring: Arc<Ring<Q>>,
    pub relations: IdealHandle<Q>,
}

pub fn plucker_name(set: &[usize], n: usize) -> String {
    let parts: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    if n <= 9 {
        format!("p{}", parts.concat())
    } else {
        format!("p{}", parts.join("_"))
    }
}

fn sort_sign(seq: &[usize]) -> Option<(i8, Vec<usize>)> {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

impl GrassmannContext {
    pub fn var_index(&self, set: &[usize]) -> Option<usize> {
        self.subsets.iter().position(|s| s == set)
    }

    pub fn var(&self, set: &[usize]) -> QPoly {
        MvPoly::var_at(&self.ring, self.var_index(set).expect("k-subset"))
    }

    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// Plücker coordinates (maximal minors) of the row span of a k×n matrix.
    pub fn point_of(&self, rows: &[Vec<Q>]) -> Vec<Q> {
        self.subsets
            .iter()
            .map(|s| {
                let m: Vec<Vec<Q>> = rows.iter().map(|r| s.iter().map(|&j| r[j - 1].clone()).collect()).collect();
                det_bareiss(m, &())
            })
            .collect()
    }
}

/// Plücker relations of Gr(k, n): the span of all quadratic shuffle relations,
/// reduced to an echelon basis.
pub fn plucker_ideal(k: usize, n: usize) -> Result<GrassmannContext> {
    if k == 0 || k > n {
        return Err(Error::Input(format!("Gr({k},{n}) needs 1 <= k <= n")));
    }
    let subs: Vec<Vec<usize>> =
        subsets(n, k).into_iter().map(|s| s.into_iter().map(|i| i + 1).collect()).collect();
    let names: Vec<String> = subs.iter().map(|s| plucker_name(s, n)).collect();
    let ring = Ring::new(&names, MonomialOrder::GrevLex, ());
    let index: HashMap<Vec<usize>, usize> = subs.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let nv = subs.len();

    // sum_l (-1)^l p(I, j_l) p(J \ j_l) for (k-1)-subsets I and (k+1)-subsets J
    let mut rels: Vec<HashMap<Monomial, i64>> = Vec::new();
    if k >= 1 && k < n {
        for i_set in subsets(n, k - 1) {
            let i_set: Vec<usize> = i_set.into_iter().map(|x| x + 1).collect();
            for j_set in subsets(n, k + 1) {
                let j_set: Vec<usize> = j_set.into_iter().map(|x| x + 1).collect();
                let mut rel: HashMap<Monomial, i64> = HashMap::new();
                for l in 0..=k {
                    let mut a = i_set.clone();
                    a.push(j_set[l]);
                    let b: Vec<usize> = j_set.iter().enumerate().filter(|&(t, _)| t != l).map(|(_, &x)| x).collect();
                    let Some((sa, a)) = sort_sign(&a) else { continue };
                    let (sb, b) = sort_sign(&b).expect("distinct");
                    let mut e = vec![0u16; nv];
                    e[index[&a]] += 1;
                    e[index[&b]] += 1;
                    let sign = if l % 2 == 0 { 1 } else { -1 } * sa as i64 * sb as i64;
                    *rel.entry(Monomial::from_exponents(&e)).or_insert(0) += sign;
                }
                rel.retain(|_, c| *c != 0);
                if !rel.is_empty() {
                    rels.push(rel);
                }
            }
        }
    }
    let gens = echelon_quadrics(&ring, &rels);
    let relations = IdealHandle::new(&ring, gens)?;
    Ok(GrassmannContext { k, n, subsets: subs, ring, relations })
}

fn echelon_quadrics(ring: &Arc<Ring<Q>>, rels: &[HashMap<Monomial, i64>]) -> Vec<QPoly> {
    if rels.is_empty() {
        return vec![];
    }
    let ord = ring.order();
    let mut monos: Vec<Monomial> = rels.iter().flat_map(|r| r.keys().cloned()).collect();
    monos.sort_by(|a, b| ord.cmp(b, a));
    monos.dedup();
    let col: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat: Vec<Vec<Q>> = rels
        .iter()
        .map(|r| {
            let mut row = vec![Q::zero(); monos.len()];
            for (m, c) in r {
                row[col[m]] = Q::from_integer(BigInt::from(*c));
            }
            row
        })
        .collect();
    let piv = rref(&mut mat);
    mat.truncate(piv.len());
    mat.into_iter()
        .map(|row| {
            let p = MvPoly::from_terms(ring, monos.iter().cloned().zip(row).filter(|(_, c)| !c.is_zero()));
            p.primitive().1
        })
        .collect()
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Degree of Gr(k, n) in its Plücker embedding.
pub fn grassmannian_degree(k: usize, n: usize) -> Result<BigInt> {
    if k == 0 || k > n {
        return Err(Error::Input(format!("Gr({k},{n}) needs 1 <= k <= n")));
    }
    let num = factorial(k * (n - k)) * (0..k).map(factorial).fold(BigInt::one(), |a, b| a * b);
    let den = (n - k..n).map(factorial).fold(BigInt::one(), |a, b| a * b);
    Ok(num / den)
}

pub fn catalan(j: usize) -> BigInt {
    factorial(2 * j) / (factorial(j) * factorial(j + 1))
}

/// An n×(k+m) matrix of rationals whose rows are the points `Z_1..Z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    pub rows: Vec<Vec<Q>>,
    pub m: usize,
    pub positive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZMatrixJson {
    pub m: usize,
    pub rows: Vec<Vec<String>>,
}

/// Outcome of the maximal-minor sign check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    /// First non-positive minor: 1-based rows and its value.
    pub witness: Option<(Vec<usize>, Q)>,
}

impl ZMatrix {
    pub fn new(rows: Vec<Vec<Q>>, m: usize) -> Result<Self> {
        let w = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || rows.iter().any(|r| r.len() != w) {
            return Err(Error::Dimension("Z must be a nonempty rectangular matrix".into()));
        }
        if m == 0 || m >= w {
            return Err(Error::Input(format!("m = {m} incompatible with {w} columns")));
        }
        let mut z = ZMatrix { rows, m, positive: false };
        z.positive = z.check_positive_minors().positive;
        Ok(z)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn k(&self) -> usize {
        self.width() - self.m
    }

    pub fn rank(&self) -> usize {
        rank(&self.rows)
    }

    /// Every maximal minor of the row-ordered matrix is positive.
    pub fn check_positive_minors(&self) -> Positivity {
        let w = self.width();
        if self.n() < w {
            return Positivity { positive: false, witness: None };
        }
        for s in subsets(self.n(), w) {
            let m: Vec<Vec<Q>> = s.iter().map(|&i| self.rows[i].clone()).collect();
            let d = det_bareiss(m, &());
            if !d.is_positive() {
                return Positivity { positive: false, witness: Some((s.iter().map(|i| i + 1).collect(), d)) };
            }
        }
        Positivity { positive: true, witness: None }
    }

    pub fn to_json(&self) -> ZMatrixJson {
        ZMatrixJson { m: self.m, rows: self.rows.iter().map(|r| r.iter().map(format_rational).collect()).collect() }
    }

    pub fn from_json(j: &ZMatrixJson) -> Result<Self> {
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows, j.m)
    }
}

/// Rows `(1, t, t^2, ..., t^(width-1))` at strictly increasing nodes.
pub fn vandermonde_z(nodes: &[Q], width: usize, m: usize) -> Result<ZMatrix> {
    if nodes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Input("Vandermonde nodes must be strictly increasing".into()));
    }
    let rows: Vec<Vec<Q>> = nodes
        .iter()
        .map(|t| {
            let mut r = vec![Q::one()];
            for _ in 1..width {
                let next = r.last().unwrap() * t;
                r.push(next);
            }
            r
        })
        .collect();
    ZMatrix::new(rows, m)
}

/// The twistor coordinate `<Y Z_{i_1} ... Z_{i_m}>` as a linear form on Gr(k, k+m).
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorForm {
    pub indices: Vec<usize>,
    pub form: QPoly,
}

pub fn twistor_form(ctx: &GrassmannContext, z: &ZMatrix, idx: &[usize]) -> Result<TwistorForm> {
    let (k, w) = (ctx.k, z.width());
    if ctx.n != w || k + z.m != w {
        return Err(Error::Dimension(format!(
            "Gr({},{}) does not match Z with {} columns and m = {}",
            ctx.k, ctx.n, w, z.m
        )));
    }
    if idx.len() != z.m {
        return Err(Error::Input(format!("need {} row indices, got {}", z.m, idx.len())));
    }
    for (a, &i) in idx.iter().enumerate() {
        if i == 0 || i > z.n() {
            return Err(Error::Input(format!("row index {i} outside 1..={}", z.n())));
        }
        if idx[..a].contains(&i) {
            return Err(Error::Input(format!("repeated row index {i}")));
        }
    }
    let mut terms = Vec::new();
    for (v, set) in ctx.subsets.iter().enumerate() {
        let comp: Vec<usize> = (1..=w).filter(|c| !set.contains(c)).collect();
        let minor: Vec<Vec<Q>> = idx.iter().map(|&i| comp.iter().map(|&c| z.rows[i - 1][c - 1].clone()).collect()).collect();
        let d = det_bareiss(minor, &());
        if d.is_zero() {
            continue;
        }
        let parity = set.iter().sum::<usize>() + k * (k + 1) / 2;
        let c = if parity % 2 == 0 { d } else { -d };
        terms.push((Monomial::var(ctx.ring.nvars(), v), c));
    }
    Ok(TwistorForm { indices: idx.to_vec(), form: MvPoly::from_terms(&ctx.ring, terms) })
}

fn coeff_row(ctx: &GrassmannContext, f: &QPoly) -> Vec<Q> {
    (0..ctx.subsets.len()).map(|v| f.coeff(&Monomial::var(ctx.ring.nvars(), v))).collect()
}

/// Search for per-variable sign flips `p_J -> s_J p_J` (with the first sign +1)
/// making the linear spans of `ours` and `theirs` equal. Returns the signs found first.
pub fn sign_flip_diagnostic(ctx: &GrassmannContext, ours: &[QPoly], theirs: &[QPoly]) -> Option<Vec<i8>> {
    let nv = ctx.subsets.len();
    if nv > 20 {
        return None;
    }
    let a: Vec<Vec<Q>> = ours.iter().map(|f| coeff_row(ctx, f)).collect();
    let b: Vec<Vec<Q>> = theirs.iter().map(|f| coeff_row(ctx, f)).collect();
    let rb = rank(&b);
    for mask in 0u32..(1 << (nv - 1)) {
        let signs: Vec<i8> = (0..nv).map(|v| if v > 0 && mask & (1 << (v - 1)) != 0 { -1 } else { 1 }).collect();
        let flipped: Vec<Vec<Q>> = a
            .iter()
            .map(|r| r.iter().zip(&signs).map(|(c, &s)| if s < 0 { -c.clone() } else { c.clone() }).collect())
            .collect();
        let ra = rank(&flipped);
        if ra != rb {
            continue;
        }
        let mut both = flipped.clone();
        both.extend(b.iter().cloned());
        if rank(&both) == ra {
            return Some(signs);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{parse_poly, q};

    #[test]
    fn degrees_and_catalan() {
        assert_eq!(grassmannian_degree(2, 4).unwrap(), BigInt::from(2));
        assert_eq!(grassmannian_degree(2, 5).unwrap(), BigInt::from(5));
        assert_eq!(grassmannian_degree(3, 7).unwrap(), BigInt::from(462));
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(catalan(3), BigInt::from(5));
        assert_eq!(catalan(4), BigInt::from(14));
        assert!(grassmannian_degree(4, 3).is_err());
    }

    #[test]
    fn gr24_quadric() {
        let g = plucker_ideal(2, 4).unwrap();
        let expect = parse_poly(&g.ring, "p12*p34 - p13*p24 + p14*p23").unwrap();
        assert_eq!(g.relations.gens().len(), 1);
        assert_eq!(g.relations.gens()[0].primitive().1, expect.primitive().1);
        assert!(plucker_ideal(1, 4).unwrap().relations.gens().is_empty());
        assert_eq!(plucker_ideal(3, 5).unwrap().relations.gens().len(), 5);
        assert_eq!(plucker_name(&[1, 10], 10), "p1_10");
    }

    #[test]
    fn twistor_examples() {
        let g = plucker_ideal(3, 5).unwrap();
        let z = ZMatrix::new(vec![vec![q(1), q(0), q(0), q(0), q(0)], vec![q(1); 5]], 2).unwrap();
        let f = twistor_form(&g, &z, &[1, 2]).unwrap().form;
        let support: Vec<String> = f.support_vars().iter().map(|&i| g.ring.vars()[i].clone()).collect();
        assert_eq!(support, vec!["p234", "p235", "p245", "p345"]);
        assert!(f.terms().iter().all(|(_, c)| c.abs() == q(1)));
        assert!(twistor_form(&g, &z, &[1, 1]).is_err());
    }

    #[test]
    fn positivity() {
        let nodes: Vec<Q> = (0..10).map(q).collect();
        let z = vandermonde_z(&nodes, 5, 2).unwrap();
        assert!(z.positive);
        let mut rows = z.rows.clone();
        rows.swap(0, 1);
        let bad = ZMatrix::new(rows, 2).unwrap();
        let p = bad.check_positive_minors();
        assert!(!p.positive && p.witness.unwrap().1 < q(0));
        assert!(vandermonde_z(&[q(1), q(0)], 5, 2).is_err());
    }
}
