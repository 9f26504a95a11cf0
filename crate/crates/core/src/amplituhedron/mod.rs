//! Boundary divisors of m = 2, 4 amplituhedra, the residual curves cut out by
//! them, genus formulas and the rank-2 matroid membership test.

mod matroid;
mod smooth;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use matroid::{curve_matroid, matroid_invariants, MatroidInvariants, MatroidRank2};
pub use smooth::{smoothness_probe, smoothness_probe_ideal, SmoothnessVerdict};

use crate::error::{Error, Result};
use crate::exactalg::{QPoly, Q};
use crate::grassmann::{catalan, grassmannian_degree, twistor_form, GrassmannContext, TwistorForm, ZMatrix};
use crate::groebner::{substitute_linear, HilbertData, IdealHandle};

fn cyc(i: usize, n: usize) -> usize {
    (i - 1) % n + 1
}

/// One twistor form per boundary label.
#[derive(Clone, Debug)]
pub struct BoundarySet {
    pub m: usize,
    pub labels: Vec<Vec<usize>>,
    pub forms: Vec<TwistorForm>,
}

/// Boundary labels: `(i, i+1)` for m = 2 and `(i, i+1, j, j+1)` with disjoint
/// cyclic pairs for m = 4.
pub fn boundary_labels(n: usize, m: usize) -> Result<Vec<Vec<usize>>> {
    match m {
        2 => Ok((1..=n).map(|i| vec![i, cyc(i + 1, n)]).collect()),
        4 => {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 2..=n {
                    if i == 1 && j == n {
                        continue;
                    }
                    out.push(vec![i, i + 1, j, cyc(j + 1, n)]);
                }
            }
            Ok(out)
        }
        _ => Err(Error::Input(format!("m must be 2 or 4, got {m}"))),
    }
}

pub fn boundary_divisors(ctx: &GrassmannContext, z: &ZMatrix, m: usize) -> Result<BoundarySet> {
    if z.m != m {
        return Err(Error::Input(format!("Z was declared with m = {}, asked for m = {m}", z.m)));
    }
    if z.n() < ctx.k + m {
        return Err(Error::Input(format!("n = {} is smaller than k + m = {}", z.n(), ctx.k + m)));
    }
    let labels = boundary_labels(z.n(), m)?;
    let forms = labels.iter().map(|l| twistor_form(ctx, z, l)).collect::<Result<Vec<_>>>()?;
    Ok(BoundarySet { m, labels, forms })
}

/// Selected boundary divisors and their intersection with Gr(k, k+m).
#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub labels: Vec<Vec<usize>>,
    pub forms: Vec<TwistorForm>,
    /// Plücker relations plus the selected forms, in all Plücker variables.
    pub ideal: IdealHandle<Q>,
    /// The same ideal after solving the forms for pivot variables.
    pub reduced: IdealHandle<Q>,
    /// Projective dimension after adding each form in turn, starting with Gr(k, k+m).
    pub dims: Vec<i64>,
    pub hilbert: HilbertData,
}

impl CurveSpec {
    /// Each form cut the dimension by exactly one.
    pub fn transversal(&self) -> bool {
        self.dims.windows(2).all(|w| w[1] == w[0] - 1)
    }
}

fn validate_m2(indices: &[usize], n: usize, k: usize) -> Result<()> {
    if indices.len() != 2 * k - 1 {
        return Err(Error::Input(format!("need 2k-1 = {} indices, got {}", 2 * k - 1, indices.len())));
    }
    for (a, &i) in indices.iter().enumerate() {
        if i == 0 || i > n {
            return Err(Error::Input(format!("index {i} outside 1..={n}")));
        }
        if indices[..a].contains(&i) {
            return Err(Error::Input(format!("repeated index {i}")));
        }
    }
    for &i in indices {
        let j = cyc(i + 1, n);
        if indices.contains(&j) {
            return Err(Error::Input(format!("adjacent indices {i} and {j}")));
        }
    }
    Ok(())
}

fn validate_m4(quads: &[Vec<usize>], n: usize, k: usize) -> Result<()> {
    if quads.len() != 4 * k - 1 {
        return Err(Error::Input(format!("need 4k-1 = {} labels, got {}", 4 * k - 1, quads.len())));
    }
    let valid = boundary_labels(n, 4)?;
    for (a, q) in quads.iter().enumerate() {
        if !valid.contains(q) {
            return Err(Error::Input(format!("{q:?} is not a boundary label (i,i+1,j,j+1)")));
        }
        for p in &quads[..a] {
            if p.iter().any(|x| q.contains(x)) {
                return Err(Error::Input(format!("overlapping labels {p:?} and {q:?}")));
            }
        }
    }
    Ok(())
}

/// `E = Gr(k,k+m) ∩ ⋂ {<Y Z_I> = 0}`. For m = 2, `selection` lists the indices `i`
/// of the divisors `<Y i i+1>`; for m = 4 it lists full labels `(i, i+1, j, j+1)`.
pub fn build_curve(ctx: &GrassmannContext, z: &ZMatrix, selection: &[Vec<usize>]) -> Result<CurveSpec> {
    let (k, n, m) = (ctx.k, z.n(), z.m);
    if ctx.n != k + m {
        return Err(Error::Dimension(format!("expected Gr({k},{}), got Gr({k},{})", k + m, ctx.n)));
    }
    let labels: Vec<Vec<usize>> = match m {
        2 => {
            let idx: Vec<usize> = selection
                .iter()
                .map(|s| match s.as_slice() {
                    [i] => Ok(*i),
                    _ => Err(Error::Input("m = 2 selections are single indices".into())),
                })
                .collect::<Result<_>>()?;
            validate_m2(&idx, n, k)?;
            idx.iter().map(|&i| vec![i, cyc(i + 1, n)]).collect()
        }
        4 => {
            validate_m4(selection, n, k)?;
            selection.to_vec()
        }
        _ => return Err(Error::Input(format!("m must be 2 or 4, got {m}"))),
    };
    let forms = labels.iter().map(|l| twistor_form(ctx, z, l)).collect::<Result<Vec<_>>>()?;
    let polys: Vec<QPoly> = forms.iter().map(|f| f.form.clone()).collect();
    let rel = ctx.relations.gens().to_vec();
    let ideal = ctx.relations.with_gens(&polys)?;

    let mut dims = vec![ctx.relations.hilbert()?.dim];
    for c in 1..=polys.len() {
        let red = substitute_linear(&rel, &polys[..c]).map_err(|e| match e {
            Error::Construction(s) => Error::Construction(format!("Z insufficiently generic: {s}")),
            other => other,
        })?;
        dims.push(IdealHandle::new(&red.ring, red.gens)?.hilbert()?.dim);
    }
    let red = substitute_linear(&rel, &polys)?;
    let reduced = IdealHandle::new(&red.ring, red.gens)?;
    let hilbert = reduced.hilbert()?;
    let spec = CurveSpec { k, n, m, labels, forms, ideal, reduced, dims, hilbert };
    if !spec.transversal() {
        return Err(Error::Construction(format!(
            "Z insufficiently generic: dimensions {:?} do not drop by one per divisor",
            spec.dims
        )));
    }
    Ok(spec)
}

/// The m = 2 and m = 4 genus expressions; zero outside their range.
pub fn expected_genus(k: usize, m: usize) -> Result<Q> {
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    match m {
        2 if k >= 3 => Ok(q(1) + BigRational::new(BigInt::from(k as i64 - 3), BigInt::from(2)) * BigRational::from_integer(catalan(k))),
        2 => Ok(Q::zero()),
        4 if k >= 2 => Ok(q(1)
            + BigRational::new(BigInt::from(3 * k as i64 - 5), BigInt::from(2))
                * BigRational::from_integer(grassmannian_degree(k, k + 4)?)),
        4 => Ok(Q::zero()),
        _ => Err(Error::Input(format!("m must be 2 or 4, got {m}"))),
    }
}

/// Lower bound for the genus of the pair; `note` is set outside the range k >= 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusBound {
    pub bound: Q,
    pub note: Option<String>,
}

pub fn genus_bound(k: usize, m: usize) -> Result<GenusBound> {
    if k < 3 {
        expected_genus(k, m)?;
        return Ok(GenusBound { bound: Q::zero(), note: Some(format!("no positive bound for k = {k} < 3")) });
    }
    Ok(GenusBound { bound: expected_genus(k, m)?, note: None })
}
