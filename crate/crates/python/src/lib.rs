//! Python bindings. Structured results are returned as JSON strings with
//! exact rationals encoded as `"num/den"`, matching the CLI reports.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

use posgeom::amplituhedron::{build_curve, curve_matroid, expected_genus, matroid_invariants, smoothness_probe};
use posgeom::delpezzo::{builtin_region, plain_cube_region, verify_region, RegionJson, VerifyOptions};
use posgeom::exactalg::json::{IdealJson, PolyJson};
use posgeom::exactalg::{format_rational, parse_rational, q, MonomialOrder, Q, DEFAULT_PRIMES};
use posgeom::grassmann::{grassmannian_degree as gr_degree, plucker_ideal, vandermonde_z};
use posgeom::groebner::IdealHandle;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rationals(xs: &[String]) -> PyResult<Vec<Q>> {
    xs.iter().map(|s| parse_rational(s).map_err(err)).collect()
}

fn to_json(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

#[pyfunction]
fn grassmannian_degree(k: usize, n: usize) -> PyResult<BigInt> {
    gr_degree(k, n).map_err(err)
}

/// Genus of the residual curve for m = 2 or the m = 4 expression, as `"num/den"`.
#[pyfunction]
fn genus_formula(k: usize, m: usize) -> PyResult<String> {
    Ok(format_rational(&expected_genus(k, m).map_err(err)?))
}

#[pyfunction]
fn matroid(k: usize, n: usize, indices: Vec<usize>) -> PyResult<String> {
    let nm = curve_matroid(&indices, n).map_err(err)?;
    to_json(&matroid_invariants(&nm, k))
}

/// Intersection of Gr(k, k+2) with the divisors `<Y i i+1>`, `i` in `indices`,
/// for a Vandermonde Z on `nodes` (default 0..n-1).
#[pyfunction]
#[pyo3(signature = (k, n, indices, nodes=None, primes=None))]
fn residual_curve(
    k: usize,
    n: usize,
    indices: Vec<usize>,
    nodes: Option<Vec<String>>,
    primes: Option<Vec<u64>>,
) -> PyResult<String> {
    let nodes = match nodes {
        Some(v) => rationals(&v)?,
        None => (0..n as i64).map(q).collect(),
    };
    let z = vandermonde_z(&nodes, k + 2, 2).map_err(err)?;
    let ctx = plucker_ideal(k, k + 2).map_err(err)?;
    let sel: Vec<Vec<usize>> = indices.iter().map(|&i| vec![i]).collect();
    let c = build_curve(&ctx, &z, &sel).map_err(err)?;
    let primes = primes.unwrap_or_else(|| DEFAULT_PRIMES.to_vec());
    let verdicts = smoothness_probe(&c, &primes).map_err(err)?;
    let h = &c.hilbert;
    to_json(&json!({
        "dim": h.dim,
        "degree": h.degree.to_string(),
        "genus": h.genus.as_ref().map(|g| g.to_string()),
        "dims": c.dims,
        "verdicts": verdicts,
    }))
}

/// Reduced Gröbner basis of an ideal in the `{"vars", "gens"}` JSON format.
#[pyfunction]
#[pyo3(signature = (ideal_json, order="grevlex"))]
fn groebner_basis(ideal_json: &str, order: &str) -> PyResult<String> {
    let order = match order {
        "grevlex" => MonomialOrder::GrevLex,
        "lex" => MonomialOrder::Lex,
        o => return Err(err(format!("unknown order {o:?}"))),
    };
    let ij: IdealJson = serde_json::from_str(ideal_json).map_err(err)?;
    let (ring, gens) = ij.to_polys(order).map_err(err)?;
    let ideal = IdealHandle::new(&ring, gens).map_err(err)?;
    let basis: Vec<PolyJson> = ideal.basis().iter().map(PolyJson::from_poly).collect();
    to_json(&basis)
}

/// Built-in region as JSON; `cube=True` gives the 3-cube.
#[pyfunction]
#[pyo3(signature = (cube=false))]
fn region(cube: bool) -> PyResult<String> {
    let r = if cube { plain_cube_region() } else { builtin_region() };
    to_json(&RegionJson::from_region(&r))
}

/// Full verification report for a region (built-in one by default).
#[pyfunction]
#[pyo3(signature = (region_json=None, lambdas=None))]
fn verify(py: Python<'_>, region_json: Option<&str>, lambdas: Option<Vec<String>>) -> PyResult<String> {
    let r = match region_json {
        Some(s) => serde_json::from_str::<RegionJson>(s).map_err(err)?.to_region().map_err(err)?,
        None => builtin_region(),
    };
    let mut opts = VerifyOptions::default();
    if let Some(l) = lambdas {
        opts.lambdas = rationals(&l)?;
    }
    let rep = py.detach(|| verify_region(&r, &opts));
    to_json(&rep)
}

#[pymodule]
fn posgeom_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(grassmannian_degree, m)?)?;
    m.add_function(wrap_pyfunction!(genus_formula, m)?)?;
    m.add_function(wrap_pyfunction!(matroid, m)?)?;
    m.add_function(wrap_pyfunction!(residual_curve, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(region, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
