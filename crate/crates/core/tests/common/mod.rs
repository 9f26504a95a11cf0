#![allow(dead_code)]

use std::sync::Arc;

use posgeom::exactalg::{qq, Monomial, MonomialOrder, MvPoly, QPoly, Ring, Q};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

/// 100 cases from a fixed seed, so failures reproduce without a regressions file.
pub fn config() -> Config {
    Config { cases: 100, rng_seed: RngSeed::Fixed(0x9e37_79b9), failure_persistence: None, ..Config::default() }
}

pub fn ring(vars: &[&str]) -> Arc<Ring<Q>> {
    Ring::new(vars, MonomialOrder::GrevLex, ())
}

pub fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| qq(a, b))
}

pub fn nonzero_q() -> impl Strategy<Value = Q> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(a, b)| qq(a, b))
}

pub fn poly(r: Arc<Ring<Q>>, max_deg: u16, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let n = r.nvars();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), small_q()), 0..=max_terms).prop_map(move |ts| {
        MvPoly::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
    })
}

/// Homogeneous of degree `d`; may be zero.
pub fn homogeneous(r: Arc<Ring<Q>>, d: u16, max_terms: usize) -> impl Strategy<Value = QPoly> {
    let n = r.nvars();
    prop::collection::vec((prop::collection::vec(0..=d, n - 1), small_q()), 0..=max_terms).prop_map(move |ts| {
        let terms = ts.into_iter().filter_map(|(mut e, c)| {
            let s: u16 = e.iter().sum();
            if s > d {
                return None;
            }
            e.push(d - s);
            Some((Monomial::from_exponents(&e), c))
        });
        MvPoly::from_terms(&r, terms)
    })
}

pub fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(small_q(), cols), rows)
}

/// Strictly increasing integer nodes.
pub fn nodes(n: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(1i64..=4, n).prop_map(|steps| {
        let mut t = -5i64;
        steps
            .into_iter()
            .map(|s| {
                t += s;
                Q::from_integer(t.into())
            })
            .collect()
    })
}
