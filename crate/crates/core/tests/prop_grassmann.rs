mod common;

use common::*;
use num_bigint::BigInt;
use posgeom::exactalg::linalg::det_bareiss;
use posgeom::exactalg::{q, Q};
use posgeom::grassmann::{catalan, grassmannian_degree, plucker_ideal, twistor_form, vandermonde_z};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
}

/// k, m, nodes, a k×(k+m) matrix Y and m distinct row indices.
fn setup() -> impl Strategy<Value = (usize, usize, Vec<Q>, Vec<Vec<Q>>, Vec<usize>)> {
    (1usize..=2, prop_oneof![Just(2usize), Just(4usize)], 0usize..=3).prop_flat_map(|(k, m, extra)| {
        let n = k + m + extra;
        (
            Just(k),
            Just(m),
            nodes(n),
            matrix(k, k + m),
            Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |v| v[..m].to_vec()),
        )
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn twistor_alternating((k, m, nodes, _y, idx) in setup(), a in 0usize..4, b in 0usize..4) {
        let (a, b) = (a % m, b % m);
        prop_assume!(a != b);
        let z = vandermonde_z(&nodes, k + m, m).unwrap();
        let ctx = plucker_ideal(k, k + m).unwrap();
        let f = twistor_form(&ctx, &z, &idx).unwrap().form;
        let mut sw = idx.clone();
        sw.swap(a, b);
        let g = twistor_form(&ctx, &z, &sw).unwrap().form;
        prop_assert_eq!(g, f.scale(&q(-1)));
    }

    #[test]
    fn twistor_is_stacked_determinant((k, m, nodes, y, idx) in setup(), mix in prop::collection::vec(small_q(), 4)) {
        let z = vandermonde_z(&nodes, k + m, m).unwrap();
        let ctx = plucker_ideal(k, k + m).unwrap();
        let f = twistor_form(&ctx, &z, &idx).unwrap().form;

        let mut stacked = y.clone();
        stacked.extend(idx.iter().map(|&i| z.rows[i - 1].clone()));
        prop_assert_eq!(f.eval(&ctx.point_of(&y)), det_bareiss(stacked, &()));

        // a k-plane meeting span(Z_idx) lies on the divisor
        let mut meet = y.clone();
        meet[0] = (0..k + m)
            .map(|c| idx.iter().zip(&mix).map(|(&i, t)| t * &z.rows[i - 1][c]).sum())
            .collect();
        prop_assert_eq!(f.eval(&ctx.point_of(&meet)), q(0));
    }
}

#[test]
fn degree_formula_matches_hilbert_degree() {
    for n in 2..=10 {
        for k in 1..n {
            if binom(n, k) > 10 {
                continue;
            }
            let h = plucker_ideal(k, n).unwrap().relations.hilbert().unwrap();
            assert_eq!(h.degree, grassmannian_degree(k, n).unwrap(), "Gr({k},{n})");
            assert_eq!(h.dim, (k * (n - k)) as i64, "Gr({k},{n})");
        }
    }
}

#[test]
fn gr2_degree_is_catalan() {
    for n in 3..=8 {
        assert_eq!(grassmannian_degree(2, n).unwrap(), catalan(n - 2));
    }
    assert_eq!(grassmannian_degree(3, 7).unwrap(), BigInt::from(462));
}
