mod common;

use std::sync::OnceLock;

use common::*;
use posgeom::delpezzo::interval::{eval_poly, Interval};
use posgeom::delpezzo::*;
use posgeom::exactalg::{q, QPoly, Q};
use proptest::prelude::*;

fn builtin() -> &'static (RegionSpec, QPoly, Vec<VertexCert>) {
    static CELL: OnceLock<(RegionSpec, QPoly, Vec<VertexCert>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let r = builtin_region();
        let adj = verify_region(&r, &VerifyOptions::default()).adjoint_poly.unwrap();
        let vs = vertex_enumerate(&r).unwrap();
        (r, adj, vs)
    })
}

fn unit_interval() -> impl Strategy<Value = Q> {
    (0i64..=16).prop_map(|a| Q::new(a.into(), 16.into()))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn interval_evaluation_encloses(
        (f, lo, w, t) in {
            let r = ring(&["x", "y", "z"]);
            (
                poly(r, 3, 5),
                prop::collection::vec(small_q(), 3),
                prop::collection::vec(unit_interval(), 3),
                prop::collection::vec(unit_interval(), 3),
            )
        }
    ) {
        let bx: Vec<Interval> = lo.iter().zip(&w).map(|(a, d)| Interval::new(a.clone(), a + d)).collect();
        let pt: Vec<Q> = lo.iter().zip(&w).zip(&t).map(|((a, d), s)| a + d * s).collect();
        prop_assert!(eval_poly(&f, &bx).contains(&f.eval(&pt)));
    }

    #[test]
    fn vertex_residues_scale_linearly(c in nonzero_q(), v in 0usize..8) {
        let (r, adj, vs) = builtin();
        let one = vertex_residue(r, adj, &vs[v]).unwrap();
        let scaled = vertex_residue(r, &adj.scale(&c), &vs[v]).unwrap();
        prop_assert!(one.is_unit());
        prop_assert_eq!(&scaled, &one.scaled(&c));
        let s = if c > q(0) { one.sign() } else { -one.sign() };
        prop_assert_eq!(scaled.sign(), s);
    }

    #[test]
    fn cube_report_deterministic(lambdas in prop::collection::vec(nonzero_q(), 1..=3)) {
        let r = plain_cube_region();
        let opts = VerifyOptions { lambdas, primes: vec![32003] };
        let a = serde_json::to_string(&verify_region(&r, &opts)).unwrap();
        let b = serde_json::to_string(&verify_region(&r, &opts)).unwrap();
        prop_assert_eq!(a, b);
    }
}
