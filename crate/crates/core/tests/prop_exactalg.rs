mod common;

use std::collections::BTreeMap;

use common::*;
use posgeom::exactalg::linalg::{det_bareiss, mat_mul};
use posgeom::exactalg::{jacobian, PolyMatrix, Q};
use proptest::prelude::*;

fn det(m: &[Vec<Q>]) -> Q {
    let r = ring(&["x"]);
    let d = PolyMatrix::from_constants(&r, m).unwrap().determinant().unwrap();
    d.constant_coeff()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(
        (f, g, h) in {
            let r = ring(&["x", "y", "z"]);
            (poly(r.clone(), 3, 4), poly(r.clone(), 3, 4), poly(r, 3, 4))
        }
    ) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&(&f + &g) - &g, f);
    }

    #[test]
    fn determinant_alternating_and_multilinear(
        m in matrix(4, 4),
        u in prop::collection::vec(small_q(), 4),
        a in small_q(),
        b in small_q(),
        i in 0usize..4,
        j in 0usize..4,
    ) {
        prop_assume!(i != j);
        let mut swapped = m.clone();
        swapped.swap(i, j);
        prop_assert_eq!(det(&swapped), -det(&m));

        let mut with_u = m.clone();
        with_u[i] = u.clone();
        let mut mixed = m.clone();
        mixed[i] = m[i].iter().zip(&u).map(|(x, y)| &a * x + &b * y).collect();
        prop_assert_eq!(det(&mixed), &a * det(&m) + &b * det(&with_u));

        let mut equal = m.clone();
        equal[j] = equal[i].clone();
        prop_assert_eq!(det(&equal), Q::from_integer(0.into()));
    }

    #[test]
    fn determinant_of_product(a in matrix(4, 4), b in matrix(4, 4)) {
        let ab = mat_mul(&a, &b, &());
        prop_assert_eq!(det(&ab), det(&a) * det(&b));
        prop_assert_eq!(det_bareiss(ab, &()), det(&a) * det(&b));
    }

    #[test]
    fn jacobian_leibniz(
        (f, g) in {
            let r = ring(&["x", "y", "z"]);
            (poly(r.clone(), 3, 4), poly(r, 3, 4))
        }
    ) {
        let vars = ["x", "y", "z"];
        let jfg = jacobian(&[&f * &g], &vars).unwrap();
        let jf = jacobian(std::slice::from_ref(&f), &vars).unwrap();
        let jg = jacobian(std::slice::from_ref(&g), &vars).unwrap();
        for c in 0..3 {
            let rhs = &(&f * jg.get(0, c)) + &(&g * jf.get(0, c));
            prop_assert_eq!(jfg.get(0, c), &rhs);
        }
    }

    #[test]
    fn substitution_is_a_homomorphism(
        (f, g, images, pt) in {
            let src = ring(&["x", "y", "z"]);
            let dst = ring(&["s", "t"]);
            (
                poly(src.clone(), 2, 4),
                poly(src, 2, 4),
                prop::collection::vec(poly(dst, 2, 3), 3),
                prop::collection::vec(small_q(), 2),
            )
        }
    ) {
        let dst = images[0].ring().clone();
        let assign: BTreeMap<String, _> =
            ["x", "y", "z"].iter().map(|s| s.to_string()).zip(images.iter().cloned()).collect();
        let sub = |p: &posgeom::exactalg::QPoly| p.substitute(&assign, &dst).unwrap();
        prop_assert_eq!(sub(&(&f * &g)), &sub(&f) * &sub(&g));
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));

        // evaluation oracle: f(images(pt)) = (f ∘ images)(pt)
        let inner: Vec<Q> = images.iter().map(|p| p.eval(&pt)).collect();
        prop_assert_eq!(sub(&f).eval(&pt), f.eval(&inner));
    }
}
