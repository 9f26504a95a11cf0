mod common;

use common::*;
use posgeom::exactalg::linalg::rank;
use posgeom::exactalg::{Monomial, MvPoly, QPoly, UPoly, Q};
use posgeom::grassmann::plucker_ideal;
use posgeom::groebner::{groebner_basis, is_groebner, is_reduced, IdealHandle};
use proptest::prelude::*;

fn to_upoly(p: &QPoly) -> UPoly {
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut c = vec![Q::from_integer(0.into()); d + 1];
    for (m, a) in p.terms() {
        c[m.exponents()[0] as usize] = a.clone();
    }
    UPoly::new(c)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn normal_form_idempotent(
        (gens, f) in {
            let r = ring(&["x", "y", "z"]);
            (prop::collection::vec(poly(r.clone(), 2, 3), 1..=3), poly(r, 3, 5))
        }
    ) {
        let i = IdealHandle::new(f.ring(), gens).unwrap();
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&(&f - &nf)).unwrap());
    }

    #[test]
    fn univariate_membership_matches_gcd(
        (g1, g2, h, f, member) in {
            let r = ring(&["x"]);
            (poly(r.clone(), 4, 4), poly(r.clone(), 4, 4), poly(r.clone(), 3, 3), poly(r, 5, 5), any::<bool>())
        }
    ) {
        prop_assume!(!g1.is_zero() || !g2.is_zero());
        let gcd = to_upoly(&g1).gcd(&to_upoly(&g2));
        let f = if member { &(&h * &g1) + &(&f * &g2) } else { f };
        let (_, rem) = to_upoly(&f).div_rem(&gcd);
        let i = IdealHandle::new(f.ring(), vec![g1, g2]).unwrap();
        prop_assert_eq!(i.contains(&f).unwrap(), rem.is_zero());
    }

    #[test]
    fn principal_membership(
        (g, h, r) in {
            let rg = ring(&["x", "y", "z"]);
            (poly(rg.clone(), 2, 3), poly(rg.clone(), 2, 3), poly(rg, 1, 3))
        }
    ) {
        let dg = g.total_degree().unwrap_or(0);
        prop_assume!(dg >= 2);
        // r has degree < deg g, so g | h g + r exactly when r = 0
        let r = if r.total_degree().unwrap_or(0) < dg { r } else { MvPoly::zero(g.ring()) };
        let f = &(&h * &g) + &r;
        let i = IdealHandle::new(g.ring(), vec![g.clone()]).unwrap();
        prop_assert_eq!(i.contains(&f).unwrap(), r.is_zero());
    }

    #[test]
    fn ideal_equality_under_rescaling(
        (g1, g2, a, b, c1, c2, c3) in {
            let r = ring(&["x", "y", "z"]);
            (
                poly(r.clone(), 2, 3),
                poly(r, 2, 3),
                small_q(),
                small_q(),
                nonzero_q(),
                nonzero_q(),
                nonzero_q(),
            )
        }
    ) {
        let rg = g1.ring().clone();
        let i = IdealHandle::new(&rg, vec![g1.clone(), g2.clone()]).unwrap();
        let j = IdealHandle::new(&rg, vec![&g1.scale(&c1) + &g2.scale(&a), g2.scale(&c2)]).unwrap();
        let k = IdealHandle::new(&rg, vec![g2.scale(&c3), &g1 + &g2.scale(&b)]).unwrap();
        prop_assert!(i.equals(&j) && j.equals(&i));
        prop_assert!(j.equals(&k) && i.equals(&k));
        prop_assert_eq!(i.basis(), j.basis());
        prop_assert_eq!(j.basis(), k.basis());
    }

    #[test]
    fn reduced_basis_deterministic(
        gens in {
            let r = ring(&["x", "y", "z"]);
            prop::collection::vec(poly(r, 2, 3), 1..=3)
        }
    ) {
        prop_assume!(gens.iter().any(|g| !g.is_zero()));
        let r = gens[0].ring().clone();
        let a = groebner_basis(&gens, &r);
        let mut rev = gens.clone();
        rev.reverse();
        let b = groebner_basis(&rev, &r);
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &groebner_basis(&gens, &r));
        prop_assert!(is_groebner(&a) && is_reduced(&a));
    }

    #[test]
    fn linear_sections_drop_dimension(
        c in 1usize..=3,
        coeffs in prop::collection::vec(prop::collection::vec(-9i64..=9, 10), 3),
    ) {
        let ctx = plucker_ideal(2, 5).unwrap();
        let rows: Vec<Vec<Q>> = coeffs[..c].iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
        prop_assume!(rank(&rows) == c);
        let forms: Vec<QPoly> = rows
            .iter()
            .map(|r| {
                MvPoly::from_terms(&ctx.ring, r.iter().enumerate().map(|(v, a)| (Monomial::var(10, v), a.clone())))
            })
            .collect();
        let base = ctx.relations.hilbert().unwrap().dim;
        let cut = ctx.relations.with_gens(&forms).unwrap().hilbert().unwrap().dim;
        prop_assert_eq!(cut, base - c as i64);
    }
}

#[test]
fn plucker_degree_matches_formula() {
    for (k, n, want) in [(2, 4, 2), (2, 5, 5), (3, 5, 5)] {
        let ctx = plucker_ideal(k, n).unwrap();
        let h = ctx.relations.hilbert().unwrap();
        assert_eq!(h.degree_i64(), want, "Gr({k},{n})");
        assert_eq!(h.degree, posgeom::grassmann::grassmannian_degree(k, n).unwrap());
    }
}
