mod common;

use common::{elem, kinds, seed};
use monogen_core::ring::{Elem, Ring, RingHom};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in seed(), b in seed(), c in seed()) {
        for r in kinds() {
            let (x, y, z) = (elem(&r, &a), elem(&r, &b), elem(&r, &c));
            prop_assert_eq!(r.add(&r.add(&x, &y), &z), r.add(&x, &r.add(&y, &z)), "{}", r);
            prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)), "{}", r);
            prop_assert_eq!(r.add(&x, &y), r.add(&y, &x), "{}", r);
            prop_assert_eq!(r.mul(&x, &y), r.mul(&y, &x), "{}", r);
            prop_assert_eq!(r.mul(&x, &r.add(&y, &z)), r.add(&r.mul(&x, &y), &r.mul(&x, &z)), "{}", r);
            prop_assert_eq!(r.add(&x, &r.zero()), x.clone());
            prop_assert_eq!(r.mul(&x, &r.one()), x.clone());
            prop_assert!(r.is_zero(&r.add(&x, &r.neg(&x))));
            let s = r.mul(&r.add(&x, &y), &z);
            prop_assert!(r.check(&s).is_ok(), "{} result is not canonical", r);
        }
    }

    #[test]
    fn units_have_inverses(a in seed()) {
        for r in kinds() {
            let x = elem(&r, &a);
            if r.is_unit(&x).unwrap_or(false) {
                let inv = r.inverse(&x).unwrap();
                prop_assert!(r.is_one(&r.mul(&x, &inv)), "{}: {}", r, r.render(&x));
            }
        }
    }

    #[test]
    fn maps_are_homomorphisms(a in seed(), b in seed()) {
        for h in homs() {
            let (s, t) = (h.source(), h.target());
            let (x, y) = (elem(s, &a), elem(s, &b));
            let (fx, fy) = (h.apply(&x).unwrap(), h.apply(&y).unwrap());
            prop_assert_eq!(h.apply(&s.add(&x, &y)).unwrap(), t.add(&fx, &fy), "{} to {}", s, t);
            prop_assert_eq!(h.apply(&s.mul(&x, &y)).unwrap(), t.mul(&fx, &fy), "{} to {}", s, t);
            prop_assert!(t.is_one(&h.apply(&s.one()).unwrap()));
        }
    }
}

fn homs() -> Vec<RingHom> {
    let z = Ring::integers();
    let q = Ring::rationals();
    let f3 = Ring::integers_mod(3).unwrap();
    let (alpha, beta) = (Ring::poly(&f3, "alpha"), Ring::poly(&f3, "beta"));
    let (frac_alpha, frac_beta) = (
        Ring::fraction_field(&alpha).unwrap(),
        Ring::fraction_field(&beta).unwrap(),
    );
    let cube = beta.pow(&beta.generator().unwrap(), 3);
    let cube_frac = frac_beta.fraction(&cube, &beta.one()).unwrap();
    let qt = Ring::poly(&q, "t");
    let qi = Ring::quotient_field(&qt, vec![q.one(), q.zero(), q.one()]).unwrap();
    let zt = Ring::poly(&z, "t");
    vec![
        RingHom::reduction(2).unwrap(),
        RingHom::reduction(7).unwrap(),
        RingHom::canonical(&z, &q).unwrap(),
        RingHom::substitution(&alpha, &beta, cube).unwrap(),
        RingHom::substitution(&frac_alpha, &frac_beta, cube_frac).unwrap(),
        RingHom::substitution(&qt, &qi, qi.generator().unwrap()).unwrap(),
        RingHom::substitution(&zt, &Ring::integers_mod(5).unwrap(), Elem::int(3)).unwrap(),
    ]
}

#[test]
fn documented_map_examples() {
    let f3 = Ring::integers_mod(3).unwrap();
    let (alpha, beta) = (Ring::poly(&f3, "alpha"), Ring::poly(&f3, "beta"));
    let (fa, fb) = (
        Ring::fraction_field(&alpha).unwrap(),
        Ring::fraction_field(&beta).unwrap(),
    );
    let cube = fb
        .fraction(&beta.pow(&beta.generator().unwrap(), 3), &beta.one())
        .unwrap();
    let h = RingHom::substitution(&fa, &fb, cube).unwrap();
    let x = fa.add(&fa.generator().unwrap(), &fa.one());
    assert_eq!(fb.render(&h.apply(&x).unwrap()), "beta^3 + 1");
    let r = RingHom::reduction(2).unwrap();
    assert_eq!(r.apply(&Elem::int(31)).unwrap(), Elem::int(1));
}
