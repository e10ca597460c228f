//! Random elements for every kind of base ring.

use monogen_core::ring::{Elem, Ring};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn kinds() -> Vec<Ring> {
    let z = Ring::integers();
    let q = Ring::rationals();
    let f2 = Ring::integers_mod(2).unwrap();
    let f3 = Ring::integers_mod(3).unwrap();
    let f3a = Ring::poly(&f3, "alpha");
    let qt = Ring::poly(&q, "t");
    let f2t = Ring::poly(&f2, "t");
    vec![
        z.clone(),
        q.clone(),
        Ring::integers_mod(7).unwrap(),
        Ring::integers_mod(12).unwrap(),
        Ring::poly(&z, "t"),
        qt.clone(),
        f3a.clone(),
        Ring::fraction_field(&f3a).unwrap(),
        Ring::quotient_field(&qt, vec![q.one(), q.zero(), q.one()]).unwrap(),
        Ring::quotient_field(&f2t, vec![f2.one(), f2.one(), f2.one()]).unwrap(),
    ]
}

/// `Σ cᵢ·tⁱ` built with ring operations only.
pub fn poly_from(ring: &Ring, coeffs: &[i64]) -> Elem {
    let t = ring.generator().unwrap();
    coeffs
        .iter()
        .rev()
        .fold(ring.zero(), |acc, &c| ring.add(&ring.mul(&acc, &t), &ring.from_i64(c)))
}

pub fn elem(ring: &Ring, s: &[i64; 6]) -> Elem {
    use monogen_core::ring::RingKind::*;
    match ring.kind() {
        Integers | IntegersMod { .. } => ring.from_i64(s[0] * 1000 + s[1]),
        Rationals => {
            let q = BigRational::new(BigInt::from(s[0]), BigInt::from(s[1].abs() + 1));
            ring.from_rational(&q).unwrap()
        }
        PolyRing { .. } | QuotientField { .. } => poly_from(ring, &s[..4]),
        FractionField { poly } => {
            let num = poly_from(poly, &s[..3]);
            let mut den = poly_from(poly, &s[3..]);
            if poly.is_zero(&den) {
                den = poly.one();
            }
            ring.fraction(&num, &den).unwrap()
        }
    }
}

pub fn seed() -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(-20i64..20)
}
