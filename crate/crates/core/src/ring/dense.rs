//! Dense univariate polynomials over a coefficient [`Ring`], stored low degree first
//! with no trailing zeros.

use super::{Elem, Ring};
use crate::error::{domain, Result};

pub(crate) fn trim(ring: &Ring, mut v: Vec<Elem>) -> Vec<Elem> {
    while v.last().is_some_and(|c| ring.is_zero(c)) {
        v.pop();
    }
    v
}

pub(crate) fn degree(v: &[Elem]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub(crate) fn add(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => ring.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(ring, out)
}

pub(crate) fn neg(ring: &Ring, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| ring.neg(c)).collect()
}

pub(crate) fn sub(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(ring, a, &neg(ring, b))
}

pub(crate) fn scale(ring: &Ring, a: &[Elem], s: &Elem) -> Vec<Elem> {
    trim(ring, a.iter().map(|c| ring.mul(c, s)).collect())
}

pub(crate) fn mul(ring: &Ring, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if ring.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let p = ring.mul(x, y);
            out[i + j] = ring.add(&out[i + j], &p);
        }
    }
    trim(ring, out)
}

/// Division with remainder. The leading coefficient of `b` must be a unit.
pub(crate) fn divrem(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let db = degree(b).ok_or_else(|| domain("polynomial division by zero"))?;
    let lead_inv = ring.inverse(&b[db])?;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return Ok((Vec::new(), rem));
    }
    let mut quot = vec![ring.zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = ring.mul(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = ring.mul(&c, bc);
            rem[i + shift] = ring.sub(&rem[i + shift], &t);
        }
        quot[shift] = c;
        // the leading coefficient cancels exactly; drop it even over rings with zero divisors
        rem.pop();
        rem = trim(ring, rem);
    }
    Ok((trim(ring, quot), rem))
}

pub(crate) fn rem(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    Ok(divrem(ring, a, b)?.1)
}

pub(crate) fn make_monic(ring: &Ring, a: &[Elem]) -> Result<Vec<Elem>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => {
            let inv = ring.inverse(lc)?;
            Ok(scale(ring, a, &inv))
        }
    }
}

/// Monic gcd over a field.
pub(crate) fn gcd(ring: &Ring, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(ring, &x, &y)?;
        x = y;
        y = r;
    }
    make_monic(ring, &x)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)` and `g` the monic gcd, over a field.
pub(crate) fn half_ext_gcd(ring: &Ring, a: &[Elem], m: &[Elem]) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let (mut r0, mut r1) = (a.to_vec(), m.to_vec());
    let (mut s0, mut s1) = (vec![ring.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(ring, &r0, &r1)?;
        let s = sub(ring, &s0, &mul(ring, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    match r0.last() {
        None => Ok((Vec::new(), Vec::new())),
        Some(lc) => {
            let inv = ring.inverse(lc)?;
            Ok((scale(ring, &r0, &inv), scale(ring, &s0, &inv)))
        }
    }
}
