//! Does a finite set of vectors span `Aⁿ`? Equivalently, do the maximal minors of the
//! matrix they form generate the unit ideal?

// row reduction reads one row while writing another, so index loops are clearer here
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::ring::{dense, Elem, Ring, RingKind};

pub(crate) enum SpanVerdict {
    Decided(bool),
    /// The base ring has no exact procedure here.
    Undecided,
}

/// `vectors` each have length `n`.
pub(crate) fn spans_free_module(ring: &Ring, n: usize, vectors: &[Vec<Elem>]) -> Result<SpanVerdict> {
    match ring.kind() {
        RingKind::Integers => Ok(SpanVerdict::Decided(integer_span(n, lift_ints(vectors), None))),
        RingKind::IntegersMod { modulus } => {
            Ok(SpanVerdict::Decided(integer_span(n, lift_ints(vectors), Some(modulus))))
        }
        _ if ring.is_field() => Ok(SpanVerdict::Decided(field_rank(ring, n, vectors)? == n)),
        RingKind::PolyRing { base, .. } if base.is_field() => Ok(SpanVerdict::Decided(poly_span(base, n, vectors)?)),
        _ => Ok(SpanVerdict::Undecided),
    }
}

fn lift_ints(vectors: &[Vec<Elem>]) -> Vec<Vec<BigInt>> {
    vectors
        .iter()
        .map(|v| v.iter().map(|e| e.as_bigint().unwrap().clone()).collect())
        .collect()
}

/// Row reduction over ℤ (optionally with `m·eᵢ` appended); spans iff every pivot is ±1.
fn integer_span(n: usize, mut rows: Vec<Vec<BigInt>>, modulus: Option<&BigInt>) -> bool {
    if let Some(m) = modulus {
        for i in 0..n {
            let mut r = vec![BigInt::zero(); n];
            r[i] = m.clone();
            rows.push(r);
        }
    }
    let mut top = 0;
    for col in 0..n {
        // Euclid on column `col` among rows[top..]
        loop {
            let pivot = (top..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(p) = pivot else { return false };
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                for c in col..n {
                    let t = &q * &rows[top][c];
                    rows[r][c] -= t;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !rows[top][col].abs().is_one() {
            return false;
        }
        top += 1;
    }
    true
}

fn field_rank(ring: &Ring, n: usize, vectors: &[Vec<Elem>]) -> Result<usize> {
    let mut rows: Vec<Vec<Elem>> = vectors.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| !ring.is_zero(&rows[r][col])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ring.inverse(&rows[rank][col])?;
        for r in rank + 1..rows.len() {
            if ring.is_zero(&rows[r][col]) {
                continue;
            }
            let f = ring.mul(&rows[r][col], &inv);
            for c in col..n {
                let t = ring.mul(&f, &rows[rank][c]);
                rows[r][c] = ring.sub(&rows[r][c], &t);
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    Ok(rank)
}

/// Row reduction over `k[α]`, a Euclidean domain; spans iff every pivot is a nonzero constant.
fn poly_span(k: &Ring, n: usize, vectors: &[Vec<Elem>]) -> Result<bool> {
    let poly = |e: &Elem| match e {
        Elem::Poly(v) => v.clone(),
        _ => unreachable!(),
    };
    let mut rows: Vec<Vec<Vec<Elem>>> = vectors.iter().map(|v| v.iter().map(poly).collect()).collect();
    let mut top = 0;
    for col in 0..n {
        loop {
            let pivot = (top..rows.len())
                .filter(|&r| !rows[r][col].is_empty())
                .min_by_key(|&r| rows[r][col].len());
            let Some(p) = pivot else { return Ok(false) };
            rows.swap(top, p);
            let mut done = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_empty() {
                    continue;
                }
                let (q, _) = dense::divrem(k, &rows[r][col], &rows[top][col])?;
                for c in col..n {
                    let t = dense::mul(k, &q, &rows[top][c]);
                    rows[r][c] = dense::sub(k, &rows[r][c], &t);
                }
                if !rows[r][col].is_empty() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[top][col].len() != 1 {
            return Ok(false);
        }
        top += 1;
    }
    Ok(true)
}
