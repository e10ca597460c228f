//! JSON algebra files.
//!
//! ```text
//! file         = { "base": ring, "rank": n, "basis_names"?: [str],
//!                  "presentation": presentation, "variable_aliases"?: [str] }
//! ring         = { "kind": "integers" } | { "kind": "rationals" }
//!              | { "kind": "integers_mod", "modulus": "m" }
//!              | { "kind": "poly", "base": ring, "var": str }
//!              | { "kind": "fraction_field", "base": ring }            base is a "poly" ring
//!              | { "kind": "quotient_field", "base": ring, "modulus": poly }
//! presentation = { "kind": "structure_constants", "c": [[[value]]], "unit": [value] }
//!              | { "kind": "monic_quotient", "coefficients": [value], "var": str }
//!              | { "kind": "split" } | { "kind": "jet" }
//!              | { "kind": "order", "ambient_poly": [rational], "basis_rows": [[rational]] }
//! value        = "123" (ℤ, ℤ/m) | "p/q" (ℚ) | poly | { "num": poly, "den": poly }
//! poly         = [[exponent, value], …]
//! ```
//!
//! Coefficient lists are low degree first. Serialization always writes the
//! `structure_constants` presentation with canonical values.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::{letter_variable_names, FreeAlgebra};
use crate::error::{Error, Result};
use crate::ring::{dense, Elem, Ring, RingKind};

pub const MAX_RANK: usize = 64;
pub const MAX_EXPONENT: u64 = 4096;
pub const MAX_RING_DEPTH: usize = 8;
pub const MAX_INPUT_BYTES: usize = 16 << 20;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| perr(format!("{what} must be an object")))
}

fn field<'a>(o: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| perr(format!("{what} is missing \"{key}\"")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| perr(format!("{what} must be a string")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| perr(format!("{what} must be an array")))
}

fn check_keys(o: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    for k in o.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(perr(format!("{what} has unknown field \"{k}\"")));
        }
    }
    Ok(())
}

fn identifier(s: &str, what: &str) -> Result<String> {
    let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(s.to_string())
    } else {
        Err(perr(format!("{what} {s:?} is not an identifier")))
    }
}

fn parse_integer(s: &str, what: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 10_000 {
        return Err(perr(format!("{what} {s:?} is not a decimal integer")));
    }
    Ok(s.parse().unwrap())
}

fn parse_rational(v: &Value, what: &str) -> Result<BigRational> {
    let s = string(v, what)?;
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s, what)?)),
        Some((p, q)) => {
            let p = parse_integer(p, what)?;
            let q = parse_integer(q, what)?;
            if q == BigInt::from(0) {
                return Err(perr(format!("{what} {s:?} has a zero denominator")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

fn parse_exponent(v: &Value, what: &str) -> Result<usize> {
    let e = v
        .as_u64()
        .ok_or_else(|| perr(format!("{what} exponent must be a nonnegative integer")))?;
    if e > MAX_EXPONENT {
        return Err(perr(format!("{what} exponent {e} exceeds {MAX_EXPONENT}")));
    }
    Ok(e as usize)
}

/// Parses a ring descriptor object.
pub fn ring_from_json(v: &Value) -> Result<Ring> {
    ring_at_depth(v, 0)
}

fn ring_at_depth(v: &Value, depth: usize) -> Result<Ring> {
    if depth > MAX_RING_DEPTH {
        return Err(perr(format!("ring descriptors nest deeper than {MAX_RING_DEPTH}")));
    }
    let o = obj(v, "ring descriptor")?;
    let kind = string(field(o, "kind", "ring descriptor")?, "ring kind")?;
    let map_err = |e: Error| match e {
        Error::Parse(_) => e,
        other => perr(format!("invalid ring descriptor: {other}")),
    };
    match kind {
        "integers" => {
            check_keys(o, &["kind"], "integers descriptor")?;
            Ok(Ring::integers())
        }
        "rationals" => {
            check_keys(o, &["kind"], "rationals descriptor")?;
            Ok(Ring::rationals())
        }
        "integers_mod" => {
            check_keys(o, &["kind", "modulus"], "integers_mod descriptor")?;
            let m = parse_integer(string(field(o, "modulus", "integers_mod")?, "modulus")?, "modulus")?;
            Ring::integers_mod(m).map_err(map_err)
        }
        "poly" => {
            check_keys(o, &["kind", "base", "var"], "poly descriptor")?;
            let base = ring_at_depth(field(o, "base", "poly")?, depth + 1)?;
            let var = identifier(string(field(o, "var", "poly")?, "var")?, "variable")?;
            if base.find_generator(&var).is_some() {
                return Err(perr(format!("variable {var} is already used in {base}")));
            }
            Ok(Ring::poly(&base, var))
        }
        "fraction_field" => {
            check_keys(o, &["kind", "base"], "fraction_field descriptor")?;
            let base = ring_at_depth(field(o, "base", "fraction_field")?, depth + 1)?;
            Ring::fraction_field(&base).map_err(map_err)
        }
        "quotient_field" => {
            check_keys(o, &["kind", "base", "modulus"], "quotient_field descriptor")?;
            let base = ring_at_depth(field(o, "base", "quotient_field")?, depth + 1)?;
            let k = base
                .coefficient_ring()
                .ok_or_else(|| perr("quotient_field base must be a poly ring"))?
                .clone();
            let m = poly_from_json(&k, field(o, "modulus", "quotient_field")?)?;
            Ring::quotient_field(&base, m).map_err(map_err)
        }
        other => Err(perr(format!("unknown ring kind {other:?}"))),
    }
}

fn poly_from_json(k: &Ring, v: &Value) -> Result<Vec<Elem>> {
    let mut out: Vec<Elem> = Vec::new();
    for pair in array(v, "polynomial")? {
        let p = array(pair, "polynomial term")?;
        if p.len() != 2 {
            return Err(perr("polynomial terms are [exponent, coefficient] pairs"));
        }
        let e = parse_exponent(&p[0], "polynomial")?;
        let c = value_from_json(k, &p[1])?;
        if out.len() <= e {
            out.resize(e + 1, k.zero());
        }
        out[e] = k.add(&out[e], &c);
    }
    Ok(dense::trim(k, out))
}

/// Parses a value of `ring`.
pub fn value_from_json(ring: &Ring, v: &Value) -> Result<Elem> {
    match ring.kind() {
        RingKind::Integers | RingKind::IntegersMod { .. } => {
            let n = parse_integer(string(v, "integer value")?, "integer value")?;
            Ok(ring.from_bigint(&n))
        }
        RingKind::Rationals => Ok(Elem::Rat(parse_rational(v, "rational value")?)),
        RingKind::PolyRing { base, .. } => Ok(Elem::Poly(poly_from_json(base, v)?)),
        RingKind::QuotientField { poly, modulus } => {
            let k = poly.coefficient_ring().unwrap();
            let p = poly_from_json(k, v)?;
            Ok(Elem::Poly(dense::rem(k, &p, modulus)?))
        }
        RingKind::FractionField { poly } => {
            let k = poly.coefficient_ring().unwrap();
            if v.is_array() {
                return ring.fraction(&Elem::Poly(poly_from_json(k, v)?), &poly.one());
            }
            let o = obj(v, "fraction value")?;
            check_keys(o, &["num", "den"], "fraction value")?;
            let num = poly_from_json(k, field(o, "num", "fraction value")?)?;
            let den = poly_from_json(k, field(o, "den", "fraction value")?)?;
            if den.is_empty() {
                return Err(perr("fraction has a zero denominator"));
            }
            ring.fraction(&Elem::Poly(num), &Elem::Poly(den))
        }
    }
}

/// Parses `{"ring": descriptor, "value": value}`.
pub fn parse_ring_value(text: &str) -> Result<(Ring, Elem)> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    let o = obj(&v, "ring value document")?;
    check_keys(o, &["ring", "value"], "ring value document")?;
    let ring = ring_from_json(field(o, "ring", "ring value document")?)?;
    let elem = value_from_json(&ring, field(o, "value", "ring value document")?)?;
    Ok((ring, elem))
}

pub fn ring_to_json(ring: &Ring) -> Value {
    match ring.kind() {
        RingKind::Integers => json!({"kind": "integers"}),
        RingKind::Rationals => json!({"kind": "rationals"}),
        RingKind::IntegersMod { modulus } => json!({"kind": "integers_mod", "modulus": modulus.to_string()}),
        RingKind::PolyRing { base, var } => json!({"kind": "poly", "base": ring_to_json(base), "var": var}),
        RingKind::FractionField { poly } => json!({"kind": "fraction_field", "base": ring_to_json(poly)}),
        RingKind::QuotientField { poly, modulus } => json!({
            "kind": "quotient_field",
            "base": ring_to_json(poly),
            "modulus": poly_to_json(poly.coefficient_ring().unwrap(), modulus),
        }),
    }
}

fn poly_to_json(k: &Ring, v: &[Elem]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(e, c)| json!([e, value_to_json(k, c)]))
            .collect(),
    )
}

pub fn value_to_json(ring: &Ring, x: &Elem) -> Value {
    match (ring.kind(), x) {
        (_, Elem::Int(n)) => Value::String(n.to_string()),
        (_, Elem::Rat(q)) => Value::String(crate::ring::render_rational(q)),
        (RingKind::FractionField { poly }, Elem::Frac(b)) => {
            let k = poly.coefficient_ring().unwrap();
            json!({"num": poly_to_json(k, &b.0), "den": poly_to_json(k, &b.1)})
        }
        (_, Elem::Poly(v)) => poly_to_json(ring.coefficient_ring().unwrap(), v),
        (_, Elem::Frac(_)) => unreachable!("fraction payload outside a fraction field"),
    }
}

fn names_from_json(v: Option<&Value>, n: usize, what: &str) -> Result<Option<Vec<String>>> {
    let Some(v) = v else { return Ok(None) };
    let a = array(v, what)?;
    if a.len() != n {
        return Err(perr(format!("{what} has {} entries, expected {n}", a.len())));
    }
    a.iter()
        .map(|s| string(s, what).map(str::to_string))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Parses an algebra file without checking the algebra laws.
pub fn parse_algebra_unchecked(text: &str) -> Result<FreeAlgebra> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(perr(format!("input exceeds {MAX_INPUT_BYTES} bytes")));
    }
    let v: Value = serde_json::from_str(text).map_err(|e| perr(format!("invalid JSON: {e}")))?;
    let o = obj(&v, "algebra file")?;
    check_keys(
        o,
        &["base", "rank", "basis_names", "presentation", "variable_aliases"],
        "algebra file",
    )?;
    let base = ring_from_json(field(o, "base", "algebra file")?)?;
    let rank = field(o, "rank", "algebra file")?
        .as_u64()
        .ok_or_else(|| perr("rank must be a positive integer"))?;
    if rank == 0 || rank > MAX_RANK as u64 {
        return Err(perr(format!("rank must be between 1 and {MAX_RANK}")));
    }
    let n = rank as usize;
    let names = names_from_json(o.get("basis_names"), n, "basis_names")?;
    let pres = obj(field(o, "presentation", "algebra file")?, "presentation")?;
    let kind = string(field(pres, "kind", "presentation")?, "presentation kind")?;
    let alg = match kind {
        "structure_constants" => {
            check_keys(pres, &["kind", "c", "unit"], "structure_constants")?;
            let c = array(field(pres, "c", "structure_constants")?, "c")?;
            let mut table = Vec::with_capacity(n);
            if c.len() != n {
                return Err(perr(format!("c has {} planes, expected {n}", c.len())));
            }
            for (i, plane) in c.iter().enumerate() {
                let plane = array(plane, "c[i]")?;
                if plane.len() != n {
                    return Err(perr(format!("c[{}] has {} rows, expected {n}", i + 1, plane.len())));
                }
                let mut rows = Vec::with_capacity(n);
                for (j, row) in plane.iter().enumerate() {
                    let row = array(row, "c[i][j]")?;
                    if row.len() != n {
                        return Err(perr(format!(
                            "c[{}][{}] has {} entries, expected {n}",
                            i + 1,
                            j + 1,
                            row.len()
                        )));
                    }
                    rows.push(
                        row.iter()
                            .map(|x| value_from_json(&base, x))
                            .collect::<Result<Vec<_>>>()?,
                    );
                }
                table.push(rows);
            }
            let unit = array(field(pres, "unit", "structure_constants")?, "unit")?;
            if unit.len() != n {
                return Err(perr(format!("unit has {} entries, expected {n}", unit.len())));
            }
            let unit = unit
                .iter()
                .map(|x| value_from_json(&base, x))
                .collect::<Result<Vec<_>>>()?;
            let names = names
                .clone()
                .unwrap_or_else(|| (1..=n).map(|i| format!("e{i}")).collect());
            FreeAlgebra::from_table_unchecked(&base, names, table, unit)?
        }
        "monic_quotient" => {
            check_keys(pres, &["kind", "coefficients", "var"], "monic_quotient")?;
            let coeffs = array(field(pres, "coefficients", "monic_quotient")?, "coefficients")?;
            if coeffs.len() != n + 1 {
                return Err(perr(format!("a rank {n} monic quotient needs {} coefficients", n + 1)));
            }
            let f = coeffs
                .iter()
                .map(|x| value_from_json(&base, x))
                .collect::<Result<Vec<_>>>()?;
            let var = match pres.get("var") {
                Some(v) => identifier(string(v, "var")?, "variable")?,
                None => "t".to_string(),
            };
            FreeAlgebra::from_monic_quotient(&base, &f, &var)
                .map_err(|e| perr(format!("invalid monic quotient: {e}")))?
        }
        "split" => {
            check_keys(pres, &["kind"], "split")?;
            FreeAlgebra::split(&base, n)?
        }
        "jet" => {
            check_keys(pres, &["kind"], "jet")?;
            FreeAlgebra::jet(&base, n)?
        }
        "order" => {
            check_keys(pres, &["kind", "ambient_poly", "basis_rows"], "order")?;
            if !matches!(base.kind(), RingKind::Integers) {
                return Err(perr("order presentations need the integers as base"));
            }
            let f = array(field(pres, "ambient_poly", "order")?, "ambient_poly")?;
            if f.len() != n + 1 {
                return Err(perr(format!(
                    "a rank {n} order needs an ambient polynomial with {} coefficients",
                    n + 1
                )));
            }
            let f = f
                .iter()
                .map(|x| parse_rational(x, "ambient_poly entry"))
                .collect::<Result<Vec<_>>>()?;
            let rows = array(field(pres, "basis_rows", "order")?, "basis_rows")?;
            let rows = rows
                .iter()
                .map(|r| {
                    array(r, "basis row")?
                        .iter()
                        .map(|x| parse_rational(x, "basis row entry"))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            FreeAlgebra::from_order(&f, &rows, names.clone()).map_err(|e| match e {
                Error::NotAnOrder(_) => e,
                Error::Structural(m) | Error::Domain(m) => perr(format!("invalid order: {m}")),
                other => other,
            })?
        }
        other => return Err(perr(format!("unknown presentation kind {other:?}"))),
    };
    if alg.rank() != n {
        return Err(perr(format!("presentation has rank {}, file says {n}", alg.rank())));
    }
    let alg = match names {
        Some(nm) if kind != "structure_constants" && kind != "order" => rename_basis(alg, nm)?,
        _ => alg,
    };
    let aliases = names_from_json(o.get("variable_aliases"), n, "variable_aliases")?;
    let aliases = match aliases {
        Some(a) => a
            .iter()
            .map(|s| identifier(s, "variable alias"))
            .collect::<Result<Vec<_>>>()?,
        None => letter_variable_names(n),
    };
    alg.with_variable_names(aliases).map_err(|e| perr(e.to_string()))
}

fn rename_basis(alg: FreeAlgebra, names: Vec<String>) -> Result<FreeAlgebra> {
    FreeAlgebra::from_table_unchecked(alg.base(), names, alg.structure(), alg.unit().to_vec())
        .and_then(|a| a.with_variable_names(alg.variable_names().to_vec()))
}

/// Parses and validates an algebra file.
pub fn parse_algebra(text: &str) -> Result<FreeAlgebra> {
    let alg = parse_algebra_unchecked(text)?;
    let report = alg.validate();
    if report.is_valid() {
        Ok(alg)
    } else {
        Err(Error::Validation(report))
    }
}

pub fn algebra_to_json(alg: &FreeAlgebra) -> Value {
    let k = alg.base();
    let c: Vec<Value> = alg
        .structure()
        .iter()
        .map(|plane| {
            Value::Array(
                plane
                    .iter()
                    .map(|row| Value::Array(row.iter().map(|x| value_to_json(k, x)).collect()))
                    .collect(),
            )
        })
        .collect();
    json!({
        "base": ring_to_json(k),
        "rank": alg.rank(),
        "basis_names": alg.basis_names(),
        "presentation": {
            "kind": "structure_constants",
            "c": c,
            "unit": alg.unit().iter().map(|x| value_to_json(k, x)).collect::<Vec<_>>(),
        },
        "variable_aliases": alg.variable_names(),
    })
}

/// Canonical serialization (pretty JSON with a trailing newline).
pub fn serialize_algebra(alg: &FreeAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&algebra_to_json(alg)).expect("JSON values serialize");
    s.push('\n');
    s
}

/// SHA-256 of the canonical serialization, hex encoded.
pub fn algebra_digest(alg: &FreeAlgebra) -> String {
    hex(&Sha256::digest(serialize_algebra(alg).as_bytes()))
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
