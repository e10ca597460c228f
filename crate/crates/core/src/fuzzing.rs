//! Entry points shared by the fuzz targets and the seed replay test. Each accepts
//! arbitrary bytes, must never panic on bad input, and asserts round-trip invariants
//! whenever the input parses.

use crate::format::{parse_algebra_unchecked, parse_ring_value, ring_to_json, serialize_algebra, value_to_json};
use crate::poly::PolyRing;
use crate::ring::Ring;

/// Algebra files: parse, and re-parse the serialized form.
pub fn algebra_file(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(alg) = parse_algebra_unchecked(text) else { return };
    let out = serialize_algebra(&alg);
    let again = parse_algebra_unchecked(&out).expect("serialized algebra parses");
    assert_eq!(serialize_algebra(&again), out);
    let _ = alg.validate();
}

/// `{"ring": …, "value": …}` documents.
pub fn ring_value(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok((ring, x)) = parse_ring_value(text) else { return };
    let doc = serde_json::json!({"ring": ring_to_json(&ring), "value": value_to_json(&ring, &x)});
    let (r2, x2) = parse_ring_value(&doc.to_string()).expect("serialized value parses");
    assert_eq!(r2, ring);
    assert_eq!(x2, x);
}

/// Polynomial expressions in `a, b, c` over ℤ and over `𝔽₃(alpha)`.
pub fn poly_expr(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let f3 = Ring::integers_mod(3).expect("3 is a valid modulus");
    let frac = Ring::fraction_field(&Ring::poly(&f3, "alpha")).expect("F3 is a field");
    for base in [Ring::integers(), frac] {
        let r = PolyRing::new(&base, names.clone());
        if let Ok(p) = r.parse(text) {
            let back = r.parse(&p.to_string()).expect("rendered polynomial parses");
            assert_eq!(back, p);
        }
    }
}
