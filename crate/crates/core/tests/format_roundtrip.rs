mod common;

use common::{elem, kinds, seed};
use monogen_core::corpus;
use monogen_core::format::{
    algebra_digest, parse_algebra, parse_ring_value, ring_from_json, ring_to_json, serialize_algebra, value_from_json,
    value_to_json,
};
use proptest::prelude::*;
use serde_json::json;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn values_round_trip(s in seed()) {
        for r in kinds() {
            let x = elem(&r, &s);
            let back = value_from_json(&r, &value_to_json(&r, &x)).unwrap();
            prop_assert_eq!(&back, &x, "{}", r);
            let doc = json!({"ring": ring_to_json(&r), "value": value_to_json(&r, &x)}).to_string();
            let (r2, x2) = parse_ring_value(&doc).unwrap();
            prop_assert_eq!(r2, r.clone());
            prop_assert_eq!(x2, x);
        }
    }
}

#[test]
fn rings_round_trip() {
    for r in kinds() {
        assert_eq!(ring_from_json(&ring_to_json(&r)).unwrap(), r);
    }
}

#[test]
fn corpus_algebras_round_trip() {
    for (name, a) in corpus::algebras().unwrap() {
        let text = serialize_algebra(&a);
        let b = parse_algebra(&text).unwrap();
        assert_eq!(serialize_algebra(&b), text, "{name}");
        assert_eq!(algebra_digest(&b), algebra_digest(&a), "{name}");
        assert_eq!(b.variable_names(), a.variable_names(), "{name}");
    }
}
