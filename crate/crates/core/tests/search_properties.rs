use monogen_core::algebra::FreeAlgebra;
use monogen_core::corpus;
use monogen_core::monogen::{index_value, is_monogenerator};
use monogen_core::ring::Elem;
use monogen_core::search::{box_search, modular_obstruction, ObstructionVerdict, SearchBox, SearchOptions};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use std::sync::OnceLock;

fn integral_corpus() -> &'static [(String, FreeAlgebra)] {
    static ALGS: OnceLock<Vec<(String, FreeAlgebra)>> = OnceLock::new();
    ALGS.get_or_init(|| {
        corpus::algebras()
            .unwrap()
            .into_iter()
            .filter(|(_, a)| a.is_over_integers() && a.unit_is_first() && a.rank() <= 4)
            .collect()
    })
}

/// `(algebra index, modulus)` pairs with an obstruction for `2 ≤ m < 8`.
fn obstructed() -> &'static [(usize, u64)] {
    static PAIRS: OnceLock<Vec<(usize, u64)>> = OnceLock::new();
    PAIRS.get_or_init(|| {
        let mut out = Vec::new();
        for (i, (_, a)) in integral_corpus().iter().enumerate() {
            for m in 2..8 {
                if modular_obstruction(a, m, false).unwrap().verdict == ObstructionVerdict::Obstructed {
                    out.push((i, m));
                }
            }
        }
        out
    })
}

/// Every hit is a monogenerator for any first coordinate, and every monogenerator in the
/// box is reported.
#[test]
fn box_search_is_sound_and_complete() {
    for (name, a) in integral_corpus() {
        let dim = a.rank() - 1;
        let half = if dim <= 2 { 3 } else { 1 };
        let sbox = SearchBox::uniform(dim, -half, half);
        let report = box_search(a, &sbox, &SearchOptions::default()).unwrap();
        let k = a.base();
        let mut found = Vec::new();
        let mut rest = vec![-half; dim];
        loop {
            let coords: Vec<Elem> = std::iter::once(k.zero())
                .chain(rest.iter().map(|&c| k.from_i64(c)))
                .collect();
            if is_monogenerator(a, &coords).unwrap() {
                found.push(rest.iter().map(|c| Some(c.to_string())).collect::<Vec<_>>());
                let mut shifted = coords.clone();
                shifted[0] = k.from_i64(7);
                assert!(
                    is_monogenerator(a, &shifted).unwrap(),
                    "{name}: first coordinate matters"
                );
            }
            let Some(i) = rest.iter().rposition(|&c| c < half) else {
                break;
            };
            rest[i] += 1;
            for c in &mut rest[i + 1..] {
                *c = -half;
            }
        }
        let mut hits: Vec<Vec<Option<String>>> = report.hits.iter().map(|h| h.coords[1..].to_vec()).collect();
        hits.sort_by_key(|h| {
            h.iter()
                .map(|c| c.as_ref().unwrap().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        });
        found.sort_by_key(|h| {
            h.iter()
                .map(|c| c.as_ref().unwrap().parse::<i64>().unwrap())
                .collect::<Vec<_>>()
        });
        assert_eq!(hits, found, "{name}");
        assert_eq!(report.hit_count, found.len(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// An obstructed certificate rules out ±1 at every integer point.
    #[test]
    fn obstructions_are_sound(idx in 0usize..64, seed in prop::collection::vec(-50i64..50, 4)) {
        let pairs = obstructed();
        prop_assert!(pairs.len() >= 2);
        let (i, m) = pairs[idx % pairs.len()];
        let (name, a) = &integral_corpus()[i];
        let k = a.base();
        let coords: Vec<Elem> = (0..a.rank()).map(|i| k.from_i64(seed[i % seed.len()])).collect();
        prop_assert!(!is_monogenerator(a, &coords).unwrap(), "{}", name);
        let v = index_value(a, &coords).unwrap();
        let r = v.as_bigint().unwrap().mod_floor(&BigInt::from(m)).to_u64().unwrap();
        prop_assert!(r != 1 % m && r != m - 1, "{} mod {}: residue {}", name, m, r);
    }

    /// Inconclusive certificates name a residue vector where the form is ±1 mod m.
    #[test]
    fn inconclusive_witnesses_hit_plus_or_minus_one(idx in 0usize..32, m in 2u64..8) {
        let algs = integral_corpus();
        let (name, a) = &algs[idx % algs.len()];
        let cert = modular_obstruction(a, m, false).unwrap();
        prop_assert!(cert.digest_matches());
        if cert.verdict == ObstructionVerdict::Inconclusive {
            let w = cert.witness.clone().unwrap();
            let row = cert.table.iter().find(|r| r.residues == w).unwrap();
            prop_assert!(row.value == 1 % m || row.value == m - 1, "{}", name);
        } else {
            prop_assert!(cert.table.iter().all(|r| r.value != 1 % m && r.value != m - 1), "{}", name);
        }
    }
}
