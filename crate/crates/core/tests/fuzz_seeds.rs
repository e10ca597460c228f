//! Replays the checked-in fuzz seeds on stable Rust.

use std::path::PathBuf;

use monogen_core::fuzzing;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fuzz", "corpus", target]
        .iter()
        .collect();
    let mut out: Vec<(PathBuf, Vec<u8>)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn algebra_seeds() {
    for (_, data) in seeds("parse_algebra") {
        fuzzing::algebra_file(&data);
    }
}

#[test]
fn ring_value_seeds() {
    for (_, data) in seeds("parse_ring_value") {
        fuzzing::ring_value(&data);
    }
}

#[test]
fn poly_expr_seeds() {
    for (_, data) in seeds("parse_poly_expr") {
        fuzzing::poly_expr(&data);
    }
}
