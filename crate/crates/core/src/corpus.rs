//! Built-in worked examples with stored expected outputs.

use serde::Deserialize;
use serde_json::Value;

use crate::algebra::FreeAlgebra;
use crate::error::{Error, Result};
use crate::format::{parse_algebra, ring_from_json, value_from_json};
use crate::monogen::{is_k_generating, is_monogenerator, local_index_form, universal_min_poly, UniversalContext};
use crate::poly::{MultiPoly, PolyRing};
use crate::ring::{Elem, RingHom, RingKind};
use crate::search::{
    box_search, function_field_search, minimal_index_scan, modular_obstruction, ObstructionVerdict, SearchBox,
    SearchOptions,
};

macro_rules! corpus_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".alg")))),*]
    };
}

/// Embedded algebra files by name.
pub const FILES: &[(&str, &str)] = corpus_files!(
    "gauss",
    "golden",
    "quadratic_generic",
    "split2",
    "split3",
    "split4",
    "split5",
    "jet2",
    "jet3",
    "jet4",
    "jet5",
    "jet6",
    "dedekind",
    "sqrt2_sqrt3",
    "maximal_quartic",
    "cbrt175",
    "inseparable",
    "function_field",
    "split2_f2",
    "split3_f2",
    "jet3_f2",
    "f4",
    "f8",
    "split3_f3",
    "jet3_f3",
    "f27",
    "gauss_z4",
    "split3_z4",
    "cubic_z4",
);

const MANIFEST: &str = include_str!("../corpus/manifest.json");

/// One stored expectation.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum Check {
    IndexForm {
        expect: String,
        up_to_sign: bool,
    },
    /// The index form equals `scale` times the product of `factors`.
    IndexFormProduct {
        factors: Vec<String>,
        scale: String,
        up_to_sign: bool,
    },
    /// Coefficients `b₀ … b_(n-1)` of the universal minimal polynomial.
    MinPoly {
        coefficients: Vec<String>,
    },
    /// The universal minimal polynomial of a split algebra is `∏ (t - xᵢ)`.
    MinPolySplitSymmetric,
    Obstruction {
        modulus: u64,
        verdict: ObstructionVerdict,
    },
    BoxSearch {
        #[serde(rename = "box")]
        sbox: String,
        hits: Vec<Vec<Option<String>>>,
    },
    MinIndex {
        #[serde(rename = "box")]
        sbox: String,
        expect: String,
    },
    Monogenerator {
        theta: Vec<Value>,
        expect: bool,
    },
    KGenerating {
        thetas: Vec<Vec<Value>>,
        expect: bool,
    },
    ExhaustiveSearch {
        degree: u32,
        hits: Vec<Vec<Option<String>>>,
    },
    /// After substituting the base generator, the index form is `factor^power`.
    PullbackPower {
        target: Value,
        generator_image: Value,
        factor: String,
        power: u32,
    },
    /// The index form agrees with the brute-force closure oracle at every point.
    Oracle,
}

impl Check {
    pub fn label(&self) -> String {
        match self {
            Check::IndexForm { .. } => "index form".into(),
            Check::IndexFormProduct { .. } => "index form factorization".into(),
            Check::MinPoly { .. } => "universal minimal polynomial".into(),
            Check::MinPolySplitSymmetric => "elementary symmetric minimal polynomial".into(),
            Check::Obstruction { modulus, .. } => format!("obstruction mod {modulus}"),
            Check::BoxSearch { sbox, .. } => format!("box search {sbox}"),
            Check::MinIndex { sbox, .. } => format!("box minimum {sbox}"),
            Check::Monogenerator { .. } => "monogenerator check".into(),
            Check::KGenerating { thetas, .. } => format!("{}-generator check", thetas.len()),
            Check::ExhaustiveSearch { degree, .. } => format!("exhaustive search, degree {degree}"),
            Check::PullbackPower { .. } => "pullback to a perfect power".into(),
            Check::Oracle => "closure oracle agreement".into(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub about: String,
    pub checks: Vec<Check>,
}

impl CorpusEntry {
    pub fn source(&self) -> Option<&'static str> {
        file(&self.name)
    }

    pub fn algebra(&self) -> Result<FreeAlgebra> {
        let src = self
            .source()
            .ok_or_else(|| Error::Internal(format!("corpus file {} is not embedded", self.name)))?;
        parse_algebra(src)
    }
}

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn entries() -> Vec<CorpusEntry> {
    serde_json::from_str(MANIFEST).expect("embedded corpus manifest is well formed")
}

/// Every embedded algebra, parsed.
pub fn algebras() -> Result<Vec<(String, FreeAlgebra)>> {
    FILES
        .iter()
        .map(|(n, s)| parse_algebra(s).map(|a| (n.to_string(), a)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub entry: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

fn universal_ring(alg: &FreeAlgebra) -> PolyRing {
    PolyRing::new(alg.base(), alg.variable_names().to_vec())
}

fn values(alg: &FreeAlgebra, v: &[Value]) -> Result<Vec<Elem>> {
    v.iter().map(|x| value_from_json(alg.base(), x)).collect()
}

fn compare(label: &str, got: &MultiPoly, want: &MultiPoly, up_to_sign: bool) -> (bool, String) {
    let ok = if up_to_sign {
        got.eq_up_to_sign(want)
    } else {
        got == want
    };
    let detail = if ok {
        format!("{label} {got}")
    } else {
        format!("{label} {got}, expected {want}")
    };
    (ok, detail)
}

fn run_check(alg: &FreeAlgebra, check: &Check) -> Result<(bool, String)> {
    let ring = universal_ring(alg);
    Ok(match check {
        Check::IndexForm { expect, up_to_sign } => {
            let form = local_index_form(alg)?;
            compare("form", &form.poly, &ring.parse(expect)?, *up_to_sign)
        }
        Check::IndexFormProduct {
            factors,
            scale,
            up_to_sign,
        } => {
            let form = local_index_form(alg)?;
            let mut want = ring.parse(scale)?;
            for f in factors {
                want = want.try_mul(&ring.parse(f)?)?;
            }
            compare("form", &form.poly, &want, *up_to_sign)
        }
        Check::MinPoly { coefficients } => {
            let m = universal_min_poly(alg)?;
            let ctx = UniversalContext::new(alg);
            let want: Vec<MultiPoly> = coefficients.iter().map(|c| ring.parse(c)).collect::<Result<_>>()?;
            let ok = m.coefficients == want && m.annihilates(&ctx);
            (ok, m.render("t"))
        }
        Check::MinPolySplitSymmetric => {
            let m = universal_min_poly(alg)?;
            let n = alg.rank();
            // ∏ (t - xᵢ), built in the universal ring with t as an extra variable
            let mut names = alg.variable_names().to_vec();
            names.push("t".into());
            let r = PolyRing::new(alg.base(), names);
            let t = r.var(n);
            let mut prod = r.one();
            for i in 0..n {
                prod = prod.try_mul(&t.try_sub(&r.var(i))?)?;
            }
            let got = m.render("t");
            let want = r.parse(&got)?;
            (want == prod, got)
        }
        Check::Obstruction { modulus, verdict } => {
            let c = modular_obstruction(alg, *modulus, false)?;
            (c.verdict == *verdict && c.digest_matches(), c.message())
        }
        Check::BoxSearch { sbox, hits } => {
            let form = local_index_form(alg)?;
            let dim = alg.rank() - usize::from(form.unit_is_first);
            let r = box_search(alg, &SearchBox::parse(sbox, dim)?, &SearchOptions::default())?;
            let got: Vec<Vec<Option<String>>> = r.hits.iter().map(|h| h.coords.clone()).collect();
            (got == *hits, format!("{} hits", r.hit_count))
        }
        Check::MinIndex { sbox, expect } => {
            let form = local_index_form(alg)?;
            let dim = alg.rank() - usize::from(form.unit_is_first);
            let r = minimal_index_scan(alg, &SearchBox::parse(sbox, dim)?, &SearchOptions::default())?;
            let got = r.minimum.unwrap_or_else(|| "0".into());
            (got == *expect, format!("box minimum {got}"))
        }
        Check::Monogenerator { theta, expect } => {
            let got = is_monogenerator(alg, &values(alg, theta)?)?;
            (got == *expect, format!("monogenerator: {got}"))
        }
        Check::KGenerating { thetas, expect } => {
            let ts: Vec<Vec<Elem>> = thetas.iter().map(|t| values(alg, t)).collect::<Result<_>>()?;
            let got = is_k_generating(alg, &ts, false)?;
            (got == *expect, format!("generating: {got}"))
        }
        Check::ExhaustiveSearch { degree, hits } => {
            let r = function_field_search(alg, *degree, false)?;
            let got: Vec<Vec<Option<String>>> = r.hits.iter().map(|h| h.coords.clone()).collect();
            (got == *hits, format!("{} hits", r.hit_count))
        }
        Check::PullbackPower {
            target,
            generator_image,
            factor,
            power,
        } => {
            let target = ring_from_json(target)?;
            let image = value_from_json(&target, generator_image)?;
            let hom = RingHom::substitution(alg.base(), &target, image)?;
            let changed = alg.base_change(&hom)?;
            let form = local_index_form(&changed)?;
            let mapped = local_index_form(alg)?.poly.map_coefficients(&hom)?;
            let want = universal_ring(&changed).parse(factor)?.pow(*power);
            let (ok, detail) = compare("pulled back form", &form.poly, &want, false);
            (ok && mapped == form.poly, detail)
        }
        Check::Oracle => {
            let s = oracle_agreement(alg)?;
            let ok = s.mismatch.is_none();
            let detail = match &s.mismatch {
                None => format!("{} points and {} pairs agree", s.points, s.pairs),
                Some(m) => format!("disagreement at {m}"),
            };
            (ok, detail)
        }
    })
}

pub fn run_entry(entry: &CorpusEntry) -> Vec<CheckOutcome> {
    let alg = match entry.algebra() {
        Ok(a) => a,
        Err(e) => {
            return vec![CheckOutcome {
                entry: entry.name.clone(),
                check: "parse".into(),
                passed: false,
                detail: e.to_string(),
            }]
        }
    };
    entry
        .checks
        .iter()
        .map(|c| {
            let (passed, detail) = run_check(&alg, c).unwrap_or_else(|e| (false, e.to_string()));
            CheckOutcome {
                entry: entry.name.clone(),
                check: c.label(),
                passed,
                detail,
            }
        })
        .collect()
}

pub fn run_all() -> Vec<CheckOutcome> {
    entries().iter().flat_map(run_entry).collect()
}

/// Result of comparing the index form against the closure oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSummary {
    pub points: usize,
    /// Pairs checked for 2-generation (only over 𝔽₂).
    pub pairs: usize,
    pub mismatch: Option<String>,
}

/// Over a finite base, compares `is_monogenerator` with the closure oracle at every
/// point, and over 𝔽₂ also `is_k_generating` for every pair.
pub fn oracle_agreement(alg: &FreeAlgebra) -> Result<OracleSummary> {
    let base = alg.base();
    let elems = base.elements()?;
    let n = alg.rank();
    let mut points: Vec<Vec<Elem>> = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                elems.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    let show = |x: &[Elem]| alg.render_elem(x);
    for p in &points {
        let fast = is_monogenerator(alg, p)?;
        let slow = alg.subalgebra_closure(std::slice::from_ref(p))?.spans_all;
        if fast != slow {
            return Ok(OracleSummary {
                points: points.len(),
                pairs: 0,
                mismatch: Some(format!("{} (index form {fast}, oracle {slow})", show(p))),
            });
        }
    }
    let mut pairs = 0;
    let is_f2 = matches!(base.kind(), RingKind::IntegersMod { modulus } if *modulus == 2.into());
    if is_f2 {
        for p in &points {
            for q in &points {
                let gens = [p.clone(), q.clone()];
                let fast = is_k_generating(alg, &gens, false)?;
                let slow = alg.subalgebra_closure(&gens)?.spans_all;
                pairs += 1;
                if fast != slow {
                    return Ok(OracleSummary {
                        points: points.len(),
                        pairs,
                        mismatch: Some(format!("pair {}, {} (minors {fast}, oracle {slow})", show(p), show(q))),
                    });
                }
            }
        }
    }
    Ok(OracleSummary {
        points: points.len(),
        pairs,
        mismatch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_and_files_agree() {
        let es = entries();
        assert_eq!(es.len(), FILES.len());
        for e in &es {
            assert!(e.source().is_some(), "{}", e.name);
        }
    }

    #[test]
    fn all_corpus_checks_pass() {
        let failures: Vec<CheckOutcome> = run_all().into_iter().filter(|o| !o.passed).collect();
        assert!(failures.is_empty(), "{failures:#?}");
    }
}
