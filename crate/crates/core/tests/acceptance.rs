//! Acceptance suite: one PASS/FAIL line per criterion, with pinned time limits.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use monogen_core::algebra::FreeAlgebra;
use monogen_core::corpus::{self, oracle_agreement};
use monogen_core::format::parse_algebra;
use monogen_core::monogen::{
    discriminant_identity, is_k_generating, is_monogenerator, local_index_form, universal_min_poly, KGenSystem,
    UniversalContext,
};
use monogen_core::poly::{MultiPoly, PolyRing};
use monogen_core::ring::{Ring, RingHom, RingKind};
use monogen_core::search::{
    box_search, minimal_index_scan, modular_obstruction, ObstructionVerdict, SearchBox, SearchOptions,
};

const PER_FORM_LIMIT: Duration = Duration::from_secs(1);
const PER_OBSTRUCTION_LIMIT: Duration = Duration::from_secs(1);
const ORACLE_LIMIT: Duration = Duration::from_secs(10);
const DISCRIMINANT_LIMIT: Duration = Duration::from_secs(30);
const DEFAULT_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alg(name: &str) -> Result<FreeAlgebra, String> {
    parse_algebra(corpus::file(name).ok_or(format!("no corpus file {name}"))?).map_err(|e| e.to_string())
}

fn parse(alg: &FreeAlgebra, text: &str) -> Result<MultiPoly, String> {
    PolyRing::new(alg.base(), alg.variable_names().to_vec())
        .parse(text)
        .map_err(|e| e.to_string())
}

fn product(alg: &FreeAlgebra, scale: &str, factors: &[&str]) -> Result<MultiPoly, String> {
    let mut p = parse(alg, scale)?;
    for f in factors {
        p = p.try_mul(&parse(alg, f)?).map_err(|e| e.to_string())?;
    }
    Ok(p)
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> Result<T, String>) -> Result<T, String> {
    let start = Instant::now();
    let v = f()?;
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:?}, limit {limit:?}"));
    }
    Ok(v)
}

fn form_of(alg: &FreeAlgebra) -> Result<MultiPoly, String> {
    local_index_form(alg).map(|f| f.poly).map_err(|e| e.to_string())
}

fn vandermonde(alg: &FreeAlgebra) -> Result<MultiPoly, String> {
    let n = alg.rank();
    let r = PolyRing::new(alg.base(), alg.variable_names().to_vec());
    let mut p = r.one();
    for i in 0..n {
        for j in i + 1..n {
            p = p.try_mul(&r.var(i).try_sub(&r.var(j)).unwrap()).unwrap();
        }
    }
    Ok(p)
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut check = |name: &str, want: &dyn Fn(&FreeAlgebra) -> Result<MultiPoly, String>, up_to_sign: bool| {
        let a = alg(name)?;
        let got = timed(PER_FORM_LIMIT, name, || form_of(&a))?;
        let want = want(&a)?;
        let ok = if up_to_sign {
            got.eq_up_to_sign(&want)
        } else {
            got == want
        };
        checked += 1;
        if ok {
            Ok(())
        } else {
            Err(format!("{name}: got {got}, expected {want}"))
        }
    };
    check("gauss", &|a| parse(a, "b"), false)?;
    check("golden", &|a| parse(a, "b"), false)?;
    check("quadratic_generic", &|a| parse(a, "b"), false)?;
    check(
        "dedekind",
        &|a| parse(a, "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3"),
        false,
    )?;
    check(
        "sqrt2_sqrt3",
        &|a| {
            parse(
                a,
                "-8*b^4*c^2 + 12*b^2*c^4 + 16*b^4*d^2 - 36*c^4*d^2 - 48*b^2*d^4 + 72*c^2*d^4",
            )
        },
        false,
    )?;
    check(
        "sqrt2_sqrt3",
        &|a| product(a, "-4", &["2*b^2 - 3*c^2", "b^2 - 3*d^2", "c^2 - 2*d^2"]),
        false,
    )?;
    check(
        "maximal_quartic",
        &|a| {
            product(
                a,
                "1",
                &[
                    "b^2 - 2*c^2 + 6*b*d + 9*d^2",
                    "b^2 - 6*c^2 + 10*b*d + 25*d^2",
                    "b^2 + 4*b*d + d^2",
                ],
            )
        },
        true,
    )?;
    check("cbrt175", &|a| parse(a, "5*b^3 - 7*c^3"), false)?;
    check("inseparable", &|a| parse(a, "b^3 - c^3*alpha"), false)?;
    check("function_field", &|a| parse(a, "b^3 - c^3*alpha"), false)?;
    for n in 2..=5 {
        check(&format!("split{n}"), &vandermonde, true)?;
    }
    for n in 2..=6 {
        check(
            &format!("jet{n}"),
            &|a| parse(a, &format!("x2^{}", n * (n - 1) / 2)),
            false,
        )?;
    }
    let z = Ring::integers();
    let f = FreeAlgebra::jet(&z, 1).map_err(|e| e.to_string())?;
    if !form_of(&f)?.as_constant().is_some_and(|c| z.is_one(&c)) {
        return Err("jet(1) form is not 1".into());
    }
    Ok(format!(
        "{checked} index forms reproduced, each under {PER_FORM_LIMIT:?}"
    ))
}

fn criterion_2() -> Outcome {
    let d = timed(PER_OBSTRUCTION_LIMIT, "Dedekind mod 2", || {
        modular_obstruction(&alg("dedekind")?, 2, false).map_err(|e| e.to_string())
    })?;
    if d.verdict != ObstructionVerdict::Obstructed || d.table.len() != 4 || d.table.iter().any(|r| r.value != 0) {
        return Err(format!("Dedekind mod 2: {:?} with table {:?}", d.verdict, d.table));
    }
    if !d.digest_matches() {
        return Err("Dedekind table digest mismatch".into());
    }
    let c = timed(PER_OBSTRUCTION_LIMIT, "cbrt175 mod 7", || {
        modular_obstruction(&alg("cbrt175")?, 7, false).map_err(|e| e.to_string())
    })?;
    if c.verdict != ObstructionVerdict::Obstructed {
        return Err(format!("cbrt175 mod 7: {:?}", c.verdict));
    }
    Ok("Dedekind mod 2 (four zero residues) and cbrt175 mod 7 obstructed".into())
}

fn criterion_3() -> Outcome {
    let algs = corpus::algebras().map_err(|e| e.to_string())?;
    for (name, a) in &algs {
        let form = local_index_form(a).map_err(|e| format!("{name}: {e}"))?;
        let n = a.rank() as u64;
        let deg = form.poly.homogeneous_degree().map_err(|e| format!("{name}: {e}"))?;
        if deg != Some(n * (n - 1) / 2) {
            return Err(format!("{name}: degree {deg:?}, expected {}", n * (n - 1) / 2));
        }
        if a.unit_is_first() && form.poly.involves(0) {
            return Err(format!("{name}: form involves the first coordinate"));
        }
    }
    Ok(format!("{} corpus forms homogeneous of degree n(n-1)/2", algs.len()))
}

fn criterion_4() -> Outcome {
    let algs = corpus::algebras().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let (mut count, mut points, mut pairs) = (0, 0, 0);
    for (name, a) in &algs {
        let small_base = match a.base().kind() {
            RingKind::IntegersMod { modulus } => [2, 3, 4].iter().any(|m| *modulus == (*m).into()),
            _ => false,
        };
        if !small_base || a.rank() > 3 {
            continue;
        }
        let s = oracle_agreement(a).map_err(|e| format!("{name}: {e}"))?;
        if let Some(m) = s.mismatch {
            return Err(format!("{name}: {m}"));
        }
        count += 1;
        points += s.points;
        pairs += s.pairs;
    }
    let took = start.elapsed();
    if took > ORACLE_LIMIT {
        return Err(format!("oracle comparison took {took:?}, limit {ORACLE_LIMIT:?}"));
    }
    if count == 0 || pairs == 0 {
        return Err("no finite corpus algebras were checked".into());
    }
    Ok(format!(
        "{count} algebras, {points} points and {pairs} pairs agree with the closure oracle"
    ))
}

fn criterion_5() -> Outcome {
    let algs = corpus::algebras().map_err(|e| e.to_string())?;
    let start = Instant::now();
    let mut count = 0;
    for (name, a) in algs.iter().filter(|(_, a)| a.rank() <= 4) {
        let d = discriminant_identity(a).map_err(|e| format!("{name}: {e}"))?;
        if !d.holds() {
            return Err(format!("{name}: {} != {}", d.lhs, d.rhs));
        }
        count += 1;
    }
    let took = start.elapsed();
    if took > DISCRIMINANT_LIMIT {
        return Err(format!(
            "discriminant identities took {took:?}, limit {DISCRIMINANT_LIMIT:?}"
        ));
    }
    Ok(format!(
        "exact identity for {count} corpus algebras of rank <= 4 in {took:.2?}"
    ))
}

fn commutes(a: &FreeAlgebra, hom: &RingHom) -> Result<(), String> {
    let mapped = form_of(a)?.map_coefficients(hom).map_err(|e| e.to_string())?;
    let changed = a.base_change(hom).map_err(|e| e.to_string())?;
    let direct = form_of(&changed)?;
    if mapped == direct {
        Ok(())
    } else {
        Err(format!("mapped {mapped} but base change gives {direct}"))
    }
}

fn criterion_6() -> Outcome {
    let z = Ring::integers();
    let maps = [
        RingHom::reduction(2).unwrap(),
        RingHom::reduction(7).unwrap(),
        RingHom::canonical(&z, &Ring::rationals()).unwrap(),
    ];
    let mut count = 0;
    for (name, a) in corpus::algebras().map_err(|e| e.to_string())? {
        if a.base() != &z {
            continue;
        }
        for h in &maps {
            commutes(&a, h).map_err(|e| format!("{name} to {}: {e}", h.target()))?;
            count += 1;
        }
    }
    let f3 = Ring::integers_mod(3).unwrap();
    let beta = Ring::poly(&f3, "beta");
    let frac_beta = Ring::fraction_field(&beta).unwrap();
    let cube = beta.pow(&beta.generator().unwrap(), 3);
    let cube_frac = frac_beta.fraction(&cube, &beta.one()).map_err(|e| e.to_string())?;
    for (name, target, image) in [
        ("function_field", beta.clone(), cube),
        ("inseparable", frac_beta.clone(), cube_frac),
    ] {
        let a = alg(name)?;
        let hom = RingHom::substitution(a.base(), &target, image).map_err(|e| e.to_string())?;
        commutes(&a, &hom).map_err(|e| format!("{name} under alpha -> beta^3: {e}"))?;
        count += 1;
        if name == "inseparable" {
            let changed = a.base_change(&hom).map_err(|e| e.to_string())?;
            let want = parse(&changed, "b - beta*c")?.pow(3);
            let got = form_of(&changed)?;
            if got != want {
                return Err(format!("pullback {got} is not (b - beta*c)^3 = {want}"));
            }
        }
    }
    Ok(format!(
        "{count} base changes commute; the inseparable pullback is (b - beta*c)^3"
    ))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    let algs = corpus::algebras().map_err(|e| e.to_string())?;
    for (name, a) in algs.iter().filter(|(_, a)| a.rank() == 2 && a.unit_is_first()) {
        let sys = KGenSystem::new(a, 2, false).map_err(|e| e.to_string())?;
        let r = &sys.ring;
        let (b1, b2) = (r.var(1), r.var(3));
        let minors: Vec<MultiPoly> = sys.minors().map(|(_, m)| m).collect();
        if !minors.contains(&b1) || !minors.contains(&b2) {
            return Err(format!("{name}: minors do not contain {b1} and {b2}"));
        }
        let mut subs: Vec<Option<MultiPoly>> = vec![None; r.nvars()];
        subs[1] = Some(r.zero());
        subs[3] = Some(r.zero());
        for m in &minors {
            if !m.substitute(&subs, r).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("{name}: minor {m} does not vanish at b1 = b2 = 0"));
            }
        }
        count += 1;
    }
    let d = alg("dedekind")?;
    let z = d.base().clone();
    let eta2 = vec![z.zero(), z.zero(), z.one()];
    let half = vec![z.zero(), z.one(), z.zero()];
    if !is_k_generating(&d, &[eta2, half], false).map_err(|e| e.to_string())? {
        return Err("Dedekind pair (eta^2, (eta + eta^2)/2) rejected".into());
    }
    if count == 0 {
        return Err("no rank-2 corpus algebra with unit first".into());
    }
    Ok(format!(
        "{count} rank-2 systems with unit first behave as stated; the Dedekind pair generates"
    ))
}

fn criterion_8() -> Outcome {
    let opts = SearchOptions::default();
    let g = alg("gauss")?;
    let r = box_search(&g, &SearchBox::uniform(1, -3, 3), &opts).map_err(|e| e.to_string())?;
    let coords: Vec<Vec<Option<String>>> = r.hits.iter().map(|h| h.coords.clone()).collect();
    if coords != vec![vec![None, Some("-1".into())], vec![None, Some("1".into())]] {
        return Err(format!("Gaussian hits {coords:?}"));
    }
    let z = g.base().clone();
    for h in &r.hits {
        let b: i64 = h.coords[1].as_ref().unwrap().parse().unwrap();
        for a in -3..=3 {
            if !is_monogenerator(&g, &[z.from_i64(a), z.from_i64(b)]).map_err(|e| e.to_string())? {
                return Err(format!("hit ({a}, {b}) fails the re-check"));
            }
        }
    }
    let big = SearchBox::uniform(2, -10, 10);
    for name in ["dedekind", "cbrt175"] {
        let a = alg(name)?;
        let reports: Vec<String> = [1, 2, 8]
            .iter()
            .map(|&shards| {
                let o = SearchOptions {
                    shards,
                    threads: shards,
                    force: false,
                };
                box_search(&a, &big, &o).map(|r| r.to_json()).map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?;
        if reports.iter().any(|r| r != &reports[0]) {
            return Err(format!("{name}: reports differ across shard counts"));
        }
        let r = box_search(&a, &big, &opts).map_err(|e| e.to_string())?;
        if r.hit_count != 0 || r.points_scanned != 441 {
            return Err(format!("{name}: {} hits over {} points", r.hit_count, r.points_scanned));
        }
    }
    let m = minimal_index_scan(&alg("dedekind")?, &SearchBox::uniform(2, -5, 5), &opts).map_err(|e| e.to_string())?;
    if m.minimum.as_deref() != Some("2") {
        return Err(format!("Dedekind box minimum {:?}", m.minimum));
    }
    Ok("Gaussian hits b = -1, 1; no hits for Dedekind or cbrt175; shards 1, 2, 8 identical; box minimum 2".into())
}

/// `e_k(x₁ … xₙ)` as a sum over k-subsets.
fn elementary(r: &PolyRing, n: usize, k: usize) -> MultiPoly {
    let mut total = r.zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut t = r.one();
        for i in 0..n {
            if mask & (1 << i) != 0 {
                t = t.try_mul(&r.var(i)).unwrap();
            }
        }
        total = total.try_add(&t).unwrap();
    }
    total
}

fn criterion_9() -> Outcome {
    for n in 1..=5 {
        let a = FreeAlgebra::split(&Ring::integers(), n).map_err(|e| e.to_string())?;
        let m = universal_min_poly(&a).map_err(|e| e.to_string())?;
        let r = PolyRing::new(a.base(), a.variable_names().to_vec());
        for k in 1..=n {
            let got = &m.coefficients[n - k];
            let e = elementary(&r, n, k);
            if !got.eq_up_to_sign(&e) {
                return Err(format!("split({n}): coefficient of t^{} is {got}, not ±e_{k}", n - k));
            }
        }
    }
    let algs = corpus::algebras().map_err(|e| e.to_string())?;
    for (name, a) in &algs {
        let m = universal_min_poly(a).map_err(|e| format!("{name}: {e}"))?;
        if !m.annihilates(&UniversalContext::new(a)) {
            return Err(format!("{name}: m(theta) is not zero"));
        }
    }
    Ok(format!(
        "split(1..5) coefficients are ±e_k; m(theta) = 0 for {} corpus algebras",
        algs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("index forms reproduce the worked examples", criterion_1),
        ("modular obstruction certificates", criterion_2),
        ("homogeneity of every corpus form", criterion_3),
        ("agreement with the closure oracle", criterion_4),
        ("discriminant identity", criterion_5),
        ("base change commutes with the index form", criterion_6),
        ("k-generator systems", criterion_7),
        ("search determinism and soundness", criterion_8),
        ("universal minimal polynomial", criterion_9),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let result = result.and_then(|msg| {
            let took = start.elapsed();
            if took > DEFAULT_LIMIT {
                Err(format!("took {took:?}, limit {DEFAULT_LIMIT:?}"))
            } else {
                Ok(msg)
            }
        });
        match result {
            Ok(msg) => println!("PASS {} {title}: {msg} [{:.2?}]", i + 1, start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {title}: {msg}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
