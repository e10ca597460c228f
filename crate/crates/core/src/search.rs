//! Searches for monogenerators and modular obstructions.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::FreeAlgebra;
use crate::error::{domain, structural, unsupported, Error, Result};
use crate::format::{algebra_digest, hex};
use crate::monogen::{local_index_form, IndexForm};
use crate::poly::MultiPoly;
use crate::ring::{dense, Elem, Ring, RingKind, ENUMERATION_LIMIT};

/// Largest number of lattice points a box search visits without `force`.
pub const BOX_LIMIT: u128 = 1 << 32;

/// Inclusive integer bounds, one pair per scanned coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    pub bounds: Vec<(i64, i64)>,
}

impl SearchBox {
    pub fn uniform(dim: usize, lo: i64, hi: i64) -> Self {
        Self {
            bounds: vec![(lo, hi); dim],
        }
    }

    /// `"lo:hi"` for every coordinate, or a comma separated list with one range per
    /// coordinate.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let range = |s: &str| -> Result<(i64, i64)> {
            let s = s.trim();
            let bad = || Error::Parse(format!("box range {s:?} is not of the form lo:hi"));
            let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
            let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(Error::Parse(format!("box range {s:?} is empty")));
            }
            Ok((lo, hi))
        };
        let parts: Vec<&str> = text.split(',').collect();
        let bounds = if parts.len() == 1 {
            vec![range(parts[0])?; dim]
        } else if parts.len() == dim {
            parts.into_iter().map(range).collect::<Result<_>>()?
        } else {
            return Err(Error::Parse(format!(
                "box has {} ranges, expected 1 or {dim}",
                parts.len()
            )));
        };
        Ok(Self { bounds })
    }

    pub fn points(&self) -> u128 {
        self.bounds
            .iter()
            .map(|&(lo, hi)| (hi as i128 - lo as i128 + 1) as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub shards: usize,
    pub threads: usize,
    pub force: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            shards: 1,
            threads: 0,
            force: false,
        }
    }
}

/// A coordinate vector; `None` marks the first coordinate when it does not affect the
/// index (the unit is the first basis vector).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hit {
    pub coords: Vec<Option<String>>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub algebra_digest: String,
    pub base: String,
    pub index_form: String,
    pub variables: Vec<String>,
    pub scanned_variables: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<(i64, i64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<u32>,
    pub points_scanned: u64,
    pub hit_count: usize,
    pub hits: Vec<Hit>,
    /// Smallest nonzero `|i(θ)|` in the box, with the first point attaining it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_minimum: Option<Hit>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("index form: {}\n", self.index_form));
        if let Some(b) = &self.bounds {
            let r: Vec<String> = self
                .scanned_variables
                .iter()
                .zip(b)
                .map(|(v, (lo, hi))| format!("{v} in [{lo}, {hi}]"))
                .collect();
            s.push_str(&format!("box: {}\n", r.join(", ")));
        }
        if let Some(d) = self.degree_bound {
            s.push_str(&format!("degree bound: {d}\n"));
        }
        s.push_str(&format!("points scanned: {}\n", self.points_scanned));
        s.push_str(&format!("monogenerators found: {}\n", self.hit_count));
        for h in &self.hits {
            s.push_str(&format!(
                "  {}  index {}\n",
                render_coords(&self.variables, &h.coords),
                h.value
            ));
        }
        if let Some(m) = &self.box_minimum {
            s.push_str(&format!(
                "box minimum of |index|: {} at {}\n",
                m.value,
                render_coords(&self.variables, &m.coords)
            ));
        }
        s
    }
}

fn render_coords(vars: &[String], coords: &[Option<String>]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(coords)
        .map(|(v, c)| format!("{v} = {}", c.as_deref().unwrap_or("*")))
        .collect();
    format!("({})", parts.join(", "))
}

/// Coordinates that affect the index form.
fn scanned_indices(form: &IndexForm, n: usize) -> Vec<usize> {
    let start = usize::from(form.unit_is_first);
    (start..n).collect()
}

/// Integer form compiled for fast evaluation, with exponents on the scanned coordinates.
struct CompiledForm {
    small: Option<Vec<(i128, Vec<u32>)>>,
    big: Vec<(BigInt, Vec<u32>)>,
}

impl CompiledForm {
    fn new(poly: &MultiPoly, scanned: &[usize]) -> Self {
        let big: Vec<(BigInt, Vec<u32>)> = poly
            .terms()
            .map(|(m, c)| {
                let e = m.exponents();
                (c.as_bigint().unwrap().clone(), scanned.iter().map(|&i| e[i]).collect())
            })
            .collect();
        let small = big
            .iter()
            .map(|(c, e)| c.to_i128().map(|c| (c, e.clone())))
            .collect::<Option<Vec<_>>>();
        Self { small, big }
    }

    fn eval_small(&self, x: &[i64]) -> Option<i128> {
        let mut acc: i128 = 0;
        for (c, e) in self.small.as_ref()? {
            let mut t = *c;
            for (&xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t.checked_mul(xi as i128)?;
                }
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc)
    }

    fn eval(&self, x: &[i64]) -> BigInt {
        if let Some(v) = self.eval_small(x) {
            return BigInt::from(v);
        }
        let xs: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.big
            .iter()
            .map(|(c, e)| {
                xs.iter()
                    .zip(e)
                    .fold(c.clone(), |t, (xi, &k)| t * num_traits::pow(xi.clone(), k as usize))
            })
            .sum()
    }
}

#[derive(Default)]
struct ShardResult {
    hits: Vec<(Vec<i64>, BigInt)>,
    scanned: u64,
    minimum: Option<(BigInt, Vec<i64>)>,
}

fn better(a: &(BigInt, Vec<i64>), b: &(BigInt, Vec<i64>)) -> bool {
    (&a.0, &a.1) < (&b.0, &b.1)
}

fn scan_shard(form: &CompiledForm, bounds: &[(i64, i64)]) -> ShardResult {
    let mut out = ShardResult::default();
    if bounds.iter().any(|&(lo, hi)| lo > hi) {
        return out;
    }
    let mut x: Vec<i64> = bounds.iter().map(|&(lo, _)| lo).collect();
    loop {
        let v = form.eval(&x);
        out.scanned += 1;
        if v.abs().is_one() {
            out.hits.push((x.clone(), v.clone()));
        }
        if !v.is_zero() {
            let cand = (v.abs(), x.clone());
            if out.minimum.as_ref().is_none_or(|m| better(&cand, m)) {
                out.minimum = Some(cand);
            }
        }
        // odometer with the last coordinate fastest
        let mut i = x.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if x[i] < bounds[i].1 {
                x[i] += 1;
                for j in i + 1..x.len() {
                    x[j] = bounds[j].0;
                }
                break;
            }
        }
    }
}

/// Splits the range of the last scanned coordinate into `shards` contiguous pieces.
fn shard_bounds(bounds: &[(i64, i64)], shards: usize) -> Vec<Vec<(i64, i64)>> {
    let Some(&(lo, hi)) = bounds.last() else {
        return vec![Vec::new()];
    };
    let width = (hi as i128 - lo as i128 + 1) as u128;
    let shards = shards.max(1) as u128;
    (0..shards)
        .map(|s| {
            let a = lo as i128 + (width * s / shards) as i128;
            let b = lo as i128 + (width * (s + 1) / shards) as i128 - 1;
            let mut v = bounds.to_vec();
            *v.last_mut().unwrap() = (a as i64, b as i64);
            if a > b {
                // empty shard
                *v.last_mut().unwrap() = (1, 0);
            }
            v
        })
        .collect()
}

fn run_in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn require_integers(alg: &FreeAlgebra, what: &str) -> Result<()> {
    if matches!(alg.base().kind(), RingKind::Integers) {
        Ok(())
    } else {
        Err(unsupported(format!(
            "{what} needs an algebra over the integers, got {}",
            alg.base()
        )))
    }
}

fn hit_from(n: usize, skip_first: bool, x: &[i64], v: &BigInt) -> Hit {
    let mut coords: Vec<Option<String>> = Vec::with_capacity(n);
    if skip_first {
        coords.push(None);
    }
    coords.extend(x.iter().map(|c| Some(c.to_string())));
    Hit {
        coords,
        value: v.to_string(),
    }
}

/// Scans an integer box for `θ` with `i(θ) = ±1`. The result does not depend on the
/// shard or thread count: shards partition the last scanned coordinate and hits are
/// reported in lexicographic order.
pub fn box_search(alg: &FreeAlgebra, sbox: &SearchBox, opts: &SearchOptions) -> Result<SearchReport> {
    require_integers(alg, "box search")?;
    let start = Instant::now();
    let form = local_index_form(alg)?;
    let n = alg.rank();
    let scanned = scanned_indices(&form, n);
    if sbox.bounds.len() != scanned.len() {
        return Err(structural(format!(
            "box has {} ranges but {} coordinates are scanned",
            sbox.bounds.len(),
            scanned.len()
        )));
    }
    let points = sbox.points();
    if !opts.force && points > BOX_LIMIT {
        return Err(Error::ResourceGuard {
            what: "box search".into(),
            required: format!("{points} points"),
            limit: BOX_LIMIT.to_string(),
        });
    }
    let compiled = CompiledForm::new(&form.poly, &scanned);
    let pieces = shard_bounds(&sbox.bounds, opts.shards);
    let results: Vec<ShardResult> = run_in_pool(opts.threads, || {
        pieces.par_iter().map(|b| scan_shard(&compiled, b)).collect()
    })?;
    let mut hits = Vec::new();
    let mut total = 0u64;
    let mut minimum: Option<(BigInt, Vec<i64>)> = None;
    for r in results {
        hits.extend(r.hits);
        total += r.scanned;
        if let Some(m) = r.minimum {
            if minimum.as_ref().is_none_or(|cur| better(&m, cur)) {
                minimum = Some(m);
            }
        }
    }
    hits.sort();
    let skip = form.unit_is_first;
    let names = alg.variable_names();
    Ok(SearchReport {
        algebra_digest: algebra_digest(alg),
        base: alg.base().to_string(),
        index_form: form.render(false),
        variables: names.to_vec(),
        scanned_variables: scanned.iter().map(|&i| names[i].clone()).collect(),
        bounds: Some(sbox.bounds.clone()),
        degree_bound: None,
        points_scanned: total,
        hit_count: hits.len(),
        hits: hits.iter().map(|(x, v)| hit_from(n, skip, x, v)).collect(),
        box_minimum: minimum.map(|(v, x)| hit_from(n, skip, &x, &v)),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinIndexReport {
    pub label: &'static str,
    /// `None` when the form vanishes on the whole box.
    pub minimum: Option<String>,
    pub witness: Option<Vec<Option<String>>>,
    pub points_scanned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Smallest nonzero `|i(θ)|` over a box. This is a box minimum, not a proof of the
/// global minimum.
pub fn minimal_index_scan(alg: &FreeAlgebra, sbox: &SearchBox, opts: &SearchOptions) -> Result<MinIndexReport> {
    let r = box_search(alg, sbox, opts)?;
    Ok(MinIndexReport {
        label: "box minimum",
        minimum: r.box_minimum.as_ref().map(|h| h.value.clone()),
        witness: r.box_minimum.map(|h| h.coords),
        points_scanned: r.points_scanned,
        elapsed: r.elapsed,
    })
}

/// Candidate coordinate values: all of a finite base, or the polynomials of degree at
/// most `d` over a finite coefficient ring.
fn candidate_values(base: &Ring, d: u32) -> Result<(Vec<Elem>, Option<u32>)> {
    if base.cardinality().is_some() {
        return Ok((base.elements()?, None));
    }
    match base.kind() {
        RingKind::PolyRing { base: k, .. } if k.cardinality().is_some() => {
            let ks = k.elements()?;
            let count = (ks.len() as u128)
                .checked_pow(d + 1)
                .filter(|&c| c <= ENUMERATION_LIMIT as u128);
            if count.is_none() {
                return Err(Error::ResourceGuard {
                    what: "coefficient enumeration".into(),
                    required: format!("{}^{} polynomials", ks.len(), d + 1),
                    limit: ENUMERATION_LIMIT.to_string(),
                });
            }
            let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
            for _ in 0..=d {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        ks.iter().map(move |c| {
                            let mut q = p.clone();
                            q.push(c.clone());
                            q
                        })
                    })
                    .collect();
            }
            let mut vals: Vec<Elem> = out.into_iter().map(|v| Elem::Poly(dense::trim(k, v))).collect();
            vals.sort();
            Ok((vals, Some(d)))
        }
        _ => Err(unsupported(format!(
            "exhaustive search needs a finite base or polynomials over a finite ring, got {base}"
        ))),
    }
}

/// Exhaustive search for `θ` with `i(θ)` a unit, over a finite base or over `k[α]` with
/// coordinates of degree at most `degree`.
pub fn function_field_search(alg: &FreeAlgebra, degree: u32, force: bool) -> Result<SearchReport> {
    let start = Instant::now();
    let base = alg.base();
    let form = local_index_form(alg)?;
    let n = alg.rank();
    let scanned = scanned_indices(&form, n);
    let (values, degree_bound) = candidate_values(base, degree)?;
    let s = scanned.len() as u32;
    let total = (values.len() as u128).checked_pow(s);
    if !force && total.is_none_or(|t| t > ENUMERATION_LIMIT as u128) {
        return Err(Error::ResourceGuard {
            what: "exhaustive search".into(),
            required: format!("{}^{s} points", values.len()),
            limit: ENUMERATION_LIMIT.to_string(),
        });
    }
    let total = total
        .and_then(|t| u64::try_from(t).ok())
        .ok_or_else(|| domain("search space is too large"))?;
    let radix = values.len() as u64;
    let decode = |mut idx: u64| -> Vec<Elem> {
        let mut x = vec![base.zero(); n];
        for &i in scanned.iter().rev() {
            x[i] = values[(idx % radix) as usize].clone();
            idx /= radix;
        }
        x
    };
    let found: Vec<(Vec<Elem>, Elem)> = (0..total)
        .into_par_iter()
        .map(|idx| {
            let x = decode(idx);
            let v = form.value(&x)?;
            Ok(if base.is_unit(&v)? { Some((x, v)) } else { None })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let names = alg.variable_names();
    let skip = form.unit_is_first;
    let hits: Vec<Hit> = found
        .iter()
        .map(|(x, v)| Hit {
            coords: x
                .iter()
                .enumerate()
                .map(|(i, c)| if skip && i == 0 { None } else { Some(base.render(c)) })
                .collect(),
            value: base.render(v),
        })
        .collect();
    Ok(SearchReport {
        algebra_digest: algebra_digest(alg),
        base: base.to_string(),
        index_form: form.render(false),
        variables: names.to_vec(),
        scanned_variables: scanned.iter().map(|&i| names[i].clone()).collect(),
        bounds: None,
        degree_bound,
        points_scanned: total,
        hit_count: hits.len(),
        hits,
        box_minimum: None,
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionVerdict {
    /// No residue class makes the index `±1 mod m`: the order is not monogenic.
    Obstructed,
    /// Some residue class gives `±1 mod m`; nothing is concluded.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueRow {
    pub residues: Vec<u64>,
    pub value: u64,
}

/// Full table of the index form mod `m` over the scanned coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    pub algebra_digest: String,
    pub modulus: u64,
    pub reduced_form: String,
    pub variables: Vec<String>,
    pub table: Vec<ResidueRow>,
    pub table_digest: String,
    pub verdict: ObstructionVerdict,
    pub witness: Option<Vec<u64>>,
}

impl ObstructionCertificate {
    pub fn message(&self) -> String {
        match self.verdict {
            ObstructionVerdict::Obstructed => "obstructed: non-monogenic over ℤ".to_string(),
            ObstructionVerdict::Inconclusive => {
                let w = self.witness.as_ref().unwrap();
                let parts: Vec<String> = self
                    .variables
                    .iter()
                    .zip(w)
                    .map(|(v, r)| format!("{v} = {r}"))
                    .collect();
                format!(
                    "inconclusive: index is ±1 mod {} at ({})",
                    self.modulus,
                    parts.join(", ")
                )
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    pub fn render_text(&self) -> String {
        format!(
            "index form mod {}: {}\nresidue classes checked: {}\ntable sha256: {}\n{}\n",
            self.modulus,
            self.reduced_form,
            self.table.len(),
            self.table_digest,
            self.message()
        )
    }

    /// Recomputes the table digest.
    pub fn digest_matches(&self) -> bool {
        table_digest(self.modulus, &self.variables, &self.table) == self.table_digest
    }
}

fn table_digest(m: u64, vars: &[String], table: &[ResidueRow]) -> String {
    let mut h = Sha256::new();
    h.update(format!("modulus {m}\nvariables {}\n", vars.join(",")).as_bytes());
    for row in table {
        let r: Vec<String> = row.residues.iter().map(u64::to_string).collect();
        h.update(format!("{}:{}\n", r.join(","), row.value).as_bytes());
    }
    hex(&h.finalize())
}

/// Tabulates `i(θ) mod m` over all residue classes of the scanned coordinates. If no
/// value is `±1 mod m`, no `θ` has `i(θ) = ±1`. This is sharper than asking for a unit
/// mod `m`: `5b³ - 7c³` takes the unit value 5 mod 7 but never `±1`.
pub fn modular_obstruction(alg: &FreeAlgebra, m: u64, force: bool) -> Result<ObstructionCertificate> {
    require_integers(alg, "the modular obstruction")?;
    if m < 2 {
        return Err(domain(format!("modulus must be at least 2, got {m}")));
    }
    let form = local_index_form(alg)?;
    let n = alg.rank();
    let scanned = scanned_indices(&form, n);
    let s = scanned.len() as u32;
    let size = (m as u128).checked_pow(s);
    if size.is_none_or(|t| t > ENUMERATION_LIMIT as u128) && !force {
        return Err(Error::ResourceGuard {
            what: "residue table".into(),
            required: format!("{m}^{s} entries"),
            limit: ENUMERATION_LIMIT.to_string(),
        });
    }
    let size = size
        .and_then(|t| u64::try_from(t).ok())
        .ok_or_else(|| domain("residue table is too large"))?;
    let hom = crate::ring::RingHom::reduction(m)?;
    let reduced = form.poly.map_coefficients(&hom)?;
    let mm = BigInt::from(m);
    let terms: Vec<(u128, Vec<u32>)> = form
        .poly
        .terms()
        .map(|(mono, c)| {
            let c = c.as_bigint().unwrap().mod_floor(&mm).to_u128().unwrap();
            (c, scanned.iter().map(|&i| mono.exponents()[i]).collect())
        })
        .collect();
    let m128 = m as u128;
    let eval = |x: &[u64]| -> u64 {
        let mut acc = 0u128;
        for (c, e) in &terms {
            let mut t = *c;
            for (&xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t = t * xi as u128 % m128;
                }
            }
            acc = (acc + t) % m128;
        }
        acc as u64
    };
    let table: Vec<ResidueRow> = (0..size)
        .into_par_iter()
        .map(|mut idx| {
            let mut r = vec![0u64; s as usize];
            for slot in r.iter_mut().rev() {
                *slot = idx % m;
                idx /= m;
            }
            let value = eval(&r);
            ResidueRow { residues: r, value }
        })
        .collect();
    let witness = table
        .iter()
        .find(|row| row.value == 1 || row.value == m - 1)
        .map(|row| row.residues.clone());
    let names = alg.variable_names();
    let vars: Vec<String> = scanned.iter().map(|&i| names[i].clone()).collect();
    let table_digest = table_digest(m, &vars, &table);
    Ok(ObstructionCertificate {
        algebra_digest: algebra_digest(alg),
        modulus: m,
        reduced_form: reduced.to_string(),
        variables: vars,
        table,
        table_digest,
        verdict: if witness.is_some() {
            ObstructionVerdict::Inconclusive
        } else {
            ObstructionVerdict::Obstructed
        },
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn dedekind() -> FreeAlgebra {
        FreeAlgebra::from_order(
            &[q(-8, 1), q(-2, 1), q(-1, 1), q(1, 1)],
            &[
                vec![q(1, 1), q(0, 1), q(0, 1)],
                vec![q(0, 1), q(1, 2), q(1, 2)],
                vec![q(0, 1), q(0, 1), q(1, 1)],
            ],
            None,
        )
        .unwrap()
        .with_letter_variables()
    }

    fn gaussian() -> FreeAlgebra {
        let z = Ring::integers();
        FreeAlgebra::from_monic_quotient(&z, &[z.from_i64(1), z.zero(), z.one()], "t")
            .unwrap()
            .with_letter_variables()
    }

    #[test]
    fn gaussian_hits() {
        let r = box_search(&gaussian(), &SearchBox::uniform(1, -3, 3), &SearchOptions::default()).unwrap();
        assert_eq!(r.hit_count, 2);
        assert_eq!(r.hits[0].coords, vec![None, Some("-1".to_string())]);
        assert_eq!(r.hits[1].value, "1");
        assert_eq!(r.points_scanned, 7);
        assert!(r.render_text().contains("(a = *, b = 1)"));
    }

    #[test]
    fn dedekind_has_no_hits_and_minimum_two() {
        let alg = dedekind();
        let r = box_search(&alg, &SearchBox::uniform(2, -5, 5), &SearchOptions::default()).unwrap();
        assert_eq!(r.hit_count, 0);
        assert_eq!(r.points_scanned, 121);
        let m = minimal_index_scan(&alg, &SearchBox::uniform(2, -5, 5), &SearchOptions::default()).unwrap();
        assert_eq!(m.minimum.as_deref(), Some("2"));
        assert_eq!(m.label, "box minimum");
    }

    #[test]
    fn sharding_is_invisible() {
        let alg = dedekind();
        let b = SearchBox::parse("-4:4,-6:5", 2).unwrap();
        let reference = box_search(&alg, &b, &SearchOptions::default()).unwrap().to_json();
        for (shards, threads) in [(2, 2), (8, 3), (40, 1)] {
            let opts = SearchOptions {
                shards,
                threads,
                force: false,
            };
            assert_eq!(box_search(&alg, &b, &opts).unwrap().to_json(), reference);
        }
        let g = box_search(
            &gaussian(),
            &SearchBox::uniform(1, -2, 2),
            &SearchOptions {
                shards: 5,
                threads: 2,
                force: false,
            },
        )
        .unwrap();
        assert_eq!(g.hit_count, 2);
    }

    #[test]
    fn compiled_evaluation_matches_exact() {
        let alg = dedekind();
        let form = local_index_form(&alg).unwrap();
        let c = CompiledForm::new(&form.poly, &[1, 2]);
        for x in [[3i64, -7], [1 << 40, 3], [-(1 << 50), 1 << 45]] {
            let exact = form.value(&[Elem::int(0), Elem::int(x[0]), Elem::int(x[1])]).unwrap();
            assert_eq!(Elem::Int(c.eval(&x)), exact);
        }
    }

    #[test]
    fn box_parsing() {
        assert_eq!(SearchBox::parse("-2:3", 2).unwrap().bounds, vec![(-2, 3), (-2, 3)]);
        assert_eq!(SearchBox::parse("0:1, -1:1", 2).unwrap().points(), 6);
        for bad in ["3:2", "1", "0:1,0:1,0:1", "a:b"] {
            assert!(matches!(SearchBox::parse(bad, 2), Err(Error::Parse(_))), "{bad}");
        }
        let big = SearchBox::uniform(2, -(1 << 20), 1 << 20);
        assert!(matches!(
            box_search(&dedekind(), &big, &SearchOptions::default()),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn dedekind_obstructed_mod_two() {
        let c = modular_obstruction(&dedekind(), 2, false).unwrap();
        assert_eq!(c.verdict, ObstructionVerdict::Obstructed);
        assert_eq!(c.reduced_form, "b^2*c + b*c^2");
        assert_eq!(c.table.len(), 4);
        assert!(c.table.iter().all(|r| r.value == 0));
        assert!(c.digest_matches());
        assert_eq!(c.message(), "obstructed: non-monogenic over ℤ");
        let g = modular_obstruction(&gaussian(), 4, false).unwrap();
        assert_eq!(g.verdict, ObstructionVerdict::Inconclusive);
        assert_eq!(g.witness, Some(vec![1]));
    }

    #[test]
    fn finite_and_function_field_search() {
        let f2 = Ring::integers_mod(2).unwrap();
        let split = FreeAlgebra::split(&f2, 2).unwrap();
        let r = function_field_search(&split, 0, false).unwrap();
        let coords: Vec<Vec<Option<String>>> = r.hits.iter().map(|h| h.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![
                vec![Some("0".into()), Some("1".into())],
                vec![Some("1".into()), Some("0".into())]
            ]
        );

        let f3 = Ring::integers_mod(3).unwrap();
        let a = Ring::poly(&f3, "alpha");
        let alpha = a.generator().unwrap();
        let f = vec![a.neg(&alpha), a.zero(), a.zero(), a.one()];
        let alg = FreeAlgebra::from_monic_quotient(&a, &f, "t")
            .unwrap()
            .with_letter_variables();
        for d in [0, 1] {
            let r = function_field_search(&alg, d, false).unwrap();
            let coords: Vec<Vec<Option<String>>> = r.hits.iter().map(|h| h.coords.clone()).collect();
            assert_eq!(
                coords,
                vec![
                    vec![None, Some("1".into()), Some("0".into())],
                    vec![None, Some("2".into()), Some("0".into())]
                ],
                "degree {d}"
            );
        }
        assert!(matches!(
            function_field_search(&dedekind(), 1, false),
            Err(Error::Unsupported(_))
        ));
    }
}
