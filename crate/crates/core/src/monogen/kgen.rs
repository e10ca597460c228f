use num_bigint::BigUint;

use super::span::{spans_free_module, SpanVerdict};
use super::UniversalContext;
use crate::algebra::FreeAlgebra;
use crate::error::{structural, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{MultiPoly, PolyRing};
use crate::ring::{CommutativeRing, Elem, Ring};

/// Largest number of maximal minors produced without `force`.
pub const MINOR_LIMIT: u64 = 1_000_000;

/// Exponent tuples `(r₁, …, r_k)` with `0 ≤ rⱼ < n`, lexicographically ascending.
fn exponent_tuples(n: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n as u32).map(move |r| {
                    let mut t = prefix.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    out
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Columns of `θ₁^r₁⋯θ_k^r_k` for every exponent tuple, over any ring.
fn monomial_columns<R: CommutativeRing>(
    ring: &R,
    tensor: &crate::algebra::Tensor<R::Elem>,
    thetas: &[Vec<R::Elem>],
    tuples: &[Vec<u32>],
) -> Vec<Vec<R::Elem>>
where
    R::Elem: std::fmt::Debug,
{
    let n = tensor.rank();
    let powers: Vec<Vec<Vec<R::Elem>>> = thetas.iter().map(|t| tensor.powers(ring, t, n)).collect();
    // tuples are lexicographic, so consecutive tuples share prefixes; cache partial products
    let k = thetas.len();
    let mut prefix: Vec<Vec<R::Elem>> = Vec::with_capacity(k + 1);
    prefix.push(tensor.unit().to_vec());
    let mut last: Vec<u32> = Vec::new();
    let mut out = Vec::with_capacity(tuples.len());
    for t in tuples {
        let common = last.iter().zip(t).take_while(|(a, b)| a == b).count();
        prefix.truncate(common + 1);
        for j in common..k {
            let next = tensor.mul(ring, &prefix[j], &powers[j][t[j] as usize]);
            prefix.push(next);
        }
        out.push(prefix[k].clone());
        last = t.clone();
    }
    out
}

/// The k-generator matrix: `n` rows (basis vectors) by `nᵏ` columns (monomials in
/// `θ₁ … θ_k`), over `A[x_{ij}]`.
#[derive(Clone, Debug)]
pub struct KGenSystem {
    pub k: usize,
    pub ring: PolyRing,
    pub matrix: Matrix<MultiPoly>,
    pub column_monomials: Vec<Vec<u32>>,
}

impl KGenSystem {
    /// Variables are ordered with all coordinates of `θ₁` first, then `θ₂`, and so on.
    /// Refuses more than [`MINOR_LIMIT`] minors unless `force`.
    pub fn new(alg: &FreeAlgebra, k: usize, force: bool) -> Result<Self> {
        if k == 0 {
            return Err(structural("k must be at least 1"));
        }
        let n = alg.rank();
        let cols = (n as u64)
            .checked_pow(k as u32)
            .filter(|&c| c <= u32::MAX as u64)
            .ok_or_else(|| Error::ResourceGuard {
                what: "k-generator matrix".into(),
                required: format!("{n}^{k} columns"),
                limit: u32::MAX.to_string(),
            })?;
        let count = binomial(cols, n as u64);
        if !force && count > BigUint::from(MINOR_LIMIT) {
            return Err(Error::ResourceGuard {
                what: format!("k = {k} minor system"),
                required: format!("{count} minors"),
                limit: MINOR_LIMIT.to_string(),
            });
        }
        let names: Vec<String> = (1..=k)
            .flat_map(|j| {
                alg.variable_names().iter().map(move |v| {
                    if v.ends_with(|c: char| c.is_ascii_digit()) {
                        format!("{v}_{j}")
                    } else {
                        format!("{v}{j}")
                    }
                })
            })
            .collect();
        let ring = PolyRing::new(alg.base(), names);
        let ctx = UniversalContext::with_ring(alg, ring.clone());
        let vars = ring.vars();
        let thetas: Vec<Vec<MultiPoly>> = vars.chunks(n).map(|c| c.to_vec()).collect();
        let tuples = exponent_tuples(n, k);
        let columns = monomial_columns(&ring, ctx.tensor(), &thetas, &tuples);
        let matrix = Matrix::from_fn(n, columns.len(), |i, j| columns[j][i].clone());
        Ok(Self {
            k,
            ring,
            matrix,
            column_monomials: tuples,
        })
    }

    pub fn minor_count(&self) -> BigUint {
        binomial(self.matrix.cols() as u64, self.matrix.rows() as u64)
    }

    /// `t1^r1*t2^r2…` label of a column.
    pub fn column_label(&self, c: usize) -> String {
        let parts: Vec<String> = self.column_monomials[c]
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(j, &r)| {
                if r == 1 {
                    format!("t{}", j + 1)
                } else {
                    format!("t{}^{r}", j + 1)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Column index of an exponent tuple.
    pub fn column_of(&self, tuple: &[u32]) -> Option<usize> {
        self.column_monomials.iter().position(|t| t == tuple)
    }

    /// Maximal minors over column subsets in lexicographic order, computed on demand.
    pub fn minors(&self) -> MinorIter<'_> {
        MinorIter {
            system: self,
            next: Some((0..self.matrix.rows()).collect()).filter(|c: &Vec<usize>| c.len() <= self.matrix.cols()),
        }
    }

    pub fn minor(&self, cols: &[usize]) -> Result<MultiPoly> {
        linalg::det(&self.ring, &self.matrix.select_columns(cols))
    }
}

/// Lazy iterator over `(column subset, minor)`.
pub struct MinorIter<'a> {
    system: &'a KGenSystem,
    next: Option<Vec<usize>>,
}

impl Iterator for MinorIter<'_> {
    type Item = (Vec<usize>, MultiPoly);

    fn next(&mut self) -> Option<Self::Item> {
        let cur = self.next.take()?;
        let total = self.system.matrix.cols();
        let r = cur.len();
        // advance to the next combination
        let mut nxt = cur.clone();
        let mut i = r;
        while i > 0 {
            i -= 1;
            if nxt[i] < total - r + i {
                nxt[i] += 1;
                for j in i + 1..r {
                    nxt[j] = nxt[j - 1] + 1;
                }
                self.next = Some(nxt);
                break;
            }
        }
        let m = self.system.minor(&cur).expect("square selection");
        Some((cur, m))
    }
}

/// Whether `θ₁ … θ_k` generate `B`: the monomials `θ^r` must span `B`, i.e. the maximal
/// minors of the evaluated k-generator matrix must generate the unit ideal. Over ℤ, ℤ/m,
/// fields and `k[α]` this is decided exactly by row reduction. Over other bases the test
/// falls back to looking for a single unit minor.
pub fn is_k_generating(alg: &FreeAlgebra, thetas: &[Vec<Elem>], force: bool) -> Result<bool> {
    if thetas.is_empty() {
        return Err(structural("at least one element is required"));
    }
    let n = alg.rank();
    let k = alg.base();
    for t in thetas {
        if t.len() != n {
            return Err(structural(format!("expected {n} coordinates, got {}", t.len())));
        }
        for e in t {
            k.check(e)?;
        }
    }
    let tuples = exponent_tuples(n, thetas.len());
    let columns = monomial_columns(k, alg.tensor(), thetas, &tuples);
    match spans_free_module(k, n, &columns)? {
        SpanVerdict::Decided(b) => Ok(b),
        SpanVerdict::Undecided => some_unit_minor(k, n, &columns, force),
    }
}

fn some_unit_minor(k: &Ring, n: usize, columns: &[Vec<Elem>], force: bool) -> Result<bool> {
    let total = columns.len();
    let count = binomial(total as u64, n as u64);
    if !force && count > BigUint::from(MINOR_LIMIT) {
        return Err(Error::ResourceGuard {
            what: "minor enumeration".into(),
            required: format!("{count} minors"),
            limit: MINOR_LIMIT.to_string(),
        });
    }
    let m = Matrix::from_fn(n, total, |i, j| columns[j][i].clone());
    let mut sel: Vec<usize> = (0..n).collect();
    loop {
        let d = linalg::det(k, &m.select_columns(&sel))?;
        if k.is_unit(&d)? {
            return Ok(true);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if sel[i] < total - n + i {
                sel[i] += 1;
                for j in i + 1..n {
                    sel[j] = sel[j - 1] + 1;
                }
                break;
            }
        }
    }
}
