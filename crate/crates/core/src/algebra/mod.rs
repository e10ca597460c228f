//! Finite free commutative algebras `B = ⊕ A·eᵢ` over a base ring `A`, given by
//! structure constants.

mod closure;
mod tensor;

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{domain, structural, Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::{dense, Elem, Ring, RingHom, RingKind};

pub use closure::Closure;
pub use tensor::Tensor;

/// A broken algebra law, with 1-based basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `c[i][j][k] ≠ c[j][i][k]`.
    Commutativity { i: usize, j: usize, k: usize },
    /// Component `k` of `(eᵢeⱼ)eₗ` and `eᵢ(eⱼeₗ)` differ.
    Associativity { i: usize, j: usize, l: usize, k: usize },
    /// Component `k` of `1·eᵢ` is wrong.
    UnitLaw { i: usize, k: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Commutativity { i, j, k } => {
                write!(
                    f,
                    "commutativity fails at ({i},{j},{k}): c[{i}][{j}][{k}] != c[{j}][{i}][{k}]"
                )
            }
            Violation::Associativity { i, j, l, k } => write!(
                f,
                "associativity fails at ({i},{j},{l}): (e{i}*e{j})*e{l} and e{i}*(e{j}*e{l}) differ in coordinate {k}"
            ),
            Violation::UnitLaw { i, k } => {
                write!(f, "unit law fails at e{i}: coordinate {k} of 1*e{i} is wrong")
            }
        }
    }
}

/// Outcome of [`FreeAlgebra::validate`]; empty when the table is a commutative,
/// associative, unital algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// 1-based triple of the first violation.
    pub fn first_citation(&self) -> Option<(usize, usize, usize)> {
        self.violations.first().map(|v| match *v {
            Violation::Commutativity { i, j, k } => (i, j, k),
            Violation::Associativity { i, j, l, .. } => (i, j, l),
            Violation::UnitLaw { i, k } => (i, k, 0),
        })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        let shown: Vec<String> = self.violations.iter().take(8).map(|v| v.to_string()).collect();
        write!(f, "{}", shown.join("; "))?;
        if self.violations.len() > 8 {
            write!(f, "; and {} more", self.violations.len() - 8)?;
        }
        Ok(())
    }
}

/// Rank-n free algebra over `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeAlgebra {
    base: Ring,
    basis_names: Vec<String>,
    variable_names: Vec<String>,
    tensor: Tensor<Elem>,
    unit_is_first: bool,
}

/// Result of [`FreeAlgebra::change_basis`]. Rows of `matrix` are the new basis vectors
/// in old coordinates, so old coordinates are `x = matrixᵀ·x̃`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    pub algebra: FreeAlgebra,
    pub matrix: Matrix<Elem>,
    pub inverse: Matrix<Elem>,
}

/// Default coordinate names `x1 … xn`.
pub fn default_variable_names(n: usize) -> Vec<String> {
    crate::poly::indexed_names("x", n)
}

/// `a, b, c, …` for ranks up to 26, `x1 … xn` beyond.
pub fn letter_variable_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        default_variable_names(n)
    }
}

fn power_names(var: &str, n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect()
}

impl FreeAlgebra {
    /// Builds an algebra from `c[i][j][k]` without checking the algebra laws; see
    /// [`FreeAlgebra::validate`]. Shapes and payloads are checked.
    pub fn from_table_unchecked(
        base: &Ring,
        basis_names: Vec<String>,
        structure: Vec<Vec<Vec<Elem>>>,
        unit: Vec<Elem>,
    ) -> Result<Self> {
        let n = structure.len();
        if n == 0 {
            return Err(structural("rank must be at least 1"));
        }
        if basis_names.len() != n || unit.len() != n {
            return Err(structural(format!(
                "rank {n} table needs {n} basis names and a unit of length {n}"
            )));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, plane) in structure.into_iter().enumerate() {
            if plane.len() != n {
                return Err(structural(format!(
                    "c[{}] has {} rows, expected {n}",
                    i + 1,
                    plane.len()
                )));
            }
            for (j, row) in plane.into_iter().enumerate() {
                if row.len() != n {
                    return Err(structural(format!(
                        "c[{}][{}] has {} entries, expected {n}",
                        i + 1,
                        j + 1,
                        row.len()
                    )));
                }
                for e in &row {
                    base.check(e)?;
                }
                flat.extend(row);
            }
        }
        for e in &unit {
            base.check(e)?;
        }
        Ok(Self::from_flat(base, basis_names, flat, unit))
    }

    fn from_flat(base: &Ring, basis_names: Vec<String>, flat: Vec<Elem>, unit: Vec<Elem>) -> Self {
        let n = unit.len();
        let unit_is_first = base.is_one(&unit[0]) && unit[1..].iter().all(|u| base.is_zero(u));
        Self {
            base: base.clone(),
            basis_names,
            variable_names: default_variable_names(n),
            tensor: Tensor::new(base, n, flat, unit),
            unit_is_first,
        }
    }

    /// Builds and validates; a failing table yields [`Error::Validation`].
    pub fn new(base: &Ring, basis_names: Vec<String>, structure: Vec<Vec<Vec<Elem>>>, unit: Vec<Elem>) -> Result<Self> {
        let alg = Self::from_table_unchecked(base, basis_names, structure, unit)?;
        alg.validated()
    }

    pub(crate) fn validated(self) -> Result<Self> {
        let report = self.validate();
        if report.is_valid() {
            Ok(self)
        } else {
            Err(Error::Validation(report))
        }
    }

    /// Checks commutativity, associativity and the unit law.
    pub fn validate(&self) -> ValidationReport {
        let n = self.rank();
        let k = &self.base;
        let t = &self.tensor;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for m in 0..n {
                    if t.get(i, j, m) != t.get(j, i, m) {
                        violations.push(Violation::Commutativity {
                            i: i + 1,
                            j: j + 1,
                            k: m + 1,
                        });
                    }
                }
            }
        }
        let assoc: Vec<Violation> = (0..n * n * n)
            .into_par_iter()
            .flat_map_iter(|idx| {
                let (i, j, l) = (idx / (n * n), (idx / n) % n, idx % n);
                let left = t.mul(k, &self.row(i, j), &self.basis_vector(l));
                let right = t.mul(k, &self.basis_vector(i), &self.row(j, l));
                (0..n)
                    .filter(|&m| left[m] != right[m])
                    .map(|m| Violation::Associativity {
                        i: i + 1,
                        j: j + 1,
                        l: l + 1,
                        k: m + 1,
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        violations.extend(assoc);
        for i in 0..n {
            let e = self.basis_vector(i);
            let p = t.mul(k, t.unit(), &e);
            for m in 0..n {
                if p[m] != e[m] {
                    violations.push(Violation::UnitLaw { i: i + 1, k: m + 1 });
                }
            }
        }
        ValidationReport { violations }
    }

    fn row(&self, i: usize, j: usize) -> Vec<Elem> {
        (0..self.rank()).map(|m| self.tensor.get(i, j, m).clone()).collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let k = &self.base;
        (0..self.rank())
            .map(|m| if m == i { k.one() } else { k.zero() })
            .collect()
    }

    /// `A[t]/(f)` with power basis `1, t, …, t^(n-1)`; `f` is given low degree first.
    pub fn from_monic_quotient(base: &Ring, f: &[Elem], var: &str) -> Result<Self> {
        for c in f {
            base.check(c)?;
        }
        let f = dense::trim(base, f.to_vec());
        let n = dense::degree(&f)
            .filter(|&d| d >= 1)
            .ok_or_else(|| domain("the defining polynomial must have degree at least 1"))?;
        if !base.is_one(&f[n]) {
            return Err(domain("the defining polynomial must be monic"));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let mut mono = vec![base.zero(); i + j + 1];
                mono[i + j] = base.one();
                let r = dense::rem(base, &mono, &f)?;
                for m in 0..n {
                    flat.push(r.get(m).cloned().unwrap_or_else(|| base.zero()));
                }
            }
        }
        let mut unit = vec![base.zero(); n];
        unit[0] = base.one();
        Ok(Self::from_flat(base, power_names(var, n), flat, unit))
    }

    /// `Aⁿ` with idempotent basis `eᵢeⱼ = δᵢⱼeᵢ`.
    pub fn split(base: &Ring, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(structural("rank must be at least 1"));
        }
        let mut flat = vec![base.zero(); n * n * n];
        for i in 0..n {
            flat[(i * n + i) * n + i] = base.one();
        }
        let names = (1..=n).map(|i| format!("e{i}")).collect();
        Ok(Self::from_flat(base, names, flat, vec![base.one(); n]))
    }

    /// `A[ε]/εⁿ` with basis `1, ε, …, ε^(n-1)`.
    pub fn jet(base: &Ring, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(structural("rank must be at least 1"));
        }
        let mut flat = vec![base.zero(); n * n * n];
        for i in 0..n {
            for j in 0..n - i {
                flat[(i * n + j) * n + i + j] = base.one();
            }
        }
        let mut unit = vec![base.zero(); n];
        unit[0] = base.one();
        Ok(Self::from_flat(base, power_names("eps", n), flat, unit))
    }

    /// The ℤ-lattice spanned by `rows` inside `ℚ[t]/(ambient)`. Row `i` lists the
    /// coefficients of the i-th basis element in `1, t, …, t^(n-1)`; `ambient` is monic,
    /// low degree first. Fails with [`Error::NotAnOrder`] unless the lattice is a ring.
    pub fn from_order(
        ambient: &[BigRational],
        rows: &[Vec<BigRational>],
        basis_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let q = Ring::rationals();
        let z = Ring::integers();
        let f: Vec<Elem> = dense::trim(&q, ambient.iter().cloned().map(Elem::Rat).collect());
        let n = dense::degree(&f)
            .filter(|&d| d >= 1)
            .ok_or_else(|| domain("the ambient polynomial must have degree at least 1"))?;
        if !q.is_one(&f[n]) {
            return Err(domain("the ambient polynomial must be monic"));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(structural(format!(
                "an order in a degree {n} field needs {n} rows of length {n}"
            )));
        }
        let names = basis_names.unwrap_or_else(|| (1..=n).map(|i| format!("w{i}")).collect());
        if names.len() != n {
            return Err(structural("basis name count does not match the rank"));
        }
        let basis = Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().cloned().map(Elem::Rat).collect())
                .collect(),
        )?;
        if q.is_zero(&linalg::det_scalar(&q, &basis)?) {
            return Err(domain("order basis rows are linearly dependent"));
        }
        let inv = linalg::inverse(&q, &basis)?;
        // coordinates c with c·rows = v
        let to_coords = |v: &[Elem]| -> Vec<BigRational> {
            let padded: Vec<Elem> = (0..n).map(|m| v.get(m).cloned().unwrap_or_else(|| q.zero())).collect();
            let row = Matrix::from_rows(vec![padded]).unwrap();
            let c = linalg::mat_mul(&q, &row, &inv).unwrap();
            c.row(0)
                .iter()
                .map(|e| match e {
                    Elem::Rat(r) => r.clone(),
                    _ => unreachable!(),
                })
                .collect()
        };
        let polys: Vec<Vec<Elem>> = (0..n).map(|i| dense::trim(&q, basis.row(i).to_vec())).collect();
        let integral = |v: Vec<BigRational>, what: &dyn Fn() -> String| -> Result<Vec<Elem>> {
            if let Some(bad) = v.iter().find(|r| !r.is_integer()) {
                let shown: Vec<String> = v.iter().map(crate::ring::render_rational).collect();
                return Err(Error::NotAnOrder(format!(
                    "{} has coordinates ({}) in this basis; {} is not an integer",
                    what(),
                    shown.join(", "),
                    crate::ring::render_rational(bad)
                )));
            }
            Ok(v.into_iter().map(|r| Elem::Int(r.to_integer())).collect())
        };
        let mut flat = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let p = dense::rem(&q, &dense::mul(&q, &polys[i], &polys[j]), &f)?;
                let coords = integral(to_coords(&p), &|| format!("{}*{}", names[i], names[j]))?;
                flat.extend(coords);
            }
        }
        let one = vec![Elem::Rat(BigRational::one())];
        let unit = integral(to_coords(&one), &|| "1".to_string())?;
        let alg = Self::from_flat(&z, names, flat, unit);
        debug_assert!(alg.validate().is_valid());
        Ok(alg)
    }

    /// `B₁ × B₂` with block-diagonal multiplication and unit `(1, 1)`.
    pub fn product(a: &FreeAlgebra, b: &FreeAlgebra) -> Result<Self> {
        if a.base != b.base {
            return Err(structural(format!("base rings differ: {} vs {}", a.base, b.base)));
        }
        let (n1, n2) = (a.rank(), b.rank());
        let n = n1 + n2;
        let k = &a.base;
        let mut flat = vec![k.zero(); n * n * n];
        for i in 0..n1 {
            for j in 0..n1 {
                for m in 0..n1 {
                    flat[(i * n + j) * n + m] = a.tensor.get(i, j, m).clone();
                }
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                for m in 0..n2 {
                    flat[((n1 + i) * n + n1 + j) * n + n1 + m] = b.tensor.get(i, j, m).clone();
                }
            }
        }
        let mut names: Vec<String> = a.basis_names.clone();
        for nm in &b.basis_names {
            if names.contains(nm) || a.basis_names.contains(nm) {
                names.push(format!("{nm}'"));
            } else {
                names.push(nm.clone());
            }
        }
        let unit: Vec<Elem> = a.tensor.unit().iter().chain(b.tensor.unit()).cloned().collect();
        Ok(Self::from_flat(k, names, flat, unit))
    }

    /// Pushes every structure constant through a ring map.
    pub fn base_change(&self, hom: &RingHom) -> Result<Self> {
        if hom.source() != &self.base {
            return Err(structural(format!(
                "map source {} is not the base ring {}",
                hom.source(),
                self.base
            )));
        }
        let target = hom.target();
        let tensor = self.tensor.try_map(target, |e| hom.apply(e))?;
        let n = self.rank();
        let flat: Vec<Elem> = (0..n * n * n)
            .map(|idx| tensor.get(idx / (n * n), (idx / n) % n, idx % n).clone())
            .collect();
        let mut alg = Self::from_flat(target, self.basis_names.clone(), flat, tensor.unit().to_vec());
        alg.variable_names = self.variable_names.clone();
        Ok(alg)
    }

    /// Re-presents the algebra in the basis whose vectors are the rows of `p` (old
    /// coordinates). `det(p)` must be a unit.
    pub fn change_basis(&self, p: &Matrix<Elem>, names: Option<Vec<String>>) -> Result<BasisChange> {
        let n = self.rank();
        let k = &self.base;
        if p.rows() != n || p.cols() != n {
            return Err(structural(format!("change of basis needs an {n}x{n} matrix")));
        }
        for i in 0..n {
            for e in p.row(i) {
                k.check(e)?;
            }
        }
        let d = linalg::det(k, p)?;
        if !k.is_unit(&d)? {
            return Err(domain(format!(
                "change of basis has non-unit determinant {}",
                k.render(&d)
            )));
        }
        let inv = linalg::inverse(k, p)?;
        let to_new = |v: &[Elem]| -> Vec<Elem> {
            // v_new = v_old · P⁻¹
            (0..n)
                .map(|j| (0..n).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&v[i], inv.get(i, j)))))
                .collect()
        };
        let mut flat = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let prod = self.tensor.mul(k, p.row(i), p.row(j));
                flat.extend(to_new(&prod));
            }
        }
        let unit = to_new(self.tensor.unit());
        let names = names.unwrap_or_else(|| (1..=n).map(|i| format!("f{i}")).collect());
        if names.len() != n {
            return Err(structural("basis name count does not match the rank"));
        }
        let mut alg = Self::from_flat(k, names, flat, unit);
        alg.variable_names = self.variable_names.clone();
        Ok(BasisChange {
            algebra: alg,
            matrix: p.clone(),
            inverse: inv,
        })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.tensor.rank()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// Names used for the coordinates `x₁ … xₙ` of the universal element.
    pub fn variable_names(&self) -> &[String] {
        &self.variable_names
    }

    pub fn with_variable_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(structural("variable name count does not match the rank"));
        }
        let mut seen = std::collections::HashSet::new();
        for nm in &names {
            if !seen.insert(nm) {
                return Err(structural(format!("duplicate variable name {nm}")));
            }
            if self.base.find_generator(nm).is_some() {
                return Err(structural(format!(
                    "variable name {nm} clashes with a base ring generator"
                )));
            }
        }
        self.variable_names = names;
        Ok(self)
    }

    pub fn with_letter_variables(self) -> Self {
        let names = letter_variable_names(self.rank());
        match self.clone().with_variable_names(names) {
            Ok(a) => a,
            Err(_) => self,
        }
    }

    pub fn tensor(&self) -> &Tensor<Elem> {
        &self.tensor
    }

    /// `c[i][j][k]`, 0-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Elem {
        self.tensor.get(i, j, k)
    }

    pub fn structure(&self) -> Vec<Vec<Vec<Elem>>> {
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.row(i, j)).collect()).collect()
    }

    pub fn unit(&self) -> &[Elem] {
        self.tensor.unit()
    }

    pub fn unit_is_first(&self) -> bool {
        self.unit_is_first
    }

    fn check_elem(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(structural(format!(
                "element has {} coordinates, the algebra has rank {}",
                x.len(),
                self.rank()
            )));
        }
        for e in x {
            self.base.check(e)?;
        }
        Ok(())
    }

    pub fn elem_mul(&self, x: &[Elem], y: &[Elem]) -> Result<Vec<Elem>> {
        self.check_elem(x)?;
        self.check_elem(y)?;
        Ok(self.tensor.mul(&self.base, x, y))
    }

    /// Column `i` holds the coordinates of `x·eᵢ`.
    pub fn mult_matrix(&self, x: &[Elem]) -> Result<Matrix<Elem>> {
        self.check_elem(x)?;
        Ok(self.tensor.mult_matrix(&self.base, x))
    }

    pub fn trace(&self, x: &[Elem]) -> Result<Elem> {
        self.check_elem(x)?;
        Ok(self.tensor.trace(&self.base, x))
    }

    /// Characteristic polynomial of multiplication by `x`, monic, low degree first.
    pub fn min_poly_element(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        let m = self.mult_matrix(x)?;
        let mut c = linalg::charpoly(&self.base, &m)?;
        c.reverse();
        Ok(c)
    }

    /// Evaluates a univariate polynomial (low degree first) at an algebra element.
    pub fn eval_poly_at(&self, poly: &[Elem], x: &[Elem]) -> Result<Vec<Elem>> {
        self.check_elem(x)?;
        let k = &self.base;
        let mut acc = vec![k.zero(); self.rank()];
        for c in poly.iter().rev() {
            acc = self.tensor.mul(k, &acc, x);
            for (a, u) in acc.iter_mut().zip(self.tensor.unit()) {
                *a = k.add(a, &k.mul(c, u));
            }
        }
        Ok(acc)
    }

    /// `[Tr(eᵢeⱼ)]`.
    pub fn trace_gram(&self) -> Matrix<Elem> {
        let n = self.rank();
        let k = &self.base;
        let tr = self.tensor.basis_traces();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(k.zero(), |acc, m| k.add(&acc, &k.mul(self.tensor.get(i, j, m), &tr[m])))
        })
    }

    /// Discriminant of the trace form, `det[Tr(eᵢeⱼ)]`.
    pub fn trace_form_disc(&self) -> Result<Elem> {
        linalg::det(&self.base, &self.trace_gram())
    }

    /// Renders an element as `c₁*e₁ + …` using the basis names.
    pub fn render_elem(&self, x: &[Elem]) -> String {
        let terms = x
            .iter()
            .zip(&self.basis_names)
            .filter(|(c, _)| !self.base.is_zero(c))
            .map(|(c, nm)| (c.clone(), if nm == "1" { String::new() } else { nm.clone() }));
        crate::ring::render_sum(&self.base, terms)
    }

    pub fn is_over_integers(&self) -> bool {
        matches!(self.base.kind(), RingKind::Integers)
    }
}

impl fmt::Display for FreeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {} algebra over {} with basis {{{}}}",
            self.rank(),
            self.base,
            self.basis_names.join(", ")
        )
    }
}
