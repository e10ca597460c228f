//! Index forms, universal minimal polynomials and k-generator minor systems.
//!
//! Everything is computed over the coordinate ring `A[x₁, …, xₙ]` of the universal
//! element `θ = Σ xᵢeᵢ`. The matrix of coefficients has `θ^(j-1)` in column `j`, and the
//! local index form is its determinant, with no sign normalization.

mod kgen;
mod span;

use crate::algebra::{FreeAlgebra, Tensor};
use crate::error::{structural, Error, Result};
use crate::linalg::{self, Matrix};
use crate::poly::{MultiPoly, PolyRing};
use crate::ring::{CommutativeRing, Elem};

pub use kgen::{is_k_generating, KGenSystem, MinorIter, MINOR_LIMIT};

/// The universal element of an algebra over its coordinate ring.
#[derive(Clone, Debug)]
pub struct UniversalContext {
    algebra: FreeAlgebra,
    ring: PolyRing,
    theta: Vec<MultiPoly>,
    tensor: Tensor<MultiPoly>,
}

impl UniversalContext {
    pub fn new(algebra: &FreeAlgebra) -> Self {
        let ring = PolyRing::new(algebra.base(), algebra.variable_names().to_vec());
        Self::with_ring(algebra, ring)
    }

    fn with_ring(algebra: &FreeAlgebra, ring: PolyRing) -> Self {
        let theta = ring.vars();
        let tensor = algebra.tensor().map(&ring, |c| ring.constant(c.clone()));
        Self {
            algebra: algebra.clone(),
            ring,
            theta,
            tensor,
        }
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Coordinates of `θ`, i.e. the variables.
    pub fn theta(&self) -> &[MultiPoly] {
        &self.theta
    }

    /// The structure constants as constant polynomials.
    pub fn tensor(&self) -> &Tensor<MultiPoly> {
        &self.tensor
    }

    /// `1, θ, …, θ^(count-1)`.
    pub fn theta_powers(&self, count: usize) -> Vec<Vec<MultiPoly>> {
        self.tensor.powers(&self.ring, &self.theta, count)
    }

    pub fn coefficient_matrix(&self) -> Matrix<MultiPoly> {
        let n = self.algebra.rank();
        let powers = self.theta_powers(n);
        Matrix::from_fn(n, n, |i, j| powers[j][i].clone())
    }
}

/// `n × n` matrix whose column `j` holds the coordinates of `θ^(j-1)`.
pub fn coefficient_matrix(alg: &FreeAlgebra) -> Matrix<MultiPoly> {
    UniversalContext::new(alg).coefficient_matrix()
}

/// The local index form together with its expected shape.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexForm {
    pub poly: MultiPoly,
    pub basis_names: Vec<String>,
    pub expected_degree: u64,
    pub unit_is_first: bool,
}

impl IndexForm {
    /// Value at `θ = Σ coords[i]·eᵢ`.
    pub fn value(&self, coords: &[Elem]) -> Result<Elem> {
        self.poly.evaluate(coords)
    }

    /// Value at a point where the first coordinate may be left out when the form does
    /// not involve it.
    pub fn value_skipping_first(&self, rest: &[Elem]) -> Result<Elem> {
        if !self.unit_is_first {
            return Err(structural(
                "the first coordinate is only free when the first basis vector is 1",
            ));
        }
        let k = self.poly.coefficient_ring();
        let mut coords = Vec::with_capacity(rest.len() + 1);
        coords.push(k.zero());
        coords.extend_from_slice(rest);
        self.poly.evaluate(&coords)
    }

    pub fn is_unit_at(&self, coords: &[Elem]) -> Result<bool> {
        let v = self.value(coords)?;
        self.poly.coefficient_ring().is_unit(&v)
    }

    pub fn render(&self, normalize: bool) -> String {
        if normalize {
            self.poly.normalize_sign().to_string()
        } else {
            self.poly.to_string()
        }
    }

    /// Checks homogeneity of degree `n(n-1)/2` and, when the unit is `e₁`, independence
    /// of `x₁`.
    pub fn check_shape(&self) -> Result<()> {
        if self.poly.is_zero() {
            return Ok(());
        }
        match self.poly.homogeneous_degree()? {
            Some(d) if d == self.expected_degree => {}
            other => {
                return Err(Error::Internal(format!(
                    "index form {} is not homogeneous of degree {} (found {:?})",
                    self.poly, self.expected_degree, other
                )))
            }
        }
        if self.unit_is_first && self.poly.involves(0) {
            return Err(Error::Internal(format!(
                "index form {} involves the first coordinate",
                self.poly
            )));
        }
        Ok(())
    }
}

/// `det` of the matrix of coefficients, checked for homogeneity before returning.
pub fn local_index_form(alg: &FreeAlgebra) -> Result<IndexForm> {
    let ctx = UniversalContext::new(alg);
    index_form_in(&ctx)
}

fn index_form_in(ctx: &UniversalContext) -> Result<IndexForm> {
    let alg = ctx.algebra();
    let n = alg.rank() as u64;
    let m = ctx.coefficient_matrix();
    let poly = linalg::det(ctx.ring(), &m)?;
    let form = IndexForm {
        poly,
        basis_names: alg.basis_names().to_vec(),
        expected_degree: n * (n - 1) / 2,
        unit_is_first: alg.unit_is_first(),
    };
    form.check_shape()?;
    Ok(form)
}

/// `m_θ(t) = tⁿ + b_(n-1)·t^(n-1) + … + b₀` for the universal element.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalMinPoly {
    /// `b₀ … b_(n-1)`.
    pub coefficients: Vec<MultiPoly>,
}

impl UniversalMinPoly {
    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    /// All coefficients low degree first, including the leading `1`.
    pub fn dense(&self) -> Vec<MultiPoly> {
        let mut v = self.coefficients.clone();
        let one = match v.first() {
            Some(p) => p.ring().one(),
            None => return v,
        };
        v.push(one);
        v
    }

    pub fn render(&self, var: &str) -> String {
        let n = self.degree();
        let mut parts = vec![match n {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{n}"),
        }];
        for i in (0..n).rev() {
            let c = &self.coefficients[i];
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let text = c.to_string();
            let (neg, body) = match text.strip_prefix('-') {
                Some(rest) if c.len() == 1 => (true, rest.to_string()),
                _ => (false, text),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else if c.len() == 1 {
                format!("{body}*{mono}")
            } else {
                format!("({body})*{mono}")
            };
            parts.push(format!("{} {term}", if neg { "-" } else { "+" }));
        }
        parts.join(" ")
    }

    /// `m_θ(θ)` in `B ⊗ A[x]`; zero for a correct minimal polynomial.
    pub fn evaluate_at_theta(&self, ctx: &UniversalContext) -> Vec<MultiPoly> {
        let ring = ctx.ring();
        let t = ctx.tensor();
        let mut acc: Vec<MultiPoly> = vec![ring.zero(); ctx.algebra().rank()];
        for c in self.dense().iter().rev() {
            acc = t.mul(ring, &acc, ctx.theta());
            for (a, u) in acc.iter_mut().zip(t.unit()) {
                *a = ring.add(a, &ring.mul(c, u));
            }
        }
        acc
    }

    pub fn annihilates(&self, ctx: &UniversalContext) -> bool {
        self.evaluate_at_theta(ctx).iter().all(MultiPoly::is_zero)
    }
}

/// Characteristic polynomial of multiplication by the universal element.
pub fn universal_min_poly(alg: &FreeAlgebra) -> Result<UniversalMinPoly> {
    min_poly_in(&UniversalContext::new(alg))
}

fn min_poly_in(ctx: &UniversalContext) -> Result<UniversalMinPoly> {
    let m = ctx.tensor().mult_matrix(ctx.ring(), ctx.theta());
    let mut c = linalg::charpoly(ctx.ring(), &m)?;
    c.reverse();
    c.pop();
    Ok(UniversalMinPoly { coefficients: c })
}

/// Index form value at `θ = Σ coords[i]·eᵢ`, computed directly from the numeric
/// matrix of coefficients.
pub fn index_value(alg: &FreeAlgebra, coords: &[Elem]) -> Result<Elem> {
    let n = alg.rank();
    if coords.len() != n {
        return Err(structural(format!("expected {n} coordinates, got {}", coords.len())));
    }
    let k = alg.base();
    for c in coords {
        k.check(c)?;
    }
    let powers = alg.tensor().powers(k, coords, n);
    let m = Matrix::from_fn(n, n, |i, j| powers[j][i].clone());
    linalg::det_scalar(k, &m)
}

/// `θ` generates `B` as an `A`-algebra iff its index value is a unit.
pub fn is_monogenerator(alg: &FreeAlgebra, coords: &[Elem]) -> Result<bool> {
    let v = index_value(alg, coords)?;
    alg.base().is_unit(&v)
}

/// Outcome of [`change_basis_transport`].
#[derive(Clone, Debug, PartialEq)]
pub struct Transport {
    pub index_form: IndexForm,
    /// `det(P)`; the old form at `x = Pᵀx̃` equals this times the new form at `x̃`.
    pub unit_ratio: Elem,
}

/// Index form in the basis given by the rows of `p`, after checking
/// `𝔦_old(Pᵀx̃) = det(P)·𝔦_new(x̃)` exactly.
pub fn change_basis_transport(alg: &FreeAlgebra, p: &Matrix<Elem>) -> Result<Transport> {
    let k = alg.base();
    let change = alg.change_basis(p, None)?;
    let new_form = local_index_form(&change.algebra)?;
    let old_form = local_index_form(alg)?;
    let ring = old_form.poly.ring().clone();
    let n = alg.rank();
    // x_a = Σᵢ P[i][a]·x̃ᵢ
    let subs: Vec<Option<MultiPoly>> = (0..n)
        .map(|a| Some((0..n).fold(ring.zero(), |acc, i| ring.add(&acc, &ring.var(i).scale(p.get(i, a))))))
        .collect();
    let pulled = old_form.poly.substitute(&subs, &ring)?;
    let d = linalg::det(k, p)?;
    let scaled = new_form.poly.rename(&ring)?.scale(&d);
    if pulled != scaled {
        return Err(Error::Internal(format!(
            "change of basis identity fails: {pulled} vs {scaled}"
        )));
    }
    Ok(Transport {
        index_form: new_form,
        unit_ratio: d,
    })
}

/// Both sides of `det[Tr(θ^(i+j-2))] = 𝔦² · det[Tr(eᵢeⱼ)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantIdentity {
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
}

impl DiscriminantIdentity {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn discriminant_identity(alg: &FreeAlgebra) -> Result<DiscriminantIdentity> {
    let ctx = UniversalContext::new(alg);
    let ring = ctx.ring();
    let n = alg.rank();
    let powers = ctx.theta_powers(2 * n - 1);
    let traces: Vec<MultiPoly> = powers.iter().map(|p| ctx.tensor().trace(ring, p)).collect();
    let gram = Matrix::from_fn(n, n, |i, j| traces[i + j].clone());
    let lhs = linalg::det(ring, &gram)?;
    let form = index_form_in(&ctx)?;
    let disc = alg.trace_form_disc()?;
    let rhs = form.poly.mul_unchecked(&form.poly).scale(&disc);
    Ok(DiscriminantIdentity { lhs, rhs })
}

pub fn discriminant_identity_check(alg: &FreeAlgebra) -> Result<bool> {
    Ok(discriminant_identity(alg)?.holds())
}
