//! Exact base rings: ℤ, ℚ, ℤ/m, univariate polynomial rings, rational function
//! fields and finite extensions `K[α]/(f)` of a field `K`.
//!
//! A [`Ring`] is an immutable, cheaply clonable descriptor. Elements are bare
//! [`Elem`] payloads that only make sense together with the descriptor that
//! produced them; [`RingValue`] pairs the two and checks descriptors on every
//! operation. Payloads are always kept in canonical form, so structural equality
//! of payloads is ring equality.

pub(crate) mod dense;
mod hom;
mod value;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, structural, unsupported, Error, Result};

pub use hom::{MapRule, RingHom};
pub use value::RingValue;

/// Commutative ring operations over an element type. Implemented by the scalar
/// [`Ring`] and by multivariate polynomial rings, so determinants and
/// characteristic polynomials are written once.
pub trait CommutativeRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Canonical payload of a ring element.
///
/// * ℤ and ℤ/m: `Int` (least nonnegative residue for ℤ/m)
/// * ℚ: `Rat` in lowest terms
/// * `K[α]` and `K[α]/(f)`: `Poly`, dense coefficients low degree first, no trailing zeros
/// * `K(α)`: `Frac(num, den)` with `gcd(num, den) = 1` and `den` monic
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Poly(Vec<Elem>),
    Frac(Box<(Vec<Elem>, Vec<Elem>)>),
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    IntegersMod {
        modulus: BigInt,
    },
    PolyRing {
        base: Ring,
        var: String,
    },
    /// Rational functions over a polynomial ring whose coefficients form a field.
    FractionField {
        poly: Ring,
    },
    /// `poly / (modulus)` for a monic modulus. Irreducibility is not checked.
    QuotientField {
        poly: Ring,
        modulus: Vec<Elem>,
    },
}

/// Descriptor of an exact base ring.
#[derive(Clone, Debug, Eq)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

fn as_int(e: &Elem) -> &BigInt {
    match e {
        Elem::Int(n) => n,
        other => panic!("expected an integer payload, got {other:?}"),
    }
}

fn as_rat(e: &Elem) -> &BigRational {
    match e {
        Elem::Rat(q) => q,
        other => panic!("expected a rational payload, got {other:?}"),
    }
}

fn as_poly(e: &Elem) -> &[Elem] {
    match e {
        Elem::Poly(v) => v,
        other => panic!("expected a polynomial payload, got {other:?}"),
    }
}

fn as_frac(e: &Elem) -> (&[Elem], &[Elem]) {
    match e {
        Elem::Frac(b) => (&b.0, &b.1),
        other => panic!("expected a fraction payload, got {other:?}"),
    }
}

/// Deterministic Miller–Rabin with the first twelve prime bases. Exact below
/// 3.3·10²⁴; a probable-prime test above that.
pub(crate) fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Largest ring cardinality [`Ring::elements`] will enumerate.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn integers_mod(modulus: impl Into<BigInt>) -> Result<Ring> {
        let modulus = modulus.into();
        if modulus < BigInt::from(2) {
            return Err(domain(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Ring(Arc::new(RingKind::IntegersMod { modulus })))
    }

    pub fn poly(base: &Ring, var: impl Into<String>) -> Ring {
        Ring(Arc::new(RingKind::PolyRing {
            base: base.clone(),
            var: var.into(),
        }))
    }

    pub fn fraction_field(poly: &Ring) -> Result<Ring> {
        match poly.kind() {
            RingKind::PolyRing { base, .. } if base.is_field() => {
                Ok(Ring(Arc::new(RingKind::FractionField { poly: poly.clone() })))
            }
            _ => Err(domain("a fraction field needs a polynomial ring over a field")),
        }
    }

    /// `poly / (modulus)`; `modulus` holds coefficients low degree first and must be
    /// monic of degree at least one. Irreducibility is the caller's responsibility:
    /// a reducible modulus gives a ring with zero divisors, where inversion fails on
    /// the non-units.
    pub fn quotient_field(poly: &Ring, modulus: Vec<Elem>) -> Result<Ring> {
        let RingKind::PolyRing { base, .. } = poly.kind() else {
            return Err(domain("a quotient field needs a polynomial ring"));
        };
        if !base.is_field() {
            return Err(domain("a quotient field needs polynomial coefficients in a field"));
        }
        for c in &modulus {
            base.check(c)?;
        }
        let modulus = dense::trim(base, modulus);
        match modulus.last() {
            Some(lc) if modulus.len() >= 2 && base.is_one(lc) => {}
            _ => return Err(domain("quotient modulus must be monic of degree at least one")),
        }
        Ok(Ring(Arc::new(RingKind::QuotientField {
            poly: poly.clone(),
            modulus,
        })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// Coefficient ring of a polynomial, rational function or quotient ring.
    pub fn coefficient_ring(&self) -> Option<&Ring> {
        match self.kind() {
            RingKind::PolyRing { base, .. } => Some(base),
            RingKind::FractionField { poly } | RingKind::QuotientField { poly, .. } => poly.coefficient_ring(),
            _ => None,
        }
    }

    /// Name of the adjoined variable, if any.
    pub fn variable_name(&self) -> Option<&str> {
        match self.kind() {
            RingKind::PolyRing { var, .. } => Some(var),
            RingKind::FractionField { poly } | RingKind::QuotientField { poly, .. } => poly.variable_name(),
            _ => None,
        }
    }

    pub fn quotient_modulus(&self) -> Option<&[Elem]> {
        match self.kind() {
            RingKind::QuotientField { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self.kind() {
            RingKind::Rationals | RingKind::FractionField { .. } | RingKind::QuotientField { .. } => true,
            RingKind::IntegersMod { modulus } => is_probable_prime(modulus),
            RingKind::Integers | RingKind::PolyRing { .. } => false,
        }
    }

    pub fn is_integral_domain(&self) -> bool {
        match self.kind() {
            RingKind::Integers => true,
            RingKind::PolyRing { base, .. } => base.is_integral_domain(),
            _ => self.is_field(),
        }
    }

    /// `0` for ℤ, ℚ and rings built over them.
    pub fn characteristic(&self) -> BigInt {
        match self.kind() {
            RingKind::Integers | RingKind::Rationals => BigInt::zero(),
            RingKind::IntegersMod { modulus } => modulus.clone(),
            _ => self.coefficient_ring().unwrap().characteristic(),
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind() {
            RingKind::Integers | RingKind::IntegersMod { .. } => Elem::Int(BigInt::zero()),
            RingKind::Rationals => Elem::Rat(BigRational::zero()),
            RingKind::PolyRing { .. } | RingKind::QuotientField { .. } => Elem::Poly(Vec::new()),
            RingKind::FractionField { .. } => {
                let k = self.coefficient_ring().unwrap();
                Elem::Frac(Box::new((Vec::new(), vec![k.one()])))
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under the unique map ℤ → self.
    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(n.clone()),
            RingKind::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
            RingKind::IntegersMod { modulus } => Elem::Int(n.mod_floor(modulus)),
            _ => {
                let k = self.coefficient_ring().unwrap();
                self.embed_constant(&k.from_bigint(n))
            }
        }
    }

    /// Image of a rational; only defined in characteristic zero, or when the denominator is
    /// invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        let inv = self.inverse(&den)?;
        Ok(self.mul(&num, &inv))
    }

    /// Embeds an element of the coefficient ring as a constant.
    pub fn embed_constant(&self, c: &Elem) -> Elem {
        let k = self
            .coefficient_ring()
            .expect("embed_constant on a ring without coefficient ring");
        let v = dense::trim(k, vec![c.clone()]);
        match self.kind() {
            RingKind::PolyRing { .. } => Elem::Poly(v),
            RingKind::QuotientField { .. } => Elem::Poly(v),
            RingKind::FractionField { .. } => Elem::Frac(Box::new((v, vec![k.one()]))),
            _ => unreachable!(),
        }
    }

    /// The adjoined variable as an element of this ring.
    pub fn generator(&self) -> Option<Elem> {
        let k = self.coefficient_ring()?;
        let x = vec![k.zero(), k.one()];
        Some(match self.kind() {
            RingKind::PolyRing { .. } => Elem::Poly(x),
            RingKind::FractionField { .. } => Elem::Frac(Box::new((x, vec![k.one()]))),
            RingKind::QuotientField { modulus, .. } => Elem::Poly(dense::rem(k, &x, modulus).expect("monic modulus")),
            _ => unreachable!(),
        })
    }

    /// Looks up a named generator anywhere in the tower and embeds it into this ring.
    pub fn find_generator(&self, name: &str) -> Option<Elem> {
        if self.variable_name() == Some(name) {
            return self.generator();
        }
        let k = self.coefficient_ring()?;
        k.find_generator(name).map(|c| self.embed_constant(&c))
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Poly(v) => v.is_empty(),
            Elem::Frac(b) => b.0.is_empty(),
        }
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(as_int(a) + as_int(b)),
            RingKind::Rationals => Elem::Rat(as_rat(a) + as_rat(b)),
            RingKind::IntegersMod { modulus } => Elem::Int((as_int(a) + as_int(b)).mod_floor(modulus)),
            RingKind::PolyRing { base, .. } => Elem::Poly(dense::add(base, as_poly(a), as_poly(b))),
            RingKind::QuotientField { .. } => {
                let k = self.coefficient_ring().unwrap();
                Elem::Poly(dense::add(k, as_poly(a), as_poly(b)))
            }
            RingKind::FractionField { .. } => {
                let k = self.coefficient_ring().unwrap();
                let (an, ad) = as_frac(a);
                let (bn, bd) = as_frac(b);
                if ad == bd {
                    return self.reduce_fraction(dense::add(k, an, bn), ad.to_vec());
                }
                let num = dense::add(k, &dense::mul(k, an, bd), &dense::mul(k, bn, ad));
                self.reduce_fraction(num, dense::mul(k, ad, bd))
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(-as_int(a)),
            RingKind::Rationals => Elem::Rat(-as_rat(a)),
            RingKind::IntegersMod { modulus } => Elem::Int((-as_int(a)).mod_floor(modulus)),
            RingKind::PolyRing { base, .. } => Elem::Poly(dense::neg(base, as_poly(a))),
            RingKind::QuotientField { .. } => Elem::Poly(dense::neg(self.coefficient_ring().unwrap(), as_poly(a))),
            RingKind::FractionField { .. } => {
                let k = self.coefficient_ring().unwrap();
                let (n, d) = as_frac(a);
                Elem::Frac(Box::new((dense::neg(k, n), d.to_vec())))
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind() {
            RingKind::Integers => Elem::Int(as_int(a) * as_int(b)),
            RingKind::Rationals => Elem::Rat(as_rat(a) * as_rat(b)),
            RingKind::IntegersMod { modulus } => Elem::Int((as_int(a) * as_int(b)).mod_floor(modulus)),
            RingKind::PolyRing { base, .. } => Elem::Poly(dense::mul(base, as_poly(a), as_poly(b))),
            RingKind::QuotientField { modulus, .. } => {
                let k = self.coefficient_ring().unwrap();
                let p = dense::mul(k, as_poly(a), as_poly(b));
                Elem::Poly(dense::rem(k, &p, modulus).expect("monic modulus"))
            }
            RingKind::FractionField { .. } => {
                let k = self.coefficient_ring().unwrap();
                let (an, ad) = as_frac(a);
                let (bn, bd) = as_frac(b);
                self.reduce_fraction(dense::mul(k, an, bn), dense::mul(k, ad, bd))
            }
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn reduce_fraction(&self, num: Vec<Elem>, den: Vec<Elem>) -> Elem {
        let k = self.coefficient_ring().unwrap();
        if num.is_empty() {
            return self.zero();
        }
        assert!(!den.is_empty(), "zero denominator in fraction field arithmetic");
        let g = dense::gcd(k, &num, &den).expect("field coefficients");
        let num = dense::divrem(k, &num, &g).expect("monic gcd").0;
        let den = dense::divrem(k, &den, &g).expect("monic gcd").0;
        let lc_inv = k.inverse(den.last().unwrap()).expect("field coefficients");
        Elem::Frac(Box::new((
            dense::scale(k, &num, &lc_inv),
            dense::scale(k, &den, &lc_inv),
        )))
    }

    /// Builds `num / den` in a fraction field from two elements of its polynomial ring.
    pub fn fraction(&self, num: &Elem, den: &Elem) -> Result<Elem> {
        let RingKind::FractionField { poly } = self.kind() else {
            return Err(structural("fraction() needs a fraction field"));
        };
        poly.check(num)?;
        poly.check(den)?;
        if poly.is_zero(den) {
            return Err(domain("zero denominator"));
        }
        Ok(self.reduce_fraction(as_poly(num).to_vec(), as_poly(den).to_vec()))
    }

    pub fn numerator_denominator(&self, x: &Elem) -> Option<(Elem, Elem)> {
        match (self.kind(), x) {
            (RingKind::FractionField { .. }, Elem::Frac(b)) => Some((Elem::Poly(b.0.clone()), Elem::Poly(b.1.clone()))),
            _ => None,
        }
    }

    /// Whether `x` has a multiplicative inverse.
    ///
    /// Unit detection in a polynomial ring needs an integral domain of coefficients;
    /// over ℤ/m with composite m it is unsupported.
    pub fn is_unit(&self, x: &Elem) -> Result<bool> {
        Ok(match self.kind() {
            RingKind::Integers => as_int(x).abs().is_one(),
            RingKind::Rationals | RingKind::FractionField { .. } => !self.is_zero(x),
            RingKind::IntegersMod { modulus } => as_int(x).gcd(modulus).is_one(),
            RingKind::PolyRing { base, .. } => {
                if !base.is_integral_domain() {
                    return Err(unsupported("unit test for polynomials over a ring with zero divisors"));
                }
                match as_poly(x) {
                    [c] => base.is_unit(c)?,
                    _ => false,
                }
            }
            RingKind::QuotientField { modulus, .. } => {
                let k = self.coefficient_ring().unwrap();
                !self.is_zero(x) && dense::gcd(k, as_poly(x), modulus)?.len() == 1
            }
        })
    }

    pub fn inverse(&self, x: &Elem) -> Result<Elem> {
        let non_unit = || domain(format!("{} is not a unit", self.render(x)));
        match self.kind() {
            RingKind::Integers => {
                if as_int(x).abs().is_one() {
                    Ok(x.clone())
                } else {
                    Err(non_unit())
                }
            }
            RingKind::Rationals => {
                let q = as_rat(x);
                if q.is_zero() {
                    Err(non_unit())
                } else {
                    Ok(Elem::Rat(q.recip()))
                }
            }
            RingKind::IntegersMod { modulus } => {
                let e = as_int(x).extended_gcd(modulus);
                if e.gcd.is_one() {
                    Ok(Elem::Int(e.x.mod_floor(modulus)))
                } else {
                    Err(non_unit())
                }
            }
            RingKind::PolyRing { base, .. } => match as_poly(x) {
                [c] => Ok(Elem::Poly(vec![base.inverse(c)?])),
                _ => Err(non_unit()),
            },
            RingKind::FractionField { .. } => {
                if self.is_zero(x) {
                    return Err(non_unit());
                }
                let (n, d) = as_frac(x);
                Ok(self.reduce_fraction(d.to_vec(), n.to_vec()))
            }
            RingKind::QuotientField { modulus, .. } => {
                let k = self.coefficient_ring().unwrap();
                let (g, s) = dense::half_ext_gcd(k, as_poly(x), modulus)?;
                if g.len() != 1 {
                    return Err(non_unit());
                }
                Ok(Elem::Poly(dense::rem(k, &s, modulus)?))
            }
        }
    }

    /// Checks that `x` is a canonical payload of this ring.
    pub fn check(&self, x: &Elem) -> Result<()> {
        let bad = |why: &str| structural(format!("payload {x:?} is not canonical in {self}: {why}"));
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(_)) | (RingKind::Rationals, Elem::Rat(_)) => Ok(()),
            (RingKind::IntegersMod { modulus }, Elem::Int(n)) => {
                if n.is_negative() || n >= modulus {
                    Err(bad("residue out of range"))
                } else {
                    Ok(())
                }
            }
            (RingKind::PolyRing { base, .. }, Elem::Poly(v)) => {
                for c in v {
                    base.check(c)?;
                }
                if v.last().is_some_and(|c| base.is_zero(c)) {
                    return Err(bad("trailing zero coefficient"));
                }
                Ok(())
            }
            (RingKind::QuotientField { modulus, .. }, Elem::Poly(v)) => {
                let k = self.coefficient_ring().unwrap();
                for c in v {
                    k.check(c)?;
                }
                if v.last().is_some_and(|c| k.is_zero(c)) || v.len() >= modulus.len() {
                    return Err(bad("residue not reduced"));
                }
                Ok(())
            }
            (RingKind::FractionField { .. }, Elem::Frac(b)) => {
                let k = self.coefficient_ring().unwrap();
                for c in b.0.iter().chain(b.1.iter()) {
                    k.check(c)?;
                }
                let canon = if b.0.is_empty() {
                    self.zero()
                } else if b.1.is_empty() {
                    return Err(bad("zero denominator"));
                } else {
                    self.reduce_fraction(b.0.clone(), b.1.clone())
                };
                if canon == *x {
                    Ok(())
                } else {
                    Err(bad("fraction not in lowest terms with monic denominator"))
                }
            }
            _ => Err(bad("wrong payload kind")),
        }
    }

    /// Number of elements, for finite rings.
    pub fn cardinality(&self) -> Option<BigUint> {
        match self.kind() {
            RingKind::IntegersMod { modulus } => modulus.to_biguint(),
            RingKind::QuotientField { modulus, .. } => {
                let q = self.coefficient_ring().unwrap().cardinality()?;
                Some(num_traits::pow(q, modulus.len() - 1))
            }
            _ => None,
        }
    }

    /// Every element of a finite ring, in a fixed order starting with zero.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let card = self
            .cardinality()
            .ok_or_else(|| unsupported(format!("cannot enumerate the infinite ring {self}")))?;
        if card > BigUint::from(ENUMERATION_LIMIT) {
            return Err(Error::ResourceGuard {
                what: format!("enumerating {self}"),
                required: format!("{card} elements"),
                limit: ENUMERATION_LIMIT.to_string(),
            });
        }
        match self.kind() {
            RingKind::IntegersMod { modulus } => {
                let m = modulus.to_u64().unwrap();
                Ok((0..m).map(|i| Elem::Int(BigInt::from(i))).collect())
            }
            RingKind::QuotientField { modulus, .. } => {
                let k = self.coefficient_ring().unwrap();
                let ks = k.elements()?;
                let d = modulus.len() - 1;
                let mut out = vec![Vec::new()];
                for _ in 0..d {
                    let mut next = Vec::with_capacity(out.len() * ks.len());
                    for prefix in &out {
                        for c in &ks {
                            let mut v: Vec<Elem> = prefix.clone();
                            v.push(c.clone());
                            next.push(v);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(|v| Elem::Poly(dense::trim(k, v))).collect())
            }
            _ => unreachable!(),
        }
    }

    /// `(negative, magnitude, atomic)`: a sign split used when the element appears as a
    /// coefficient. Only ℤ and ℚ values (and single-term polynomials over them) carry a sign.
    pub(crate) fn signed_parts(&self, x: &Elem) -> (bool, String, bool) {
        match (self.kind(), x) {
            (RingKind::Integers, Elem::Int(n)) => (n.is_negative(), n.abs().to_string(), true),
            (RingKind::Rationals, Elem::Rat(q)) => {
                let a = q.abs();
                let atomic = a.is_integer();
                (q.is_negative(), render_rational(&a), atomic)
            }
            (RingKind::PolyRing { base, var }, Elem::Poly(v)) => {
                let nonzero: Vec<usize> = (0..v.len()).filter(|&i| !base.is_zero(&v[i])).collect();
                if let [i] = nonzero[..] {
                    let (neg, mag, atomic) = base.signed_parts(&v[i]);
                    let mono = univariate_monomial(var, i);
                    let s = render_term(&mag, atomic, &mono);
                    (neg, s, true)
                } else {
                    (false, self.render(x), false)
                }
            }
            (RingKind::QuotientField { .. }, Elem::Poly(_)) => {
                let poly = match self.kind() {
                    RingKind::QuotientField { poly, .. } => poly,
                    _ => unreachable!(),
                };
                poly.signed_parts(x)
            }
            (RingKind::FractionField { poly }, Elem::Frac(b)) => {
                let k = self.coefficient_ring().unwrap();
                if b.1.len() == 1 && k.is_one(&b.1[0]) {
                    poly.signed_parts(&Elem::Poly(b.0.clone()))
                } else {
                    (false, self.render(x), false)
                }
            }
            _ => (false, self.render(x), true),
        }
    }

    /// Canonical text form of an element.
    pub fn render(&self, x: &Elem) -> String {
        match (self.kind(), x) {
            (RingKind::Integers | RingKind::IntegersMod { .. }, Elem::Int(n)) => n.to_string(),
            (RingKind::Rationals, Elem::Rat(q)) => render_rational(q),
            (RingKind::PolyRing { base, var }, Elem::Poly(v)) => {
                let terms = v
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !base.is_zero(c))
                    .map(|(i, c)| (c.clone(), univariate_monomial(var, i)));
                render_sum(base, terms)
            }
            (RingKind::QuotientField { poly, .. }, Elem::Poly(_)) => poly.render(x),
            (RingKind::FractionField { poly }, Elem::Frac(b)) => {
                let k = self.coefficient_ring().unwrap();
                let num = poly.render(&Elem::Poly(b.0.clone()));
                if b.1.len() == 1 && k.is_one(&b.1[0]) {
                    return num;
                }
                let den = poly.render(&Elem::Poly(b.1.clone()));
                let wrap = |s: String, single: bool| if single { s } else { format!("({s})") };
                let num_single = b.0.iter().filter(|c| !k.is_zero(c)).count() <= 1;
                let den_single = b.1.iter().filter(|c| !k.is_zero(c)).count() <= 1;
                format!("{}/{}", wrap(num, num_single), wrap(den, den_single))
            }
            _ => format!("{x:?}"),
        }
    }
}

pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn univariate_monomial(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

fn render_term(magnitude: &str, atomic: bool, monomial: &str) -> String {
    if monomial.is_empty() {
        magnitude.to_string()
    } else if magnitude == "1" {
        monomial.to_string()
    } else if atomic {
        format!("{magnitude}*{monomial}")
    } else {
        format!("({magnitude})*{monomial}")
    }
}

/// Renders `Σ cᵢ·mᵢ` in the given term order with `" + "` / `" - "` separators.
pub(crate) fn render_sum(coeffs: &Ring, terms: impl Iterator<Item = (Elem, String)>) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let (neg, mag, atomic) = coeffs.signed_parts(&c);
        let term = render_term(&mag, atomic, &mono);
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

impl CommutativeRing for Ring {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Ring::zero(self)
    }
    fn one(&self) -> Elem {
        Ring::one(self)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::add(self, a, b)
    }
    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::sub(self, a, b)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::mul(self, a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Ring::neg(self, a)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        Ring::is_zero(self, a)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "ZZ"),
            RingKind::Rationals => write!(f, "QQ"),
            RingKind::IntegersMod { modulus } => write!(f, "ZZ/{modulus}"),
            RingKind::PolyRing { base, var } => write!(f, "{base}[{var}]"),
            RingKind::FractionField { poly } => {
                let RingKind::PolyRing { base, var } = poly.kind() else {
                    unreachable!()
                };
                write!(f, "{base}({var})")
            }
            RingKind::QuotientField { poly, modulus } => {
                write!(f, "{poly}/({})", poly.render(&Elem::Poly(modulus.clone())))
            }
        }
    }
}

impl Elem {
    pub fn int(n: impl Into<BigInt>) -> Elem {
        Elem::Int(n.into())
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(n) => Some(n),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3_alpha() -> (Ring, Ring) {
        let f3 = Ring::integers_mod(3).unwrap();
        let poly = Ring::poly(&f3, "alpha");
        (Ring::fraction_field(&poly).unwrap(), poly)
    }

    #[test]
    fn integer_and_modular_arithmetic() {
        let z = Ring::integers();
        assert_eq!(z.add(&z.from_i64(2), &z.from_i64(3)), z.from_i64(5));
        let z8 = Ring::integers_mod(8).unwrap();
        assert_eq!(z8.mul(&z8.from_i64(3), &z8.from_i64(3)), z8.from_i64(1));
        assert_eq!(z8.from_i64(-1), Elem::int(7));
    }

    #[test]
    fn fraction_field_cancels_to_canonical_form() {
        let (k, _) = f3_alpha();
        let a = k.generator().unwrap();
        let a1 = k.add(&a, &k.one());
        let q = k.mul(&a, &k.inverse(&a1).unwrap());
        let back = k.mul(&q, &a1);
        assert_eq!(back, a);
        assert_eq!(k.render(&back), "alpha");
        assert!(k.check(&back).is_ok());
    }

    #[test]
    fn unit_detection() {
        let z = Ring::integers();
        assert!(!z.is_unit(&z.from_i64(2)).unwrap());
        assert!(z.is_unit(&z.from_i64(-1)).unwrap());
        let z8 = Ring::integers_mod(8).unwrap();
        assert!(z8.is_unit(&z8.from_i64(3)).unwrap());
        assert!(!z8.is_unit(&z8.from_i64(4)).unwrap());
        let f3 = Ring::integers_mod(3).unwrap();
        let f3a = Ring::poly(&f3, "alpha");
        assert!(!f3a.is_unit(&f3a.generator().unwrap()).unwrap());
        assert!(f3a.is_unit(&f3a.from_i64(-1)).unwrap());
        let z4x = Ring::poly(&Ring::integers_mod(4).unwrap(), "x");
        assert!(matches!(z4x.is_unit(&z4x.one()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn inverses() {
        let q = Ring::rationals();
        let qi_poly = Ring::poly(&q, "i");
        let qi = Ring::quotient_field(&qi_poly, vec![q.one(), q.zero(), q.one()]).unwrap();
        let i = qi.generator().unwrap();
        assert_eq!(qi.inverse(&i).unwrap(), qi.neg(&i));
        let z = Ring::integers();
        assert_eq!(z.inverse(&z.from_i64(-1)).unwrap(), z.from_i64(-1));
        assert!(matches!(z.inverse(&z.from_i64(2)), Err(Error::Domain(_))));
        let z8 = Ring::integers_mod(8).unwrap();
        assert_eq!(z8.inverse(&z8.from_i64(3)).unwrap(), z8.from_i64(3));
    }

    #[test]
    fn reducible_quotient_modulus_has_non_invertible_elements() {
        let q = Ring::rationals();
        let p = Ring::poly(&q, "x");
        // x² - 1 = (x - 1)(x + 1)
        let r = Ring::quotient_field(&p, vec![q.from_i64(-1), q.zero(), q.one()]).unwrap();
        let x1 = r.sub(&r.generator().unwrap(), &r.one());
        assert!(!r.is_unit(&x1).unwrap());
        assert!(r.inverse(&x1).is_err());
    }

    #[test]
    fn invalid_descriptors() {
        assert!(Ring::integers_mod(1).is_err());
        let zx = Ring::poly(&Ring::integers(), "x");
        assert!(Ring::fraction_field(&zx).is_err());
        let q = Ring::rationals();
        let qx = Ring::poly(&q, "x");
        assert!(Ring::quotient_field(&qx, vec![q.one(), q.from_i64(2)]).is_err());
    }

    #[test]
    fn rendering() {
        let (k, poly) = f3_alpha();
        let a = poly.generator().unwrap();
        let e = poly.add(&poly.mul(&a, &a), &poly.one());
        assert_eq!(poly.render(&e), "alpha^2 + 1");
        let frac = k.fraction(&a, &e).unwrap();
        assert_eq!(k.render(&frac), "alpha/(alpha^2 + 1)");
        let q = Ring::rationals();
        assert_eq!(
            q.render(&q.from_rational(&BigRational::new(6.into(), (-4).into())).unwrap()),
            "-3/2"
        );
    }

    #[test]
    fn enumeration_of_finite_rings() {
        let f2 = Ring::integers_mod(2).unwrap();
        let f4 = Ring::quotient_field(&Ring::poly(&f2, "w"), vec![f2.one(), f2.one(), f2.one()]).unwrap();
        let elems = f4.elements().unwrap();
        assert_eq!(elems.len(), 4);
        assert!(elems.iter().all(|e| f4.check(e).is_ok()));
        assert!(Ring::integers().elements().is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u32> = (0..60).filter(|&n| is_probable_prime(&BigInt::from(n))).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_probable_prime(&BigInt::from(1_000_000_007u64)));
        assert!(!is_probable_prime(&BigInt::from(561)));
    }
}
