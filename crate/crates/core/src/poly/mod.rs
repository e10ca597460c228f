//! Sparse multivariate polynomials over a [`Ring`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! (total degree first) and then lexicographic on the exponent vector. Iteration,
//! printing and serialization walk that order from the largest monomial down, so
//! the rendering of a polynomial is byte-stable.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{domain, structural, Error, Result};
use crate::ring::{render_sum, CommutativeRing, Elem, Ring, RingHom, RingValue};

pub use parse::parse_poly;

/// Exponent vector, one entry per variable of the context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient ring plus ordered variable names. Names only affect printing, but
/// polynomials from contexts with different names are still never mixed.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyContext {
    coeffs: Ring,
    names: Vec<String>,
}

/// Shared handle to a [`PolyContext`]; the ring `coeffs[names…]`.
#[derive(Clone, Debug, Eq)]
pub struct PolyRing(Arc<PolyContext>);

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl std::hash::Hash for PolyRing {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

/// Default variable names `x1 … xn`.
pub fn indexed_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl PolyRing {
    pub fn new(coeffs: &Ring, names: Vec<String>) -> Self {
        PolyRing(Arc::new(PolyContext {
            coeffs: coeffs.clone(),
            names,
        }))
    }

    pub fn coefficient_ring(&self) -> &Ring {
        &self.0.coeffs
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> MultiPoly {
        MultiPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Elem) -> MultiPoly {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn one(&self) -> MultiPoly {
        self.constant(self.0.coeffs.one())
    }

    pub fn from_i64(&self, n: i64) -> MultiPoly {
        self.constant(self.0.coeffs.from_i64(n))
    }

    pub fn var(&self, index: usize) -> MultiPoly {
        assert!(index < self.nvars(), "variable index out of range");
        self.term(Monomial::var(self.nvars(), index), self.0.coeffs.one())
    }

    pub fn vars(&self) -> Vec<MultiPoly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn term(&self, m: Monomial, c: Elem) -> MultiPoly {
        assert_eq!(m.0.len(), self.nvars(), "monomial arity mismatch");
        let mut terms = BTreeMap::new();
        if !self.0.coeffs.is_zero(&c) {
            terms.insert(m, c);
        }
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Elem)>) -> Result<MultiPoly> {
        let k = &self.0.coeffs;
        let mut map: BTreeMap<Monomial, Elem> = BTreeMap::new();
        for (m, c) in terms {
            if m.0.len() != self.nvars() {
                return Err(structural("monomial arity does not match the context"));
            }
            k.check(&c)?;
            match map.get_mut(&m) {
                Some(e) => *e = k.add(e, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !k.is_zero(c));
        Ok(MultiPoly {
            ring: self.clone(),
            terms: map,
        })
    }

    /// Same variables over another coefficient ring.
    pub fn with_coefficients(&self, coeffs: &Ring) -> PolyRing {
        PolyRing::new(coeffs, self.0.names.clone())
    }

    pub fn parse(&self, text: &str) -> Result<MultiPoly> {
        parse_poly(self, text)
    }
}

impl CommutativeRing for PolyRing {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        PolyRing::zero(self)
    }
    fn one(&self) -> MultiPoly {
        PolyRing::one(self)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add_unchecked(b)
    }
    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.add_unchecked(&b.neg())
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.mul_unchecked(b)
    }
    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }
    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }
}

/// A polynomial in `ring`. The zero polynomial has no terms.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, Elem>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

/// Arithmetic operations accepted by [`MultiPoly::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl MultiPoly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn coefficient_ring(&self) -> &Ring {
        &self.ring.0.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.coefficient_ring().zero())
    }

    pub fn constant_term(&self) -> Elem {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    /// The coefficient when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Elem> {
        match self.terms.len() {
            0 => Some(self.coefficient_ring().zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn same_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(structural("polynomials live in different contexts"))
        }
    }

    pub fn arith(&self, op: PolyOp, other: &MultiPoly) -> Result<MultiPoly> {
        self.same_ring(other)?;
        Ok(match op {
            PolyOp::Add => self.add_unchecked(other),
            PolyOp::Sub => self.add_unchecked(&other.neg()),
            PolyOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.arith(PolyOp::Add, other)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.arith(PolyOp::Sub, other)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.arith(PolyOp::Mul, other)
    }

    pub(crate) fn add_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        let k = self.coefficient_ring();
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.terms.clone(), &other.terms)
        } else {
            (other.terms.clone(), &self.terms)
        };
        for (m, c) in small {
            match big.get_mut(m) {
                Some(e) => {
                    let s = k.add(e, c);
                    if k.is_zero(&s) {
                        big.remove(m);
                    } else {
                        *e = s;
                    }
                }
                None => {
                    big.insert(m.clone(), c.clone());
                }
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: big,
        }
    }

    pub fn neg(&self) -> MultiPoly {
        let k = self.coefficient_ring();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &MultiPoly) -> MultiPoly {
        let k = self.coefficient_ring();
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut acc: HashMap<Monomial, Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let p = k.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = k.add(e, &p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: acc.into_iter().filter(|(_, c)| !k.is_zero(c)).collect(),
        }
    }

    /// Multiplies every coefficient by a scalar of the coefficient ring.
    pub fn scale(&self, s: &Elem) -> MultiPoly {
        let k = self.coefficient_ring();
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), k.mul(c, s)))
                .filter(|(_, c)| !k.is_zero(c))
                .collect(),
        }
    }

    pub fn try_scale(&self, s: &RingValue) -> Result<MultiPoly> {
        if s.ring() != self.coefficient_ring() {
            return Err(structural("scalar is not in the coefficient ring"));
        }
        Ok(self.scale(s.elem()))
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Value at a point given as one coefficient-ring element per variable.
    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.ring.nvars() {
            return Err(structural(format!(
                "point has {} coordinates, the context has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        let k = self.coefficient_ring();
        // powers[i][e] = point[i]^e, built on demand
        let mut powers: Vec<Vec<Elem>> = point.iter().map(|_| vec![k.one()]).collect();
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = k.mul(powers[i].last().unwrap(), &point[i]);
                    powers[i].push(next);
                }
                t = k.mul(&t, &powers[i][e]);
            }
            acc = k.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Value at a point given by variable name.
    pub fn evaluate_named(&self, point: &HashMap<String, Elem>) -> Result<Elem> {
        let coords = self
            .ring
            .names()
            .iter()
            .map(|n| {
                point
                    .get(n)
                    .cloned()
                    .ok_or_else(|| structural(format!("no value assigned to {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.evaluate(&coords)
    }

    /// Simultaneous substitution `xᵢ ↦ subs[i]`; variables without an entry are kept.
    /// The substituted polynomials may live in another context over the same coefficients.
    pub fn substitute(&self, subs: &[Option<MultiPoly>], target: &PolyRing) -> Result<MultiPoly> {
        if subs.len() != self.ring.nvars() {
            return Err(structural("one substitution slot per variable is required"));
        }
        if target.coefficient_ring() != self.coefficient_ring() {
            return Err(structural("substitution target has other coefficients"));
        }
        let images: Vec<MultiPoly> = subs
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Some(p) if p.ring == *target => Ok(p.clone()),
                Some(_) => Err(structural("substituted polynomial is in another context")),
                None => {
                    if target == &self.ring {
                        Ok(target.var(i))
                    } else {
                        Err(structural(
                            "unsubstituted variables need the target context to be the source",
                        ))
                    }
                }
            })
            .collect::<Result<_>>()?;
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|_| vec![target.one()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e]);
            }
            acc = acc.add_unchecked(&t);
        }
        Ok(acc)
    }

    /// `Some(d)` when every term has total degree `d`. The zero polynomial has no degree.
    pub fn homogeneous_degree(&self) -> Result<Option<u64>> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees
            .next()
            .ok_or_else(|| domain("the zero polynomial has no degree"))?;
        Ok(degrees.all(|d| d == first).then_some(first))
    }

    pub fn is_homogeneous(&self) -> Result<bool> {
        Ok(self.homogeneous_degree()?.is_some())
    }

    /// Applies a ring map to every coefficient; terms sent to zero are dropped.
    pub fn map_coefficients(&self, hom: &RingHom) -> Result<MultiPoly> {
        if hom.source() != self.coefficient_ring() {
            return Err(structural(format!(
                "map source {} is not the coefficient ring {}",
                hom.source(),
                self.coefficient_ring()
            )));
        }
        let target = self.ring.with_coefficients(hom.target());
        let k = hom.target();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let img = hom.apply(c)?;
            if !k.is_zero(&img) {
                terms.insert(m.clone(), img);
            }
        }
        Ok(MultiPoly { ring: target, terms })
    }

    /// Same polynomial viewed in a context with the same coefficient ring and arity.
    pub fn rename(&self, target: &PolyRing) -> Result<MultiPoly> {
        if target.coefficient_ring() != self.coefficient_ring() || target.nvars() != self.ring.nvars() {
            return Err(structural("rename needs the same coefficients and arity"));
        }
        Ok(MultiPoly {
            ring: target.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Flips the overall sign so that the leading coefficient is positive (ℤ and ℚ only).
    pub fn normalize_sign(&self) -> MultiPoly {
        match self.leading_term() {
            Some((_, c)) if self.coefficient_ring().signed_parts(c).0 => self.neg(),
            _ => self.clone(),
        }
    }

    /// Equality up to multiplication by `-1`.
    pub fn eq_up_to_sign(&self, other: &MultiPoly) -> bool {
        self == other || *self == other.neg()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.names();
        let terms = self.terms().map(|(m, c)| (c.clone(), m.render(names)));
        f.write_str(&render_sum(self.coefficient_ring(), terms))
    }
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<MultiPoly>();
    check::<Error>();
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zring(names: &[&str]) -> PolyRing {
        PolyRing::new(&Ring::integers(), names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn difference_of_squares() {
        let r = zring(&["x1", "x2"]);
        let (x1, x2) = (r.var(0), r.var(1));
        let p = x1.try_add(&x2).unwrap().try_mul(&x1.try_sub(&x2).unwrap()).unwrap();
        assert_eq!(p.to_string(), "x1^2 - x2^2");
        assert!(p.try_add(&p.neg()).unwrap().is_zero());
    }

    #[test]
    fn graded_lex_rendering() {
        let r = zring(&["b", "c"]);
        let p = r.parse("-20*c^3 - 31*b*c^2 - 15*b^2*c - 2*b^3").unwrap();
        assert_eq!(p.to_string(), "-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3");
        let q = r.parse("1 + b + c^2").unwrap();
        assert_eq!(q.to_string(), "c^2 + b + 1");
    }

    #[test]
    fn evaluation() {
        let r = zring(&["b", "c"]);
        let p = r.parse("-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3").unwrap();
        assert_eq!(p.evaluate(&[Elem::int(1), Elem::int(1)]).unwrap(), Elem::int(-68));
        let q = r.parse("3*b + 7").unwrap();
        assert_eq!(q.evaluate(&[Elem::int(0), Elem::int(0)]).unwrap(), Elem::int(7));
        assert!(matches!(q.evaluate(&[Elem::int(0)]), Err(Error::Structural(_))));
        let mut named = HashMap::new();
        named.insert("b".to_string(), Elem::int(2));
        assert!(q.evaluate_named(&named).is_err());
        named.insert("c".to_string(), Elem::int(5));
        assert_eq!(q.evaluate_named(&named).unwrap(), Elem::int(13));
    }

    #[test]
    fn substitution() {
        let r = zring(&["x1", "x2"]);
        let p = r.parse("x2^2").unwrap();
        let s = p.substitute(&[None, Some(r.parse("x2 + x1").unwrap())], &r).unwrap();
        assert_eq!(s, r.parse("x2^2 + 2*x1*x2 + x1^2").unwrap());
        assert_eq!(p.substitute(&[None, None], &r).unwrap(), p);
        let v = r.parse("x1 - x2").unwrap();
        assert!(v.substitute(&[Some(r.var(1)), None], &r).unwrap().is_zero());
    }

    #[test]
    fn homogeneity() {
        let r = zring(&["x1"]);
        assert_eq!(r.parse("x1 + 1").unwrap().homogeneous_degree().unwrap(), None);
        assert!(matches!(r.zero().homogeneous_degree(), Err(Error::Domain(_))));
        let s = zring(&["b", "c"]);
        let p = s.parse("-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3").unwrap();
        assert_eq!(p.homogeneous_degree().unwrap(), Some(3));
    }

    #[test]
    fn coefficient_maps() {
        let r = zring(&["b", "c"]);
        let p = r.parse("-2*b^3 - 15*b^2*c - 31*b*c^2 - 20*c^3").unwrap();
        let p2 = p.map_coefficients(&RingHom::reduction(2).unwrap()).unwrap();
        assert_eq!(p2, p2.ring().parse("b^2*c + b*c^2").unwrap());
        let q = r.parse("5*b^3 - 7*c^3").unwrap();
        let q7 = q.map_coefficients(&RingHom::reduction(7).unwrap()).unwrap();
        assert_eq!(q7.to_string(), "5*b^3");
        let id = RingHom::identity(&Ring::integers());
        assert_eq!(p.map_coefficients(&id).unwrap(), p);
    }

    #[test]
    fn frobenius_cube_in_characteristic_three() {
        let f3 = Ring::integers_mod(3).unwrap();
        let k = Ring::fraction_field(&Ring::poly(&f3, "beta")).unwrap();
        let r = PolyRing::new(&k, vec!["b".into(), "c".into()]);
        let cube = r.parse("(b - c*beta)^3").unwrap();
        assert_eq!(cube, r.parse("b^3 - c^3*beta^3").unwrap());
    }

    #[test]
    fn mismatched_contexts() {
        let a = zring(&["x"]);
        let b = PolyRing::new(&Ring::rationals(), vec!["x".into()]);
        assert!(matches!(a.var(0).try_add(&b.var(0)), Err(Error::Structural(_))));
    }

    #[test]
    fn zero_coefficients_are_dropped_mod_m() {
        let z4 = Ring::integers_mod(4).unwrap();
        let r = PolyRing::new(&z4, vec!["x".into()]);
        let p = r.parse("2*x + 2").unwrap();
        let sq = p.try_mul(&p).unwrap();
        assert!(sq.is_zero());
        assert_eq!(sq.to_string(), "0");
    }
}
