use num_bigint::BigInt;
use num_integer::Integer;

use super::{dense, Elem, Ring, RingKind};
use crate::error::{domain, structural, unsupported, Result};

/// How a [`RingHom`] acts.
#[derive(Clone, Debug, PartialEq)]
pub enum MapRule {
    /// The structural map: ℤ → ℤ/m reduction, ℤ → ℚ inclusion, ℤ/m → ℤ/d for d | m,
    /// inclusion of a ring into rings built over it, and the coefficientwise lift of any
    /// of these through polynomial, fraction and quotient constructors that share a
    /// variable name.
    Canonical,
    /// Coefficients mapped canonically, the adjoined variable of the source sent to
    /// `generator_image` (e.g. `𝔽₃(α) → 𝔽₃(β)`, `α ↦ β³`).
    Substitution { generator_image: Elem },
}

/// A ring homomorphism between two descriptors.
#[derive(Clone, Debug, PartialEq)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    rule: MapRule,
}

impl RingHom {
    pub fn canonical(source: &Ring, target: &Ring) -> Result<Self> {
        let hom = Self {
            source: source.clone(),
            target: target.clone(),
            rule: MapRule::Canonical,
        };
        // probe: fails early on unsupported pairs
        hom.apply(&source.one())?;
        if let Some(g) = source.generator() {
            hom.apply(&g)?;
        }
        if let Some(m) = source.quotient_modulus() {
            // the image of the modulus must vanish
            let RingKind::QuotientField { poly, .. } = source.kind() else {
                unreachable!()
            };
            let image = canonical_map(poly, target, &Elem::Poly(m.to_vec()))?;
            if !target.is_zero(&image) {
                return Err(domain(format!("modulus of {source} does not vanish in {target}")));
            }
        }
        Ok(hom)
    }

    /// Reduction ℤ → ℤ/m.
    pub fn reduction(modulus: impl Into<BigInt>) -> Result<Self> {
        Self::canonical(&Ring::integers(), &Ring::integers_mod(modulus)?)
    }

    pub fn substitution(source: &Ring, target: &Ring, generator_image: Elem) -> Result<Self> {
        target.check(&generator_image)?;
        let k = source
            .coefficient_ring()
            .ok_or_else(|| structural(format!("{source} has no adjoined variable to substitute")))?;
        // the coefficient ring must map canonically into the target
        canonical_map(k, target, &k.one())?;
        if let Some(m) = source.quotient_modulus() {
            let image = eval_dense_at(k, target, m, &generator_image)?;
            if !target.is_zero(&image) {
                return Err(domain(format!("substitution does not respect the modulus of {source}")));
            }
        }
        Ok(Self {
            source: source.clone(),
            target: target.clone(),
            rule: MapRule::Substitution { generator_image },
        })
    }

    pub fn identity(ring: &Ring) -> Self {
        Self {
            source: ring.clone(),
            target: ring.clone(),
            rule: MapRule::Canonical,
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn rule(&self) -> &MapRule {
        &self.rule
    }

    pub fn apply(&self, x: &Elem) -> Result<Elem> {
        match &self.rule {
            MapRule::Canonical => canonical_map(&self.source, &self.target, x),
            MapRule::Substitution { generator_image } => {
                let k = self.source.coefficient_ring().unwrap();
                match (self.source.kind(), x) {
                    (RingKind::PolyRing { .. } | RingKind::QuotientField { .. }, Elem::Poly(v)) => {
                        eval_dense_at(k, &self.target, v, generator_image)
                    }
                    (RingKind::FractionField { .. }, Elem::Frac(b)) => {
                        let num = eval_dense_at(k, &self.target, &b.0, generator_image)?;
                        let den = eval_dense_at(k, &self.target, &b.1, generator_image)?;
                        let inv = self.target.inverse(&den).map_err(|_| {
                            domain(format!(
                                "denominator {} maps to the non-unit {}",
                                self.source.render(&Elem::Poly(b.1.clone())),
                                self.target.render(&den)
                            ))
                        })?;
                        Ok(self.target.mul(&num, &inv))
                    }
                    _ => Err(structural("payload does not match the source ring")),
                }
            }
        }
    }
}

fn eval_dense_at(k: &Ring, target: &Ring, v: &[Elem], at: &Elem) -> Result<Elem> {
    let mut acc = target.zero();
    for c in v.iter().rev() {
        let c = canonical_map(k, target, c)?;
        acc = target.add(&target.mul(&acc, at), &c);
    }
    Ok(acc)
}

fn is_rational_algebra(ring: &Ring) -> bool {
    match ring.kind() {
        RingKind::Rationals => true,
        _ => ring.coefficient_ring().is_some_and(is_rational_algebra),
    }
}

fn canonical_map(source: &Ring, target: &Ring, x: &Elem) -> Result<Elem> {
    if source == target {
        return Ok(x.clone());
    }
    let fail = || unsupported(format!("no canonical map from {source} to {target}"));
    match (source.kind(), target.kind()) {
        (RingKind::Integers, _) => Ok(target.from_bigint(x.as_bigint().unwrap())),
        (RingKind::Rationals, _) if is_rational_algebra(target) => {
            let Elem::Rat(q) = x else { unreachable!() };
            target.from_rational(q)
        }
        (RingKind::IntegersMod { modulus: m }, RingKind::IntegersMod { modulus: d }) if m.is_multiple_of(d) => {
            Ok(target.from_bigint(x.as_bigint().unwrap()))
        }
        (RingKind::IntegersMod { modulus: m }, _)
            if target.coefficient_ring().is_some() && m.is_multiple_of(&target.characteristic()) =>
        {
            let k = target.coefficient_ring().unwrap();
            Ok(target.embed_constant(&canonical_map(source, k, x)?))
        }
        (RingKind::PolyRing { base: sb, var: sv }, RingKind::PolyRing { base: tb, var: tv }) if sv == tv => {
            let Elem::Poly(v) = x else { unreachable!() };
            let mapped = v.iter().map(|c| canonical_map(sb, tb, c)).collect::<Result<Vec<_>>>()?;
            Ok(Elem::Poly(dense::trim(tb, mapped)))
        }
        (RingKind::PolyRing { var: sv, .. }, RingKind::FractionField { poly })
        | (RingKind::PolyRing { var: sv, .. }, RingKind::QuotientField { poly, .. })
            if poly.variable_name() == Some(sv.as_str()) =>
        {
            let Elem::Poly(_) = x else { unreachable!() };
            let img = canonical_map(source, poly, x)?;
            match target.kind() {
                RingKind::FractionField { .. } => target.fraction(&img, &poly.one()),
                _ => {
                    let Elem::Poly(v) = img else { unreachable!() };
                    let k = target.coefficient_ring().unwrap();
                    Ok(Elem::Poly(dense::rem(k, &v, target.quotient_modulus().unwrap())?))
                }
            }
        }
        (RingKind::FractionField { poly: sp }, RingKind::FractionField { poly: tp })
            if sp.variable_name() == tp.variable_name() =>
        {
            let Elem::Frac(b) = x else { unreachable!() };
            let num = canonical_map(sp, tp, &Elem::Poly(b.0.clone()))?;
            let den = canonical_map(sp, tp, &Elem::Poly(b.1.clone()))?;
            if tp.is_zero(&den) {
                return Err(domain("denominator maps to zero"));
            }
            target.fraction(&num, &den)
        }
        (RingKind::QuotientField { poly: sp, .. }, RingKind::QuotientField { poly: tp, modulus })
            if sp.variable_name() == tp.variable_name() =>
        {
            let Elem::Poly(_) = x else { unreachable!() };
            let Elem::Poly(v) = canonical_map(sp, tp, x)? else {
                unreachable!()
            };
            let k = target.coefficient_ring().unwrap();
            Ok(Elem::Poly(dense::rem(k, &v, modulus)?))
        }
        // inclusion of a ring into something built over it
        _ => match target.coefficient_ring() {
            Some(k) => Ok(target.embed_constant(&canonical_map(source, k, x)?)),
            None => Err(fail()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn f3_fraction(var: &str) -> Ring {
        let f3 = Ring::integers_mod(3).unwrap();
        Ring::fraction_field(&Ring::poly(&f3, var)).unwrap()
    }

    #[test]
    fn reduction_and_inclusion() {
        let h = RingHom::reduction(2).unwrap();
        assert_eq!(h.apply(&Elem::int(31)).unwrap(), Elem::int(1));
        let q = Ring::rationals();
        let h = RingHom::canonical(&Ring::integers(), &q).unwrap();
        assert_eq!(
            h.apply(&Elem::int(5)).unwrap(),
            Elem::Rat(BigRational::from_integer(5.into()))
        );
    }

    #[test]
    fn cube_substitution_between_function_fields() {
        let src = f3_fraction("alpha");
        let tgt = f3_fraction("beta");
        let beta = tgt.generator().unwrap();
        let beta3 = tgt.pow(&beta, 3);
        let h = RingHom::substitution(&src, &tgt, beta3.clone()).unwrap();
        let a1 = src.add(&src.generator().unwrap(), &src.one());
        let img = h.apply(&a1).unwrap();
        assert_eq!(img, tgt.add(&beta3, &tgt.one()));
        assert_eq!(tgt.render(&img), "beta^3 + 1");
    }

    #[test]
    fn substitution_into_non_unit_denominator_fails() {
        // 𝔽₃[α] → 𝔽₃[β] with α ↦ β: 1/α has no image in a polynomial ring
        let f3 = Ring::integers_mod(3).unwrap();
        let src = f3_fraction("alpha");
        let tgt = Ring::poly(&f3, "beta");
        let h = RingHom::substitution(&src, &tgt, tgt.generator().unwrap()).unwrap();
        let inv = src.inverse(&src.generator().unwrap()).unwrap();
        assert!(matches!(h.apply(&inv), Err(crate::Error::Domain(_))));
    }

    #[test]
    fn unsupported_pairs() {
        let z5 = Ring::integers_mod(5).unwrap();
        assert!(RingHom::canonical(&z5, &Ring::integers()).is_err());
        assert!(RingHom::canonical(&Ring::rationals(), &Ring::integers()).is_err());
    }

    #[test]
    fn quotient_lift_checks_modulus() {
        let z = Ring::integers();
        let q = Ring::rationals();
        let zi = Ring::poly(&z, "i");
        let qi = Ring::quotient_field(&Ring::poly(&q, "i"), vec![q.one(), q.zero(), q.one()]).unwrap();
        let h = RingHom::canonical(&zi, &qi).unwrap();
        let i = zi.generator().unwrap();
        let i2 = zi.mul(&i, &i);
        assert_eq!(h.apply(&i2).unwrap(), qi.from_i64(-1));
    }
}
