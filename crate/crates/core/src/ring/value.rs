use std::fmt;

use super::{Elem, Ring};
use crate::error::{structural, Result};

/// An element together with the ring it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingValue {
    ring: Ring,
    elem: Elem,
}

impl RingValue {
    /// Wraps a payload after checking it is canonical for `ring`.
    pub fn new(ring: &Ring, elem: Elem) -> Result<Self> {
        ring.check(&elem)?;
        Ok(Self {
            ring: ring.clone(),
            elem,
        })
    }

    pub(crate) fn from_parts(ring: &Ring, elem: Elem) -> Self {
        debug_assert!(ring.check(&elem).is_ok());
        Self {
            ring: ring.clone(),
            elem,
        }
    }

    pub fn from_i64(ring: &Ring, n: i64) -> Self {
        Self::from_parts(ring, ring.from_i64(n))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    pub fn into_elem(self) -> Elem {
        self.elem
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(structural(format!(
                "descriptor mismatch: {} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_parts(&self.ring, self.ring.add(&self.elem, &other.elem)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_parts(&self.ring, self.ring.sub(&self.elem, &other.elem)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self::from_parts(&self.ring, self.ring.mul(&self.elem, &other.elem)))
    }

    pub fn neg(&self) -> Self {
        Self::from_parts(&self.ring, self.ring.neg(&self.elem))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.elem)
    }

    pub fn is_one(&self) -> bool {
        self.ring.is_one(&self.elem)
    }

    pub fn is_unit(&self) -> Result<bool> {
        self.ring.is_unit(&self.elem)
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::from_parts(&self.ring, self.ring.inverse(&self.elem)?))
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.render(&self.elem))
    }
}
