use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::FreeAlgebra;
use crate::error::{Error, Result};
use crate::ring::{Elem, ENUMERATION_LIMIT};

/// The `A`-subalgebra generated by some elements, found by exhaustive enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Closure {
    /// Whether the generated subalgebra is all of `B`.
    pub spans_all: bool,
    /// Number of elements of the generated subalgebra.
    pub size: u64,
    /// Number of elements of `B`.
    pub total: u64,
}

impl FreeAlgebra {
    /// Brute-force check of `B = A[θ₁, …, θₖ]` over a finite base ring.
    ///
    /// Starting from `1`, every new element `v` is added to the module `S` as `S + A·v`
    /// and `v·θⱼ` is queued. Elements already in `S` are skipped, since their products
    /// with the generators are already spanned.
    pub fn subalgebra_closure(&self, gens: &[Vec<Elem>]) -> Result<Closure> {
        for g in gens {
            self.check_elem(g)?;
        }
        let k = self.base();
        let card = k
            .cardinality()
            .ok_or_else(|| Error::Unsupported(format!("subalgebra closure needs a finite base ring, not {k}")))?;
        let total = card.pow(self.rank() as u32);
        if total > BigUint::from(ENUMERATION_LIMIT) {
            return Err(Error::ResourceGuard {
                what: "subalgebra closure".into(),
                required: format!("{total} algebra elements"),
                limit: ENUMERATION_LIMIT.to_string(),
            });
        }
        let total = total.to_u64().unwrap();
        let scalars = k.elements()?;
        let n = self.rank();
        let t = self.tensor();
        let mut span: HashSet<Vec<Elem>> = HashSet::new();
        span.insert(vec![k.zero(); n]);
        let mut queue = vec![self.unit().to_vec()];
        while let Some(v) = queue.pop() {
            if span.contains(&v) {
                continue;
            }
            let mut grown = HashSet::with_capacity(span.len() * scalars.len());
            for s in &span {
                for a in &scalars {
                    let w: Vec<Elem> = s.iter().zip(&v).map(|(si, vi)| k.add(si, &k.mul(a, vi))).collect();
                    grown.insert(w);
                }
            }
            span = grown;
            for g in gens {
                queue.push(t.mul(k, &v, g));
            }
            if span.len() as u64 == total {
                break;
            }
        }
        Ok(Closure {
            spans_all: span.len() as u64 == total,
            size: span.len() as u64,
            total,
        })
    }
}
