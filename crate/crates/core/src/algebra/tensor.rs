use crate::linalg::Matrix;
use crate::ring::CommutativeRing;

/// Multiplication table `eᵢ·eⱼ = Σₖ c[i][j][k]·eₖ` with a unit vector, over any
/// [`CommutativeRing`]. [`super::FreeAlgebra`] keeps one over its base ring; the
/// monogenicity code lifts it to polynomial coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<E> {
    n: usize,
    c: Vec<E>,
    unit: Vec<E>,
    // nonzero entries of eᵢ·eⱼ, per (i, j)
    sparse: Vec<Vec<(usize, E)>>,
    // Tr(eᵢ) = Σⱼ c[i][j][j]
    traces: Vec<E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Tensor<E> {
    pub(crate) fn new<R: CommutativeRing<Elem = E>>(ring: &R, n: usize, c: Vec<E>, unit: Vec<E>) -> Self {
        assert_eq!(c.len(), n * n * n);
        assert_eq!(unit.len(), n);
        let sparse = (0..n * n)
            .map(|ij| {
                (0..n)
                    .filter(|&k| !ring.is_zero(&c[ij * n + k]))
                    .map(|k| (k, c[ij * n + k].clone()))
                    .collect()
            })
            .collect();
        let traces = (0..n)
            .map(|i| (0..n).fold(ring.zero(), |acc, j| ring.add(&acc, &c[(i * n + j) * n + j])))
            .collect();
        Self {
            n,
            c,
            unit,
            sparse,
            traces,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &E {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn unit(&self) -> &[E] {
        &self.unit
    }

    /// `Tr(eᵢ)` for each basis vector.
    pub fn basis_traces(&self) -> &[E] {
        &self.traces
    }

    /// The same table with every entry pushed through `f`.
    pub fn map<R: CommutativeRing>(&self, ring: &R, f: impl Fn(&E) -> R::Elem) -> Tensor<R::Elem> {
        Tensor::new(
            ring,
            self.n,
            self.c.iter().map(&f).collect(),
            self.unit.iter().map(&f).collect(),
        )
    }

    pub fn try_map<R: CommutativeRing, Err>(
        &self,
        ring: &R,
        f: impl Fn(&E) -> Result<R::Elem, Err>,
    ) -> Result<Tensor<R::Elem>, Err> {
        Ok(Tensor::new(
            ring,
            self.n,
            self.c.iter().map(&f).collect::<Result<_, _>>()?,
            self.unit.iter().map(&f).collect::<Result<_, _>>()?,
        ))
    }

    pub fn mul<R: CommutativeRing<Elem = E>>(&self, ring: &R, x: &[E], y: &[E]) -> Vec<E> {
        let n = self.n;
        let mut out = vec![ring.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if ring.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if ring.is_zero(yj) || self.sparse[i * n + j].is_empty() {
                    continue;
                }
                let p = ring.mul(xi, yj);
                for (k, c) in &self.sparse[i * n + j] {
                    out[*k] = ring.add(&out[*k], &ring.mul(&p, c));
                }
            }
        }
        out
    }

    /// Matrix of multiplication by `x`: column `i` holds the coordinates of `x·eᵢ`.
    pub fn mult_matrix<R: CommutativeRing<Elem = E>>(&self, ring: &R, x: &[E]) -> Matrix<E> {
        let n = self.n;
        let mut m = Matrix::from_fn(n, n, |_, _| ring.zero());
        for (a, xa) in x.iter().enumerate() {
            if ring.is_zero(xa) {
                continue;
            }
            for i in 0..n {
                for (j, c) in &self.sparse[a * n + i] {
                    let v = ring.add(m.get(*j, i), &ring.mul(xa, c));
                    m.set(*j, i, v);
                }
            }
        }
        m
    }

    pub fn trace<R: CommutativeRing<Elem = E>>(&self, ring: &R, x: &[E]) -> E {
        x.iter()
            .zip(&self.traces)
            .fold(ring.zero(), |acc, (xa, ta)| ring.add(&acc, &ring.mul(xa, ta)))
    }

    /// `1, x, x², …, x^(count-1)`.
    pub fn powers<R: CommutativeRing<Elem = E>>(&self, ring: &R, x: &[E], count: usize) -> Vec<Vec<E>> {
        let mut out: Vec<Vec<E>> = Vec::with_capacity(count);
        if count == 0 {
            return out;
        }
        out.push(self.unit.clone());
        for _ in 1..count {
            let next = self.mul(ring, out.last().unwrap(), x);
            out.push(next);
        }
        out
    }
}
