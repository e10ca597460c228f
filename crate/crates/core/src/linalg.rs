//! Dense matrices over any [`CommutativeRing`], with division-free characteristic
//! polynomials and determinants (Berkowitz), plus exact elimination for ℤ and fields.

use num_integer::Integer;

use crate::error::{domain, structural, Result};
use crate::ring::{CommutativeRing, Elem, Ring, RingKind};

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(structural("ragged matrix rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn identity<R: CommutativeRing<Elem = E>>(ring: &R, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<F: Clone>(&self, f: impl FnMut(&E) -> Result<F>) -> Result<Matrix<F>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Submatrix on the given columns (all rows).
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }
}

pub fn mat_mul<R: CommutativeRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if a.cols != b.rows {
        return Err(structural(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    Ok(Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = ring.zero();
        for k in 0..a.cols {
            acc = ring.add(&acc, &ring.mul(a.get(i, k), b.get(k, j)));
        }
        acc
    }))
}

pub fn mat_vec<R: CommutativeRing>(ring: &R, a: &Matrix<R::Elem>, v: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if a.cols != v.len() {
        return Err(structural("matrix and vector sizes differ"));
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i)
                .iter()
                .zip(v)
                .fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
        })
        .collect())
}

fn require_square<E: Clone>(m: &Matrix<E>) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(structural(format!("{}x{} matrix is not square", m.rows, m.cols)))
    }
}

/// Coefficients `[1, c₁, …, cₙ]` of `det(t·I − A) = tⁿ + c₁tⁿ⁻¹ + … + cₙ`, computed
/// without division.
pub fn charpoly<R: CommutativeRing>(ring: &R, a: &Matrix<R::Elem>) -> Result<Vec<R::Elem>> {
    require_square(a)?;
    let n = a.rows;
    let mut coeffs = vec![ring.one()];
    for k in 0..n {
        // Toeplitz column [1, -a_kk, -R·C, -R·A·C, …, -R·A^(k-2)·C] for the leading k×k block
        let mut col = Vec::with_capacity(k + 2);
        col.push(ring.one());
        col.push(ring.neg(a.get(k, k)));
        let mut v: Vec<R::Elem> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for step in 0..k {
            let rc = (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(a.get(k, j), &v[j])));
            col.push(ring.neg(&rc));
            if step + 1 < k {
                v = (0..k)
                    .map(|i| (0..k).fold(ring.zero(), |acc, j| ring.add(&acc, &ring.mul(a.get(i, j), &v[j]))))
                    .collect();
            }
        }
        let mut next = Vec::with_capacity(k + 2);
        for i in 0..=k + 1 {
            let mut acc = ring.zero();
            for (j, c) in coeffs.iter().enumerate().take(i + 1) {
                acc = ring.add(&acc, &ring.mul(&col[i - j], c));
            }
            next.push(acc);
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// Division-free determinant.
pub fn det<R: CommutativeRing>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    let c = charpoly(ring, a)?;
    let last = c.last().unwrap().clone();
    Ok(if a.rows % 2 == 0 { last } else { ring.neg(&last) })
}

/// Determinant of a scalar matrix. Uses fraction-free elimination over ℤ, Gaussian
/// elimination over fields, and the division-free method otherwise.
pub fn det_scalar(ring: &Ring, a: &Matrix<Elem>) -> Result<Elem> {
    require_square(a)?;
    match ring.kind() {
        RingKind::Integers => Ok(bareiss_integers(a)),
        _ if ring.is_field() => gauss_field(ring, a),
        _ => det(ring, a),
    }
}

fn bareiss_integers(a: &Matrix<Elem>) -> Elem {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};
    let n = a.rows;
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| a.row(i).iter().map(|e| e.as_bigint().unwrap().clone()).collect())
        .collect();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Elem::int(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = t.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = if n == 0 { BigInt::one() } else { m[n - 1][n - 1].clone() };
    Elem::Int(if sign { -d } else { d })
}

#[allow(clippy::needless_range_loop)]
fn gauss_field(ring: &Ring, a: &Matrix<Elem>) -> Result<Elem> {
    let n = a.rows;
    let mut m = a.to_rows();
    let mut acc = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !ring.is_zero(&m[r][k])) else {
            return Ok(ring.zero());
        };
        if p != k {
            m.swap(k, p);
            acc = ring.neg(&acc);
        }
        let inv = ring.inverse(&m[k][k])?;
        acc = ring.mul(&acc, &m[k][k]);
        for i in k + 1..n {
            if ring.is_zero(&m[i][k]) {
                continue;
            }
            let f = ring.mul(&m[i][k], &inv);
            for j in k..n {
                let t = ring.mul(&f, &m[k][j]);
                m[i][j] = ring.sub(&m[i][j], &t);
            }
        }
    }
    Ok(acc)
}

/// Inverse of a square scalar matrix with unit determinant, via Cayley–Hamilton.
pub fn inverse(ring: &Ring, a: &Matrix<Elem>) -> Result<Matrix<Elem>> {
    require_square(a)?;
    let n = a.rows;
    let c = charpoly(ring, a)?;
    let cn = &c[n];
    let inv_cn = ring
        .inverse(cn)
        .map_err(|_| domain("matrix determinant is not a unit"))?;
    // A·(A^(n-1) + c1·A^(n-2) + … + c_(n-1)·I) = -c_n·I
    let mut acc = Matrix::identity(ring, n);
    for ci in c.iter().take(n).skip(1) {
        acc = mat_mul(ring, &acc, a)?;
        for i in 0..n {
            let d = ring.add(acc.get(i, i), ci);
            acc.set(i, i, d);
        }
    }
    let s = ring.neg(&inv_cn);
    Ok(acc.map(|x| ring.mul(x, &s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyRing;

    fn zmat(rows: &[&[i64]]) -> Matrix<Elem> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Elem::int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn small_determinants() {
        let z = Ring::integers();
        let m = zmat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(det(&z, &m).unwrap(), Elem::int(6));
        assert_eq!(det_scalar(&z, &m).unwrap(), Elem::int(6));
        assert_eq!(det(&z, &zmat(&[])).unwrap(), Elem::int(1));
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - t^2 - 2t - 8
        let z = Ring::integers();
        let m = zmat(&[&[0, 0, 8], &[1, 0, 2], &[0, 1, 1]]);
        let c = charpoly(&z, &m).unwrap();
        assert_eq!(c, vec![Elem::int(1), Elem::int(-1), Elem::int(-2), Elem::int(-8)]);
    }

    #[test]
    fn symbolic_determinant() {
        let r = PolyRing::new(&Ring::integers(), vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        let v = r.vars();
        let m = Matrix::from_rows(vec![vec![v[0].clone(), v[1].clone()], vec![v[2].clone(), v[3].clone()]]).unwrap();
        assert_eq!(det(&r, &m).unwrap().to_string(), "a*d - b*c");
    }

    #[test]
    fn cayley_hamilton_inverse() {
        let z = Ring::integers();
        let m = zmat(&[&[1, 1], &[0, 1]]);
        let inv = inverse(&z, &m).unwrap();
        assert_eq!(inv, zmat(&[&[1, -1], &[0, 1]]));
        assert!(inverse(&z, &zmat(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn field_elimination() {
        let f5 = Ring::integers_mod(5).unwrap();
        let m = Matrix::from_rows(vec![vec![Elem::int(0), Elem::int(2)], vec![Elem::int(3), Elem::int(4)]]).unwrap();
        assert_eq!(det_scalar(&f5, &m).unwrap(), Elem::int(4));
        assert_eq!(det(&f5, &m).unwrap(), Elem::int(4));
    }
}
