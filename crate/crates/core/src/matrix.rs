//! Minimal dense square matrix over any [`Scalar`], used for transition
//! matrices and matrix-valued evaluation. Row-major storage.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquareMat<S: Scalar> {
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> SquareMat<S> {
    pub fn zero(dim: usize) -> Self {
        SquareMat { dim, data: vec![S::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter("matrix is not square".into()));
        }
        Ok(SquareMat { dim, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &S) {
        let cell = &mut self.data[i * self.dim + j];
        *cell = cell.add(v);
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect();
        SquareMat { dim: self.dim, data }
    }

    pub fn scale(&self, c: &S) -> Self {
        SquareMat { dim: self.dim, data: self.data.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    out.add_to(i, j, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn mat(rows: &[&[i64]]) -> SquareMat<Rational> {
        SquareMat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn multiply_small() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), mat(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.mul(&SquareMat::identity(2)), a);
    }

    #[test]
    fn rejects_ragged_rows() {
        let rows = vec![vec![Rational::from_int(1)], vec![]];
        assert!(SquareMat::from_rows(rows).is_err());
    }
}
