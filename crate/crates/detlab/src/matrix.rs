//! Dense real square matrices and the shared tolerance type.
//!
//! The JSON wire format for a matrix is `{"n": 2, "rows": [[1.0, 0.0], [0.0, 1.0]]}`,
//! row-major, plain decimal literals. All entries must be finite and `n >= 1`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative/absolute tolerance pair used by decompositions, predicates and checkers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative tolerance, dimensionless.
    pub rel: f64,
    /// Absolute floor.
    pub abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-9, abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel >= 0.0) || !(abs >= 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be non-negative, got rel = {rel}, abs = {abs}"
            )));
        }
        Ok(Tolerance { rel, abs })
    }

    /// Effective tolerance for a quantity of the given magnitude.
    pub fn scaled(&self, magnitude: f64) -> f64 {
        self.abs.max(self.rel * magnitude.abs())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    n: usize,
    rows: Vec<Vec<f64>>,
}

impl From<Matrix> for MatrixWire {
    fn from(m: Matrix) -> Self {
        let rows = (0..m.n).map(|i| m.row(i).to_vec()).collect();
        MatrixWire { n: m.n, rows }
    }
}

impl TryFrom<MatrixWire> for Matrix {
    type Error = String;

    fn try_from(w: MatrixWire) -> std::result::Result<Self, String> {
        if w.n == 0 {
            return Err("matrix dimension must be at least 1".into());
        }
        if w.rows.len() != w.n {
            return Err(format!("expected {} rows, found {}", w.n, w.rows.len()));
        }
        let mut data = Vec::with_capacity(w.n * w.n);
        for (i, row) in w.rows.iter().enumerate() {
            if row.len() != w.n {
                return Err(format!("row {} has {} entries, expected {}", i, row.len(), w.n));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(format!("entry ({i}, {j}) is not finite"));
                }
                data.push(v);
            }
        }
        Ok(Matrix { n: w.n, data })
    }
}

/// Dense real `n x n` matrix, row-major storage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixWire", into = "MatrixWire")]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from nested rows, validating shape and finiteness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let wire = MatrixWire { n: rows.len(), rows: rows.to_vec() };
        Matrix::try_from(wire).map_err(Error::Parse)
    }

    /// Builds an `n x n` matrix by evaluating `f(i, j)` on every index pair.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| 0.0)
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn diag(values: &[f64]) -> Self {
        assert!(!values.is_empty());
        Matrix::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Frobenius norm of `M - M^T`.
    pub fn symmetry_defect(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let d = self.get(i, j) - self.get(j, i);
                s += 2.0 * d * d;
            }
        }
        s.sqrt()
    }

    /// `(M + M^T) / 2`.
    pub fn symmetrize(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| 0.5 * (self.get(i, j) + self.get(j, i)))
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix product requires equal dimensions");
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += aik * other.get(k, j);
                }
            }
        }
        out
    }

    /// Integer matrix power by repeated multiplication; `k = 0` gives the identity.
    pub fn powi(&self, k: u32) -> Matrix {
        let mut out = Matrix::identity(self.n);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    /// Applies the matrix to a vector.
    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix sum requires equal dimensions");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "matrix difference requires equal dimensions");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_format_round_trip() {
        let m = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"n":2,"rows":[[1.0,1.0],[1.0,2.0]]}"#);
        let back: Matrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn wire_format_rejects_bad_shapes() {
        assert!(serde_json::from_str::<Matrix>(r#"{"n":0,"rows":[]}"#).is_err());
        assert!(serde_json::from_str::<Matrix>(r#"{"n":2,"rows":[[1.0,2.0]]}"#).is_err());
        assert!(serde_json::from_str::<Matrix>(r#"{"n":1,"rows":[[1.0,2.0]]}"#).is_err());
    }

    #[test]
    fn wire_format_rejects_non_finite() {
        let m = serde_json::from_str::<Matrix>(r#"{"n":1,"rows":[[null]]}"#);
        assert!(m.is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = Matrix::from_rows(&[vec![2.0, -2.0], vec![-2.0, 3.0]]).unwrap();
        let ab = &a * &b;
        assert_eq!(ab, Matrix::from_rows(&[vec![0.0, 1.0], vec![-2.0, 4.0]]).unwrap());
        assert_eq!(ab.transpose(), &b * &a);
    }

    #[test]
    fn symmetry_defect_measures_skew() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap();
        assert!((m.symmetry_defect() - 8.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(m.symmetrize(), Matrix::zeros(2));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(a.powi(0), Matrix::identity(2));
        assert_eq!(a.powi(3), &(&a * &a) * &a);
    }
}
