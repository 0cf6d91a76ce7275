//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! Jacobi is a good fit for the dense, small (`n <= 64`) matrices this crate
//! works with: it is simple, deterministic for a fixed input, and delivers
//! reconstruction error near machine precision.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Tolerance};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues (descending) and an orthogonal eigenbasis of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    basis: Matrix,
}

impl SpectralDecomposition {
    /// Eigenvalues sorted in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Orthogonal matrix whose columns are eigenvectors, ordered to match
    /// [`Self::eigenvalues`].
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Spectral condition number `|λ₁| / |λₙ|`; infinite for a singular matrix.
    pub fn cond(&self) -> f64 {
        let hi = self.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let lo = self.eigenvalues.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
        if lo == 0.0 {
            if hi == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            hi / lo
        }
    }

    /// `Q f(Λ) Qᵀ` for an entrywise spectral map `f`.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.n();
        let q = &self.basis;
        let mapped: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for (k, &lk) in mapped.iter().enumerate() {
                    s += lk * q.get(i, k) * q.get(j, k);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// `Q Λ Qᵀ`, which should reproduce the input matrix.
    pub fn reconstruct(&self) -> Matrix {
        self.apply_fn(|l| l)
    }

    /// `‖QᵀQ − I‖_F`.
    pub fn orthogonality_defect(&self) -> f64 {
        let qtq = &self.basis.transpose() * &self.basis;
        (&qtq - &Matrix::identity(self.n())).frobenius_norm()
    }
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = a.get(i, j);
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// Symmetric eigendecomposition of `m`.
///
/// The input is symmetrized as `(M + Mᵀ)/2` first; a symmetry defect larger
/// than `tol.rel · ‖M‖_F` is a domain error.
pub fn sym_eigen(m: &Matrix, tol: Tolerance) -> Result<SpectralDecomposition> {
    let n = m.n();
    let norm = m.frobenius_norm();
    let defect = m.symmetry_defect();
    if defect > tol.scaled(norm) {
        return Err(Error::Domain(format!(
            "symmetry defect {defect:.3e} exceeds tolerance {:.3e}",
            tol.scaled(norm)
        )));
    }

    let mut a = m.symmetrize();
    let mut q = Matrix::identity(n);

    if n > 1 {
        // Absolute threshold for convergence; rotations below it cannot move
        // the spectrum by more than rounding noise.
        let target = f64::EPSILON * norm.max(f64::MIN_POSITIVE) * n as f64;
        let mut converged = false;
        for _sweep in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for r in p + 1..n {
                    let apq = a.get(p, r);
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a.get(p, p);
                    let aqq = a.get(r, r);
                    let tau = (aqq - app) / (2.0 * apq);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // A <- GᵀAG, columns first, then rows.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, r);
                        a.set(k, p, c * akp - s * akq);
                        a.set(k, r, s * akp + c * akq);
                    }
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(r, k);
                        a.set(p, k, c * apk - s * aqk);
                        a.set(r, k, s * apk + c * aqk);
                    }
                    // Q <- QG
                    for k in 0..n {
                        let qkp = q.get(k, p);
                        let qkq = q.get(k, r);
                        q.set(k, p, c * qkp - s * qkq);
                        q.set(k, r, s * qkp + c * qkq);
                    }
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > target {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, n });
        }
    }

    // Sort eigenpairs descending; stable order keeps the result deterministic
    // under ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).partial_cmp(&a.get(i, i)).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a.get(k, k)).collect();
    let basis = Matrix::from_fn(n, |i, j| q.get(i, order[j]));

    Ok(SpectralDecomposition { eigenvalues, basis })
}
