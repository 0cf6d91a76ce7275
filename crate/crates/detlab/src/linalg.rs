//! Determinants, PSD spectral functions, absolute values and polar factors.
//!
//! Determinants of the non-symmetric sums that appear throughout the checkers
//! (`A² + AB` and friends) go through pivoted LU, never through eigenvalues.
//! Fractional powers of PSD matrices go through a single spectral code path
//! with one clamping policy for eigenvalues that drifted slightly negative.

use crate::eigen::{sym_eigen, SpectralDecomposition};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Tolerance};

/// Pivoted LU factorization; `det` is the product of pivots with the
/// permutation sign, `0.0` for a singular input.
struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

fn lu_factor(m: &Matrix) -> Lu {
    let n = m.n();
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    let mut singular = false;

    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_val = lu.get(k, k).abs();
        for i in (k + 1)..n {
            let v = lu.get(i, k).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val == 0.0 {
            singular = true;
            continue;
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = lu.get(k, j);
                lu.set(k, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, tmp);
            }
            perm.swap(k, pivot_row);
            sign = -sign;
        }
        let pivot = lu.get(k, k);
        for i in (k + 1)..n {
            let factor = lu.get(i, k) / pivot;
            lu.set(i, k, factor);
            for j in (k + 1)..n {
                lu.set(i, j, lu.get(i, j) - factor * lu.get(k, j));
            }
        }
    }

    Lu { lu, perm, sign, singular }
}

impl Lu {
    fn det(&self) -> f64 {
        if self.singular {
            return 0.0;
        }
        let mut d = self.sign;
        for i in 0..self.lu.n() {
            d *= self.lu.get(i, i);
        }
        d
    }

    fn solve(&self, rhs: &[f64]) -> Option<Vec<f64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.n();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu.get(i, j) * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= self.lu.get(i, j) * x[j];
            }
            let d = self.lu.get(i, i);
            if d == 0.0 {
                return None;
            }
            x[i] /= d;
        }
        Some(x)
    }
}

/// Determinant of a general (not necessarily symmetric) square matrix.
pub fn det_general(m: &Matrix) -> f64 {
    lu_factor(m).det()
}

/// Matrix inverse via pivoted LU.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let n = m.n();
    let lu = lu_factor(m);
    if lu.singular {
        return Err(Error::Singular("matrix has a zero pivot".into()));
    }
    let mut out = Matrix::zeros(n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        let col = lu
            .solve(&e)
            .ok_or_else(|| Error::Singular("matrix has a zero pivot".into()))?;
        for i in 0..n {
            out.set(i, j, col[i]);
        }
        e[j] = 0.0;
    }
    Ok(out)
}

/// Eigenvalues of a PSD matrix with the crate's clamping policy applied:
/// values in `[-tol.abs·(1+λ₁), 0)` are clamped to zero; anything more
/// negative is a not-PSD error.
pub(crate) fn clamped_psd_eigenvalues(d: &SpectralDecomposition, tol: Tolerance) -> Result<Vec<f64>> {
    let lam1 = d.lambda_max().max(0.0);
    let window = tol.abs * (1.0 + lam1);
    d.eigenvalues()
        .iter()
        .map(|&l| {
            if l >= 0.0 {
                Ok(l)
            } else if l >= -window {
                Ok(0.0)
            } else {
                Err(Error::NotPsd(format!(
                    "eigenvalue {l:.6e} below clamp window -{window:.6e}"
                )))
            }
        })
        .collect()
}

/// `M^p` for symmetric PSD `M`, computed as `Q diag(λᵢᵖ) Qᵀ`.
///
/// `p = 0` maps the support to the identity (zero eigenvalues stay zero);
/// negative `p` requires all eigenvalues to clear `tol.abs`.
pub fn psd_power(m: &Matrix, p: f64, tol: Tolerance) -> Result<Matrix> {
    if !p.is_finite() {
        return Err(Error::Domain(format!("power must be finite, got {p}")));
    }
    let d = sym_eigen(m, tol)?;
    let lam = clamped_psd_eigenvalues(&d, tol)?;
    if p < 0.0 {
        if let Some(&small) = lam.iter().find(|&&l| l <= tol.abs) {
            return Err(Error::Singular(format!(
                "eigenvalue {small:.6e} too small for power {p}"
            )));
        }
    }
    let powered: Vec<f64> = lam
        .iter()
        .map(|&l| {
            if p == 0.0 {
                if l > 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else if l == 0.0 {
                0.0
            } else {
                l.powf(p)
            }
        })
        .collect();
    let n = d.n();
    let q = d.basis();
    let mut out = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for (k, &lk) in powered.iter().enumerate() {
                s += lk * q.get(i, k) * q.get(j, k);
            }
            out.set(i, j, s);
            out.set(j, i, s);
        }
    }
    Ok(out)
}

/// `|X| = (XᵀX)^{1/2}`, the PSD absolute value of a general square matrix.
pub fn abs_value(x: &Matrix) -> Result<Matrix> {
    let gram = (&x.transpose() * x).symmetrize();
    psd_power(&gram, 0.5, Tolerance::default())
}

/// Singular values of a general square matrix, descending.
pub fn singular_values(x: &Matrix, tol: Tolerance) -> Result<Vec<f64>> {
    let gram = (&x.transpose() * x).symmetrize();
    let d = sym_eigen(&gram, tol)?;
    let lam = clamped_psd_eigenvalues(&d, tol)?;
    Ok(lam.iter().map(|l| l.sqrt()).collect())
}

/// Orthogonal polar factor `U = X · |X|⁻¹` of an invertible matrix,
/// so that `X = U |X|`.
pub fn polar_unitary(x: &Matrix, tol: Tolerance) -> Result<Matrix> {
    let gram = (&x.transpose() * x).symmetrize();
    let d = sym_eigen(&gram, tol)?;
    let lam = clamped_psd_eigenvalues(&d, tol)?;
    let sigma_max = lam[0].sqrt();
    let sigma_min = lam.last().unwrap().sqrt();
    if sigma_min <= tol.abs * sigma_max || sigma_max == 0.0 {
        return Err(Error::Singular(format!(
            "smallest singular value {sigma_min:.6e} below threshold; regularize first"
        )));
    }
    let n = x.n();
    let q = d.basis();
    // |X|^{-1} = Q diag(1/σ) Qᵀ
    let mut inv_abs = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let mut s = 0.0;
            for (k, &lk) in lam.iter().enumerate() {
                s += q.get(i, k) * q.get(j, k) / lk.sqrt();
            }
            inv_abs.set(i, j, s);
            inv_abs.set(j, i, s);
        }
    }
    Ok(x * &inv_abs)
}

/// Largest singular value.
pub fn spectral_norm(m: &Matrix) -> f64 {
    let gram = (&m.transpose() * m).symmetrize();
    match sym_eigen(&gram, Tolerance::default()) {
        Ok(d) => d.lambda_max().max(0.0).sqrt(),
        Err(_) => f64::NAN,
    }
}

/// `A + eps·‖A‖·I`, the perturbation that makes a PSD matrix positive
/// definite; a zero matrix becomes `eps·I`.
pub fn regularize(a: &Matrix, eps: f64) -> Result<Matrix> {
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps must be positive, got {eps}")));
    }
    let norm = spectral_norm(a);
    let shift = if norm == 0.0 { eps } else { eps * norm };
    let mut out = a.clone();
    for i in 0..a.n() {
        out.set(i, i, out.get(i, i) + shift);
    }
    Ok(out)
}

/// True iff the symmetry defect is within tolerance and
/// `λ_min ≥ −tol.rel·(1 + λ₁)`.
pub fn is_psd(m: &Matrix, tol: Tolerance) -> bool {
    if m.symmetry_defect() > tol.scaled(m.frobenius_norm()) {
        return false;
    }
    match sym_eigen(m, tol) {
        Ok(d) => d.lambda_min() >= -tol.rel * (1.0 + d.lambda_max().max(0.0)),
        Err(_) => false,
    }
}

/// True iff symmetric within tolerance and `λ_min > tol.abs·(1 + λ₁)`.
pub fn is_pd(m: &Matrix, tol: Tolerance) -> bool {
    if m.symmetry_defect() > tol.scaled(m.frobenius_norm()) {
        return false;
    }
    match sym_eigen(m, tol) {
        Ok(d) => d.lambda_min() > tol.abs * (1.0 + d.lambda_max().max(0.0)),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn det_identity_and_hand_values() {
        assert_eq!(det_general(&Matrix::identity(4)), 1.0);
        // Cofactor expansion: det [[1,1],[1,2]] = 1, det [[2,-2],[-2,3]] = 2.
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = Matrix::from_rows(&[vec![2.0, -2.0], vec![-2.0, 3.0]]).unwrap();
        assert!((det_general(&a) - 1.0).abs() < 1e-14);
        assert!((det_general(&b) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn det_of_singular_is_zero() {
        let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(det_general(&m).abs() < 1e-14);
    }

    #[test]
    fn det_sign_is_exact() {
        let m = Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(det_general(&m), -1.0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(&[vec![4.0, 1.0, 0.0], vec![1.0, 3.0, 1.0], vec![0.0, 1.0, 2.0]])
            .unwrap();
        let inv = inverse(&m).unwrap();
        let err = (&(&m * &inv) - &Matrix::identity(3)).frobenius_norm();
        assert!(err < 1e-13);
        assert!(inverse(&Matrix::zeros(2)).is_err());
    }

    #[test]
    fn psd_power_diagonal_square_root() {
        let m = Matrix::diag(&[4.0, 9.0]);
        let r = psd_power(&m, 0.5, tol()).unwrap();
        assert!((&r - &Matrix::diag(&[2.0, 3.0])).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psd_power_zero_gives_identity_on_full_rank() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = psd_power(&m, 0.0, tol()).unwrap();
        assert!((&r - &Matrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn psd_power_half_of_hand_example() {
        // [[2,1],[1,2]]^{1/2} has eigenvalues (√3, 1) in the same basis.
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let r = psd_power(&m, 0.5, tol()).unwrap();
        let d = sym_eigen(&r, tol()).unwrap();
        assert!((d.eigenvalues()[0] - 3.0_f64.sqrt()).abs() < 1e-14);
        assert!((d.eigenvalues()[1] - 1.0).abs() < 1e-14);
        assert!((&(&r * &r) - &m).frobenius_norm() < 1e-13);
    }

    #[test]
    fn psd_power_rejects_indefinite() {
        let m = Matrix::diag(&[1.0, -1.0]);
        assert!(matches!(psd_power(&m, 0.5, tol()), Err(Error::NotPsd(_))));
    }

    #[test]
    fn psd_power_negative_requires_strictly_positive() {
        let m = Matrix::diag(&[1.0, 0.0]);
        assert!(matches!(psd_power(&m, -1.0, tol()), Err(Error::Singular(_))));
        let pd = Matrix::diag(&[4.0, 2.0]);
        let inv = psd_power(&pd, -1.0, tol()).unwrap();
        assert!((&inv - &Matrix::diag(&[0.25, 0.5])).frobenius_norm() < 1e-15);
    }

    #[test]
    fn abs_value_removes_signs() {
        let x = Matrix::diag(&[-2.0, 3.0]);
        assert!((&abs_value(&x).unwrap() - &Matrix::diag(&[2.0, 3.0])).frobenius_norm() < 1e-14);
    }

    #[test]
    fn abs_value_of_rotation_is_identity() {
        let rot = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!((&abs_value(&rot).unwrap() - &Matrix::identity(2)).frobenius_norm() < 1e-14);
    }

    #[test]
    fn abs_value_of_example_product() {
        // |BA| for the bundled 2x2 pair is exactly [[0.6, 0.8], [0.8, 4.4]]
        // (its square is AB²A = [[1,4],[4,20]]); checked against a
        // 40-digit spectral oracle.
        let a = Matrix::from_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let b = Matrix::from_rows(&[vec![2.0, -2.0], vec![-2.0, 3.0]]).unwrap();
        let ba = &b * &a;
        let abs = abs_value(&ba).unwrap();
        let expected = Matrix::from_rows(&[vec![0.6, 0.8], vec![0.8, 4.4]]).unwrap();
        assert!((&abs - &expected).frobenius_norm() < 1e-12);
    }

    #[test]
    fn polar_factor_cases() {
        // Symmetric PD input: U = I.
        let pd = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let u = polar_unitary(&pd, tol()).unwrap();
        assert!((&u - &Matrix::identity(2)).frobenius_norm() < 1e-13);

        // Diagonal signs.
        let d = Matrix::diag(&[-1.0, 2.0]);
        let u = polar_unitary(&d, tol()).unwrap();
        assert!((&u - &Matrix::diag(&[-1.0, 1.0])).frobenius_norm() < 1e-14);

        // Orthogonal input is its own polar factor.
        let rot = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let u = polar_unitary(&rot, tol()).unwrap();
        assert!((&u - &rot).frobenius_norm() < 1e-14);

        assert!(matches!(polar_unitary(&Matrix::zeros(2), tol()), Err(Error::Singular(_))));
    }

    #[test]
    fn polar_reconstructs_input() {
        let x = Matrix::from_rows(&[vec![1.0, 2.0], vec![-3.0, 0.5]]).unwrap();
        let u = polar_unitary(&x, tol()).unwrap();
        let recon = &u * &abs_value(&x).unwrap();
        assert!((&recon - &x).frobenius_norm() < 1e-12);
        let utu = &u.transpose() * &u;
        assert!((&utu - &Matrix::identity(2)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn spectral_norm_values() {
        assert!((spectral_norm(&Matrix::identity(3)) - 1.0).abs() < 1e-14);
        assert!((spectral_norm(&Matrix::diag(&[3.0, -5.0])) - 5.0).abs() < 1e-14);
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!((spectral_norm(&m) - 3.0).abs() < 1e-13);
    }

    #[test]
    fn regularize_contract() {
        let r = regularize(&Matrix::zeros(2), 1e-8).unwrap();
        assert!((&r - &Matrix::identity(2).scale(1e-8)).frobenius_norm() < 1e-20);

        let r = regularize(&Matrix::identity(2), 1e-8).unwrap();
        assert!((&r - &Matrix::identity(2).scale(1.0 + 1e-8)).frobenius_norm() < 1e-18);

        let proj = Matrix::diag(&[1.0, 0.0]);
        let r = regularize(&proj, 1e-8).unwrap();
        assert!((&r - &Matrix::diag(&[1.0 + 1e-8, 1e-8])).frobenius_norm() < 1e-18);

        assert!(regularize(&Matrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn is_psd_cases() {
        assert!(is_psd(&Matrix::identity(3), tol()));
        assert!(!is_psd(&Matrix::diag(&[1.0, -1.0]), tol()));
        let skew = Matrix::from_rows(&[vec![1.0, 0.5], vec![-0.5, 1.0]]).unwrap();
        assert!(!is_psd(&skew, tol()));
    }

    #[test]
    fn is_pd_excludes_singular() {
        assert!(is_pd(&Matrix::identity(2), tol()));
        assert!(!is_pd(&Matrix::diag(&[1.0, 0.0]), tol()));
    }
}
