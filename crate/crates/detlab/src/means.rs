//! Weighted matrix means of positive definite pairs.
//!
//! `sharp` is the weighted geometric mean
//! `A ♯_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`; `natural` is the mean
//! `A ♮_t B = A^{1/2} (B^{1/2} A^{-1} B^{1/2})^t A^{1/2}` with `t = 1/2` as the
//! usual choice. `natural` is not symmetric in `(A, B)` in general and no such
//! symmetry is assumed anywhere in this crate.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::linalg::psd_power;
use crate::matrix::{Matrix, Tolerance};

/// Condition number above which mean computations flag their result.
pub const COND_WARN_THRESHOLD: f64 = 1e12;

/// A computed mean plus accuracy metadata. Ill-conditioned inputs do not fail;
/// they warn, so that searches can keep probing extreme regions.
#[derive(Debug, Clone)]
pub struct MeanResult {
    pub matrix: Matrix,
    /// Spectral condition number of the first operand.
    pub cond: f64,
    /// True when `cond` exceeds [`COND_WARN_THRESHOLD`].
    pub warned: bool,
}

fn check_weight(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("weight t must lie in [0, 1], got {t}")));
    }
    Ok(())
}

fn pd_eigen(m: &Matrix, tol: Tolerance, role: &str) -> Result<crate::eigen::SpectralDecomposition> {
    let d = sym_eigen(m, tol)?;
    let floor = tol.abs * (1.0 + d.lambda_max().max(0.0));
    if d.lambda_min() <= floor {
        return Err(Error::Domain(format!(
            "{role} must be positive definite (λ_min = {:.6e})",
            d.lambda_min()
        )));
    }
    Ok(d)
}

/// Weighted geometric mean `A ♯_t B` for positive definite `A` and PSD `B`.
pub fn sharp(a: &Matrix, b: &Matrix, t: f64, tol: Tolerance) -> Result<MeanResult> {
    check_weight(t)?;
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{} vs {}", a.n(), b.n())));
    }
    let da = pd_eigen(a, tol, "first operand")?;
    if !crate::linalg::is_psd(b, tol) {
        return Err(Error::Domain("second operand must be PSD".into()));
    }
    let cond = da.cond();
    let a_half = da.apply_fn(|l| l.sqrt());
    let a_minus_half = da.apply_fn(|l| 1.0 / l.sqrt());
    let inner = (&(&a_minus_half * b) * &a_minus_half).symmetrize();
    let inner_t = psd_power(&inner, t, tol)?;
    let matrix = (&(&a_half * &inner_t) * &a_half).symmetrize();
    Ok(MeanResult { matrix, cond, warned: cond > COND_WARN_THRESHOLD })
}

/// The mean `A ♮_t B` for positive definite `A` and `B`; `t = 1/2` is the
/// default studied case. At `t = 1/2` it satisfies the factorization
/// `A ♮ B = A^{1/2} B^{1/2} (A ♯ B)^{-1} B^{1/2} A^{1/2}`.
pub fn natural(a: &Matrix, b: &Matrix, t: f64, tol: Tolerance) -> Result<MeanResult> {
    check_weight(t)?;
    if a.n() != b.n() {
        return Err(Error::Dimension(format!("{} vs {}", a.n(), b.n())));
    }
    let da = pd_eigen(a, tol, "first operand")?;
    let db = pd_eigen(b, tol, "second operand")?;
    let cond = da.cond();
    let a_half = da.apply_fn(|l| l.sqrt());
    let a_inv = da.apply_fn(|l| 1.0 / l);
    let b_half = db.apply_fn(|l| l.sqrt());
    let inner = (&(&b_half * &a_inv) * &b_half).symmetrize();
    let inner_t = psd_power(&inner, t, tol)?;
    let matrix = (&(&a_half * &inner_t) * &a_half).symmetrize();
    Ok(MeanResult { matrix, cond, warned: cond > COND_WARN_THRESHOLD })
}
