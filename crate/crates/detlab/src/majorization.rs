//! Descending spectra and the four majorization orders.
//!
//! For descending vectors `x`, `y` of equal length:
//!
//! * weak majorization `x ≻_w y`: every partial sum of `x` dominates the
//!   matching partial sum of `y`;
//! * majorization `x ≻ y`: weak, plus equal totals;
//! * weak log-majorization `x ≻_wlog y` (non-negative entries): every partial
//!   product dominates, evaluated as partial sums of logarithms;
//! * log-majorization `x ≻_log y`: weak log, plus equal total products.
//!
//! Zero entries in the log orders use `log 0 = -∞` with `-∞ ≥ -∞` allowed;
//! total-product equality with zeros present holds only when *both* totals
//! vanish. Predicate inputs are re-sorted internally, so verdicts are
//! invariant under permutations of the input.

use crate::eigen::sym_eigen;
use crate::error::{Error, Result};
use crate::linalg::{clamped_psd_eigenvalues, is_psd, psd_power};
use crate::matrix::{Matrix, Tolerance};

/// A real vector sorted in descending order, the carrier for spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueVector {
    values: Vec<f64>,
}

impl EigenvalueVector {
    /// Sorts the input descending; entries must be finite.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Dimension("spectrum must be non-empty".into()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("spectrum entries must be finite".into()));
        }
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Ok(EigenvalueVector { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Outcome of one majorization comparison.
#[derive(Debug, Clone, Copy)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// `k` (1-based prefix length) of the tightest or violated partial sum.
    pub worst_k: usize,
    /// Minimum over `k` of `lhs_k − rhs_k`; log-domain for the log orders.
    pub slack: f64,
    /// `|total(x) − total(y)|`; log-domain for the log orders. Only the
    /// strict orders require it to vanish.
    pub equality_defect: f64,
}

fn check_len(x: &EigenvalueVector, y: &EigenvalueVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "spectra have different lengths: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

fn additive_core(x: &EigenvalueVector, y: &EigenvalueVector) -> (f64, usize, f64) {
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut slack = f64::INFINITY;
    let mut worst_k = 1;
    for (k, (a, b)) in x.values().iter().zip(y.values()).enumerate() {
        sx += a;
        sy += b;
        let s = sx - sy;
        if s < slack {
            slack = s;
            worst_k = k + 1;
        }
    }
    let scale = 1.0_f64.max(sx.abs()).max(sy.abs());
    (slack, worst_k, scale)
}

fn additive_totals(x: &EigenvalueVector, y: &EigenvalueVector) -> f64 {
    (x.sum() - y.sum()).abs()
}

/// `x ≻_w y`.
pub fn weak_majorizes(
    x: &EigenvalueVector,
    y: &EigenvalueVector,
    tol: Tolerance,
) -> Result<MajorizationVerdict> {
    check_len(x, y)?;
    let (slack, worst_k, scale) = additive_core(x, y);
    let equality_defect = additive_totals(x, y);
    Ok(MajorizationVerdict {
        holds: slack >= -tol.scaled(scale),
        worst_k,
        slack,
        equality_defect,
    })
}

/// `x ≻ y`: weak majorization plus equal totals.
pub fn majorizes(
    x: &EigenvalueVector,
    y: &EigenvalueVector,
    tol: Tolerance,
) -> Result<MajorizationVerdict> {
    check_len(x, y)?;
    let (slack, worst_k, scale) = additive_core(x, y);
    let equality_defect = additive_totals(x, y);
    Ok(MajorizationVerdict {
        holds: slack >= -tol.scaled(scale) && equality_defect <= tol.scaled(scale),
        worst_k,
        slack,
        equality_defect,
    })
}

/// Log-transforms a non-negative spectrum. Entries inside the clamp window
/// `[-tol.abs·(1+max), 0)` count as zero; anything more negative is a domain
/// error. Returns `(log values, −∞ count is implicit via f64)`.
fn log_values(v: &EigenvalueVector, tol: Tolerance) -> Result<Vec<f64>> {
    let top = v.values()[0].max(0.0);
    let window = tol.abs * (1.0 + top);
    v.values()
        .iter()
        .map(|&e| {
            if e < -window {
                Err(Error::Domain(format!(
                    "log-majorization requires non-negative entries, got {e:.6e}"
                )))
            } else if e <= 0.0 {
                Ok(f64::NEG_INFINITY)
            } else {
                Ok(e.ln())
            }
        })
        .collect()
}

struct LogPrefix {
    finite: f64,
    zeros: usize,
}

impl LogPrefix {
    fn value(&self) -> f64 {
        if self.zeros > 0 {
            f64::NEG_INFINITY
        } else {
            self.finite
        }
    }
}

fn log_core(lx: &[f64], ly: &[f64]) -> (f64, usize, f64, f64, f64) {
    let mut px = LogPrefix { finite: 0.0, zeros: 0 };
    let mut py = LogPrefix { finite: 0.0, zeros: 0 };
    let mut slack = f64::INFINITY;
    let mut worst_k = 1;
    for (k, (&a, &b)) in lx.iter().zip(ly).enumerate() {
        if a == f64::NEG_INFINITY {
            px.zeros += 1;
        } else {
            px.finite += a;
        }
        if b == f64::NEG_INFINITY {
            py.zeros += 1;
        } else {
            py.finite += b;
        }
        // lhs_k − rhs_k with −∞ ≥ −∞ allowed (contributes zero slack).
        let s = match (px.zeros > 0, py.zeros > 0) {
            (true, true) => 0.0,
            (true, false) => f64::NEG_INFINITY,
            (false, true) => f64::INFINITY,
            (false, false) => px.finite - py.finite,
        };
        if s < slack {
            slack = s;
            worst_k = k + 1;
        }
    }
    let totals_defect = match (px.zeros > 0, py.zeros > 0) {
        (true, true) => 0.0,
        (false, false) => (px.finite - py.finite).abs(),
        _ => f64::INFINITY,
    };
    let scale = 1.0_f64
        .max(if px.zeros == 0 { px.finite.abs() } else { 0.0 })
        .max(if py.zeros == 0 { py.finite.abs() } else { 0.0 });
    (slack, worst_k, totals_defect, scale, px.finite - py.finite)
}

/// `x ≻_wlog y`, partial products compared as partial sums of logarithms.
pub fn weak_log_majorizes(
    x: &EigenvalueVector,
    y: &EigenvalueVector,
    tol: Tolerance,
) -> Result<MajorizationVerdict> {
    check_len(x, y)?;
    let lx = log_values(x, tol)?;
    let ly = log_values(y, tol)?;
    let (slack, worst_k, equality_defect, scale, _) = log_core(&lx, &ly);
    Ok(MajorizationVerdict {
        holds: slack >= -tol.scaled(scale),
        worst_k,
        slack,
        equality_defect,
    })
}

/// `x ≻_log y`: weak log-majorization plus equal total products.
pub fn log_majorizes(
    x: &EigenvalueVector,
    y: &EigenvalueVector,
    tol: Tolerance,
) -> Result<MajorizationVerdict> {
    check_len(x, y)?;
    let lx = log_values(x, tol)?;
    let ly = log_values(y, tol)?;
    let (slack, worst_k, equality_defect, scale, _) = log_core(&lx, &ly);
    Ok(MajorizationVerdict {
        holds: slack >= -tol.scaled(scale) && equality_defect <= tol.scaled(scale),
        worst_k,
        slack,
        equality_defect,
    })
}

/// Eigenvalues of `X·Y` for PSD `X`, `Y`, computed from the symmetric
/// similar matrix `X^{1/2} Y X^{1/2}`; the result is non-negative and sorted
/// descending.
pub fn spectrum_of_product(x: &Matrix, y: &Matrix, tol: Tolerance) -> Result<EigenvalueVector> {
    if x.n() != y.n() {
        return Err(Error::Dimension(format!("{} vs {}", x.n(), y.n())));
    }
    if !is_psd(x, tol) {
        return Err(Error::Domain("first factor must be PSD".into()));
    }
    if !is_psd(y, tol) {
        return Err(Error::Domain("second factor must be PSD".into()));
    }
    let x_half = psd_power(x, 0.5, tol)?;
    let sym = (&(&x_half * y) * &x_half).symmetrize();
    let d = sym_eigen(&sym, tol)?;
    let lam = clamped_psd_eigenvalues(&d, tol)?;
    EigenvalueVector::new(lam)
}
