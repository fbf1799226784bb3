//! Small helpers for dense symmetric positive-definite matrices.
//!
//! Every covariance-like matrix in this crate passes through [`symmetrize`]
//! after an update so floating-point drift cannot break symmetry invariants
//! over long horizons. Inversions of reference-path matrices go through
//! [`invert_guarded`], which refuses (rather than regularizes) when the
//! condition estimate is above [`COND_LIMIT`].

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Condition-number estimate above which inversion is refused.
pub const COND_LIMIT: f64 = 1e12;

/// Absolute tolerance for symmetry checks.
pub const SYM_TOL: f64 = 1e-10;

/// Replace `m` with `(m + m^T) / 2` in place.
pub fn symmetrize(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    debug_assert_eq!(n, m.ncols());
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

/// Largest absolute off-diagonal mismatch `|m_ij - m_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub fn is_symmetric(m: &DMatrix<f64>, tol: f64) -> bool {
    m.is_square() && asymmetry(m) <= tol
}

pub fn all_finite(m: &DMatrix<f64>) -> bool {
    m.iter().all(|x| x.is_finite())
}

/// Check that `m` is square, finite, and symmetric within [`SYM_TOL`].
pub fn check_symmetric(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::InvalidInput(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if !all_finite(m) {
        return Err(Error::InvalidInput(format!("{what} has non-finite entries")));
    }
    let skew = asymmetry(m);
    if skew > SYM_TOL {
        return Err(Error::InvalidInput(format!(
            "{what} is asymmetric (max mismatch {skew:.3e})"
        )));
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn eigenvalues_sorted(m: &DMatrix<f64>) -> Vec<f64> {
    let mut eigs: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    eigs.sort_by(|a, b| a.total_cmp(b));
    eigs
}

/// Extreme eigenvalues `(min, max)` of a symmetric matrix.
pub fn spectrum_bounds(m: &DMatrix<f64>) -> (f64, f64) {
    let eigs = eigenvalues_sorted(m);
    (eigs[0], eigs[eigs.len() - 1])
}

/// Invert an SPD matrix by Cholesky factorization, guarded by a condition
/// estimate. Singular or indefinite input yields [`Error::IllConditioned`];
/// there is no silent regularization. The result is symmetrized.
pub fn invert_guarded(m: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    check_symmetric(m, what)?;
    let (lo, hi) = spectrum_bounds(m);
    if lo <= 0.0 {
        return Err(Error::IllConditioned {
            cond: f64::INFINITY,
            limit: COND_LIMIT,
        });
    }
    let cond = hi / lo;
    if cond > COND_LIMIT {
        return Err(Error::IllConditioned {
            cond,
            limit: COND_LIMIT,
        });
    }
    let chol = nalgebra::Cholesky::new(m.clone()).ok_or(Error::IllConditioned {
        cond,
        limit: COND_LIMIT,
    })?;
    let mut inv = chol.inverse();
    symmetrize(&mut inv);
    Ok(inv)
}
