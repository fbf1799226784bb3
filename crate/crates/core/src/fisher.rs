//! Incremental inverse-information state for sensor selection.
//!
//! The selection objective at one time step is
//!
//! ```text
//! f(S) = Tr(P_pred) - Tr(F_S^-1),   F_S = P_pred^-1 + sigma^-2 sum_{i in S} a_i a_i^T
//! ```
//!
//! which is monotone non-decreasing with `f(empty) = 0`. [`FisherState`]
//! maintains `F_S^-1` directly, so the marginal gain of a candidate row `a`,
//!
//! ```text
//! gain(a) = (a^T F_S^-2 a) / (sigma^2 + a^T F_S^-1 a)
//! ```
//!
//! and the rank-one inverse update after committing a sensor,
//!
//! ```text
//! F^-1 <- F^-1 - (F^-1 a)(F^-1 a)^T / (sigma^2 + a^T F^-1 a)
//! ```
//!
//! each cost Theta(m^2): one matrix-vector product plus a rank-one update.
//! Nothing in this path factorizes or inverts an m x m matrix; the direct
//! factorization lives in [`objective_of_set`], which serves as the
//! independent reference in tests.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::model::filter_covariance;
use crate::spd;

/// Selected-set state: the inverse information matrix, the running objective,
/// and the bookkeeping needed to extend the set one sensor at a time.
#[derive(Debug, Clone)]
pub struct FisherState {
    inv_fisher: DMatrix<f64>,
    selected: Vec<usize>,
    base_trace: f64,
    objective: f64,
    noise_var: f64,
}

impl FisherState {
    /// Start from the empty set: `F_empty^-1 = P_pred`, objective `0`.
    pub fn init(predicted: &DMatrix<f64>, noise_var: f64) -> Result<Self> {
        spd::check_symmetric(predicted, "predicted covariance")?;
        if !(noise_var > 0.0 && noise_var.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "noise variance must be positive, got {noise_var}"
            )));
        }
        Ok(Self {
            inv_fisher: predicted.clone(),
            selected: Vec::new(),
            base_trace: predicted.trace(),
            objective: 0.0,
            noise_var,
        })
    }

    /// Marginal objective gain of adding row `a`, without committing it.
    ///
    /// Computed as `||F^-1 a||^2 / (sigma^2 + a^T F^-1 a)`; the numerator uses
    /// the squared norm of the single matrix-vector product instead of
    /// forming `F^-2`. Zero rows yield gain 0.
    pub fn marginal_gain(&self, a: &DVector<f64>) -> f64 {
        let w = &self.inv_fisher * a;
        let num = w.norm_squared();
        let den = self.noise_var + a.dot(&w);
        num / den
    }

    /// Commit sensor `j` with row `a`: rank-one downdate of the inverse,
    /// symmetrized, and the objective advanced by the realized gain.
    ///
    /// Returns the gain. Errors if `j` is already selected.
    pub fn add_sensor(&mut self, j: usize, a: &DVector<f64>) -> Result<f64> {
        if self.selected.contains(&j) {
            return Err(Error::DuplicateSensor { index: j });
        }
        if a.len() != self.inv_fisher.nrows() {
            return Err(Error::InvalidInput(format!(
                "row has dimension {}, expected {}",
                a.len(),
                self.inv_fisher.nrows()
            )));
        }
        let w = &self.inv_fisher * a;
        let den = self.noise_var + a.dot(&w);
        let gain = w.norm_squared() / den;
        self.inv_fisher.ger(-1.0 / den, &w, &w, 1.0);
        spd::symmetrize(&mut self.inv_fisher);
        self.selected.push(j);
        self.objective += gain;
        debug_assert!(
            (self.objective - (self.base_trace - self.inv_fisher.trace())).abs()
                <= 1e-9 * self.base_trace.max(1.0),
            "incremental objective drifted from trace identity"
        );
        Ok(gain)
    }

    /// Current inverse information matrix `F_S^-1` (the filtered covariance).
    pub fn inv_fisher(&self) -> &DMatrix<f64> {
        &self.inv_fisher
    }

    /// Indices committed so far, in selection order.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    /// Current objective value `f(S)`.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// `Tr(P_pred)` cached at initialization.
    pub fn base_trace(&self) -> f64 {
        self.base_trace
    }

    /// Current MSE, `Tr(F_S^-1)`.
    pub fn mse(&self) -> f64 {
        self.inv_fisher.trace()
    }

    pub fn noise_var(&self) -> f64 {
        self.noise_var
    }
}

/// Reference objective `f(S) = Tr(P_pred) - Tr(F_S^-1)` by direct summation
/// and factorization. This path is deliberately independent of the rank-one
/// updates and serves as the oracle in equivalence tests.
pub fn objective_of_set(
    predicted: &DMatrix<f64>,
    rows: &[&DVector<f64>],
    noise_var: f64,
) -> Result<f64> {
    let filtered = filter_covariance(predicted, rows, noise_var)?;
    Ok(predicted.trace() - filtered.trace())
}
