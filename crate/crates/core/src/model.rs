//! Linear time-varying system model and Kalman covariance recursions.
//!
//! The dynamics are `x(t+1) = H(t) x(t) + w(t)` with measurements
//! `y(t) = A(t) x(t) + v(t)`, where the process and measurement noises are
//! zero-mean with covariances `Q = sigma^2 I_m` and `R = sigma^2 I_n`. The
//! covariance recursions implemented here are
//!
//! ```text
//! P_pred = H P_filt H^T + sigma^2 I
//! P_filt = (P_pred^-1 + sigma^-2 sum_{i in S} a_i a_i^T)^-1
//! ```
//!
//! and the estimation MSE is the trace of the filtered covariance. This
//! module holds the direct-factorization reference path; the incremental
//! rank-one path lives in [`crate::fisher`].

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spd;

/// State-transition matrix provider, indexed by time step.
///
/// Steady-state experiments use [`Transition::Identity`]; the closure variant
/// supports arbitrary time-varying dynamics.
#[derive(Clone)]
pub enum Transition {
    Identity,
    Constant(DMatrix<f64>),
    TimeVarying(Arc<dyn Fn(usize) -> DMatrix<f64> + Send + Sync>),
}

impl Transition {
    pub fn at(&self, t: usize) -> Option<DMatrix<f64>> {
        match self {
            Transition::Identity => None,
            Transition::Constant(h) => Some(h.clone()),
            Transition::TimeVarying(f) => Some(f(t)),
        }
    }
}

impl fmt::Debug for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Identity => write!(f, "Transition::Identity"),
            Transition::Constant(h) => write!(f, "Transition::Constant({}x{})", h.nrows(), h.ncols()),
            Transition::TimeVarying(_) => write!(f, "Transition::TimeVarying(..)"),
        }
    }
}

/// Immutable description of the dynamical system and its sensor network.
#[derive(Debug, Clone)]
pub struct SystemModel {
    /// State dimension `m`.
    pub state_dim: usize,
    /// Number of sensors `n`.
    pub num_sensors: usize,
    /// State transition `H(t)`.
    pub transition: Transition,
    /// Process noise scale: `Q = process_noise_var * I_m`.
    pub process_noise_var: f64,
    /// Measurement noise scale: `R = measurement_noise_var * I_n`.
    pub measurement_noise_var: f64,
    /// Initial state covariance, symmetric positive-definite.
    pub initial_cov: DMatrix<f64>,
}

impl SystemModel {
    /// Validate and assemble a system model.
    pub fn new(
        state_dim: usize,
        num_sensors: usize,
        transition: Transition,
        process_noise_var: f64,
        measurement_noise_var: f64,
        initial_cov: DMatrix<f64>,
    ) -> Result<Self> {
        if state_dim == 0 || num_sensors == 0 {
            return Err(Error::InvalidInput(
                "state dimension and sensor count must be positive".into(),
            ));
        }
        if !(process_noise_var > 0.0 && process_noise_var.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "process noise variance must be positive, got {process_noise_var}"
            )));
        }
        if !(measurement_noise_var > 0.0 && measurement_noise_var.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "measurement noise variance must be positive, got {measurement_noise_var}"
            )));
        }
        if initial_cov.nrows() != state_dim {
            return Err(Error::InvalidInput(format!(
                "initial covariance is {}x{}, expected {state_dim}x{state_dim}",
                initial_cov.nrows(),
                initial_cov.ncols()
            )));
        }
        spd::check_symmetric(&initial_cov, "initial covariance")?;
        let (min_eig, _) = spd::spectrum_bounds(&initial_cov);
        if min_eig <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "initial covariance must be positive-definite (min eigenvalue {min_eig:.3e})"
            )));
        }
        if let Some(h) = transition.at(0) {
            if h.nrows() != state_dim || h.ncols() != state_dim {
                return Err(Error::InvalidInput(format!(
                    "transition is {}x{}, expected {state_dim}x{state_dim}",
                    h.nrows(),
                    h.ncols()
                )));
            }
        }
        Ok(Self {
            state_dim,
            num_sensors,
            transition,
            process_noise_var,
            measurement_noise_var,
            initial_cov,
        })
    }

    /// Identity-transition model with `Sigma_x = I_m` and `Q = R = noise_var I`,
    /// the configuration used throughout the steady-state experiments.
    pub fn steady_state(state_dim: usize, num_sensors: usize, noise_var: f64) -> Result<Self> {
        Self::new(
            state_dim,
            num_sensors,
            Transition::Identity,
            noise_var,
            noise_var,
            DMatrix::identity(state_dim, state_dim),
        )
    }
}

/// The sensor rows `a_i(t)` available at one time step.
#[derive(Debug, Clone)]
pub struct MeasurementMatrix {
    pub rows: Vec<DVector<f64>>,
    pub time_index: usize,
}

impl MeasurementMatrix {
    pub fn new(rows: Vec<DVector<f64>>, time_index: usize) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("measurement matrix has no rows".into()));
        }
        let m = rows[0].len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != m {
                return Err(Error::InvalidInput(format!(
                    "row {i} has dimension {}, expected {m}",
                    r.len()
                )));
            }
            if !r.iter().all(|x| x.is_finite()) {
                return Err(Error::InvalidInput(format!("row {i} has non-finite entries")));
            }
        }
        Ok(Self { rows, time_index })
    }

    /// Check row count and dimension against a system model.
    pub fn check_against(&self, model: &SystemModel) -> Result<()> {
        if self.rows.len() != model.num_sensors {
            return Err(Error::InvalidInput(format!(
                "measurement matrix has {} rows, model has {} sensors",
                self.rows.len(),
                model.num_sensors
            )));
        }
        if self.rows[0].len() != model.state_dim {
            return Err(Error::InvalidInput(format!(
                "measurement rows have dimension {}, model state dimension is {}",
                self.rows[0].len(),
                model.state_dim
            )));
        }
        Ok(())
    }

    /// Borrow the rows selected by `indices`.
    pub fn select(&self, indices: &[usize]) -> Vec<&DVector<f64>> {
        indices.iter().map(|&i| &self.rows[i]).collect()
    }
}

/// Prediction/filtered covariance pair for one time step.
#[derive(Debug, Clone)]
pub struct CovarianceState {
    pub predicted: DMatrix<f64>,
    pub filtered: DMatrix<f64>,
}

impl CovarianceState {
    pub fn new(predicted: DMatrix<f64>, filtered: DMatrix<f64>) -> Result<Self> {
        spd::check_symmetric(&predicted, "predicted covariance")?;
        spd::check_symmetric(&filtered, "filtered covariance")?;
        // filtering never increases uncertainty
        if filtered.trace() > predicted.trace() * (1.0 + 1e-12) + 1e-12 {
            return Err(Error::InvalidInput(format!(
                "filtered trace {} exceeds predicted trace {}",
                filtered.trace(),
                predicted.trace()
            )));
        }
        Ok(Self { predicted, filtered })
    }
}

/// Propagate a filtered covariance one step: `H P H^T + sigma^2 I`,
/// symmetrized to suppress drift.
pub fn predict_covariance(
    filtered_prev: &DMatrix<f64>,
    model: &SystemModel,
    t: usize,
) -> Result<DMatrix<f64>> {
    spd::check_symmetric(filtered_prev, "filtered covariance")?;
    let m = model.state_dim;
    if filtered_prev.nrows() != m {
        return Err(Error::InvalidInput(format!(
            "covariance is {}x{}, expected {m}x{m}",
            filtered_prev.nrows(),
            filtered_prev.ncols()
        )));
    }
    let mut pred = match model.transition.at(t) {
        None => filtered_prev.clone(),
        Some(h) => {
            if !spd::all_finite(&h) {
                return Err(Error::InvalidInput("transition has non-finite entries".into()));
            }
            &h * filtered_prev * h.transpose()
        }
    };
    for i in 0..m {
        pred[(i, i)] += model.process_noise_var;
    }
    spd::symmetrize(&mut pred);
    Ok(pred)
}

/// Filtered covariance for a sensor subset, by direct factorization:
/// `(P^-1 + sigma^-2 sum a_i a_i^T)^-1`.
///
/// This is the reference path used by oracles and for recording the official
/// covariance trajectory; schedulers use the rank-one incremental path.
pub fn filter_covariance(
    predicted: &DMatrix<f64>,
    selected_rows: &[&DVector<f64>],
    noise_var: f64,
) -> Result<DMatrix<f64>> {
    if selected_rows.is_empty() {
        spd::check_symmetric(predicted, "predicted covariance")?;
        return Ok(predicted.clone());
    }
    let mut fisher = spd::invert_guarded(predicted, "predicted covariance")?;
    let m = predicted.nrows();
    for (idx, a) in selected_rows.iter().enumerate() {
        if a.len() != m {
            return Err(Error::InvalidInput(format!(
                "selected row {idx} has dimension {}, expected {m}",
                a.len()
            )));
        }
        if !a.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "selected row {idx} has non-finite entries"
            )));
        }
        fisher.ger(1.0 / noise_var, a, a, 1.0);
    }
    spd::symmetrize(&mut fisher);
    spd::invert_guarded(&fisher, "information matrix")
}

/// Estimation MSE: the trace of the filtered error covariance.
pub fn mse_of(filtered: &DMatrix<f64>) -> f64 {
    filtered.trace()
}
