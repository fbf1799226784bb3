//! Sensor-selection policies behind one common interface.
//!
//! All schedulers maximize the per-step objective `f(S) = Tr(P_pred) -
//! Tr(F_S^-1)` over subsets of size `k` (the uniform-matroid constraint).
//! Available methods:
//!
//! * [`randomized_greedy`] - per iteration, scans a uniform random sample of
//!   `s = ceil((n/k) ln(1/epsilon))` unselected candidates and commits the
//!   best; `epsilon = e^-k` makes every scan exhaustive and reproduces the
//!   classic greedy scheme exactly.
//! * [`greedy`] - the classic full-scan greedy.
//! * [`brute_force`] - exact maximizer by enumeration, for small instances.
//! * [`relaxation_schedule`] - continuous relaxation over the capped simplex
//!   solved by projected gradient descent, rounded to the top-k weights.
//! * [`random_baseline`] - uniform random subset, as a control.

mod exhaustive;
mod greedy;
mod relaxation;

pub use exhaustive::{binomial, brute_force, DEFAULT_ENUM_CAP};
pub use greedy::{greedy, randomized_greedy, sample_size};
pub use relaxation::{
    project_capped_simplex, relaxation_schedule, RelaxationConfig, RelaxationOutcome,
};

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fisher::FisherState;
use crate::model::{filter_covariance, mse_of, predict_covariance, CovarianceState,
    MeasurementMatrix, SystemModel};
use crate::rng::{derive_seed, rng_from_seed, sample_without_replacement};

/// Selection policy identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    RandomizedGreedy,
    Greedy,
    Relaxation,
    Oracle,
    Random,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::RandomizedGreedy,
        Method::Greedy,
        Method::Relaxation,
        Method::Oracle,
        Method::Random,
    ];

    /// Stable identifier used in CLI flags and CSV output.
    pub fn name(self) -> &'static str {
        match self {
            Method::RandomizedGreedy => "randomized-greedy",
            Method::Greedy => "greedy",
            Method::Relaxation => "relaxation",
            Method::Oracle => "oracle",
            Method::Random => "random",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "randomized-greedy" | "randomized_greedy" | "rg" => Ok(Method::RandomizedGreedy),
            "greedy" => Ok(Method::Greedy),
            "relaxation" => Ok(Method::Relaxation),
            "oracle" | "brute-force" | "brute_force" => Ok(Method::Oracle),
            "random" => Ok(Method::Random),
            other => Err(Error::InvalidConfig(format!("unknown method '{other}'"))),
        }
    }
}

/// Budget, sampling parameter, seed, and method for one scheduler run.
#[derive(Debug, Clone)]
pub struct SchedulerConfig {
    /// Number of sensors to select, `1 <= k <= n`.
    pub k: usize,
    /// Sampling parameter for randomized greedy, `e^-k <= epsilon < 1`.
    pub epsilon: f64,
    /// RNG seed for stochastic methods.
    pub seed: u64,
    pub method: Method,
}

impl SchedulerConfig {
    pub fn new(k: usize, epsilon: f64, seed: u64, method: Method) -> Self {
        Self {
            k,
            epsilon,
            seed,
            method,
        }
    }

    /// Smallest admissible epsilon for budget `k` (the greedy limit).
    pub fn epsilon_min(k: usize) -> f64 {
        (-(k as f64)).exp()
    }

    /// Check the config against an instance with `n` sensors.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidConfig("budget k must be at least 1".into()));
        }
        if self.k > n {
            return Err(Error::InvalidConfig(format!(
                "budget k = {} exceeds sensor count n = {n}",
                self.k
            )));
        }
        if self.method == Method::RandomizedGreedy {
            let lo = Self::epsilon_min(self.k);
            if !(self.epsilon >= lo && self.epsilon < 1.0) {
                return Err(Error::InvalidConfig(format!(
                    "epsilon = {} outside [e^-k, 1) = [{lo:.3e}, 1)",
                    self.epsilon
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of a single scheduler run.
#[derive(Debug, Clone)]
pub struct SelectionResult {
    /// Selected sensor indices. Greedy-family methods record selection order;
    /// set-valued methods record ascending order.
    pub selected: Vec<usize>,
    /// Achieved objective `f(S)`.
    pub objective: f64,
    /// Achieved MSE `Tr(F_S^-1)`.
    pub mse: f64,
    /// Wall-clock time of the selection itself.
    pub elapsed: Duration,
    /// Per-iteration marginal gains, where the method has them.
    pub gain_trace: Vec<f64>,
}

impl SelectionResult {
    pub(crate) fn from_state(state: &FisherState, elapsed: Duration, gains: Vec<f64>) -> Self {
        Self {
            selected: state.selected().to_vec(),
            objective: state.objective(),
            mse: state.mse(),
            elapsed,
            gain_trace: gains,
        }
    }

    /// Selected indices in ascending order, for set comparisons.
    pub fn selected_sorted(&self) -> Vec<usize> {
        let mut s = self.selected.clone();
        s.sort_unstable();
        s
    }
}

/// Run the configured method on one instance.
///
/// `predicted` is the prediction covariance `P_pred`, `rows` the candidate
/// measurement vectors, `noise_var` the measurement noise variance.
pub fn run_method(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    cfg: &SchedulerConfig,
) -> Result<SelectionResult> {
    cfg.validate(rows.len())?;
    match cfg.method {
        Method::RandomizedGreedy => randomized_greedy(predicted, rows, noise_var, cfg),
        Method::Greedy => greedy(predicted, rows, noise_var, cfg.k),
        Method::Relaxation => relaxation_schedule(
            predicted,
            rows,
            noise_var,
            cfg.k,
            &RelaxationConfig::default(),
        )
        .map(|o| o.result),
        Method::Oracle => brute_force(predicted, rows, noise_var, cfg.k, DEFAULT_ENUM_CAP),
        Method::Random => random_baseline(predicted, rows, noise_var, cfg.k, cfg.seed),
    }
}

/// Uniform random `k`-subset baseline. Deterministic given the seed.
pub fn random_baseline(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    k: usize,
    seed: u64,
) -> Result<SelectionResult> {
    let n = rows.len();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "budget k = {k} outside [1, {n}]"
        )));
    }
    let start = Instant::now();
    let mut rng = rng_from_seed(seed);
    let mut pool: Vec<usize> = (0..n).collect();
    sample_without_replacement(&mut rng, &mut pool, k);
    let mut chosen: Vec<usize> = pool[..k].to_vec();
    chosen.sort_unstable();

    let mut state = FisherState::init(predicted, noise_var)?;
    let mut gains = Vec::with_capacity(k);
    for &j in &chosen {
        gains.push(state.add_sensor(j, &rows[j])?);
    }
    Ok(SelectionResult::from_state(&state, start.elapsed(), gains))
}

/// One time step of a horizon schedule.
#[derive(Debug, Clone)]
pub struct ScheduleStep {
    /// Time index, starting at 1.
    pub t: usize,
    pub result: SelectionResult,
    pub covariance: CovarianceState,
    /// MSE from the direct-factorization covariance recursion.
    pub mse: f64,
}

/// Per-step selections and covariances over a full horizon.
#[derive(Debug, Clone)]
pub struct Schedule {
    pub steps: Vec<ScheduleStep>,
}

impl Schedule {
    pub fn mse_trace(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.mse).collect()
    }
}

/// Run the Kalman covariance recursion over a horizon, selecting sensors at
/// every step with the configured method.
///
/// Step `i` (zero-based) predicts from the previous filtered covariance,
/// selects from `matrices[i]`, filters with the selected rows via the direct
/// reference path, and records both. Stochastic methods draw their per-step
/// seed from `derive_seed(cfg.seed, i)`.
pub fn schedule_horizon(
    model: &SystemModel,
    matrices: &[MeasurementMatrix],
    cfg: &SchedulerConfig,
) -> Result<Schedule> {
    if matrices.is_empty() {
        return Err(Error::InvalidConfig("horizon has no measurement matrices".into()));
    }
    cfg.validate(model.num_sensors)?;
    let mut filtered = model.initial_cov.clone();
    let mut steps = Vec::with_capacity(matrices.len());
    for (i, mat) in matrices.iter().enumerate() {
        mat.check_against(model)?;
        let predicted = predict_covariance(&filtered, model, i)?;
        let step_cfg = SchedulerConfig {
            seed: derive_seed(cfg.seed, i as u64),
            ..cfg.clone()
        };
        let result = run_method(&predicted, &mat.rows, model.measurement_noise_var, &step_cfg)?;
        let picked = mat.select(&result.selected);
        let new_filtered =
            filter_covariance(&predicted, &picked, model.measurement_noise_var)?;
        let mse = mse_of(&new_filtered);
        steps.push(ScheduleStep {
            t: i + 1,
            result,
            covariance: CovarianceState::new(predicted, new_filtered.clone())?,
            mse,
        });
        filtered = new_filtered;
    }
    Ok(Schedule { steps })
}
