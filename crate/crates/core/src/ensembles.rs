//! Random measurement ensembles.
//!
//! Two row distributions, both zero-mean with covariance `(1/m) I_m` and
//! `E||a||^2 = 1`:
//!
//! * Gaussian: `a ~ N(0, (1/m) I_m)`, norm bound holds only in expectation.
//! * Centered Bernoulli: entries `+-1/sqrt(m)` equiprobable, so every row
//!   has `||a||^2 = 1` exactly.

use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::MeasurementMatrix;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnsembleKind {
    Gaussian,
    Bernoulli,
}

impl EnsembleKind {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Gaussian => "gaussian",
            EnsembleKind::Bernoulli => "bernoulli",
        }
    }

    /// Row-entry variance `sigma_a^2 = 1/m` shared by both ensembles.
    pub fn row_var(m: usize) -> f64 {
        1.0 / m as f64
    }

    /// Squared-norm bound `C`; both ensembles use `C = 1`.
    pub fn norm_bound() -> f64 {
        1.0
    }
}

impl std::fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "gaussian" => Ok(EnsembleKind::Gaussian),
            "bernoulli" => Ok(EnsembleKind::Bernoulli),
            other => Err(Error::InvalidConfig(format!("unknown ensemble '{other}'"))),
        }
    }
}

/// Description of a measurement ensemble: distribution, dimensions, seed.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub state_dim: usize,
    pub num_sensors: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, state_dim: usize, num_sensors: usize, seed: u64) -> Result<Self> {
        if state_dim == 0 || num_sensors == 0 {
            return Err(Error::InvalidInput(
                "ensemble dimensions must be at least 1".into(),
            ));
        }
        Ok(Self {
            kind,
            state_dim,
            num_sensors,
            seed,
        })
    }

    /// Measurement matrix for time step `t`, drawn from a per-step substream
    /// so any step can be regenerated independently.
    pub fn rows_at(&self, t: usize) -> MeasurementMatrix {
        let mut rng = rng_from_seed(derive_seed(self.seed, t as u64));
        let rows = sample_rows(self.kind, self.state_dim, self.num_sensors, &mut rng);
        MeasurementMatrix { rows, time_index: t }
    }

    /// Measurement matrices for steps `0..steps`.
    pub fn horizon(&self, steps: usize) -> Vec<MeasurementMatrix> {
        (0..steps).map(|t| self.rows_at(t)).collect()
    }
}

fn sample_rows(
    kind: EnsembleKind,
    m: usize,
    n: usize,
    rng: &mut impl Rng,
) -> Vec<DVector<f64>> {
    let scale = (1.0 / m as f64).sqrt();
    (0..n)
        .map(|_| match kind {
            EnsembleKind::Gaussian => {
                DVector::from_fn(m, |_, _| scale * rng.sample::<f64, _>(StandardNormal))
            }
            EnsembleKind::Bernoulli => {
                DVector::from_fn(m, |_, _| if rng.random_bool(0.5) { scale } else { -scale })
            }
        })
        .collect()
}

/// Gaussian rows `a ~ N(0, (1/m) I_m)` at time step 0.
pub fn gaussian_rows(spec: &EnsembleSpec) -> MeasurementMatrix {
    let mut rng = rng_from_seed(derive_seed(spec.seed, 0));
    let rows = sample_rows(
        EnsembleKind::Gaussian,
        spec.state_dim,
        spec.num_sensors,
        &mut rng,
    );
    MeasurementMatrix {
        rows,
        time_index: 0,
    }
}

/// Centered Bernoulli rows with entries `+-1/sqrt(m)` at time step 0.
pub fn bernoulli_rows(spec: &EnsembleSpec) -> MeasurementMatrix {
    let mut rng = rng_from_seed(derive_seed(spec.seed, 0));
    let rows = sample_rows(
        EnsembleKind::Bernoulli,
        spec.state_dim,
        spec.num_sensors,
        &mut rng,
    );
    MeasurementMatrix {
        rows,
        time_index: 0,
    }
}
