use thiserror::Error;

/// Errors produced by model construction, schedulers, and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite entries, dimension mismatches, or asymmetric inputs.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Configuration violates a scheduler or harness precondition.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A matrix slated for inversion is singular or nearly so.
    #[error("ill-conditioned matrix: condition estimate {cond:.3e} exceeds {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// An enumeration would exceed its configured size cap.
    #[error("enumeration cap exceeded: {required} > cap {cap}")]
    CapExceeded { required: u128, cap: u128 },

    /// Attempt to add a sensor index that is already selected.
    #[error("sensor {index} is already selected")]
    DuplicateSensor { index: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
