//! Randomized and classic greedy selection.
//!
//! Both share one loop: at each of the `k` iterations, evaluate the marginal
//! gain of every candidate in the scan set and commit the best (ties go to
//! the lowest sensor index). Classic greedy scans the full unselected pool;
//! randomized greedy scans a uniform random sample of size
//! `s = ceil((n/k) ln(1/epsilon))`, clamped to the pool when the pool is
//! smaller. Total work is `O(k s m^2)` - the loop never factorizes a matrix.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fisher::FisherState;
use crate::rng::{rng_from_seed, sample_without_replacement};

use super::{SchedulerConfig, SelectionResult};

/// Candidate sample size per iteration: `ceil((n/k) ln(1/epsilon))`.
///
/// At `epsilon = e^-k` this is `n`, so every scan covers the whole remaining
/// pool and the algorithm coincides with classic greedy.
pub fn sample_size(n: usize, k: usize, epsilon: f64) -> usize {
    let s = (n as f64 / k as f64) * (1.0 / epsilon).ln();
    s.ceil() as usize
}

/// Shared greedy loop. `sampler = None` scans the full pool every iteration.
fn greedy_core(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    k: usize,
    mut sampler: Option<(usize, ChaCha8Rng)>,
) -> Result<(FisherState, Vec<f64>)> {
    let n = rows.len();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "budget k = {k} outside [1, {n}]"
        )));
    }
    let mut state = FisherState::init(predicted, noise_var)?;
    let mut selected_mask = vec![false; n];
    let mut gains = Vec::with_capacity(k);
    let mut pool: Vec<usize> = Vec::with_capacity(n);
    let mut candidates: Vec<usize> = Vec::new();

    for _ in 0..k {
        pool.clear();
        pool.extend((0..n).filter(|&i| !selected_mask[i]));

        // ascending candidate order makes the strict argmax break ties
        // toward the lowest index
        let scan: &[usize] = match sampler {
            Some((s, ref mut rng)) if s < pool.len() => {
                sample_without_replacement(rng, &mut pool, s);
                candidates.clear();
                candidates.extend_from_slice(&pool[..s]);
                candidates.sort_unstable();
                &candidates
            }
            _ => &pool,
        };

        let mut best = scan[0];
        let mut best_gain = f64::NEG_INFINITY;
        for &j in scan {
            let g = state.marginal_gain(&rows[j]);
            if g > best_gain {
                best_gain = g;
                best = j;
            }
        }
        state.add_sensor(best, &rows[best])?;
        selected_mask[best] = true;
        gains.push(best_gain);
    }
    Ok((state, gains))
}

/// Randomized greedy selection.
///
/// Each iteration samples `sample_size(n, k, epsilon)` distinct candidates
/// uniformly without replacement from the unselected pool (the whole pool
/// when it is smaller), and commits the candidate with the largest marginal
/// gain. Deterministic given `cfg.seed`.
pub fn randomized_greedy(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    cfg: &SchedulerConfig,
) -> Result<SelectionResult> {
    cfg.validate(rows.len())?;
    let start = Instant::now();
    let s = sample_size(rows.len(), cfg.k, cfg.epsilon);
    let rng = rng_from_seed(cfg.seed);
    let (state, gains) = greedy_core(predicted, rows, noise_var, cfg.k, Some((s, rng)))?;
    Ok(SelectionResult::from_state(&state, start.elapsed(), gains))
}

/// Classic greedy selection: every iteration scans all unselected sensors.
pub fn greedy(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    k: usize,
) -> Result<SelectionResult> {
    let start = Instant::now();
    let (state, gains) = greedy_core(predicted, rows, noise_var, k, None)?;
    Ok(SelectionResult::from_state(&state, start.elapsed(), gains))
}
