//! Continuous relaxation of the selection problem, solved by projected
//! gradient descent over the capped simplex.
//!
//! The relaxed problem is
//!
//! ```text
//! min_z  Tr( (P^-1 + sigma^-2 sum_i z_i a_i a_i^T)^-1 )
//! s.t.   0 <= z_i <= 1,  sum_i z_i = k
//! ```
//!
//! whose objective gradient is `d/dz_i = -sigma^-2 a_i^T F(z)^-2 a_i`. The
//! fractional optimum lower-bounds the MSE of every integer schedule; an
//! integer schedule is recovered by keeping the `k` largest weights (ties to
//! the lowest index). Step sizes come from a backtracking Armijo line search.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::fisher::FisherState;
use crate::spd;

use super::SelectionResult;

/// Projected-gradient solver knobs.
#[derive(Debug, Clone)]
pub struct RelaxationConfig {
    /// Iteration cap; hitting it returns the best iterate, flagged unconverged.
    pub max_iters: usize,
    /// Stop once an accepted step decreases the objective by less than this.
    pub tol: f64,
    /// Armijo sufficient-decrease constant.
    pub armijo: f64,
}

impl Default for RelaxationConfig {
    fn default() -> Self {
        Self {
            max_iters: 500,
            tol: 1e-7,
            armijo: 1e-4,
        }
    }
}

/// Result of the relaxation: the rounded integer schedule plus the fractional
/// solution it was rounded from.
#[derive(Debug, Clone)]
pub struct RelaxationOutcome {
    pub result: SelectionResult,
    /// MSE of the fractional optimum - a lower bound on any size-k schedule.
    pub fractional_mse: f64,
    /// Objective value of the fractional optimum.
    pub fractional_objective: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Final fractional weights.
    pub weights: Vec<f64>,
}

/// Euclidean projection onto `{z : 0 <= z_i <= 1, sum z_i = budget}`.
///
/// Sorted-threshold algorithm: the projection is `z_i = clamp(v_i - tau)`
/// where the water level `tau` solves `sum_i clamp(v_i - tau, 0, 1) = budget`.
/// The sum is piecewise linear and nonincreasing in `tau` with breakpoints at
/// `v_i` and `v_i - 1`, so scanning the sorted breakpoints finds the crossing
/// segment exactly.
pub fn project_capped_simplex(v: &DVector<f64>, budget: usize) -> DVector<f64> {
    let n = v.len();
    assert!(budget <= n, "budget {budget} exceeds dimension {n}");
    if budget == n {
        return DVector::from_element(n, 1.0);
    }
    if budget == 0 {
        return DVector::zeros(n);
    }
    let k = budget as f64;

    // events: (breakpoint, original value, enters interior?)
    let mut events: Vec<(f64, f64, bool)> = Vec::with_capacity(2 * n);
    for &vi in v.iter() {
        events.push((vi - 1.0, vi, true)); // z_i leaves the cap at tau = v_i - 1
        events.push((vi, vi, false)); // z_i hits zero at tau = v_i
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut at_cap = n as f64; // sum over z_i currently pinned at 1
    let mut interior = 0.0f64; // count of coordinates in (0, 1)
    let mut interior_sum = 0.0f64; // sum of their v_i
    let mut prev = events[0].0;

    for &(b, vi, enters) in &events {
        if b > prev {
            // segment [prev, b]: sum(tau) = at_cap + interior_sum - interior * tau
            if interior > 0.0 {
                let tau = (at_cap + interior_sum - k) / interior;
                if tau >= prev - 1e-12 && tau <= b + 1e-12 {
                    return clamp_shift(v, tau.clamp(prev, b));
                }
            } else if (at_cap - k).abs() < 1e-9 {
                return clamp_shift(v, prev);
            }
            prev = b;
        }
        if enters {
            at_cap -= 1.0;
            interior += 1.0;
            interior_sum += vi;
        } else {
            interior -= 1.0;
            interior_sum -= vi;
        }
    }
    // crossing is guaranteed for 0 < budget < n; reaching here means the scan
    // was defeated by degenerate float ties, so fall back to bisection
    let (mut lo, mut hi) = (events[0].0 - 1.0, events[events.len() - 1].0 + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let s: f64 = v.iter().map(|&vi| (vi - mid).clamp(0.0, 1.0)).sum();
        if s > k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    clamp_shift(v, 0.5 * (lo + hi))
}

fn clamp_shift(v: &DVector<f64>, tau: f64) -> DVector<f64> {
    v.map(|vi| (vi - tau).clamp(0.0, 1.0))
}

struct RelaxedObjective<'a> {
    p_inv: DMatrix<f64>,
    /// Candidate rows stacked as an n x m matrix.
    rows_mat: DMatrix<f64>,
    rows: &'a [DVector<f64>],
    noise_var: f64,
}

impl<'a> RelaxedObjective<'a> {
    fn new(predicted: &DMatrix<f64>, rows: &'a [DVector<f64>], noise_var: f64) -> Result<Self> {
        let p_inv = spd::invert_guarded(predicted, "predicted covariance")?;
        let m = predicted.nrows();
        let n = rows.len();
        let mut rows_mat = DMatrix::zeros(n, m);
        for (i, a) in rows.iter().enumerate() {
            if a.len() != m {
                return Err(Error::InvalidInput(format!(
                    "row {i} has dimension {}, expected {m}",
                    a.len()
                )));
            }
            rows_mat.row_mut(i).copy_from(&a.transpose());
        }
        Ok(Self {
            p_inv,
            rows_mat,
            rows,
            noise_var,
        })
    }

    fn information(&self, z: &DVector<f64>) -> DMatrix<f64> {
        // F(z) = P^-1 + A^T diag(z/sigma^2) A, assembled with two GEMMs
        let mut weighted = self.rows_mat.clone();
        for (i, mut row) in weighted.row_iter_mut().enumerate() {
            row *= z[i] / self.noise_var;
        }
        let mut f = &self.p_inv + self.rows_mat.transpose() * weighted;
        spd::symmetrize(&mut f);
        f
    }

    fn mse(&self, z: &DVector<f64>) -> Result<f64> {
        let f = self.information(z);
        let chol = nalgebra::Cholesky::new(f).ok_or(Error::IllConditioned {
            cond: f64::INFINITY,
            limit: spd::COND_LIMIT,
        })?;
        Ok(chol.inverse().trace())
    }

    fn mse_and_grad(&self, z: &DVector<f64>) -> Result<(f64, DVector<f64>)> {
        let f = self.information(z);
        let chol = nalgebra::Cholesky::new(f).ok_or(Error::IllConditioned {
            cond: f64::INFINITY,
            limit: spd::COND_LIMIT,
        })?;
        let inv = chol.inverse();
        let mse = inv.trace();
        // grad_i = -sigma^-2 ||F^-1 a_i||^2; the i-th row of A F^-1 is (F^-1 a_i)^T
        let scaled = &self.rows_mat * &inv;
        let grad = DVector::from_fn(self.rows_mat.nrows(), |i, _| {
            -scaled.row(i).norm_squared() / self.noise_var
        });
        Ok((mse, grad))
    }
}

/// Solve the capped-simplex relaxation by projected gradient descent and
/// round the fractional weights to an integer schedule of size `k`.
pub fn relaxation_schedule(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    k: usize,
    cfg: &RelaxationConfig,
) -> Result<RelaxationOutcome> {
    let n = rows.len();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "budget k = {k} outside [1, {n}]"
        )));
    }
    let start = Instant::now();
    let obj = RelaxedObjective::new(predicted, rows, noise_var)?;

    let mut z = DVector::from_element(n, k as f64 / n as f64);
    let (mut h, mut grad) = obj.mse_and_grad(&z)?;
    let mut best_z = z.clone();
    let mut best_h = h;
    let mut eta = 1.0f64;
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..cfg.max_iters {
        iterations += 1;
        let mut step = eta;
        let mut accepted = None;
        for _ in 0..60 {
            let z_try = project_capped_simplex(&(&z - step * &grad), k);
            let h_try = obj.mse(&z_try)?;
            let predicted_drop = grad.dot(&(&z_try - &z));
            if h_try <= h + cfg.armijo * predicted_drop {
                accepted = Some((z_try, h_try));
                break;
            }
            step *= 0.5;
        }
        let Some((z_new, h_new)) = accepted else {
            // no descent direction survives the line search: stationary
            converged = true;
            break;
        };
        let decrease = h - h_new;
        z = z_new;
        h = h_new;
        if h < best_h {
            best_h = h;
            best_z = z.clone();
        }
        eta = (step * 2.0).min(1e8);
        if decrease < cfg.tol {
            converged = true;
            break;
        }
        (h, grad) = obj.mse_and_grad(&z)?;
    }

    // round: keep the k largest weights, ties to the lowest index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| best_z[b].total_cmp(&best_z[a]).then(a.cmp(&b)));
    let mut selected: Vec<usize> = order[..k].to_vec();
    selected.sort_unstable();

    let mut state = FisherState::init(predicted, noise_var)?;
    let mut gains = Vec::with_capacity(k);
    for &j in &selected {
        gains.push(state.add_sensor(j, &rows[j])?);
    }
    let result = SelectionResult::from_state(&state, start.elapsed(), gains);
    Ok(RelaxationOutcome {
        result,
        fractional_mse: best_h,
        fractional_objective: predicted.trace() - best_h,
        converged,
        iterations,
        weights: best_z.iter().copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;

    use crate::rng::rng_from_seed;

    fn bisection_projection(v: &DVector<f64>, budget: usize) -> DVector<f64> {
        let k = budget as f64;
        let (mut lo, mut hi) = (-1e6, 1e6);
        for _ in 0..500 {
            let mid = 0.5 * (lo + hi);
            let s: f64 = v.iter().map(|&vi| (vi - mid).clamp(0.0, 1.0)).sum();
            if s > k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        clamp_shift(v, 0.5 * (lo + hi))
    }

    #[test]
    fn projection_feasible_point_is_fixed() {
        let v = DVector::from_vec(vec![1.0, 0.5, 0.5, 0.0]);
        let z = project_capped_simplex(&v, 2);
        assert_relative_eq!(z, v, epsilon = 1e-9);
    }

    #[test]
    fn projection_full_budget_is_all_ones() {
        let v = DVector::from_vec(vec![-3.0, 0.2, 9.0]);
        let z = project_capped_simplex(&v, 3);
        assert_eq!(z, DVector::from_element(3, 1.0));
    }

    #[test]
    fn projection_matches_bisection_oracle() {
        let mut rng = rng_from_seed(21);
        for trial in 0..300 {
            let n = rng.random_range(1..=12);
            let budget = rng.random_range(0..=n);
            let v = DVector::from_fn(n, |_, _| rng.random_range(-3.0..3.0));
            let fast = project_capped_simplex(&v, budget);
            let slow = bisection_projection(&v, budget);
            assert!(
                (&fast - &slow).amax() < 1e-7,
                "trial {trial}: fast {fast:?} vs slow {slow:?} for v {v:?} budget {budget}"
            );
            let sum: f64 = fast.iter().sum();
            assert!((sum - budget as f64).abs() < 1e-9, "sum {sum} != {budget}");
            assert!(fast.iter().all(|&x| (-1e-12..=1.0 + 1e-12).contains(&x)));
        }
    }

    #[test]
    fn projection_handles_ties() {
        // all coordinates identical: projection spreads the budget evenly
        let v = DVector::from_element(5, 0.7);
        let z = project_capped_simplex(&v, 3);
        for &x in z.iter() {
            assert_relative_eq!(x, 0.6, epsilon = 1e-9);
        }
    }
}
