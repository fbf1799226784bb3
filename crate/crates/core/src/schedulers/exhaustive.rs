//! Exact selection by exhaustive enumeration.
//!
//! The optimal schedule is found by scanning every `k`-subset in
//! lexicographic order, evaluating each with direct summation and
//! factorization (not the incremental rank-one path, so this can serve as an
//! independent oracle for the greedy family). Ties keep the lexicographically
//! smallest set.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spd;

use super::SelectionResult;

/// Default cap on the number of enumerated subsets.
pub const DEFAULT_ENUM_CAP: u128 = 2_000_000;

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Advance `idx` to the next k-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in (i + 1)..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Exact maximizer of the selection objective over all `k`-subsets.
///
/// Refuses when `C(n, k)` exceeds `cap`.
pub fn brute_force(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    k: usize,
    cap: u128,
) -> Result<SelectionResult> {
    let n = rows.len();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "budget k = {k} outside [1, {n}]"
        )));
    }
    let count = binomial(n, k);
    if count > cap {
        return Err(Error::CapExceeded {
            required: count,
            cap,
        });
    }
    let start = Instant::now();
    let p_inv = spd::invert_guarded(predicted, "predicted covariance")?;
    let base = predicted.trace();
    let m = predicted.nrows();

    let mut idx: Vec<usize> = (0..k).collect();
    let mut best_idx = idx.clone();
    let mut best_obj = f64::NEG_INFINITY;
    let mut best_mse = f64::NAN;
    let mut fisher = DMatrix::<f64>::zeros(m, m);
    loop {
        fisher.copy_from(&p_inv);
        for &i in &idx {
            fisher.ger(1.0 / noise_var, &rows[i], &rows[i], 1.0);
        }
        spd::symmetrize(&mut fisher);
        let chol = nalgebra::Cholesky::new(fisher.clone()).ok_or(Error::IllConditioned {
            cond: f64::INFINITY,
            limit: spd::COND_LIMIT,
        })?;
        let mse = chol.inverse().trace();
        let obj = base - mse;
        if obj > best_obj {
            best_obj = obj;
            best_mse = mse;
            best_idx.copy_from_slice(&idx);
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    Ok(SelectionResult {
        selected: best_idx,
        objective: best_obj,
        mse: best_mse,
        elapsed: start.elapsed(),
        gain_trace: Vec::new(),
    })
}
