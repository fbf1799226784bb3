//! Element-wise curvature of the selection objective, the approximation
//! constants derived from it, and the probabilistic curvature bound for
//! random measurement ensembles.
//!
//! For a monotone set function `f`, the element-wise curvature at distance
//! `l` is
//!
//! ```text
//! C_l = max f_i(T) / f_i(S)   over  S subset T, |T \ S| = l, i outside T
//! ```
//!
//! with `C_max = max_l C_l`. Submodularity is exactly `C_max <= 1`; the
//! selection objective here is monotone but not submodular, so `C_max` can
//! exceed one. The guarantee constant is `c = max(1, C_max)` and the
//! approximation factor of the randomized scheme is
//! `alpha = 1 - e^(-1/c) - epsilon/c`.
//!
//! All curvature ratios are computed with the direct summation-and-
//! factorization objective, never the incremental rank-one path, so these
//! routines stay independent of the implementation they are used to judge.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::error::{Error, Result};
use crate::rng::{rng_from_seed, sample_without_replacement};
use crate::spd;

/// Default cap on `n` for exhaustive triple enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 12;

/// Ratios whose denominator gain is below this are excluded from the max;
/// a zero-gain sensor makes the ratio 0/0.
pub const GAIN_FLOOR: f64 = 1e-14;

/// Curvature constants of one instance.
#[derive(Debug, Clone)]
pub struct CurvatureReport {
    /// `C_l` for `l = 1..=n-1` (index `l - 1`). In sampled mode these are
    /// lower estimates of the true maxima.
    pub per_l: Vec<f64>,
    /// Max over `per_l`.
    pub c_max: f64,
    /// Guarantee constant `max(1, c_max)`.
    pub c: f64,
    /// Sampling parameter the report was built for.
    pub epsilon: f64,
    /// Approximation factor `1 - e^(-1/c) - epsilon/c`.
    pub alpha: f64,
    /// True when every (S, T, i) triple was enumerated; false means the
    /// constants are lower bounds from sampling.
    pub exhaustive: bool,
    /// Number of ratios dropped for having a denominator below [`GAIN_FLOOR`].
    pub excluded: usize,
    /// Number of sampled triples (0 in exhaustive mode).
    pub samples: usize,
}

/// Quantities of the probabilistic curvature bound.
#[derive(Debug, Clone, Copy)]
pub struct ProbabilisticBound {
    /// Upper bound on `C_max`, valid with probability at least `probability`.
    pub bound: f64,
    /// Success probability `p = 1 - m exp(-q^2/2 / ((C - s_a^2)(n s_a^2 + q/3)))`.
    pub probability: f64,
    /// The spectral floor `phi = (1/lambda_min + (n s_a^2 + q)/sigma^2)^-1`.
    pub phi: f64,
}

/// Approximation factor `alpha = 1 - e^(-1/c) - epsilon/c`.
pub fn alpha_of(c: f64, epsilon: f64) -> f64 {
    1.0 - (-1.0 / c).exp() - epsilon / c
}

/// Lemma coefficient `C(r) = (1/r)(1 + sum_{l=1}^{r-1} C_l)`.
pub fn lemma1_coefficient(per_l: &[f64], r: usize) -> f64 {
    assert!(r >= 1);
    let partial: f64 = per_l[..r - 1].iter().sum();
    (1.0 + partial) / r as f64
}

/// Direct-path objective evaluator with the base inversion hoisted out.
///
/// `value(mask)` computes `f(S)` for the subset encoded in `mask` by summing
/// outer products and factorizing, exactly like the reference
/// `objective_of_set`, just without re-inverting `P` per call.
struct DirectObjective<'a> {
    p_inv: DMatrix<f64>,
    base: f64,
    rows: &'a [DVector<f64>],
    noise_var: f64,
}

impl<'a> DirectObjective<'a> {
    fn new(predicted: &DMatrix<f64>, rows: &'a [DVector<f64>], noise_var: f64) -> Result<Self> {
        Ok(Self {
            p_inv: spd::invert_guarded(predicted, "predicted covariance")?,
            base: predicted.trace(),
            rows,
            noise_var,
        })
    }

    fn value_mask(&self, mask: u64) -> Result<f64> {
        let mut fisher = self.p_inv.clone();
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            fisher.ger(1.0 / self.noise_var, &self.rows[i], &self.rows[i], 1.0);
            bits &= bits - 1;
        }
        spd::symmetrize(&mut fisher);
        let chol = nalgebra::Cholesky::new(fisher).ok_or(Error::IllConditioned {
            cond: f64::INFINITY,
            limit: spd::COND_LIMIT,
        })?;
        Ok(self.base - chol.inverse().trace())
    }
}

/// Exact element-wise curvatures by enumeration of every (S, T, i) triple.
///
/// Requires `n <= size_cap`; all `2^n` subset objectives are tabulated with
/// the direct path first, then the `~3^n` nested pairs are scanned.
pub fn curvature_exhaustive(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    epsilon: f64,
    size_cap: usize,
) -> Result<CurvatureReport> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::InvalidConfig(
            "curvature needs at least two sensors".into(),
        ));
    }
    if n > size_cap {
        return Err(Error::CapExceeded {
            required: n as u128,
            cap: size_cap as u128,
        });
    }
    let direct = DirectObjective::new(predicted, rows, noise_var)?;
    let full: u64 = (1u64 << n) - 1;
    let mut table = vec![0.0f64; 1 << n];
    for (mask, slot) in table.iter_mut().enumerate() {
        *slot = direct.value_mask(mask as u64)?;
    }
    let gain = |mask: u64, i: usize| table[(mask | (1 << i)) as usize] - table[mask as usize];

    let mut per_l = vec![0.0f64; n - 1];
    let mut excluded = 0usize;
    for t_mask in 0u64..=full {
        if t_mask == full || t_mask == 0 {
            continue; // need i outside T and a strict submask below T
        }
        let t_count = t_mask.count_ones() as usize;
        // strict submasks of t_mask, including the empty set
        let mut s_mask = (t_mask - 1) & t_mask;
        loop {
            let l = t_count - s_mask.count_ones() as usize;
            let mut outside = !t_mask & full;
            while outside != 0 {
                let i = outside.trailing_zeros() as usize;
                outside &= outside - 1;
                let denom = gain(s_mask, i);
                if denom < GAIN_FLOOR {
                    excluded += 1;
                    continue;
                }
                let ratio = gain(t_mask, i) / denom;
                if ratio > per_l[l - 1] {
                    per_l[l - 1] = ratio;
                }
            }
            if s_mask == 0 {
                break;
            }
            s_mask = (s_mask - 1) & t_mask;
        }
    }
    let c_max = per_l.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c = c_max.max(1.0);
    Ok(CurvatureReport {
        per_l,
        c_max,
        c,
        epsilon,
        alpha: alpha_of(c, epsilon),
        exhaustive: true,
        excluded,
        samples: 0,
    })
}

/// Lower estimate of the curvature constants from random (S, T, i) triples,
/// for instances too large to enumerate. Deterministic given the seed.
pub fn curvature_sampled(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    epsilon: f64,
    samples: usize,
    seed: u64,
) -> Result<CurvatureReport> {
    let n = rows.len();
    if n < 2 {
        return Err(Error::InvalidConfig(
            "curvature needs at least two sensors".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::InvalidConfig("sample count must be positive".into()));
    }
    let direct = DirectObjective::new(predicted, rows, noise_var)?;
    let mut rng = rng_from_seed(seed);
    let mut per_l = vec![0.0f64; n - 1];
    let mut excluded = 0usize;
    let mut scratch: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        let l = rng.random_range(1..n);
        let t_count = rng.random_range(l..n);
        scratch.clear();
        scratch.extend(0..n);
        sample_without_replacement(&mut rng, &mut scratch, t_count);
        let t_set = &scratch[..t_count];
        let mut t_mask = 0u64;
        for &i in t_set {
            t_mask |= 1 << i;
        }
        // S: drop l random elements of T
        let mut t_copy: Vec<usize> = t_set.to_vec();
        sample_without_replacement(&mut rng, &mut t_copy, l);
        let mut s_mask = t_mask;
        for &i in &t_copy[..l] {
            s_mask &= !(1u64 << i);
        }
        let outside: Vec<usize> = (0..n).filter(|&i| t_mask & (1 << i) == 0).collect();
        let i = outside[rng.random_range(0..outside.len())];

        let denom = direct.value_mask(s_mask | (1 << i))? - direct.value_mask(s_mask)?;
        if denom < GAIN_FLOOR {
            excluded += 1;
            continue;
        }
        let num = direct.value_mask(t_mask | (1 << i))? - direct.value_mask(t_mask)?;
        let ratio = num / denom;
        if ratio > per_l[l - 1] {
            per_l[l - 1] = ratio;
        }
    }
    let c_max = per_l.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c = c_max.max(1.0);
    Ok(CurvatureReport {
        per_l,
        c_max,
        c,
        epsilon,
        alpha: alpha_of(c, epsilon),
        exhaustive: false,
        excluded,
        samples,
    })
}

/// Outcome of checking the curvature-sum inequality on random nested pairs.
#[derive(Debug, Clone)]
pub struct Lemma1Report {
    pub trials: usize,
    /// Pairs where `f(T) - f(S) > C(r) sum_j f_j(S)` beyond tolerance.
    pub violations: usize,
    /// Smallest observed `RHS - LHS` (negative means a violation).
    pub worst_slack: f64,
    /// Max over `r` of the lemma coefficient `C(r)`.
    pub max_coefficient: f64,
    /// Guarantee constant of the underlying curvature report.
    pub c: f64,
}

impl Lemma1Report {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

/// Check `f(T) - f(S) <= C(r) * sum_{j in T\S} f_j(S)` on random nested
/// pairs, with `C_l` from exhaustive enumeration.
pub fn lemma1_check(
    predicted: &DMatrix<f64>,
    rows: &[DVector<f64>],
    noise_var: f64,
    trials: usize,
    seed: u64,
) -> Result<Lemma1Report> {
    let n = rows.len();
    let report = curvature_exhaustive(predicted, rows, noise_var, 0.0, DEFAULT_EXHAUSTIVE_CAP)?;
    let direct = DirectObjective::new(predicted, rows, noise_var)?;
    let mut rng = rng_from_seed(seed);
    let mut violations = 0usize;
    let mut worst_slack = f64::INFINITY;
    let mut scratch: Vec<usize> = Vec::new();
    for _ in 0..trials {
        let t_count = rng.random_range(1..=n);
        let s_count = rng.random_range(0..t_count);
        scratch.clear();
        scratch.extend(0..n);
        sample_without_replacement(&mut rng, &mut scratch, t_count);
        let t_set: Vec<usize> = scratch[..t_count].to_vec();
        let mut t_shuffled = t_set.clone();
        sample_without_replacement(&mut rng, &mut t_shuffled, s_count);
        let s_set = &t_shuffled[..s_count];

        let mut t_mask = 0u64;
        for &i in &t_set {
            t_mask |= 1 << i;
        }
        let mut s_mask = 0u64;
        for &i in s_set {
            s_mask |= 1 << i;
        }
        let r = t_count - s_count;
        let lhs = direct.value_mask(t_mask)? - direct.value_mask(s_mask)?;
        let f_s = direct.value_mask(s_mask)?;
        let mut gain_sum = 0.0;
        for &j in &t_set {
            if s_mask & (1 << j) == 0 {
                gain_sum += direct.value_mask(s_mask | (1 << j))? - f_s;
            }
        }
        let rhs = lemma1_coefficient(&report.per_l, r) * gain_sum;
        let slack = rhs - lhs;
        if slack < worst_slack {
            worst_slack = slack;
        }
        if slack < -1e-10 {
            violations += 1;
        }
    }
    let max_coefficient = (1..n)
        .map(|r| lemma1_coefficient(&report.per_l, r))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Lemma1Report {
        trials,
        violations,
        worst_slack,
        max_coefficient,
        c: report.c,
    })
}

/// Probabilistic upper bound on `C_max` for i.i.d. zero-mean measurement
/// rows with covariance `row_var * I_m` and `||a||^2 <= norm_bound`.
///
/// Consumes only the spectrum `(lambda_min, lambda_max)` of the prediction
/// covariance so it can be evaluated from summary statistics.
pub fn thm2_bound(
    spectrum: (f64, f64),
    noise_var: f64,
    row_var: f64,
    norm_bound: f64,
    n: usize,
    m: usize,
    q: f64,
) -> Result<ProbabilisticBound> {
    let (lambda_min, lambda_max) = spectrum;
    if !(row_var > 0.0) || !(norm_bound > row_var) {
        return Err(Error::InvalidConfig(format!(
            "need norm bound C > row variance > 0, got C = {norm_bound}, var = {row_var}"
        )));
    }
    if !(q > 0.0) {
        return Err(Error::InvalidConfig(format!("q must be positive, got {q}")));
    }
    if !(lambda_min > 0.0 && lambda_max >= lambda_min) {
        return Err(Error::InvalidInput(format!(
            "invalid spectrum ({lambda_min}, {lambda_max})"
        )));
    }
    if !(noise_var > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "noise variance must be positive, got {noise_var}"
        )));
    }
    let phi = 1.0 / (1.0 / lambda_min + (n as f64 * row_var + q) / noise_var);
    let bound = lambda_max.powi(2) * (noise_var + lambda_max * norm_bound)
        / (phi.powi(2) * (noise_var + phi * norm_bound));
    let exponent = -(q * q / 2.0) / ((norm_bound - row_var) * (n as f64 * row_var + q / 3.0));
    let probability = 1.0 - m as f64 * exponent.exp();
    Ok(ProbabilisticBound {
        bound,
        probability,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    use crate::fisher::objective_of_set;
    use crate::rng::rng_from_seed;

    fn random_spd(m: usize, rng: &mut impl Rng) -> DMatrix<f64> {
        let a = DMatrix::from_fn(m, m, |_, _| rng.random_range(-1.0..1.0));
        let mut p = &a * a.transpose();
        for i in 0..m {
            p[(i, i)] += 0.5;
        }
        spd::symmetrize(&mut p);
        p
    }

    fn random_rows(m: usize, n: usize, rng: &mut impl Rng) -> Vec<DVector<f64>> {
        (0..n)
            .map(|_| DVector::from_fn(m, |_, _| rng.random_range(-1.0..1.0)))
            .collect()
    }

    /// Second enumerator written straight from the definition: subsets as
    /// index vectors, objectives via `objective_of_set`, no masks, no table.
    fn naive_curvature(
        predicted: &DMatrix<f64>,
        rows: &[DVector<f64>],
        noise_var: f64,
    ) -> Vec<f64> {
        let n = rows.len();
        let f = |set: &[usize]| {
            let refs: Vec<&DVector<f64>> = set.iter().map(|&i| &rows[i]).collect();
            objective_of_set(predicted, &refs, noise_var).unwrap()
        };
        let gain = |set: &[usize], i: usize| {
            let mut with = set.to_vec();
            with.push(i);
            f(&with) - f(set)
        };
        let mut per_l = vec![0.0f64; n - 1];
        for t_mask in 0u32..(1 << n) {
            let t_set: Vec<usize> = (0..n).filter(|&i| t_mask & (1 << i) != 0).collect();
            if t_set.len() == n || t_set.is_empty() {
                continue;
            }
            for s_mask in 0u32..(1 << n) {
                if s_mask & t_mask != s_mask || s_mask == t_mask {
                    continue;
                }
                let s_set: Vec<usize> = (0..n).filter(|&i| s_mask & (1 << i) != 0).collect();
                let l = t_set.len() - s_set.len();
                for i in 0..n {
                    if t_mask & (1 << i) != 0 {
                        continue;
                    }
                    let denom = gain(&s_set, i);
                    if denom < GAIN_FLOOR {
                        continue;
                    }
                    let ratio = gain(&t_set, i) / denom;
                    if ratio > per_l[l - 1] {
                        per_l[l - 1] = ratio;
                    }
                }
            }
        }
        per_l
    }

    #[test]
    fn two_sensor_instance_matches_hand_formula() {
        let mut rng = rng_from_seed(51);
        let p = random_spd(2, &mut rng);
        let rows = random_rows(2, 2, &mut rng);
        let report = curvature_exhaustive(&p, &rows, 0.1, 0.0, 12).unwrap();
        assert_eq!(report.per_l.len(), 1);

        // only triples are (S = {}, T = {j}, i != j)
        let f = |set: &[usize]| {
            let refs: Vec<&DVector<f64>> = set.iter().map(|&i| &rows[i]).collect();
            objective_of_set(&p, &refs, 0.1).unwrap()
        };
        let mut expect = f64::NEG_INFINITY;
        for j in 0..2 {
            let i = 1 - j;
            let num = f(&[j, i]) - f(&[j]);
            let den = f(&[i]);
            expect = expect.max(num / den);
        }
        assert_relative_eq!(report.per_l[0], expect, max_relative = 1e-10);
        assert_relative_eq!(report.c_max, expect, max_relative = 1e-10);
    }

    #[test]
    fn exhaustive_matches_naive_enumerator() {
        let mut rng = rng_from_seed(52);
        for _ in 0..3 {
            let (m, n) = (3, 6);
            let p = random_spd(m, &mut rng);
            let rows = random_rows(m, n, &mut rng);
            let report = curvature_exhaustive(&p, &rows, 0.05, 0.0, 12).unwrap();
            let naive = naive_curvature(&p, &rows, 0.05);
            for l in 0..n - 1 {
                assert_relative_eq!(report.per_l[l], naive[l], max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn exhaustive_with_orthogonal_rows_still_couples_through_inverse_square() {
        // orthogonal rows with P = I: gains still interact via F^-2
        let p = DMatrix::identity(3, 3);
        let rows = vec![
            DVector::from_vec(vec![1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 1.0, 0.0]),
            DVector::from_vec(vec![0.0, 0.0, 1.0]),
        ];
        let report = curvature_exhaustive(&p, &rows, 0.5, 0.0, 12).unwrap();
        let naive = naive_curvature(&p, &rows, 0.5);
        for l in 0..2 {
            assert_relative_eq!(report.per_l[l], naive[l], max_relative = 1e-10);
        }
    }

    #[test]
    fn c_max_dominates_every_level() {
        let mut rng = rng_from_seed(53);
        let p = random_spd(4, &mut rng);
        let rows = random_rows(4, 7, &mut rng);
        let report = curvature_exhaustive(&p, &rows, 0.05, 0.0, 12).unwrap();
        for &cl in &report.per_l {
            assert!(report.c_max >= cl);
        }
        assert!(report.c >= 1.0);
        assert!(report.c >= report.c_max);
    }

    #[test]
    fn exhaustive_refuses_oversized_instances() {
        let mut rng = rng_from_seed(54);
        let p = random_spd(2, &mut rng);
        let rows = random_rows(2, 14, &mut rng);
        assert!(matches!(
            curvature_exhaustive(&p, &rows, 0.05, 0.0, 12),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn sampled_is_a_lower_bound_and_approaches_exhaustive() {
        let mut rng = rng_from_seed(55);
        let (m, n) = (3, 8);
        let p = random_spd(m, &mut rng);
        let rows = random_rows(m, n, &mut rng);
        let exact = curvature_exhaustive(&p, &rows, 0.05, 0.0, 12).unwrap();
        let sampled = curvature_sampled(&p, &rows, 0.05, 0.0, 100_000, 7).unwrap();
        assert!(sampled.c_max <= exact.c_max + 1e-9);
        assert!(
            sampled.c_max >= 0.9 * exact.c_max,
            "sampled {} too far below exhaustive {}",
            sampled.c_max,
            exact.c_max
        );
        assert!(!sampled.exhaustive);
    }

    #[test]
    fn sampled_rejects_zero_samples_and_is_seed_deterministic() {
        let mut rng = rng_from_seed(56);
        let p = random_spd(3, &mut rng);
        let rows = random_rows(3, 6, &mut rng);
        assert!(curvature_sampled(&p, &rows, 0.05, 0.0, 0, 1).is_err());
        let a = curvature_sampled(&p, &rows, 0.05, 0.0, 500, 9).unwrap();
        let b = curvature_sampled(&p, &rows, 0.05, 0.0, 500, 9).unwrap();
        assert_eq!(a.per_l, b.per_l);
    }

    #[test]
    fn lemma1_single_element_difference_has_zero_slack() {
        let mut rng = rng_from_seed(57);
        let p = random_spd(3, &mut rng);
        let rows = random_rows(3, 6, &mut rng);
        let report = curvature_exhaustive(&p, &rows, 0.05, 0.0, 12).unwrap();
        let direct = DirectObjective::new(&p, &rows, 0.05).unwrap();
        // T = S + {j}: C(1) = 1 and the inequality is an identity
        let s_mask = 0b00101u64;
        let j = 4usize;
        let t_mask = s_mask | (1 << j);
        let lhs = direct.value_mask(t_mask).unwrap() - direct.value_mask(s_mask).unwrap();
        let rhs = lemma1_coefficient(&report.per_l, 1)
            * (direct.value_mask(s_mask | (1 << j)).unwrap() - direct.value_mask(s_mask).unwrap());
        assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
    }

    #[test]
    fn lemma1_holds_on_random_nested_pairs() {
        let mut rng = rng_from_seed(58);
        let (m, n) = (3, 10);
        let p = random_spd(m, &mut rng);
        let rows = random_rows(m, n, &mut rng);
        let report = lemma1_check(&p, &rows, 0.05, 200, 11).unwrap();
        assert!(report.holds(), "violations: {report:?}");
        assert!(report.worst_slack >= -1e-10);
        // the lemma coefficient never exceeds the guarantee constant
        assert!(report.max_coefficient <= report.c + 1e-12);
    }

    #[test]
    fn thm2_limit_behaviour_and_monotonicity() {
        let spec = (1.0, 1.0);
        let huge = thm2_bound(spec, 0.05, 0.25, 1.0, 10, 4, 1e9).unwrap();
        assert!(huge.probability > 1.0 - 1e-12);
        assert!(huge.phi < 1e-6);
        assert!(huge.bound > 1e12);

        let qs = [0.5, 1.0, 2.0, 4.0, 8.0];
        let mut last_p = f64::NEG_INFINITY;
        let mut last_phi = f64::INFINITY;
        for &q in &qs {
            let b = thm2_bound(spec, 0.05, 0.25, 1.0, 10, 4, q).unwrap();
            assert!(b.probability > last_p, "p not increasing at q = {q}");
            assert!(b.phi < last_phi, "phi not decreasing at q = {q}");
            last_p = b.probability;
            last_phi = b.phi;
        }
    }

    #[test]
    fn thm2_rejects_invalid_parameters() {
        assert!(thm2_bound((1.0, 1.0), 0.05, 1.0, 0.5, 10, 4, 1.0).is_err()); // C <= var
        assert!(thm2_bound((1.0, 1.0), 0.05, 0.25, 1.0, 10, 4, 0.0).is_err()); // q = 0
        assert!(thm2_bound((0.0, 1.0), 0.05, 0.25, 1.0, 10, 4, 1.0).is_err()); // bad spectrum
    }

    #[test]
    fn alpha_values_and_monotonicity() {
        assert_relative_eq!(alpha_of(1.0, 0.0), 1.0 - (-1.0f64).exp(), epsilon = 1e-12);
        assert!((alpha_of(1.0, 0.0) - 0.6321).abs() < 1e-4);
        // epsilon = e^-k approaches the submodular constant from below
        let a = alpha_of(1.0, crate::schedulers::SchedulerConfig::epsilon_min(30));
        assert!(a < 1.0 - (-1.0f64).exp());
        assert!(1.0 - (-1.0f64).exp() - a < 1e-12);
        assert_relative_eq!(alpha_of(2.0, 0.001), 0.39297, epsilon = 1e-5);

        // strictly decreasing in both arguments
        let cs = [1.0, 1.5, 2.0, 3.0];
        let eps = [0.001, 0.01, 0.1, 0.3];
        for w in cs.windows(2) {
            for &e in &eps {
                assert!(alpha_of(w[1], e) < alpha_of(w[0], e));
            }
        }
        for &c in &cs {
            for w in eps.windows(2) {
                assert!(alpha_of(c, w[1]) < alpha_of(c, w[0]));
            }
        }
    }
}
