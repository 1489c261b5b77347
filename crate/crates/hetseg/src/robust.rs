//! Robust scale estimation from first differences.
//!
//! The estimator behind everything here is the pairwise quartile: the first
//! quartile of all pairwise absolute differences of a sample, rescaled to be
//! consistent for the standard deviation of Gaussian data. Applied to the
//! lag-one differences of a series, it estimates the noise level while
//! shrugging off the handful of differences that straddle mean shifts:
//! a series with K segments contaminates at most K - 1 of its differences,
//! and a quartile-based statistic does not feel that.
//!
//! Differencing doubles the variance, so the per-interval estimate divides
//! the quartile statistic of the differences by sqrt(2). A difference only
//! counts toward an interval when both endpoints carry that interval's label
//! and, if the series is dated, the two observations are one day apart.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::domain::{validate_inputs, ScaleEstimates, TimeSeries, VarianceIntervalMap};
use crate::error::{Error, Result};
use crate::gauss::{phi_cdf, qn_constant};
use crate::ksum::CompensatedSum;

/// Largest sample size for which the pairwise quartile materializes all
/// differences; larger samples go through exact bisection selection.
const MATERIALIZE_LIMIT: usize = 512;

/// Relative floor applied to zero per-interval scales when requested.
const ZERO_SCALE_EPSILON: f64 = 1e-6;

/// Default draw count for the Monte-Carlo asymptotic variance.
pub const DEFAULT_ASYMPTOTIC_DRAWS: usize = 1_000_000;

/// Pairwise-quartile scale of a sample: the ceil(C/4)-th smallest of the
/// C = m(m-1)/2 pairwise absolute differences, times the Gaussian
/// consistency constant. Needs at least two values.
pub fn qn(x: &[f64]) -> Result<f64> {
    let m = x.len();
    if m < 2 {
        return Err(Error::TooShort { len: m, min: 2 });
    }
    let pairs = m * (m - 1) / 2;
    let k = pairs.div_ceil(4);
    let mut sorted = x.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let d = if m <= MATERIALIZE_LIMIT {
        kth_pairwise_diff_materialized(&sorted, k)
    } else {
        kth_pairwise_diff_bisect(&sorted, k)
    };
    Ok(qn_constant() * d)
}

/// Noise standard deviation from lag-one differences: the pairwise quartile
/// of the differences divided by sqrt(2).
pub fn scale_from_diffs(diffs: &[f64]) -> Result<f64> {
    Ok(qn(diffs)? / std::f64::consts::SQRT_2)
}

/// k-th smallest pairwise difference (1-based) of an ascending sample, by
/// materializing all of them. Quadratic memory, only for small samples.
fn kth_pairwise_diff_materialized(sorted: &[f64], k: usize) -> f64 {
    let m = sorted.len();
    let mut diffs = Vec::with_capacity(m * (m - 1) / 2);
    for j in 1..m {
        for i in 0..j {
            diffs.push(sorted[j] - sorted[i]);
        }
    }
    let (_, v, _) = diffs.select_nth_unstable_by(k - 1, f64::total_cmp);
    *v
}

/// Number of pairs i < j with sorted[j] - sorted[i] <= t, for t >= 0.
fn count_pairs_leq(sorted: &[f64], t: f64) -> usize {
    let mut count = 0usize;
    let mut i = 0usize;
    for j in 0..sorted.len() {
        while sorted[j] - sorted[i] > t {
            i += 1;
        }
        count += j - i;
    }
    count
}

/// All pairwise differences v with lo < v <= hi, collected in O(m + output).
fn collect_pairs_between(sorted: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut first_leq_hi = 0usize;
    let mut first_leq_lo = 0usize;
    for j in 0..sorted.len() {
        while sorted[j] - sorted[first_leq_hi] > hi {
            first_leq_hi += 1;
        }
        if first_leq_lo < first_leq_hi {
            first_leq_lo = first_leq_hi;
        }
        while sorted[j] - sorted[first_leq_lo] > lo {
            first_leq_lo += 1;
        }
        for i in first_leq_hi..first_leq_lo {
            out.push(sorted[j] - sorted[i]);
        }
    }
    out
}

/// Exact k-th smallest pairwise difference without materializing the pairs:
/// bisect on the value, counting pairs below the midpoint with a two-pointer
/// sweep, and enumerate the surviving candidates once few enough remain.
fn kth_pairwise_diff_bisect(sorted: &[f64], k: usize) -> f64 {
    let m = sorted.len();
    let mut lo = 0.0f64;
    let mut lo_count = count_pairs_leq(sorted, lo);
    if lo_count >= k {
        return 0.0;
    }
    let mut hi = sorted[m - 1] - sorted[0];
    let mut hi_count = m * (m - 1) / 2;
    let cap = 8 * m;
    loop {
        if hi_count - lo_count <= cap {
            let mut candidates = collect_pairs_between(sorted, lo, hi);
            debug_assert_eq!(candidates.len(), hi_count - lo_count);
            let idx = k - lo_count - 1;
            let (_, v, _) = candidates.select_nth_unstable_by(idx, f64::total_cmp);
            return *v;
        }
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            // No representable value strictly between lo and hi is left, so
            // every remaining candidate equals hi.
            return hi;
        }
        let mid_count = count_pairs_leq(sorted, mid);
        if mid_count >= k {
            hi = mid;
            hi_count = mid_count;
        } else {
            lo = mid;
            lo_count = mid_count;
        }
    }
}

/// Lag-one differences of one variance interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalDiffs {
    pub label: usize,
    pub diffs: Vec<f64>,
}

/// Splits the lag-one differences of a series by interval label. A difference
/// y[t+1] - y[t] belongs to interval j when both observations are labeled j
/// and, for dated series, the dates are exactly one day apart.
pub fn interval_differences(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
) -> Result<Vec<IntervalDiffs>> {
    validate_inputs(series, map)?;
    let y = series.values();
    let labels = map.labels();
    let dates = series.dates();
    let mut out: Vec<IntervalDiffs> = (1..=map.interval_count())
        .map(|label| IntervalDiffs {
            label,
            diffs: Vec::new(),
        })
        .collect();
    for t in 0..y.len() - 1 {
        if labels[t] != labels[t + 1] {
            continue;
        }
        if let Some(d) = dates {
            if (d[t + 1] - d[t]).num_days() != 1 {
                continue;
            }
        }
        out[labels[t] - 1].diffs.push(y[t + 1] - y[t]);
    }
    Ok(out)
}

/// Options for per-interval scale estimation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ScaleOptions {
    /// When an interval's data are constant (robust scale exactly zero),
    /// substitute 1e-6 times the pooled scale of all differences instead of
    /// failing. Off by default: a zero scale usually means broken input.
    pub zero_scale_floor: bool,
}

/// One robust scale per variance interval.
pub fn scale_per_interval(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    opts: &ScaleOptions,
) -> Result<ScaleEstimates> {
    let names: Vec<String> = (1..=map.interval_count())
        .map(|j| format!("label {j}"))
        .collect();
    scale_per_interval_named(series, map, opts, &names)
}

/// Same as [`scale_per_interval`], with caller-supplied interval names used
/// in error messages (calendar month names, say).
pub fn scale_per_interval_named(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    opts: &ScaleOptions,
    names: &[String],
) -> Result<ScaleEstimates> {
    if names.len() != map.interval_count() {
        return Err(Error::InvalidArgument(format!(
            "{} interval names for {} intervals",
            names.len(),
            map.interval_count()
        )));
    }
    let per_interval = interval_differences(series, map)?;
    let mut sigma = Vec::with_capacity(per_interval.len());
    for d in &per_interval {
        let name = &names[d.label - 1];
        if d.diffs.len() < 2 {
            return Err(Error::IntervalTooSparse { name: name.clone() });
        }
        sigma.push(scale_from_diffs(&d.diffs)?);
    }
    if sigma.contains(&0.0) {
        if !opts.zero_scale_floor {
            let j = sigma.iter().position(|&s| s == 0.0).unwrap();
            return Err(Error::ZeroScale {
                name: names[j].clone(),
            });
        }
        let pooled: Vec<f64> = per_interval
            .iter()
            .flat_map(|d| d.diffs.iter().copied())
            .collect();
        let global = scale_from_diffs(&pooled)?;
        if global == 0.0 {
            return Err(Error::ZeroScale {
                name: "all intervals pooled".into(),
            });
        }
        let floor = ZERO_SCALE_EPSILON * global;
        for s in &mut sigma {
            if *s == 0.0 {
                *s = floor;
            }
        }
    }
    ScaleEstimates::new(sigma)
}

/// Influence function of the pairwise-quartile scale at the standard normal.
pub fn influence_function(x: f64) -> f64 {
    let c = qn_constant();
    let a = 1.0 / c;
    let d = (-a * a / 4.0).exp() / (2.0 * std::f64::consts::PI.sqrt());
    c * (0.25 - phi_cdf(x + a) + phi_cdf(x - a)) / d
}

/// Asymptotic variance of the differenced-series scale estimator at noise
/// level `sigma`, by Monte-Carlo: with nu a lag-one pair of differences of
/// white noise (variance 2 sigma^2, correlation -1/2 at lag one, independent
/// beyond), this is
///
/// ```text
/// sigma * E[IF(nu0 / (sqrt(2) sigma))^2]
///   + 2 sigma * E[IF(nu0 / (sqrt(2) sigma)) * IF(nu1 / (sqrt(2) sigma))]
/// ```
///
/// The standardized arguments do not depend on sigma, so for a fixed seed the
/// result is exactly linear in sigma.
pub fn asymptotic_variance(sigma: f64, draws: usize, seed: u64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "sigma must be positive and finite, got {sigma}"
        )));
    }
    if draws == 0 {
        return Err(Error::InvalidArgument("need at least one draw".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let root3_half = 3f64.sqrt() / 2.0;
    let mut acc = CompensatedSum::new();
    for _ in 0..draws {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let u = z1;
        let v = -0.5 * z1 + root3_half * z2;
        let fu = influence_function(u);
        let fv = influence_function(v);
        acc.add(fu * fu + 2.0 * fu * fv);
    }
    Ok(sigma * acc.value() / draws as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::qn_constant;
    use rand::Rng;

    fn naive_kth(x: &[f64], k: usize) -> f64 {
        let mut diffs = Vec::new();
        for j in 1..x.len() {
            for i in 0..j {
                diffs.push((x[j] - x[i]).abs());
            }
        }
        diffs.sort_by(f64::total_cmp);
        diffs[k - 1]
    }

    fn naive_qn(x: &[f64]) -> f64 {
        let pairs = x.len() * (x.len() - 1) / 2;
        qn_constant() * naive_kth(x, pairs.div_ceil(4))
    }

    #[test]
    fn qn_hand_cases() {
        assert_eq!(qn(&[5.0, 5.0, 5.0, 5.0]).unwrap(), 0.0);
        let c = qn_constant();
        assert!((qn(&[0.0, 1.0]).unwrap() - c).abs() < 1e-15);
        // Differences {1, 2, 3}, quartile index ceil(3/4) = 1, so the value
        // selected is 1.
        assert!((qn(&[0.0, 1.0, 3.0]).unwrap() - c).abs() < 1e-15);
    }

    #[test]
    fn qn_needs_two_values() {
        assert!(matches!(qn(&[1.0]), Err(Error::TooShort { .. })));
        assert!(matches!(qn(&[]), Err(Error::TooShort { .. })));
    }

    #[test]
    fn qn_matches_naive_enumeration_on_small_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for m in 2..=200usize {
            let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-5.0..5.0)).collect();
            let got = qn(&x).unwrap();
            let want = naive_qn(&x);
            assert_eq!(got, want, "mismatch at m = {m}");
        }
    }

    #[test]
    fn bisect_selection_agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for m in [2usize, 3, 17, 50, 200] {
            let mut x: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
            // Inject ties to stress the candidate collection.
            if m > 4 {
                x[1] = x[0];
                x[3] = x[2];
            }
            x.sort_by(f64::total_cmp);
            let pairs = m * (m - 1) / 2;
            for k in [1, pairs.div_ceil(4), pairs / 2 + 1, pairs] {
                if k == 0 {
                    continue;
                }
                let got = kth_pairwise_diff_bisect(&x, k);
                let want = naive_kth(&x, k);
                assert_eq!(got, want, "m = {m}, k = {k}");
            }
        }
    }

    #[test]
    fn large_sample_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for m in [600usize, 901] {
            let mut x: Vec<f64> = (0..m).map(|_| rng.gen_range(-3.0..3.0)).collect();
            x.sort_by(f64::total_cmp);
            let pairs = m * (m - 1) / 2;
            let k = pairs.div_ceil(4);
            assert_eq!(
                kth_pairwise_diff_bisect(&x, k),
                kth_pairwise_diff_materialized(&x, k),
                "m = {m}"
            );
        }
    }

    #[test]
    fn bisect_handles_massive_ties() {
        let mut x = vec![0.0f64; 700];
        for (i, v) in x.iter_mut().enumerate() {
            if i % 7 == 0 {
                *v = 1.0;
            }
        }
        x.sort_by(f64::total_cmp);
        let pairs = x.len() * (x.len() - 1) / 2;
        for k in [1, pairs.div_ceil(4), pairs] {
            assert_eq!(kth_pairwise_diff_bisect(&x, k), naive_kth(&x, k));
        }
    }

    #[test]
    fn qn_is_shift_and_scale_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let x: Vec<f64> = (0..60).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let base = qn(&x).unwrap();
        let moved: Vec<f64> = x.iter().map(|v| -3.0 * v + 11.0).collect();
        let got = qn(&moved).unwrap();
        assert!((got - 3.0 * base).abs() < 1e-9 * base.max(1.0));
    }

    #[test]
    fn qn_ignores_permutation() {
        let x = vec![3.0, -1.0, 4.0, 1.0, -5.0, 9.0, 2.0, 6.0];
        let mut rev = x.clone();
        rev.reverse();
        assert_eq!(qn(&x).unwrap(), qn(&rev).unwrap());
    }

    #[test]
    fn scale_from_diffs_recovers_sigma_from_gaussian_differences() {
        // i.i.d. differences with variance 2 sigma^2, sigma = 0.5.
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let sd = 0.5 * std::f64::consts::SQRT_2;
        let diffs: Vec<f64> = (0..10_000)
            .map(|_| sd * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let est = scale_from_diffs(&diffs).unwrap();
        assert!((0.47..=0.53).contains(&est), "estimate {est}");
    }

    #[test]
    fn scale_from_diffs_shrugs_off_mean_shifts() {
        // Step signal with six shifts of size one, noise 0.5: the shifts
        // contaminate only six of the 199 differences.
        let breaks = [27usize, 38, 88, 111, 150, 183];
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut y = Vec::with_capacity(200);
        for t in 1..=200usize {
            let seg = breaks.iter().filter(|&&b| b < t).count();
            let mean = (seg % 2) as f64;
            y.push(mean + 0.5 * rng.sample::<f64, _>(StandardNormal));
        }
        let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let est = scale_from_diffs(&diffs).unwrap();
        assert!((0.40..=0.60).contains(&est), "estimate {est}");
    }

    #[test]
    fn quartile_scale_moves_less_than_sd_under_injected_outliers() {
        // Replace six of 199 Gaussian differences by arbitrary huge values:
        // the pairwise-quartile scale barely moves, the sample standard
        // deviation explodes.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let sd0 = 0.5 * std::f64::consts::SQRT_2;
        let clean: Vec<f64> = (0..199)
            .map(|_| sd0 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let mut dirty = clean.clone();
        for i in 0..6usize {
            dirty[i * 33] = 40.0 * (i + 1) as f64;
        }
        let sample_sd = |x: &[f64]| {
            let m = x.iter().sum::<f64>() / x.len() as f64;
            (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() - 1) as f64).sqrt()
                / std::f64::consts::SQRT_2
        };
        let robust_shift =
            (scale_from_diffs(&dirty).unwrap() - scale_from_diffs(&clean).unwrap()).abs();
        let sd_shift = (sample_sd(&dirty) - sample_sd(&clean)).abs();
        assert!(robust_shift < 0.05, "robust moved by {robust_shift}");
        assert!(sd_shift > 1.0, "sd moved by only {sd_shift}");
        assert!(robust_shift < sd_shift);
    }

    #[test]
    fn interval_differences_need_matching_labels_on_both_ends() {
        let y = TimeSeries::new(vec![0.0, 1.0, 10.0, 20.0, 100.0, 107.0]).unwrap();
        let map = VarianceIntervalMap::new(vec![1, 1, 2, 2, 1, 1], 2).unwrap();
        let d = interval_differences(&y, &map).unwrap();
        assert_eq!(d[0].diffs, vec![1.0, 7.0]);
        assert_eq!(d[1].diffs, vec![10.0]);
    }

    #[test]
    fn interval_differences_break_on_date_gaps() {
        let dates = ["2020-01-01", "2020-01-02", "2020-01-03", "2020-01-05"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let y = TimeSeries::with_dates(vec![0.0, 1.0, 2.0, 3.0], dates).unwrap();
        let map = VarianceIntervalMap::uniform(4);
        let d = interval_differences(&y, &map).unwrap();
        assert_eq!(d[0].diffs, vec![1.0, 1.0]);
    }

    #[test]
    fn per_interval_scales_track_different_noise_levels() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let n = 400usize;
        let mut values = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for t in 0..n {
            let label = if (t / 50) % 2 == 0 { 1 } else { 2 };
            let sd = if label == 1 { 0.5 } else { 1.5 };
            values.push(sd * rng.sample::<f64, _>(StandardNormal));
            labels.push(label);
        }
        let y = TimeSeries::new(values).unwrap();
        let map = VarianceIntervalMap::new(labels, 2).unwrap();
        let s = scale_per_interval(&y, &map, &ScaleOptions::default()).unwrap();
        assert!((s.sigma(1) - 0.5).abs() < 0.12, "sigma1 = {}", s.sigma(1));
        assert!((s.sigma(2) - 1.5).abs() < 0.30, "sigma2 = {}", s.sigma(2));
    }

    #[test]
    fn constant_interval_is_an_error_without_the_floor() {
        // Label 1 is constant; label 2 varies enough that the pooled
        // differences have a positive quartile for the floor to scale from.
        let mut values = vec![7.0; 20];
        for (t, v) in values.iter_mut().enumerate().skip(10) {
            *v = (t as f64).powi(2);
        }
        let labels: Vec<usize> = (0..20).map(|t| if t < 10 { 1 } else { 2 }).collect();
        let y = TimeSeries::new(values).unwrap();
        let map = VarianceIntervalMap::new(labels, 2).unwrap();
        let err = scale_per_interval(&y, &map, &ScaleOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ZeroScale { ref name } if name == "label 1"));

        let opts = ScaleOptions {
            zero_scale_floor: true,
        };
        let s = scale_per_interval(&y, &map, &opts).unwrap();
        assert!(s.sigma(1) > 0.0);
        assert!(s.sigma(1) < 1e-3 * s.sigma(2));
    }

    #[test]
    fn fully_constant_series_fails_even_with_the_floor() {
        let y = TimeSeries::new(vec![1.0; 30]).unwrap();
        let map = VarianceIntervalMap::uniform(30);
        let opts = ScaleOptions {
            zero_scale_floor: true,
        };
        assert!(matches!(
            scale_per_interval(&y, &map, &opts),
            Err(Error::ZeroScale { .. })
        ));
    }

    #[test]
    fn sparse_interval_is_reported() {
        let y = TimeSeries::new(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        // Label 2 appears twice but never adjacently: no differences at all.
        let map = VarianceIntervalMap::new(vec![1, 1, 1, 2, 1, 2], 2).unwrap();
        let err = scale_per_interval(&y, &map, &ScaleOptions::default()).unwrap_err();
        assert!(matches!(err, Error::IntervalTooSparse { ref name } if name == "label 2"));
    }

    // Influence-function values frozen from 30-digit evaluation of
    // c * (1/4 - Phi(x + 1/c) + Phi(x - 1/c)) / D at c = 2.21914446598508,
    // D = exp(-1/(4 c^2)) / (2 sqrt(pi)) = 0.268131527229023.
    #[test]
    fn influence_function_matches_reference_values() {
        let cases = [
            (0.0, -0.808924269537224),
            (0.5, -0.491715337256570),
            (1.0, 0.265409596164824),
            (2.0, 1.626172208234242),
            (50.0, 2.069081999530779),
        ];
        for (x, want) in cases {
            let got = influence_function(x);
            assert!(
                (got - want).abs() < 1e-9,
                "influence_function({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn influence_function_is_even_and_bounded() {
        for i in 0..=80 {
            let x = 0.1 * i as f64;
            let f = influence_function(x);
            assert!((f - influence_function(-x)).abs() < 1e-12);
            assert!(f.is_finite());
            assert!(f <= 2.069081999530779 + 1e-12);
        }
    }

    #[test]
    fn influence_function_is_centered_at_the_gaussian() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut acc = CompensatedSum::new();
        let draws = 1_000_000;
        for _ in 0..draws {
            acc.add(influence_function(rng.sample(StandardNormal)));
        }
        let mean = acc.value() / draws as f64;
        assert!(mean.abs() < 0.01, "mean influence {mean}");
    }

    #[test]
    fn asymptotic_variance_matches_quadrature() {
        // E[IF^2] + 2 E[IF0 IF1] = 0.608900693661635 + 2 * 0.130749415054103
        // by 30-digit quadrature.
        let want = 0.870399523769841;
        let got = asymptotic_variance(1.0, 1_000_000, 41).unwrap();
        assert!((got - want).abs() < 0.01, "got {got}, want {want}");
    }

    #[test]
    fn asymptotic_variance_is_linear_in_sigma_for_a_fixed_seed() {
        let a = asymptotic_variance(1.0, 100_000, 42).unwrap();
        let b = asymptotic_variance(2.0, 100_000, 42).unwrap();
        assert_eq!(b, 2.0 * a);
    }

    #[test]
    fn asymptotic_variance_converges_in_draw_count() {
        let small = asymptotic_variance(1.0, 100_000, 43).unwrap();
        let large = asymptotic_variance(1.0, 10_000_000, 44).unwrap();
        assert!((small - large).abs() < 0.02 * large);
    }

    #[test]
    fn asymptotic_variance_validates_arguments() {
        assert!(asymptotic_variance(0.0, 100, 1).is_err());
        assert!(asymptotic_variance(-1.0, 100, 1).is_err());
        assert!(asymptotic_variance(1.0, 0, 1).is_err());
    }
}
