//! Variance-weighted least-squares segmentation.
//!
//! With per-interval scales fixed by the robust first step, the cost of a
//! candidate segment is the weighted sum of squared deviations from its
//! weighted mean, weight 1/sigma^2 per observation. Prefix sums of the
//! weights, weighted values, and weighted squares reduce any segment cost to
//! a three-term closed form, so the dynamic program evaluates each of its
//! O(kmax n^2) transitions in constant time.

use crate::domain::{
    validate_inputs, ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap,
};
use crate::dp;
use crate::error::{Error, Result};
use crate::ksum::CompensatedSum;

/// Default cap on the number of segments: n/5, at most 100.
pub fn default_kmax(n: usize) -> usize {
    (n / 5).clamp(1, 100)
}

/// Enumeration cap for the brute-force oracle.
pub const BRUTE_FORCE_CAP: u128 = 1_000_000;

/// Prefix sums of weights, weighted values, and weighted squares, built with
/// compensated accumulation. Index t holds the sum over observations 1..=t.
#[derive(Debug, Clone)]
pub struct WeightedPrefixes {
    s1: Vec<f64>,
    sy: Vec<f64>,
    syy: Vec<f64>,
}

impl WeightedPrefixes {
    pub fn new(
        series: &TimeSeries,
        map: &VarianceIntervalMap,
        scales: &ScaleEstimates,
    ) -> Result<Self> {
        validate_inputs(series, map)?;
        if scales.interval_count() != map.interval_count() {
            return Err(Error::LengthMismatch {
                series: map.interval_count(),
                labels: scales.interval_count(),
            });
        }
        let weights: Vec<f64> = scales.as_slice().iter().map(|s| 1.0 / (s * s)).collect();
        let n = series.len();
        let mut s1 = Vec::with_capacity(n + 1);
        let mut sy = Vec::with_capacity(n + 1);
        let mut syy = Vec::with_capacity(n + 1);
        s1.push(0.0);
        sy.push(0.0);
        syy.push(0.0);
        let (mut a1, mut ay, mut ayy) = (
            CompensatedSum::new(),
            CompensatedSum::new(),
            CompensatedSum::new(),
        );
        for (t, &v) in series.values().iter().enumerate() {
            let w = weights[map.labels()[t] - 1];
            a1.add(w);
            ay.add(w * v);
            ayy.add(w * v * v);
            s1.push(a1.value());
            sy.push(ay.value());
            syy.push(ayy.value());
        }
        Ok(Self { s1, sy, syy })
    }

    pub fn n(&self) -> usize {
        self.s1.len() - 1
    }

    fn range(v: &[f64], a: usize, b: usize) -> f64 {
        v[b] - v[a - 1]
    }

    /// Weighted mean of observations a..=b (1-based inclusive).
    pub fn weighted_mean(&self, a: usize, b: usize) -> f64 {
        debug_assert!(a >= 1 && a <= b && b <= self.n());
        Self::range(&self.sy, a, b) / Self::range(&self.s1, a, b)
    }

    /// Weighted sum of squared deviations of a..=b around its weighted mean,
    /// in closed form. Tiny negative results from cancellation are clamped
    /// to zero; anything more negative would be a bug. The rounding error of
    /// the prefix subtraction scales with the accumulated total, not with
    /// the segment's own sum, so the guard uses the series-wide magnitude.
    pub fn segment_cost(&self, a: usize, b: usize) -> f64 {
        debug_assert!(a >= 1 && a <= b && b <= self.n());
        let s1 = Self::range(&self.s1, a, b);
        let sy = Self::range(&self.sy, a, b);
        let syy = Self::range(&self.syy, a, b);
        let cost = syy - sy * sy / s1;
        if cost < 0.0 {
            let scale = self.syy[self.syy.len() - 1].abs().max(1.0);
            debug_assert!(
                cost >= -1e-9 * scale,
                "segment cost {cost} below the cancellation floor for total Syy {scale}"
            );
            0.0
        } else {
            cost
        }
    }
}

/// Output of the exact dynamic program: optimal cost and fitted segmentation
/// for every K = 1..=kmax.
#[derive(Debug, Clone)]
pub struct DpResult {
    contrast: Vec<f64>,
    segmentations: Vec<Segmentation>,
}

impl DpResult {
    pub(crate) fn from_tables<M>(tables: &dp::DpTables, n: usize, mean: M) -> Result<Self>
    where
        M: Fn(usize, usize) -> f64,
    {
        let kmax = tables.contrast.len();
        let mut segmentations = Vec::with_capacity(kmax);
        for k in 1..=kmax {
            let bp = tables.breakpoints(k);
            let mut means = Vec::with_capacity(k);
            let mut start = 1usize;
            for &t in bp.iter().chain(std::iter::once(&n)) {
                means.push(mean(start, t));
                start = t + 1;
            }
            segmentations.push(Segmentation::new(n, bp, means)?);
        }
        Ok(Self {
            contrast: tables.contrast.clone(),
            segmentations,
        })
    }

    pub fn kmax(&self) -> usize {
        self.contrast.len()
    }

    /// Optimal cost per K, index K - 1. Non-increasing in K up to float noise.
    pub fn contrast(&self) -> &[f64] {
        &self.contrast
    }

    pub fn contrast_at(&self, k: usize) -> f64 {
        self.contrast[k - 1]
    }

    pub fn segmentation(&self, k: usize) -> &Segmentation {
        &self.segmentations[k - 1]
    }

    pub fn segmentations(&self) -> &[Segmentation] {
        &self.segmentations
    }
}

fn check_kmax(n: usize, kmax: usize, min_len: usize) -> Result<()> {
    if min_len < 1 {
        return Err(Error::InvalidArgument(
            "minimum segment length must be at least 1".into(),
        ));
    }
    let limit = n / min_len;
    if kmax < 1 || kmax > limit {
        return Err(Error::KmaxTooLarge { kmax, limit, n });
    }
    Ok(())
}

/// Exact weighted-least-squares segmentation for every K = 1..=kmax.
pub fn dp_segment(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    scales: &ScaleEstimates,
    kmax: usize,
    min_len: usize,
) -> Result<DpResult> {
    check_kmax(series.len(), kmax, min_len)?;
    let prefixes = WeightedPrefixes::new(series, map, scales)?;
    let n = series.len();
    let tables = dp::solve(n, kmax, min_len, |a, b| prefixes.segment_cost(a, b));
    DpResult::from_tables(&tables, n, |a, b| prefixes.weighted_mean(a, b))
}

/// Exhaustive reference segmentation for a single K. Same cost, same
/// tie-break as [`dp_segment`]; refuses instances beyond [`BRUTE_FORCE_CAP`]
/// candidates.
pub fn brute_force_segment(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    scales: &ScaleEstimates,
    k: usize,
    min_len: usize,
) -> Result<(f64, Segmentation)> {
    check_kmax(series.len(), k, min_len)?;
    let prefixes = WeightedPrefixes::new(series, map, scales)?;
    let n = series.len();
    let (cost, bp) = dp::brute_force(
        n,
        k,
        min_len,
        |a, b| prefixes.segment_cost(a, b),
        BRUTE_FORCE_CAP,
    )?;
    let mut means = Vec::with_capacity(k);
    let mut start = 1usize;
    for &t in bp.iter().chain(std::iter::once(&n)) {
        means.push(prefixes.weighted_mean(start, t));
        start = t + 1;
    }
    Ok((cost, Segmentation::new(n, bp, means)?))
}
