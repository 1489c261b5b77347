//! Comparison segmentation models sharing the exact DP engine.
//!
//! Two simpler models bracket the main fixed-interval-variance method:
//!
//! * `mhomo_dp` segments under plain least squares and estimates one global
//!   variance afterwards, so it ignores variance structure entirely;
//! * `mhetero_dp` lets mean and variance change together at every breakpoint
//!   by minimizing the per-segment Gaussian log-variance cost.
//!
//! `baseline_select` applies the usual selection criteria with the
//! standardization each model calls for: MHomo contrasts are divided by a
//! robust global variance before selection, and MHetero penalties count two
//! parameters per segment (a mean and a variance).

use serde::{Deserialize, Serialize};

use crate::domain::{ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap};
use crate::dp;
use crate::error::{Error, Result};
use crate::robust::{scale_per_interval, ScaleOptions};
use crate::selection::{select_all, Criterion, CriterionConfig, SelectionReport};
use crate::weighted::{dp_segment, DpResult, WeightedPrefixes, BRUTE_FORCE_CAP};

/// MHetero needs two points to fit a variance, so segments never shrink
/// below this.
pub const MHETERO_MIN_SEG_LEN: usize = 2;

/// A constant-valued segment has maximum-likelihood variance zero, whose log
/// diverges; its variance is floored at this multiple of the global series
/// variance divided by n squared.
const VARIANCE_FLOOR_FACTOR: f64 = 1e-3;

/// The two comparison models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaselineKind {
    MHomo,
    MHetero,
}

impl BaselineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BaselineKind::MHomo => "mhomo",
            BaselineKind::MHetero => "mhetero",
        }
    }
}

impl std::fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

fn unit_prefixes(y: &TimeSeries) -> Result<(WeightedPrefixes, usize)> {
    let n = y.len();
    let map = VarianceIntervalMap::uniform(n);
    let unit = ScaleEstimates::new(vec![1.0])?;
    Ok((WeightedPrefixes::new(y, &map, &unit)?, n))
}

/// Mean-only segmentation with homogeneous variance: plain least squares,
/// the single-interval unit-scale case of the weighted DP.
pub fn mhomo_dp(y: &TimeSeries, kmax: usize) -> Result<DpResult> {
    let map = VarianceIntervalMap::uniform(y.len());
    let unit = ScaleEstimates::new(vec![1.0])?;
    dp_segment(y, &map, &unit, kmax, 1)
}

/// Global variance fitted after an MHomo segmentation: SSE at K over n.
pub fn mhomo_variance(fit: &DpResult, k: usize) -> f64 {
    fit.contrast_at(k) / fit.segmentation(k).n() as f64
}

fn mhetero_floor(y: &TimeSeries) -> f64 {
    let n = y.len() as f64;
    let mean: f64 = y.values().iter().sum::<f64>() / n;
    let var: f64 = y.values().iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (VARIANCE_FLOOR_FACTOR * var / (n * n)).max(f64::MIN_POSITIVE)
}

fn check_mhetero_kmax(n: usize, kmax: usize) -> Result<()> {
    let limit = n / MHETERO_MIN_SEG_LEN;
    if kmax < 1 || kmax > limit {
        return Err(Error::KmaxTooLarge { kmax, limit, n });
    }
    Ok(())
}

/// Joint mean-and-variance segmentation: minimizes the sum over segments of
/// n_k times the log of the segment's maximum-likelihood variance, the
/// Gaussian negative log-likelihood up to constants.
pub fn mhetero_dp(y: &TimeSeries, kmax: usize) -> Result<DpResult> {
    let (p, n) = unit_prefixes(y)?;
    check_mhetero_kmax(n, kmax)?;
    let floor = mhetero_floor(y);
    let tables = dp::solve(n, kmax, MHETERO_MIN_SEG_LEN, |a, b| {
        let m = (b - a + 1) as f64;
        m * (p.segment_cost(a, b) / m).max(floor).ln()
    });
    DpResult::from_tables(&tables, n, |a, b| p.weighted_mean(a, b))
}

/// Exhaustive reference for a single K under the MHetero cost, with the same
/// tie-break as the DP.
pub fn mhetero_brute_force(y: &TimeSeries, k: usize) -> Result<(f64, Segmentation)> {
    let (p, n) = unit_prefixes(y)?;
    check_mhetero_kmax(n, k)?;
    let floor = mhetero_floor(y);
    let (cost, bp) = dp::brute_force(
        n,
        k,
        MHETERO_MIN_SEG_LEN,
        |a, b| {
            let m = (b - a + 1) as f64;
            m * (p.segment_cost(a, b) / m).max(floor).ln()
        },
        BRUTE_FORCE_CAP,
    )?;
    let mut means = Vec::with_capacity(k);
    let mut start = 1usize;
    for &t in bp.iter().chain(std::iter::once(&n)) {
        means.push(p.weighted_mean(start, t));
        start = t + 1;
    }
    Ok((cost, Segmentation::new(n, bp, means)?))
}

/// Fits a baseline model and runs the selection criteria on the contrast the
/// model calls for. MHomo standardizes its SSE curve by a robust global
/// variance (the single-interval case of the difference-based estimator);
/// MHetero uses its log-variance contrast directly with two parameters per
/// segment in the penalties.
pub fn baseline_select(
    kind: BaselineKind,
    y: &TimeSeries,
    kmax: usize,
    criteria: &[Criterion],
    cfg: &CriterionConfig,
) -> Result<(DpResult, SelectionReport)> {
    let mut cfg = *cfg;
    match kind {
        BaselineKind::MHomo => {
            let fit = mhomo_dp(y, kmax)?;
            let map = VarianceIntervalMap::uniform(y.len());
            let scales = scale_per_interval(y, &map, &ScaleOptions::default())?;
            let s2 = scales.sigma(1) * scales.sigma(1);
            let standardized: Vec<f64> = fit.contrast().iter().map(|c| c / s2).collect();
            cfg.params_per_segment = 1;
            let report = select_all(&standardized, fit.segmentations(), y.len(), criteria, &cfg)?;
            Ok((fit, report))
        }
        BaselineKind::MHetero => {
            let fit = mhetero_dp(y, kmax)?;
            cfg.params_per_segment = 2;
            let report = select_all(fit.contrast(), fit.segmentations(), y.len(), criteria, &cfg)?;
            Ok((fit, report))
        }
    }
}
