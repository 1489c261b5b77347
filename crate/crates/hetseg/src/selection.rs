//! Choosing the number of segments from the optimal-cost curve.
//!
//! All four criteria consume the same input: the vector of optimal costs for
//! K = 1..=kmax produced by the dynamic program (plus, for the modified BIC,
//! the fitted segmentations themselves). They differ in how they trade fit
//! against complexity:
//!
//! * `lavielle_select` normalizes the cost curve and looks for the last
//!   second-difference above a threshold, a pure elbow heuristic;
//! * `bm1_select` scans a geometric grid of penalty multipliers for the
//!   largest jump in the selected dimension, then doubles the multiplier at
//!   the jump;
//! * `bm2_select` estimates the slope of cost against penalty shape over the
//!   high-K tail by least absolute deviations and doubles that slope;
//! * `mbic_select` maximizes a closed-form posterior approximation that only
//!   needs segment lengths.
//!
//! Degenerate inputs (flat cost curves, no dimension jump) degrade to a
//! warning plus a defined fallback instead of an error, so a batch run over
//! many series never stops on one odd case.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::domain::Segmentation;
use crate::error::{Error, Result};
use crate::ksum::CompensatedSum;

/// Number of penalty multipliers scanned by `bm1_select`.
const BM1_GRID_POINTS: usize = 200;

/// Multiplier grid spans this factor below and above the anchor.
const BM1_GRID_SPAN: f64 = 1e6;

/// IRLS sweeps for the least-absolute-deviations line in `bm2_select`.
const BM2_IRLS_ITERATIONS: usize = 50;

/// The four selection rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Criterion {
    Lavielle,
    Bm1,
    Bm2,
    Mbic,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Lavielle,
        Criterion::Bm1,
        Criterion::Bm2,
        Criterion::Mbic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Criterion::Lavielle => "lav",
            Criterion::Bm1 => "bm1",
            Criterion::Bm2 => "bm2",
            Criterion::Mbic => "mbic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lav" | "lavielle" => Ok(Criterion::Lavielle),
            "bm1" => Ok(Criterion::Bm1),
            "bm2" => Ok(Criterion::Bm2),
            "mbic" => Ok(Criterion::Mbic),
            other => Err(Error::InvalidArgument(format!(
                "unknown criterion {other:?}; expected lav, bm1, bm2, or mbic"
            ))),
        }
    }
}

impl std::fmt::Display for Criterion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tuning knobs shared by the criteria.
#[derive(Debug, Clone, Copy)]
pub struct CriterionConfig {
    /// Threshold on normalized second differences in `lavielle_select`.
    pub lavielle_threshold: f64,
    /// Fraction of the largest K values used for the slope fit in
    /// `bm2_select`.
    pub slope_fit_window: f64,
    /// Parameters fitted per segment: 1 when only the mean moves, 2 when a
    /// variance moves with it. Scales the dimension term of the penalty.
    pub params_per_segment: usize,
}

impl Default for CriterionConfig {
    fn default() -> Self {
        Self {
            lavielle_threshold: 0.7,
            slope_fit_window: 0.5,
            params_per_segment: 1,
        }
    }
}

impl CriterionConfig {
    fn validate(&self) -> Result<()> {
        if !(self.lavielle_threshold.is_finite() && self.lavielle_threshold > 0.0) {
            return Err(Error::InvalidArgument(
                "lavielle threshold must be positive".into(),
            ));
        }
        if !(self.slope_fit_window > 0.0 && self.slope_fit_window <= 1.0) {
            return Err(Error::InvalidArgument(
                "slope fit window must lie in (0, 1]".into(),
            ));
        }
        if self.params_per_segment == 0 {
            return Err(Error::InvalidArgument(
                "params per segment must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Per-criterion working values, kept for inspection and reporting.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Normalized second differences, entry i for K = i + 2.
    pub lavielle_second_diffs: Vec<f64>,
    /// Multiplier at the largest dimension jump.
    pub bm1_alpha_jump: Option<f64>,
    /// Fitted slope of cost against penalty shape.
    pub bm2_slope: Option<f64>,
    /// Final multiplier used by the slope criterion (twice the slope).
    pub bm2_alpha: Option<f64>,
    /// Criterion values per K, index K - 1.
    pub mbic_values: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Outcome of running the selection criteria over one cost curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SelectionReport {
    pub contrast: Vec<f64>,
    pub chosen: BTreeMap<Criterion, usize>,
    pub diagnostics: Diagnostics,
}

fn check_costs(costs: &[f64], min_len: usize) -> Result<()> {
    if costs.len() < min_len {
        return Err(Error::InvalidArgument(format!(
            "need costs for at least {min_len} segment counts, got {}",
            costs.len()
        )));
    }
    if costs.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidArgument("non-finite cost".into()));
    }
    Ok(())
}

/// Elbow criterion on the normalized cost curve. Returns the largest K whose
/// normalized second difference exceeds the threshold, or 1 when none does
/// (including the flat-curve case, which also leaves a warning).
pub fn lavielle_select(costs: &[f64], cfg: &CriterionConfig) -> Result<(usize, Diagnostics)> {
    check_costs(costs, 3)?;
    cfg.validate()?;
    let kmax = costs.len();
    let mut diag = Diagnostics::default();
    let drop = costs[0] - costs[kmax - 1];
    if drop <= 0.0 {
        diag.warnings
            .push("flat cost curve; defaulting to a single segment".into());
        return Ok((1, diag));
    }
    // Normalize so the curve falls from kmax at K = 1 to 1 at K = kmax.
    let norm: Vec<f64> = costs
        .iter()
        .map(|&c| (costs[kmax - 1] - c) / (costs[kmax - 1] - costs[0]) * (kmax as f64 - 1.0) + 1.0)
        .collect();
    let mut chosen = 1usize;
    for k in 2..kmax {
        let d = norm[k - 2] - 2.0 * norm[k - 1] + norm[k];
        diag.lavielle_second_diffs.push(d);
        if d > cfg.lavielle_threshold {
            chosen = k;
        }
    }
    Ok((chosen, diag))
}

/// Penalty shape for a K-segmentation of n observations with one fitted
/// parameter per segment: 5 K + 2 K ln(n / K).
pub fn bm_penalty(k: usize, n: usize) -> f64 {
    bm_penalty_dim(k, n, 1)
}

/// Penalty shape with `params_per_segment` fitted parameters per segment:
/// the dimension term scales, the segmentation-count term does not.
pub fn bm_penalty_dim(k: usize, n: usize, params_per_segment: usize) -> f64 {
    let kf = k as f64;
    5.0 * (params_per_segment * k) as f64 + 2.0 * kf * (n as f64 / kf).ln()
}

/// K minimizing costs[K] + alpha * pen(K), smallest K on ties.
fn penalized_argmin(costs: &[f64], pen: &[f64], alpha: f64) -> usize {
    let mut best_k = 1usize;
    let mut best = f64::INFINITY;
    for k in 1..=costs.len() {
        let v = costs[k - 1] + alpha * pen[k - 1];
        if v < best {
            best = v;
            best_k = k;
        }
    }
    best_k
}

fn penalty_curve(kmax: usize, n: usize, params_per_segment: usize) -> Vec<f64> {
    (1..=kmax)
        .map(|k| bm_penalty_dim(k, n, params_per_segment))
        .collect()
}

/// Dimension-jump calibration of the penalty multiplier: scan a geometric
/// grid of multipliers, find where the selected K drops the most between
/// neighboring grid points (smallest such multiplier on ties), and return
/// the selection at twice that multiplier. Without any jump the selection at
/// the grid midpoint is returned with a warning.
pub fn bm1_select(costs: &[f64], n: usize, cfg: &CriterionConfig) -> Result<(usize, Diagnostics)> {
    check_costs(costs, 2)?;
    cfg.validate()?;
    let kmax = costs.len();
    let pen = penalty_curve(kmax, n, cfg.params_per_segment);
    let mut diag = Diagnostics::default();

    let drop = costs[0] - costs[kmax - 1];
    if drop <= 0.0 {
        diag.warnings
            .push("flat cost curve; defaulting to a single segment".into());
        return Ok((1, diag));
    }
    let anchor = drop / pen[kmax - 1];
    let lo = anchor / BM1_GRID_SPAN;
    let ratio = (BM1_GRID_SPAN * BM1_GRID_SPAN).powf(1.0 / (BM1_GRID_POINTS as f64 - 1.0));
    let grid: Vec<f64> = (0..BM1_GRID_POINTS)
        .map(|i| lo * ratio.powi(i as i32))
        .collect();
    let picks: Vec<usize> = grid
        .iter()
        .map(|&a| penalized_argmin(costs, &pen, a))
        .collect();

    let mut best_jump = 0usize;
    let mut alpha_jump = None;
    for i in 1..picks.len() {
        let jump = picks[i - 1].saturating_sub(picks[i]);
        if jump > best_jump {
            best_jump = jump;
            alpha_jump = Some(grid[i]);
        }
    }
    match alpha_jump {
        Some(alpha) => {
            diag.bm1_alpha_jump = Some(alpha);
            Ok((penalized_argmin(costs, &pen, 2.0 * alpha), diag))
        }
        None => {
            diag.warnings
                .push("no dimension jump on the multiplier grid; using its midpoint".into());
            let mid = grid[grid.len() / 2];
            Ok((penalized_argmin(costs, &pen, mid), diag))
        }
    }
}

/// Least-absolute-deviations line through (x, y) by iteratively reweighted
/// least squares, starting from ordinary least squares and falling back to
/// it if the sweeps degenerate. Returns (intercept, slope).
fn lad_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let ols = |w: &[f64]| -> Option<(f64, f64)> {
        let sw: f64 = w.iter().sum();
        let sx: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
        let sy: f64 = y.iter().zip(w).map(|(a, b)| a * b).sum();
        let sxx: f64 = x.iter().zip(w).map(|(a, b)| a * a * b).sum();
        let sxy: f64 = x.iter().zip(y).zip(w).map(|((a, c), b)| a * c * b).sum();
        let det = sw * sxx - sx * sx;
        if det.abs() < 1e-12 * sw.max(1.0) * sxx.max(1.0) {
            return None;
        }
        let slope = (sw * sxy - sx * sy) / det;
        let intercept = (sy - slope * sx) / sw;
        Some((intercept, slope))
    };

    let uniform = vec![1.0; x.len()];
    let start = ols(&uniform).unwrap_or((0.0, 0.0));
    let scale = y.iter().map(|v| v.abs()).fold(0.0f64, f64::max).max(1.0);
    let floor = 1e-8 * scale;
    let mut fit = start;
    for _ in 0..BM2_IRLS_ITERATIONS {
        let w: Vec<f64> = x
            .iter()
            .zip(y)
            .map(|(&a, &b)| 1.0 / (b - fit.0 - fit.1 * a).abs().max(floor))
            .collect();
        match ols(&w) {
            Some(next) => fit = next,
            None => return start,
        }
    }
    fit
}

/// Slope calibration of the penalty multiplier: fit cost against penalty
/// shape over the high-K tail, take twice the negated slope as the
/// multiplier, and minimize the penalized cost. A non-negative fitted slope
/// degrades to multiplier zero with a warning.
pub fn bm2_select(costs: &[f64], n: usize, cfg: &CriterionConfig) -> Result<(usize, Diagnostics)> {
    check_costs(costs, 2)?;
    cfg.validate()?;
    let kmax = costs.len();
    let window = (cfg.slope_fit_window * kmax as f64).ceil() as usize;
    let window = window.clamp(2, kmax);
    let pen = penalty_curve(kmax, n, cfg.params_per_segment);
    let xs: Vec<f64> = pen[kmax - window..].to_vec();
    let ys: Vec<f64> = costs[kmax - window..].to_vec();
    let (_, slope) = lad_line(&xs, &ys);
    let mut diag = Diagnostics {
        bm2_slope: Some(slope),
        ..Diagnostics::default()
    };
    let mut s_hat = -slope;
    if s_hat < 0.0 {
        diag.warnings.push(format!(
            "cost rises with the penalty shape over the fit window (slope {slope:.3e}); \
             using a zero multiplier"
        ));
        s_hat = 0.0;
    }
    let alpha = 2.0 * s_hat;
    diag.bm2_alpha = Some(alpha);
    Ok((penalized_argmin(costs, &pen, alpha), diag))
}

/// Modified BIC for a known-variance Gaussian likelihood: maximize
///
/// ```text
/// -costs[K]/2 - (1/2) sum_k ln(len_k) + (3/2 - K) ln(n)
/// ```
///
/// over K, smallest K on ties. `segs[K - 1]` supplies the segment lengths.
pub fn mbic_select(costs: &[f64], segs: &[Segmentation]) -> Result<(usize, Diagnostics)> {
    check_costs(costs, 1)?;
    if segs.len() != costs.len() {
        return Err(Error::LengthMismatch {
            series: costs.len(),
            labels: segs.len(),
        });
    }
    let n = segs[0].n() as f64;
    let log_n = n.ln();
    let mut diag = Diagnostics::default();
    let mut best_k = 1usize;
    let mut best = f64::NEG_INFINITY;
    for (i, seg) in segs.iter().enumerate() {
        let k = i + 1;
        let mut len_term = CompensatedSum::new();
        for l in seg.lengths() {
            len_term.add((l as f64).ln());
        }
        let value = -0.5 * costs[i] - 0.5 * len_term.value() + (1.5 - k as f64) * log_n;
        diag.mbic_values.push(value);
        if value > best {
            best = value;
            best_k = k;
        }
    }
    Ok((best_k, diag))
}

/// Runs every requested criterion over one cost curve, collecting choices
/// and merged diagnostics. Individual criterion failures become warnings;
/// the failed criterion is simply absent from the result map.
pub fn select_all(
    costs: &[f64],
    segs: &[Segmentation],
    n: usize,
    criteria: &[Criterion],
    cfg: &CriterionConfig,
) -> Result<SelectionReport> {
    check_costs(costs, 1)?;
    cfg.validate()?;
    let mut chosen = BTreeMap::new();
    let mut diag = Diagnostics::default();
    for &criterion in criteria {
        let outcome = match criterion {
            Criterion::Lavielle => lavielle_select(costs, cfg),
            Criterion::Bm1 => bm1_select(costs, n, cfg),
            Criterion::Bm2 => bm2_select(costs, n, cfg),
            Criterion::Mbic => mbic_select(costs, segs),
        };
        match outcome {
            Ok((k, d)) => {
                chosen.insert(criterion, k);
                diag.warnings
                    .extend(d.warnings.into_iter().map(|w| format!("{criterion}: {w}")));
                match criterion {
                    Criterion::Lavielle => diag.lavielle_second_diffs = d.lavielle_second_diffs,
                    Criterion::Bm1 => diag.bm1_alpha_jump = d.bm1_alpha_jump,
                    Criterion::Bm2 => {
                        diag.bm2_slope = d.bm2_slope;
                        diag.bm2_alpha = d.bm2_alpha;
                    }
                    Criterion::Mbic => diag.mbic_values = d.mbic_values,
                }
            }
            Err(e) => diag.warnings.push(format!("{criterion}: {e}")),
        }
    }
    Ok(SelectionReport {
        contrast: costs.to_vec(),
        chosen,
        diagnostics: diag,
    })
}
