//! End-to-end orchestration: scales, then segmentation, then selection.
//!
//! The two-step design is deliberate. Interval scales are estimated once
//! from lag-one differences, independent of any segmentation, and the
//! dynamic program then treats them as known weights. [`analyze`] wires the
//! steps together for callers that do not need to intervene in between.

use crate::domain::{ScaleEstimates, TimeSeries, VarianceIntervalMap};
use crate::error::Result;
use crate::robust::{scale_per_interval, scale_per_interval_named, ScaleOptions};
use crate::selection::{select_all, Criterion, CriterionConfig, SelectionReport};
use crate::weighted::{default_kmax, dp_segment, DpResult};

/// Knobs for [`analyze`]. `kmax` of `None` means n/5 capped at 100.
#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub kmax: Option<usize>,
    pub min_seg_len: usize,
    pub criteria: Vec<Criterion>,
    pub scale: ScaleOptions,
    pub selection: CriterionConfig,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            kmax: None,
            min_seg_len: 1,
            criteria: Criterion::ALL.to_vec(),
            scale: ScaleOptions::default(),
            selection: CriterionConfig::default(),
        }
    }
}

/// Everything a caller needs after a run: the per-interval scales, the
/// optimal fits for every candidate K, and the chosen K per criterion.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub scales: ScaleEstimates,
    pub fit: DpResult,
    pub report: SelectionReport,
}

/// Scale estimation, weighted segmentation, and model selection in one
/// call.
pub fn analyze(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    opts: &AnalysisOptions,
) -> Result<Analysis> {
    let scales = scale_per_interval(series, map, &opts.scale)?;
    finish(series, map, scales, opts)
}

/// [`analyze`] with interval names (months, usually) for error messages.
pub fn analyze_named(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    names: &[String],
    opts: &AnalysisOptions,
) -> Result<Analysis> {
    let scales = scale_per_interval_named(series, map, &opts.scale, names)?;
    finish(series, map, scales, opts)
}

fn finish(
    series: &TimeSeries,
    map: &VarianceIntervalMap,
    scales: ScaleEstimates,
    opts: &AnalysisOptions,
) -> Result<Analysis> {
    let kmax = opts.kmax.unwrap_or_else(|| default_kmax(series.len()));
    let fit = dp_segment(series, map, &scales, kmax, opts.min_seg_len)?;
    let report = select_all(
        fit.contrast(),
        fit.segmentations(),
        series.len(),
        &opts.criteria,
        &opts.selection,
    )?;
    Ok(Analysis {
        scales,
        fit,
        report,
    })
}
