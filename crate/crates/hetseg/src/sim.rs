//! Seeded Monte-Carlo bench for the segmentation models.
//!
//! The synthetic design is a step-mean Gaussian series over alternating
//! variance blocks: four "years" of two "months" each, so eight equal blocks
//! whose noise level alternates between sigma1 and a grid value sigma2. True
//! breakpoints sit at fixed positions that deliberately do not align with
//! the block boundaries.
//!
//! Every replication derives its own RNG seed from (base seed, sigma2, rep)
//! by integer mixing, so any cell of the grid can be regenerated in
//! isolation and parallel execution cannot change results. The grid runner
//! scores each model and criterion with the two directed Hausdorff
//! components and per-interval scale errors, and emits one flat
//! tab-separated row per (model, criterion, sigma2, rep).

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{baseline_select, mhomo_variance, BaselineKind};
use crate::domain::{ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap};
use crate::error::{Error, Result};
use crate::robust::{scale_per_interval, ScaleOptions};
use crate::selection::{select_all, Criterion, CriterionConfig};
use crate::weighted::{default_kmax, dp_segment};

/// Pseudo-criterion label for rows scored at the true number of segments.
pub const TRUE_K_LABEL: &str = "truek";

/// The three models the bench compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelKind {
    /// The main method: robust per-interval scales, then weighted DP.
    FixedHetero,
    /// Plain least squares with one global variance.
    Homo,
    /// Mean and variance free in every segment.
    Hetero,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::FixedHetero, ModelKind::Homo, ModelKind::Hetero];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::FixedHetero => "mfixedhetero",
            ModelKind::Homo => "mhomo",
            ModelKind::Hetero => "mhetero",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mfixedhetero" | "fixedhetero" | "fixed" => Ok(ModelKind::FixedHetero),
            "mhomo" | "homo" => Ok(ModelKind::Homo),
            "mhetero" | "hetero" => Ok(ModelKind::Hetero),
            other => Err(Error::InvalidArgument(format!(
                "unknown model {other:?}; expected mfixedhetero, mhomo, or mhetero"
            ))),
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The synthetic experiment: block layout, noise levels, true segmentation,
/// replication count, and the base RNG seed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimDesign {
    pub n: usize,
    pub year_count: usize,
    pub months_per_year: usize,
    pub sigma1: f64,
    pub sigma2_grid: Vec<f64>,
    pub true_breaks: Vec<usize>,
    pub replications: u32,
    pub base_seed: u64,
}

impl SimDesign {
    /// Canonical design for a series of length n (n divisible by 8): noise
    /// 0.5 on odd blocks, grid 0.1, 0.3, ..., 1.5 on even blocks, seven true
    /// segments, 100 replications. For n = 200 the true breakpoints are
    /// (27, 38, 88, 111, 150, 183); other lengths scale them.
    pub fn defaults(n: usize, base_seed: u64) -> Result<Self> {
        let design = Self {
            n,
            year_count: 4,
            months_per_year: 2,
            sigma1: 0.5,
            sigma2_grid: (0..8).map(|i| (2 * i + 1) as f64 / 10.0).collect(),
            true_breaks: [27, 38, 88, 111, 150, 183]
                .iter()
                .map(|&b| b * n / 200)
                .collect(),
            replications: 100,
            base_seed,
        };
        design.validate()?;
        Ok(design)
    }

    pub fn validate(&self) -> Result<()> {
        let blocks = self.year_count * self.months_per_year;
        if blocks == 0 || self.n == 0 || !self.n.is_multiple_of(blocks) {
            return Err(Error::InvalidArgument(format!(
                "series length {} must be a positive multiple of {} blocks",
                self.n, blocks
            )));
        }
        if self.months_per_year != 2 {
            return Err(Error::InvalidArgument(
                "the design alternates exactly two noise levels per year".into(),
            ));
        }
        let positive = |s: f64| s.is_finite() && s > 0.0;
        if !positive(self.sigma1) || !self.sigma2_grid.iter().all(|&s| positive(s)) {
            return Err(Error::InvalidArgument(
                "noise levels must be positive".into(),
            ));
        }
        if self.sigma2_grid.is_empty() {
            return Err(Error::InvalidArgument("empty sigma2 grid".into()));
        }
        let mut prev = 0usize;
        for &b in &self.true_breaks {
            if b <= prev || b >= self.n {
                return Err(Error::InvalidArgument(format!(
                    "true breakpoint {b} out of order or outside 1..{}",
                    self.n - 1
                )));
            }
            prev = b;
        }
        if self.replications == 0 {
            return Err(Error::InvalidArgument(
                "need at least one replication".into(),
            ));
        }
        Ok(())
    }

    /// True number of segments.
    pub fn k_star(&self) -> usize {
        self.true_breaks.len() + 1
    }

    fn block_len(&self) -> usize {
        self.n / (self.year_count * self.months_per_year)
    }

    /// Alternating month labels, 1-based, in blocks of n / 8.
    pub fn labels(&self) -> Vec<usize> {
        let block = self.block_len();
        (0..self.n).map(|t| 1 + (t / block) % 2).collect()
    }

    /// Step mean at observation t (1-based): segments alternate 0 and 1
    /// starting at 0.
    pub fn mean_at(&self, t: usize) -> f64 {
        let seg = self.true_breaks.iter().filter(|&&b| b < t).count();
        (seg % 2) as f64
    }

    pub fn true_segmentation(&self) -> Segmentation {
        let k = self.k_star();
        let means = (0..k).map(|i| (i % 2) as f64).collect();
        Segmentation::new(self.n, self.true_breaks.clone(), means)
            .expect("validated design produces a valid segmentation")
    }
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Seed for one grid cell, mixed from the base seed, the noise level bits,
/// and the replication index. Stable across execution order and thread
/// count.
pub fn rep_seed(base_seed: u64, sigma2: f64, rep: u32) -> u64 {
    let golden = 0x9e3779b97f4a7c15u64;
    let h = mix64(base_seed.wrapping_add(golden));
    let h = mix64(h ^ sigma2.to_bits().wrapping_mul(golden));
    mix64(h ^ u64::from(rep).wrapping_mul(golden))
}

/// One synthetic replication: the series, its variance-interval map, and
/// the true segmentation. Deterministic in (design.base_seed, sigma2, rep).
pub fn generate_series(
    design: &SimDesign,
    sigma2: f64,
    rep: u32,
) -> Result<(TimeSeries, VarianceIntervalMap, Segmentation)> {
    design.validate()?;
    if !(sigma2.is_finite() && sigma2 > 0.0) {
        return Err(Error::InvalidArgument(
            "noise levels must be positive".into(),
        ));
    }
    let labels = design.labels();
    let mut rng = ChaCha8Rng::seed_from_u64(rep_seed(design.base_seed, sigma2, rep));
    let normal = rand_distr::StandardNormal;
    let values: Vec<f64> = (1..=design.n)
        .map(|t| {
            let sigma = if labels[t - 1] == 1 {
                design.sigma1
            } else {
                sigma2
            };
            let z: f64 = normal.sample(&mut rng);
            design.mean_at(t) + sigma * z
        })
        .collect();
    let series = TimeSeries::new(values)?;
    let map = VarianceIntervalMap::new(labels, design.months_per_year)?;
    Ok((series, map, design.true_segmentation()))
}

fn nearest_distance(p: usize, set: &[usize]) -> usize {
    set.iter().map(|&q| p.abs_diff(q)).min().unwrap_or(0)
}

/// Directed Hausdorff components between breakpoint sets: d1 is the largest
/// distance from an estimated point to the true set, d2 the largest distance
/// from a true point to the estimated set. An empty set on either side is
/// replaced, as reference, by the segment boundary set {0, n}; the maximum
/// over an empty query side is 0. So a single-segment estimate scores d1 = 0
/// and a d2 that measures how far the true breaks sit from the boundaries.
pub fn hausdorff_components(true_breaks: &[usize], est_breaks: &[usize], n: usize) -> (f64, f64) {
    let boundary = [0usize, n];
    let true_ref: &[usize] = if true_breaks.is_empty() {
        &boundary
    } else {
        true_breaks
    };
    let est_ref: &[usize] = if est_breaks.is_empty() {
        &boundary
    } else {
        est_breaks
    };
    let d1 = est_breaks
        .iter()
        .map(|&p| nearest_distance(p, true_ref))
        .max()
        .unwrap_or(0);
    let d2 = true_breaks
        .iter()
        .map(|&p| nearest_distance(p, est_ref))
        .max()
        .unwrap_or(0);
    (d1 as f64, d2 as f64)
}

/// One output row of the bench.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub model: String,
    /// A criterion tag, or "truek" for the forced true-K segmentation.
    pub criterion: String,
    pub sigma2: f64,
    pub rep: u32,
    #[serde(rename = "kHat")]
    pub k_hat: usize,
    #[serde(rename = "kStar")]
    pub k_star: usize,
    pub d1: f64,
    pub d2: f64,
    #[serde(rename = "sigmaErr1")]
    pub sigma_err1: f64,
    #[serde(rename = "sigmaErr2")]
    pub sigma_err2: f64,
    #[serde(rename = "wallMs")]
    pub wall_ms: f64,
}

/// What to run over the design grid.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub models: Vec<ModelKind>,
    pub criteria: Vec<Criterion>,
    /// Plug the true noise levels into the main model instead of estimating
    /// them from differences.
    pub oracle_variances: bool,
    /// Cap on the number of segments; the length-based default when absent.
    pub kmax: Option<usize>,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            models: ModelKind::ALL.to_vec(),
            criteria: Criterion::ALL.to_vec(),
            oracle_variances: false,
            kmax: None,
        }
    }
}

/// Bench output: flat rows in deterministic order plus notes on any
/// replications that failed.
#[derive(Debug, Clone, Default)]
pub struct GridTable {
    pub rows: Vec<GridRow>,
    pub failures: Vec<String>,
}

impl GridTable {
    /// Tab-separated dump with a header row.
    pub fn write_tsv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().delimiter(b'\t').from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Median summaries keyed by (sigma2 bits, model, criterion): the median
    /// of kHat - kStar, d1, and d2, plus the row count.
    pub fn summaries(&self) -> Vec<SummaryRow> {
        let mut groups: BTreeMap<(u64, String, String), Vec<&GridRow>> = BTreeMap::new();
        for row in &self.rows {
            groups
                .entry((
                    row.sigma2.to_bits(),
                    row.model.clone(),
                    row.criterion.clone(),
                ))
                .or_default()
                .push(row);
        }
        groups
            .into_iter()
            .map(|((bits, model, criterion), rows)| {
                let k_err: Vec<f64> = rows
                    .iter()
                    .map(|r| r.k_hat as f64 - r.k_star as f64)
                    .collect();
                let d1: Vec<f64> = rows.iter().map(|r| r.d1).collect();
                let d2: Vec<f64> = rows.iter().map(|r| r.d2).collect();
                SummaryRow {
                    sigma2: f64::from_bits(bits),
                    model,
                    criterion,
                    median_k_err: median(k_err),
                    median_d1: median(d1),
                    median_d2: median(d2),
                    rows: rows.len(),
                }
            })
            .collect()
    }
}

/// Group medians over the bench rows.
#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub sigma2: f64,
    pub model: String,
    pub criterion: String,
    #[serde(rename = "medianKErr")]
    pub median_k_err: f64,
    #[serde(rename = "medianD1")]
    pub median_d1: f64,
    #[serde(rename = "medianD2")]
    pub median_d2: f64,
    pub rows: usize,
}

/// Sample median; the mean of the middle pair on even lengths, NaN when
/// empty.
pub fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.sort_by(f64::total_cmp);
    let mid = xs.len() / 2;
    if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        0.5 * (xs[mid - 1] + xs[mid])
    }
}

/// A scored selection: criterion tag, chosen K, and its breakpoints.
type Pick = (String, usize, Vec<usize>);
/// Every scored selection for one fitted model, each with its pair of
/// scale-error columns.
type Picks = (Vec<Pick>, Vec<(f64, f64)>);

struct CellOutcome {
    rows: Vec<GridRow>,
    failures: Vec<String>,
}

fn run_cell(
    design: &SimDesign,
    cfg: &GridConfig,
    sel_cfg: &CriterionConfig,
    kmax: usize,
    sigma2: f64,
    rep: u32,
) -> CellOutcome {
    let mut out = CellOutcome {
        rows: Vec::new(),
        failures: Vec::new(),
    };
    let generated = generate_series(design, sigma2, rep);
    let (series, map, true_seg) = match generated {
        Ok(g) => g,
        Err(e) => {
            out.failures
                .push(format!("sigma2 {sigma2} rep {rep}: generation failed: {e}"));
            return out;
        }
    };
    let truth = true_seg.breakpoints();
    let k_star = true_seg.k();
    let n = design.n;

    for &model in &cfg.models {
        let clock = Instant::now();
        // Fit the model, score each criterion's selection, and score the
        // forced true-K segmentation from the same tables.
        let fitted: Result<Picks> = (|| {
            let (fit, report, scale_err) = match model {
                ModelKind::FixedHetero => {
                    let scales = if cfg.oracle_variances {
                        ScaleEstimates::new(vec![design.sigma1, sigma2])?
                    } else {
                        scale_per_interval(&series, &map, &ScaleOptions::default())?
                    };
                    let err = vec![scales.sigma(1) - design.sigma1, scales.sigma(2) - sigma2];
                    let fit = dp_segment(&series, &map, &scales, kmax, 1)?;
                    let report = select_all(
                        fit.contrast(),
                        fit.segmentations(),
                        n,
                        &cfg.criteria,
                        sel_cfg,
                    )?;
                    (fit, report, Some(err))
                }
                ModelKind::Homo => {
                    let (fit, report) = baseline_select(
                        BaselineKind::MHomo,
                        &series,
                        kmax,
                        &cfg.criteria,
                        sel_cfg,
                    )?;
                    (fit, report, None)
                }
                ModelKind::Hetero => {
                    let (fit, report) = baseline_select(
                        BaselineKind::MHetero,
                        &series,
                        kmax,
                        &cfg.criteria,
                        sel_cfg,
                    )?;
                    (fit, report, None)
                }
            };
            let mut picks: Vec<Pick> = Vec::new();
            for &criterion in &cfg.criteria {
                if let Some(&k) = report.chosen.get(&criterion) {
                    picks.push((
                        criterion.as_str().to_string(),
                        k,
                        fit.segmentation(k).breakpoints().to_vec(),
                    ));
                }
            }
            if k_star <= kmax {
                picks.push((
                    TRUE_K_LABEL.to_string(),
                    k_star,
                    fit.segmentation(k_star).breakpoints().to_vec(),
                ));
            }
            // Scale-error columns per pick: constant for the main model,
            // selection-dependent for the pooled-variance baseline.
            let errs: Vec<(f64, f64)> = picks
                .iter()
                .map(|(_, k, _)| match (&scale_err, model) {
                    (Some(e), _) => (e[0], e[1]),
                    (None, ModelKind::Homo) => {
                        let sd = mhomo_variance(&fit, *k).sqrt();
                        (sd - design.sigma1, sd - sigma2)
                    }
                    (None, _) => (f64::NAN, f64::NAN),
                })
                .collect();
            Ok((picks, errs))
        })();
        let wall_ms = clock.elapsed().as_secs_f64() * 1e3;
        match fitted {
            Ok((picks, errs)) => {
                for ((tag, k_hat, breaks), (e1, e2)) in picks.into_iter().zip(errs) {
                    let (d1, d2) = hausdorff_components(truth, &breaks, n);
                    out.rows.push(GridRow {
                        model: model.as_str().to_string(),
                        criterion: tag,
                        sigma2,
                        rep,
                        k_hat,
                        k_star,
                        d1,
                        d2,
                        sigma_err1: e1,
                        sigma_err2: e2,
                        wall_ms,
                    });
                }
            }
            Err(e) => out
                .failures
                .push(format!("sigma2 {sigma2} rep {rep} {model}: {e}")),
        }
    }
    out
}

/// Runs every (sigma2, replication) cell of the design for the requested
/// models and criteria. Rows come back ordered by (sigma2 grid position,
/// rep, model, criterion); failures are recorded and skipped, never fatal
/// for the rest of the grid.
pub fn run_grid(design: &SimDesign, cfg: &GridConfig) -> Result<GridTable> {
    design.validate()?;
    if cfg.models.is_empty() {
        return Err(Error::InvalidArgument("no models requested".into()));
    }
    let kmax = cfg.kmax.unwrap_or_else(|| default_kmax(design.n));
    let sel_cfg = CriterionConfig::default();
    let cells: Vec<(f64, u32)> = design
        .sigma2_grid
        .iter()
        .flat_map(|&s| (0..design.replications).map(move |r| (s, r)))
        .collect();
    let outcomes: Vec<CellOutcome> = cells
        .par_iter()
        .map(|&(sigma2, rep)| run_cell(design, cfg, &sel_cfg, kmax, sigma2, rep))
        .collect();
    let mut table = GridTable::default();
    for c in outcomes {
        table.rows.extend(c.rows);
        table.failures.extend(c.failures);
    }
    Ok(table)
}
