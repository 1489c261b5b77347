//! Core data types shared by the whole pipeline.
//!
//! Index conventions used throughout the crate:
//!
//! * observations are numbered 1..=n in the documentation; Rust slices are
//!   0-based, so observation t lives at `values[t - 1]`;
//! * a breakpoint t means "the segment ends after observation t", so a
//!   segmentation into K segments stores K-1 breakpoints, each in 1..=n-1;
//! * variance-interval labels are dense integers 1..=J.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A univariate series with optional daily timestamps.
///
/// Construction validates the invariants once so downstream code can rely on
/// them: at least two finite values, and dates (when present) strictly
/// increasing with one date per value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    dates: Option<Vec<NaiveDate>>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::build(values, None)
    }

    pub fn with_dates(values: Vec<f64>, dates: Vec<NaiveDate>) -> Result<Self> {
        Self::build(values, Some(dates))
    }

    fn build(values: Vec<f64>, dates: Option<Vec<NaiveDate>>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooShort {
                len: values.len(),
                min: 2,
            });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { index: i + 1 });
            }
        }
        if let Some(d) = &dates {
            if d.len() != values.len() {
                return Err(Error::LengthMismatch {
                    series: values.len(),
                    labels: d.len(),
                });
            }
            for i in 1..d.len() {
                if d[i] <= d[i - 1] {
                    return Err(Error::NonIncreasingDates { index: i + 1 });
                }
            }
        }
        Ok(Self { values, dates })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dates(&self) -> Option<&[NaiveDate]> {
        self.dates.as_deref()
    }
}

/// Assignment of every observation to one of J variance intervals.
///
/// Labels are dense: every value in 1..=J occurs at least once. The map only
/// records membership; how labels were derived (calendar months, explicit
/// file column, simulation blocks) is up to the producer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarianceIntervalMap {
    labels: Vec<usize>,
    interval_count: usize,
}

impl VarianceIntervalMap {
    pub fn new(labels: Vec<usize>, interval_count: usize) -> Result<Self> {
        if interval_count == 0 {
            return Err(Error::InvalidArgument(
                "interval count must be at least 1".into(),
            ));
        }
        let mut seen = vec![false; interval_count];
        for (i, &l) in labels.iter().enumerate() {
            if l < 1 || l > interval_count {
                return Err(Error::LabelOutOfRange {
                    index: i + 1,
                    label: l,
                    max: interval_count,
                });
            }
            seen[l - 1] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::EmptyInterval { label: missing + 1 });
        }
        Ok(Self {
            labels,
            interval_count,
        })
    }

    /// Single-interval map: the homogeneous J = 1 case.
    pub fn uniform(n: usize) -> Self {
        Self {
            labels: vec![1; n],
            interval_count: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn interval_count(&self) -> usize {
        self.interval_count
    }

    /// Label of observation t (1-based).
    pub fn label(&self, t: usize) -> usize {
        self.labels[t - 1]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Observations per interval, indexed by label - 1.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0usize; self.interval_count];
        for &l in &self.labels {
            c[l - 1] += 1;
        }
        c
    }
}

/// One robust scale per variance interval, indexed by label - 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleEstimates {
    sigma: Vec<f64>,
}

impl ScaleEstimates {
    pub fn new(sigma: Vec<f64>) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::InvalidArgument("no scales given".into()));
        }
        for (j, s) in sigma.iter().enumerate() {
            if !s.is_finite() || *s <= 0.0 {
                return Err(Error::ZeroScale {
                    name: format!("label {}", j + 1),
                });
            }
        }
        Ok(Self { sigma })
    }

    pub fn interval_count(&self) -> usize {
        self.sigma.len()
    }

    /// Scale for interval label j (1-based).
    pub fn sigma(&self, j: usize) -> f64 {
        self.sigma[j - 1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.sigma
    }
}

/// A partition of 1..=n into K contiguous segments with fitted means.
///
/// `breakpoints` holds the last observation of each segment except the final
/// one, strictly increasing. `means[k]` is the fitted mean of segment k.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Segmentation {
    n: usize,
    breakpoints: Vec<usize>,
    means: Vec<f64>,
}

impl Segmentation {
    pub fn new(n: usize, breakpoints: Vec<usize>, means: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("empty series".into()));
        }
        if means.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidArgument(format!(
                "{} breakpoints require {} means, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                means.len()
            )));
        }
        let mut prev = 0usize;
        for &t in &breakpoints {
            if t <= prev || t >= n {
                return Err(Error::InvalidArgument(format!(
                    "breakpoint {t} out of order or outside 1..={}",
                    n - 1
                )));
            }
            prev = t;
        }
        for m in &means {
            if !m.is_finite() {
                return Err(Error::InvalidArgument("non-finite segment mean".into()));
            }
        }
        Ok(Self {
            n,
            breakpoints,
            means,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of segments K.
    pub fn k(&self) -> usize {
        self.breakpoints.len() + 1
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    /// Segment ranges as 1-based inclusive (start, end) pairs. They partition
    /// 1..=n by construction.
    pub fn segments(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.k());
        let mut start = 1usize;
        for &t in &self.breakpoints {
            out.push((start, t));
            start = t + 1;
        }
        out.push((start, self.n));
        out
    }

    /// Segment lengths in observation counts.
    pub fn lengths(&self) -> Vec<usize> {
        self.segments().iter().map(|(a, b)| b - a + 1).collect()
    }
}

/// Checks that a series and an interval map describe the same observations.
pub fn validate_inputs(series: &TimeSeries, map: &VarianceIntervalMap) -> Result<()> {
    if series.len() != map.len() {
        return Err(Error::LengthMismatch {
            series: series.len(),
            labels: map.len(),
        });
    }
    Ok(())
}
