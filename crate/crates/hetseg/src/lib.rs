//! Mean-shift detection in series whose noise level changes over known,
//! fixed time intervals (calendar months, say), with the variance of each
//! interval estimated robustly before any segmentation is attempted.
//!
//! The pipeline has two steps:
//!
//! 1. estimate one scale per interval from first differences of the series,
//!    using a pairwise-quartile estimator that ignores the few differences
//!    straddling mean shifts ([`robust`]);
//! 2. segment the series by exact dynamic programming under a
//!    variance-weighted least-squares cost ([`weighted`]) and pick the number
//!    of segments with one of four criteria ([`selection`]).
//!
//! [`baselines`] fits the same series under simpler noise models (one global
//! variance, or a variance that changes with every segment), [`sim`] generates
//! benchmark series and scores estimated breakpoints, and [`ingest`] reads
//! delimited daily data files and writes the result tables.
//!
//! Runnable walkthroughs live in `examples/`; each one exercises a major
//! capability end to end:
//!
//! ```text
//! cargo run --release -p hetseg --example segment_synthetic
//! cargo run --release -p hetseg --example monthly_scales
//! cargo run --release -p hetseg --example choose_k
//! cargo run --release -p hetseg --example compare_models
//! cargo run --release -p hetseg --example simulation_grid
//! cargo run --release -p hetseg --example estimator_asymptotics
//! cargo run --release -p hetseg --example csv_ingest
//! ```

pub mod baselines;
pub mod domain;
pub mod error;
pub mod gauss;
pub mod ingest;
pub mod pipeline;
pub mod robust;
pub mod selection;
pub mod sim;
pub mod weighted;

mod dp;
mod ksum;

pub use domain::{validate_inputs, ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap};
pub use error::{Error, Result};
