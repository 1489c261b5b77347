//! Estimate one noise level per calendar month and show why the pairwise
//! quartile beats the plain standard deviation: a handful of gross outliers
//! barely moves the robust estimate.
//!
//!     cargo run --release --example monthly_scales

use chrono::{Datelike, Days, NaiveDate};
use hetseg::robust::{scale_per_interval, ScaleOptions};
use hetseg::{TimeSeries, VarianceIntervalMap};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn month_sigma(month: u32) -> f64 {
    // Wetter, noisier summers.
    if (4..=9).contains(&month) {
        2.0
    } else {
        0.5
    }
}

fn main() -> hetseg::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let start: NaiveDate = "2019-01-01".parse().unwrap();
    let dates: Vec<NaiveDate> = (0..730).map(|i| start + Days::new(i)).collect();
    let mut values: Vec<f64> = dates
        .iter()
        .map(|d| 10.0 + month_sigma(d.month()) * rng.sample::<f64, _>(StandardNormal))
        .collect();
    // Six corrupted readings, five sigmas and up.
    for (i, v) in [
        (40, 60.0),
        (200, -45.0),
        (330, 80.0),
        (395, 55.0),
        (520, -70.0),
        (650, 90.0),
    ] {
        values[i] = v;
    }

    let labels: Vec<usize> = dates.iter().map(|d| d.month() as usize).collect();
    let series = TimeSeries::with_dates(values, dates.clone())?;
    let map = VarianceIntervalMap::new(labels, 12)?;
    let scales = scale_per_interval(&series, &map, &ScaleOptions::default())?;

    println!("month  true  robust  plain-sd");
    for j in 1..=12usize {
        let xs: Vec<f64> = series
            .values()
            .iter()
            .zip(map.labels())
            .filter(|(_, &l)| l == j)
            .map(|(&v, _)| v)
            .collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let sd =
            (xs.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (xs.len() - 1) as f64).sqrt();
        println!(
            "{:>5}  {:>4.1}  {:>6.3}  {:>8.3}",
            j,
            month_sigma(j as u32),
            scales.sigma(j),
            sd
        );
    }
    Ok(())
}
