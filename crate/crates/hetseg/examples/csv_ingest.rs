//! From a raw file to segmentation tables: parse a comma-separated series
//! with a bad row and a gap, pool observations by calendar month, and write
//! the three plot-ready outputs to stdout.
//!
//!     cargo run --release --example csv_ingest

use hetseg::ingest::{
    parse_series, write_breaks_tsv, write_contrast_tsv, write_scales_tsv, IngestConfig,
};
use hetseg::pipeline::{analyze_named, AnalysisOptions};
use hetseg::selection::Criterion;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> hetseg::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let start: chrono::NaiveDate = "2021-01-01".parse().unwrap();
    let mut text = String::from("date,value\n");
    for i in 0..120u64 {
        if i == 57 {
            text.push_str("2021-02-27,not-a-number\n");
            continue;
        }
        if (70..75).contains(&i) {
            continue; // a five-day outage
        }
        let level = if i < 60 { 0.0 } else { 4.0 };
        let noise: f64 = rng.sample(StandardNormal);
        let date = start + chrono::Days::new(i);
        text.push_str(&format!("{date},{:.4}\n", level + 0.6 * noise));
    }

    let parsed = parse_series(text.as_bytes(), &IngestConfig::default())?;
    println!(
        "parsed {} rows, dropped {}, intervals: {:?}\n",
        parsed.series.len(),
        parsed.dropped_rows,
        parsed.interval_names
    );

    let got = analyze_named(
        &parsed.series,
        &parsed.map,
        &parsed.interval_names,
        &AnalysisOptions::default(),
    )?;
    let k = got.report.chosen[&Criterion::Mbic];

    let mut out = std::io::stdout().lock();
    write_scales_tsv(&mut out, &parsed.interval_names, &got.scales)?;
    println!();
    write_breaks_tsv(&mut out, &parsed.series, got.fit.segmentation(k))?;
    println!();
    write_contrast_tsv(&mut out, &got.fit.contrast()[..6.min(got.fit.kmax())])?;
    Ok(())
}
