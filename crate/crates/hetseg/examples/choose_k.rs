//! How many segments? Walk the contrast curve and the internal diagnostics
//! of each selection rule: normalized second differences, the penalty
//! dimension jump, the fitted slope, and the per-K modified information
//! criterion.
//!
//!     cargo run --release --example choose_k

use hetseg::pipeline::{analyze, AnalysisOptions};
use hetseg::sim::{generate_series, SimDesign};

fn main() -> hetseg::Result<()> {
    let design = SimDesign::defaults(200, 7)?;
    let (series, map, truth) = generate_series(&design, 0.3, 4)?;
    let opts = AnalysisOptions {
        kmax: Some(15),
        ..AnalysisOptions::default()
    };
    let got = analyze(&series, &map, &opts)?;
    let d = &got.report.diagnostics;

    println!("true K = {}", truth.k());
    println!("\n  K    contrast    secondDiff        mbic");
    for k in 1..=got.fit.kmax() {
        let dd = d
            .lavielle_second_diffs
            .get(k - 1)
            .map(|v| format!("{v:>10.4}"))
            .unwrap_or_else(|| "         -".into());
        let mb = d
            .mbic_values
            .get(k - 1)
            .map(|v| format!("{v:>11.3}"))
            .unwrap_or_else(|| "          -".into());
        println!("{:>3}  {:>10.3}  {dd}  {mb}", k, got.fit.contrast_at(k));
    }

    if let Some(alpha) = d.bm1_alpha_jump {
        println!("\nlargest penalty-dimension jump at alpha = {alpha:.5}");
    }
    if let (Some(slope), Some(alpha)) = (d.bm2_slope, d.bm2_alpha) {
        println!("fitted contrast slope {slope:.4} -> data-driven alpha {alpha:.4}");
    }
    println!();
    for (criterion, &k) in &got.report.chosen {
        println!("{criterion:>4} picks K = {k}");
    }
    Ok(())
}
