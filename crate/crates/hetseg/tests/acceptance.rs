//! The ten acceptance checks, one test per check. Each prints a single
//! `check N PASS` line with the measured numbers (visible under
//! `cargo test --test acceptance -- --nocapture`).
//!
//! Checks 3, 4, 5, 6, and 10 share one benchmark-grid run, built lazily on
//! first use.

use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use hetseg::gauss::qn_constant;
use hetseg::robust::{
    asymptotic_variance, interval_differences, qn, scale_from_diffs, scale_per_interval,
    ScaleOptions,
};
use hetseg::selection::{bm_penalty, lavielle_select, mbic_select, CriterionConfig};
use hetseg::sim::{
    generate_series, median, run_grid, GridConfig, GridRow, GridTable, ModelKind, SimDesign,
};
use hetseg::weighted::{brute_force_segment, dp_segment};
use hetseg::{ScaleEstimates, Segmentation, TimeSeries, VarianceIntervalMap};

struct Grids {
    estimated: GridTable,
    oracle: GridTable,
    sigma2_grid: Vec<f64>,
    grid_secs: f64,
}

fn grids() -> &'static Grids {
    static G: OnceLock<Grids> = OnceLock::new();
    G.get_or_init(|| {
        let design = SimDesign::defaults(200, 42).expect("default design");
        let start = Instant::now();
        let estimated = run_grid(&design, &GridConfig::default()).expect("estimated grid");
        let grid_secs = start.elapsed().as_secs_f64();
        let oracle_cfg = GridConfig {
            models: vec![ModelKind::FixedHetero],
            oracle_variances: true,
            ..GridConfig::default()
        };
        let oracle = run_grid(&design, &oracle_cfg).expect("oracle grid");
        assert!(estimated.failures.is_empty(), "{:?}", estimated.failures);
        assert!(oracle.failures.is_empty(), "{:?}", oracle.failures);
        Grids {
            estimated,
            oracle,
            sigma2_grid: design.sigma2_grid,
            grid_secs,
        }
    })
}

fn rows<'a>(
    table: &'a GridTable,
    model: &'a str,
    criterion: &'a str,
    sigma2: f64,
) -> impl Iterator<Item = &'a GridRow> {
    table.rows.iter().filter(move |r| {
        r.model == model && r.criterion == criterion && r.sigma2.to_bits() == sigma2.to_bits()
    })
}

fn median_of<'a>(it: impl Iterator<Item = &'a GridRow>, f: impl Fn(&GridRow) -> f64) -> f64 {
    median(it.map(f).collect())
}

#[test]
fn check_01_scale_estimator_consistency() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (n, tol) in [(800usize, 0.05), (200usize, 0.10)] {
        let design = SimDesign::defaults(n, 42).unwrap();
        for &sigma2 in &design.sigma2_grid {
            let mut err1 = Vec::new();
            let mut err2 = Vec::new();
            for rep in 0..design.replications {
                let (series, map, _) = generate_series(&design, sigma2, rep).unwrap();
                let scales = scale_per_interval(&series, &map, &ScaleOptions::default()).unwrap();
                err1.push(scales.sigma(1) - design.sigma1);
                err2.push(scales.sigma(2) - sigma2);
            }
            for (name, errs) in [("odd months", err1), ("even months", err2)] {
                let med = median(errs);
                assert!(
                    med.abs() <= tol,
                    "n = {n}, sigma2 = {sigma2}, {name}: median error {med:.4} exceeds {tol}"
                );
                worst = worst.max(med.abs() / tol);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 60.0, "scale consistency sweep took {secs:.1}s");
    println!(
        "check 1 PASS: scale medians within tolerance at n = 800 and 200 \
         (worst margin use {:.0}%, {secs:.1}s)",
        100.0 * worst
    );
}

#[test]
fn check_02_dp_matches_brute_force() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    for case in 0..200 {
        let n = rng.gen_range(6..=15usize);
        let j = rng.gen_range(1..=3usize);
        let k = rng.gen_range(1..=4usize.min(n));
        let labels: Vec<usize> = loop {
            let cand: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=j)).collect();
            if (1..=j).all(|l| cand.contains(&l)) {
                break cand;
            }
        };
        let map = VarianceIntervalMap::new(labels, j).unwrap();
        let scales =
            ScaleEstimates::new((0..j).map(|_| rng.gen_range(0.3..2.0)).collect()).unwrap();
        let values: Vec<f64> = (0..n)
            .map(|t| (t / 5) as f64 + rng.sample::<f64, _>(StandardNormal))
            .collect();
        let series = TimeSeries::new(values).unwrap();

        let dp = dp_segment(&series, &map, &scales, k, 1).unwrap();
        let (bf_cost, bf_seg) = brute_force_segment(&series, &map, &scales, k, 1).unwrap();
        assert_eq!(
            dp.segmentation(k).breakpoints(),
            bf_seg.breakpoints(),
            "case {case}: breakpoints differ (n = {n}, k = {k}, j = {j})"
        );
        let rel = (dp.contrast_at(k) - bf_cost).abs() / bf_cost.abs().max(1e-12);
        assert!(rel <= 1e-9, "case {case}: cost off by {rel:.2e}");
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(secs < 30.0, "exhaustive comparison took {secs:.1}s");
    println!("check 2 PASS: 200 random instances match brute force exactly ({secs:.1}s)");
}

#[test]
fn check_03_small_noise_recovery() {
    let g = grids();
    for criterion in ["mbic", "lav"] {
        let all: Vec<&GridRow> = rows(&g.estimated, "mfixedhetero", criterion, 0.1).collect();
        assert_eq!(all.len(), 100);
        let hits = all.iter().filter(|r| r.k_hat == 7).count();
        assert!(hits >= 80, "{criterion}: only {hits}/100 runs picked K = 7");
        let d1 = median(all.iter().map(|r| r.d1).collect());
        let d2 = median(all.iter().map(|r| r.d2).collect());
        assert!(d1 <= 2.0, "{criterion}: median d1 = {d1}");
        assert!(d2 <= 2.0, "{criterion}: median d2 = {d2}");
        println!(
            "check 3 PASS ({criterion}): K = 7 in {hits}/100 runs, median d1 = {d1}, d2 = {d2}"
        );
    }
}

#[test]
fn check_04_under_segmentation_at_high_noise() {
    let g = grids();
    let truek_d1 = median_of(rows(&g.estimated, "mfixedhetero", "truek", 1.5), |r| r.d1);
    for criterion in ["mbic", "lav", "bm1"] {
        let k_err = median_of(rows(&g.estimated, "mfixedhetero", criterion, 1.5), |r| {
            r.k_hat as f64 - r.k_star as f64
        });
        assert!(k_err <= -2.0, "{criterion}: median K error {k_err}");
        let d1 = median_of(rows(&g.estimated, "mfixedhetero", criterion, 1.5), |r| r.d1);
        assert!(
            d1 <= truek_d1,
            "{criterion}: median d1 {d1} worse than forced-K {truek_d1}"
        );
        println!(
            "check 4 PASS ({criterion}): median K error {k_err}, median d1 {d1} <= {truek_d1}"
        );
    }
}

#[test]
fn check_05_oracle_variance_equivalence() {
    let g = grids();
    let mut worst: f64 = 0.0;
    for &sigma2 in &g.sigma2_grid {
        for criterion in ["lav", "bm1", "bm2", "mbic"] {
            let est = median_of(rows(&g.estimated, "mfixedhetero", criterion, sigma2), |r| {
                r.k_hat as f64
            });
            let orc = median_of(rows(&g.oracle, "mfixedhetero", criterion, sigma2), |r| {
                r.k_hat as f64
            });
            let gap = (est - orc).abs();
            assert!(
                gap <= 1.0,
                "{criterion} at sigma2 = {sigma2}: medians {est} (estimated) vs {orc} (known)"
            );
            worst = worst.max(gap);
        }
    }
    println!(
        "check 5 PASS: estimated-variance medians within 1 of known-variance medians \
         for every criterion and noise level (worst gap {worst})"
    );
}

#[test]
fn check_06_homogeneous_model_pooled_scale() {
    // Under the homogeneity assumption the whole series is one variance
    // interval, and the scale read off its lag-one differences (without the
    // differencing correction) is what masks the small-amplitude breakpoint
    // in quiet months. At sigma2 = 1.5 it averages near 1.27.
    let design = SimDesign::defaults(200, 42).unwrap();
    let mut sum = 0.0;
    for rep in 0..design.replications {
        let (series, _, _) = generate_series(&design, 1.5, rep).unwrap();
        let uniform = VarianceIntervalMap::uniform(series.len());
        let per_interval = interval_differences(&series, &uniform).unwrap();
        sum += qn(&per_interval[0].diffs).unwrap();
    }
    let mean = sum / design.replications as f64;
    assert!(
        (mean - 1.27).abs() <= 0.15,
        "pooled difference scale averages {mean:.4}, expected 1.27 +/- 0.15"
    );
    println!("check 6 PASS: pooled difference scale averages {mean:.4} (target 1.27 +/- 0.15)");
}

#[test]
fn check_07_selection_hand_values() {
    // Penalty shape: 5K + 2K ln(n/K) at K = 7, n = 200.
    let pen = bm_penalty(7, 200);
    assert!((pen - 81.93).abs() < 5e-3, "penalty {pen}");

    // Step series y = [0,0,0,5,5,5] under unit variance: SSE(1) = 37.5,
    // SSE(2) = 0; the modified information criterion picks K = 2.
    let segs = vec![
        Segmentation::new(6, vec![], vec![2.5]).unwrap(),
        Segmentation::new(6, vec![3], vec![0.0, 5.0]).unwrap(),
        Segmentation::new(6, vec![1, 3], vec![0.0, 0.0, 5.0]).unwrap(),
    ];
    let (k_mbic, _) = mbic_select(&[37.5, 0.0, 0.0], &segs).unwrap();
    assert_eq!(k_mbic, 2);

    // A contrast curve with one sharp elbow.
    let costs = [100.0, 10.0, 9.5, 9.2, 9.0, 8.9];
    let (k_lav, _) = lavielle_select(&costs, &CriterionConfig::default()).unwrap();
    assert_eq!(k_lav, 2);

    println!(
        "check 7 PASS: penalty(7, 200) = {pen:.5}, step-series pick K = {k_mbic}, \
         elbow pick K = {k_lav}"
    );
}

#[test]
fn check_08_robust_scale_hand_values() {
    let c = qn_constant();
    assert!((c - 2.2191).abs() < 5e-4, "consistency constant {c}");

    // Hand-enumerable pairwise quartiles.
    assert_eq!(qn(&[5.0, 5.0, 5.0, 5.0]).unwrap(), 0.0);
    assert!((qn(&[0.0, 1.0]).unwrap() - c).abs() < 1e-15);
    // Differences {1, 2, 3}: quartile index ceil(3/4) = 1 selects 1.
    assert!((qn(&[0.0, 1.0, 3.0]).unwrap() - c).abs() < 1e-15);
    // Differences sorted {1, 1, 1, 2, 2, 3}: index ceil(6/4) = 2 selects 1.
    assert!((qn(&[0.0, 1.0, 2.0, 3.0]).unwrap() - c).abs() < 1e-15);

    println!("check 8 PASS: constant {c:.6} and pairwise quartiles match hand enumeration");
}

#[test]
fn check_09_asymptotic_variance_self_consistency() {
    let sigma = 1.0;
    let theory = asymptotic_variance(sigma, 1_000_000, 7).unwrap();

    let m = 5000;
    let reps = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(90210);
    let mut sum = 0.0;
    let mut sq = 0.0;
    for _ in 0..reps {
        let y: Vec<f64> = (0..=m)
            .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let dev = (m as f64).sqrt() * (scale_from_diffs(&diffs).unwrap() - sigma);
        sum += dev;
        sq += dev * dev;
    }
    let mean = sum / reps as f64;
    let empirical = sq / reps as f64 - mean * mean;
    let rel = (empirical - theory).abs() / theory;
    assert!(
        rel <= 0.15,
        "empirical {empirical:.4} vs theoretical {theory:.4}: off by {:.1}%",
        100.0 * rel
    );
    println!(
        "check 9 PASS: empirical variance {empirical:.4} within {:.1}% of theoretical {theory:.4}",
        100.0 * rel
    );
}

#[test]
fn check_10_full_grid_runtime() {
    let g = grids();
    let expected = 3 * g.sigma2_grid.len() * 100 * 5;
    assert_eq!(g.estimated.rows.len(), expected);
    assert!(
        g.grid_secs < 600.0,
        "full grid took {:.1}s, budget is 600s",
        g.grid_secs
    );
    println!(
        "check 10 PASS: full grid ({} rows) in {:.1}s",
        g.estimated.rows.len(),
        g.grid_secs
    );
}
