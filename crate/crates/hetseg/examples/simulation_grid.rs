//! A reduced run of the benchmark grid: three noise ratios, twenty
//! replications, all three models, median errors per criterion. The full
//! grid lives behind `hetseg simulate`.
//!
//!     cargo run --release --example simulation_grid

use hetseg::sim::{run_grid, GridConfig, SimDesign};

fn main() -> hetseg::Result<()> {
    let mut design = SimDesign::defaults(200, 42)?;
    design.replications = 20;
    design.sigma2_grid = vec![0.1, 0.5, 1.5];

    let table = run_grid(&design, &GridConfig::default())?;
    for f in &table.failures {
        eprintln!("warning: {f}");
    }

    println!("sigma2  model          criterion  medKErr  medD1  medD2");
    for s in table.summaries() {
        println!(
            "{:>6}  {:<13}  {:<9}  {:>7}  {:>5}  {:>5}",
            s.sigma2, s.model, s.criterion, s.median_k_err, s.median_d1, s.median_d2
        );
    }
    Ok(())
}
