//! The scale estimator's large-sample behavior: its influence function,
//! the Monte Carlo asymptotic variance under lag-one differencing, and an
//! empirical check at a finite sample size.
//!
//!     cargo run --release --example estimator_asymptotics

use hetseg::gauss::qn_constant;
use hetseg::robust::{asymptotic_variance, influence_function, scale_from_diffs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> hetseg::Result<()> {
    println!("consistency constant c = {:.12}", qn_constant());
    println!("\n   x      IF(x)");
    for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
        println!("{x:>4.1}  {:>9.5}", influence_function(x));
    }

    let sigma = 1.0;
    let theory = asymptotic_variance(sigma, 200_000, 1)?;
    println!("\nasymptotic Var(sqrt(m) (estimate - sigma)) ~ {theory:.4}");

    // Empirical check: scale from differences of an i.i.d. normal series.
    let m = 3000;
    let reps = 400;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut sq = 0.0;
    let mut sum = 0.0;
    for _ in 0..reps {
        let y: Vec<f64> = (0..=m)
            .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let diffs: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
        let dev = (m as f64).sqrt() * (scale_from_diffs(&diffs)? - sigma);
        sum += dev;
        sq += dev * dev;
    }
    let mean = sum / reps as f64;
    let var = sq / reps as f64 - mean * mean;
    println!("empirical at m = {m} over {reps} replications: {var:.4}");
    Ok(())
}
