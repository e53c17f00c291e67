//! Closed-form per-ticket expected value of the three strategies, checked
//! against simulation.
//!
//! cargo run --release --example expected_value

use quickpick::analytics::{self, ev_cs, ev_dp_two_bins, ev_ir};
use quickpick::simulate::{run_sim, SimConfig};
use quickpick::Strategy;

fn main() -> quickpick::Result<()> {
    let n = 100_000u64;
    let pool = 1_000_000.0;
    println!("N = {n}, pool = ${pool}");
    println!("{:>8} {:>10} {:>10} {:>10}", "k", "IR", "DP(2 bins)", "CS");
    for k in [1u64, 25_000, 50_000, 100_000, 150_000, 200_000, 300_000] {
        println!(
            "{k:>8} {:>10.4} {:>10.4} {:>10.4}",
            ev_ir(k as f64, n, pool)?,
            ev_dp_two_bins(k, n, pool)?,
            ev_cs(k as f64, n, pool)?
        );
    }

    // Two pairs (four stores) is the configuration the two-bin form models.
    let grid = vec![50_000, 100_000, 150_000];
    for (strategy, stores) in [(Strategy::Independent, 4), (Strategy::Pairing, 4)] {
        let sim = run_sim(&SimConfig {
            space_size: n,
            stores,
            strategy,
            k_grid: grid.clone(),
            trials: 300,
            seed: 3,
        })?;
        for p in &sim.points {
            let closed = match strategy {
                Strategy::Independent => analytics::expected_distinct_ir(p.k as f64, n),
                _ => analytics::expected_distinct_dp_two_bins(p.k, n)?,
            };
            println!(
                "{strategy:>11} k={:>6}: simulated {:>10.1} ± {:<6.1} closed form {closed:>10.1}",
                p.k, p.mean_distinct, p.std_error
            );
        }
    }
    Ok(())
}
