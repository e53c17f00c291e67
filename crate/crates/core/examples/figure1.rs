//! Pool fraction claimed versus tickets sold for each strategy, written as
//! CSV (default `figure1.csv`). Also sweeps the pairing strategy over more
//! stores to show it staying between the independent and central curves.
//!
//! cargo run --release --example figure1 -- [out.csv]

use std::fs::File;
use std::io::{BufWriter, Write};

use quickpick::cli::simulation_csv;
use quickpick::simulate::{figure1_curves, linear_grid, run_sim, SimConfig};
use quickpick::Strategy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "figure1.csv".into());
    let n = 100_000;
    let curves = figure1_curves(n, 2, 3 * n, 60, 200, 1)?;
    let mut out = BufWriter::new(File::create(&path)?);
    out.write_all(simulation_csv(&curves).as_bytes())?;
    println!("wrote {path}");

    for stores in [4, 20, 200] {
        let sim = run_sim(&SimConfig {
            space_size: n,
            stores,
            strategy: Strategy::Pairing,
            k_grid: linear_grid(2 * n, 4),
            trials: 50,
            seed: 1,
        })?;
        let fractions: Vec<String> = sim
            .points
            .iter()
            .map(|p| format!("{:.4}", p.pool_fraction))
            .collect();
        println!(
            "pairing, {stores:>3} stores: pool fraction at k = 0, N/2, N, 3N/2, 2N: {}",
            fractions.join(" ")
        );
    }
    Ok(())
}
