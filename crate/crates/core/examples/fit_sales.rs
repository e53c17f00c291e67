//! Fits the quadratic sales model to synthetic draws generated from the
//! Powerball model with 1% multiplicative noise.
//!
//! cargo run --example fit_sales

use quickpick::salesmodel::{fit_quadratic, r_squared, SalesModel, SalesRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quickpick::Result<()> {
    let truth = SalesModel::POWERBALL;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let records: Vec<SalesRecord> = (0..50)
        .map(|i| {
            let j = 40.0 + 1560.0 * i as f64 / 49.0;
            let noise = 1.0 + 0.01 * (rng.random::<f64>() * 2.0 - 1.0) * 3f64.sqrt();
            SalesRecord {
                jackpot_millions: j,
                tickets_sold: (truth.tickets_sold(j) * noise) as u64,
            }
        })
        .collect();

    let fit = fit_quadratic(&records)?;
    println!("true:   a={:.2} b={:.2} c={:.2}", truth.a, truth.b, truth.c);
    println!(
        "fitted: a={:.2} b={:.2} c={:.2}  R^2={:.6}",
        fit.a,
        fit.b,
        fit.c,
        r_squared(&fit, &records)
    );
    for j in [100.0, 775.0, 1500.0] {
        println!(
            "T({j}) true {:.0}, fitted {:.0}",
            truth.tickets_sold(j),
            fit.tickets_sold(j)
        );
    }
    Ok(())
}
