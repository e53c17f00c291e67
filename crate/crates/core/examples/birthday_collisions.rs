//! Compares the simulated first-collision point with sqrt(pi N / 2).
//!
//! cargo run --release --example birthday_collisions

use quickpick::analytics::first_collision_estimate;
use quickpick::simulate::simulate_first_collision;

fn main() -> quickpick::Result<()> {
    println!(
        "{:>12} {:>12} {:>12} {:>10}",
        "N", "simulated", "sqrt(piN/2)", "1.25sqrtN"
    );
    for n in [100u64, 10_000, 1_000_000, 100_000_000] {
        let trials = if n > 1_000_000 { 200 } else { 5_000 };
        let sim = simulate_first_collision(n, trials, 1)?;
        let est = first_collision_estimate(n);
        println!(
            "{n:>12} {:>8.1}±{:<3.1} {:>12.1} {:>10.1}",
            sim.mean, sim.std_error, est.asymptotic, est.rule_of_thumb
        );
    }
    let pb = first_collision_estimate(292_201_338);
    println!(
        "\npowerball: first duplicate expected after about {:.0} Quick Picks",
        pb.rule_of_thumb
    );
    Ok(())
}
