//! Issues tickets from 6 stores under each strategy and counts duplicates.
//!
//! cargo run --example issuance_strategies

use quickpick::generators::{count_distinct, make_pairing_plan, GeneratorState, StoreId, Strategy};
use quickpick::Rank;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> quickpick::Result<()> {
    let (space, stores, seed) = (10_000u64, 6usize, 42);

    let plan = make_pairing_plan(stores, space, seed)?;
    println!("pairing plan for {stores} stores over {space} ranks:");
    for pair in 0..plan.pairs() {
        let region = plan.regions()[pair];
        let members = plan.members(pair);
        println!(
            "  pair {pair}: [{}, {}) ascending store {}, descending store {}",
            region.start, region.end, members[0], members[1]
        );
    }

    println!(
        "\nsales  {:>12} {:>12} {:>12}",
        "independent", "central", "pairing"
    );
    for sales in [1_000u64, 5_000, 10_000, 20_000] {
        let mut row = Vec::new();
        for strategy in Strategy::ALL {
            let mut gen = GeneratorState::new(strategy, space, stores, seed)?;
            let mut router = ChaCha8Rng::seed_from_u64(7);
            let issued: Vec<Rank> = (0..sales)
                .map(|_| gen.next_ticket(StoreId(router.random_range(0..stores))))
                .collect::<quickpick::Result<_>>()?;
            row.push(count_distinct(&issued));
        }
        println!("{sales:>5}  {:>12} {:>12} {:>12}", row[0], row[1], row[2]);
    }
    Ok(())
}
