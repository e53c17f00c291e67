//! Ranks and unranks Powerball tickets, tracing how rank 100,000,000 is
//! peeled into its white balls.
//!
//! cargo run --example rank_unrank

use quickpick::{binom, rank, unrank, Rank, TicketSpaceConfig};

fn main() -> quickpick::Result<()> {
    let pb = TicketSpaceConfig::powerball();
    println!(
        "powerball: {} tickets, {} white combinations",
        pb.space_size(),
        pb.white_combinations()
    );

    for r in [0, 100_000_000, pb.space_size() - 1] {
        let t = unrank(Rank(r), &pb)?;
        println!("rank {r:>11} -> {t}   (rank back: {})", rank(&t, &pb)?);
    }

    let r = 100_000_000u64;
    let h = u64::from(pb.white_max());
    let mut n = r % pb.white_combinations();
    println!(
        "\nspecial ball = {} / {} + 1 = {}",
        r,
        pb.white_combinations(),
        r / pb.white_combinations() + 1
    );
    let mut low = 0;
    for remaining in (1..=u64::from(pb.white_count())).rev() {
        if remaining == 1 {
            println!(
                "last ball: low {low} + n {n} = {} (1-based {})",
                low + n,
                low + n + 1
            );
            break;
        }
        let mut i = 1;
        while n >= binom(h - low - i, remaining - 1)? {
            n -= binom(h - low - i, remaining - 1)?;
            i += 1;
        }
        println!(
            "skipped {:>2} blocks, ball {} (1-based {}), remaining rank {n}",
            i - 1,
            low + i - 1,
            low + i
        );
        low += i;
    }
    Ok(())
}
