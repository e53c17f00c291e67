//! Expected value of a $2 Powerball ticket as the jackpot grows, with
//! break-even jackpots and the best jackpot to buy at.
//!
//! cargo run --example when_to_buy

use quickpick::salesmodel::{argmax_ev, breakeven_roots, ev_at_jackpot, SalesModel, Scheme};
use quickpick::TicketSpaceConfig;

fn main() -> quickpick::Result<()> {
    let model = SalesModel::POWERBALL;
    let n = TicketSpaceConfig::powerball().space_size();

    println!(
        "{:>8} {:>14} {:>8} {:>8}",
        "jackpot", "tickets", "EV(IR)", "EV(CS)"
    );
    for j in (200..=2400).step_by(200) {
        let j = j as f64;
        println!(
            "{j:>7}M {:>14.0} {:>8.3} {:>8.3}",
            model.tickets_sold(j),
            ev_at_jackpot(&model, j, Scheme::IndependentRandom, n)?,
            ev_at_jackpot(&model, j, Scheme::CentralServer, n)?
        );
    }

    for scheme in [Scheme::IndependentRandom, Scheme::CentralServer] {
        let (lo, hi) = breakeven_roots(&model, scheme, n, 2.0)?;
        let (j, ev) = argmax_ev(&model, scheme, n)?;
        println!(
            "{}: positive return between ${lo:.1}M and ${hi:.1}M, best at ${j:.1}M (EV ${ev:.3})",
            scheme.name()
        );
    }
    Ok(())
}
