//! Lottery ticket-space combinatorics and collision-aware ticket issuance.
//!
//! The crate is organised around a handful of modules:
//!
//! * [`ticketspace`] ranks and unranks tickets against a game's shape.
//! * [`generators`] issues ticket ranks from `m` stores using independent
//!   draws, a central allocator, or deterministic pairing.
//! * [`analytics`] holds the closed-form expected values per strategy.
//! * [`salesmodel`] maps jackpot size to ticket sales and finds break-even
//!   jackpots.
//! * [`simulate`] runs seeded Monte Carlo trials over the generators.
//! * [`cli`] backs the `quickpick` binary.
//!
//! Runnable walkthroughs of each capability live in the crate's `examples/`
//! directory (`cargo run --release --example <name>`).

pub mod analytics;
mod bitset;
pub mod cli;
mod error;
pub mod generators;
pub mod salesmodel;
pub mod simulate;
pub mod ticketspace;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use generators::{GeneratorState, StoreId, Strategy};
pub use salesmodel::{SalesModel, SalesRecord, Scheme};
pub use simulate::{SimConfig, SimResult};
pub use ticketspace::{binom, rank, space_size, unrank, Rank, Ticket, TicketSpaceConfig};
