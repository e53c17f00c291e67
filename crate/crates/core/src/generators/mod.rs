//! Ticket issuance strategies for `m` stores selling from a space of `N`
//! ranks.
//!
//! * [`IndependentState`]: every store draws uniformly with no memory.
//! * [`CentralServerState`]: a single allocator hands out each rank once
//!   until the space is exhausted.
//! * [`PairingState`]: stores are paired, each pair owns a disjoint region
//!   and sells it from both ends.
//!
//! All randomness derives from one `u64` seed; see [`derive_seed`].

mod central;
mod independent;
mod pairing;

use std::fmt;
use std::str::FromStr;

pub use central::CentralServerState;
pub use independent::IndependentState;
pub use pairing::{make_pairing_plan, Direction, PairingPlan, PairingState, Region};

use crate::error::{Error, Result};
use crate::ticketspace::Rank;

/// Index of a store in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StoreId(pub usize);

impl fmt::Display for StoreId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "store {}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Independent,
    Central,
    Pairing,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Independent, Strategy::Central, Strategy::Pairing];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Independent => "independent",
            Strategy::Central => "central",
            Strategy::Pairing => "pairing",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "independent" | "ir" => Ok(Strategy::Independent),
            "central" | "cs" => Ok(Strategy::Central),
            "pairing" | "dp" => Ok(Strategy::Pairing),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy {other:?} (expected independent, central or pairing)"
            ))),
        }
    }
}

/// SplitMix64 finalizer over `(seed, tag)`.
///
/// Sub-seeds used by the crate:
/// * simulation trial `t`: `derive_seed(seed, t)`;
/// * inside a generator, store `i` of the independent strategy uses ChaCha
///   stream `i` of its seed, the central server uses
///   `derive_seed(seed, CENTRAL_TAG)` and the pairing shuffle uses
///   `derive_seed(seed, PAIRING_TAG)`.
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) const CENTRAL_TAG: u64 = 0xC5;
pub(crate) const PAIRING_TAG: u64 = 0xD9;

/// Generator state for one of the three strategies.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum GeneratorState {
    Independent(IndependentState),
    Central(CentralServerState),
    Pairing(PairingState),
}

impl GeneratorState {
    pub fn new(strategy: Strategy, space_size: u64, stores: usize, seed: u64) -> Result<Self> {
        if space_size == 0 {
            return Err(Error::InvalidConfig("space size must be at least 1".into()));
        }
        if stores == 0 {
            return Err(Error::InvalidConfig("need at least one store".into()));
        }
        Ok(match strategy {
            Strategy::Independent => {
                GeneratorState::Independent(IndependentState::new(space_size, stores, seed))
            }
            Strategy::Central => {
                GeneratorState::Central(CentralServerState::new(space_size, stores, seed))
            }
            Strategy::Pairing => {
                let plan = make_pairing_plan(stores, space_size, seed)?;
                GeneratorState::Pairing(PairingState::new(plan))
            }
        })
    }

    pub fn strategy(&self) -> Strategy {
        match self {
            GeneratorState::Independent(_) => Strategy::Independent,
            GeneratorState::Central(_) => Strategy::Central,
            GeneratorState::Pairing(_) => Strategy::Pairing,
        }
    }

    pub fn stores(&self) -> usize {
        match self {
            GeneratorState::Independent(s) => s.stores(),
            GeneratorState::Central(s) => s.stores(),
            GeneratorState::Pairing(s) => s.stores(),
        }
    }

    pub fn space_size(&self) -> u64 {
        match self {
            GeneratorState::Independent(s) => s.space_size(),
            GeneratorState::Central(s) => s.space_size(),
            GeneratorState::Pairing(s) => s.space_size(),
        }
    }

    /// Issues the next ticket rank sold at `store`.
    pub fn next_ticket(&mut self, store: StoreId) -> Result<Rank> {
        let stores = self.stores();
        if store.0 >= stores {
            return Err(Error::UnknownStore {
                store: store.0,
                stores,
            });
        }
        Ok(match self {
            GeneratorState::Independent(s) => s.issue(store.0),
            GeneratorState::Central(s) => s.issue(),
            GeneratorState::Pairing(s) => s.issue(store.0),
        })
    }
}

/// Number of unique ranks in `issued`.
pub fn count_distinct(issued: &[Rank]) -> usize {
    let mut sorted = issued.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}
