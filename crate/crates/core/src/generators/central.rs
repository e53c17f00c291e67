use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, CENTRAL_TAG};
use crate::bitset::BitSet;
use crate::ticketspace::Rank;

/// Central allocator that never repeats a rank until all `N` are issued.
///
/// Each request picks a uniform start position and returns the first
/// unissued rank at or after it (wrapping). Once the space is exhausted
/// further requests are uniform draws, so every later sale is a duplicate.
/// Requests from every store go through the same state, so issuance is
/// serialized by `&mut self`.
#[derive(Clone, Debug)]
pub struct CentralServerState {
    issued: BitSet,
    count_issued: u64,
    stores: usize,
    rng: ChaCha8Rng,
}

impl CentralServerState {
    pub fn new(space_size: u64, stores: usize, seed: u64) -> Self {
        Self {
            issued: BitSet::new(space_size),
            count_issued: 0,
            stores,
            rng: ChaCha8Rng::seed_from_u64(derive_seed(seed, CENTRAL_TAG)),
        }
    }

    pub fn stores(&self) -> usize {
        self.stores
    }

    pub fn space_size(&self) -> u64 {
        self.issued.universe()
    }

    /// Tickets handed out so far, duplicates included.
    pub fn count_issued(&self) -> u64 {
        self.count_issued
    }

    pub fn is_exhausted(&self) -> bool {
        self.issued.is_full()
    }

    pub(crate) fn issue(&mut self) -> Rank {
        let start = self.rng.random_range(0..self.space_size());
        self.count_issued += 1;
        match self.issued.next_clear_from(start) {
            Some(r) => {
                self.issued.insert(r);
                Rank(r)
            }
            None => Rank(start),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn duplicates_start_after_exhaustion() {
        let n = 37;
        let mut s = CentralServerState::new(n, 1, 4);
        let first: HashSet<Rank> = (0..n).map(|_| s.issue()).collect();
        assert_eq!(first.len() as u64, n);
        assert!(s.is_exhausted());
        let next = s.issue();
        assert!(first.contains(&next));
        assert_eq!(s.count_issued(), n + 1);
    }

    #[test]
    fn single_rank_space() {
        let mut s = CentralServerState::new(1, 3, 0);
        assert_eq!(s.issue(), Rank(0));
        assert_eq!(s.issue(), Rank(0));
    }
}
