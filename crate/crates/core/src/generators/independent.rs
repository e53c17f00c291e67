use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ticketspace::Rank;

/// Memoryless uniform draws, one independent ChaCha stream per store.
#[derive(Clone, Debug)]
pub struct IndependentState {
    space_size: u64,
    rngs: Vec<ChaCha8Rng>,
}

impl IndependentState {
    pub fn new(space_size: u64, stores: usize, seed: u64) -> Self {
        let rngs = (0..stores)
            .map(|store| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(store as u64);
                rng
            })
            .collect();
        Self { space_size, rngs }
    }

    pub fn stores(&self) -> usize {
        self.rngs.len()
    }

    pub fn space_size(&self) -> u64 {
        self.space_size
    }

    pub(crate) fn issue(&mut self, store: usize) -> Rank {
        Rank(self.rngs[store].random_range(0..self.space_size))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stores_draw_different_streams() {
        let mut s = IndependentState::new(1 << 40, 2, 9);
        let a: Vec<Rank> = (0..8).map(|_| s.issue(0)).collect();
        let b: Vec<Rank> = (0..8).map(|_| s.issue(1)).collect();
        assert_ne!(a, b);
    }

    #[test]
    fn draws_cover_small_space_uniformly() {
        let mut s = IndependentState::new(4, 1, 3);
        let mut counts = [0u32; 4];
        for _ in 0..40_000 {
            counts[s.issue(0).0 as usize] += 1;
        }
        // Each bucket expects 10,000 with sd ~87.
        assert!(
            counts.iter().all(|&c| (9_600..=10_400).contains(&c)),
            "{counts:?}"
        );
    }
}
