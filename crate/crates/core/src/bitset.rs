/// Fixed-universe bit vector over `[0, len)`.
///
/// Used both as the central server's issued-rank registry and as the
/// per-trial distinct counter in simulations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
    len: u64,
    ones: u64,
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        let words = len.div_ceil(64) as usize;
        Self {
            words: vec![0; words],
            len,
            ones: 0,
        }
    }

    /// Size of the universe.
    pub fn universe(&self) -> u64 {
        self.len
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> u64 {
        self.ones
    }

    pub fn is_full(&self) -> bool {
        self.ones == self.len
    }

    pub fn contains(&self, index: u64) -> bool {
        debug_assert!(index < self.len);
        self.words[(index / 64) as usize] & (1 << (index % 64)) != 0
    }

    /// Sets `index`; returns `true` if it was previously clear.
    pub fn insert(&mut self, index: u64) -> bool {
        assert!(
            index < self.len,
            "bit {index} outside universe {}",
            self.len
        );
        let word = &mut self.words[(index / 64) as usize];
        let mask = 1 << (index % 64);
        if *word & mask == 0 {
            *word |= mask;
            self.ones += 1;
            true
        } else {
            false
        }
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.ones = 0;
    }

    /// First clear index `>= from`, wrapping around to 0. `None` when full.
    pub fn next_clear_from(&self, from: u64) -> Option<u64> {
        if self.is_full() {
            return None;
        }
        let from = from % self.len;
        self.scan_clear(from, self.len)
            .or_else(|| self.scan_clear(0, from))
    }

    fn scan_clear(&self, start: u64, end: u64) -> Option<u64> {
        if start >= end {
            return None;
        }
        let mut word_idx = (start / 64) as usize;
        // Treat bits below `start` in the first word as occupied.
        let mut word = self.words[word_idx] | ((1u64 << (start % 64)) - 1);
        loop {
            if word != u64::MAX {
                let bit = word_idx as u64 * 64 + u64::from(word.trailing_ones());
                return (bit < end).then_some(bit);
            }
            word_idx += 1;
            if word_idx as u64 * 64 >= end {
                return None;
            }
            word = self.words[word_idx];
        }
    }
}
