use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{derive_seed, PAIRING_TAG};
use crate::error::{Error, Result};
use crate::ticketspace::Rank;

/// Half-open rank interval `[start, end)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    pub start: u64,
    pub end: u64,
}

impl Region {
    pub fn len(&self) -> u64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, r: u64) -> bool {
        (self.start..self.end).contains(&r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Static partner and region assignment for `m` stores.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingPlan {
    space_size: u64,
    regions: Vec<Region>,
    /// Indexed by store: (pair index, direction).
    assignment: Vec<(usize, Direction)>,
}

impl PairingPlan {
    pub fn pairs(&self) -> usize {
        self.regions.len()
    }

    pub fn stores(&self) -> usize {
        self.assignment.len()
    }

    pub fn space_size(&self) -> u64 {
        self.space_size
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn assignment(&self, store: usize) -> Option<(usize, Direction)> {
        self.assignment.get(store).copied()
    }

    pub fn region_of(&self, store: usize) -> Option<Region> {
        self.assignment(store).map(|(pair, _)| self.regions[pair])
    }

    /// Stores assigned to `pair`, ascending member first.
    pub fn members(&self, pair: usize) -> Vec<usize> {
        let mut members: Vec<(Direction, usize)> = self
            .assignment
            .iter()
            .enumerate()
            .filter(|(_, (p, _))| *p == pair)
            .map(|(store, (_, dir))| (*dir, store))
            .collect();
        members.sort_by_key(|(dir, _)| *dir == Direction::Descending);
        members.into_iter().map(|(_, s)| s).collect()
    }
}

/// Pairs `m` stores into `ceil(m/2)` pairs and splits `[0, N)` into that
/// many contiguous regions whose sizes differ by at most one.
///
/// The seed shuffles which stores become partners. Within a pair the lower
/// store id sells ascending from the region's front and the other sells
/// descending from its back. With odd `m` the last store in the shuffled
/// order is unpaired and sells its region ascending only.
pub fn make_pairing_plan(stores: usize, space_size: u64, seed: u64) -> Result<PairingPlan> {
    if stores == 0 {
        return Err(Error::InvalidConfig("need at least one store".into()));
    }
    if space_size == 0 {
        return Err(Error::InvalidConfig("space size must be at least 1".into()));
    }
    let pairs = stores.div_ceil(2);
    if pairs as u64 > space_size {
        return Err(Error::InvalidConfig(format!(
            "{pairs} pairs cannot each own a non-empty region of a {space_size}-rank space"
        )));
    }

    let boundary = |i: usize| (u128::from(space_size) * i as u128 / pairs as u128) as u64;
    let regions = (0..pairs)
        .map(|i| Region {
            start: boundary(i),
            end: boundary(i + 1),
        })
        .collect();

    let mut order: Vec<usize> = (0..stores).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(derive_seed(
        seed,
        PAIRING_TAG,
    )));

    let mut assignment = vec![(0, Direction::Ascending); stores];
    for (pair, chunk) in order.chunks(2).enumerate() {
        match *chunk {
            [a, b] => {
                let (lo, hi) = (a.min(b), a.max(b));
                assignment[lo] = (pair, Direction::Ascending);
                assignment[hi] = (pair, Direction::Descending);
            }
            [lone] => assignment[lone] = (pair, Direction::Ascending),
            _ => unreachable!(),
        }
    }

    Ok(PairingPlan {
        space_size,
        regions,
        assignment,
    })
}

/// Both ends of one pair's region. `front` is the next ascending rank and
/// `back` is one past the next descending rank; the region is used up when
/// they meet.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PairCursor {
    region: Region,
    front: u64,
    back: u64,
    recycled: u64,
}

impl PairCursor {
    fn new(region: Region) -> Self {
        Self {
            region,
            front: region.start,
            back: region.end,
            recycled: 0,
        }
    }

    fn take(&mut self, direction: Direction) -> u64 {
        if self.front == self.back {
            // Region used up: both cursors start over and duplicates begin.
            self.front = self.region.start;
            self.back = self.region.end;
            self.recycled += 1;
        }
        match direction {
            Direction::Ascending => {
                self.front += 1;
                self.front - 1
            }
            Direction::Descending => {
                self.back -= 1;
                self.back
            }
        }
    }
}

/// Live cursors for a [`PairingPlan`].
#[derive(Clone, Debug)]
pub struct PairingState {
    plan: PairingPlan,
    cursors: Vec<PairCursor>,
}

impl PairingState {
    pub fn new(plan: PairingPlan) -> Self {
        let cursors = plan.regions.iter().copied().map(PairCursor::new).collect();
        Self { plan, cursors }
    }

    pub fn plan(&self) -> &PairingPlan {
        &self.plan
    }

    pub fn stores(&self) -> usize {
        self.plan.stores()
    }

    pub fn space_size(&self) -> u64 {
        self.plan.space_size
    }

    /// How many times `pair` has used up its region and started over.
    pub fn times_recycled(&self, pair: usize) -> u64 {
        self.cursors[pair].recycled
    }

    pub(crate) fn issue(&mut self, store: usize) -> Rank {
        let (pair, direction) = self.plan.assignment[store];
        Rank(self.cursors[pair].take(direction))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn two_stores_share_whole_space() {
        let plan = make_pairing_plan(2, 100_000, 17).unwrap();
        assert_eq!(
            plan.regions(),
            &[Region {
                start: 0,
                end: 100_000
            }]
        );
        assert_eq!(plan.assignment(0), Some((0, Direction::Ascending)));
        assert_eq!(plan.assignment(1), Some((0, Direction::Descending)));
        let mut st = PairingState::new(plan);
        assert_eq!(st.issue(0), Rank(0));
        assert_eq!(st.issue(1), Rank(99_999));
    }

    #[test]
    fn single_store_ascends() {
        let plan = make_pairing_plan(1, 10, 0).unwrap();
        assert_eq!(plan.regions(), &[Region { start: 0, end: 10 }]);
        let mut st = PairingState::new(plan);
        let ranks: Vec<u64> = (0..12).map(|_| st.issue(0).0).collect();
        assert_eq!(ranks, vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0, 1]);
        assert_eq!(st.times_recycled(0), 1);
    }

    #[test]
    fn four_stores_split_evenly() {
        let plan = make_pairing_plan(4, 10, 3).unwrap();
        assert_eq!(
            plan.regions(),
            &[Region { start: 0, end: 5 }, Region { start: 5, end: 10 }]
        );
        for pair in 0..2 {
            let members = plan.members(pair);
            assert_eq!(members.len(), 2);
            assert_eq!(plan.assignment(members[0]).unwrap().1, Direction::Ascending);
            assert_eq!(
                plan.assignment(members[1]).unwrap().1,
                Direction::Descending
            );
        }
    }

    #[test]
    fn alternating_requests_meet_in_the_middle() {
        let mut st = PairingState::new(make_pairing_plan(2, 6, 0).unwrap());
        let ranks: Vec<u64> = (0..6).map(|i| st.issue(i % 2).0).collect();
        assert_eq!(ranks, vec![0, 5, 1, 4, 2, 3]);
        // Seventh request recycles the region.
        assert_eq!(st.issue(0), Rank(0));
    }

    #[test]
    fn too_many_pairs_rejected() {
        assert!(make_pairing_plan(7, 3, 0).is_err());
        assert!(make_pairing_plan(6, 3, 0).is_ok());
        assert!(make_pairing_plan(0, 3, 0).is_err());
    }

    #[test]
    fn plan_is_seed_deterministic() {
        assert_eq!(
            make_pairing_plan(9, 1000, 5).unwrap(),
            make_pairing_plan(9, 1000, 5).unwrap()
        );
    }

    proptest! {
        #[test]
        fn plan_invariants(m in 1usize..40, n in 1u64..5000, seed in any::<u64>()) {
            prop_assume!(m.div_ceil(2) as u64 <= n);
            let plan = make_pairing_plan(m, n, seed).unwrap();
            prop_assert_eq!(plan.pairs(), m.div_ceil(2));
            let regions = plan.regions();
            prop_assert_eq!(regions[0].start, 0);
            prop_assert_eq!(regions.last().unwrap().end, n);
            for w in regions.windows(2) {
                prop_assert_eq!(w[0].end, w[1].start);
            }
            let min = regions.iter().map(Region::len).min().unwrap();
            let max = regions.iter().map(Region::len).max().unwrap();
            prop_assert!(max - min <= 1 && min >= 1);
            for pair in 0..plan.pairs() {
                let members = plan.members(pair);
                let dirs: Vec<Direction> = members.iter().map(|&s| plan.assignment(s).unwrap().1).collect();
                match dirs.len() {
                    2 => prop_assert_eq!(dirs, vec![Direction::Ascending, Direction::Descending]),
                    1 => prop_assert!(m % 2 == 1 && dirs[0] == Direction::Ascending),
                    _ => prop_assert!(false, "pair {} has {} members", pair, dirs.len()),
                }
            }
        }

        #[test]
        fn pair_is_collision_free_until_exhausted(
            m in 1usize..12,
            n in 1u64..400,
            seed in any::<u64>(),
            routes in prop::collection::vec(0usize..1000, 1..1500),
        ) {
            prop_assume!(m.div_ceil(2) as u64 <= n);
            let mut st = PairingState::new(make_pairing_plan(m, n, seed).unwrap());
            let pairs = st.plan().pairs();
            let mut seen: Vec<HashSet<u64>> = vec![HashSet::new(); pairs];
            for r in routes {
                let store = r % m;
                let (pair, _) = st.plan().assignment(store).unwrap();
                let region = st.plan().regions()[pair];
                let rank = st.issue(store).0;
                prop_assert!(region.contains(rank));
                if seen[pair].len() as u64 == region.len() {
                    seen[pair].clear();
                }
                prop_assert!(seen[pair].insert(rank), "rank {} repeated before region exhausted", rank);
            }
        }
    }
}
