//! Ticket space of a pick-`s`-of-`h` plus one special ball game.
//!
//! Every ticket is put in bijection with an integer rank in `[0, N)` where
//! `N = C(white_max, white_count) * special_max`. The special ball selects a
//! block of `C(white_max, white_count)` consecutive ranks; within a block the
//! white balls are ordered lexicographically. Ranks are 0-based, ball values
//! are 1-based, and the conversion happens only in [`unrank`] and [`rank`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest `n` served from the precomputed Pascal table.
const PASCAL_ROWS: usize = 70;

fn pascal() -> &'static [[u128; PASCAL_ROWS + 1]; PASCAL_ROWS + 1] {
    static TABLE: OnceLock<Box<[[u128; PASCAL_ROWS + 1]; PASCAL_ROWS + 1]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u128; PASCAL_ROWS + 1]; PASCAL_ROWS + 1]);
        for n in 0..=PASCAL_ROWS {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
            }
        }
        t
    })
}

/// Exact binomial coefficient `C(n, k)`; 0 when `k > n`.
///
/// Fails instead of wrapping when the result does not fit in a `u64`.
pub fn binom(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    if n as usize <= PASCAL_ROWS {
        let value = pascal()[n as usize][k as usize];
        return u64::try_from(value).map_err(|_| Error::BinomialOverflow { n, k });
    }
    // acc = C(n - k + i, i) after step i, so every division is exact and the
    // partial values grow monotonically: any intermediate overflow implies the
    // final value overflows too.
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        acc = acc * (u128::from(n - k) + i) / i;
        if acc > u128::from(u64::MAX) {
            return Err(Error::BinomialOverflow { n, k });
        }
    }
    Ok(acc as u64)
}

/// Shape of a lottery game.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TicketSpaceConfig {
    white_max: u32,
    white_count: u32,
    special_max: u32,
    white_combinations: u64,
    size: u64,
}

impl TicketSpaceConfig {
    pub fn new(white_max: u32, white_count: u32, special_max: u32) -> Result<Self> {
        if white_count == 0 || white_count > white_max {
            return Err(Error::InvalidConfig(format!(
                "need 1 <= white_count <= white_max, got white_count={white_count}, white_max={white_max}"
            )));
        }
        if special_max == 0 {
            return Err(Error::InvalidConfig(
                "special_max must be at least 1".into(),
            ));
        }
        let white_combinations = binom(white_max.into(), white_count.into()).map_err(|_| {
            Error::InvalidConfig(format!(
                "C({white_max}, {white_count}) does not fit in 64 bits"
            ))
        })?;
        let size = white_combinations
            .checked_mul(special_max.into())
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "space size C({white_max}, {white_count}) * {special_max} does not fit in 64 bits"
                ))
            })?;
        Ok(Self {
            white_max,
            white_count,
            special_max,
            white_combinations,
            size,
        })
    }

    /// Powerball: five of 69 white balls plus one of 26 red balls.
    pub fn powerball() -> Self {
        Self::new(69, 5, 26).expect("powerball shape is valid")
    }

    /// Mega Millions under its 2017 matrix: five of 70 plus one of 25.
    ///
    /// The game's matrix has changed over time; build a custom config with
    /// [`TicketSpaceConfig::new`] for other rule sets.
    pub fn megamillions() -> Self {
        Self::new(70, 5, 25).expect("mega millions shape is valid")
    }

    pub fn white_max(&self) -> u32 {
        self.white_max
    }

    pub fn white_count(&self) -> u32 {
        self.white_count
    }

    pub fn special_max(&self) -> u32 {
        self.special_max
    }

    /// Number of distinct white-ball combinations, `C(white_max, white_count)`.
    pub fn white_combinations(&self) -> u64 {
        self.white_combinations
    }

    /// Total number of tickets `N`.
    pub fn space_size(&self) -> u64 {
        self.size
    }
}

/// Total number of distinct tickets in the game.
pub fn space_size(config: &TicketSpaceConfig) -> u64 {
    config.space_size()
}

/// Integer index of a ticket, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank(pub u64);

impl Rank {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for Rank {
    fn from(v: u64) -> Self {
        Rank(v)
    }
}

/// A drawn combination: strictly increasing 1-based white balls plus one
/// 1-based special ball.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ticket {
    pub whites: Vec<u32>,
    pub special: u32,
}

impl Ticket {
    pub fn new(whites: Vec<u32>, special: u32) -> Self {
        Self { whites, special }
    }

    pub fn validate(&self, config: &TicketSpaceConfig) -> Result<()> {
        if self.whites.len() != config.white_count as usize {
            return Err(Error::InvalidTicket(format!(
                "expected {} white balls, got {}",
                config.white_count,
                self.whites.len()
            )));
        }
        if let Some(&w) = self
            .whites
            .iter()
            .find(|&&w| w == 0 || w > config.white_max)
        {
            return Err(Error::InvalidTicket(format!(
                "white ball {w} outside 1..={}",
                config.white_max
            )));
        }
        if self.whites.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::InvalidTicket(
                "white balls must be strictly increasing".into(),
            ));
        }
        if self.special == 0 || self.special > config.special_max {
            return Err(Error::InvalidTicket(format!(
                "special ball {} outside 1..={}",
                self.special, config.special_max
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Ticket {
    /// `25,33,47,51,59 pb 9`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.whites.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, " pb {}", self.special)
    }
}

impl FromStr for Ticket {
    type Err = Error;

    /// Accepts `1,2,3,4,5 pb 1`; the `pb` separator may also be `;` or `+`.
    fn from_str(s: &str) -> Result<Self> {
        let malformed = || {
            Error::InvalidTicket(format!(
                "cannot parse {s:?}; expected e.g. \"1,2,3,4,5 pb 1\""
            ))
        };
        let (whites, special) = ["pb", ";", "+"]
            .iter()
            .find_map(|sep| s.split_once(sep))
            .ok_or_else(malformed)?;
        let whites = whites
            .split(',')
            .map(|w| w.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| malformed())?;
        let special = special.trim().parse::<u32>().map_err(|_| malformed())?;
        Ok(Ticket { whites, special })
    }
}

/// Converts a rank into its ticket.
///
/// The special ball is `r / C(h, s) + 1`; the white balls come from the
/// remainder by peeling off, for each position, the blocks of combinations
/// that start with a smaller value.
pub fn unrank(r: Rank, config: &TicketSpaceConfig) -> Result<Ticket> {
    if r.0 >= config.size {
        return Err(Error::RankOutOfRange {
            rank: r.0,
            size: config.size,
        });
    }
    let h = u64::from(config.white_max);
    let special = (r.0 / config.white_combinations) as u32 + 1;
    let mut n = r.0 % config.white_combinations;

    let mut whites = Vec::with_capacity(config.white_count as usize);
    let mut low = 0u64;
    for remaining in (1..=u64::from(config.white_count)).rev() {
        if remaining == 1 {
            whites.push((low + n + 1) as u32);
            break;
        }
        let mut i = 1;
        loop {
            let block = binom(h - low - i, remaining - 1)?;
            if n < block {
                break;
            }
            n -= block;
            i += 1;
        }
        whites.push((low + i) as u32);
        low += i;
    }
    Ok(Ticket { whites, special })
}

/// Converts a ticket into its rank; the exact inverse of [`unrank`].
pub fn rank(t: &Ticket, config: &TicketSpaceConfig) -> Result<Rank> {
    t.validate(config)?;
    let h = u64::from(config.white_max);
    let s = u64::from(config.white_count);
    let mut within = 0u64;
    let mut low = 0u64;
    for (pos, &w) in t.whites.iter().enumerate() {
        let zero_based = u64::from(w) - 1;
        let remaining = s - pos as u64;
        for v in low..zero_based {
            within += binom(h - v - 1, remaining - 1)?;
        }
        low = zero_based + 1;
    }
    Ok(Rank(
        u64::from(t.special - 1) * config.white_combinations + within,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// Pascal's rule over u128, independent of the table and the
    /// multiplicative path.
    fn pascal_oracle(n: u64, k: u64) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for j in 1..row.len() {
                next[j] = row[j - 1] + row[j];
            }
            row = next;
        }
        row.get(k as usize).copied().unwrap_or(0)
    }

    #[test]
    fn binom_matches_pascal_oracle() {
        assert_eq!(pascal_oracle(68, 4), 814_385);
        assert_eq!(binom(68, 4).unwrap(), 814_385);
        for n in 0..=120u64 {
            for k in 0..=n + 1 {
                let oracle = pascal_oracle(n, k);
                match binom(n, k) {
                    Ok(v) => assert_eq!(u128::from(v), oracle, "C({n},{k})"),
                    Err(_) => assert!(oracle > u128::from(u64::MAX), "C({n},{k}) fits"),
                }
            }
        }
    }

    #[test]
    fn binom_edge_cases() {
        assert_eq!(binom(0, 0).unwrap(), 1);
        assert_eq!(binom(1_000_000, 0).unwrap(), 1);
        assert_eq!(binom(5, 6).unwrap(), 0);
        assert_eq!(binom(69, 5).unwrap(), 11_238_513);
        assert_eq!(binom(1_000_000, 1).unwrap(), 1_000_000);
        assert!(matches!(
            binom(200, 100),
            Err(Error::BinomialOverflow { .. })
        ));
        // C(70, 35) ~ 1.1e20 sits in the table but not in u64.
        assert!(binom(70, 35).is_err());
        assert_eq!(binom(67, 33).unwrap(), 14_226_520_737_620_288_370);
    }

    #[test]
    fn space_sizes() {
        assert_eq!(TicketSpaceConfig::powerball().space_size(), 292_201_338);
        assert_eq!(
            TicketSpaceConfig::new(69, 5, 1).unwrap().space_size(),
            11_238_513
        );
        assert_eq!(TicketSpaceConfig::new(1, 1, 1).unwrap().space_size(), 1);
        assert_eq!(TicketSpaceConfig::megamillions().space_size(), 302_575_350);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(TicketSpaceConfig::new(5, 0, 1).is_err());
        assert!(TicketSpaceConfig::new(5, 6, 1).is_err());
        assert!(TicketSpaceConfig::new(5, 2, 0).is_err());
        assert!(TicketSpaceConfig::new(200, 100, 1).is_err());
        assert!(TicketSpaceConfig::new(67, 33, 2).is_err());
    }

    #[test]
    fn worked_example_anchors() {
        let pb = TicketSpaceConfig::powerball();
        let cases = [
            (0, Ticket::new(vec![1, 2, 3, 4, 5], 1)),
            (292_201_337, Ticket::new(vec![65, 66, 67, 68, 69], 26)),
            (100_000_000, Ticket::new(vec![25, 33, 47, 51, 59], 9)),
        ];
        for (r, ticket) in cases {
            assert_eq!(unrank(Rank(r), &pb).unwrap(), ticket);
            assert_eq!(rank(&ticket, &pb).unwrap(), Rank(r));
        }
    }

    #[test]
    fn unrank_out_of_range() {
        let pb = TicketSpaceConfig::powerball();
        assert_eq!(
            unrank(Rank(292_201_338), &pb),
            Err(Error::RankOutOfRange {
                rank: 292_201_338,
                size: 292_201_338
            })
        );
    }

    #[test]
    fn rank_rejects_invalid_tickets() {
        let pb = TicketSpaceConfig::powerball();
        for t in [
            Ticket::new(vec![1, 2, 3, 4], 1),
            Ticket::new(vec![0, 2, 3, 4, 5], 1),
            Ticket::new(vec![1, 2, 3, 4, 70], 1),
            Ticket::new(vec![1, 3, 2, 4, 5], 1),
            Ticket::new(vec![1, 2, 2, 4, 5], 1),
            Ticket::new(vec![1, 2, 3, 4, 5], 0),
            Ticket::new(vec![1, 2, 3, 4, 5], 27),
        ] {
            assert!(
                matches!(rank(&t, &pb), Err(Error::InvalidTicket(_))),
                "{t:?}"
            );
        }
    }

    #[test]
    fn ticket_text_roundtrip() {
        let t: Ticket = "25,33,47,51,59 pb 9".parse().unwrap();
        assert_eq!(t, Ticket::new(vec![25, 33, 47, 51, 59], 9));
        assert_eq!(t.to_string(), "25,33,47,51,59 pb 9");
        assert_eq!("1, 2,3,4,5;7".parse::<Ticket>().unwrap().special, 7);
        assert!("1,2,3,4,5".parse::<Ticket>().is_err());
        assert!("1,x,3 pb 2".parse::<Ticket>().is_err());
    }

    #[test]
    fn exhaustive_small_spaces() {
        for (h, s, sp) in [(10, 3, 4), (12, 5, 2), (7, 7, 3), (12, 1, 5), (9, 4, 1)] {
            let cfg = TicketSpaceConfig::new(h, s, sp).unwrap();
            let n = cfg.space_size();
            let mut seen = HashSet::new();
            let mut prev: Option<Ticket> = None;
            for r in 0..n {
                let t = unrank(Rank(r), &cfg).unwrap();
                t.validate(&cfg).unwrap();
                assert_eq!(rank(&t, &cfg).unwrap(), Rank(r));
                if let Some(p) = &prev {
                    // (special, whites) lexicographic order follows rank order.
                    assert!((p.special, &p.whites) < (t.special, &t.whites));
                }
                seen.insert(t.clone());
                prev = Some(t);
            }
            assert_eq!(seen.len() as u64, n);
        }
    }

    #[test]
    fn small_config_size_480() {
        assert_eq!(TicketSpaceConfig::new(10, 3, 4).unwrap().space_size(), 480);
    }

    proptest! {
        #[test]
        fn powerball_bijection(r in 0u64..292_201_338) {
            let pb = TicketSpaceConfig::powerball();
            let t = unrank(Rank(r), &pb).unwrap();
            prop_assert!(t.validate(&pb).is_ok());
            prop_assert_eq!(rank(&t, &pb).unwrap(), Rank(r));
        }

        #[test]
        fn unrank_is_monotone(a in 0u64..292_201_338, b in 0u64..292_201_338) {
            let pb = TicketSpaceConfig::powerball();
            let ta = unrank(Rank(a), &pb).unwrap();
            let tb = unrank(Rank(b), &pb).unwrap();
            prop_assert_eq!(a.cmp(&b), (ta.special, &ta.whites).cmp(&(tb.special, &tb.whites)));
        }
    }
}
