//! Monte Carlo engine over the ticket generators.
//!
//! Each trial builds a fresh generator seeded with `derive_seed(seed, trial)`,
//! routes every sale to a uniformly random store and records how many
//! distinct ranks have been sold at each requested sale count. Trials run in
//! parallel but are aggregated in trial order, so results are bit-identical
//! across thread counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::generators::{derive_seed, GeneratorState, StoreId, Strategy};

/// Largest ticket space the simulator accepts (one bit per rank per trial).
pub const MAX_SIM_SPACE: u64 = 1 << 32;

const ROUTER_TAG: u64 = 0x2077;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimConfig {
    pub space_size: u64,
    pub stores: usize,
    pub strategy: Strategy,
    /// Sale counts at which to record the distinct count.
    pub k_grid: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.space_size == 0 || self.space_size > MAX_SIM_SPACE {
            return Err(Error::InvalidConfig(format!(
                "simulated space size must be in 1..={MAX_SIM_SPACE}, got {}",
                self.space_size
            )));
        }
        if self.stores == 0 {
            return Err(Error::InvalidConfig("need at least one store".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("need at least one trial".into()));
        }
        Ok(())
    }
}

/// Aggregate over trials at one sale count.
#[derive(Clone, Debug, PartialEq)]
pub struct SimPoint {
    pub k: u64,
    pub mean_distinct: f64,
    /// Standard error of `mean_distinct`.
    pub std_error: f64,
    /// `mean_distinct / N`.
    pub pool_fraction: f64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimResult {
    pub strategy: Strategy,
    pub space_size: u64,
    pub stores: usize,
    /// One entry per `k_grid` value, in the order given.
    pub points: Vec<SimPoint>,
}

impl SimResult {
    pub fn point(&self, k: u64) -> Option<&SimPoint> {
        self.points.iter().find(|p| p.k == k)
    }
}

/// Distinct counts of a single trial at each `k_grid` entry.
pub fn run_trial(config: &SimConfig, trial: u64) -> Result<Vec<u64>> {
    config.validate()?;
    let trial_seed = derive_seed(config.seed, trial);
    let mut gen = GeneratorState::new(
        config.strategy,
        config.space_size,
        config.stores,
        trial_seed,
    )?;
    let mut router = ChaCha8Rng::seed_from_u64(derive_seed(trial_seed, ROUTER_TAG));
    let mut sold = BitSet::new(config.space_size);

    let mut order: Vec<usize> = (0..config.k_grid.len()).collect();
    order.sort_by_key(|&i| config.k_grid[i]);

    let mut counts = vec![0; config.k_grid.len()];
    let mut issued = 0u64;
    for i in order {
        let target = config.k_grid[i];
        while issued < target {
            let store = StoreId(router.random_range(0..config.stores));
            sold.insert(gen.next_ticket(store)?.0);
            issued += 1;
        }
        counts[i] = sold.count_ones();
    }
    Ok(counts)
}

pub fn run_sim(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let per_trial = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, t))
        .collect::<Result<Vec<_>>>()?;

    let points = config
        .k_grid
        .iter()
        .enumerate()
        .map(|(g, &k)| {
            let samples = per_trial.iter().map(|counts| counts[g] as f64);
            let est = Estimate::from_samples(samples);
            SimPoint {
                k,
                mean_distinct: est.mean,
                std_error: est.std_error,
                pool_fraction: est.mean / config.space_size as f64,
                trials: config.trials,
            }
        })
        .collect();

    Ok(SimResult {
        strategy: config.strategy,
        space_size: config.space_size,
        stores: config.stores,
        points,
    })
}

/// `steps + 1` evenly spaced sale counts from 0 to `k_max`.
pub fn linear_grid(k_max: u64, steps: u64) -> Vec<u64> {
    let steps = steps.max(1);
    let mut grid: Vec<u64> = (0..=steps)
        .map(|i| (u128::from(k_max) * u128::from(i) / u128::from(steps)) as u64)
        .collect();
    grid.dedup();
    grid
}

/// Pool-fraction curves for all three strategies on a common grid.
pub fn figure1_curves(
    space_size: u64,
    stores: usize,
    k_max: u64,
    steps: u64,
    trials: usize,
    seed: u64,
) -> Result<Vec<SimResult>> {
    if steps == 0 || k_max < steps {
        return Err(Error::InvalidConfig(format!(
            "need k_max >= steps >= 1, got k_max={k_max}, steps={steps}"
        )));
    }
    let k_grid = linear_grid(k_max, steps);
    Strategy::ALL
        .iter()
        .map(|&strategy| {
            run_sim(&SimConfig {
                space_size,
                stores,
                strategy,
                k_grid: k_grid.clone(),
                trials,
                seed,
            })
        })
        .collect()
}

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn from_samples(samples: impl IntoIterator<Item = f64>) -> Self {
        // Welford, in iteration order.
        let (mut n, mut mean, mut m2) = (0u64, 0.0, 0.0);
        for x in samples {
            n += 1;
            let delta = x - mean;
            mean += delta / n as f64;
            m2 += delta * (x - mean);
        }
        let std_error = if n > 1 {
            (m2 / (n - 1) as f64 / n as f64).sqrt()
        } else {
            0.0
        };
        Estimate { mean, std_error }
    }

    /// Whether `value` lies within `z` standard errors of the mean.
    pub fn covers(&self, value: f64, z: f64) -> bool {
        (self.mean - value).abs() <= z * self.std_error
    }
}

/// Number of uniform draws from `[0, N)` up to and including the first one
/// that repeats an earlier draw.
pub fn first_collision_index(space_size: u64, seed: u64) -> Result<u64> {
    if space_size == 0 || space_size > MAX_SIM_SPACE {
        return Err(Error::InvalidConfig(format!(
            "simulated space size must be in 1..={MAX_SIM_SPACE}, got {space_size}"
        )));
    }
    let mut gen = GeneratorState::new(Strategy::Independent, space_size, 1, seed)?;
    let mut seen = BitSet::new(space_size);
    let mut draws = 0;
    loop {
        draws += 1;
        if !seen.insert(gen.next_ticket(StoreId(0))?.0) {
            return Ok(draws);
        }
    }
}

/// Mean first-collision index over `trials` seeded trials.
pub fn simulate_first_collision(space_size: u64, trials: usize, seed: u64) -> Result<Estimate> {
    let indices = (0..trials as u64)
        .into_par_iter()
        .map(|t| first_collision_index(space_size, derive_seed(seed, t)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Estimate::from_samples(
        indices.into_iter().map(|v| v as f64),
    ))
}
