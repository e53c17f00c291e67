//! Closed-form expected values of a ticket under each issuance strategy.
//!
//! Every formula rests on one identity: the tickets sharing a combination
//! jointly hold `P/N` of expected prize regardless of how many share it, so
//! the per-ticket expected value after `k` sales is
//! `expected_distinct(k) * P / (k * N)`.

use statrs::function::erf::erfc;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};

/// Largest `k` for which the two-bin expectation is summed term by term;
/// beyond it a normal approximation is used.
pub const DP_EXACT_LIMIT: u64 = 1_000_000;

/// Terms further than this many standard deviations from `k/2` are dropped
/// from the two-bin sum.
const TAIL_SIGMAS: f64 = 12.0;

/// Expected number of distinct ranks among `k` uniform draws from `N`:
/// `N * (1 - (1 - 1/N)^k)`.
///
/// `k` may be fractional; the expression is smooth in `k`.
pub fn expected_distinct_ir(k: f64, n: u64) -> f64 {
    if k <= 0.0 {
        return 0.0;
    }
    let n = n as f64;
    // 1 - (1 - 1/N)^k without cancellation
    -n * (k * (-1.0 / n).ln_1p()).exp_m1()
}

fn check_inputs(k: f64, n: u64, pool: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::UndefinedInput(
            "ticket space must be non-empty".into(),
        ));
    }
    if !k.is_finite() || k < 1.0 {
        return Err(Error::UndefinedInput(format!(
            "expected value needs at least one ticket sold, got k={k}"
        )));
    }
    if !pool.is_finite() || pool < 0.0 {
        return Err(Error::UndefinedInput(format!(
            "prize pool must be non-negative, got {pool}"
        )));
    }
    Ok(())
}

/// Per-ticket expected value given the expected distinct count.
pub fn ev_from_distinct(distinct: f64, k: f64, n: u64, pool: f64) -> f64 {
    distinct * pool / (k * n as f64)
}

/// Per-ticket expected value under independent uniform generation,
/// `[1 - ((N-1)/N)^k] * P / k`.
pub fn ev_ir(k: f64, n: u64, pool: f64) -> Result<f64> {
    check_inputs(k, n, pool)?;
    Ok(ev_from_distinct(expected_distinct_ir(k, n), k, n, pool))
}

/// Per-ticket expected value under a central allocator: `P/N` while
/// `k <= N`, `P/k` afterwards.
pub fn ev_cs(k: f64, n: u64, pool: f64) -> Result<f64> {
    check_inputs(k, n, pool)?;
    let n_f = n as f64;
    Ok(if k <= n_f { pool / n_f } else { pool / k })
}

/// Expected distinct count for two pairs splitting the space in halves,
/// with each sale routed to either half with probability 1/2.
///
/// `E[min(X, N/2) + min(k - X, N/2)]` with `X ~ Binomial(k, 1/2)`. By
/// symmetry this is `k - 2 E[(X - N/2)^+]`, which is the form summed here.
pub fn expected_distinct_dp_two_bins(k: u64, n: u64) -> Result<f64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::UndefinedInput(format!(
            "two-bin pairing needs an even, non-zero space size, got {n}"
        )));
    }
    let cap = n / 2;
    if k <= cap {
        return Ok(k as f64);
    }
    let overflow = if k <= DP_EXACT_LIMIT {
        half_binomial_overflow_exact(k, cap)
    } else {
        half_binomial_overflow_normal(k, cap)
    };
    // Rounding in the sum must not push the result past its hard bound.
    Ok((k as f64 - 2.0 * overflow).min(n as f64))
}

/// `E[(X - cap)^+]` for `X ~ Binomial(k, 1/2)`, summed in log space over the
/// central `±12σ` band.
pub fn half_binomial_overflow_exact(k: u64, cap: u64) -> f64 {
    let mean = k as f64 / 2.0;
    let sigma = (k as f64).sqrt() / 2.0;
    let hi = ((mean + TAIL_SIGMAS * sigma).ceil() as u64).min(k);
    let lo = (cap + 1).max((mean - TAIL_SIGMAS * sigma).floor().max(0.0) as u64);
    if lo > hi {
        return 0.0;
    }
    let ln_half_k = k as f64 * std::f64::consts::LN_2;
    (lo..=hi)
        .map(|i| (ln_binomial(k, i) - ln_half_k).exp() * (i - cap) as f64)
        .sum()
}

/// Normal approximation of `E[(X - cap)^+]`: with `Y ~ N(k/2, k/4)`,
/// `E[(Y - c)^+] = (mu - c) Phi(d) + sigma phi(d)`, `d = (mu - c) / sigma`.
pub fn half_binomial_overflow_normal(k: u64, cap: u64) -> f64 {
    let mean = k as f64 / 2.0;
    let sigma = (k as f64).sqrt() / 2.0;
    let gap = mean - cap as f64;
    let d = gap / sigma;
    let cdf = 0.5 * erfc(-d / std::f64::consts::SQRT_2);
    let pdf = (-0.5 * d * d).exp() / (2.0 * std::f64::consts::PI).sqrt();
    gap * cdf + sigma * pdf
}

/// Per-ticket expected value for deterministic pairing with two pairs:
/// `(P / (k N)) * sum_i C(k,i)/2^k * [min(i, N/2) + min(k-i, N/2)]`.
pub fn ev_dp_two_bins(k: u64, n: u64, pool: f64) -> Result<f64> {
    check_inputs(k as f64, n, pool)?;
    let distinct = expected_distinct_dp_two_bins(k, n)?;
    Ok(ev_from_distinct(distinct, k as f64, n, pool))
}

/// Expected number of sales before the first duplicate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollisionEstimate {
    /// `sqrt(pi N / 2)`
    pub asymptotic: f64,
    /// `1.25 sqrt(N)`
    pub rule_of_thumb: f64,
}

pub fn first_collision_estimate(n: u64) -> CollisionEstimate {
    let n = n as f64;
    CollisionEstimate {
        asymptotic: (std::f64::consts::PI * n / 2.0).sqrt(),
        rule_of_thumb: 1.25 * n.sqrt(),
    }
}

/// A pool of `pool` dollars, a space of `space_size` tickets and `sold`
/// tickets sold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoolParams {
    pub space_size: u64,
    pub pool: f64,
    pub sold: u64,
}

impl PoolParams {
    pub fn ev_ir(&self) -> Result<f64> {
        ev_ir(self.sold as f64, self.space_size, self.pool)
    }

    pub fn ev_cs(&self) -> Result<f64> {
        ev_cs(self.sold as f64, self.space_size, self.pool)
    }

    pub fn ev_dp_two_bins(&self) -> Result<f64> {
        ev_dp_two_bins(self.sold, self.space_size, self.pool)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct sum of the two-bin expectation over all `k+1` outcomes with
    /// probabilities built by the ratio recurrence; independent of the
    /// symmetric overflow form and of `ln_binomial`.
    fn dp_brute(k: u64, n: u64) -> f64 {
        let cap = n / 2;
        let mut ln_p = -(k as f64) * std::f64::consts::LN_2;
        let mut total = 0.0;
        for i in 0..=k {
            total += ln_p.exp() * (i.min(cap) + (k - i).min(cap)) as f64;
            if i < k {
                ln_p += ((k - i) as f64 / (i + 1) as f64).ln();
            }
        }
        total
    }

    /// The recurrence E(k) = E(k-1) + ((N-1)/N)^(k-1), iterated.
    fn ir_recurrence(k: u64, n: u64) -> f64 {
        let q = (n as f64 - 1.0) / n as f64;
        let mut e = 0.0;
        let mut pow = 1.0;
        for _ in 0..k {
            e += pow;
            pow *= q;
        }
        e
    }

    #[test]
    fn distinct_ir_small_cases() {
        assert_eq!(expected_distinct_ir(0.0, 10), 0.0);
        let n = 1000;
        assert!((expected_distinct_ir(2.0, n) - (2.0 - 1.0 / n as f64)).abs() < 1e-12);
        assert!((expected_distinct_ir(5.0, 1) - 1.0).abs() < 1e-15);
        for k in [1, 7, 100, 1000, 5000] {
            let a = expected_distinct_ir(k as f64, n);
            let b = ir_recurrence(k, n);
            assert!((a - b).abs() < 1e-9 * b, "k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn distinct_ir_at_n_equals_n() {
        let v = expected_distinct_ir(100_000.0, 100_000);
        assert!((v - 63_212.24).abs() < 0.01, "{v}");
    }

    #[test]
    fn distinct_ir_monotone_and_bounded() {
        let n = 1000;
        let mut prev = 0.0;
        for k in 1..=10_000u64 {
            let d = expected_distinct_ir(k as f64, n);
            assert!(d > prev);
            assert!(d <= (k.min(n)) as f64 + 1e-9);
            prev = d;
        }
    }

    #[test]
    fn ev_ir_edges() {
        let (n, p) = (1_000_000u64, 5e6);
        assert!((ev_ir(1.0, n, p).unwrap() - p / n as f64).abs() < 1e-12);
        // The bracket tends to 1 from below, so ev_ir / (P/k) rises to 1.
        let mut prev_gap = f64::INFINITY;
        for k in [1e6, 3e6, 1e7, 3e7] {
            let v = ev_ir(k, n, p).unwrap();
            let gap = (p / k - v) / (p / k);
            assert!(v < p / k && gap < prev_gap, "k={k}");
            prev_gap = gap;
        }
        let big = 1e9;
        assert!((ev_ir(big, n, p).unwrap() - p / big).abs() <= 1e-12 * p / big);
        assert!(matches!(ev_ir(0.0, n, p), Err(Error::UndefinedInput(_))));
        assert!(ev_ir(1.0, 0, p).is_err());
        assert!(ev_ir(1.0, n, -1.0).is_err());
    }

    #[test]
    fn ev_ir_near_lower_breakeven() {
        let v = ev_ir(173_700_000.0, 292_201_338, 775.2e6).unwrap();
        assert!((v - 2.0).abs() < 0.01, "{v}");
    }

    #[test]
    fn ev_cs_branches() {
        let (n, p) = (1000u64, 1e6);
        assert_eq!(ev_cs(n as f64, n, p).unwrap(), p / n as f64);
        assert_eq!(ev_cs(2.0 * n as f64, n, p).unwrap(), p / (2.0 * n as f64));
        assert!(ev_cs(0.0, n, p).is_err());
    }

    #[test]
    fn dp_matches_brute_force() {
        for n in [2u64, 10, 100, 1000] {
            for k in 1..=(3 * n).min(2000) {
                let a = expected_distinct_dp_two_bins(k, n).unwrap();
                let b = dp_brute(k, n);
                assert!((a - b).abs() < 1e-9 * b.max(1.0), "n={n} k={k}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn dp_caps_never_bind_below_half() {
        let (n, p) = (1000u64, 1e6);
        for k in 1..=n / 2 {
            assert_eq!(ev_dp_two_bins(k, n, p).unwrap(), p / n as f64);
        }
        assert!(ev_dp_two_bins(5, 999, p).is_err());
        assert!(ev_dp_two_bins(0, 1000, p).is_err());
    }

    #[test]
    fn dominance_on_grid() {
        let (n, p) = (1000u64, 1e6);
        for k in 1..=10_000u64 {
            let ir = ev_ir(k as f64, n, p).unwrap();
            let dp = ev_dp_two_bins(k, n, p).unwrap();
            let cs = ev_cs(k as f64, n, p).unwrap();
            let slack = 1e-12 * cs;
            assert!(
                cs + slack >= dp && dp + slack >= ir,
                "k={k}: {ir} {dp} {cs}"
            );
            // Total expected payout never exceeds the pool.
            assert!(k as f64 * cs <= p * (1.0 + 1e-12));
        }
        let one = [
            ev_ir(1.0, n, p).unwrap(),
            ev_dp_two_bins(1, n, p).unwrap(),
            ev_cs(1.0, n, p).unwrap(),
        ];
        assert!(one.iter().all(|v| (v - p / n as f64).abs() < 1e-12));
    }

    #[test]
    fn exact_and_normal_agree_on_overlap_band() {
        let n = 200_000u64;
        let cap = n / 2;
        for k in (100_000..=1_000_000u64).step_by(25_000) {
            let exact = k as f64 - 2.0 * half_binomial_overflow_exact(k, cap);
            let approx = k as f64 - 2.0 * half_binomial_overflow_normal(k, cap);
            assert!(
                (exact - approx).abs() / exact < 1e-3,
                "k={k}: {exact} vs {approx}"
            );
        }
        // Near the cap the overflow itself, not just the total, should agree.
        let e = half_binomial_overflow_exact(n, cap);
        let a = half_binomial_overflow_normal(n, cap);
        assert!((e - a).abs() / e < 1e-2, "{e} vs {a}");
    }

    #[test]
    fn dp_large_k_saturates() {
        let d = expected_distinct_dp_two_bins(10_000_000, 200_000).unwrap();
        assert!((d - 200_000.0).abs() < 1e-6, "{d}");
    }

    #[test]
    fn collision_estimates() {
        let pb = first_collision_estimate(292_201_338);
        assert_eq!(pb.rule_of_thumb.round(), 21_367.0);
        assert!((pb.asymptotic - 21_424.02).abs() < 0.01);
        let one = first_collision_estimate(1);
        assert_eq!(one.rule_of_thumb, 1.25);
        assert!((first_collision_estimate(10_000).asymptotic - 125.33).abs() < 0.01);
    }

    #[test]
    fn pool_params_delegate() {
        let pp = PoolParams {
            space_size: 1000,
            pool: 1e6,
            sold: 1500,
        };
        assert_eq!(pp.ev_cs().unwrap(), 1e6 / 1500.0);
        assert!(pp.ev_ir().unwrap() < pp.ev_dp_two_bins().unwrap());
    }
}
