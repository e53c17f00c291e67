//! Jackpot-to-sales model and expected value as a function of the jackpot.
//!
//! Jackpots `j` are in millions of dollars and the pool is `P = j * 1e6`.
//! Tickets sold `T(j)` is a quadratic in `j` and enters the expected-value
//! formulas as a real number.

use std::io::Read;

use nalgebra::{DMatrix, DVector};

use crate::analytics;
use crate::error::{Error, Result};

/// `T(j) = a j^2 + b j + c` tickets at a jackpot of `j` million dollars.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SalesModel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl SalesModel {
    /// Quadratic fit of Powerball sales against jackpot.
    pub const POWERBALL: SalesModel = SalesModel {
        a: 278.36,
        b: -5364.95,
        c: 10_582_740.74,
    };

    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn tickets_sold(&self, jackpot_millions: f64) -> f64 {
        (self.a * jackpot_millions + self.b) * jackpot_millions + self.c
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.a * factor, self.b * factor, self.c * factor)
    }
}

impl Default for SalesModel {
    fn default() -> Self {
        Self::POWERBALL
    }
}

impl std::str::FromStr for SalesModel {
    type Err = Error;

    /// `a,b,c`
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidConfig(format!("bad coefficient list {s:?}: {e}")))?;
        match parts[..] {
            [a, b, c] if parts.iter().all(|v| v.is_finite()) => Ok(SalesModel::new(a, b, c)),
            _ => Err(Error::InvalidConfig(format!(
                "expected three finite coefficients a,b,c, got {s:?}"
            ))),
        }
    }
}

/// Tickets sold `T(j)`; see [`SalesModel::tickets_sold`].
pub fn tickets_sold(model: &SalesModel, jackpot_millions: f64) -> f64 {
    model.tickets_sold(jackpot_millions)
}

/// One observed draw: jackpot and tickets sold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SalesRecord {
    pub jackpot_millions: f64,
    pub tickets_sold: u64,
}

/// Reads `jackpot_millions,tickets_sold` records. Errors carry the 1-based
/// line number of the offending row.
pub fn read_sales_csv<R: Read>(reader: R) -> Result<Vec<SalesRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let headers = rdr.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    if headers.iter().collect::<Vec<_>>() != ["jackpot_millions", "tickets_sold"] {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "expected header `jackpot_millions,tickets_sold`, got `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }

    let mut records = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let bad = |message: String| Error::Parse { line, message };
        let jackpot_millions: f64 = row[0]
            .parse()
            .map_err(|_| bad(format!("jackpot_millions {:?} is not a number", &row[0])))?;
        let tickets_sold: u64 = row[1].parse().map_err(|_| {
            bad(format!(
                "tickets_sold {:?} is not a non-negative integer",
                &row[1]
            ))
        })?;
        if !jackpot_millions.is_finite() || jackpot_millions < 0.0 {
            return Err(bad(format!(
                "jackpot_millions {jackpot_millions} must be non-negative"
            )));
        }
        records.push(SalesRecord {
            jackpot_millions,
            tickets_sold,
        });
    }
    Ok(records)
}

/// Least-squares quadratic through `(jackpot, tickets)` pairs.
///
/// Solved by QR on a column-scaled Vandermonde matrix, then unscaled.
pub fn fit_quadratic(records: &[SalesRecord]) -> Result<SalesModel> {
    let mut distinct: Vec<f64> = records.iter().map(|r| r.jackpot_millions).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::RankDeficient(format!(
            "a quadratic needs at least 3 distinct jackpot values, got {}",
            distinct.len()
        )));
    }

    let scale = records
        .iter()
        .map(|r| r.jackpot_millions.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let rows = records.len();
    let design = DMatrix::from_fn(rows, 3, |i, j| {
        (records[i].jackpot_millions / scale).powi(j as i32)
    });
    let target = DVector::from_iterator(rows, records.iter().map(|r| r.tickets_sold as f64));

    let qr = design.qr();
    let r = qr.r();
    let max_diag = (0..3).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    if (0..3).any(|i| r[(i, i)].abs() <= 1e-12 * max_diag) {
        return Err(Error::RankDeficient(
            "design matrix is numerically singular".into(),
        ));
    }
    let qt_y = qr.q().transpose() * target;
    let coeffs = r
        .solve_upper_triangular(&qt_y)
        .ok_or_else(|| Error::RankDeficient("triangular solve failed".into()))?;

    Ok(SalesModel::new(
        coeffs[2] / (scale * scale),
        coeffs[1] / scale,
        coeffs[0],
    ))
}

/// Coefficient of determination of `model` over `records`.
pub fn r_squared(model: &SalesModel, records: &[SalesRecord]) -> f64 {
    let n = records.len() as f64;
    let mean = records.iter().map(|r| r.tickets_sold as f64).sum::<f64>() / n;
    let (ss_res, ss_tot) = records.iter().fold((0.0, 0.0), |(res, tot), r| {
        let y = r.tickets_sold as f64;
        let e = y - model.tickets_sold(r.jackpot_millions);
        (res + e * e, tot + (y - mean) * (y - mean))
    });
    if ss_tot == 0.0 {
        return if ss_res == 0.0 { 1.0 } else { 0.0 };
    }
    1.0 - ss_res / ss_tot
}

/// How tickets are generated when evaluating expected value at a jackpot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Independent uniform Quick Picks.
    IndependentRandom,
    /// Collision-free allocation until the space is exhausted.
    CentralServer,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::IndependentRandom => "ir",
            Scheme::CentralServer => "cs",
        }
    }
}

/// Expected dollar value of one ticket when the jackpot is `j` million.
pub fn ev_at_jackpot(
    model: &SalesModel,
    jackpot_millions: f64,
    scheme: Scheme,
    space_size: u64,
) -> Result<f64> {
    let sold = model.tickets_sold(jackpot_millions);
    if sold.is_nan() || sold < 1.0 {
        return Err(Error::UndefinedInput(format!(
            "model predicts {sold} tickets at a {jackpot_millions} million jackpot; need at least 1"
        )));
    }
    let pool = jackpot_millions * 1e6;
    match scheme {
        Scheme::IndependentRandom => analytics::ev_ir(sold, space_size, pool),
        Scheme::CentralServer => analytics::ev_cs(sold, space_size, pool),
    }
}

/// Jackpot range (millions) scanned by [`breakeven_roots`] and
/// [`argmax_ev`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchDomain {
    pub j_min: f64,
    pub j_max: f64,
    /// Grid intervals used to bracket roots and maxima.
    pub steps: usize,
}

impl Default for SearchDomain {
    fn default() -> Self {
        Self {
            j_min: 40.0,
            j_max: 3000.0,
            steps: 2960,
        }
    }
}

impl SearchDomain {
    fn validate(&self) -> Result<()> {
        if !self.j_min.is_finite()
            || !self.j_max.is_finite()
            || self.j_min >= self.j_max
            || self.steps < 2
        {
            return Err(Error::InvalidConfig(format!(
                "search domain needs j_min < j_max and at least 2 steps, got {self:?}"
            )));
        }
        Ok(())
    }

    fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        let h = (self.j_max - self.j_min) / self.steps as f64;
        (0..=self.steps).map(move |i| self.j_min + h * i as f64)
    }
}

/// Jackpots where expected value first rises to and finally falls back to
/// `ticket_cost`, over the default domain.
pub fn breakeven_roots(
    model: &SalesModel,
    scheme: Scheme,
    space_size: u64,
    ticket_cost: f64,
) -> Result<(f64, f64)> {
    breakeven_roots_in(
        model,
        scheme,
        space_size,
        ticket_cost,
        &SearchDomain::default(),
    )
}

pub fn breakeven_roots_in(
    model: &SalesModel,
    scheme: Scheme,
    space_size: u64,
    ticket_cost: f64,
    domain: &SearchDomain,
) -> Result<(f64, f64)> {
    domain.validate()?;
    let f = |j: f64| ev_at_jackpot(model, j, scheme, space_size).map(|ev| ev - ticket_cost);

    let mut crossings = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for j in domain.grid() {
        let v = f(j)?;
        if let Some((pj, pv)) = prev {
            if (pv < 0.0) != (v < 0.0) {
                crossings.push((pj, j));
            }
        }
        prev = Some((j, v));
    }
    if crossings.len() < 2 {
        return Err(Error::NoRoot(format!(
            "expected value crosses ${ticket_cost} {} time(s) on [{}, {}] million; need an entry and an exit",
            crossings.len(),
            domain.j_min,
            domain.j_max
        )));
    }
    let (lo_a, lo_b) = crossings[0];
    let (hi_a, hi_b) = crossings[crossings.len() - 1];
    Ok((bisect(&f, lo_a, lo_b)?, bisect(&f, hi_a, hi_b)?))
}

/// Bisection on a sign-changing bracket down to floating-point resolution.
fn bisect(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a)?;
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    // Return whichever end has the smaller residual.
    Ok(if f(a)?.abs() <= f(b)?.abs() { a } else { b })
}

/// Jackpot with the highest per-ticket expected value, and that value.
pub fn argmax_ev(model: &SalesModel, scheme: Scheme, space_size: u64) -> Result<(f64, f64)> {
    argmax_ev_in(model, scheme, space_size, &SearchDomain::default())
}

pub fn argmax_ev_in(
    model: &SalesModel,
    scheme: Scheme,
    space_size: u64,
    domain: &SearchDomain,
) -> Result<(f64, f64)> {
    domain.validate()?;
    let f = |j: f64| ev_at_jackpot(model, j, scheme, space_size);
    let grid: Vec<f64> = domain.grid().collect();
    let values = grid.iter().map(|&j| f(j)).collect::<Result<Vec<_>>>()?;

    let peaks: Vec<usize> = (1..grid.len() - 1)
        .filter(|&i| values[i] > values[i - 1] && values[i] >= values[i + 1])
        .collect();
    let peak = match peaks[..] {
        [i] => i,
        [] => {
            return Err(Error::NotUnimodal(format!(
                "no interior maximum on [{}, {}] million; expected value is monotone there",
                domain.j_min, domain.j_max
            )))
        }
        _ => {
            return Err(Error::NotUnimodal(format!(
                "{} local maxima on the scan grid",
                peaks.len()
            )))
        }
    };

    // Golden-section refinement inside the neighbouring grid cells.
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (grid[peak - 1], grid[peak + 1]);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > 1e-7 {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        }
    }
    let j = 0.5 * (a + b);
    Ok((j, f(j)?))
}
