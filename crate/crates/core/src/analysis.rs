//! How likely a randomly generated population is to keep every item viable.
//!
//! Initial probabilities are i.i.d. `Uniform(low, high)`; stage `k` (1-based)
//! subtracts `decay_step * (k - 1)` with clamping at zero. "Positive" means
//! no item is clamped, i.e. the all-success probability of the order is
//! strictly positive. Strongest first is a closed form, weakest first is an
//! integral over the joint density of the largest order statistics, and both
//! can be cross-checked by seeded simulation.

use alloc::vec;
use alloc::vec::Vec;

use libm::{pow, sqrt};
use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::quadrature::integrate;
use crate::scheduler::Direction;
use crate::{Error, Result};

/// Highest number of active thresholds the nested quadrature accepts.
pub const MAX_QUADRATURE_DIM: usize = 6;

/// Absolute tolerance of each nested quadrature axis.
pub const QUADRATURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationModel {
    n: usize,
    low: f64,
    high: f64,
    decay_step: f64,
}

impl PopulationModel {
    pub fn new(n: usize, low: f64, high: f64, decay_step: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModel("item count must be at least 1"));
        }
        if !(0.0 <= low && low < high && high <= 1.0) {
            return Err(Error::InvalidModel("bounds must satisfy 0 <= low < high <= 1"));
        }
        if !(decay_step >= 0.0 && decay_step.is_finite()) {
            return Err(Error::InvalidModel("decay step must be finite and >= 0"));
        }
        Ok(PopulationModel { n, low, high, decay_step })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }

    pub fn decay_step(&self) -> f64 {
        self.decay_step
    }

    /// Drop applied at 1-based stage `k`.
    pub fn threshold(&self, stage: usize) -> f64 {
        self.decay_step * (stage - 1) as f64
    }

    fn cdf(&self, x: f64) -> f64 {
        ((x - self.low) / (self.high - self.low)).clamp(0.0, 1.0)
    }

    /// `P(X > c)` for a single draw.
    fn survival(&self, c: f64) -> f64 {
        1.0 - self.cdf(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Quadrature,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// Zero for deterministic methods.
    pub std_error: f64,
    pub method: Method,
}

impl Estimate {
    fn exact(value: f64, method: Method) -> Self {
        Estimate { value, std_error: 0.0, method }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityReport {
    pub strongest_first: Estimate,
    pub weakest_first: Estimate,
}

/// Probability that serving the strongest item first leaves every item with
/// a positive success probability.
///
/// The weakest item goes last and faces the largest drop `d(n-1)`; every
/// other item is at least as strong and faces a smaller drop, so the event
/// reduces to `min > d(n-1)`, which has probability `q^n`.
pub fn prob_strongest_first_positive(model: &PopulationModel) -> f64 {
    let q = model.survival(model.threshold(model.n));
    pow(q, model.n as f64)
}

/// A lower bound the `rank`-th smallest draw (1-based) must exceed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Threshold {
    pub rank: usize,
    pub value: f64,
}

/// Under weakest-first service the `k`-th smallest draw is processed at
/// stage `k` and must exceed `d(k-1)`. Only thresholds above the support's
/// lower bound constrain anything; they always form the top ranks.
pub fn active_thresholds(model: &PopulationModel) -> Vec<Threshold> {
    (1..=model.n)
        .map(|rank| Threshold { rank, value: model.threshold(rank) })
        .filter(|t| t.value > model.low)
        .collect()
}

/// Probability that serving the weakest item first leaves every item with a
/// positive success probability.
///
/// With `m` active thresholds `c_1 < .. < c_m` on the top `m` order
/// statistics `x_1 < .. < x_m`, integrates the joint density
/// `n!/(n-m)! F(x_1)^(n-m) f^m` over `c_j < x_j < x_{j+1}` (with
/// `x_{m+1} = high`), innermost variable first.
pub fn prob_weakest_first_positive_quadrature(model: &PopulationModel) -> Result<f64> {
    let active: Vec<f64> = active_thresholds(model).iter().map(|t| t.value).collect();
    let m = active.len();
    if m == 0 {
        return Ok(1.0);
    }
    if m > MAX_QUADRATURE_DIM {
        return Err(Error::TooManyThresholds { active: m, max: MAX_QUADRATURE_DIM });
    }
    if active[m - 1] >= model.high {
        return Ok(0.0);
    }
    let density = 1.0 / (model.high - model.low);
    let lead = ((model.n - m + 1)..=model.n).fold(1.0, |acc, k| acc * k as f64) * pow(density, m as f64);
    let free = (model.n - m) as f64;
    let region = OrderedRegion { model, lower: &active, lead, free };
    let p = region.integrate_axis(m - 1, model.high);
    Ok(p.clamp(0.0, 1.0))
}

struct OrderedRegion<'a> {
    model: &'a PopulationModel,
    lower: &'a [f64],
    lead: f64,
    free: f64,
}

impl OrderedRegion<'_> {
    /// Integral over `x_axis` in `(lower[axis], upper)` of everything below it.
    fn integrate_axis(&self, axis: usize, upper: f64) -> f64 {
        let lo = self.lower[axis];
        if upper <= lo {
            return 0.0;
        }
        if axis == 0 {
            let inner = |x: f64| self.lead * pow(self.model.cdf(x), self.free);
            integrate(&inner, lo, upper, QUADRATURE_TOL).value
        } else {
            let inner = |x: f64| self.integrate_axis(axis - 1, x);
            integrate(&inner, lo, upper, QUADRATURE_TOL).value
        }
    }
}

/// Analytic strongest-first and quadrature weakest-first values.
pub fn positivity_report(model: &PopulationModel) -> Result<PositivityReport> {
    Ok(PositivityReport {
        strongest_first: Estimate::exact(prob_strongest_first_positive(model), Method::Analytic),
        weakest_first: Estimate::exact(
            prob_weakest_first_positive_quadrature(model)?,
            Method::Quadrature,
        ),
    })
}

/// Seeded generator shared by every sampling routine in the crate.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fills `out` with i.i.d. draws from the open interval `(low, high)`.
pub fn fill_uniform<R: Rng + ?Sized>(rng: &mut R, low: f64, high: f64, out: &mut [f64]) {
    let width = high - low;
    for x in out.iter_mut() {
        let u: f64 = rng.sample(Open01);
        *x = low + width * u;
    }
}

/// Simulates `trials` populations, serves each in `direction` order and
/// counts the populations in which no item is clamped to zero.
pub fn prob_positive_montecarlo(
    model: &PopulationModel,
    direction: Direction,
    trials: u64,
    seed: u64,
) -> Result<Estimate> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let mut rng = seeded_rng(seed);
    let mut draws = vec![0.0; model.n];
    let drops: Vec<f64> = (1..=model.n).map(|k| model.threshold(k)).collect();
    let mut hits: u64 = 0;
    for _ in 0..trials {
        fill_uniform(&mut rng, model.low, model.high, &mut draws);
        draws.sort_unstable_by(f64::total_cmp);
        if direction == Direction::Descending {
            draws.reverse();
        }
        if draws.iter().zip(&drops).all(|(p, d)| p - d > 0.0) {
            hits += 1;
        }
    }
    let p = hits as f64 / trials as f64;
    Ok(Estimate {
        value: p,
        std_error: sqrt(p * (1.0 - p) / trials as f64),
        method: Method::MonteCarlo,
    })
}

/// Monte Carlo estimates for both strategies from the same seed.
pub fn simulate_positivity(
    model: &PopulationModel,
    trials: u64,
    seed: u64,
) -> Result<PositivityReport> {
    Ok(PositivityReport {
        strongest_first: prob_positive_montecarlo(model, Direction::Descending, trials, seed)?,
        weakest_first: prob_positive_montecarlo(model, Direction::Ascending, trials, seed)?,
    })
}
