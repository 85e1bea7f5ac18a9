//! Decay laws turning initial success probabilities into the probabilities
//! in effect when each item is actually processed.

use alloc::vec::Vec;
use core::ops::Deref;

use crate::distribution::ProbabilityVector;
use crate::scheduler::Permutation;
use crate::{Error, Result};

/// Per-stage additive drop `d_i = -f(t_i)`, one entry per processing stage.
///
/// Entries are non-negative and non-decreasing: the drop never shrinks as
/// an item waits longer.
#[derive(Debug, Clone, PartialEq)]
pub struct DecaySequence(Vec<f64>);

impl DecaySequence {
    pub fn new(steps: Vec<f64>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Empty);
        }
        for (index, &value) in steps.iter().enumerate() {
            if !(value >= 0.0 && value.is_finite()) {
                return Err(Error::NegativeDecay { index, value });
            }
            if index > 0 && value < steps[index - 1] {
                return Err(Error::DecreasingDecay { index });
            }
        }
        Ok(DecaySequence(steps))
    }

    /// `d_i = rate * (i - 1)` for `i = 1..=n`, i.e. `f(x) = -rate * x / T`
    /// sampled at the start times.
    pub fn linear(rate: f64, n: usize) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::NegativeDecay { index: 0, value: rate });
        }
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(DecaySequence((0..n).map(|i| rate * i as f64).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

impl Deref for DecaySequence {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Alias for [`DecaySequence::linear`].
pub fn linear_decay_sequence(rate: f64, n: usize) -> Result<DecaySequence> {
    DecaySequence::linear(rate, n)
}

#[derive(Debug, Clone, PartialEq)]
pub enum DecaySpec {
    /// `P1(i) = (P0(i) - d_i)^+` with items started every `interval` time
    /// units.
    Additive { decay: DecaySequence, interval: f64 },
    /// `P1(i) = P0(i) * factor^(i-1)`, `0 < factor < 1`.
    Multiplicative { factor: f64 },
}

impl DecaySpec {
    /// Linear additive decay for `n` items with unit interval.
    pub fn linear(rate: f64, n: usize) -> Result<Self> {
        Ok(DecaySpec::Additive { decay: DecaySequence::linear(rate, n)?, interval: 1.0 })
    }

    pub fn multiplicative(factor: f64) -> Result<Self> {
        check_factor(factor)?;
        Ok(DecaySpec::Multiplicative { factor })
    }

    pub fn is_additive(&self) -> bool {
        matches!(self, DecaySpec::Additive { .. })
    }

    /// Applies the law to probabilities already arranged in service order.
    pub fn apply(&self, p0_in_service_order: &ProbabilityVector) -> Result<ProbabilityVector> {
        match self {
            DecaySpec::Additive { decay, interval } => {
                check_interval(*interval)?;
                apply_additive(p0_in_service_order, decay)
            }
            DecaySpec::Multiplicative { factor } => {
                apply_multiplicative(p0_in_service_order, *factor)
            }
        }
    }
}

fn check_factor(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::FactorOutOfRange(p))
    }
}

fn check_interval(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInterval(t))
    }
}

pub fn apply_additive(
    p0_in_service_order: &ProbabilityVector,
    decay: &DecaySequence,
) -> Result<ProbabilityVector> {
    if p0_in_service_order.len() != decay.len() {
        return Err(Error::LengthMismatch {
            expected: p0_in_service_order.len(),
            found: decay.len(),
        });
    }
    let p1 = p0_in_service_order
        .iter()
        .zip(decay.iter())
        .map(|(&p, &d)| {
            let x = p - d;
            // d >= 0 and p <= 1, so only the lower clamp can fire.
            debug_assert!(x <= 1.0);
            if x > 0.0 {
                x
            } else {
                0.0
            }
        })
        .collect();
    ProbabilityVector::new(p1)
}

pub fn apply_multiplicative(
    p0_in_service_order: &ProbabilityVector,
    factor: f64,
) -> Result<ProbabilityVector> {
    check_factor(factor)?;
    let mut scale = 1.0;
    let p1 = p0_in_service_order
        .iter()
        .map(|&p| {
            let x = p * scale;
            scale *= factor;
            x
        })
        .collect();
    ProbabilityVector::new(p1)
}

/// A service order together with the processing start times
/// `t_i = (i - 1) * interval`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    order: Permutation,
    interval: f64,
}

impl Schedule {
    pub fn new(order: Permutation, interval: f64) -> Result<Self> {
        check_interval(interval)?;
        Ok(Schedule { order, interval })
    }

    pub fn order(&self) -> &Permutation {
        &self.order
    }

    pub fn interval(&self) -> f64 {
        self.interval
    }

    pub fn start_times(&self) -> Vec<f64> {
        (0..self.order.len()).map(|i| i as f64 * self.interval).collect()
    }
}
