//! Poisson binomial distribution: the number of successes among independent
//! Bernoulli trials with unequal success probabilities.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::{Error, Result};

/// Per-item success probabilities, listed in processing order.
///
/// Every entry lies in `[0, 1]`; exact zeros and ones are allowed since a
/// clamped item has probability zero. The length is fixed at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        if let Some((index, &value)) =
            probs.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p))
        {
            return Err(Error::ProbabilityOutOfRange { index, value });
        }
        Ok(ProbabilityVector(probs))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ProbabilityVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        ProbabilityVector::new(probs)
    }
}

impl TryFrom<&[f64]> for ProbabilityVector {
    type Error = Error;

    fn try_from(probs: &[f64]) -> Result<Self> {
        ProbabilityVector::new(probs.to_vec())
    }
}

/// `mass[k] = P(Y = k)` for `k = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessCountPmf {
    mass: Vec<f64>,
}

impl SuccessCountPmf {
    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Number of trials, one less than the number of mass entries.
    pub fn trials(&self) -> usize {
        self.mass.len() - 1
    }

    pub fn get(&self, k: usize) -> f64 {
        self.mass.get(k).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.mass.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.mass.iter().enumerate().map(|(k, m)| k as f64 * m).sum()
    }

    /// Probability that every trial succeeds.
    pub fn all_success(&self) -> f64 {
        self.mass[self.trials()]
    }
}

/// Coefficients of `prod_i (1 - p_i + p_i z)`, built by multiplying in one
/// linear factor at a time.
pub fn success_count_pmf(pv: &ProbabilityVector) -> SuccessCountPmf {
    let mut mass = vec![0.0; pv.len() + 1];
    mass[0] = 1.0;
    for (i, &p) in pv.iter().enumerate() {
        let q = 1.0 - p;
        // Degree grows from i to i + 1; walk downwards so each coefficient
        // reads the previous factor's values.
        for k in (1..=i + 1).rev() {
            mass[k] = mass[k] * q + mass[k - 1] * p;
        }
        mass[0] *= q;
    }
    SuccessCountPmf { mass }
}

pub fn expected_successes(pv: &ProbabilityVector) -> f64 {
    pv.iter().sum()
}

pub fn prob_all_success(pv: &ProbabilityVector) -> f64 {
    pv.iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn pv(v: &[f64]) -> ProbabilityVector {
        ProbabilityVector::try_from(v).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12
    }

    #[test]
    fn rejects_bad_vectors() {
        assert_eq!(ProbabilityVector::new(vec![]), Err(Error::Empty));
        assert_eq!(
            ProbabilityVector::new(vec![0.2, 1.5]),
            Err(Error::ProbabilityOutOfRange { index: 1, value: 1.5 })
        );
        assert!(ProbabilityVector::new(vec![-0.0001]).is_err());
        assert!(ProbabilityVector::new(vec![f64::NAN]).is_err());
        assert!(ProbabilityVector::new(vec![0.0, 1.0]).is_ok());
    }

    #[test]
    fn certain_trials() {
        let pmf = success_count_pmf(&pv(&[1.0, 1.0, 1.0]));
        assert_eq!(pmf.mass(), &[0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn two_trials_match_enumeration() {
        // outcomes: FF 0.2*0.5, SF+FS 0.8*0.5+0.2*0.5, SS 0.8*0.5
        let pmf = success_count_pmf(&pv(&[0.8, 0.5]));
        let want = [0.1, 0.5, 0.4];
        for (got, want) in pmf.mass().iter().zip(want) {
            assert!(close(*got, want), "{got} vs {want}");
        }
    }

    #[test]
    fn worked_example_top_mass() {
        let v = pv(&[0.8, 0.8, 0.5, 0.4]);
        let pmf = success_count_pmf(&v);
        assert!(close(pmf.get(4), 0.128));
        assert!(close(pmf.all_success(), prob_all_success(&v)));
        assert!(close(pmf.mean(), expected_successes(&v)));
        assert!(close(pmf.total(), 1.0));
    }

    #[test]
    fn expectations() {
        assert!(close(expected_successes(&pv(&[0.8, 0.8, 0.5, 0.4])), 2.5));
        assert_eq!(expected_successes(&pv(&[0.0, 0.0, 0.0])), 0.0);
        assert!(close(expected_successes(&pv(&[0.8, 0.8, 0.0, 0.0])), 1.6));
    }

    #[test]
    fn all_success() {
        assert!(close(prob_all_success(&pv(&[0.8, 0.8, 0.5, 0.4])), 0.128));
        assert_eq!(prob_all_success(&pv(&[0.9, 0.7, 0.0, 0.0])), 0.0);
        assert_eq!(prob_all_success(&pv(&[1.0, 1.0])), 1.0);
    }
}
