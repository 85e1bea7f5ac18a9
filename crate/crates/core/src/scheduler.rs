//! Evaluating and optimizing service orders.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Deref;

use crate::decay::DecaySpec;
use crate::distribution::{
    expected_successes, prob_all_success, success_count_pmf, ProbabilityVector, SuccessCountPmf,
};
use crate::{Error, Result};

/// Largest item count [`brute_force_optimal`] will enumerate (10! orders).
pub const MAX_BRUTE_FORCE_ITEMS: usize = 10;

/// A service order: `order[s]` is the (zero-based) item served at stage `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = alloc::vec![false; n];
        for &i in &order {
            if i >= n || core::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidPermutation);
            }
        }
        Ok(Permutation(order))
    }

    /// Builds a permutation from 1-based item labels.
    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidPermutation);
        }
        Permutation::new(labels.iter().map(|l| l - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    /// Arranges `items` in this service order.
    pub fn arrange(&self, items: &ProbabilityVector) -> Result<ProbabilityVector> {
        if items.len() != self.len() {
            return Err(Error::LengthMismatch { expected: items.len(), found: self.len() });
        }
        ProbabilityVector::new(self.0.iter().map(|&i| items[i]).collect())
    }

    /// Advances to the next permutation in lexicographic order. Returns
    /// `false` (leaving `self` untouched) at the last one.
    fn advance(&mut self) -> bool {
        let v = &mut self.0;
        let Some(pivot) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]).map(|i| i - 1) else {
            return false;
        };
        let swap_with = (pivot + 1..v.len()).rev().find(|&j| v[j] > v[pivot]).unwrap();
        v.swap(pivot, swap_with);
        v[pivot + 1..].reverse();
        true
    }
}

impl Deref for Permutation {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

/// All permutations of `0..n` in lexicographic order, starting at the
/// identity.
pub fn permutations(n: usize) -> LexPermutations {
    LexPermutations { next: (n > 0).then(|| Permutation::identity(n)) }
}

#[derive(Debug, Clone)]
pub struct LexPermutations {
    next: Option<Permutation>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if following.advance() {
            self.next = Some(following);
        }
        Some(current)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Items ordered by initial probability; ties keep their original relative
/// order in both directions.
pub fn sort_order(p0: &ProbabilityVector, direction: Direction) -> Permutation {
    let mut order: Vec<usize> = (0..p0.len()).collect();
    order.sort_by(|&i, &j| {
        let by_value = p0[i].total_cmp(&p0[j]);
        match direction {
            Direction::Ascending => by_value,
            Direction::Descending => by_value.reverse(),
        }
    });
    Permutation(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    ExpectedSuccesses,
    ProbAllSuccess,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleMetrics {
    /// Probabilities in effect when each stage is processed, in service order.
    pub at_processing: ProbabilityVector,
    pub expected_successes: f64,
    pub prob_all_success: f64,
    pub pmf: SuccessCountPmf,
}

impl ScheduleMetrics {
    pub fn value(&self, objective: Objective) -> f64 {
        match objective {
            Objective::ExpectedSuccesses => self.expected_successes,
            Objective::ProbAllSuccess => self.prob_all_success,
        }
    }
}

pub fn evaluate_order(
    p0: &ProbabilityVector,
    order: &Permutation,
    decay: &DecaySpec,
) -> Result<ScheduleMetrics> {
    let p1 = decay.apply(&order.arrange(p0)?)?;
    Ok(ScheduleMetrics {
        expected_successes: expected_successes(&p1),
        prob_all_success: prob_all_success(&p1),
        pmf: success_count_pmf(&p1),
        at_processing: p1,
    })
}

/// Exhaustively searches every service order and returns the first one, in
/// lexicographic order, that attains the largest objective value.
pub fn brute_force_optimal(
    p0: &ProbabilityVector,
    decay: &DecaySpec,
    objective: Objective,
) -> Result<(Permutation, f64)> {
    let n = p0.len();
    if n > MAX_BRUTE_FORCE_ITEMS {
        return Err(Error::TooManyItems { n, max: MAX_BRUTE_FORCE_ITEMS });
    }
    let mut arranged = p0.clone();
    let mut best: Option<(Permutation, f64)> = None;
    for order in permutations(n) {
        arranged = rearrange(arranged, p0, &order);
        let p1 = decay.apply(&arranged)?;
        let value = match objective {
            Objective::ExpectedSuccesses => expected_successes(&p1),
            Objective::ProbAllSuccess => prob_all_success(&p1),
        };
        match &best {
            Some((_, v)) if value.partial_cmp(v) != Some(Ordering::Greater) => {}
            _ => best = Some((order, value)),
        }
    }
    Ok(best.expect("at least one permutation"))
}

fn rearrange(buf: ProbabilityVector, p0: &ProbabilityVector, order: &Permutation) -> ProbabilityVector {
    let mut v = buf.into_inner();
    for (slot, &i) in v.iter_mut().zip(order.iter()) {
        *slot = p0[i];
    }
    // Entries are copied from a validated vector.
    ProbabilityVector::new(v).expect("valid probabilities")
}

/// Which sorted order to use, as a rule of thumb independent of the data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Ascending,
    Descending,
    /// Every order gives the same value.
    Any,
}

impl Strategy {
    /// Concrete order for `p0`; `Any` keeps the listed order.
    pub fn order(self, p0: &ProbabilityVector) -> Permutation {
        match self {
            Strategy::Ascending => sort_order(p0, Direction::Ascending),
            Strategy::Descending => sort_order(p0, Direction::Descending),
            Strategy::Any => Permutation::identity(p0.len()),
        }
    }
}

/// Weakest first maximizes the all-success product under additive decay.
/// Strongest first maximizes expected successes under either law (under
/// additive decay without clamping every order ties, so it is still
/// optimal). Under multiplicative decay the all-success product does not
/// depend on the order.
pub fn recommended_order(decay: &DecaySpec, objective: Objective) -> Strategy {
    match (decay, objective) {
        (DecaySpec::Additive { .. }, Objective::ProbAllSuccess) => Strategy::Ascending,
        (DecaySpec::Additive { .. }, Objective::ExpectedSuccesses) => Strategy::Descending,
        (DecaySpec::Multiplicative { .. }, Objective::ExpectedSuccesses) => Strategy::Descending,
        (DecaySpec::Multiplicative { .. }, Objective::ProbAllSuccess) => Strategy::Any,
    }
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
    fn permutation_validation() {
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
        assert_eq!(Permutation::new(vec![0, 0, 1]), Err(Error::InvalidPermutation));
        assert_eq!(Permutation::new(vec![0, 3, 1]), Err(Error::InvalidPermutation));
        assert_eq!(Permutation::new(vec![]), Err(Error::Empty));
        assert_eq!(Permutation::from_one_based(&[3, 1, 2]).unwrap().as_slice(), &[2, 0, 1]);
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<Vec<usize>> = permutations(3).map(|p| p.to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        assert_eq!(permutations(6).count(), 720);
        assert_eq!(permutations(1).count(), 1);
        assert_eq!(permutations(0).count(), 0);
    }

    #[test]
    fn sorting_is_stable() {
        let p0 = pv(&[0.8, 0.9, 0.7, 0.7]);
        let asc = sort_order(&p0, Direction::Ascending);
        assert_eq!(asc.as_slice(), &[2, 3, 0, 1]);
        assert_eq!(asc.arrange(&p0).unwrap().as_slice(), &[0.7, 0.7, 0.8, 0.9]);

        let p0 = pv(&[0.8, 0.9, 0.1, 0.2]);
        let desc = sort_order(&p0, Direction::Descending);
        assert_eq!(desc.arrange(&p0).unwrap().as_slice(), &[0.9, 0.8, 0.2, 0.1]);

        let flat = pv(&[0.5, 0.5, 0.5]);
        for dir in [Direction::Ascending, Direction::Descending] {
            assert_eq!(sort_order(&flat, dir), Permutation::identity(3));
        }
    }

    #[test]
    fn evaluate_worked_examples() {
        let decay = DecaySpec::linear(0.1, 4).unwrap();
        let m = evaluate_order(&pv(&[0.8, 0.9, 0.7, 0.7]), &Permutation::identity(4), &decay)
            .unwrap();
        assert!(close(m.expected_successes, 2.5));
        assert!(close(m.prob_all_success, 0.128));

        let p0 = pv(&[0.8, 0.9, 0.1, 0.2]);
        let m = evaluate_order(&p0, &sort_order(&p0, Direction::Ascending), &decay).unwrap();
        assert!(close(m.expected_successes, 1.4));
        assert!(close(m.prob_all_success, 0.0036));
    }

    #[test]
    fn zero_decay_reduces_to_plain_sum_and_product() {
        let p0 = pv(&[0.3, 0.9, 0.55, 0.7, 0.12]);
        let decay = DecaySpec::linear(0.0, 5).unwrap();
        for order in permutations(5).step_by(17) {
            let m = evaluate_order(&p0, &order, &decay).unwrap();
            assert!(close(m.expected_successes, 2.57));
            assert!(close(m.prob_all_success, 0.3 * 0.9 * 0.55 * 0.7 * 0.12));
        }
    }

    #[test]
    fn evaluate_rejects_mismatched_order() {
        let decay = DecaySpec::linear(0.1, 3).unwrap();
        assert!(evaluate_order(&pv(&[0.5, 0.5, 0.5]), &Permutation::identity(2), &decay).is_err());
        let decay = DecaySpec::linear(0.1, 2).unwrap();
        assert!(evaluate_order(&pv(&[0.5, 0.5, 0.5]), &Permutation::identity(3), &decay).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let p0 = pv(&[0.8, 0.9, 0.1, 0.2]);
        let decay = DecaySpec::linear(0.1, 4).unwrap();
        let (order, value) = brute_force_optimal(&p0, &decay, Objective::ProbAllSuccess).unwrap();
        assert!(close(value, 0.0036));
        assert_eq!(order, sort_order(&p0, Direction::Ascending));

        let (_, value) = brute_force_optimal(&p0, &decay, Objective::ExpectedSuccesses).unwrap();
        assert!(close(value, 1.6));

        let single = pv(&[0.42]);
        let decay = DecaySpec::linear(0.3, 1).unwrap();
        let (order, value) =
            brute_force_optimal(&single, &decay, Objective::ExpectedSuccesses).unwrap();
        assert_eq!(order, Permutation::identity(1));
        assert_eq!(value, 0.42);
    }

    #[test]
    fn brute_force_ties_pick_lexicographically_smallest() {
        let p0 = pv(&[0.5, 0.5, 0.5]);
        let decay = DecaySpec::linear(0.1, 3).unwrap();
        let (order, _) = brute_force_optimal(&p0, &decay, Objective::ProbAllSuccess).unwrap();
        assert_eq!(order, Permutation::identity(3));
    }

    #[test]
    fn brute_force_size_cap() {
        let p0 = ProbabilityVector::new(vec![0.5; 11]).unwrap();
        let decay = DecaySpec::multiplicative(0.9).unwrap();
        assert_eq!(
            brute_force_optimal(&p0, &decay, Objective::ExpectedSuccesses),
            Err(Error::TooManyItems { n: 11, max: 10 })
        );
    }

    #[test]
    fn recommendations() {
        let add = DecaySpec::linear(0.1, 3).unwrap();
        let mul = DecaySpec::multiplicative(0.9).unwrap();
        assert_eq!(recommended_order(&mul, Objective::ProbAllSuccess), Strategy::Any);
        assert_eq!(recommended_order(&add, Objective::ProbAllSuccess), Strategy::Ascending);
        assert_eq!(recommended_order(&mul, Objective::ExpectedSuccesses), Strategy::Descending);
        assert_eq!(recommended_order(&add, Objective::ExpectedSuccesses), Strategy::Descending);
    }
}
