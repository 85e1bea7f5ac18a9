//! Service ordering for items whose success probability decays while they
//! wait to be processed.
//!
//! `n` items are processed one at a time at start times `t_i = (i-1)T`. Each
//! item has an initial success probability; by the time it is processed that
//! probability has dropped, either additively (clamped at zero) or
//! multiplicatively. The crate evaluates an ordering under either law
//! ([`scheduler::evaluate_order`]), finds optimal orderings exhaustively
//! ([`scheduler::brute_force_optimal`]) and answers how likely a random
//! population is to keep every item viable ([`analysis`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod analysis;
pub mod decay;
pub mod distribution;
mod error;
pub mod figure;
pub mod quadrature;
pub mod scheduler;

pub use error::{Error, Result};

pub use analysis::{Estimate, Method, PopulationModel, PositivityReport, Threshold};
pub use decay::{DecaySequence, DecaySpec, Schedule};
pub use distribution::{ProbabilityVector, SuccessCountPmf};
pub use figure::FigureMatrix;
pub use scheduler::{Direction, Objective, Permutation, ScheduleMetrics, Strategy};

/// Absolute tolerance for algebraic identities (sums and products of at most
/// a few dozen probabilities).
pub const IDENTITY_TOL: f64 = 1e-12;
