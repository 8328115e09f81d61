//! Exact finite-space uncertainty representations and the conversions
//! between them.
//!
//! Capacities, random sets (mass assignments), possibility distributions,
//! probability intervals and generalized p-boxes all live on a
//! [`FiniteSpace`] and evaluate on [`Event`]s. Arithmetic is exact
//! ([`Rational`]), and [`credal`] provides an independent linear-programming
//! oracle over the credal set each representation induces.

// Errors carry the offending exact values.
#![allow(clippy::result_large_err)]

pub mod capacity;
pub mod conversions;
pub mod credal;
pub mod error;
pub mod interval;
pub mod pbox;
pub mod possibility;
pub mod random_set;
pub mod rational;
pub mod space;

pub use capacity::{Capacity, MobiusAssignment};
pub use conversions::{
    covers_first_and_last, interval_to_sigma_pbox, pbox_to_interval, reconstruct_interval,
    reduced_permutation_set,
};
pub use credal::{Constraint, CredalPolytope, ProbabilityVector};
pub use error::Error;
pub use interval::{Conjunction, ProbabilityInterval};
pub use pbox::{GeneralizedPBox, Level, Warning};
pub use possibility::{Cut, Measures, PossibilityDistribution};
pub use random_set::MassAssignment;
pub use rational::{parse_rational, Rational};
pub use space::{enumerate_events, Event, FiniteSpace, Permutation};

#[cfg(feature = "gen")]
pub mod gen;
