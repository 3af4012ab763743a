//! Exact expected qualitative utility maximization.
//!
//! Utilities are finite Laurent polynomials in a positive infinitesimal `ε`
//! with rational coefficients. Lotteries are ranked by comparing expected
//! utilities with the qualitative order `≻`, under which values that differ
//! only by a relatively infinitesimal amount are indifferent.

pub mod cli;
pub mod error;
pub mod hyperreal;
pub mod mixture;
pub mod postulates;
pub mod preference;
pub mod problem;
pub mod representation;
pub mod subjective;

pub use error::{Error, Result};
pub use hyperreal::{Hyperreal, QualOrdering, RatioClass, Rational};
pub use mixture::{Act, Lottery, LotterySpace, Outcome, State};
pub use preference::{compare_lotteries, expected_utility, PreferenceVerdict, UtilityModel};
