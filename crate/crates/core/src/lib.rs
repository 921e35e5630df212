//! Exact computation, simulation and cross-checking for the feedback-free
//! card-guessing game played on a deck after one riffle shuffle.
//!
//! * [`shuffle`]: the riffle model, its sampler and exhaustive enumerator.
//! * [`strategy`]: transition probabilities, the canonical optimal guesses, scoring.
//! * [`exactdist`]: exact laws and moments of the score.
//! * [`paths`]: brute-force lattice-path oracles.
//! * [`genfunc`]: closed-form generating functions as exact series.
//! * [`limitlaw`]: the limit law and asymptotic moment forms.
//! * [`montecarlo`]: reproducible parallel simulation.

pub mod arith;
pub mod error;
pub mod exactdist;
pub mod genfunc;
pub mod limitlaw;
pub mod montecarlo;
pub mod paths;
pub mod pmf;
pub mod qpoly;
pub mod rng;
pub mod shuffle;
pub mod strategy;

pub use arith::DyadicProb;
pub use error::{Error, Result};
pub use exactdist::{ExactEngine, Limits, MomentTable};
pub use genfunc::TruncatedSeries;
pub use limitlaw::{Cdf, LimitLaw, LinExpLaw};
pub use montecarlo::SimulationReport;
pub use paths::DyckPath;
pub use pmf::ExactPmf;
pub use qpoly::QPolynomial;
pub use shuffle::{Permutation, ShuffleOutcome};
pub use strategy::{GuessSequence, TransitionMatrix};
