//! Solving games over memoryless strategies and hunting for evidence that
//! memory helps.

mod check;
mod iterate;
mod monotone;
mod random;
mod solve;
mod witness;

use thiserror::Error;

use crate::games::BudgetExceeded;
use crate::payoff::PayoffError;

pub use check::{check_memoryless, CheckOptions, Deviation, Verdict, VerdictKind, Witness};
pub use iterate::{value_iter_disc, value_iter_mean, ValueEstimate};
pub use monotone::{monotone_falsify, MonotoneOptions, MonotonicityWitness};
pub use random::{random_game, RandomGameOptions};
pub use solve::{solve_enumerative, SolveReport};
pub use witness::{candidate_games, find_witness_sequence_failure, Candidate, FoundGame, WitnessSearchOptions, WitnessSearchOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(transparent)]
    Payoff(#[from] PayoffError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error("{0}")]
    InvalidArgument(String),
}
