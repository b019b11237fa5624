//! Weighted-average payoffs over infinite reward sequences and the
//! two-player game graphs they are evaluated on.

pub mod games;
pub mod payoff;
pub mod rational;
pub mod reference;
pub mod seq;
pub mod solver;

pub use payoff::{LassoWord, Mode, PayoffError, PayoffValue};
pub use rational::{rat, Rational};
pub use seq::{CoeffSeq, Classification, Sequence, SeqError};
