use thiserror::Error;

use crate::game::Player;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{player} broke the chain at move {index}: response is not above the previous move")]
    StrategyViolation { player: Player, index: usize },

    #[error("witness is invalid: {0}")]
    WitnessInvalid(String),

    #[error("no enumerated move above a level-{level} node within budget {budget}")]
    EmptyLevel { level: usize, budget: usize },

    #[error("no child at level {level} admits a common upper bound with the opponent's move")]
    NoCompatibleChild { level: usize },

    #[error("not a branch: {0}")]
    NotABranch(String),

    #[error("no cofinal witness found for {0}")]
    NoCofinalWitness(String),

    #[error("no common upper bound found in the subposet: {0}")]
    NoJoin(String),

    #[error("amalgamation failed: {0}")]
    AmalgamationFailure(String),

    #[error("limit presentation could not realize an extension: {0}")]
    RealizeFailure(String),

    #[error("maximum degree {found} exceeds the bound {bound}")]
    DegreeExceeded { found: usize, bound: usize },

    #[error("graph contains a cycle through vertex {0}")]
    CycleDetected(u32),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("codec error: {0}")]
    Codec(String),

    #[error("unknown registry entry: {0}")]
    Unknown(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("play aborted: {0}")]
    Aborted(String),
}
