use std::path::Path;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const PASS: u8 = 0;
    pub const FAIL: u8 = 1;
    pub const UNDECIDED: u8 = 2;
    pub const EOF: u8 = 3;
    pub const EMPTY_LEVEL: u8 = 4;
    pub const USAGE: u8 = 64;
    pub const DATA: u8 = 65;
    pub const INTERNAL: u8 = 70;
    pub const IO: u8 = 74;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("bad input: {0}")]
    Data(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Game(#[from] bmgame::Error),
}

impl CliError {
    pub fn io(path: &Path, e: std::io::Error) -> CliError {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    pub fn code(&self) -> u8 {
        use bmgame::Error as G;
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Data(_) => exit::DATA,
            CliError::Io(_) => exit::IO,
            CliError::Game(g) => match g {
                G::Aborted(_) => exit::EOF,
                G::EmptyLevel { .. } => exit::EMPTY_LEVEL,
                G::Unknown(_) | G::InvalidArgument(_) => exit::USAGE,
                G::Codec(_) | G::InvalidStructure(_) => exit::DATA,
                _ => exit::INTERNAL,
            },
        }
    }
}
