//! Run configuration: command-line flags layered over an optional flat
//! JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
}

/// Every setting a command may read. All fields are optional so the file
/// and the flags can be merged before defaults are applied.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    /// Class or poset id (graphs, linear_orders, pure_sets, bounded_degree:N,
    /// forests, binary_strings, strings:K, divisibility, unit_intervals).
    #[arg(long, visible_alias = "poset")]
    #[serde(alias = "poset")]
    pub class: Option<String>,
    /// Eve's strategy: random, echo, interactive, script:<file>, or any Odd id.
    #[arg(long)]
    pub eve: Option<String>,
    /// Odd's strategy id.
    #[arg(long)]
    pub odd: Option<String>,
    /// Number of moves, Eve's and Odd's together.
    #[arg(long)]
    pub rounds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Winning check: always, extension:K, generic or generic:M.
    #[arg(long)]
    pub check: Option<String>,
    /// Enumeration budget for random moves, checks and trees.
    #[arg(long)]
    pub budget: Option<usize>,
    /// Tree depth for the `tree` command.
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Transcript to read for the `verify` command.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    /// Flat JSON file with the same keys; flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

impl Settings {
    /// `self` with every unset field taken from `file`.
    fn over(self, file: Settings) -> Settings {
        Settings {
            class: self.class.or(file.class),
            eve: self.eve.or(file.eve),
            odd: self.odd.or(file.odd),
            rounds: self.rounds.or(file.rounds),
            seed: self.seed.or(file.seed),
            check: self.check.or(file.check),
            budget: self.budget.or(file.budget),
            depth: self.depth.or(file.depth),
            out: self.out.or(file.out),
            format: self.format.or(file.format),
            transcript: self.transcript.or(file.transcript),
            config: self.config,
        }
    }

    /// Merges the config file named by `--config`, if any.
    pub fn resolve(self) -> Result<Settings, CliError> {
        match self.config.clone() {
            None => Ok(self),
            Some(path) => {
                let file = load(&path)?;
                Ok(self.over(file))
            }
        }
    }
}

fn load(path: &Path) -> Result<Settings, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Data(format!("config {}: {e}", path.display())))
}

pub const DEFAULT_ROUNDS: usize = 10;
pub const DEFAULT_BUDGET: usize = 8;
pub const DEFAULT_DEPTH: usize = 3;

/// Settings after defaults, with the preconditions checked.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub target: String,
    pub eve: String,
    pub odd: Option<String>,
    pub rounds: usize,
    pub seed: u64,
    pub check: Option<String>,
    pub budget: usize,
    pub depth: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub transcript: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_settings(s: Settings) -> Result<RunConfig, CliError> {
        let s = s.resolve()?;
        let rounds = s.rounds.unwrap_or(DEFAULT_ROUNDS);
        if rounds == 0 {
            return Err(CliError::Usage("--rounds must be at least 1".into()));
        }
        let budget = s.budget.unwrap_or(DEFAULT_BUDGET);
        if budget == 0 {
            return Err(CliError::Usage("--budget must be at least 1".into()));
        }
        Ok(RunConfig {
            target: s
                .class
                .ok_or_else(|| CliError::Usage("--class (or --poset) is required".into()))?,
            eve: s.eve.unwrap_or_else(|| "random".into()),
            odd: s.odd,
            rounds,
            seed: s.seed.unwrap_or(0),
            check: s.check,
            budget,
            depth: s.depth.unwrap_or(DEFAULT_DEPTH),
            out: s.out,
            format: s.format.unwrap_or(Format::Json),
            transcript: s.transcript,
        })
    }
}
