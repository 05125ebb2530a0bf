//! `bmgame`: run Banach-Mazur plays, check them, and export trees and
//! structures.

mod commands;
mod config;
mod error;
mod registry;
mod text_eve;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{RunConfig, Settings};
use error::exit;

#[derive(Parser)]
#[command(
    name = "bmgame",
    version,
    about = "Banach-Mazur games on posets and classes of finite structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and print the verdict of the winning check.
    Play(Settings),
    /// Play with Eve's moves typed on standard input.
    Interactive(Settings),
    /// Build the antichain tree of Odd's strategy and write it as DOT.
    Tree(Settings),
    /// Re-check a saved transcript.
    Verify(Settings),
    /// Play one game and write its final position.
    Export(Settings),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                exit::USAGE
            } else {
                exit::PASS
            });
        }
    };
    let (settings, run): (Settings, fn(&RunConfig) -> Result<u8, error::CliError>) =
        match cli.command {
            Command::Play(s) => (s, |c| commands::play(c, false)),
            Command::Interactive(s) => (s, |c| commands::play(c, true)),
            Command::Tree(s) => (s, commands::tree),
            Command::Verify(s) => (s, commands::verify),
            Command::Export(s) => (s, commands::export),
        };
    match RunConfig::from_settings(settings).and_then(|c| run(&c)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("bmgame: {e}");
            ExitCode::from(e.code())
        }
    }
}
