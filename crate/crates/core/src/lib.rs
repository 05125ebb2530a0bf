//! Banach-Mazur games played on partially ordered sets.
//!
//! The crate is organised bottom-up:
//!
//! * [`game`]: posets, transcripts, strategies, the play runner and
//!   finite-stage winning checks;
//! * [`posets`]: concrete posets (words, divisibility, rational intervals,
//!   finite posets, subposets);
//! * [`tree`]: antichain trees built from Odd strategies, branch metric,
//!   and strategies that follow a tree;
//! * [`transfer`]: dominating maps and moving strategies along them;
//! * [`structs`]: finite relational structures, embeddings and
//!   back-and-forth equivalence;
//! * [`fraisse`]: classes of finite structures, explicit limits, and the
//!   strategies that build and exploit them;
//! * [`batch`]: data-parallel execution of independent plays.

pub mod batch;
pub mod error;
pub mod fraisse;
pub mod game;
pub mod posets;
pub mod structs;
pub mod transfer;
pub mod tree;

pub use error::{Error, Result};
