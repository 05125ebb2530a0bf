//! Concrete posets used by the demos, the CLI and the test suites.

mod divisibility;
mod finite;
mod intervals;
mod strings;
mod sub;

pub use divisibility::{
    divisors, factorize, first_missing_prime, is_prime, nth_prime, Divisibility,
};
pub use finite::FinitePoset;
pub use intervals::{is_dyadic, Interval, Rational, UnitIntervals};
pub use strings::{is_prefix, render_word, BinaryStrings, Strings, Word};
pub use sub::SubPoset;
