//! Ready-made dominating maps and the strategies used to exercise them.

use std::sync::Arc;

use num_integer::Integer;

use super::{cofinal_inclusion, DominatingMap};
use crate::error::{Error, Result};
use crate::game::{MarkovFn, Poset};
use crate::posets::{first_missing_prime, Divisibility, Interval, SubPoset, UnitIntervals};

/// Even positive integers inside divisibility, with the domination witness
/// `lcm(q, 2p)`.
pub fn evens_in_divisibility() -> DominatingMap<SubPoset<Divisibility>, Divisibility> {
    let source = Arc::new(SubPoset::new(Divisibility, "evens", |x: &u128| x % 2 == 0));
    DominatingMap::new(
        source,
        Arc::new(Divisibility),
        |q: &u128| *q,
        |q: &u128, p: &u128| {
            let doubled = p
                .checked_mul(2)
                .ok_or_else(|| Error::WitnessInvalid(format!("2 * {p} overflows")))?;
            Divisibility
                .join_witness(q, &doubled)
                .ok_or_else(|| Error::WitnessInvalid(format!("lcm({q}, {doubled}) overflows")))
        },
    )
    .with_cofinal_witness(|p: &u128| p.checked_mul(2))
}

/// Multiples of `k` inside divisibility, via [`cofinal_inclusion`] with
/// witness `k * p`.
pub fn multiples_of(k: u128) -> DominatingMap<SubPoset<Divisibility>, Divisibility> {
    assert!(k > 0, "k must be positive");
    cofinal_inclusion(
        Divisibility,
        format!("multiples_of:{k}"),
        move |x: &u128| x.is_multiple_of(&k),
        move |p: &u128| p.saturating_mul(k),
    )
}

/// Dyadic subintervals `(j/2^m, (j+1)/2^m)` and their dyadic-endpoint
/// relatives inside the rational intervals of `(0, 1)`.
pub fn dyadic_intervals() -> DominatingMap<SubPoset<UnitIntervals>, UnitIntervals> {
    cofinal_inclusion(
        UnitIntervals,
        "dyadic_intervals",
        Interval::is_dyadic,
        Interval::dyadic_inside,
    )
}

/// Odd strategy on divisibility (or any subposet of it closed under the
/// move): multiply by the first prime not dividing the last move.
pub fn first_missing_prime_strategy<P>(
) -> MarkovFn<impl Fn(&P, Option<&u128>, usize) -> Result<u128> + Send>
where
    P: Poset<Elem = u128> + ?Sized,
{
    MarkovFn::new(|_: &P, last: Option<&u128>, _| {
        let x = *last.ok_or_else(|| Error::InvalidArgument("plays for Odd only".into()))?;
        x.checked_mul(first_missing_prime(x))
            .ok_or_else(|| Error::InvalidArgument(format!("{x} is too large to extend")))
    })
}

/// Odd strategy on intervals: take the middle half of the last move.
pub fn middle_half_strategy<P>(
) -> MarkovFn<impl Fn(&P, Option<&Interval>, usize) -> Result<Interval> + Send>
where
    P: Poset<Elem = Interval> + ?Sized,
{
    MarkovFn::new(|_: &P, last: Option<&Interval>, _| {
        last.map(Interval::middle_half)
            .ok_or_else(|| Error::InvalidArgument("plays for Odd only".into()))
    })
}
