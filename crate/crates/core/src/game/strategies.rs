use rand::Rng;

use super::{PlayRng, Poset, Strategy};
use crate::error::{Error, Result};

/// Repeats the last move; opens with nothing, so it is only usable as Odd
/// or as Eve after some other opening.
#[derive(Debug, Clone, Copy, Default)]
pub struct Echo;

impl<P: Poset + ?Sized> Strategy<P> for Echo {
    fn respond(&mut self, _poset: &P, history: &[P::Elem], _rng: &mut PlayRng) -> Result<P::Elem> {
        history
            .last()
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("echo strategy cannot open a play".into()))
    }

    fn is_markov(&self) -> bool {
        true
    }
}

/// A strategy given by a function of the last move and the move count.
pub struct MarkovFn<F> {
    f: F,
}

impl<F> MarkovFn<F> {
    pub fn new(f: F) -> Self {
        MarkovFn { f }
    }
}

impl<P, F> Strategy<P> for MarkovFn<F>
where
    P: Poset + ?Sized,
    F: Fn(&P, Option<&P::Elem>, usize) -> Result<P::Elem>,
{
    fn respond(&mut self, poset: &P, history: &[P::Elem], _rng: &mut PlayRng) -> Result<P::Elem> {
        (self.f)(poset, history.last(), history.len())
    }

    fn is_markov(&self) -> bool {
        true
    }
}

/// A strategy given by a function of the whole history.
pub struct HistoryFn<F> {
    f: F,
}

impl<F> HistoryFn<F> {
    pub fn new(f: F) -> Self {
        HistoryFn { f }
    }
}

impl<P, F> Strategy<P> for HistoryFn<F>
where
    P: Poset + ?Sized,
    F: FnMut(&P, &[P::Elem], &mut PlayRng) -> Result<P::Elem>,
{
    fn respond(&mut self, poset: &P, history: &[P::Elem], rng: &mut PlayRng) -> Result<P::Elem> {
        (self.f)(poset, history, rng)
    }
}

/// Uniform choice among the first `budget` elements above the last move
/// (or among the first `budget` elements of the poset when opening).
#[derive(Debug, Clone, Copy)]
pub struct RandomEve {
    pub budget: usize,
}

impl RandomEve {
    pub fn new(budget: usize) -> Self {
        RandomEve { budget }
    }
}

impl<P: Poset + ?Sized> Strategy<P> for RandomEve {
    fn respond(&mut self, poset: &P, history: &[P::Elem], rng: &mut PlayRng) -> Result<P::Elem> {
        let options = match history.last() {
            None => poset.enumerate(self.budget),
            Some(last) => poset.enumerate_above(last, self.budget),
        }
        .ok_or_else(|| Error::InvalidArgument(format!("poset {} cannot enumerate", poset.id())))?;
        if options.is_empty() {
            return Err(Error::InvalidArgument(
                "no move available within budget".into(),
            ));
        }
        Ok(options[rng.gen_range(0..options.len())].clone())
    }
}
