use std::fmt;
use std::sync::Arc;

use super::{PlayRng, Poset, Strategy};
use crate::error::{Error, Result};

type Pred<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;
type Lift<E> = Arc<dyn Fn(&E) -> E + Send + Sync>;

/// A cofinal subset, given by membership and a way to climb into it.
pub struct CofinalSet<E> {
    name: String,
    contains: Pred<E>,
    witness_above: Lift<E>,
}

impl<E> Clone for CofinalSet<E> {
    fn clone(&self) -> Self {
        CofinalSet {
            name: self.name.clone(),
            contains: Arc::clone(&self.contains),
            witness_above: Arc::clone(&self.witness_above),
        }
    }
}

impl<E> fmt::Debug for CofinalSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CofinalSet")
            .field("name", &self.name)
            .finish()
    }
}

impl<E> CofinalSet<E> {
    pub fn new(
        name: impl Into<String>,
        contains: impl Fn(&E) -> bool + Send + Sync + 'static,
        witness_above: impl Fn(&E) -> E + Send + Sync + 'static,
    ) -> Self {
        CofinalSet {
            name: name.into(),
            contains: Arc::new(contains),
            witness_above: Arc::new(witness_above),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, x: &E) -> bool {
        (self.contains)(x)
    }

    pub fn witness_above(&self, p: &E) -> E {
        (self.witness_above)(p)
    }
}

/// A finite indexed family `D_0, ..., D_{m-1}` of cofinal sets.
pub struct CofinalFamily<E> {
    sets: Vec<CofinalSet<E>>,
}

impl<E> Clone for CofinalFamily<E> {
    fn clone(&self) -> Self {
        CofinalFamily {
            sets: self.sets.clone(),
        }
    }
}

impl<E> fmt::Debug for CofinalFamily<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.sets.iter().map(|s| &s.name))
            .finish()
    }
}

impl<E> CofinalFamily<E> {
    pub fn new(sets: Vec<CofinalSet<E>>) -> Self {
        CofinalFamily { sets }
    }

    pub fn empty() -> Self {
        CofinalFamily { sets: Vec::new() }
    }

    pub fn sets(&self) -> &[CofinalSet<E>] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Witness violations on the given sample points.
    pub fn spot_check<P: Poset<Elem = E> + ?Sized>(&self, poset: &P, samples: &[E]) -> Vec<String>
    where
        E: fmt::Debug,
    {
        let mut problems = Vec::new();
        for set in &self.sets {
            for p in samples {
                let d = set.witness_above(p);
                if !poset.leq(p, &d) || !set.contains(&d) {
                    problems.push(format!("{}: witness {d:?} for {p:?}", set.name));
                }
            }
        }
        problems
    }
}

/// Odd's move number `n` (global index `2n + 1`) climbs into `D_n`; once
/// the family is exhausted Odd repeats Eve's move.
pub struct GenericOdd<E> {
    family: CofinalFamily<E>,
}

pub fn generic_odd_strategy<E>(family: CofinalFamily<E>) -> GenericOdd<E> {
    GenericOdd { family }
}

impl<E> GenericOdd<E> {
    pub fn family(&self) -> &CofinalFamily<E> {
        &self.family
    }
}

impl<P> Strategy<P> for GenericOdd<P::Elem>
where
    P: Poset + ?Sized,
{
    fn respond(&mut self, poset: &P, history: &[P::Elem], _rng: &mut PlayRng) -> Result<P::Elem> {
        let last = history
            .last()
            .ok_or_else(|| Error::InvalidArgument("generic strategy plays for Odd only".into()))?;
        let n = history.len() / 2;
        let Some(set) = self.family.sets.get(n) else {
            return Ok(last.clone());
        };
        let d = set.witness_above(last);
        if !poset.leq(last, &d) {
            return Err(Error::WitnessInvalid(format!(
                "{}: {d:?} is not above {last:?}",
                set.name
            )));
        }
        if !set.contains(&d) {
            return Err(Error::WitnessInvalid(format!(
                "{}: {d:?} is not a member",
                set.name
            )));
        }
        Ok(d)
    }

    fn is_markov(&self) -> bool {
        true
    }
}
