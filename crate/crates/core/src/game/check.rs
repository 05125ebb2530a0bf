use std::fmt;

use super::ideal::Meet;
use super::{CofinalFamily, Poset, Transcript};

/// Three-valued answer of a finite-stage winning check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Undecided(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail(_) => "FAIL",
            Verdict::Undecided(_) => "UNDECIDED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::Fail(w) => write!(f, "FAIL ({w})"),
            Verdict::Undecided(w) => write!(f, "UNDECIDED ({w})"),
        }
    }
}

/// Finite-stage stand-in for the winning set: it looks at a finite
/// transcript and says whether the generated ideal looks winning for Odd.
///
/// A check is *monotone* when a PASS survives any enlargement of the
/// generated ideal.
pub trait WinCheck<P: Poset + ?Sized>: Send + Sync {
    fn verdict(&self, poset: &P, transcript: &Transcript<P::Elem>, budget: usize) -> Verdict;

    fn is_monotone(&self) -> bool {
        false
    }
}

pub fn evaluate<P: Poset + ?Sized, C: WinCheck<P> + ?Sized>(
    check: &C,
    poset: &P,
    transcript: &Transcript<P::Elem>,
    budget: usize,
) -> Verdict {
    check.verdict(poset, transcript, budget)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct AlwaysPass;

impl<P: Poset + ?Sized> WinCheck<P> for AlwaysPass {
    fn verdict(&self, _: &P, _: &Transcript<P::Elem>, _: usize) -> Verdict {
        Verdict::Pass
    }

    fn is_monotone(&self) -> bool {
        true
    }
}

/// PASS iff the ideal of the transcript meets every set of the family.
///
/// FAIL is reported only when the down-set of the last move can be listed
/// and misses some set; it is not monotone, a longer play may still meet
/// the set. PASS is monotone.
pub struct GenericityCheck<E> {
    family: CofinalFamily<E>,
}

impl<E> GenericityCheck<E> {
    pub fn new(family: CofinalFamily<E>) -> Self {
        GenericityCheck { family }
    }

    pub fn family(&self) -> &CofinalFamily<E> {
        &self.family
    }
}

impl<P> WinCheck<P> for GenericityCheck<P::Elem>
where
    P: Poset + ?Sized,
    P::Elem: 'static,
{
    fn verdict(&self, poset: &P, transcript: &Transcript<P::Elem>, _budget: usize) -> Verdict {
        let ideal = transcript.ideal();
        let mut unknown = Vec::new();
        for (n, set) in self.family.sets().iter().enumerate() {
            match ideal.meets(poset, |x| set.contains(x)) {
                Meet::Met(_) => {}
                Meet::Missed => {
                    return Verdict::Fail(format!("ideal misses {} (set #{n})", set.name()));
                }
                Meet::Unknown => unknown.push(n),
            }
        }
        if unknown.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Undecided(format!("no witness found for sets {unknown:?}"))
        }
    }

    fn is_monotone(&self) -> bool {
        true
    }
}
