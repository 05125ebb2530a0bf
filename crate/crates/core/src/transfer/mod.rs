//! Dominating maps and moving strategies along them.
//!
//! A map `phi: Q -> P` is dominating when it is monotone, its image is
//! cofinal in `P`, and whenever `phi(q) <= p` some `q' >= q` has
//! `p <= phi(q')` (domination). Along such a map an Odd strategy on
//! either side yields one on the other side, and Odd's verdicts are
//! preserved when the `Q`-side play is judged by its image in `P`.

mod instances;
mod strategies;

use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::game::{play_rng, Poset, Transcript, Verdict, WinCheck};
use crate::posets::SubPoset;

pub use instances::{
    dyadic_intervals, evens_in_divisibility, first_missing_prime_strategy, middle_half_strategy,
    multiples_of,
};
pub use strategies::{pull_odd_strategy, push_odd_strategy, PulledStrategy, PushedStrategy};

type PhiFn<Q, P> = Arc<dyn Fn(&<Q as Poset>::Elem) -> <P as Poset>::Elem + Send + Sync>;
type DominateFn<Q, P> = Arc<
    dyn Fn(&<Q as Poset>::Elem, &<P as Poset>::Elem) -> Result<<Q as Poset>::Elem> + Send + Sync,
>;
type WitnessFn<Q, P> = Arc<dyn Fn(&<P as Poset>::Elem) -> Option<<Q as Poset>::Elem> + Send + Sync>;

/// Width of the enumeration searched when no explicit cofinality witness
/// is available.
pub const DEFAULT_SEARCH_BUDGET: usize = 256;

pub struct DominatingMap<Q: Poset, P: Poset> {
    source: Arc<Q>,
    target: Arc<P>,
    phi: PhiFn<Q, P>,
    dominate_above: DominateFn<Q, P>,
    cofinal_witness: Option<WitnessFn<Q, P>>,
    search_budget: usize,
}

impl<Q: Poset, P: Poset> Clone for DominatingMap<Q, P> {
    fn clone(&self) -> Self {
        DominatingMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&self.target),
            phi: Arc::clone(&self.phi),
            dominate_above: Arc::clone(&self.dominate_above),
            cofinal_witness: self.cofinal_witness.clone(),
            search_budget: self.search_budget,
        }
    }
}

impl<Q: Poset, P: Poset> fmt::Debug for DominatingMap<Q, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DominatingMap")
            .field("source", &self.source.id())
            .field("target", &self.target.id())
            .field("explicit_cofinal_witness", &self.cofinal_witness.is_some())
            .finish()
    }
}

impl<Q: Poset, P: Poset> DominatingMap<Q, P> {
    pub fn new(
        source: Arc<Q>,
        target: Arc<P>,
        phi: impl Fn(&Q::Elem) -> P::Elem + Send + Sync + 'static,
        dominate_above: impl Fn(&Q::Elem, &P::Elem) -> Result<Q::Elem> + Send + Sync + 'static,
    ) -> Self {
        DominatingMap {
            source,
            target,
            phi: Arc::new(phi),
            dominate_above: Arc::new(dominate_above),
            cofinal_witness: None,
            search_budget: DEFAULT_SEARCH_BUDGET,
        }
    }

    /// Supplies cofinality witnesses directly instead of by search.
    pub fn with_cofinal_witness(
        mut self,
        witness: impl Fn(&P::Elem) -> Option<Q::Elem> + Send + Sync + 'static,
    ) -> Self {
        self.cofinal_witness = Some(Arc::new(witness));
        self
    }

    pub fn with_search_budget(mut self, budget: usize) -> Self {
        self.search_budget = budget;
        self
    }

    pub fn source(&self) -> &Q {
        &self.source
    }

    pub fn target(&self) -> &P {
        &self.target
    }

    pub fn phi(&self, q: &Q::Elem) -> P::Elem {
        (self.phi)(q)
    }

    /// Image of a whole transcript.
    pub fn phi_transcript(&self, t: &Transcript<Q::Elem>) -> Transcript<P::Elem> {
        Transcript::new(
            self.target.id(),
            t.seed,
            t.moves.iter().map(|q| self.phi(q)).collect(),
        )
    }

    /// The domination witness, checked: `q <= q'` and `p <= phi(q')`.
    pub fn dominate_above(&self, q: &Q::Elem, p: &P::Elem) -> Result<Q::Elem> {
        let q2 = (self.dominate_above)(q, p)?;
        if !self.source.leq(q, &q2) {
            return Err(Error::WitnessInvalid(format!("{q2:?} is not above {q:?}")));
        }
        if !self.target.leq(p, &self.phi(&q2)) {
            return Err(Error::WitnessInvalid(format!(
                "image of {q2:?} is not above {p:?}"
            )));
        }
        Ok(q2)
    }

    /// Some `q` with `p <= phi(q)`: the explicit witness when it works,
    /// otherwise the first hit in the source enumeration.
    pub fn cofinal_witness(&self, p: &P::Elem) -> Result<Q::Elem> {
        if let Some(w) = &self.cofinal_witness {
            if let Some(q) = w(p).filter(|q| self.target.leq(p, &self.phi(q))) {
                return Ok(q);
            }
        }
        self.source
            .enumerate(self.search_budget)
            .and_then(|qs| qs.into_iter().find(|q| self.target.leq(p, &self.phi(q))))
            .ok_or_else(|| {
                Error::NoCofinalWitness(format!(
                    "no element among the first {} of {} maps above {p:?}",
                    self.search_budget,
                    self.source.id()
                ))
            })
    }
}

impl<P: Poset> DominatingMap<P, P> {
    pub fn identity(poset: Arc<P>) -> Self {
        DominatingMap::new(
            Arc::clone(&poset),
            poset,
            P::Elem::clone,
            |_, p: &P::Elem| Ok(p.clone()),
        )
        .with_cofinal_witness(|p: &P::Elem| Some(p.clone()))
    }
}

/// The inclusion of a cofinal subset `Q` of `P`. `witness_above(p)` must
/// return a member of `Q` above `p`.
pub fn cofinal_inclusion<P: Poset + Clone + 'static>(
    poset: P,
    id: impl Into<String>,
    membership: impl Fn(&P::Elem) -> bool + Send + Sync + 'static,
    witness_above: impl Fn(&P::Elem) -> P::Elem + Send + Sync + 'static,
) -> DominatingMap<SubPoset<P>, P> {
    let membership = Arc::new(membership);
    let witness_above = Arc::new(witness_above);
    let member = Arc::clone(&membership);
    let source = Arc::new(SubPoset::new(poset.clone(), id, move |x: &P::Elem| {
        member(x)
    }));
    let target = Arc::new(poset);
    let (parent, member, above) = (
        Arc::clone(&target),
        Arc::clone(&membership),
        Arc::clone(&witness_above),
    );
    let dominate = move |q: &P::Elem, p: &P::Elem| -> Result<P::Elem> {
        let w = above(p);
        if parent.leq(q, &w) {
            return Ok(w);
        }
        // lift a common upper bound of q and p back into Q
        if let Some(j) = parent.join_witness(q, p) {
            let w = above(&j);
            if parent.leq(q, &w) && parent.leq(p, &w) {
                return Ok(w);
            }
        }
        parent
            .enumerate_above(q, DEFAULT_SEARCH_BUDGET)
            .and_then(|ups| ups.into_iter().find(|z| member(z) && parent.leq(p, z)))
            .ok_or_else(|| Error::NoJoin(format!("no member above both {q:?} and {p:?}")))
    };
    let (member, above) = (membership, witness_above);
    DominatingMap::new(source, target, P::Elem::clone, dominate).with_cofinal_witness(
        move |p: &P::Elem| {
            let w = above(p);
            member(&w).then_some(w)
        },
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `q1 <= q2` but `phi(q1) <= phi(q2)` fails.
    Monotonicity { q1: String, q2: String },
    /// No `q` found with `p <= phi(q)`.
    Cofinality { p: String, reason: String },
    /// The domination witness for `(q, p)` is missing or wrong.
    Domination {
        q: String,
        p: String,
        reason: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Monotonicity { q1, q2 } => {
                write!(f, "monotonicity: {q1} <= {q2} not preserved")
            }
            Violation::Cofinality { p, reason } => write!(f, "cofinality at {p}: {reason}"),
            Violation::Domination { q, p, reason } => {
                write!(f, "domination at ({q}, {p}): {reason}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominatingReport {
    pub trials: usize,
    pub violations: Vec<Violation>,
}

impl DominatingReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `samples` rounds of randomized checks of monotonicity, cofinality and
/// domination over the first `samples` elements of each side.
pub fn check_dominating<Q: Poset, P: Poset>(
    map: &DominatingMap<Q, P>,
    samples: usize,
    seed: u64,
) -> DominatingReport {
    let mut rng = play_rng(seed);
    let pool = samples.max(8);
    let mut report = DominatingReport {
        trials: samples,
        violations: Vec::new(),
    };
    let (Some(qs), Some(ps)) = (map.source.enumerate(pool), map.target.enumerate(pool)) else {
        report.violations.push(Violation::Cofinality {
            p: "-".into(),
            reason: "posets cannot be enumerated".into(),
        });
        return report;
    };
    let show_q = |q: &Q::Elem| map.source.encode(q).to_string();
    let show_p = |p: &P::Elem| map.target.encode(p).to_string();
    for _ in 0..samples {
        if let Some(q1) = qs.choose(&mut rng) {
            let above = map.source.enumerate_above(q1, pool).unwrap_or_default();
            if let Some(q2) = above.choose(&mut rng) {
                if !map.target.leq(&map.phi(q1), &map.phi(q2)) {
                    report.violations.push(Violation::Monotonicity {
                        q1: show_q(q1),
                        q2: show_q(q2),
                    });
                }
            }
        }
        if let Some(p) = ps.choose(&mut rng) {
            if let Err(e) = map.cofinal_witness(p) {
                report.violations.push(Violation::Cofinality {
                    p: show_p(p),
                    reason: e.to_string(),
                });
            }
        }
        if let Some(q) = qs.choose(&mut rng) {
            let above = map
                .target
                .enumerate_above(&map.phi(q), pool)
                .unwrap_or_default();
            if let Some(p) = above.choose(&mut rng) {
                if let Err(e) = map.dominate_above(q, p) {
                    report.violations.push(Violation::Domination {
                        q: show_q(q),
                        p: show_p(p),
                        reason: e.to_string(),
                    });
                }
            }
        }
    }
    report.violations.dedup();
    report
}

/// Judges a `Q`-side play by running a `P`-side check on its image.
pub struct InducedCheck<Q: Poset, P: Poset, C> {
    map: DominatingMap<Q, P>,
    inner: C,
}

impl<Q: Poset, P: Poset, C: WinCheck<P>> InducedCheck<Q, P, C> {
    pub fn new(map: DominatingMap<Q, P>, inner: C) -> Self {
        InducedCheck { map, inner }
    }
}

impl<Q: Poset, P: Poset, C: WinCheck<P>> WinCheck<Q> for InducedCheck<Q, P, C> {
    fn verdict(&self, _poset: &Q, transcript: &Transcript<Q::Elem>, budget: usize) -> Verdict {
        self.inner.verdict(
            self.map.target(),
            &self.map.phi_transcript(transcript),
            budget,
        )
    }

    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }
}
