//! Eve's strategy for embedding a prescribed chain `X_0 ⊆ X_1 ⊆ ...`
//! into the structure built by the play.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;

use super::{FraisseClass, StructurePoset};
use crate::error::{Error, Result};
use crate::game::{play_rng, PlayRng, Strategy};
use crate::structs::{Embedding, FinStructure, Vertex};

/// An increasing chain of structures, each induced in the next.
pub trait TargetChain: Send + Sync {
    fn name(&self) -> String;

    fn chain(&self, n: usize) -> FinStructure;
}

/// `X_n` = the path on `n + 1` vertices `0..=n`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GrowingPaths;

impl TargetChain for GrowingPaths {
    fn name(&self) -> String {
        "growing_paths".into()
    }

    fn chain(&self, n: usize) -> FinStructure {
        FinStructure::path(n as u32 + 1)
    }
}

/// Induced subgraphs on `0..=min(n, size - 1)` of one seeded random graph.
#[derive(Debug, Clone)]
pub struct RandomGraphChain {
    seed: u64,
    full: FinStructure,
}

impl RandomGraphChain {
    pub fn new(seed: u64, size: u32) -> RandomGraphChain {
        let mut rng = play_rng(seed);
        let mut full = FinStructure::empty_graph(size);
        for a in 0..size {
            for b in a + 1..size {
                if rng.gen_bool(0.5) {
                    full.add_edge(a, b).expect("distinct vertices");
                }
            }
        }
        RandomGraphChain { seed, full }
    }
}

impl TargetChain for RandomGraphChain {
    fn name(&self) -> String {
        format!("random_graph:{}:{}", self.seed, self.full.len())
    }

    fn chain(&self, n: usize) -> FinStructure {
        let top = (n + 1).min(self.full.len()) as Vertex;
        self.full.induced(&(0..top).collect())
    }
}

/// `X_n = X_0` for every `n`.
#[derive(Debug, Clone)]
pub struct ConstantChain(pub FinStructure);

impl TargetChain for ConstantChain {
    fn name(&self) -> String {
        "constant".into()
    }

    fn chain(&self, _n: usize) -> FinStructure {
        self.0.clone()
    }
}

/// Eve opens with `X_0` and records `e_0 = id`. Against Odd's answer
/// `U_{2n-1}` she amalgamates `e_{n-1}: X_{n-1} -> U_{2n-1}` with the
/// inclusion `X_{n-1} ⊆ X_n`; the amalgam extends `U_{2n-1}` (same ids)
/// and is her next move, and the second leg is `e_n`.
pub struct EveUniversality {
    class: Arc<dyn FraisseClass>,
    target: Arc<dyn TargetChain>,
    recorded: Vec<Embedding>,
}

impl EveUniversality {
    pub fn new(class: Arc<dyn FraisseClass>, target: Arc<dyn TargetChain>) -> EveUniversality {
        EveUniversality {
            class,
            target,
            recorded: Vec::new(),
        }
    }

    /// `e_0, e_1, ...`, one per Eve move.
    pub fn recorded(&self) -> &[Embedding] {
        &self.recorded
    }

    /// The last `e_n`, an embedding of `X_n` for the largest `n` Eve has
    /// played, i.e. `n = ceil(r / 2) - 1` after `r` moves.
    pub fn embedding(&self) -> Option<(usize, &Embedding)> {
        self.recorded.last().map(|e| (self.recorded.len() - 1, e))
    }
}

impl Strategy<StructurePoset> for EveUniversality {
    fn respond(
        &mut self,
        _poset: &StructurePoset,
        history: &[FinStructure],
        _rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let n = history.len() / 2;
        if self.recorded.len() != n {
            return Err(Error::InvalidArgument(
                "history does not continue this strategy's play (reset between plays)".into(),
            ));
        }
        let Some(odd) = history.last() else {
            let x0 = self.target.chain(0);
            self.recorded.push(Embedding::identity(&x0));
            return Ok(x0);
        };
        let prev = self.target.chain(n - 1);
        let next = self.target.chain(n);
        if !next.universe().is_superset(prev.universe()) || next.induced(prev.universe()) != prev {
            return Err(Error::InvalidStructure(format!(
                "target chain {} is not increasing at {n}",
                self.target.name()
            )));
        }
        let incl = Embedding::identity(&prev);
        let a = self
            .class
            .amalgamate(&prev, odd, &next, &self.recorded[n - 1], &incl)?;
        debug_assert!(a.f2.map.iter().all(|(k, v)| k == v));
        let keep: BTreeSet<Vertex> = odd.universe().clone();
        debug_assert!(a.v.induced(&keep) == *odd);
        self.recorded.push(a.g2);
        Ok(a.v)
    }

    fn reset(&mut self) {
        self.recorded.clear();
    }
}
