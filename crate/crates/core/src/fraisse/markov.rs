//! Odd's strategy on a class with a limit: keep an embedding of the
//! current structure into the limit, extend it over Eve's new vertices,
//! and answer with a structure whose image covers the next prefix.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::extension::{missing_extensions, realized, ExtensionFailure};
use super::limits::{LimitMap, LimitPresentation};
use super::{FraisseClass, StructurePoset};
use crate::error::{Error, Result};
use crate::game::{PlayRng, Poset, Strategy};
use crate::structs::{FinStructure, Vertex};

/// Extra witness passes over the whole answer, after the exact first pass.
const SATURATION_PASSES: usize = 4;

/// Keeps `f_n` from the current structure into the limit.
///
/// On Eve's move `V` at index `n` it realizes the new vertices of `V` one
/// at a time in id order, adds fresh ids for the limit vertices
/// `0..=n` not yet in the range, and then (for classes with a positive
/// [`FraisseClass::saturation_bound`]) adds a witness for every missing
/// one-point extension over small bases of the structure built so far.
/// Those witnesses only serve older bases, so this first pass is exact;
/// a few more passes then serve the witnesses themselves. The answer is
/// the structure the limit induces on the extended map.
///
/// The recorded embedding is state beyond the last move and the round
/// number, so [`Strategy::is_markov`] stays false.
pub struct OddMarkov<L: LimitPresentation> {
    class: Arc<dyn FraisseClass>,
    limit: L,
    current: LimitMap<L::Vertex>,
    recorded: Vec<LimitMap<L::Vertex>>,
    answered: Option<FinStructure>,
}

pub fn odd_markov_strategy<L: LimitPresentation>(
    class: Arc<dyn FraisseClass>,
    limit: L,
) -> OddMarkov<L> {
    OddMarkov {
        class,
        limit,
        current: LimitMap::new(),
        recorded: Vec::new(),
        answered: None,
    }
}

impl<L: LimitPresentation> OddMarkov<L> {
    pub fn limit(&self) -> &L {
        &self.limit
    }

    /// `f_1, f_3, ...`: the embedding behind each of Odd's answers.
    pub fn recorded(&self) -> &[LimitMap<L::Vertex>] {
        &self.recorded
    }

    fn add(&mut self, b: &FinStructure, x: Vertex) -> Result<()> {
        self.current = self.limit.realize(&self.current, b, x)?;
        Ok(())
    }

    fn add_witness(
        &mut self,
        m: &FinStructure,
        fail: &ExtensionFailure,
        rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let x = m.next_id();
        let local = fail.extension.relabel(
            &fail
                .extension
                .universe()
                .iter()
                .map(|&v| (v, if fail.base.contains(&v) { v } else { x }))
                .collect(),
        )?;
        let b = self.class.complete_extension(m, &local, x, rng)?;
        self.add(&b, x)?;
        Ok(b)
    }

    fn answer(&mut self, eve: &FinStructure, n: usize, rng: &mut PlayRng) -> Result<FinStructure> {
        // Eve's new vertices, in id order
        let mut m = eve.induced(&self.current.keys().copied().collect());
        for x in eve.vertices() {
            if !self.current.contains_key(&x) {
                m.add_vertex(x);
                m = eve.induced(m.universe());
                self.add(&m, x)?;
            }
        }
        // cover the limit's first n + 1 vertices
        let range: BTreeSet<L::Vertex> = self.current.values().cloned().collect();
        let mut next = m.next_id();
        for i in 0..=n {
            let u = self.limit.vertex(i);
            if !range.contains(&u) {
                self.current.insert(next, u);
                next += 1;
            }
        }
        m = self.limit.induced(&self.current);
        // witnesses for missing one-point extensions: first over the
        // vertices so far, then over everything including new witnesses
        let bound = self.class.saturation_bound();
        if bound > 0 {
            let pool = m.universe().clone();
            let mut missing =
                missing_extensions(self.class.as_ref(), &m, bound, Some(&pool), usize::MAX);
            for _ in 0..=SATURATION_PASSES {
                if missing.is_empty() {
                    break;
                }
                for fail in missing {
                    if realized(&m, &fail.base, &fail.extension) {
                        continue;
                    }
                    m = self.add_witness(&m, &fail, rng)?;
                }
                missing = missing_extensions(self.class.as_ref(), &m, bound, None, usize::MAX);
            }
        }
        debug_assert!(self.limit.is_embedding(&self.current, &m));
        Ok(m)
    }
}

impl<L: LimitPresentation> Strategy<StructurePoset> for OddMarkov<L> {
    fn respond(
        &mut self,
        poset: &StructurePoset,
        history: &[FinStructure],
        rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let eve = history
            .last()
            .ok_or_else(|| Error::InvalidArgument("Odd never opens the game".into()))?;
        let in_sync = match (&self.answered, history.len()) {
            (None, 1) => true,
            (Some(prev), len) => len >= 2 && history[len - 2] == *prev,
            _ => false,
        };
        if !in_sync {
            return Err(Error::InvalidArgument(
                "history does not continue this strategy's last answer (reset between plays)"
                    .into(),
            ));
        }
        if !poset.class().contains(eve) {
            return Err(Error::InvalidStructure(format!(
                "Eve's move is not in {}",
                poset.id()
            )));
        }
        let out = self.answer(eve, history.len() - 1, rng)?;
        self.recorded.push(self.current.clone());
        self.answered = Some(out.clone());
        Ok(out)
    }

    fn reset(&mut self) {
        self.current.clear();
        self.recorded.clear();
        self.answered = None;
    }
}
