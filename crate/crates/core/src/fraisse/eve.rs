use std::sync::Arc;

use rand::Rng;

use super::{FraisseClass, StructurePoset};
use crate::error::Result;
use crate::game::{PlayRng, Strategy};
use crate::structs::FinStructure;

/// Eve adds between zero and `max_new` random vertices to the last move,
/// staying inside the class. This is the default adversary of the
/// property suites.
#[derive(Debug, Clone)]
pub struct RandomStructureEve {
    class: Arc<dyn FraisseClass>,
    max_new: usize,
}

impl RandomStructureEve {
    pub fn new(class: Arc<dyn FraisseClass>, max_new: usize) -> RandomStructureEve {
        RandomStructureEve { class, max_new }
    }
}

impl Strategy<StructurePoset> for RandomStructureEve {
    fn respond(
        &mut self,
        _poset: &StructurePoset,
        history: &[FinStructure],
        rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let mut m = history
            .last()
            .cloned()
            .unwrap_or_else(|| FinStructure::new(self.class.signature()));
        for _ in 0..rng.gen_range(0..=self.max_new) {
            m = self.class.random_extension(&m, m.next_id(), rng);
        }
        Ok(m)
    }

    fn is_markov(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{Forests, Graphs};
    use crate::game::{play_rng, Echo, Poset};

    #[test]
    fn moves_extend_and_stay_in_class() {
        for class in [Arc::new(Graphs) as Arc<dyn FraisseClass>, Arc::new(Forests)] {
            let p = StructurePoset::new(Arc::clone(&class));
            let mut eve = RandomStructureEve::new(Arc::clone(&class), 3);
            let t = crate::game::run_play(&p, &mut eve, &mut Echo, 20, 8).unwrap();
            assert!(t.moves.iter().all(|m| class.contains(m)));
            assert!(t.moves.windows(2).all(|w| p.leq(&w[0], &w[1])));
        }
        let mut eve = RandomStructureEve::new(Arc::new(Graphs), 0);
        let p = StructurePoset::new(Arc::new(Graphs));
        assert!(eve.respond(&p, &[], &mut play_rng(0)).unwrap().is_empty());
    }
}
