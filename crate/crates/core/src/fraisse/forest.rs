//! Acyclic graphs: Odd grows every component until it holds a large
//! complete tree and keeps adding components.

use std::collections::BTreeSet;

use super::StructurePoset;
use crate::error::{Error, Result};
use crate::game::{PlayRng, Strategy};
use crate::structs::{FinStructure, Vertex};

/// The complete `branching`-ary tree of depth `depth` (edges from root to
/// leaf), breadth-first on ids `first..`.
pub fn complete_tree(branching: usize, depth: usize, first: Vertex) -> FinStructure {
    let mut t = FinStructure::graph([first], &[]).expect("single vertex");
    let mut level = vec![first];
    let mut next = first + 1;
    for _ in 0..depth {
        let mut below = Vec::new();
        for &p in &level {
            for _ in 0..branching {
                t.add_vertex(next);
                t.add_edge(p, next).expect("fresh vertex");
                below.push(next);
                next += 1;
            }
        }
        level = below;
    }
    t
}

/// Whether the subtree hanging from `v` (away from `parent`) contains a
/// complete `b`-ary tree of depth `d` rooted at `v`. Subtrees of distinct
/// children are disjoint in a forest, so counting good children is exact.
fn hosts(g: &FinStructure, v: Vertex, parent: Option<Vertex>, b: usize, d: usize) -> bool {
    if d == 0 {
        return true;
    }
    g.neighbors(v)
        .into_iter()
        .filter(|&u| Some(u) != parent && hosts(g, u, Some(v), b, d - 1))
        .take(b)
        .count()
        == b
}

/// A root in `component` of a complete `b`-ary depth-`d` subtree, if any.
/// `g` must be acyclic.
pub fn contains_complete_tree(
    g: &FinStructure,
    component: &[Vertex],
    b: usize,
    d: usize,
) -> Option<Vertex> {
    component.iter().copied().find(|&v| hosts(g, v, None, b, d))
}

/// Some vertex on a cycle of `g`, found as the endpoint of a back edge.
fn cycle_vertex(g: &FinStructure) -> Option<Vertex> {
    let mut seen = BTreeSet::new();
    for &start in g.universe() {
        if !seen.insert(start) {
            continue;
        }
        let mut stack = vec![(start, None)];
        while let Some((v, parent)) = stack.pop() {
            for u in g.neighbors(v) {
                if Some(u) == parent {
                    continue;
                }
                if !seen.insert(u) {
                    return Some(u);
                }
                stack.push((u, Some(v)));
            }
        }
    }
    None
}

/// Stage `n` is Odd's `n`-th answer (from 1). The tree size is capped at
/// branching and depth 3, so from stage 3 on every component holds a
/// complete 3-ary tree of depth 3.
pub const FOREST_TREE_CAP: usize = 3;

/// Odd's strategy on forests: at stage `n`, with `k = min(n, 3)`, every
/// component of Eve's move that lacks a complete `k`-ary depth-`k` subtree
/// gets one attached (rooted at a fresh vertex joined to the component's
/// least vertex), and fresh copies of that tree are added until there are
/// at least `n` components.
#[derive(Debug, Clone, Copy, Default)]
pub struct ForestOdd;

pub fn forest_odd_strategy() -> ForestOdd {
    ForestOdd
}

impl ForestOdd {
    pub fn answer(&self, eve: &FinStructure, stage: usize) -> Result<FinStructure> {
        if let Some(v) = cycle_vertex(eve) {
            return Err(Error::CycleDetected(v));
        }
        let k = stage.min(FOREST_TREE_CAP);
        let mut m = eve.clone();
        let add_tree = |m: &mut FinStructure| {
            let t = complete_tree(k, k, m.next_id());
            for &v in t.universe() {
                m.add_vertex(v);
            }
            for (a, b) in t.edges() {
                m.add_edge(a, b).expect("fresh vertices");
            }
            t.vertices()[0]
        };
        for comp in eve.components() {
            if contains_complete_tree(eve, &comp, k, k).is_none() {
                let root = add_tree(&mut m);
                m.add_edge(comp[0], root)?;
            }
        }
        let mut count = m.components().len();
        while count < stage {
            add_tree(&mut m);
            count += 1;
        }
        Ok(m)
    }
}

impl Strategy<StructurePoset> for ForestOdd {
    fn respond(
        &mut self,
        _poset: &StructurePoset,
        history: &[FinStructure],
        _rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let eve = history
            .last()
            .ok_or_else(|| Error::InvalidArgument("Odd never opens the game".into()))?;
        self.answer(eve, history.len() / 2 + 1)
    }

    fn is_markov(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::{Forests, FraisseClass, RandomStructureEve};
    use crate::game::{run_play, Poset};
    use crate::structs::back_and_forth_equiv;
    use std::sync::Arc;

    #[test]
    fn complete_tree_sizes() {
        assert_eq!(complete_tree(3, 3, 0).len(), 40);
        assert_eq!(complete_tree(1, 1, 5).edges(), vec![(5, 6)]);
        assert_eq!(complete_tree(2, 0, 0).len(), 1);
    }

    #[test]
    fn subtree_search() {
        let t = complete_tree(2, 2, 0);
        let all = t.vertices();
        assert_eq!(contains_complete_tree(&t, &all, 2, 2), Some(0));
        // an inner vertex with its parent and two children is a 3-star
        assert_eq!(contains_complete_tree(&t, &all, 3, 1), Some(1));
        assert_eq!(contains_complete_tree(&t, &all, 3, 2), None);
        assert!(contains_complete_tree(&t, &all, 2, 3).is_none());
        let p = FinStructure::path(5);
        // the middle of P5 roots a 2-ary depth-2 tree? no: each side is a path
        assert_eq!(contains_complete_tree(&p, &p.vertices(), 2, 2), None);
        assert_eq!(contains_complete_tree(&p, &p.vertices(), 2, 1), Some(1));
    }

    #[test]
    fn stage_one_single_edge() {
        let e = FinStructure::path(2);
        let out = ForestOdd.answer(&e, 1).unwrap();
        assert_eq!(out, e);
    }

    #[test]
    fn stage_three_grows_everything() {
        let g = FinStructure::graph(0..3, &[(0, 1)]).unwrap();
        let out = ForestOdd.answer(&g, 3).unwrap();
        assert!(out.is_acyclic());
        let comps = out.components();
        assert!(comps.len() >= 3);
        for c in &comps {
            assert!(contains_complete_tree(&out, c, 3, 3).is_some());
        }
        assert_eq!(out.induced(g.universe()), g);
    }

    #[test]
    fn cycles_are_rejected() {
        assert!(matches!(
            ForestOdd.answer(&FinStructure::cycle(4), 1),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn plays_agree_at_depth_two() {
        let class: Arc<dyn FraisseClass> = Arc::new(Forests);
        let p = StructurePoset::new(Arc::clone(&class));
        let finals: Vec<FinStructure> = [1u64, 2]
            .iter()
            .map(|&seed| {
                let mut eve = RandomStructureEve::new(Arc::clone(&class), 2);
                let t = run_play(&p, &mut eve, &mut ForestOdd, 16, seed).unwrap();
                assert!(t.moves.windows(2).all(|w| p.leq(&w[0], &w[1])));
                t.last().unwrap().clone()
            })
            .collect();
        assert!(finals.iter().all(|f| Forests.contains(f)));
        assert!(back_and_forth_equiv(&finals[0], &finals[1], 2));
    }
}
