use std::sync::Arc;

use super::MetricTree;
use crate::error::{Error, Result};
use crate::game::{PlayRng, Poset, Strategy};

/// Odd strategy that walks down a tree: answering Eve's `n`-th move it
/// picks the first child (level `n`) of the current node that has a common
/// upper bound with Eve's move, and plays that bound. Past the last level
/// it repeats Eve's move.
#[derive(Debug, Clone)]
pub struct TreeFollower<E> {
    tree: Arc<MetricTree<E>>,
    traversed: Vec<usize>,
}

pub fn tree_to_odd_strategy<E>(tree: Arc<MetricTree<E>>) -> Result<TreeFollower<E>>
where
    E: Clone + PartialEq + std::fmt::Debug,
{
    if tree.is_empty() {
        return Err(Error::InvalidArgument("cannot follow an empty tree".into()));
    }
    Ok(TreeFollower {
        tree,
        traversed: Vec::new(),
    })
}

impl<E: Clone + PartialEq + std::fmt::Debug> TreeFollower<E> {
    pub fn tree(&self) -> &MetricTree<E> {
        &self.tree
    }

    /// Node indices visited so far, one per level.
    pub fn traversed(&self) -> &[usize] {
        &self.traversed
    }

    pub fn traversed_elements(&self) -> Vec<E> {
        self.tree.elements(&self.traversed)
    }
}

impl<P: Poset + ?Sized> Strategy<P> for TreeFollower<P::Elem> {
    fn respond(&mut self, poset: &P, history: &[P::Elem], _rng: &mut PlayRng) -> Result<P::Elem> {
        let u = history
            .last()
            .ok_or_else(|| Error::InvalidArgument("tree strategy plays for Odd only".into()))?;
        let level = history.len() / 2;
        if level >= self.tree.depth() {
            return Ok(u.clone());
        }
        if self.traversed.len() != level {
            return Err(Error::InvalidArgument(format!(
                "tree strategy is at level {} but the play is at level {level}",
                self.traversed.len()
            )));
        }
        let candidates: Vec<usize> = match self.traversed.last() {
            None => (0..self.tree.level(0).len()).collect(),
            Some(&cur) => self.tree.children(level - 1, cur),
        };
        for c in candidates {
            let a = &self.tree.node(level, c).elem;
            let answer = if poset.leq(a, u) {
                Some(u.clone())
            } else {
                poset.join_witness(u, a)
            };
            if let Some(v) = answer {
                self.traversed.push(c);
                return Ok(v);
            }
        }
        Err(Error::NoCompatibleChild { level })
    }

    fn reset(&mut self) {
        self.traversed.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{ideal_membership, run_play, MarkovFn, RandomEve};
    use crate::posets::{BinaryStrings, Divisibility};
    use crate::tree::{test_trees::complete, TreeNode};

    fn divisor_chain() -> Arc<MetricTree<u128>> {
        Arc::new(
            MetricTree::new(vec![
                vec![TreeNode::root(2)],
                vec![TreeNode::child(6, 0)],
                vec![TreeNode::child(30, 0)],
            ])
            .unwrap(),
        )
    }

    #[test]
    fn lcm_answer() {
        let mut odd = tree_to_odd_strategy(divisor_chain()).unwrap();
        let mut eve =
            MarkovFn::new(|_: &Divisibility, last: Option<&u128>, _| Ok(last.map_or(5, |x| *x)));
        let t = run_play(&Divisibility, &mut eve, &mut odd, 2, 0).unwrap();
        assert_eq!(t.moves, vec![5, 10]);
    }

    #[test]
    fn eve_above_child_is_kept() {
        let mut odd = tree_to_odd_strategy(divisor_chain()).unwrap();
        let mut eve =
            MarkovFn::new(|_: &Divisibility, last: Option<&u128>, _| Ok(last.map_or(4, |x| *x)));
        let t = run_play(&Divisibility, &mut eve, &mut odd, 2, 0).unwrap();
        assert_eq!(t.moves, vec![4, 4]);
    }

    #[test]
    fn transcript_ideal_contains_branch() {
        for seed in 0..20 {
            let mut odd = tree_to_odd_strategy(divisor_chain()).unwrap();
            let t = run_play(&Divisibility, &mut RandomEve::new(12), &mut odd, 7, seed).unwrap();
            let ideal = t.ideal();
            assert_eq!(odd.traversed().len(), 3);
            for a in odd.traversed_elements() {
                assert!(
                    ideal_membership(&Divisibility, &ideal, &a),
                    "seed {seed}: {a}"
                );
            }
        }
    }

    #[test]
    fn incompatible_eve_move_is_reported() {
        let tree = Arc::new(complete(2, 1));
        let mut odd = tree_to_odd_strategy(tree).unwrap();
        let mut eve = MarkovFn::new(|_: &BinaryStrings, last: Option<&Vec<u8>>, _| {
            Ok(last.cloned().unwrap_or_else(|| vec![1]))
        });
        let err = run_play(&BinaryStrings, &mut eve, &mut odd, 2, 0).unwrap_err();
        assert_eq!(err, Error::NoCompatibleChild { level: 0 });
    }

    #[test]
    fn empty_tree_is_rejected() {
        assert!(tree_to_odd_strategy(Arc::new(MetricTree::<u128>::empty())).is_err());
    }
}
