//! Finite-depth metric trees of poset elements.
//!
//! Levels are antichains; every node below level 0 has one parent on the
//! previous level. Branches are root-to-leaf paths, and two branches are at
//! distance `1/(n+1)` when the deepest level they share is `n`.

mod antichain;
mod follow;

use std::fmt::Write as _;

use num_rational::Ratio;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{compatible, Poset};

pub use antichain::{replay_consistent, replay_response, strategy_to_antichain_tree};
pub use follow::{tree_to_odd_strategy, TreeFollower};

pub type Distance = Ratio<u64>;

#[derive(Debug, Clone, PartialEq)]
pub struct TreeNode<E> {
    pub elem: E,
    /// Index into the previous level.
    pub parent: Option<usize>,
    /// The Eve move this node answered, when the tree came from a strategy.
    pub eve_move: Option<E>,
}

impl<E> TreeNode<E> {
    pub fn root(elem: E) -> Self {
        TreeNode {
            elem,
            parent: None,
            eve_move: None,
        }
    }

    pub fn child(elem: E, parent: usize) -> Self {
        TreeNode {
            elem,
            parent: Some(parent),
            eve_move: None,
        }
    }
}

/// Root-to-leaf path, one node index per level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricTree<E> {
    levels: Vec<Vec<TreeNode<E>>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> MetricTree<E> {
    pub fn empty() -> Self {
        MetricTree { levels: Vec::new() }
    }

    /// Checks the parent links; order-theoretic conditions are checked
    /// separately by [`MetricTree::verify`].
    pub fn new(levels: Vec<Vec<TreeNode<E>>>) -> Result<Self> {
        for (n, level) in levels.iter().enumerate() {
            if level.is_empty() {
                return Err(Error::EmptyLevel {
                    level: n,
                    budget: 0,
                });
            }
            for node in level {
                match (n, node.parent) {
                    (0, None) => {}
                    (0, Some(_)) => {
                        return Err(Error::NotABranch("level-0 node with a parent".into()))
                    }
                    (_, Some(p)) if p < levels[n - 1].len() => {}
                    _ => {
                        return Err(Error::NotABranch(format!(
                            "level-{n} node without a valid parent"
                        )))
                    }
                }
            }
        }
        Ok(MetricTree { levels })
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Vec<TreeNode<E>>] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[TreeNode<E>] {
        &self.levels[n]
    }

    pub fn node(&self, level: usize, index: usize) -> &TreeNode<E> {
        &self.levels[level][index]
    }

    pub fn node_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn children(&self, level: usize, index: usize) -> Vec<usize> {
        self.levels
            .get(level + 1)
            .map(|next| {
                next.iter()
                    .enumerate()
                    .filter(|(_, c)| c.parent == Some(index))
                    .map(|(i, _)| i)
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn is_leaf(&self, level: usize, index: usize) -> bool {
        self.children(level, index).is_empty()
    }

    /// Node indices from level 0 down to `(level, index)`.
    pub fn path_to(&self, level: usize, index: usize) -> Vec<usize> {
        let mut path = vec![index];
        let mut cur = index;
        for n in (1..=level).rev() {
            cur = self.levels[n][cur]
                .parent
                .expect("non-root node has a parent");
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Elements along a path.
    pub fn elements(&self, path: &[usize]) -> Vec<E> {
        path.iter()
            .enumerate()
            .map(|(n, &i)| self.levels[n][i].elem.clone())
            .collect()
    }

    /// The partial play `[eve_0, a_0, eve_1, a_1, ...]` leading to a node,
    /// when Eve's moves were recorded.
    pub fn history(&self, level: usize, index: usize) -> Option<Vec<E>> {
        let mut out = Vec::with_capacity(2 * (level + 1));
        for (n, &i) in self.path_to(level, index).iter().enumerate() {
            let node = &self.levels[n][i];
            out.push(node.eve_move.clone()?);
            out.push(node.elem.clone());
        }
        Some(out)
    }

    pub fn branches(&self) -> Vec<Branch> {
        let mut out = Vec::new();
        for (n, level) in self.levels.iter().enumerate() {
            for i in 0..level.len() {
                if self.is_leaf(n, i) {
                    out.push(Branch {
                        path: self.path_to(n, i),
                    });
                }
            }
        }
        out.sort();
        out
    }

    pub fn check_branch(&self, b: &Branch) -> Result<()> {
        let Some((&last, _)) = b.path.split_last() else {
            return Err(Error::NotABranch("empty path".into()));
        };
        for (n, &i) in b.path.iter().enumerate() {
            let level = self
                .levels
                .get(n)
                .ok_or_else(|| Error::NotABranch(format!("path longer than the tree ({n})")))?;
            let node = level
                .get(i)
                .ok_or_else(|| Error::NotABranch(format!("no node {i} on level {n}")))?;
            if n > 0 && node.parent != Some(b.path[n - 1]) {
                return Err(Error::NotABranch(format!(
                    "node {i} on level {n} is not a child of the previous node"
                )));
            }
        }
        if !self.is_leaf(b.path.len() - 1, last) {
            return Err(Error::NotABranch("path does not end at a leaf".into()));
        }
        Ok(())
    }

    /// `0` for equal branches, `1/(n+1)` when `n` is the deepest shared
    /// level, `2` when no node is shared.
    pub fn branch_distance(&self, x: &Branch, y: &Branch) -> Result<Distance> {
        self.check_branch(x)?;
        self.check_branch(y)?;
        Ok(shared_level_distance(&x.path, &y.path))
    }

    /// Pairwise incompatibility, budget-maximality and strict parent chains.
    pub fn verify<P: Poset<Elem = E> + ?Sized>(&self, poset: &P, budget: usize) -> TreeReport {
        let mut report = TreeReport {
            level_sizes: self.levels.iter().map(Vec::len).collect(),
            ..TreeReport::default()
        };
        for (n, level) in self.levels.iter().enumerate() {
            let mut compatible_pairs = 0;
            for (i, a) in level.iter().enumerate() {
                for b in &level[i + 1..] {
                    if compatible(poset, &a.elem, &b.elem, budget) {
                        compatible_pairs += 1;
                    }
                }
            }
            report.compatible_pairs.push(compatible_pairs);

            let covered = |cands: &[E], members: &[&E]| {
                cands
                    .iter()
                    .all(|c| members.iter().any(|m| compatible(poset, c, m, budget)))
            };
            let maximal = if n == 0 {
                let members: Vec<&E> = level.iter().map(|x| &x.elem).collect();
                poset
                    .enumerate(budget)
                    .is_some_and(|c| covered(&c, &members))
            } else {
                (0..self.levels[n - 1].len()).all(|p| {
                    let parent = &self.levels[n - 1][p].elem;
                    let members: Vec<&E> = level
                        .iter()
                        .filter(|x| x.parent == Some(p))
                        .map(|x| &x.elem)
                        .collect();
                    members.is_empty()
                        || poset
                            .enumerate_above(parent, budget)
                            .is_some_and(|c| covered(&c, &members))
                })
            };
            report.budget_maximal.push(maximal);
            if n > 0 {
                for node in level {
                    let parent =
                        &self.levels[n - 1][node.parent.expect("checked on construction")].elem;
                    if !poset.leq(parent, &node.elem) || poset.leq(&node.elem, parent) {
                        report.strict_chains = false;
                    }
                }
            }
        }
        report
    }

    /// Graphviz rendering, one rank per level.
    pub fn to_dot<P: Poset<Elem = E> + ?Sized>(&self, poset: &P) -> String {
        let mut out = String::from("digraph tree {\n  rankdir=TB;\n");
        for (n, level) in self.levels.iter().enumerate() {
            out.push_str("  { rank=same;");
            for (i, node) in level.iter().enumerate() {
                let label = match poset.encode(&node.elem) {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                let _ = write!(out, " n{n}_{i} [label=\"{}\"];", label.replace('"', "\\\""));
            }
            out.push_str(" }\n");
        }
        for (n, level) in self.levels.iter().enumerate().skip(1) {
            for (i, node) in level.iter().enumerate() {
                let p = node.parent.expect("checked on construction");
                let _ = writeln!(out, "  n{}_{p} -> n{n}_{i};", n - 1);
            }
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn shared_level_distance(x: &[usize], y: &[usize]) -> Distance {
    if x == y {
        return Distance::from_integer(0);
    }
    let shared = x.iter().zip(y).take_while(|(a, b)| a == b).count();
    if shared == 0 {
        Distance::from_integer(2)
    } else {
        // deepest shared level is shared - 1
        Distance::new(1, shared as u64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub level_sizes: Vec<usize>,
    /// Number of compatible same-level pairs, per level (0 = antichain).
    pub compatible_pairs: Vec<usize>,
    pub budget_maximal: Vec<bool>,
    pub strict_chains: bool,
}

impl Default for TreeReport {
    fn default() -> Self {
        TreeReport {
            level_sizes: Vec::new(),
            compatible_pairs: Vec::new(),
            budget_maximal: Vec::new(),
            strict_chains: true,
        }
    }
}

impl TreeReport {
    pub fn is_ok(&self) -> bool {
        self.strict_chains
            && self.compatible_pairs.iter().all(|&c| c == 0)
            && self.budget_maximal.iter().all(|&m| m)
    }
}
