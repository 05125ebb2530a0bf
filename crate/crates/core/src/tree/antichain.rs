use super::{MetricTree, TreeNode};
use crate::error::{Error, Result};
use crate::game::{compatible, play_rng, Player, Poset, Strategy};

/// Seed of the random source handed to Odd while replaying partial plays.
const REPLAY_SEED: u64 = 0;

/// Odd's answer to `history` (which ends with an Eve move), obtained by
/// resetting the strategy and feeding it every earlier prefix first so
/// that stateful strategies see a whole play.
pub fn replay_response<P: Poset + ?Sized>(
    poset: &P,
    odd: &mut dyn Strategy<P>,
    history: &[P::Elem],
) -> Result<P::Elem> {
    if history.len() % 2 == 0 {
        return Err(Error::InvalidArgument(
            "replayed history must end with an Eve move".into(),
        ));
    }
    odd.reset();
    let mut rng = play_rng(REPLAY_SEED);
    for i in (1..history.len()).step_by(2) {
        odd.respond(poset, &history[..i], &mut rng)?;
    }
    let answer = odd.respond(poset, history, &mut rng)?;
    if !poset.leq(history.last().expect("nonempty"), &answer) {
        return Err(Error::StrategyViolation {
            player: Player::Odd,
            index: history.len(),
        });
    }
    Ok(answer)
}

/// Keeps a candidate iff it is incompatible with everything kept before it.
fn greedy_antichain<P: Poset + ?Sized>(
    poset: &P,
    candidates: Vec<(P::Elem, P::Elem)>,
    budget: usize,
) -> Vec<(P::Elem, P::Elem)> {
    let mut kept: Vec<(P::Elem, P::Elem)> = Vec::new();
    for (eve, answer) in candidates {
        if kept
            .iter()
            .all(|(_, k)| !compatible(poset, k, &answer, budget))
        {
            kept.push((eve, answer));
        }
    }
    kept
}

/// Builds `depth` levels of Odd's answers. Level 0 answers the first
/// `budget` openings; the children of a node `a` answer the first `budget`
/// Eve continuations above `a`. Answers equal to the parent are dropped,
/// and each sibling group is thinned to a greedy antichain.
pub fn strategy_to_antichain_tree<P: Poset + ?Sized>(
    poset: &P,
    odd: &mut dyn Strategy<P>,
    depth: usize,
    budget: usize,
) -> Result<MetricTree<P::Elem>> {
    if depth == 0 {
        return Ok(MetricTree::empty());
    }
    let openings = poset
        .enumerate(budget)
        .ok_or_else(|| Error::InvalidArgument(format!("poset {} cannot enumerate", poset.id())))?;
    let mut candidates = Vec::with_capacity(openings.len());
    for e in openings {
        let answer = replay_response(poset, odd, std::slice::from_ref(&e))?;
        candidates.push((e, answer));
    }
    let level0: Vec<TreeNode<P::Elem>> = greedy_antichain(poset, candidates, budget)
        .into_iter()
        .map(|(eve, elem)| TreeNode {
            elem,
            parent: None,
            eve_move: Some(eve),
        })
        .collect();
    if level0.is_empty() {
        return Err(Error::EmptyLevel { level: 0, budget });
    }
    let mut levels = vec![level0];

    for n in 1..depth {
        let mut next = Vec::new();
        let prev = &levels[n - 1];
        for (p, parent) in prev.iter().enumerate() {
            let mut history = Vec::with_capacity(2 * n + 1);
            collect_history(&levels, n - 1, p, &mut history);
            let continuations = poset.enumerate_above(&parent.elem, budget).ok_or_else(|| {
                Error::InvalidArgument(format!("poset {} cannot enumerate", poset.id()))
            })?;
            let mut candidates = Vec::new();
            for c in continuations {
                history.push(c.clone());
                let answer = replay_response(poset, odd, &history)?;
                history.pop();
                if !poset.leq(&answer, &parent.elem) {
                    candidates.push((c, answer));
                }
            }
            let children = greedy_antichain(poset, candidates, budget);
            if children.is_empty() {
                return Err(Error::EmptyLevel { level: n, budget });
            }
            next.extend(children.into_iter().map(|(eve, elem)| TreeNode {
                elem,
                parent: Some(p),
                eve_move: Some(eve),
            }));
        }
        levels.push(next);
    }
    MetricTree::new(levels)
}

fn collect_history<E: Clone>(
    levels: &[Vec<TreeNode<E>>],
    level: usize,
    index: usize,
    out: &mut Vec<E>,
) {
    let node = &levels[level][index];
    if let Some(p) = node.parent {
        collect_history(levels, level - 1, p, out);
    }
    out.push(node.eve_move.clone().expect("built from a strategy"));
    out.push(node.elem.clone());
}

/// Replays every branch and checks that `odd` reproduces each of its moves.
pub fn replay_consistent<P: Poset + ?Sized>(
    tree: &MetricTree<P::Elem>,
    poset: &P,
    odd: &mut dyn Strategy<P>,
) -> Result<bool> {
    for branch in tree.branches() {
        let level = branch.path.len() - 1;
        let history = tree
            .history(level, *branch.path.last().expect("nonempty"))
            .ok_or_else(|| Error::InvalidArgument("tree has no recorded Eve moves".into()))?;
        odd.reset();
        let mut rng = play_rng(REPLAY_SEED);
        for i in (1..history.len()).step_by(2) {
            if odd.respond(poset, &history[..i], &mut rng)? != history[i] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
