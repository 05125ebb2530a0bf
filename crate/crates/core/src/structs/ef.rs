use std::collections::{HashMap, HashSet};

use super::compiled::Compiled;
use super::FinStructure;
use crate::batch;

struct Game<'a> {
    ca: &'a Compiled,
    cb: &'a Compiled,
    memo: HashMap<(Vec<(usize, usize)>, usize), bool>,
}

impl Game<'_> {
    /// Duplicator wins `rounds` more rounds from the position `xs -> ys`.
    fn duplicator_wins(&mut self, xs: &mut Vec<usize>, ys: &mut Vec<usize>, rounds: usize) -> bool {
        if rounds == 0 {
            return true;
        }
        if rounds == 1 {
            return self.last_round(xs, ys);
        }
        let mut key: Vec<(usize, usize)> = xs.iter().copied().zip(ys.iter().copied()).collect();
        key.sort_unstable();
        key.dedup();
        if let Some(&known) = self.memo.get(&(key.clone(), rounds)) {
            return known;
        }
        let result =
            self.spoiler_fails(xs, ys, rounds, true) && self.spoiler_fails(xs, ys, rounds, false);
        self.memo.insert((key, rounds), result);
        result
    }

    /// With one round left Duplicator wins iff both sides realize the same
    /// one-point types over the current position.
    fn last_round(&self, xs: &[usize], ys: &[usize]) -> bool {
        let types = |c: &Compiled, ps: &[usize]| -> HashSet<u128> {
            (0..c.len())
                .filter(|v| !ps.contains(v))
                .map(|v| c.type_key(ps, v))
                .collect()
        };
        types(self.ca, xs) == types(self.cb, ys)
    }

    /// Every Spoiler move on one side has a winning answer on the other.
    fn spoiler_fails(
        &mut self,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        rounds: usize,
        left: bool,
    ) -> bool {
        let n = if left { self.ca.len() } else { self.cb.len() };
        (0..n).all(|s| {
            // re-picking a matched element changes nothing
            if (left && xs.contains(&s)) || (!left && ys.contains(&s)) {
                return true;
            }
            self.has_answer(xs, ys, rounds, left, s)
        })
    }

    fn has_answer(
        &mut self,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        rounds: usize,
        left: bool,
        s: usize,
    ) -> bool {
        let m = if left { self.cb.len() } else { self.ca.len() };
        for r in 0..m {
            let (a, b) = if left { (s, r) } else { (r, s) };
            if !self.ca.extends(self.cb, xs, ys, a, b) {
                continue;
            }
            xs.push(a);
            ys.push(b);
            let wins = self.duplicator_wins(xs, ys, rounds - 1);
            xs.pop();
            ys.pop();
            if wins {
                return true;
            }
        }
        false
    }
}

/// Whether Duplicator wins the `depth`-round back-and-forth game on `a`
/// and `b`, that is, whether a system of partial isomorphisms of size up to
/// `depth` exists in which each map extends by one point in either
/// direction.
///
/// Spoiler's first moves are examined in parallel when the `parallel`
/// feature is on; deeper rounds are memoized per first move.
pub fn back_and_forth_equiv(a: &FinStructure, b: &FinStructure, depth: usize) -> bool {
    if a.signature() != b.signature() {
        return false;
    }
    if depth == 0 {
        return true;
    }
    if a.is_empty() != b.is_empty() {
        return false;
    }
    let (ca, cb) = (Compiled::new(a), Compiled::new(b));
    let first_moves: Vec<(bool, usize)> = (0..ca.len())
        .map(|s| (true, s))
        .chain((0..cb.len()).map(|s| (false, s)))
        .collect();
    batch::all(&first_moves, |&(left, s)| {
        let mut game = Game {
            ca: &ca,
            cb: &cb,
            memo: HashMap::new(),
        };
        game.has_answer(&mut Vec::new(), &mut Vec::new(), depth, left, s)
    })
}
