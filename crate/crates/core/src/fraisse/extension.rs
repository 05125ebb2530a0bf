//! The finite one-point extension property: over every small base inside
//! a structure, every class extension is realized by some vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use super::{FraisseClass, StructurePoset};
use crate::batch;
use crate::game::Transcript;
use crate::game::{Verdict, WinCheck};
use crate::structs::compiled::Compiled;
use crate::structs::{FinStructure, Vertex};

/// An extension `extension` of the base `base` that no vertex of the
/// checked structure realizes. The new vertex of `extension` is the one id
/// outside `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionFailure {
    pub base: Vec<Vertex>,
    pub extension: FinStructure,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtensionReport {
    pub verdict: Verdict,
    /// Number of bases examined.
    pub bases: usize,
    pub failures: Vec<ExtensionFailure>,
}

/// Nonempty subsets of `pool` of size at most `bound`, in lexicographic
/// order. The empty base is left out: it only asks for `m` to be nonempty,
/// and leaving it out makes bound 0 vacuous.
fn bases(pool: &[Vertex], bound: usize) -> Vec<Vec<Vertex>> {
    fn go(
        pool: &[Vertex],
        bound: usize,
        from: usize,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == bound {
            return;
        }
        for i in from..pool.len() {
            cur.push(pool[i]);
            go(pool, bound, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, bound, 0, &mut Vec::new(), &mut out);
    out
}

/// Key of the new vertex of `ext` over `base`.
fn extension_key(base: &[Vertex], ext: &FinStructure) -> u128 {
    let c = Compiled::new(ext);
    let xs: Vec<usize> = base
        .iter()
        .map(|&v| c.index_of(v).expect("base lies in the extension"))
        .collect();
    let x = (0..c.len())
        .find(|i| !xs.contains(i))
        .expect("one new vertex");
    c.type_key(&xs, x)
}

/// Ordered atomic type of `xs` inside `c`: the type of each entry over the
/// entries before it. Bases with equal signatures have the same one-point
/// extensions up to renaming positions.
fn base_signature(c: &Compiled, xs: &[usize]) -> Vec<u128> {
    (0..xs.len()).map(|i| c.type_key(&xs[..i], xs[i])).collect()
}

/// Local extensions of a base, built once per base signature on the ids
/// `0..k` (base positions) and `k` (the new vertex), with their keys.
type Templates = Vec<(u128, FinStructure)>;

fn templates(class: &dyn FraisseClass, m: &FinStructure, base: &[Vertex]) -> Templates {
    let canon: BTreeMap<Vertex, Vertex> = base
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i as Vertex))
        .collect();
    let a = m
        .induced(&base.iter().copied().collect())
        .relabel(&canon)
        .expect("positions are distinct");
    let positions: Vec<Vertex> = (0..base.len() as Vertex).collect();
    class
        .local_extensions(&a, base.len() as Vertex)
        .into_iter()
        .map(|b| (extension_key(&positions, &b), b))
        .collect()
}

fn missing_over(
    m: &FinStructure,
    cm: &Compiled,
    base: &[Vertex],
    wanted: &Templates,
) -> Vec<ExtensionFailure> {
    let xs: Vec<usize> = base
        .iter()
        .map(|&v| cm.index_of(v).expect("base lies in m"))
        .collect();
    let mut open: Vec<&(u128, FinStructure)> = wanted.iter().collect();
    for v in 0..cm.len() {
        if open.is_empty() {
            return Vec::new();
        }
        if xs.contains(&v) {
            continue;
        }
        let key = cm.type_key(&xs, v);
        open.retain(|(k, _)| *k != key);
    }
    let x = m.next_id();
    let back: BTreeMap<Vertex, Vertex> = base
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as Vertex, v))
        .chain([(base.len() as Vertex, x)])
        .collect();
    open.into_iter()
        .map(|(_, t)| ExtensionFailure {
            base: base.to_vec(),
            extension: t.relabel(&back).expect("fresh id"),
        })
        .collect()
}

/// Unrealized extensions over bases of size `<= bound` drawn from
/// `restrict` (all of `m` when absent), at most `cap` of them.
pub(crate) fn missing_extensions(
    class: &dyn FraisseClass,
    m: &FinStructure,
    bound: usize,
    restrict: Option<&BTreeSet<Vertex>>,
    cap: usize,
) -> Vec<ExtensionFailure> {
    let cm = Compiled::new(m);
    let pool: Vec<Vertex> = m
        .vertices()
        .into_iter()
        .filter(|v| restrict.is_none_or(|r| r.contains(v)))
        .collect();
    let bs = bases(&pool, bound);
    let sigs: Vec<Vec<u128>> = batch::map(&bs, |b| {
        let xs: Vec<usize> = b
            .iter()
            .map(|&v| cm.index_of(v).expect("base lies in m"))
            .collect();
        base_signature(&cm, &xs)
    });
    let mut memo: HashMap<&[u128], Templates> = HashMap::new();
    for (b, sig) in bs.iter().zip(&sigs) {
        memo.entry(sig.as_slice())
            .or_insert_with(|| templates(class, m, b));
    }
    let jobs: Vec<(&Vec<Vertex>, &Templates)> = bs
        .iter()
        .zip(&sigs)
        .map(|(b, sig)| (b, &memo[sig.as_slice()]))
        .collect();
    let mut out: Vec<ExtensionFailure> = batch::map(&jobs, |(b, t)| missing_over(m, &cm, b, t))
        .into_iter()
        .flatten()
        .collect();
    out.truncate(cap);
    out
}

/// Whether some vertex of `m` outside `base` realizes `ext` over `base`.
pub(crate) fn realized(m: &FinStructure, base: &[Vertex], ext: &FinStructure) -> bool {
    let cm = Compiled::new(m);
    let xs: Vec<usize> = base
        .iter()
        .map(|&v| cm.index_of(v).expect("base lies in m"))
        .collect();
    let key = extension_key(base, ext);
    let keys: HashSet<u128> = (0..cm.len())
        .filter(|v| !xs.contains(v))
        .map(|v| cm.type_key(&xs, v))
        .collect();
    keys.contains(&key)
}

/// Checks every nonempty base `A ⊆ restrict` (or `⊆ m`) with `|A| <= bound`
/// against every one-point class extension of `A`. PASS iff nothing is
/// missing.
pub fn extension_property_check(
    class: &dyn FraisseClass,
    m: &FinStructure,
    bound: usize,
    restrict: Option<&BTreeSet<Vertex>>,
) -> ExtensionReport {
    let pool = m
        .universe()
        .iter()
        .filter(|v| restrict.is_none_or(|r| r.contains(v)))
        .count();
    let nbases = bases(&(0..pool as Vertex).collect::<Vec<_>>(), bound).len();
    let failures = missing_extensions(class, m, bound, restrict, usize::MAX);
    let verdict = match failures.first() {
        None => Verdict::Pass,
        Some(f) => Verdict::Fail(format!(
            "{} unrealized extension(s); first over {:?}: {:?}",
            failures.len(),
            f.base,
            f.extension
        )),
    };
    ExtensionReport {
        verdict,
        bases: nbases,
        failures,
    }
}

/// Extension check on the last move of a play, with bases drawn from the
/// vertices already present after the first half of the play.
#[derive(Debug, Clone, Copy)]
pub struct ExtensionCheck {
    pub bound: usize,
}

impl ExtensionCheck {
    pub fn new(bound: usize) -> ExtensionCheck {
        ExtensionCheck { bound }
    }
}

impl WinCheck<StructurePoset> for ExtensionCheck {
    fn verdict(
        &self,
        poset: &StructurePoset,
        transcript: &Transcript<FinStructure>,
        _budget: usize,
    ) -> Verdict {
        let Some(last) = transcript.last() else {
            return Verdict::Undecided("empty play".into());
        };
        let half = transcript.len() / 2;
        let restrict: BTreeSet<Vertex> = match half {
            0 => BTreeSet::new(),
            k => transcript.moves[k - 1].universe().clone(),
        };
        extension_property_check(poset.class().as_ref(), last, self.bound, Some(&restrict)).verdict
    }
}
