use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::compiled::Compiled;
use super::{FinStructure, Vertex};
use crate::error::{Error, Result};

/// A vertex map between two structures; whether it is an embedding is
/// decided by [`check_embedding`] against concrete structures.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Embedding {
    pub map: BTreeMap<Vertex, Vertex>,
}

impl Embedding {
    pub fn new(map: BTreeMap<Vertex, Vertex>) -> Embedding {
        Embedding { map }
    }

    pub fn identity(a: &FinStructure) -> Embedding {
        Embedding {
            map: a.universe().iter().map(|&v| (v, v)).collect(),
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Embedding {
        Embedding {
            map: pairs.into_iter().collect(),
        }
    }

    pub fn apply(&self, v: Vertex) -> Option<Vertex> {
        self.map.get(&v).copied()
    }

    pub fn image(&self) -> BTreeSet<Vertex> {
        self.map.values().copied().collect()
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &Embedding) -> Result<Embedding> {
        self.map
            .iter()
            .map(|(&k, v)| {
                other
                    .apply(*v)
                    .map(|w| (k, w))
                    .ok_or_else(|| Error::InvalidArgument(format!("composition undefined at {v}")))
            })
            .collect::<Result<_>>()
            .map(Embedding::new)
    }

    pub fn inverse(&self) -> Result<Embedding> {
        let inv: BTreeMap<Vertex, Vertex> = self.map.iter().map(|(&k, &v)| (v, k)).collect();
        if inv.len() != self.map.len() {
            return Err(Error::InvalidArgument("map is not injective".into()));
        }
        Ok(Embedding::new(inv))
    }
}

/// Total on `a`, injective, into `b`, and every relation holds of a tuple
/// in `a` exactly when it holds of its image in `b`.
pub fn check_embedding(a: &FinStructure, b: &FinStructure, e: &Embedding) -> bool {
    if a.signature() != b.signature() {
        return false;
    }
    if e.map.len() != a.len() || !a.universe().iter().all(|v| e.map.contains_key(v)) {
        return false;
    }
    let image = e.image();
    if image.len() != e.map.len() || !image.iter().all(|v| b.contains_vertex(*v)) {
        return false;
    }
    let Ok(inverse) = e.inverse() else {
        return false;
    };
    for (name, _) in a.signature().relations() {
        let ta = a.table(name).into_iter().flatten();
        let tb = b.table(name).into_iter().flatten();
        // preserve
        for t in ta {
            let mapped: Vec<Vertex> = t.iter().map(|v| e.map[v]).collect();
            if !b.holds(name, &mapped) {
                return false;
            }
        }
        // reflect
        for t in tb {
            if let Some(pre) = t
                .iter()
                .map(|v| inverse.apply(*v))
                .collect::<Option<Vec<Vertex>>>()
            {
                if !a.holds(name, &pre) {
                    return false;
                }
            }
        }
    }
    true
}

struct Search<'a> {
    ca: &'a Compiled,
    cb: &'a Compiled,
    xs: Vec<usize>,
    ys: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Visits embeddings in lexicographic order; `visit` returns false to stop.
    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let i = self.xs.len();
        if i == self.ca.len() {
            return visit(&self.ys);
        }
        for b in 0..self.cb.len() {
            if self.used[b] || !self.ca.extends(self.cb, &self.xs, &self.ys, i, b) {
                continue;
            }
            self.used[b] = true;
            self.xs.push(i);
            self.ys.push(b);
            let go_on = self.run(visit);
            self.xs.pop();
            self.ys.pop();
            self.used[b] = false;
            if !go_on {
                return false;
            }
        }
        true
    }
}

fn search(a: &FinStructure, b: &FinStructure, visit: &mut dyn FnMut(Embedding) -> bool) {
    if a.signature() != b.signature() || a.len() > b.len() {
        return;
    }
    let (ca, cb) = (Compiled::new(a), Compiled::new(b));
    let mut s = Search {
        ca: &ca,
        cb: &cb,
        xs: Vec::with_capacity(ca.len()),
        ys: Vec::with_capacity(ca.len()),
        used: vec![false; cb.len()],
    };
    s.run(&mut |ys| {
        visit(Embedding::from_pairs(
            ca.verts.iter().zip(ys).map(|(&v, &y)| (v, cb.verts[y])),
        ))
    });
}

/// All embeddings of `a` into `b`, ordered lexicographically by the
/// images of `a`'s vertices taken in increasing order.
pub fn enumerate_embeddings(a: &FinStructure, b: &FinStructure) -> Vec<Embedding> {
    let mut out = Vec::new();
    search(a, b, &mut |e| {
        out.push(e);
        true
    });
    out
}

pub fn find_embedding(a: &FinStructure, b: &FinStructure) -> Option<Embedding> {
    let mut found = None;
    search(a, b, &mut |e| {
        found = Some(e);
        false
    });
    found
}

pub fn isomorphic(a: &FinStructure, b: &FinStructure) -> bool {
    a.len() == b.len()
        && a.signature() == b.signature()
        && a.signature()
            .relations()
            .iter()
            .all(|(n, _)| a.table(n).map(|t| t.len()) == b.table(n).map(|t| t.len()))
        && find_embedding(a, b).is_some()
}
