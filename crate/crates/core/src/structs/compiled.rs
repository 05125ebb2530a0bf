//! Dense index tables for the search routines.

use std::collections::{HashMap, HashSet};

use super::{FinStructure, Vertex};

enum Table {
    Unary(Vec<bool>),
    Binary(Vec<bool>),
    Nary(HashSet<Vec<usize>>),
}

pub(crate) struct Compiled {
    pub verts: Vec<Vertex>,
    arities: Vec<usize>,
    tables: Vec<Table>,
}

impl Compiled {
    pub fn new(s: &FinStructure) -> Compiled {
        let verts = s.vertices();
        let index: HashMap<Vertex, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        let mut arities = Vec::new();
        let mut tables = Vec::new();
        for (name, arity) in s.signature().relations() {
            let rows = s.table(name).into_iter().flatten();
            let table = match arity {
                1 => {
                    let mut t = vec![false; n];
                    for r in rows {
                        t[index[&r[0]]] = true;
                    }
                    Table::Unary(t)
                }
                2 => {
                    let mut t = vec![false; n * n];
                    for r in rows {
                        t[index[&r[0]] * n + index[&r[1]]] = true;
                    }
                    Table::Binary(t)
                }
                _ => Table::Nary(rows.map(|r| r.iter().map(|v| index[v]).collect()).collect()),
            };
            arities.push(*arity);
            tables.push(table);
        }
        Compiled {
            verts,
            arities,
            tables,
        }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.verts.binary_search(&v).ok()
    }

    fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        let n = self.verts.len();
        match &self.tables[rel] {
            Table::Unary(t) => t[tuple[0]],
            Table::Binary(t) => t[tuple[0] * n + tuple[1]],
            Table::Nary(t) => t.contains(tuple),
        }
    }

    /// Whether extending the partial isomorphism `xs -> ys` by `a -> b`
    /// keeps it a partial isomorphism (`self` is the domain side).
    /// Only tuples through the new pair are examined.
    pub fn extends(
        &self,
        other: &Compiled,
        xs: &[usize],
        ys: &[usize],
        a: usize,
        b: usize,
    ) -> bool {
        for (x, y) in xs.iter().zip(ys) {
            if (*x == a) != (*y == b) {
                return false;
            }
        }
        let mut ok = true;
        let (mut ta, mut tb) = (Vec::new(), Vec::new());
        for (rel, &arity) in self.arities.iter().enumerate() {
            for_each_position_tuple(arity, xs.len(), &mut |pos| {
                ta.clear();
                tb.clear();
                ta.extend(pos.iter().map(|&p| xs.get(p).copied().unwrap_or(a)));
                tb.extend(pos.iter().map(|&p| ys.get(p).copied().unwrap_or(b)));
                ok = self.holds(rel, &ta) == other.holds(rel, &tb);
                ok
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// The atomic type of `v` over the tuple `xs`, packed into bits: one
    /// flag per relation instance on a tuple of positions in `xs ++ [v]`
    /// that uses `v`. Two vertices outside `xs` have equal keys iff they
    /// realize the same one-point extension of `xs`.
    pub fn type_key(&self, xs: &[usize], v: usize) -> u128 {
        let mut key = 0u128;
        let mut bit = 0;
        let mut t = Vec::new();
        for (rel, &arity) in self.arities.iter().enumerate() {
            for_each_position_tuple(arity, xs.len(), &mut |pos| {
                t.clear();
                t.extend(pos.iter().map(|&p| xs.get(p).copied().unwrap_or(v)));
                assert!(bit < 128, "type key too wide");
                if self.holds(rel, &t) {
                    key |= 1 << bit;
                }
                bit += 1;
                true
            });
        }
        key
    }
}

/// Calls `f` on every tuple in `{0..=k}^arity` that contains `k`, in
/// odometer order, until `f` returns false.
pub(crate) fn for_each_position_tuple(arity: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    let mut pos = vec![0; arity];
    loop {
        if pos.contains(&k) && !f(&pos) {
            return;
        }
        let mut i = 0;
        while i < arity {
            pos[i] += 1;
            if pos[i] <= k {
                break;
            }
            pos[i] = 0;
            i += 1;
        }
        if i == arity {
            return;
        }
    }
}
