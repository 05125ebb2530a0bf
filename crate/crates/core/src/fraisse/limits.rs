//! Explicit countable limits: the random graph on bit-adjacent naturals,
//! the dyadic rationals of `(0, 1)`, and the naturals as a pure set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::acknat::{bit_adjacent, rado_witness, AckNat};
use crate::error::{Error, Result};
use crate::structs::compiled::for_each_position_tuple;
use crate::structs::{FinStructure, Signature, Vertex, EDGE, LESS};

/// Structure-vertex to limit-vertex assignment.
pub type LimitMap<V> = BTreeMap<Vertex, V>;

/// A countable structure `U = ⋃ U_n` given by an enumeration of its
/// vertices and a decidable relation predicate.
pub trait LimitPresentation: Send + Sync {
    type Vertex: Clone + Ord + fmt::Debug + Send + Sync;

    fn name(&self) -> &'static str;

    fn signature(&self) -> Arc<Signature>;

    /// The `n`-th vertex of the enumeration.
    fn vertex(&self, n: usize) -> Self::Vertex;

    fn holds(&self, rel: &str, tuple: &[Self::Vertex]) -> bool;

    /// A limit vertex `y` outside the range of `f` such that `f + {x -> y}`
    /// embeds `b` (whose universe is `dom f ∪ {x}`).
    fn realize_vertex(
        &self,
        f: &LimitMap<Self::Vertex>,
        b: &FinStructure,
        x: Vertex,
    ) -> Result<Self::Vertex>;

    /// `f` extended to `x`. The new value is checked for freshness and
    /// against every tuple through `x`.
    fn realize(
        &self,
        f: &LimitMap<Self::Vertex>,
        b: &FinStructure,
        x: Vertex,
    ) -> Result<LimitMap<Self::Vertex>> {
        if f.contains_key(&x) || !b.contains_vertex(x) || b.len() != f.len() + 1 {
            return Err(Error::RealizeFailure(format!(
                "{x} is not the one new vertex of the extension"
            )));
        }
        let y = self.realize_vertex(f, b, x)?;
        if f.values().any(|v| *v == y) || !self.agrees_at(f, b, x, &y) {
            return Err(Error::RealizeFailure(format!(
                "{} presentation produced a bad witness for vertex {x}",
                self.name()
            )));
        }
        let mut g = f.clone();
        g.insert(x, y);
        Ok(g)
    }

    /// Whether `f + {x -> y}` preserves and reflects the tuples of `b`
    /// that pass through `x`.
    fn agrees_at(
        &self,
        f: &LimitMap<Self::Vertex>,
        b: &FinStructure,
        x: Vertex,
        y: &Self::Vertex,
    ) -> bool {
        let ids: Vec<(Vertex, &Self::Vertex)> = f.iter().map(|(k, v)| (*k, v)).collect();
        let sig = self.signature();
        let mut ok = true;
        for (name, arity) in sig.relations() {
            for_each_position_tuple(*arity, ids.len(), &mut |pos| {
                let t: Vec<Vertex> = pos.iter().map(|&p| ids.get(p).map_or(x, |e| e.0)).collect();
                let verts: Vec<Self::Vertex> = pos
                    .iter()
                    .map(|&p| ids.get(p).map_or(y, |e| e.1).clone())
                    .collect();
                ok = b.holds(name, &t) == self.holds(name, &verts);
                ok
            });
            if !ok {
                return false;
            }
        }
        true
    }

    /// The structure on the ids of `f` induced from the limit.
    fn induced(&self, f: &LimitMap<Self::Vertex>) -> FinStructure {
        let sig = self.signature();
        let mut s = FinStructure::with_universe(Arc::clone(&sig), f.keys().copied());
        let ids: Vec<(Vertex, &Self::Vertex)> = f.iter().map(|(k, v)| (*k, v)).collect();
        for (name, arity) in sig.relations() {
            for_each_tuple(&ids, *arity, &mut |t| {
                let verts: Vec<Self::Vertex> = t.iter().map(|(_, v)| (*v).clone()).collect();
                if self.holds(name, &verts) {
                    s.add_tuple(name, t.iter().map(|(k, _)| *k).collect())
                        .expect("ids are in the universe");
                }
            });
        }
        s
    }

    /// `U_n`: vertices `0..n` of the enumeration, with ids `0..n`.
    fn prefix(&self, n: usize) -> FinStructure {
        let f: LimitMap<Self::Vertex> = (0..n).map(|i| (i as Vertex, self.vertex(i))).collect();
        self.induced(&f)
    }

    /// `f` is injective, defined on `m`'s universe, and preserves and
    /// reflects every relation.
    fn is_embedding(&self, f: &LimitMap<Self::Vertex>, m: &FinStructure) -> bool {
        let range: BTreeSet<&Self::Vertex> = f.values().collect();
        range.len() == f.len()
            && f.len() == m.len()
            && m.universe().iter().all(|v| f.contains_key(v))
            && self.induced(f) == *m
    }
}

fn for_each_tuple<T: Copy>(items: &[T], arity: usize, f: &mut dyn FnMut(&[T])) {
    fn go<T: Copy>(items: &[T], arity: usize, cur: &mut Vec<T>, f: &mut dyn FnMut(&[T])) {
        if cur.len() == arity {
            f(cur);
            return;
        }
        for &x in items {
            cur.push(x);
            go(items, arity, cur, f);
            cur.pop();
        }
    }
    go(items, arity, &mut Vec::with_capacity(arity), f);
}

/// The random graph: naturals, `i ~ j` iff bit `i` of `j` is set (or the
/// other way round).
#[derive(Debug, Clone, Copy, Default)]
pub struct RadoGraph;

impl LimitPresentation for RadoGraph {
    type Vertex = AckNat;

    fn name(&self) -> &'static str {
        "random graph"
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::graph()
    }

    fn vertex(&self, n: usize) -> AckNat {
        AckNat::from_u64(n as u64)
    }

    fn holds(&self, rel: &str, t: &[AckNat]) -> bool {
        rel == EDGE && bit_adjacent(&t[0], &t[1])
    }

    fn realize_vertex(&self, f: &LimitMap<AckNat>, b: &FinStructure, x: Vertex) -> Result<AckNat> {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (v, image) in f {
            if b.adjacent(x, *v) {
                pos.push(image.clone());
            } else {
                neg.push(image.clone());
            }
        }
        let floor = f.values().max().cloned().unwrap_or_else(AckNat::zero);
        Ok(rado_witness(&pos, &neg, &floor))
    }
}

/// The dyadic rationals of `(0, 1)`, listed level by level:
/// `1/2, 1/4, 3/4, 1/8, 3/8, ...`.
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicOrder;

impl LimitPresentation for DyadicOrder {
    type Vertex = BigRational;

    fn name(&self) -> &'static str {
        "dyadic order"
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::linear_order()
    }

    fn vertex(&self, n: usize) -> BigRational {
        let m = n as u64 + 1;
        let level = 63 - m.leading_zeros(); // 2^level <= m
        let k = m - (1 << level);
        BigRational::new(BigInt::from(2 * k + 1), BigInt::from(1u64) << (level + 1))
    }

    fn holds(&self, rel: &str, t: &[BigRational]) -> bool {
        rel == LESS && t[0] < t[1]
    }

    fn realize_vertex(
        &self,
        f: &LimitMap<BigRational>,
        b: &FinStructure,
        x: Vertex,
    ) -> Result<BigRational> {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one();
        for (v, image) in f {
            if b.holds(LESS, &[*v, x]) {
                lo = lo.max(image.clone());
            } else {
                hi = hi.min(image.clone());
            }
        }
        if lo >= hi {
            return Err(Error::RealizeFailure(format!(
                "no room between {lo} and {hi}"
            )));
        }
        Ok((lo + hi) / BigRational::from_integer(BigInt::from(2)))
    }
}

/// The naturals with no relations.
#[derive(Debug, Clone, Copy, Default)]
pub struct CountableSet;

impl LimitPresentation for CountableSet {
    type Vertex = u64;

    fn name(&self) -> &'static str {
        "countable set"
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::empty()
    }

    fn vertex(&self, n: usize) -> u64 {
        n as u64
    }

    fn holds(&self, _rel: &str, _t: &[u64]) -> bool {
        false
    }

    fn realize_vertex(&self, f: &LimitMap<u64>, _b: &FinStructure, _x: Vertex) -> Result<u64> {
        let used: BTreeSet<u64> = f.values().copied().collect();
        Ok((0..).find(|n| !used.contains(n)).expect("unbounded"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structs::check_embedding;
    use crate::structs::Embedding;

    #[test]
    fn rado_prefixes_are_nested() {
        let mut prev = RadoGraph.prefix(0);
        for n in 1..=32 {
            let cur = RadoGraph.prefix(n);
            let ids: BTreeSet<Vertex> = (0..n as Vertex - 1).collect();
            assert_eq!(cur.induced(&ids), prev);
            prev = cur;
        }
        // 0 ~ 1 (bit 0 of 1), 1 ~ 2 (bit 1 of 2), 0 !~ 2
        let p3 = RadoGraph.prefix(3);
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rado_realizes_any_pattern() {
        let base = RadoGraph.prefix(5);
        let f: LimitMap<AckNat> = (0..5).map(|i| (i, RadoGraph.vertex(i as usize))).collect();
        for mask in 0u32..32 {
            let mut b = base.clone();
            b.add_vertex(9);
            for v in 0..5 {
                if mask >> v & 1 == 1 {
                    b.add_edge(9, v).unwrap();
                }
            }
            let g = RadoGraph.realize(&f, &b, 9).unwrap();
            assert!(RadoGraph.is_embedding(&g, &b));
            assert!(g.iter().all(|(k, v)| f.get(k).is_none_or(|w| w == v)));
        }
    }

    #[test]
    fn dyadic_enumeration() {
        let first: Vec<String> = (0..7).map(|n| DyadicOrder.vertex(n).to_string()).collect();
        assert_eq!(first, ["1/2", "1/4", "3/4", "1/8", "3/8", "5/8", "7/8"]);
        let p = DyadicOrder.prefix(7);
        assert!(p.validate().is_ok());
        let by_value = FinStructure::linear_order(&[3, 1, 4, 0, 5, 2, 6]);
        assert!(check_embedding(&p, &by_value, &Embedding::identity(&p)));
    }

    #[test]
    fn dyadic_realizes_every_cut() {
        let base = FinStructure::linear_order(&[0, 1]);
        let f: LimitMap<BigRational> =
            [(0, DyadicOrder.vertex(1)), (1, DyadicOrder.vertex(0))].into();
        for order in [[2, 0, 1], [0, 2, 1], [0, 1, 2]] {
            let b = FinStructure::linear_order(&order);
            let g = DyadicOrder.realize(&f, &b, 2).unwrap();
            assert!(DyadicOrder.is_embedding(&g, &b));
            assert!(g.contains_key(&2));
        }
        assert!(base.validate().is_ok());
    }

    #[test]
    fn set_realizes_smallest_unused() {
        let f: LimitMap<u64> = [(5, 0), (6, 2)].into();
        let b = FinStructure::with_universe(Signature::empty(), [5, 6, 7]);
        assert_eq!(CountableSet.realize(&f, &b, 7).unwrap()[&7], 1);
        assert!(CountableSet.realize(&f, &b, 5).is_err());
    }
}
