//! Finite relational structures.
//!
//! Vertices are `u32` ids; every relation is a set of tuples over the
//! universe. Substructures are always induced. The graph relation is
//! named `E` (kept symmetric and irreflexive), the strict order of a
//! linear order `lt`.

pub(crate) mod compiled;
mod ef;
mod embed;
mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use ef::back_and_forth_equiv;
pub use embed::{check_embedding, enumerate_embeddings, find_embedding, isomorphic, Embedding};
pub use io::{from_dot, from_json, to_dot, to_json};

pub const EDGE: &str = "E";
pub const LESS: &str = "lt";

pub type Vertex = u32;
pub type Tuple = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    relations: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(relations: &[(&str, usize)]) -> Result<Signature> {
        let mut seen = BTreeSet::new();
        for (name, arity) in relations {
            if *arity == 0 {
                return Err(Error::InvalidStructure(format!(
                    "relation {name} has arity 0"
                )));
            }
            if !seen.insert(*name) {
                return Err(Error::InvalidStructure(format!(
                    "relation {name} is declared twice"
                )));
            }
        }
        Ok(Signature {
            relations: relations.iter().map(|(n, a)| (n.to_string(), *a)).collect(),
        })
    }

    pub fn graph() -> Arc<Signature> {
        Arc::new(Signature {
            relations: vec![(EDGE.into(), 2)],
        })
    }

    pub fn linear_order() -> Arc<Signature> {
        Arc::new(Signature {
            relations: vec![(LESS.into(), 2)],
        })
    }

    /// No relations at all: pure sets.
    pub fn empty() -> Arc<Signature> {
        Arc::new(Signature {
            relations: Vec::new(),
        })
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
    }

    pub fn is_graph(&self) -> bool {
        self.relations.len() == 1 && self.arity(EDGE) == Some(2)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinStructure {
    signature: Arc<Signature>,
    universe: BTreeSet<Vertex>,
    tables: BTreeMap<String, BTreeSet<Tuple>>,
}

impl fmt::Debug for FinStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("FinStructure");
        d.field("universe", &self.universe);
        for (name, table) in &self.tables {
            d.field(name, table);
        }
        d.finish()
    }
}

impl FinStructure {
    pub fn new(signature: Arc<Signature>) -> FinStructure {
        let tables = signature
            .relations
            .iter()
            .map(|(n, _)| (n.clone(), BTreeSet::new()))
            .collect();
        FinStructure {
            signature,
            universe: BTreeSet::new(),
            tables,
        }
    }

    pub fn with_universe(
        signature: Arc<Signature>,
        universe: impl IntoIterator<Item = Vertex>,
    ) -> FinStructure {
        let mut s = FinStructure::new(signature);
        s.universe.extend(universe);
        s
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn universe(&self) -> &BTreeSet<Vertex> {
        &self.universe
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.universe.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.universe.contains(&v)
    }

    /// Smallest id not in the universe that exceeds every id in it.
    pub fn next_id(&self) -> Vertex {
        self.universe.last().map_or(0, |m| m + 1)
    }

    pub fn table(&self, name: &str) -> Option<&BTreeSet<Tuple>> {
        self.tables.get(name)
    }

    pub fn tables(&self) -> &BTreeMap<String, BTreeSet<Tuple>> {
        &self.tables
    }

    pub fn holds(&self, name: &str, tuple: &[Vertex]) -> bool {
        self.tables.get(name).is_some_and(|t| t.contains(tuple))
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        self.universe.insert(v)
    }

    /// Inserts a tuple; its entries must already be vertices.
    pub fn add_tuple(&mut self, name: &str, tuple: Tuple) -> Result<()> {
        let arity = self
            .signature
            .arity(name)
            .ok_or_else(|| Error::InvalidStructure(format!("unknown relation {name}")))?;
        if tuple.len() != arity {
            return Err(Error::InvalidStructure(format!(
                "{name} has arity {arity}, got a tuple of length {}",
                tuple.len()
            )));
        }
        if let Some(v) = tuple.iter().find(|v| !self.universe.contains(v)) {
            return Err(Error::InvalidStructure(format!(
                "vertex {v} of a {name} tuple is not in the universe"
            )));
        }
        self.tables.get_mut(name).expect("declared").insert(tuple);
        Ok(())
    }

    /// Removes a vertex and every tuple through it.
    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        if !self.universe.remove(&v) {
            return false;
        }
        for table in self.tables.values_mut() {
            table.retain(|t| !t.contains(&v));
        }
        true
    }

    /// Checks tuple entries and, for `E` and `lt`, the graph and strict
    /// total order axioms.
    pub fn validate(&self) -> Result<()> {
        for (name, table) in &self.tables {
            let arity = self.signature.arity(name).ok_or_else(|| {
                Error::InvalidStructure(format!("table for undeclared relation {name}"))
            })?;
            for t in table {
                if t.len() != arity {
                    return Err(Error::InvalidStructure(format!(
                        "{name} tuple {t:?} has the wrong length"
                    )));
                }
                if let Some(v) = t.iter().find(|v| !self.universe.contains(v)) {
                    return Err(Error::InvalidStructure(format!(
                        "{name} tuple {t:?} leaves the universe at {v}"
                    )));
                }
            }
        }
        if let Some(edges) = self
            .tables
            .get(EDGE)
            .filter(|_| self.signature.arity(EDGE) == Some(2))
        {
            for e in edges {
                if e[0] == e[1] {
                    return Err(Error::InvalidStructure(format!("loop at {}", e[0])));
                }
                if !edges.contains(&vec![e[1], e[0]]) {
                    return Err(Error::InvalidStructure(format!(
                        "edge {e:?} is not symmetric"
                    )));
                }
            }
        }
        if let Some(lt) = self
            .tables
            .get(LESS)
            .filter(|_| self.signature.arity(LESS) == Some(2))
        {
            let vs = self.vertices();
            for (i, &a) in vs.iter().enumerate() {
                if lt.contains(&vec![a, a]) {
                    return Err(Error::InvalidStructure(format!("{a} < {a}")));
                }
                for &b in &vs[i + 1..] {
                    let (ab, ba) = (lt.contains(&vec![a, b]), lt.contains(&vec![b, a]));
                    if ab == ba {
                        return Err(Error::InvalidStructure(format!(
                            "{a} and {b} are not strictly comparable"
                        )));
                    }
                }
            }
            for t in lt {
                for s in lt {
                    if t[1] == s[0] && !lt.contains(&vec![t[0], s[1]]) {
                        return Err(Error::InvalidStructure(format!(
                            "lt is not transitive at {t:?}, {s:?}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The induced substructure on `subset` (intersected with the universe).
    pub fn induced(&self, subset: &BTreeSet<Vertex>) -> FinStructure {
        let universe: BTreeSet<Vertex> = self.universe.intersection(subset).copied().collect();
        let verts: Vec<Vertex> = universe.iter().copied().collect();
        let tables = self
            .tables
            .iter()
            .map(|(n, t)| {
                let arity = self.signature.arity(n).unwrap_or(1) as u32;
                // probe tuples over a small subset instead of filtering a big table
                let kept = match (verts.len() as u64).checked_pow(arity) {
                    Some(probes) if probes < t.len() as u64 => {
                        let mut kept = BTreeSet::new();
                        let mut tuple = vec![0; arity as usize];
                        collect_tuples(&verts, t, &mut tuple, 0, &mut kept);
                        kept
                    }
                    _ => t
                        .iter()
                        .filter(|tu| tu.iter().all(|v| universe.contains(v)))
                        .cloned()
                        .collect(),
                };
                (n.clone(), kept)
            })
            .collect();
        FinStructure {
            signature: Arc::clone(&self.signature),
            universe,
            tables,
        }
    }

    /// The image under an injective relabelling defined on the universe.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<FinStructure> {
        let image = |v: &Vertex| {
            map.get(v)
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("relabelling misses vertex {v}")))
        };
        let universe: BTreeSet<Vertex> = self.universe.iter().map(image).collect::<Result<_>>()?;
        if universe.len() != self.universe.len() {
            return Err(Error::InvalidArgument(
                "relabelling is not injective".into(),
            ));
        }
        let mut tables = BTreeMap::new();
        for (n, t) in &self.tables {
            let mapped = t
                .iter()
                .map(|tu| tu.iter().map(image).collect::<Result<Tuple>>())
                .collect::<Result<BTreeSet<Tuple>>>()?;
            tables.insert(n.clone(), mapped);
        }
        Ok(FinStructure {
            signature: Arc::clone(&self.signature),
            universe,
            tables,
        })
    }

    /// Total number of tuples across all relations.
    pub fn tuple_count(&self) -> usize {
        self.tables.values().map(BTreeSet::len).sum()
    }
}

fn collect_tuples(
    verts: &[Vertex],
    table: &BTreeSet<Tuple>,
    tuple: &mut Tuple,
    at: usize,
    out: &mut BTreeSet<Tuple>,
) {
    if at == tuple.len() {
        if table.contains(tuple) {
            out.insert(tuple.clone());
        }
        return;
    }
    for &v in verts {
        tuple[at] = v;
        collect_tuples(verts, table, tuple, at + 1, out);
    }
}

/// Graph helpers; they assume the structure has the graph signature.
impl FinStructure {
    pub fn graph(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: &[(Vertex, Vertex)],
    ) -> Result<FinStructure> {
        let mut g = FinStructure::with_universe(Signature::graph(), vertices);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        if a == b {
            return Err(Error::InvalidStructure(format!("loop at {a}")));
        }
        self.add_tuple(EDGE, vec![a, b])?;
        self.add_tuple(EDGE, vec![b, a])
    }

    pub fn remove_edge(&mut self, a: Vertex, b: Vertex) {
        if let Some(t) = self.tables.get_mut(EDGE) {
            t.remove(&vec![a, b]);
            t.remove(&vec![b, a]);
        }
    }

    pub fn adjacent(&self, a: Vertex, b: Vertex) -> bool {
        self.holds(EDGE, &[a, b])
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.tables
            .get(EDGE)
            .map(|t| t.range(vec![v]..vec![v + 1]).map(|e| e[1]).collect())
            .unwrap_or_default()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_count(&self) -> usize {
        self.tables.get(EDGE).map_or(0, |t| t.len() / 2)
    }

    /// Unordered edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        self.tables
            .get(EDGE)
            .map(|t| {
                t.iter()
                    .filter(|e| e[0] < e[1])
                    .map(|e| (e[0], e[1]))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &self.universe {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.edge_count() + self.components().len() == self.len()
    }

    pub fn path(n: u32) -> FinStructure {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinStructure::graph(0..n, &edges).expect("well formed")
    }

    pub fn cycle(n: u32) -> FinStructure {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        FinStructure::graph(0..n, &edges).expect("well formed")
    }

    pub fn complete(n: u32) -> FinStructure {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        FinStructure::graph(0..n, &edges).expect("well formed")
    }

    pub fn empty_graph(n: u32) -> FinStructure {
        FinStructure::with_universe(Signature::graph(), 0..n)
    }
}

/// Linear-order helpers.
impl FinStructure {
    /// The linear order listing `ids` from least to greatest.
    pub fn linear_order(ids: &[Vertex]) -> FinStructure {
        let mut s = FinStructure::with_universe(Signature::linear_order(), ids.iter().copied());
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                s.add_tuple(LESS, vec![a, b]).expect("well formed");
            }
        }
        s
    }

    /// Universe listed in the order's sense.
    pub fn order_listing(&self) -> Vec<Vertex> {
        let mut vs = self.vertices();
        vs.sort_by_key(|v| {
            self.tables
                .get(LESS)
                .map_or(0, |t| t.iter().filter(|p| p[1] == *v).count())
        });
        vs
    }
}

pub fn induced_substructure(m: &FinStructure, subset: &BTreeSet<Vertex>) -> FinStructure {
    m.induced(subset)
}
