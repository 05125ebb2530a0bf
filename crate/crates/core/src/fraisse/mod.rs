//! Classes of finite structures with joint embedding and amalgamation,
//! their explicit countable limits, and the game played on a class.
//!
//! The game poset is [`StructurePoset`]: members of a class ordered by
//! "induced substructure with vertex-id inclusion", so every move keeps
//! the ids of the previous one.

mod acknat;
mod classes;
mod complete;
mod eve;
mod extension;
mod forest;
mod limits;
mod markov;
mod universality;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{PlayRng, Poset, Strategy};
use crate::structs::{from_json, isomorphic, to_json, Embedding, FinStructure, Signature, Vertex};

pub use acknat::{bit_adjacent, rado_witness, AckNat};
pub use classes::{BoundedDegree, Forests, Graphs, LinearOrders, PureSets};
pub use complete::{bounded_degree_odd_strategy, catalogue, n_complete_embed, BoundedDegreeOdd};
pub use eve::RandomStructureEve;
pub use extension::{extension_property_check, ExtensionCheck, ExtensionFailure, ExtensionReport};
pub use forest::{complete_tree, contains_complete_tree, forest_odd_strategy, ForestOdd};
pub use limits::{CountableSet, DyadicOrder, LimitMap, LimitPresentation, RadoGraph};
pub use markov::{odd_markov_strategy, OddMarkov};
pub use universality::{
    ConstantChain, EveUniversality, GrowingPaths, RandomGraphChain, TargetChain,
};

/// The square completed by amalgamation: `f2: X -> V` is the identity on
/// `X`, `g2: Y -> V` sends the vertices outside `g(Z)` to fresh ids.
#[derive(Debug, Clone, PartialEq)]
pub struct Amalgam {
    pub v: FinStructure,
    pub f2: Embedding,
    pub g2: Embedding,
}

/// A hereditary class of finite structures over one signature.
pub trait FraisseClass: Send + Sync + fmt::Debug {
    /// Registry name, e.g. `graphs` or `bounded_degree:3`.
    fn name(&self) -> String;

    fn signature(&self) -> Arc<Signature>;

    fn contains(&self, m: &FinStructure) -> bool;

    /// Completes `f: Z -> X`, `g: Z -> Y` to a commuting square inside the
    /// class, or fails with `AmalgamationFailure`.
    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam>;

    /// Every one-point extension of `a` by the vertex `x` that lies in the
    /// class. Distinct entries are distinct types over `a`.
    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure>;

    /// A random one-point extension of `m` by `x` inside the class.
    fn random_extension(&self, m: &FinStructure, x: Vertex, rng: &mut PlayRng) -> FinStructure;

    /// `m` plus the vertex `x` of `local` (whose other vertices lie in `m`),
    /// related to `local`'s vertices exactly as in `local` and to the rest
    /// of `m` at random.
    fn complete_extension(
        &self,
        m: &FinStructure,
        local: &FinStructure,
        x: Vertex,
        _rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let mut out = m.clone();
        out.add_vertex(x);
        for (name, table) in local.tables() {
            for t in table.iter().filter(|t| t.contains(&x)) {
                out.add_tuple(name, t.clone())?;
            }
        }
        if self.contains(&out) {
            Ok(out)
        } else {
            Err(Error::InvalidStructure(format!(
                "extension by {x} leaves {}",
                self.name()
            )))
        }
    }

    /// Up to `limit` one-point extensions of `m` by `m.next_id()`.
    fn first_extensions(&self, m: &FinStructure, limit: usize) -> Vec<FinStructure> {
        let mut out = self.local_extensions(m, m.next_id());
        out.truncate(limit);
        out
    }

    /// `(Z, i, j)` with `i: X -> Z`, `j: Y -> Z`. Equal arguments give
    /// identities; otherwise this amalgamates over the empty structure.
    fn joint_embed(
        &self,
        x: &FinStructure,
        y: &FinStructure,
    ) -> Result<(FinStructure, Embedding, Embedding)> {
        if x == y {
            return Ok((x.clone(), Embedding::identity(x), Embedding::identity(x)));
        }
        let empty = FinStructure::new(self.signature());
        let a = self.amalgamate(&empty, x, y, &Embedding::default(), &Embedding::default())?;
        Ok((a.v, a.f2, a.g2))
    }

    /// Members with at most `size` vertices, one per isomorphism type, on
    /// ids `0..k`, ordered by size.
    fn enumerate_members(&self, size: usize) -> Vec<FinStructure> {
        let mut layer = vec![FinStructure::new(self.signature())];
        let mut out = layer.clone();
        for k in 0..size {
            let mut next: Vec<FinStructure> = Vec::new();
            for m in &layer {
                for b in self.local_extensions(m, k as Vertex) {
                    if !next
                        .iter()
                        .any(|n| n.tuple_count() == b.tuple_count() && isomorphic(n, &b))
                    {
                        next.push(b);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// Size of the bases over which the Markov strategy adds missing
    /// one-point extensions after each move.
    fn saturation_bound(&self) -> usize {
        0
    }
}

/// Checks that `f: Z -> X` and `g: Z -> Y` are embeddings.
pub(crate) fn check_span(
    z: &FinStructure,
    x: &FinStructure,
    y: &FinStructure,
    f: &Embedding,
    g: &Embedding,
) -> Result<()> {
    use crate::structs::check_embedding;
    if !check_embedding(z, x, f) || !check_embedding(z, y, g) {
        return Err(Error::InvalidArgument(
            "amalgamation needs two embeddings of Z".into(),
        ));
    }
    Ok(())
}

/// Ids for the vertices of `Y` outside `g(Z)`: fresh, above `X`, in
/// increasing order of the `Y` id. Vertices in `g(Z)` go to `f(z)`.
pub(crate) fn glue_map(
    x: &FinStructure,
    y: &FinStructure,
    f: &Embedding,
    g: &Embedding,
) -> BTreeMap<Vertex, Vertex> {
    let back: BTreeMap<Vertex, Vertex> = g.map.iter().map(|(&zv, &yv)| (yv, zv)).collect();
    let mut next = x.next_id();
    y.universe()
        .iter()
        .map(|&v| match back.get(&v) {
            Some(zv) => (v, f.map[zv]),
            None => {
                next += 1;
                (v, next - 1)
            }
        })
        .collect()
}

/// `X` and a copy of `Y` glued along `Z`, with no tuples beyond those of
/// the two sides.
pub(crate) fn free_amalgam(
    z: &FinStructure,
    x: &FinStructure,
    y: &FinStructure,
    f: &Embedding,
    g: &Embedding,
) -> Result<Amalgam> {
    check_span(z, x, y, f, g)?;
    let g2 = glue_map(x, y, f, g);
    let mut v = x.clone();
    for &w in g2.values() {
        v.add_vertex(w);
    }
    for (name, table) in y.tables() {
        for t in table {
            v.add_tuple(name, t.iter().map(|a| g2[a]).collect())?;
        }
    }
    Ok(Amalgam {
        f2: Embedding::identity(x),
        g2: Embedding::new(g2),
        v,
    })
}

/// Members of a class ordered by induced substructure on included ids.
#[derive(Debug, Clone)]
pub struct StructurePoset {
    class: Arc<dyn FraisseClass>,
}

/// Largest member size [`Poset::enumerate`] walks through.
const ENUMERATE_MAX_SIZE: usize = 6;

impl StructurePoset {
    pub fn new(class: Arc<dyn FraisseClass>) -> StructurePoset {
        StructurePoset { class }
    }

    pub fn class(&self) -> &Arc<dyn FraisseClass> {
        &self.class
    }
}

impl Poset for StructurePoset {
    type Elem = FinStructure;

    fn id(&self) -> String {
        self.class.name()
    }

    fn leq(&self, x: &FinStructure, y: &FinStructure) -> bool {
        x.signature() == y.signature()
            && x.universe().is_subset(y.universe())
            && y.induced(x.universe()) == *x
    }

    fn enumerate(&self, budget: usize) -> Option<Vec<FinStructure>> {
        let mut size = 0;
        let mut members = self.class.enumerate_members(0);
        while members.len() < budget && size < ENUMERATE_MAX_SIZE {
            size += 1;
            members = self.class.enumerate_members(size);
        }
        members.truncate(budget);
        Some(members)
    }

    fn enumerate_above(&self, x: &FinStructure, budget: usize) -> Option<Vec<FinStructure>> {
        if budget == 0 {
            return Some(Vec::new());
        }
        let mut out = vec![x.clone()];
        out.extend(self.class.first_extensions(x, budget - 1));
        Some(out)
    }

    fn enumerate_below(&self, x: &FinStructure) -> Option<Vec<FinStructure>> {
        if x.len() > 12 {
            return None;
        }
        let verts = x.vertices();
        Some(
            (0u32..1 << verts.len())
                .map(|mask| {
                    let subset: BTreeSet<Vertex> = verts
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, v)| *v)
                        .collect();
                    x.induced(&subset)
                })
                .collect(),
        )
    }

    /// Amalgamation over the common part, with `y`'s own ids kept.
    fn join_witness(&self, x: &FinStructure, y: &FinStructure) -> Option<FinStructure> {
        let common: BTreeSet<Vertex> = x.universe().intersection(y.universe()).copied().collect();
        let z = x.induced(&common);
        if y.induced(&common) != z {
            return None;
        }
        let incl = Embedding::identity(&z);
        let a = self.class.amalgamate(&z, x, y, &incl, &incl).ok()?;
        // undo the fresh ids: y's vertices outside x keep their own
        let mut back: BTreeMap<Vertex, Vertex> = x.universe().iter().map(|&v| (v, v)).collect();
        for (&yv, &vv) in &a.g2.map {
            back.insert(vv, yv);
        }
        let v = a.v.relabel(&back).ok()?;
        (self.leq(x, &v) && self.leq(y, &v) && self.class.contains(&v)).then_some(v)
    }

    /// Exact for the shipped classes: the free amalgam has the fewest
    /// tuples of any common extension, and linear orders always merge.
    fn compat(&self, x: &FinStructure, y: &FinStructure) -> Option<bool> {
        Some(self.join_witness(x, y).is_some())
    }

    fn encode(&self, x: &FinStructure) -> Value {
        to_json(x)
    }

    fn decode(&self, value: &Value) -> Result<FinStructure> {
        let m = from_json(self.class.signature(), value)?;
        if !self.class.contains(&m) {
            return Err(Error::InvalidStructure(format!(
                "structure is not in {}",
                self.class.name()
            )));
        }
        Ok(m)
    }
}

/// Boxed Odd strategy on a structure poset.
pub type StructureStrategy = Box<dyn Strategy<StructurePoset> + Send>;

/// The class registry used by the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Graphs,
    LinearOrders,
    PureSets,
    BoundedDegree(usize),
    Forests,
}

impl ClassKind {
    pub const NAMES: [&'static str; 5] = [
        "graphs",
        "linear_orders",
        "pure_sets",
        "bounded_degree:N",
        "forests",
    ];

    pub fn build(self) -> Arc<dyn FraisseClass> {
        match self {
            ClassKind::Graphs => Arc::new(Graphs),
            ClassKind::LinearOrders => Arc::new(LinearOrders),
            ClassKind::PureSets => Arc::new(PureSets),
            ClassKind::BoundedDegree(n) => Arc::new(BoundedDegree::new(n)),
            ClassKind::Forests => Arc::new(Forests),
        }
    }

    pub fn poset(self) -> StructurePoset {
        StructurePoset::new(self.build())
    }

    /// Whether the class comes with a limit presentation (and so with the
    /// Markov strategy).
    pub fn has_limit(self) -> bool {
        matches!(
            self,
            ClassKind::Graphs | ClassKind::LinearOrders | ClassKind::PureSets
        )
    }

    /// Odd's strategy for the class: the Markov strategy on a limit when
    /// there is one, the dedicated strategies otherwise.
    pub fn odd_strategy(self) -> StructureStrategy {
        let class = self.build();
        match self {
            ClassKind::Graphs => Box::new(odd_markov_strategy(class, RadoGraph)),
            ClassKind::LinearOrders => Box::new(odd_markov_strategy(class, DyadicOrder)),
            ClassKind::PureSets => Box::new(odd_markov_strategy(class, CountableSet)),
            ClassKind::BoundedDegree(n) => Box::new(bounded_degree_odd_strategy(n)),
            ClassKind::Forests => Box::new(forest_odd_strategy()),
        }
    }

    /// The first `n` vertices of the limit, for classes that have one.
    pub fn limit_prefix(self, n: usize) -> Option<FinStructure> {
        match self {
            ClassKind::Graphs => Some(RadoGraph.prefix(n)),
            ClassKind::LinearOrders => Some(DyadicOrder.prefix(n)),
            ClassKind::PureSets => Some(CountableSet.prefix(n)),
            _ => None,
        }
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ClassKind> {
        match s {
            "graphs" => Ok(ClassKind::Graphs),
            "linear_orders" => Ok(ClassKind::LinearOrders),
            "pure_sets" => Ok(ClassKind::PureSets),
            "forests" => Ok(ClassKind::Forests),
            _ => match s.strip_prefix("bounded_degree:").map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 => Ok(ClassKind::BoundedDegree(n)),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown class `{s}` (expected one of {})",
                    ClassKind::NAMES.join(", ")
                ))),
            },
        }
    }
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassKind::Graphs => f.write_str("graphs"),
            ClassKind::LinearOrders => f.write_str("linear_orders"),
            ClassKind::PureSets => f.write_str("pure_sets"),
            ClassKind::BoundedDegree(n) => write!(f, "bounded_degree:{n}"),
            ClassKind::Forests => f.write_str("forests"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::compatible;

    #[test]
    fn registry_roundtrip() {
        for name in [
            "graphs",
            "linear_orders",
            "pure_sets",
            "bounded_degree:3",
            "forests",
        ] {
            let kind: ClassKind = name.parse().unwrap();
            assert_eq!(kind.to_string(), name);
            assert_eq!(kind.build().name(), name);
        }
        assert!("bounded_degree:0".parse::<ClassKind>().is_err());
        assert!("bounded_degree:x".parse::<ClassKind>().is_err());
        assert!("trees".parse::<ClassKind>().is_err());
    }

    #[test]
    fn member_counts() {
        // graphs on <= 4 vertices: 1 + 1 + 2 + 4 + 11
        assert_eq!(Graphs.enumerate_members(4).len(), 19);
        assert_eq!(LinearOrders.enumerate_members(5).len(), 6);
        assert_eq!(PureSets.enumerate_members(3).len(), 4);
        // forests on 4 vertices: 6 (of the 11 graphs, the acyclic ones)
        assert_eq!(
            Forests.enumerate_members(4).len() - Forests.enumerate_members(3).len(),
            6
        );
        // max degree 1 on 4 vertices: empty, one edge, two edges
        let bd = BoundedDegree::new(1);
        assert_eq!(
            bd.enumerate_members(4).len() - bd.enumerate_members(3).len(),
            3
        );
    }

    #[test]
    fn members_are_pairwise_non_isomorphic() {
        let ms = Graphs.enumerate_members(4);
        for (i, a) in ms.iter().enumerate() {
            for b in &ms[i + 1..] {
                assert!(!crate::structs::back_and_forth_equiv(
                    a,
                    b,
                    a.len().max(b.len()) + 1
                ));
            }
        }
    }

    #[test]
    fn poset_order_is_induced_inclusion() {
        let p = ClassKind::Graphs.poset();
        let edge = FinStructure::graph([0, 1], &[(0, 1)]).unwrap();
        let path = FinStructure::graph([0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        let nonedge = FinStructure::graph([0, 2], &[]).unwrap();
        assert!(p.leq(&edge, &path));
        assert!(p.leq(&nonedge, &path));
        assert!(!p.leq(&FinStructure::graph([0, 1], &[]).unwrap(), &path));
        assert!(!p.leq(&path, &edge));
        let ups = p.enumerate_above(&edge, 5).unwrap();
        assert_eq!(ups.len(), 5);
        assert!(ups.iter().all(|u| p.leq(&edge, u)));
    }

    #[test]
    fn join_keeps_both_id_sets() {
        let p = ClassKind::Graphs.poset();
        let a = FinStructure::graph([0, 1], &[(0, 1)]).unwrap();
        let b = FinStructure::graph([0, 2], &[(0, 2)]).unwrap();
        let j = p.join_witness(&a, &b).unwrap();
        assert_eq!(j.vertices(), vec![0, 1, 2]);
        assert!(!j.adjacent(1, 2));
        let c = FinStructure::graph([0, 1], &[]).unwrap();
        assert!(!compatible(&p, &a, &c, 8));

        let o = ClassKind::LinearOrders.poset();
        let x = FinStructure::linear_order(&[0, 1]);
        let y = FinStructure::linear_order(&[2, 0]);
        assert_eq!(
            o.join_witness(&x, &y).unwrap().order_listing(),
            vec![2, 0, 1]
        );

        let f = ClassKind::Forests.poset();
        let p1 = FinStructure::graph([0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        let p2 = FinStructure::graph([0, 2, 3], &[(0, 3), (3, 2)]).unwrap();
        assert!(!compatible(&f, &p1, &p2, 8));
        assert!(compatible(&p, &p1, &p2, 8));
    }

    #[test]
    fn decode_checks_membership() {
        let p = ClassKind::Forests.poset();
        let tri = FinStructure::complete(3);
        assert!(p.decode(&to_json(&tri)).is_err());
        let path = FinStructure::path(4);
        assert_eq!(p.decode(&to_json(&path)).unwrap(), path);
    }

    #[test]
    fn joint_embedding_of_equal_structures_is_identity() {
        let x = FinStructure::path(3);
        let (z, i, j) = Graphs.joint_embed(&x, &x).unwrap();
        assert_eq!(z, x);
        assert_eq!(i, Embedding::identity(&x));
        assert_eq!(j, i);
    }
}
