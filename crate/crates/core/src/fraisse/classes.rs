//! The shipped classes: all finite graphs, linear orders and pure sets
//! (each with amalgamation), and two graph classes without it: bounded
//! degree and acyclic.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{check_span, free_amalgam, glue_map, Amalgam, FraisseClass};
use crate::error::{Error, Result};
use crate::game::PlayRng;
use crate::structs::{Embedding, FinStructure, Signature, Vertex, LESS};

/// Cap on the subsets [`first_graph_extensions`] walks through.
const FIRST_EXTENSION_SCAN: u64 = 1 << 12;

/// `a` plus `x` joined to `nbrs`.
fn with_neighbors(
    a: &FinStructure,
    x: Vertex,
    nbrs: impl IntoIterator<Item = Vertex>,
) -> FinStructure {
    let mut b = a.clone();
    b.add_vertex(x);
    for v in nbrs {
        b.add_edge(x, v).expect("vertices exist and differ");
    }
    b
}

/// All neighbourhoods of a new vertex, in increasing bitmask order over
/// the sorted vertices, filtered by `keep`.
fn graph_extensions(
    a: &FinStructure,
    x: Vertex,
    keep: &dyn Fn(&FinStructure) -> bool,
) -> Vec<FinStructure> {
    let verts = a.vertices();
    assert!(verts.len() < 24, "too many neighbourhoods to list");
    (0u32..1 << verts.len())
        .map(|mask| {
            with_neighbors(
                a,
                x,
                verts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| *v),
            )
        })
        .filter(|b| keep(b))
        .collect()
}

/// Like [`graph_extensions`] but stops after `limit` results and only
/// walks the first few thousand masks, so it works on large graphs.
fn first_graph_extensions(
    m: &FinStructure,
    limit: usize,
    keep: &dyn Fn(&FinStructure) -> bool,
) -> Vec<FinStructure> {
    let verts = m.vertices();
    let x = m.next_id();
    let span = 1u64 << verts.len().min(40);
    let mut out = Vec::new();
    for mask in 0..span.min(FIRST_EXTENSION_SCAN) {
        if out.len() >= limit {
            break;
        }
        let b = with_neighbors(
            m,
            x,
            verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v),
        );
        if keep(&b) {
            out.push(b);
        }
    }
    out
}

fn random_subset(items: &[Vertex], rng: &mut PlayRng) -> Vec<Vertex> {
    items
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect()
}

fn amalgamation_failure(class: &str, why: &str) -> Error {
    Error::AmalgamationFailure(format!("{class}: {why}"))
}

/// All finite simple graphs. Amalgamation is free.
#[derive(Debug, Clone, Copy, Default)]
pub struct Graphs;

impl FraisseClass for Graphs {
    fn name(&self) -> String {
        "graphs".into()
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::graph()
    }

    fn contains(&self, m: &FinStructure) -> bool {
        m.signature().is_graph() && m.validate().is_ok()
    }

    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam> {
        free_amalgam(z, x, y, f, g)
    }

    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure> {
        graph_extensions(a, x, &|_| true)
    }

    fn first_extensions(&self, m: &FinStructure, limit: usize) -> Vec<FinStructure> {
        first_graph_extensions(m, limit, &|_| true)
    }

    fn random_extension(&self, m: &FinStructure, x: Vertex, rng: &mut PlayRng) -> FinStructure {
        with_neighbors(m, x, random_subset(&m.vertices(), rng))
    }

    fn complete_extension(
        &self,
        m: &FinStructure,
        local: &FinStructure,
        x: Vertex,
        rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let rest: Vec<Vertex> = m
            .vertices()
            .into_iter()
            .filter(|v| !local.contains_vertex(*v))
            .collect();
        let nbrs = local
            .neighbors(x)
            .into_iter()
            .chain(random_subset(&rest, rng));
        Ok(with_neighbors(m, x, nbrs))
    }

    fn saturation_bound(&self) -> usize {
        2
    }
}

/// Finite strict linear orders. Amalgamation merges the two orders gap by
/// gap between consecutive images of `Z`, putting `X`'s elements first.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearOrders;

impl LinearOrders {
    /// The order `listing` with `x` inserted at position `pos`.
    fn insert_at(listing: &[Vertex], pos: usize, x: Vertex) -> FinStructure {
        let mut ids = listing.to_vec();
        ids.insert(pos, x);
        FinStructure::linear_order(&ids)
    }
}

impl FraisseClass for LinearOrders {
    fn name(&self) -> String {
        "linear_orders".into()
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::linear_order()
    }

    fn contains(&self, m: &FinStructure) -> bool {
        m.signature().relations() == Signature::linear_order().relations() && m.validate().is_ok()
    }

    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam> {
        check_span(z, x, y, f, g)?;
        let g2 = glue_map(x, y, f, g);
        // split both listings at the images of Z; Z sits in the same order
        // on both sides because f and g are embeddings
        let split = |listing: Vec<Vertex>, anchors: &dyn Fn(Vertex) -> bool| {
            let mut gaps: Vec<Vec<Vertex>> = vec![Vec::new()];
            let mut marks = Vec::new();
            for v in listing {
                if anchors(v) {
                    marks.push(v);
                    gaps.push(Vec::new());
                } else {
                    gaps.last_mut().expect("nonempty").push(v);
                }
            }
            (gaps, marks)
        };
        let fz: Vec<Vertex> = f.map.values().copied().collect();
        let gz: Vec<Vertex> = g.map.values().copied().collect();
        let (xgaps, xmarks) = split(x.order_listing(), &|v| fz.contains(&v));
        let (ygaps, _) = split(y.order_listing(), &|v| gz.contains(&v));
        let mut ids = Vec::with_capacity(x.len() + y.len());
        for (i, (xg, yg)) in xgaps.iter().zip(&ygaps).enumerate() {
            ids.extend(xg);
            ids.extend(yg.iter().map(|v| g2[v]));
            if let Some(&mark) = xmarks.get(i) {
                ids.push(mark);
            }
        }
        Ok(Amalgam {
            v: FinStructure::linear_order(&ids),
            f2: Embedding::identity(x),
            g2: Embedding::new(g2),
        })
    }

    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure> {
        let listing = a.order_listing();
        (0..=listing.len())
            .map(|pos| Self::insert_at(&listing, pos, x))
            .collect()
    }

    fn random_extension(&self, m: &FinStructure, x: Vertex, rng: &mut PlayRng) -> FinStructure {
        let listing = m.order_listing();
        Self::insert_at(&listing, rng.gen_range(0..=listing.len()), x)
    }

    fn complete_extension(
        &self,
        m: &FinStructure,
        local: &FinStructure,
        x: Vertex,
        rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        // any slot of m between x's neighbours in `local`
        let listing = m.order_listing();
        let lo = listing
            .iter()
            .rposition(|&v| local.holds(LESS, &[v, x]))
            .map_or(0, |i| i + 1);
        let hi = listing
            .iter()
            .position(|&v| local.holds(LESS, &[x, v]))
            .unwrap_or(listing.len());
        if lo > hi {
            return Err(Error::InvalidStructure(
                "extension does not fit the order".into(),
            ));
        }
        Ok(Self::insert_at(&listing, rng.gen_range(lo..=hi), x))
    }
}

/// Sets with no structure.
#[derive(Debug, Clone, Copy, Default)]
pub struct PureSets;

impl FraisseClass for PureSets {
    fn name(&self) -> String {
        "pure_sets".into()
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::empty()
    }

    fn contains(&self, m: &FinStructure) -> bool {
        m.signature().relations().is_empty()
    }

    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam> {
        free_amalgam(z, x, y, f, g)
    }

    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure> {
        let mut b = a.clone();
        b.add_vertex(x);
        vec![b]
    }

    fn random_extension(&self, m: &FinStructure, x: Vertex, _rng: &mut PlayRng) -> FinStructure {
        let mut b = m.clone();
        b.add_vertex(x);
        b
    }
}

/// Graphs of maximum degree at most `N`. Hereditary with joint embedding,
/// but two vertices of degree `N - 1` glued and extended on both sides
/// break amalgamation.
#[derive(Debug, Clone, Copy)]
pub struct BoundedDegree {
    pub max_degree: usize,
}

impl BoundedDegree {
    pub fn new(max_degree: usize) -> BoundedDegree {
        BoundedDegree { max_degree }
    }
}

impl FraisseClass for BoundedDegree {
    fn name(&self) -> String {
        format!("bounded_degree:{}", self.max_degree)
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::graph()
    }

    fn contains(&self, m: &FinStructure) -> bool {
        Graphs.contains(m) && m.universe().iter().all(|&v| m.degree(v) <= self.max_degree)
    }

    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam> {
        let a = free_amalgam(z, x, y, f, g)?;
        if !self.contains(&a.v) {
            return Err(amalgamation_failure(
                &self.name(),
                "the glued vertices exceed the degree bound",
            ));
        }
        Ok(a)
    }

    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure> {
        graph_extensions(a, x, &|b| self.contains(b))
    }

    fn first_extensions(&self, m: &FinStructure, limit: usize) -> Vec<FinStructure> {
        // only unsaturated vertices can take a new neighbour
        let open: Vec<Vertex> = m
            .universe()
            .iter()
            .copied()
            .filter(|&v| m.degree(v) < self.max_degree)
            .collect();
        let x = m.next_id();
        let mut out = Vec::new();
        for mask in 0..(1u64 << open.len().min(40)).min(FIRST_EXTENSION_SCAN) {
            if out.len() >= limit {
                break;
            }
            if mask.count_ones() as usize > self.max_degree {
                continue;
            }
            out.push(with_neighbors(
                m,
                x,
                open.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, v)| *v),
            ));
        }
        out
    }

    fn random_extension(&self, m: &FinStructure, x: Vertex, rng: &mut PlayRng) -> FinStructure {
        let open: Vec<Vertex> = m
            .universe()
            .iter()
            .copied()
            .filter(|&v| m.degree(v) < self.max_degree)
            .collect();
        let mut nbrs = random_subset(&open, rng);
        nbrs.shuffle(rng);
        nbrs.truncate(self.max_degree);
        with_neighbors(m, x, nbrs)
    }
}

/// Acyclic graphs. Gluing two paths at their ends closes a cycle, so
/// amalgamation fails.
#[derive(Debug, Clone, Copy, Default)]
pub struct Forests;

impl FraisseClass for Forests {
    fn name(&self) -> String {
        "forests".into()
    }

    fn signature(&self) -> Arc<Signature> {
        Signature::graph()
    }

    fn contains(&self, m: &FinStructure) -> bool {
        Graphs.contains(m) && m.is_acyclic()
    }

    fn amalgamate(
        &self,
        z: &FinStructure,
        x: &FinStructure,
        y: &FinStructure,
        f: &Embedding,
        g: &Embedding,
    ) -> Result<Amalgam> {
        let a = free_amalgam(z, x, y, f, g)?;
        if !self.contains(&a.v) {
            return Err(amalgamation_failure(&self.name(), "gluing closes a cycle"));
        }
        Ok(a)
    }

    fn local_extensions(&self, a: &FinStructure, x: Vertex) -> Vec<FinStructure> {
        graph_extensions(a, x, &|b| b.is_acyclic())
    }

    fn first_extensions(&self, m: &FinStructure, limit: usize) -> Vec<FinStructure> {
        // a new vertex stays acyclic iff it meets each component at most once
        let comp_of: BTreeMap<Vertex, usize> = m
            .components()
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |&v| (v, i)))
            .collect();
        first_graph_extensions(m, limit, &|b| {
            let x = b.next_id() - 1;
            let comps: Vec<usize> = b.neighbors(x).iter().map(|v| comp_of[v]).collect();
            let mut dedup = comps.clone();
            dedup.sort_unstable();
            dedup.dedup();
            dedup.len() == comps.len()
        })
    }

    fn random_extension(&self, m: &FinStructure, x: Vertex, rng: &mut PlayRng) -> FinStructure {
        let mut nbrs = Vec::new();
        for c in m.components() {
            if rng.gen_bool(0.5) {
                nbrs.push(*c.choose(rng).expect("components are nonempty"));
            }
        }
        with_neighbors(m, x, nbrs)
    }
}
