//! Graphs of bounded degree: embedding into `N`-regular graphs, a small
//! catalogue of connected `N`-regular graphs, and Odd's strategy that
//! answers with disjoint unions of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::{BoundedDegree, FraisseClass, StructurePoset};
use crate::error::{Error, Result};
use crate::game::{PlayRng, Strategy};
use crate::structs::{isomorphic, FinStructure, Vertex};

fn max_degree(g: &FinStructure) -> usize {
    g.universe().iter().map(|&v| g.degree(v)).max().unwrap_or(0)
}

/// An `N`-regular graph containing `g` as an induced subgraph (with the
/// same ids). Repeated doubling: take a second copy on fresh ids and join
/// every vertex of degree `< N` to its twin.
pub fn n_complete_embed(g: &FinStructure, n: usize) -> Result<FinStructure> {
    if !g.signature().is_graph() {
        return Err(Error::InvalidStructure(
            "n-complete embedding needs a graph".into(),
        ));
    }
    let found = max_degree(g);
    if found > n {
        return Err(Error::DegreeExceeded { found, bound: n });
    }
    let mut h = g.clone();
    while h.universe().iter().any(|&v| h.degree(v) < n) {
        let base = h.next_id();
        let twin: BTreeMap<Vertex, Vertex> = h
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, base + i as Vertex))
            .collect();
        let deficient: Vec<Vertex> = h
            .universe()
            .iter()
            .copied()
            .filter(|&v| h.degree(v) < n)
            .collect();
        let copy = h.relabel(&twin)?;
        for &v in copy.universe() {
            h.add_vertex(v);
        }
        for (a, b) in copy.edges() {
            h.add_edge(a, b)?;
        }
        for v in deficient {
            h.add_edge(v, twin[&v])?;
        }
    }
    Ok(h)
}

/// Largest vertex count the catalogue search visits (at least `N + 1`).
const CATALOGUE_MAX_VERTICES: u32 = 8;

fn catalogue_store() -> &'static Mutex<HashMap<usize, Arc<Vec<FinStructure>>>> {
    static STORE: OnceLock<Mutex<HashMap<usize, Arc<Vec<FinStructure>>>>> = OnceLock::new();
    STORE.get_or_init(Default::default)
}

/// Connected `n`-regular graphs on `v` vertices, one per isomorphism type.
/// Vertex 0 is adjacent to `1..=n` in every candidate, which loses no
/// isomorphism type.
fn regular_graphs(n: usize, v: u32) -> Vec<FinStructure> {
    fn go(
        n: usize,
        v: usize,
        i: usize,
        j: usize,
        adj: &mut Vec<Vec<bool>>,
        deg: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<bool>>>,
    ) {
        if i == v {
            out.push(adj.clone());
            return;
        }
        if j == v {
            // row i is closed
            if deg[i] == n {
                go(n, v, i + 1, i + 2, adj, deg, out);
            }
            return;
        }
        let need = n - deg[i];
        if need > v - j {
            return;
        }
        if need > 0 && deg[j] < n {
            adj[i][j] = true;
            adj[j][i] = true;
            deg[i] += 1;
            deg[j] += 1;
            go(n, v, i, j + 1, adj, deg, out);
            adj[i][j] = false;
            adj[j][i] = false;
            deg[i] -= 1;
            deg[j] -= 1;
        }
        if !(i == 0 && j <= n) {
            go(n, v, i, j + 1, adj, deg, out);
        }
    }
    let size = v as usize;
    if n >= size || (n * size) % 2 == 1 {
        return Vec::new();
    }
    let mut raw = Vec::new();
    go(
        n,
        size,
        0,
        1,
        &mut vec![vec![false; size]; size],
        &mut vec![0; size],
        &mut raw,
    );
    let mut out: Vec<FinStructure> = Vec::new();
    for adj in raw {
        let mut g = FinStructure::empty_graph(v);
        for (a, row) in adj.iter().enumerate() {
            for b in a + 1..size {
                if row[b] {
                    g.add_edge(a as Vertex, b as Vertex).expect("distinct");
                }
            }
        }
        if g.components().len() == 1 && !out.iter().any(|h| isomorphic(h, &g)) {
            out.push(g);
        }
    }
    out
}

/// The catalogue `H_0, H_1, ...` of connected `n`-regular graphs by
/// increasing vertex count (on ids `0..k`), deduplicated up to
/// isomorphism and memoized per `n`. The search stops at
/// `max(n + 1, 8)` vertices; the first `count` entries are returned,
/// cycling through the list when it is shorter.
pub fn catalogue(n: usize, count: usize) -> Vec<FinStructure> {
    let list = {
        let mut store = catalogue_store().lock().expect("catalogue lock");
        Arc::clone(store.entry(n).or_insert_with(|| {
            let top = CATALOGUE_MAX_VERTICES.max(n as u32 + 1);
            Arc::new(
                (n as u32 + 1..=top)
                    .flat_map(|v| regular_graphs(n, v))
                    .collect(),
            )
        }))
    };
    (0..count).map(|i| list[i % list.len()].clone()).collect()
}

/// `h` added to `m` on fresh ids, except for the ids in `keep`, which
/// must already be in `m`.
fn attach(m: &mut FinStructure, h: &FinStructure, keep: &[Vertex]) -> Result<()> {
    let mut next = m.next_id();
    let map: BTreeMap<Vertex, Vertex> = h
        .vertices()
        .into_iter()
        .map(|v| {
            if keep.contains(&v) {
                (v, v)
            } else {
                next += 1;
                (v, next - 1)
            }
        })
        .collect();
    for &v in map.values() {
        m.add_vertex(v);
    }
    for (a, b) in h.edges() {
        m.add_edge(map[&a], map[&b])?;
    }
    Ok(())
}

/// Odd's answer in round `r` (his `r`-th move, from 0) is a disjoint union
/// of at least `k(r) = r + 1` connected `N`-regular graphs containing
/// Eve's move: each component that is not yet regular is completed with
/// [`n_complete_embed`], and catalogue graphs fill up the count.
#[derive(Debug, Clone, Copy)]
pub struct BoundedDegreeOdd {
    pub max_degree: usize,
}

pub fn bounded_degree_odd_strategy(max_degree: usize) -> BoundedDegreeOdd {
    BoundedDegreeOdd { max_degree }
}

impl BoundedDegreeOdd {
    pub fn answer(&self, eve: &FinStructure, round: usize) -> Result<FinStructure> {
        let n = self.max_degree;
        let found = max_degree(eve);
        if found > n {
            return Err(Error::DegreeExceeded { found, bound: n });
        }
        let mut m = eve.clone();
        for comp in eve.components() {
            if comp.iter().any(|&v| eve.degree(v) < n) {
                let h = n_complete_embed(&eve.induced(&comp.iter().copied().collect()), n)?;
                attach(&mut m, &h, &comp)?;
            }
        }
        let have = m.components().len();
        let want = round + 1;
        if have < want {
            for h in catalogue(n, want).into_iter().skip(have) {
                attach(&mut m, &h, &[])?;
            }
        }
        Ok(m)
    }
}

impl Strategy<StructurePoset> for BoundedDegreeOdd {
    fn respond(
        &mut self,
        _poset: &StructurePoset,
        history: &[FinStructure],
        _rng: &mut PlayRng,
    ) -> Result<FinStructure> {
        let eve = history
            .last()
            .ok_or_else(|| Error::InvalidArgument("Odd never opens the game".into()))?;
        let out = self.answer(eve, history.len() / 2)?;
        debug_assert!(BoundedDegree::new(self.max_degree).contains(&out));
        Ok(out)
    }

    fn is_markov(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraisse::RandomStructureEve;
    use crate::game::{run_play, Poset};
    use crate::structs::find_embedding;

    fn regular(g: &FinStructure, n: usize) -> bool {
        g.universe().iter().all(|&v| g.degree(v) == n)
    }

    #[test]
    fn regular_input_is_returned() {
        let c = FinStructure::cycle(5);
        assert_eq!(n_complete_embed(&c, 2).unwrap(), c);
    }

    #[test]
    fn edge_doubles_to_a_square() {
        let e = FinStructure::path(2);
        let h = n_complete_embed(&e, 2).unwrap();
        assert!(isomorphic(&h, &FinStructure::cycle(4)));
        assert_eq!(h.induced(&[0, 1].into()), e);
    }

    #[test]
    fn vertex_doubles_to_an_edge() {
        let h = n_complete_embed(&FinStructure::empty_graph(1), 1).unwrap();
        assert!(isomorphic(&h, &FinStructure::complete(2)));
    }

    #[test]
    fn degree_bound_is_enforced() {
        let star = FinStructure::graph(0..4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(
            n_complete_embed(&star, 2),
            Err(Error::DegreeExceeded { found: 3, bound: 2 })
        );
        // size grows by 2^(max deficiency); the leaves lack two edges
        let h = n_complete_embed(&star, 3).unwrap();
        assert_eq!(h.len(), 4 << 2);
        assert!(regular(&h, 3));
    }

    #[test]
    fn catalogue_counts() {
        // cycles C3..C8
        let c2 = catalogue(2, 6);
        assert_eq!(
            c2.iter().map(FinStructure::len).collect::<Vec<_>>(),
            vec![3, 4, 5, 6, 7, 8]
        );
        // cubic: K4; K33 and the prism; five on 8 vertices
        let c3 = catalogue(3, 9);
        assert_eq!(
            c3.iter().map(FinStructure::len).collect::<Vec<_>>(),
            vec![4, 6, 6, 8, 8, 8, 8, 8, 4]
        );
        assert!(c3
            .iter()
            .all(|g| regular(g, 3) && g.components().len() == 1));
        assert_eq!(
            catalogue(1, 3)
                .iter()
                .map(FinStructure::len)
                .collect::<Vec<_>>(),
            vec![2, 2, 2]
        );
        assert_eq!(catalogue(9, 1)[0], FinStructure::complete(10));
    }

    #[test]
    fn empty_opening_gets_the_first_catalogue_graph() {
        let odd = bounded_degree_odd_strategy(3);
        assert_eq!(
            odd.answer(&FinStructure::empty_graph(0), 0).unwrap(),
            FinStructure::complete(4)
        );
    }

    #[test]
    fn path_of_three_needs_a_longer_cycle() {
        let odd = bounded_degree_odd_strategy(2);
        let p3 = FinStructure::path(3);
        let out = odd.answer(&p3, 0).unwrap();
        assert!(regular(&out, 2));
        assert!(find_embedding(&p3, &FinStructure::cycle(3)).is_none());
        let comp = out
            .components()
            .into_iter()
            .find(|c| c.contains(&0))
            .unwrap();
        assert!(comp.len() >= 4);
    }

    #[test]
    fn play_stays_in_class_with_growing_component_count() {
        let class = Arc::new(BoundedDegree::new(2));
        let p = StructurePoset::new(class.clone());
        let mut eve = RandomStructureEve::new(class.clone(), 2);
        let mut odd = bounded_degree_odd_strategy(2);
        let t = run_play(&p, &mut eve, &mut odd, 14, 4).unwrap();
        for (i, m) in t.moves.iter().enumerate() {
            assert!(class.contains(m));
            if i % 2 == 1 {
                assert!(regular(m, 2));
                assert!(m.components().len() > i / 2);
            }
        }
        assert!(t.moves.windows(2).all(|w| p.leq(&w[0], &w[1])));
    }
}
