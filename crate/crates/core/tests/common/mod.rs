//! Brute-force oracles and small instance samplers shared by the
//! integration tests. Everything here is computed from first principles
//! (subset enumeration, exhaustive search) so the main solvers can be
//! cross-checked against an independent route.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ryser_core::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};

/// Maximum number of pairwise disjoint edges, by exhaustive branching.
pub fn brute_nu_hypergraph(h: &TripartiteHypergraph) -> usize {
    fn rec(triples: &[[u32; 3]], idx: usize, used: &mut Vec<[u32; 3]>) -> usize {
        if idx == triples.len() {
            return 0;
        }
        let skip = rec(triples, idx + 1, used);
        let t = triples[idx];
        let compatible = used.iter().all(|u| (0..3).all(|c| u[c] != t[c]));
        if compatible {
            used.push(t);
            let take = 1 + rec(triples, idx + 1, used);
            used.pop();
            skip.max(take)
        } else {
            skip
        }
    }
    let triples = h.distinct_triples();
    rec(&triples, 0, &mut Vec::new())
}

/// Minimum vertex cover size by subset enumeration over all vertices.
pub fn brute_tau_hypergraph(h: &TripartiteHypergraph) -> usize {
    let vertices: Vec<Vertex> = h.vertices().collect();
    let triples = h.distinct_triples();
    if triples.is_empty() {
        return 0;
    }
    fn exists(
        triples: &[[u32; 3]],
        vertices: &[Vertex],
        start: usize,
        left: usize,
        chosen: &mut BTreeSet<Vertex>,
    ) -> bool {
        if left == 0 {
            return triples.iter().all(|t| {
                (0..3).any(|c| chosen.contains(&Vertex::new(c as u8 + 1, t[c])))
            });
        }
        for i in start..vertices.len() {
            chosen.insert(vertices[i]);
            let ok = exists(triples, vertices, i + 1, left - 1, chosen);
            chosen.remove(&vertices[i]);
            if ok {
                return true;
            }
        }
        false
    }
    for size in 1..=vertices.len() {
        if exists(&triples, &vertices, 0, size, &mut BTreeSet::new()) {
            return size;
        }
    }
    vertices.len()
}

pub fn brute_nu_bipartite(g: &BipartiteGraph) -> usize {
    fn rec(pairs: &[[u32; 2]], idx: usize, used: &mut Vec<[u32; 2]>) -> usize {
        if idx == pairs.len() {
            return 0;
        }
        let skip = rec(pairs, idx + 1, used);
        let p = pairs[idx];
        if used.iter().all(|u| u[0] != p[0] && u[1] != p[1]) {
            used.push(p);
            let take = 1 + rec(pairs, idx + 1, used);
            used.pop();
            skip.max(take)
        } else {
            skip
        }
    }
    let pairs = g.distinct_pairs();
    rec(&pairs, 0, &mut Vec::new())
}

/// Minimum bipartite vertex cover by subset enumeration (both sides mixed).
pub fn brute_tau_bipartite(g: &BipartiteGraph) -> usize {
    let pairs = g.distinct_pairs();
    if pairs.is_empty() {
        return 0;
    }
    let vertices: Vec<Vertex> = (1..=g.side_sizes()[0])
        .map(|p| Vertex::new(1, p))
        .chain((1..=g.side_sizes()[1]).map(|p| Vertex::new(2, p)))
        .collect();
    let n = vertices.len();
    for size in 1..=n {
        if covers_of_size(&pairs, &vertices, size) {
            return size;
        }
    }
    n
}

fn covers_of_size(pairs: &[[u32; 2]], vertices: &[Vertex], size: usize) -> bool {
    fn rec(
        pairs: &[[u32; 2]],
        vertices: &[Vertex],
        start: usize,
        left: usize,
        chosen: &mut BTreeSet<Vertex>,
    ) -> bool {
        if left == 0 {
            return pairs.iter().all(|p| {
                chosen.contains(&Vertex::new(1, p[0])) || chosen.contains(&Vertex::new(2, p[1]))
            });
        }
        for i in start..vertices.len() {
            chosen.insert(vertices[i]);
            if rec(pairs, vertices, i + 1, left - 1, chosen) {
                chosen.remove(&vertices[i]);
                return true;
            }
            chosen.remove(&vertices[i]);
        }
        false
    }
    rec(pairs, vertices, 0, size, &mut BTreeSet::new())
}

/// All essential subsets of the B side, by enumerating every A-side
/// family: C = N(U) is essential when |C| = |U|.
pub fn brute_essential_sets(g: &BipartiteGraph) -> Vec<BTreeSet<u32>> {
    let na = g.side_sizes()[0];
    let mut out: BTreeSet<BTreeSet<u32>> = BTreeSet::new();
    for mask in 0u32..(1 << na) {
        let family: BTreeSet<u32> = (1..=na).filter(|&a| mask & (1 << (a - 1)) != 0).collect();
        let n = g.neighborhood(1, &family);
        if n.len() == family.len() {
            out.insert(n);
        }
    }
    out.into_iter().collect()
}

/// Inclusion-minimal nonempty equineighbored sets by subset enumeration.
pub fn brute_minimal_equineighbored(g: &BipartiteGraph, side: u8) -> Vec<BTreeSet<u32>> {
    let n = g.side_sizes()[(side - 1) as usize];
    let mut all: Vec<BTreeSet<u32>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let set: BTreeSet<u32> = (1..=n).filter(|&v| mask & (1 << (v - 1)) != 0).collect();
        if g.neighborhood(side, &set).len() == set.len() {
            all.push(set);
        }
    }
    let mut minimal: Vec<BTreeSet<u32>> = all
        .iter()
        .filter(|s| !all.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
        .cloned()
        .collect();
    // same-size subsets cannot nest; the filter above suffices
    minimal.sort();
    minimal.dedup();
    minimal
}

/// Seeded random 3-partite multigraph with class sizes up to `max_size`
/// and at most `max_edges` edge occurrences.
pub fn random_hypergraph(
    rng: &mut ChaCha8Rng,
    max_size: u32,
    max_edges: usize,
) -> TripartiteHypergraph {
    let sizes = [0; 3].map(|_| rng.random_range(1..=max_size));
    let m = rng.random_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| {
            [
                rng.random_range(1..=sizes[0]),
                rng.random_range(1..=sizes[1]),
                rng.random_range(1..=sizes[2]),
            ]
        })
        .collect();
    TripartiteHypergraph::new(sizes, edges).expect("positions in range")
}

/// Seeded random bipartite multigraph.
pub fn random_bipartite(
    rng: &mut ChaCha8Rng,
    max_size: u32,
    max_edges: usize,
) -> BipartiteGraph {
    let sizes = [0; 2].map(|_| rng.random_range(1..=max_size));
    let m = rng.random_range(0..=max_edges);
    let edges = (0..m)
        .map(|_| {
            [
                rng.random_range(1..=sizes[0]),
                rng.random_range(1..=sizes[1]),
            ]
        })
        .collect();
    BipartiteGraph::new(sizes, edges).expect("positions in range")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
