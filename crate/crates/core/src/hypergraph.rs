//! Core data model: 3-partite 3-uniform multi-hypergraphs, bipartite
//! multigraphs and simple graphs, plus the structural extractions (links,
//! vertex deletion, line graphs) everything else is built on.
//!
//! Vertices are addressed positionally: class `1..=3` (or `1..=2` for the
//! two sides of a bipartite graph) and a 1-based position within the class.
//! Display labels, where they exist at all, live in the CLI layer. All edge
//! lists are kept sorted, so an "edge occurrence" is an index into the
//! sorted list and every witness produced by the solvers is reproducible.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// A positional vertex reference: `class` is 1-based, `pos` is 1-based.
///
/// The derived ordering (class first, then position) is the canonical
/// vertex order used for all deterministic tie-breaking.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub class: u8,
    pub pos: u32,
}

impl Vertex {
    pub fn new(class: u8, pos: u32) -> Self {
        Vertex { class, pos }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.class, self.pos)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HgError {
    #[error("class index {0} out of range")]
    BadClass(u8),
    #[error("vertex {0} out of range (class size {1})")]
    OutOfRange(Vertex, u32),
    #[error("subset contains position {0} out of range (class size {1})")]
    SubsetOutOfRange(u32, u32),
}

/// A 3-partite 3-uniform multi-hypergraph. Each edge has exactly one vertex
/// per class and is stored as the triple of positions; parallel edges are
/// repeated entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TripartiteHypergraph {
    class_sizes: [u32; 3],
    edges: Vec<[u32; 3]>,
}

/// Map from old positions to new positions after a vertex deletion,
/// one table per class. `None` means the vertex was deleted.
#[derive(Clone, Debug)]
pub struct DeleteMap {
    forward: [Vec<Option<u32>>; 3],
}

impl DeleteMap {
    /// New position of an old vertex, or `None` if it was deleted.
    pub fn forward(&self, v: Vertex) -> Option<Vertex> {
        let table = &self.forward[(v.class - 1) as usize];
        table
            .get((v.pos - 1) as usize)
            .copied()
            .flatten()
            .map(|pos| Vertex::new(v.class, pos))
    }

    /// Old position of a surviving new vertex.
    pub fn backward(&self, v: Vertex) -> Option<Vertex> {
        let table = &self.forward[(v.class - 1) as usize];
        table
            .iter()
            .position(|&slot| slot == Some(v.pos))
            .map(|i| Vertex::new(v.class, i as u32 + 1))
    }
}

impl TripartiteHypergraph {
    /// Builds a hypergraph, validating ranges and canonicalising the edge
    /// order. Duplicate triples are kept: multiplicity is repetition count.
    pub fn new(
        class_sizes: [u32; 3],
        mut edges: Vec<[u32; 3]>,
    ) -> Result<Self, HgError> {
        for e in &edges {
            for c in 0..3 {
                if e[c] == 0 || e[c] > class_sizes[c] {
                    return Err(HgError::OutOfRange(
                        Vertex::new(c as u8 + 1, e[c]),
                        class_sizes[c],
                    ));
                }
            }
        }
        edges.sort_unstable();
        Ok(TripartiteHypergraph { class_sizes, edges })
    }

    pub fn class_sizes(&self) -> [u32; 3] {
        self.class_sizes
    }

    pub fn class_size(&self, class: u8) -> u32 {
        self.class_sizes[(class - 1) as usize]
    }

    /// Edge occurrences in canonical (sorted) order.
    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    /// Number of edge occurrences, counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, idx: usize) -> [u32; 3] {
        self.edges[idx]
    }

    /// The three vertices of an edge occurrence.
    pub fn edge_vertices(&self, idx: usize) -> [Vertex; 3] {
        let e = self.edges[idx];
        [
            Vertex::new(1, e[0]),
            Vertex::new(2, e[1]),
            Vertex::new(3, e[2]),
        ]
    }

    pub fn multiplicity(&self, triple: [u32; 3]) -> usize {
        self.edges.iter().filter(|&&e| e == triple).count()
    }

    /// Distinct underlying triples, sorted.
    pub fn distinct_triples(&self) -> Vec<[u32; 3]> {
        let mut t = self.edges.clone();
        t.dedup();
        t
    }

    pub fn vertex_count(&self) -> usize {
        self.class_sizes.iter().map(|&n| n as usize).sum()
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1u8..=3).flat_map(move |c| {
            (1..=self.class_size(c)).map(move |p| Vertex::new(c, p))
        })
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        (1..=3).contains(&v.class) && v.pos >= 1 && v.pos <= self.class_size(v.class)
    }

    /// Occurrence indices of edges entirely inside the given vertex set.
    pub fn edges_within(&self, set: &BTreeSet<Vertex>) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                (0..3).all(|c| set.contains(&Vertex::new(c as u8 + 1, e[c])))
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// The link over class `i` restricted to `subset`: the bipartite
    /// multigraph on the other two classes (smaller class index becomes the
    /// A side) whose edges are the hyperedges with their class-`i` vertex in
    /// `subset`, stripped of that vertex. Multiplicities carry over.
    pub fn link_graph(
        &self,
        class: u8,
        subset: &BTreeSet<u32>,
    ) -> Result<BipartiteGraph, HgError> {
        if !(1..=3).contains(&class) {
            return Err(HgError::BadClass(class));
        }
        let i = (class - 1) as usize;
        for &p in subset {
            if p == 0 || p > self.class_sizes[i] {
                return Err(HgError::SubsetOutOfRange(p, self.class_sizes[i]));
            }
        }
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let edges = self
            .edges
            .iter()
            .filter(|e| subset.contains(&e[i]))
            .map(|e| [e[j], e[k]])
            .collect();
        BipartiteGraph::new([self.class_sizes[j], self.class_sizes[k]], edges)
    }

    /// The link over the full class.
    pub fn full_link(&self, class: u8) -> Result<BipartiteGraph, HgError> {
        let i = (class - 1) as usize;
        if !(1..=3).contains(&class) {
            return Err(HgError::BadClass(class));
        }
        self.link_graph(class, &(1..=self.class_sizes[i]).collect())
    }

    /// Removes the given vertices and every edge meeting them, re-indexing
    /// the classes. The returned map translates old positions to new ones.
    pub fn delete_vertices(
        &self,
        remove: &BTreeSet<Vertex>,
    ) -> Result<(TripartiteHypergraph, DeleteMap), HgError> {
        for &v in remove {
            if !(1..=3).contains(&v.class) {
                return Err(HgError::BadClass(v.class));
            }
            if v.pos == 0 || v.pos > self.class_size(v.class) {
                return Err(HgError::OutOfRange(v, self.class_size(v.class)));
            }
        }
        let mut forward: [Vec<Option<u32>>; 3] = Default::default();
        let mut new_sizes = [0u32; 3];
        for c in 0..3 {
            let mut next = 0u32;
            forward[c] = (1..=self.class_sizes[c])
                .map(|p| {
                    if remove.contains(&Vertex::new(c as u8 + 1, p)) {
                        None
                    } else {
                        next += 1;
                        Some(next)
                    }
                })
                .collect();
            new_sizes[c] = next;
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                let mut out = [0u32; 3];
                for c in 0..3 {
                    out[c] = forward[c][(e[c] - 1) as usize]?;
                }
                Some(out)
            })
            .collect();
        let h = TripartiteHypergraph::new(new_sizes, edges)?;
        Ok((h, DeleteMap { forward }))
    }

    /// The line graph: one vertex per edge occurrence, adjacent when the
    /// underlying triples share a vertex. Parallel hyperedges intersect, so
    /// their line-graph vertices are adjacent.
    pub fn line_graph(&self) -> SimpleGraph {
        let m = self.edges.len();
        let mut g = SimpleGraph::new(m);
        for a in 0..m {
            for b in a + 1..m {
                let (e, f) = (self.edges[a], self.edges[b]);
                if (0..3).any(|c| e[c] == f[c]) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

/// A bipartite multigraph with sides A (class 1) and B (class 2).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BipartiteGraph {
    side_sizes: [u32; 2],
    edges: Vec<[u32; 2]>,
}

impl BipartiteGraph {
    pub fn new(side_sizes: [u32; 2], mut edges: Vec<[u32; 2]>) -> Result<Self, HgError> {
        for e in &edges {
            for c in 0..2 {
                if e[c] == 0 || e[c] > side_sizes[c] {
                    return Err(HgError::OutOfRange(
                        Vertex::new(c as u8 + 1, e[c]),
                        side_sizes[c],
                    ));
                }
            }
        }
        edges.sort_unstable();
        Ok(BipartiteGraph { side_sizes, edges })
    }

    pub fn side_sizes(&self) -> [u32; 2] {
        self.side_sizes
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, idx: usize) -> [u32; 2] {
        self.edges[idx]
    }

    pub fn distinct_pairs(&self) -> Vec<[u32; 2]> {
        let mut p = self.edges.clone();
        p.dedup();
        p
    }

    pub fn multiplicity(&self, pair: [u32; 2]) -> usize {
        self.edges.iter().filter(|&&e| e == pair).count()
    }

    pub fn has_pair(&self, pair: [u32; 2]) -> bool {
        self.edges.binary_search(&pair).is_ok()
    }

    /// Neighborhood of a set of positions on one side (`side` is 1 or 2);
    /// the result lives on the other side.
    pub fn neighborhood(&self, side: u8, set: &BTreeSet<u32>) -> BTreeSet<u32> {
        let s = (side - 1) as usize;
        self.edges
            .iter()
            .filter(|e| set.contains(&e[s]))
            .map(|e| e[1 - s])
            .collect()
    }

    pub fn neighbors_of(&self, side: u8, pos: u32) -> BTreeSet<u32> {
        self.neighborhood(side, &BTreeSet::from([pos]))
    }

    /// Removes edge occurrences by index.
    pub fn remove_edges(&self, remove: &BTreeSet<usize>) -> BipartiteGraph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !remove.contains(i))
            .map(|(_, &e)| e)
            .collect();
        BipartiteGraph {
            side_sizes: self.side_sizes,
            edges,
        }
    }

    /// Removes a vertex of one side together with its edges, keeping the
    /// positions of all other vertices (a hole is fine for the solvers; the
    /// side size is left unchanged so references stay valid).
    pub fn remove_vertex_edges(&self, side: u8, pos: u32) -> BipartiteGraph {
        let s = (side - 1) as usize;
        let edges = self
            .edges
            .iter()
            .filter(|e| e[s] != pos)
            .copied()
            .collect();
        BipartiteGraph {
            side_sizes: self.side_sizes,
            edges,
        }
    }

    /// The same multigraph with the two sides swapped.
    pub fn transposed(&self) -> BipartiteGraph {
        let [na, nb] = self.side_sizes;
        let edges = self.edges.iter().map(|e| [e[1], e[0]]).collect();
        BipartiteGraph::new([nb, na], edges).expect("transpose preserves validity")
    }

    /// Line graph on edge occurrences, adjacent when sharing an endpoint.
    pub fn line_graph(&self) -> SimpleGraph {
        let m = self.edges.len();
        let mut g = SimpleGraph::new(m);
        for a in 0..m {
            for b in a + 1..m {
                let (e, f) = (self.edges[a], self.edges[b]);
                if e[0] == f[0] || e[1] == f[1] {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }
}

/// A simple graph (no loops, no parallel edges) on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        SimpleGraph {
            n,
            adj: vec![vec![0u64; words]; n],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u][v / 64] |= 1 << (v % 64);
        self.adj[v][u / 64] |= 1 << (u % 64);
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] & (1 << (v % 64)) != 0
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.adjacent(u, v))
    }

    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True when `v` is non-adjacent to every vertex in `set`.
    pub fn independent_from(&self, v: usize, set: &[usize]) -> bool {
        set.iter().all(|&u| !self.adjacent(u, v))
    }

    /// Connected components as sorted vertex lists, in canonical order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Convenience constructor for per-class subsets.
pub fn full_class(size: u32) -> BTreeSet<u32> {
    (1..=size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{fixture, Fixture};

    #[test]
    fn link_of_fano_over_v3_is_c4() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let link = fano.full_link(3).unwrap();
        assert_eq!(link.side_sizes(), [2, 2]);
        assert_eq!(
            link.edges(),
            &[[1, 1], [1, 2], [2, 1], [2, 2]],
            "stripping the V3 coordinate of abc, ayz, xbz, xyc"
        );
    }

    #[test]
    fn link_of_fano_through_c_only() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let link = fano.link_graph(3, &BTreeSet::from([1])).unwrap();
        assert_eq!(link.edges(), &[[1, 1], [2, 2]]);
    }

    #[test]
    fn link_of_empty_subset_is_edgeless() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let link = fano.link_graph(2, &BTreeSet::new()).unwrap();
        assert_eq!(link.edge_count(), 0);
        assert_eq!(link.side_sizes(), [2, 2]);
    }

    #[test]
    fn link_rejects_bad_input() {
        let fano = fixture(Fixture::Fano).hypergraph;
        assert_eq!(
            fano.link_graph(4, &BTreeSet::new()),
            Err(HgError::BadClass(4))
        );
        assert!(matches!(
            fano.link_graph(1, &BTreeSet::from([7])),
            Err(HgError::SubsetOutOfRange(7, 2))
        ));
    }

    #[test]
    fn delete_a_from_fano() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let (h, map) = fano
            .delete_vertices(&BTreeSet::from([Vertex::new(1, 1)]))
            .unwrap();
        assert_eq!(h.class_sizes(), [1, 2, 2]);
        // abc and ayz contained a; xbz, xyc survive with x re-indexed to 1:1
        assert_eq!(h.edges(), &[[1, 1, 2], [1, 2, 1]]);
        assert_eq!(map.forward(Vertex::new(1, 2)), Some(Vertex::new(1, 1)));
        assert_eq!(map.forward(Vertex::new(1, 1)), None);
        assert_eq!(map.backward(Vertex::new(1, 1)), Some(Vertex::new(1, 2)));
    }

    #[test]
    fn delete_nothing_is_identity() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let (h, _) = fano.delete_vertices(&BTreeSet::new()).unwrap();
        assert_eq!(h, fano);
    }

    #[test]
    fn delete_a_and_x_clears_fano() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let (h, _) = fano
            .delete_vertices(&BTreeSet::from([Vertex::new(1, 1), Vertex::new(1, 2)]))
            .unwrap();
        assert_eq!(h.edge_count(), 0);
        assert_eq!(h.vertex_count(), 4);
    }

    #[test]
    fn line_graph_of_fano_is_k4() {
        let fano = fixture(Fixture::Fano).hypergraph;
        let l = fano.line_graph();
        assert_eq!(l.vertex_count(), 4);
        for u in 0..4 {
            for v in u + 1..4 {
                assert!(l.adjacent(u, v), "all pairs of Fano edges intersect");
            }
        }
    }

    #[test]
    fn line_graph_of_disjoint_edges() {
        let h = TripartiteHypergraph::new([2, 2, 2], vec![[1, 1, 1], [2, 2, 2]]).unwrap();
        let l = h.line_graph();
        assert_eq!(l.vertex_count(), 2);
        assert!(!l.adjacent(0, 1));
    }

    #[test]
    fn line_graph_of_s8() {
        let s8 = fixture(Fixture::S8).hypergraph;
        let l = s8.line_graph();
        assert_eq!(l.vertex_count(), 8);
        // the two edges {(1,2),(2,2),(3,2)} and {(1,3),(2,3),(3,3)}
        let e7 = s8.edges().iter().position(|&e| e == [2, 2, 2]).unwrap();
        let e8 = s8.edges().iter().position(|&e| e == [3, 3, 3]).unwrap();
        assert!(!l.adjacent(e7, e8));
        for v in 0..8 {
            if v != e7 && v != e8 {
                assert!(l.adjacent(e7, v) && l.adjacent(e8, v));
            }
        }
    }

    #[test]
    fn link_over_full_class_preserves_edge_count() {
        for f in [Fixture::Fano, Fixture::MinR, Fixture::S8] {
            let h = fixture(f).hypergraph;
            for class in 1..=3 {
                assert_eq!(
                    h.full_link(class).unwrap().edge_count(),
                    h.edge_count()
                );
            }
        }
    }
}
