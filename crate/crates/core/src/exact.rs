//! Exact optimization kernel: hypergraph matching number ν and vertex cover
//! number τ by branch and bound, bipartite maximum matching / minimum cover
//! (König) and saturating matchings with Hall-violator certificates.
//!
//! All solvers are exact and deterministic. The hypergraph solvers return
//! the lexicographically least optimal witness under the canonical order
//! (matchings compared as sorted occurrence-index lists, covers as sorted
//! vertex lists); this is obtained by a second, ordered search once the
//! optimum value is known. Intended for desk scale, roughly up to a few
//! dozen vertices per class and edges.

use std::collections::BTreeSet;

use crate::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};

/// A verified-size matching: sorted edge-occurrence indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchingWitness {
    pub size: usize,
    pub edge_indices: Vec<usize>,
}

/// A vertex cover witness.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoverWitness {
    pub size: usize,
    pub vertices: BTreeSet<Vertex>,
}

/// A set `U` on one side of a bipartite graph with `|N(U)| < |U|`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HallViolator {
    pub side: u8,
    pub set: BTreeSet<u32>,
    pub neighborhood: BTreeSet<u32>,
}

// ---------------------------------------------------------------------------
// Hypergraph matching number

struct NuSearch<'a> {
    triples: &'a [[u32; 3]],
}

impl NuSearch<'_> {
    /// Distinct vertices per class among the still-selectable triples give a
    /// sound upper bound on how many more disjoint edges can be added.
    fn upper_bound(&self, idx: usize, used: &[Vec<bool>; 3]) -> usize {
        let mut seen: [BTreeSet<u32>; 3] = Default::default();
        let mut compat = 0usize;
        for t in &self.triples[idx..] {
            if (0..3).any(|c| used[c][(t[c] - 1) as usize]) {
                continue;
            }
            compat += 1;
            for c in 0..3 {
                seen[c].insert(t[c]);
            }
        }
        seen.iter().map(|s| s.len()).min().unwrap_or(0).min(compat)
    }

    fn best_value(&self, idx: usize, count: usize, used: &mut [Vec<bool>; 3], best: &mut usize) {
        *best = (*best).max(count);
        if idx >= self.triples.len() || count + self.upper_bound(idx, used) <= *best {
            return;
        }
        let t = self.triples[idx];
        if (0..3).all(|c| !used[c][(t[c] - 1) as usize]) {
            for c in 0..3 {
                used[c][(t[c] - 1) as usize] = true;
            }
            self.best_value(idx + 1, count + 1, used, best);
            for c in 0..3 {
                used[c][(t[c] - 1) as usize] = false;
            }
        }
        self.best_value(idx + 1, count, used, best);
    }

    /// Include-first DFS; the first matching reaching `target` is the
    /// lexicographically least one of that size.
    fn first_of_size(
        &self,
        idx: usize,
        chosen: &mut Vec<usize>,
        used: &mut [Vec<bool>; 3],
        target: usize,
    ) -> bool {
        if chosen.len() == target {
            return true;
        }
        if idx >= self.triples.len()
            || chosen.len() + self.upper_bound(idx, used) < target
        {
            return false;
        }
        let t = self.triples[idx];
        if (0..3).all(|c| !used[c][(t[c] - 1) as usize]) {
            for c in 0..3 {
                used[c][(t[c] - 1) as usize] = true;
            }
            chosen.push(idx);
            if self.first_of_size(idx + 1, chosen, used, target) {
                return true;
            }
            chosen.pop();
            for c in 0..3 {
                used[c][(t[c] - 1) as usize] = false;
            }
        }
        self.first_of_size(idx + 1, chosen, used, target)
    }
}

/// Maximum matching of a 3-partite 3-graph, exact, with the
/// lexicographically least maximum matching as witness.
///
/// Only the first occurrence of each parallel class is branched on: no
/// matching contains two parallel edges, and swapping an occurrence for the
/// first one of its class never increases the witness lexicographically.
pub fn nu_hypergraph(h: &TripartiteHypergraph) -> MatchingWitness {
    // (distinct triple, first occurrence index)
    let mut reps: Vec<([u32; 3], usize)> = Vec::new();
    for (i, &e) in h.edges().iter().enumerate() {
        if reps.last().map(|&(t, _)| t) != Some(e) {
            reps.push((e, i));
        }
    }
    let triples: Vec<[u32; 3]> = reps.iter().map(|&(t, _)| t).collect();
    let sizes = h.class_sizes();
    let mut used: [Vec<bool>; 3] =
        [0, 1, 2].map(|c| vec![false; sizes[c] as usize]);
    let search = NuSearch { triples: &triples };

    let mut best = 0usize;
    search.best_value(0, 0, &mut used, &mut best);

    let mut chosen = Vec::new();
    let found = search.first_of_size(0, &mut chosen, &mut used, best);
    debug_assert!(found);
    MatchingWitness {
        size: best,
        edge_indices: chosen.into_iter().map(|r| reps[r].1).collect(),
    }
}

// ---------------------------------------------------------------------------
// Hypergraph vertex cover number

/// Greedy disjoint sub-collection of the uncovered edges; its size lower
/// bounds the residual cover size.
fn greedy_matching_bound(triples: &[[u32; 3]], alive: &[bool]) -> usize {
    let mut used: [BTreeSet<u32>; 3] = Default::default();
    let mut count = 0;
    for (t, &a) in triples.iter().zip(alive) {
        if a && (0..3).all(|c| !used[c].contains(&t[c])) {
            for c in 0..3 {
                used[c].insert(t[c]);
            }
            count += 1;
        }
    }
    count
}

fn tau_value(triples: &[[u32; 3]], alive: &mut Vec<bool>, chosen: usize, best: &mut usize) {
    let first = alive.iter().position(|&a| a);
    let Some(first) = first else {
        *best = (*best).min(chosen);
        return;
    };
    if chosen + greedy_matching_bound(triples, alive) >= *best {
        return;
    }
    let t = triples[first];
    for c in 0..3 {
        let v = Vertex::new(c as u8 + 1, t[c]);
        let saved: Vec<usize> = (0..triples.len())
            .filter(|&i| alive[i] && triples[i][c] == v.pos)
            .collect();
        for &i in &saved {
            alive[i] = false;
        }
        tau_value(triples, alive, chosen + 1, best);
        for &i in &saved {
            alive[i] = true;
        }
    }
}

/// Is there a cover of the alive edges of size at most `budget` using only
/// vertices strictly above `floor` in the canonical order?
fn can_cover(
    triples: &[[u32; 3]],
    alive: &mut Vec<bool>,
    budget: usize,
    floor: Option<Vertex>,
) -> bool {
    let first = alive.iter().position(|&a| a);
    let Some(first) = first else { return true };
    if budget == 0 || greedy_matching_bound(triples, alive) > budget {
        return false;
    }
    let t = triples[first];
    for c in 0..3 {
        let v = Vertex::new(c as u8 + 1, t[c]);
        if floor.is_some_and(|f| v <= f) {
            continue;
        }
        let saved: Vec<usize> = (0..triples.len())
            .filter(|&i| alive[i] && triples[i][c] == v.pos)
            .collect();
        for &i in &saved {
            alive[i] = false;
        }
        let ok = can_cover(triples, alive, budget - 1, floor);
        for &i in &saved {
            alive[i] = true;
        }
        if ok {
            return true;
        }
    }
    false
}

/// Minimum vertex cover of a 3-partite 3-graph, exact, witness
/// lexicographically least among minimum covers.
pub fn tau_hypergraph(h: &TripartiteHypergraph) -> CoverWitness {
    let triples = h.distinct_triples();
    let mut alive = vec![true; triples.len()];
    let mut best = triples.len() * 3 + 1;
    // any vertex class of the edges is a cover; seed with an easy bound
    let mut seed: [BTreeSet<u32>; 3] = Default::default();
    for t in &triples {
        for c in 0..3 {
            seed[c].insert(t[c]);
        }
    }
    best = best.min(seed.iter().map(|s| s.len()).min().unwrap_or(0) + 1);
    tau_value(&triples, &mut alive, 0, &mut best);
    let tau = if triples.is_empty() { 0 } else { best };

    // lex-least construction: repeatedly commit the smallest vertex that
    // still allows finishing within budget using only larger vertices
    let mut chosen: BTreeSet<Vertex> = BTreeSet::new();
    let mut floor: Option<Vertex> = None;
    while alive.iter().any(|&a| a) {
        let mut candidates: BTreeSet<Vertex> = BTreeSet::new();
        for (t, &a) in triples.iter().zip(&alive) {
            if a {
                for (c, &pos) in t.iter().enumerate() {
                    let v = Vertex::new(c as u8 + 1, pos);
                    if floor.is_none_or(|f| v > f) {
                        candidates.insert(v);
                    }
                }
            }
        }
        let mut committed = false;
        for v in candidates {
            let c = (v.class - 1) as usize;
            let saved: Vec<usize> = (0..triples.len())
                .filter(|&i| alive[i] && triples[i][c] == v.pos)
                .collect();
            for &i in &saved {
                alive[i] = false;
            }
            if can_cover(&triples, &mut alive, tau - chosen.len() - 1, Some(v)) {
                chosen.insert(v);
                floor = Some(v);
                committed = true;
                break;
            }
            for &i in &saved {
                alive[i] = true;
            }
        }
        assert!(committed, "cover construction must succeed at the optimum");
    }
    debug_assert_eq!(chosen.len(), tau);
    CoverWitness {
        size: tau,
        vertices: chosen,
    }
}

// ---------------------------------------------------------------------------
// Bipartite matching, König cover, Hall certificates

/// Adjacency lists over distinct pairs, A side indexed 0-based.
fn adjacency(g: &BipartiteGraph) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); g.side_sizes()[0] as usize];
    for p in g.distinct_pairs() {
        adj[(p[0] - 1) as usize].push(p[1]);
    }
    adj
}

struct Kuhn<'a> {
    adj: &'a [Vec<u32>],
    match_a: Vec<Option<u32>>,
    match_b: Vec<Option<u32>>,
    visited: Vec<bool>,
}

impl Kuhn<'_> {
    fn try_augment(&mut self, a: usize) -> bool {
        for n in 0..self.adj[a].len() {
            let b = (self.adj[a][n] - 1) as usize;
            if self.visited[b] {
                continue;
            }
            self.visited[b] = true;
            let free = match self.match_b[b] {
                None => true,
                Some(a2) => self.try_augment((a2 - 1) as usize),
            };
            if free {
                self.match_b[b] = Some(a as u32 + 1);
                self.match_a[a] = Some(b as u32 + 1);
                return true;
            }
        }
        false
    }
}

/// Matched partner arrays (1-based positions) for a maximum matching,
/// scanning A vertices and neighbors in canonical order.
fn kuhn_matching(g: &BipartiteGraph) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let [na, nb] = g.side_sizes();
    let adj = adjacency(g);
    let mut k = Kuhn {
        adj: &adj,
        match_a: vec![None; na as usize],
        match_b: vec![None; nb as usize],
        visited: vec![false; nb as usize],
    };
    for a in 0..na as usize {
        k.visited.fill(false);
        k.try_augment(a);
    }
    (k.match_a, k.match_b)
}

fn witness_from_pairs(g: &BipartiteGraph, match_a: &[Option<u32>]) -> MatchingWitness {
    let mut edge_indices: Vec<usize> = match_a
        .iter()
        .enumerate()
        .filter_map(|(a, b)| {
            b.map(|b| {
                g.edges()
                    .partition_point(|&e| e < [a as u32 + 1, b])
            })
        })
        .collect();
    edge_indices.sort_unstable();
    MatchingWitness {
        size: edge_indices.len(),
        edge_indices,
    }
}

/// Exact maximum matching of a bipartite multigraph via augmenting paths.
/// Parallel edges are represented by their first occurrence.
pub fn max_matching_bipartite(g: &BipartiteGraph) -> MatchingWitness {
    let (match_a, _) = kuhn_matching(g);
    witness_from_pairs(g, &match_a)
}

/// Side-A vertices alternating-reachable from the given A starts (first step
/// a non-matching edge, back via matching edges), plus the B vertices seen.
fn alternating_reach(
    g: &BipartiteGraph,
    match_b: &[Option<u32>],
    starts: &[u32],
) -> (BTreeSet<u32>, BTreeSet<u32>) {
    let mut seen_a: BTreeSet<u32> = starts.iter().copied().collect();
    let mut seen_b: BTreeSet<u32> = BTreeSet::new();
    let mut queue: Vec<u32> = starts.to_vec();
    while let Some(a) = queue.pop() {
        for b in g.neighbors_of(1, a) {
            if seen_b.insert(b) {
                if let Some(a2) = match_b[(b - 1) as usize] {
                    if seen_a.insert(a2) {
                        queue.push(a2);
                    }
                }
            }
        }
    }
    (seen_a, seen_b)
}

/// Minimum vertex cover of a bipartite multigraph by the König construction:
/// its size always equals the maximum matching size.
pub fn min_cover_bipartite(g: &BipartiteGraph) -> CoverWitness {
    let (match_a, match_b) = kuhn_matching(g);
    let unmatched: Vec<u32> = match_a
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_none())
        .map(|(a, _)| a as u32 + 1)
        .collect();
    let (reach_a, reach_b) = alternating_reach(g, &match_b, &unmatched);
    let mut vertices: BTreeSet<Vertex> = BTreeSet::new();
    for a in 1..=g.side_sizes()[0] {
        if match_a[(a - 1) as usize].is_some() && !reach_a.contains(&a) {
            vertices.insert(Vertex::new(1, a));
        }
    }
    for &b in &reach_b {
        vertices.insert(Vertex::new(2, b));
    }
    let size = vertices.len();
    debug_assert_eq!(size, match_a.iter().flatten().count());
    CoverWitness { size, vertices }
}

/// Either a matching saturating the requested side (1 = A, 2 = B), or a
/// Hall violator on that side.
pub fn saturating_matching(
    g: &BipartiteGraph,
    side: u8,
) -> Result<MatchingWitness, HallViolator> {
    if side == 2 {
        let t = g.transposed();
        return match saturating_matching(&t, 1) {
            Ok(w) => {
                let edge_indices = w
                    .edge_indices
                    .iter()
                    .map(|&i| {
                        let e = t.edge(i);
                        g.edges().partition_point(|&d| d < [e[1], e[0]])
                    })
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect::<Vec<_>>();
                Ok(MatchingWitness {
                    size: w.size,
                    edge_indices,
                })
            }
            Err(v) => Err(HallViolator { side: 2, ..v }),
        };
    }
    let (match_a, match_b) = kuhn_matching(g);
    let unmatched: Vec<u32> = match_a
        .iter()
        .enumerate()
        .filter(|(_, m)| m.is_none())
        .map(|(a, _)| a as u32 + 1)
        .collect();
    if unmatched.is_empty() {
        return Ok(witness_from_pairs(g, &match_a));
    }
    let (set, neighborhood) = alternating_reach(g, &match_b, &unmatched);
    debug_assert!(neighborhood.len() < set.len());
    Err(HallViolator {
        side: 1,
        set,
        neighborhood,
    })
}

/// Re-checks that a matching witness really is a set of pairwise-disjoint
/// edge occurrences of `h`.
pub fn verify_hypergraph_matching(h: &TripartiteHypergraph, w: &MatchingWitness) -> bool {
    if w.size != w.edge_indices.len() {
        return false;
    }
    let mut used: [BTreeSet<u32>; 3] = Default::default();
    for &i in &w.edge_indices {
        if i >= h.edge_count() {
            return false;
        }
        let e = h.edge(i);
        for c in 0..3 {
            if !used[c].insert(e[c]) {
                return false;
            }
        }
    }
    true
}

/// Re-checks that a cover witness touches every edge of `h`.
pub fn verify_hypergraph_cover(h: &TripartiteHypergraph, w: &CoverWitness) -> bool {
    w.size == w.vertices.len()
        && h.edges().iter().all(|e| {
            (0..3).any(|c| w.vertices.contains(&Vertex::new(c as u8 + 1, e[c])))
        })
}

pub fn verify_bipartite_matching(g: &BipartiteGraph, w: &MatchingWitness) -> bool {
    if w.size != w.edge_indices.len() {
        return false;
    }
    let mut used: [BTreeSet<u32>; 2] = Default::default();
    for &i in &w.edge_indices {
        if i >= g.edge_count() {
            return false;
        }
        let e = g.edge(i);
        for c in 0..2 {
            if !used[c].insert(e[c]) {
                return false;
            }
        }
    }
    true
}

pub fn verify_bipartite_cover(g: &BipartiteGraph, w: &CoverWitness) -> bool {
    w.size == w.vertices.len()
        && g.edges().iter().all(|e| {
            w.vertices.contains(&Vertex::new(1, e[0]))
                || w.vertices.contains(&Vertex::new(2, e[1]))
        })
}
