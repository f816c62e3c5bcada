//! Bipartite structure theory of link graphs: equineighbored, decent and
//! good sets, CP-decompositions into disjoint C4/P4 pieces, the extension
//! of small equineighbored sets to truncated Fano planes, and verification
//! of cromulent triples.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exact::{self, max_matching_bipartite, saturating_matching};
use crate::homebase::{self, is_truncated_multi_fano};
use crate::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};
use crate::topo;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("side index must be 1 or 2")]
    BadSide,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("set contains out-of-range positions")]
    OutOfRange,
    #[error("some link graph has no perfect matching")]
    NoPerfectMatchings,
    #[error("the set is not a minimal equineighbored set of size 2")]
    NotMinimalEquineighboredPair,
    #[error("two disjoint hyperedges meet the set")]
    DisjointEdgesMeetSet,
    #[error("sets must be nonempty and placed in three distinct classes")]
    BadTriplePlacement,
}

// ---------------------------------------------------------------------------
// Equineighbored sets

/// All inclusion-minimal nonempty sets X on the chosen side with
/// |N(X)| = |X|, in canonical order.
///
/// When a maximum matching saturates the side, tight sets are exactly the
/// closed sets of the partner digraph, and the minimal ones are its sink
/// strongly connected components. Otherwise (deficient side) the sets are
/// found by subset enumeration, which is fine at desk scale.
pub fn minimal_equineighbored_sets(g: &BipartiteGraph, side: u8) -> Vec<BTreeSet<u32>> {
    assert!(side == 1 || side == 2, "side index must be 1 or 2");
    let n = g.side_sizes()[(side - 1) as usize];
    if n == 0 {
        return Vec::new();
    }
    if let Ok(w) = saturating_matching(g, side) {
        return minimal_tight_by_scc(g, side, &w);
    }
    minimal_equineighbored_brute(g, side, n)
}

fn minimal_tight_by_scc(
    g: &BipartiteGraph,
    side: u8,
    sat: &exact::MatchingWitness,
) -> Vec<BTreeSet<u32>> {
    let n = g.side_sizes()[(side - 1) as usize] as usize;
    let other = 3 - side;
    // partner[b] = matched vertex of the other side, per the saturation
    let mut partner_of_other: std::collections::BTreeMap<u32, u32> = Default::default();
    for &i in &sat.edge_indices {
        let e = g.edge(i);
        let (mine, theirs) = if side == 1 { (e[0], e[1]) } else { (e[1], e[0]) };
        partner_of_other.insert(theirs, mine);
    }
    // x -> partner(a) for every neighbor a of x; vertices with an unmatched
    // neighbor belong to no tight set
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut bad = vec![false; n];
    for x in 1..=n as u32 {
        for a in g.neighbors_of(side, x) {
            match partner_of_other.get(&a) {
                Some(&y) => {
                    succ[(x - 1) as usize].insert((y - 1) as usize);
                }
                None => bad[(x - 1) as usize] = true,
            }
        }
        let _ = other;
    }
    // Tarjan-free SCC via Kosaraju on the small digraph
    let sccs = strongly_connected(&succ);
    let mut out: Vec<BTreeSet<u32>> = Vec::new();
    'scc: for comp in &sccs {
        for &v in comp {
            if bad[v] {
                continue 'scc;
            }
            for &s in &succ[v] {
                if !comp.contains(&s) {
                    continue 'scc; // not a sink component
                }
            }
        }
        out.push(comp.iter().map(|&v| v as u32 + 1).collect());
    }
    out.sort();
    out
}

fn strongly_connected(succ: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let n = succ.len();
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    fn dfs1(v: usize, succ: &[BTreeSet<usize>], seen: &mut [bool], order: &mut Vec<usize>) {
        seen[v] = true;
        for &w in &succ[v] {
            if !seen[w] {
                dfs1(w, succ, seen, order);
            }
        }
        order.push(v);
    }
    for v in 0..n {
        if !seen[v] {
            dfs1(v, succ, &mut seen, &mut order);
        }
    }
    let mut pred: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (v, outs) in succ.iter().enumerate() {
        for &w in outs {
            pred[w].insert(v);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut next = 0;
    for &v in order.iter().rev() {
        if comp[v] != usize::MAX {
            continue;
        }
        let mut stack = vec![v];
        comp[v] = next;
        while let Some(u) = stack.pop() {
            for &w in &pred[u] {
                if comp[w] == usize::MAX {
                    comp[w] = next;
                    stack.push(w);
                }
            }
        }
        next += 1;
    }
    let mut out = vec![BTreeSet::new(); next];
    for (v, &c) in comp.iter().enumerate() {
        out[c].insert(v);
    }
    out
}

fn minimal_equineighbored_brute(g: &BipartiteGraph, side: u8, n: u32) -> Vec<BTreeSet<u32>> {
    let mut found: Vec<BTreeSet<u32>> = Vec::new();
    // subsets in increasing size then lex order; skip supersets of found sets
    for size in 1..=n {
        let mut subset: Vec<u32> = Vec::new();
        enumerate_subsets(n, size, 1, &mut subset, &mut |s: &[u32]| {
            let set: BTreeSet<u32> = s.iter().copied().collect();
            if found.iter().any(|f| f.is_subset(&set)) {
                return;
            }
            if g.neighborhood(side, &set).len() == set.len() {
                found.push(set);
            }
        });
    }
    found.sort();
    found
}

fn enumerate_subsets(
    n: u32,
    size: u32,
    start: u32,
    subset: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if subset.len() == size as usize {
        visit(subset);
        return;
    }
    for v in start..=n {
        if n - v + 1 < size - subset.len() as u32 {
            break;
        }
        subset.push(v);
        enumerate_subsets(n, size, v + 1, subset, visit);
        subset.pop();
    }
}

// ---------------------------------------------------------------------------
// Decent and good sets

/// A B-side set X is decent when |N(X)| <= |X|, the maximum matching
/// splits as |N(X)| + |B \ X|, and every edge at X lies in some maximum
/// matching (tested by forcing the edge).
pub fn is_decent(g: &BipartiteGraph, x: &BTreeSet<u32>) -> bool {
    assert!(!x.is_empty(), "X must be nonempty");
    let nx = g.neighborhood(2, x);
    if nx.len() > x.len() {
        return false;
    }
    let nu = max_matching_bipartite(g).size;
    let b_minus_x = g.side_sizes()[1] as usize - x.len();
    if nu != nx.len() + b_minus_x {
        return false;
    }
    for &xb in x {
        for ya in g.neighbors_of(2, xb) {
            let mut reduced = g.remove_vertex_edges(2, xb);
            reduced = reduced.remove_vertex_edges(1, ya);
            if max_matching_bipartite(&reduced).size + 1 != nu {
                return false;
            }
        }
    }
    true
}

/// Decent, and deleting the edges from any neighbor y to the rest of the
/// B side strictly raises the homological connectivity of the line-graph
/// complex. The comparison is proxy-based: connectivity estimates that
/// cannot certify a strict increase count as failure.
pub fn is_good(g: &BipartiteGraph, x: &BTreeSet<u32>, cap: usize) -> bool {
    if !is_decent(g, x) {
        return false;
    }
    let base = topo::hom_connectivity_of_line_bg(g, cap).hom_conn;
    for y in g.neighborhood(2, x) {
        let remove: BTreeSet<usize> = (0..g.edge_count())
            .filter(|&i| {
                let e = g.edge(i);
                e[0] == y && !x.contains(&e[1])
            })
            .collect();
        if remove.is_empty() {
            return false;
        }
        let reduced = g.remove_edges(&remove);
        let conn = topo::hom_connectivity_of_line_bg(&reduced, cap).hom_conn;
        if !conn.strictly_exceeds(&base) {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------------
// CP-decompositions

/// A piece of a CP-decomposition. C4 pieces are complete 2x2 bipartite
/// subgraphs; P4 pieces are paths on four vertices stored from their
/// A-side endpoint, so the interior vertices are positions 2 and 3.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Piece {
    /// C4 on A-side {a1, a2} and B-side {b1, b2}, a1 < a2, b1 < b2.
    C4 { a: [u32; 2], b: [u32; 2] },
    /// Path a1 - b1 - a2 - b2 with interiors b1 and a2.
    P4 { a: [u32; 2], b: [u32; 2] },
}

impl Piece {
    /// A-side, B-side vertex sets.
    pub fn vertices(&self) -> ([u32; 2], [u32; 2]) {
        match *self {
            Piece::C4 { a, b } | Piece::P4 { a, b } => (a, b),
        }
    }

    /// The underlying pairs of the piece edges.
    pub fn pairs(&self) -> Vec<[u32; 2]> {
        match *self {
            Piece::C4 { a, b } => vec![
                [a[0], b[0]],
                [a[0], b[1]],
                [a[1], b[0]],
                [a[1], b[1]],
            ],
            Piece::P4 { a, b } => vec![[a[0], b[0]], [a[1], b[0]], [a[1], b[1]]],
        }
    }

    /// Interior vertices as (A-side, B-side) position options.
    pub fn interiors(&self) -> (Option<u32>, Option<u32>) {
        match *self {
            Piece::C4 { .. } => (None, None),
            Piece::P4 { a, b } => (Some(a[1]), Some(b[0])),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CPDecomposition {
    pub pieces: Vec<Piece>,
}

impl CPDecomposition {
    pub fn new(mut pieces: Vec<Piece>) -> Self {
        pieces.sort();
        CPDecomposition { pieces }
    }
}

fn piece_is_subgraph(g: &BipartiteGraph, piece: &Piece) -> bool {
    let ([a1, a2], [b1, b2]) = piece.vertices();
    let [na, nb] = g.side_sizes();
    let in_range = (1..=na).contains(&a1)
        && (1..=na).contains(&a2)
        && (1..=nb).contains(&b1)
        && (1..=nb).contains(&b2);
    // C4 pieces are stored sorted; P4 pieces run from the A-side endpoint,
    // so only distinctness is required there
    let shape = match piece {
        Piece::C4 { .. } => a1 < a2 && b1 < b2,
        Piece::P4 { .. } => a1 != a2 && b1 != b2,
    };
    in_range && shape && piece.pairs().iter().all(|&p| g.has_pair(p))
}

/// Checks the three CP-decomposition invariants against `g`: pieces are
/// vertex-disjoint subgraphs, there are ν(G)/2 of them, and every edge is
/// parallel to a C4 edge or incident to a P4 interior vertex.
pub fn verify_cp_decomposition(g: &BipartiteGraph, d: &CPDecomposition) -> bool {
    let mut used_a: BTreeSet<u32> = BTreeSet::new();
    let mut used_b: BTreeSet<u32> = BTreeSet::new();
    for piece in &d.pieces {
        if !piece_is_subgraph(g, piece) {
            return false;
        }
        let (a, b) = piece.vertices();
        for v in a {
            if !used_a.insert(v) {
                return false;
            }
        }
        for v in b {
            if !used_b.insert(v) {
                return false;
            }
        }
    }
    let nu = max_matching_bipartite(g).size;
    if !nu.is_multiple_of(2) || d.pieces.len() != nu / 2 {
        return false;
    }
    let mut interior_a: BTreeSet<u32> = BTreeSet::new();
    let mut interior_b: BTreeSet<u32> = BTreeSet::new();
    let mut c4_pairs: BTreeSet<[u32; 2]> = BTreeSet::new();
    for piece in &d.pieces {
        match piece {
            Piece::C4 { .. } => c4_pairs.extend(piece.pairs()),
            Piece::P4 { .. } => {
                let (ia, ib) = piece.interiors();
                interior_a.extend(ia);
                interior_b.extend(ib);
            }
        }
    }
    g.edges().iter().all(|&e| {
        c4_pairs.contains(&e) || interior_a.contains(&e[0]) || interior_b.contains(&e[1])
    })
}

fn candidate_pieces(g: &BipartiteGraph) -> Vec<Piece> {
    let [na, nb] = g.side_sizes();
    let mut out = Vec::new();
    for a1 in 1..=na {
        for a2 in a1 + 1..=na {
            for b1 in 1..=nb {
                for b2 in b1 + 1..=nb {
                    let piece = Piece::C4 {
                        a: [a1, a2],
                        b: [b1, b2],
                    };
                    if piece_is_subgraph(g, &piece) {
                        out.push(piece);
                    }
                }
            }
        }
    }
    // paths a1 - b1 - a2 - b2 need exactly those three pairs; b2 != b1 and
    // a2 != a1, with no ordering constraint between path ends beyond the
    // stored canonical form
    for a1 in 1..=na {
        for b1 in 1..=nb {
            if !g.has_pair([a1, b1]) {
                continue;
            }
            for a2 in 1..=na {
                if a2 == a1 || !g.has_pair([a2, b1]) {
                    continue;
                }
                for b2 in 1..=nb {
                    if b2 == b1 || !g.has_pair([a2, b2]) {
                        continue;
                    }
                    let piece = Piece::P4 {
                        a: [a1, a2],
                        b: [b1, b2],
                    };
                    out.push(piece);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

struct CpSearch<'a> {
    g: &'a BipartiteGraph,
    candidates: Vec<Piece>,
    target: usize,
}

impl CpSearch<'_> {
    fn covered(&self, e: [u32; 2], chosen: &[usize]) -> bool {
        chosen.iter().any(|&i| match self.candidates[i] {
            Piece::C4 { .. } => self.candidates[i].pairs().contains(&e),
            Piece::P4 { a, b } => e[0] == a[1] || e[1] == b[0],
        })
    }

    fn disjoint(&self, i: usize, used_a: &BTreeSet<u32>, used_b: &BTreeSet<u32>) -> bool {
        let (a, b) = self.candidates[i].vertices();
        a.iter().all(|v| !used_a.contains(v)) && b.iter().all(|v| !used_b.contains(v))
    }

    fn dfs(
        &self,
        start: usize,
        chosen: &mut Vec<usize>,
        used_a: &mut BTreeSet<u32>,
        used_b: &mut BTreeSet<u32>,
    ) -> Option<Vec<Piece>> {
        if chosen.len() == self.target {
            let all_covered = self
                .g
                .distinct_pairs()
                .iter()
                .all(|&e| self.covered(e, chosen));
            if all_covered {
                return Some(chosen.iter().map(|&i| self.candidates[i]).collect());
            }
            return None;
        }
        if self.candidates.len() - start < self.target - chosen.len() {
            return None;
        }
        // every still-uncovered edge must be coverable by a piece that is
        // still selectable; otherwise this branch is dead
        let feasible = self.g.distinct_pairs().iter().all(|&e| {
            self.covered(e, chosen)
                || (start..self.candidates.len()).any(|i| {
                    self.disjoint(i, used_a, used_b)
                        && match self.candidates[i] {
                            Piece::C4 { .. } => self.candidates[i].pairs().contains(&e),
                            Piece::P4 { a, b } => e[0] == a[1] || e[1] == b[0],
                        }
                })
        });
        if !feasible {
            return None;
        }
        for i in start..self.candidates.len() {
            if !self.disjoint(i, used_a, used_b) {
                continue;
            }
            let (a, b) = self.candidates[i].vertices();
            used_a.extend(a);
            used_b.extend(b);
            chosen.push(i);
            if let Some(found) = self.dfs(i + 1, chosen, used_a, used_b) {
                return Some(found);
            }
            chosen.pop();
            for v in a {
                used_a.remove(&v);
            }
            for v in b {
                used_b.remove(&v);
            }
        }
        None
    }
}

/// Exact backtracking search for a CP-decomposition; the first certificate
/// in canonical candidate order, or `None`. A graph with odd matching
/// number has none.
pub fn find_cp_decomposition(g: &BipartiteGraph) -> Option<CPDecomposition> {
    let nu = max_matching_bipartite(g).size;
    if !nu.is_multiple_of(2) {
        return None;
    }
    let search = CpSearch {
        g,
        candidates: candidate_pieces(g),
        target: nu / 2,
    };
    let mut chosen = Vec::new();
    let mut used_a = BTreeSet::new();
    let mut used_b = BTreeSet::new();
    search
        .dfs(0, &mut chosen, &mut used_a, &mut used_b)
        .map(CPDecomposition::new)
}

// ---------------------------------------------------------------------------
// Truncated-Fano extension of a minimal equineighbored pair

/// Given a minimal equineighbored 2-set X in the link over class `i` of a
/// hypergraph whose three full links all have perfect matchings, and such
/// that no two disjoint hyperedges meet X, the hyperedges meeting X span
/// six vertices inducing a truncated multi-Fano plane; returns that 6-set.
pub fn fano_from_equineighbored(
    h: &TripartiteHypergraph,
    class: u8,
    x: &BTreeSet<Vertex>,
) -> Result<BTreeSet<Vertex>, LinkError> {
    for c in 1..=3u8 {
        let link = h.full_link(c).map_err(|_| LinkError::BadSide)?;
        let [na, nb] = link.side_sizes();
        let nu = max_matching_bipartite(&link).size;
        if na != nb || nu != na as usize {
            return Err(LinkError::NoPerfectMatchings);
        }
    }
    if x.len() != 2 {
        return Err(LinkError::NotMinimalEquineighboredPair);
    }
    let x_class = x.iter().next().unwrap().class;
    if x.iter().any(|v| v.class != x_class || !h.contains_vertex(*v)) || x_class == class {
        return Err(LinkError::OutOfRange);
    }
    let link = h.full_link(class).map_err(|_| LinkError::BadSide)?;
    // which side of the link the X class landed on
    let (j, k) = match class {
        1 => (2u8, 3u8),
        2 => (1, 3),
        _ => (1, 2),
    };
    let side = if x_class == j { 1 } else { 2 };
    let positions: BTreeSet<u32> = x.iter().map(|v| v.pos).collect();
    if link.neighborhood(side, &positions).len() != 2
        || positions
            .iter()
            .any(|&p| link.neighbors_of(side, p).len() == 1)
    {
        return Err(LinkError::NotMinimalEquineighboredPair);
    }
    let _ = k;
    let meeting: Vec<usize> = (0..h.edge_count())
        .filter(|&i| {
            h.edge_vertices(i)
                .iter()
                .any(|v| x.contains(v))
        })
        .collect();
    for (n, &i) in meeting.iter().enumerate() {
        for &l in &meeting[n + 1..] {
            let (e, f) = (h.edge(i), h.edge(l));
            if (0..3).all(|c| e[c] != f[c]) {
                return Err(LinkError::DisjointEdgesMeetSet);
            }
        }
    }
    let span: BTreeSet<Vertex> = meeting
        .iter()
        .flat_map(|&i| h.edge_vertices(i))
        .collect();
    if span.len() != 6 || is_truncated_multi_fano(h, &span) != Ok(true) {
        return Err(LinkError::NotMinimalEquineighboredPair);
    }
    Ok(span)
}

// ---------------------------------------------------------------------------
// Cromulent triples

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CromulentVerdict {
    NotCromulent,
    Cromulent,
    PerfectlyCromulent,
}

/// Verification record for a candidate triple (Y1, Y2, X).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CromulentCandidate {
    pub y1: BTreeSet<Vertex>,
    pub y2: BTreeSet<Vertex>,
    pub x: BTreeSet<Vertex>,
    pub verdict: CromulentVerdict,
    /// 1-based index of the first failed condition, 6 meaning (5*) alone.
    pub failed_condition: Option<u8>,
    /// How many home-base partitions of H0 condition (5) was checked
    /// against.
    pub partitions_checked: usize,
}

/// Number of home-base partitions of `H0` enumerated for condition (5).
pub const CROMULENT_PARTITION_CAP: usize = 8;

fn positions(set: &BTreeSet<Vertex>) -> BTreeSet<u32> {
    set.iter().map(|v| v.pos).collect()
}

/// Evaluates the cromulent conditions for nonempty sets Y1 in class i,
/// Y2 in class j and X in class k, all distinct:
///
/// 1. |Y1| = |Y2| <= |X|
/// 2. the neighborhood of X in the link over class i is exactly Y2
/// 3. the sub-hypergraph induced on Y1 ∪ Y2 ∪ X has a matching of size |Y1|
/// 4. deleting Y1 ∪ Y2 ∪ X leaves a home-base hypergraph whose matching
///    number dropped by exactly |Y1|
/// 5. in the link over class j, the neighborhood of X stays inside Y1 plus
///    the F/R vertices of every known home-base partition of the remainder
///
/// The triple is perfectly cromulent when that last neighborhood is
/// exactly Y1 (condition 5*, reported as failure index 6 when it alone
/// fails).
pub fn check_cromulent(
    h: &TripartiteHypergraph,
    y1: &BTreeSet<Vertex>,
    y2: &BTreeSet<Vertex>,
    x: &BTreeSet<Vertex>,
) -> Result<CromulentCandidate, LinkError> {
    check_cromulent_with_cap(h, y1, y2, x, CROMULENT_PARTITION_CAP)
}

/// Same check with an explicit cap on how many home-base partitions of the
/// remainder condition (5) is tested against.
pub fn check_cromulent_with_cap(
    h: &TripartiteHypergraph,
    y1: &BTreeSet<Vertex>,
    y2: &BTreeSet<Vertex>,
    x: &BTreeSet<Vertex>,
    partition_cap: usize,
) -> Result<CromulentCandidate, LinkError> {
    let class_of = |s: &BTreeSet<Vertex>| -> Result<u8, LinkError> {
        let mut classes: BTreeSet<u8> = s.iter().map(|v| v.class).collect();
        if s.is_empty() || classes.len() != 1 {
            return Err(LinkError::BadTriplePlacement);
        }
        let c = classes.pop_first().unwrap();
        if s.iter().any(|v| !h.contains_vertex(*v)) {
            return Err(LinkError::OutOfRange);
        }
        Ok(c)
    };
    let ci = class_of(y1)?;
    let cj = class_of(y2)?;
    let ck = class_of(x)?;
    if BTreeSet::from([ci, cj, ck]).len() != 3 {
        return Err(LinkError::BadTriplePlacement);
    }

    let fail = |cond: u8| CromulentCandidate {
        y1: y1.clone(),
        y2: y2.clone(),
        x: x.clone(),
        verdict: CromulentVerdict::NotCromulent,
        failed_condition: Some(cond),
        partitions_checked: 0,
    };

    // (1) |Y1| = |Y2| <= |X|
    if y1.len() != y2.len() || y1.len() > x.len() {
        return Ok(fail(1));
    }
    // (2) N over the link of class ci of X equals Y2
    let link_i = h.full_link(ci).expect("class validated");
    let side_of = |link_class: u8, set_class: u8| -> u8 {
        let (j, k) = match link_class {
            1 => (2, 3),
            2 => (1, 3),
            _ => (1, 2),
        };
        if set_class == j {
            1
        } else {
            let _ = k;
            2
        }
    };
    let nx = link_i.neighborhood(side_of(ci, ck), &positions(x));
    if nx != positions(y2) {
        return Ok(fail(2));
    }
    // (3) an induced hypergraph matching of size |Y1|
    let union: BTreeSet<Vertex> = y1.union(y2).chain(x.iter()).copied().collect();
    let inside = h.edges_within(&union);
    let induced = TripartiteHypergraph::new(
        h.class_sizes(),
        inside.iter().map(|&i| h.edge(i)).collect(),
    )
    .expect("induced edges are valid");
    if exact::nu_hypergraph(&induced).size < y1.len() {
        return Ok(fail(3));
    }
    // (4) the remainder is home-base with matching number down by |Y1|
    let nu_h = exact::nu_hypergraph(h).size;
    let (h0, map) = h.delete_vertices(&union).expect("valid vertex set");
    if exact::nu_hypergraph(&h0).size + y1.len() != nu_h {
        return Ok(fail(4));
    }
    let partitions = homebase::home_base_partitions(&h0, partition_cap.max(1));
    if partitions.is_empty() {
        return Ok(fail(4));
    }
    // (5) and (5*): class-cj link neighborhood of X
    let link_j = h.full_link(cj).expect("class validated");
    let n_link_j: BTreeSet<u32> = link_j.neighborhood(side_of(cj, ck), &positions(x));
    let n_vertices: BTreeSet<Vertex> = n_link_j.iter().map(|&p| Vertex::new(ci, p)).collect();

    let perfectly = n_vertices == *y1;
    let mut cromulent = true;
    for p in &partitions {
        // translate the H0 partition's F/R vertices back into H
        let allowed: BTreeSet<Vertex> = p
            .f_vertices()
            .into_iter()
            .chain(p.r_vertices())
            .map(|v| map.backward(v).expect("partition vertices survive"))
            .chain(y1.iter().copied())
            .collect();
        if !n_vertices.is_subset(&allowed) {
            cromulent = false;
            break;
        }
    }
    let (verdict, failed_condition) = if perfectly {
        (CromulentVerdict::PerfectlyCromulent, None)
    } else if cromulent {
        (CromulentVerdict::Cromulent, Some(6))
    } else {
        (CromulentVerdict::NotCromulent, Some(5))
    };
    Ok(CromulentCandidate {
        y1: y1.clone(),
        y2: y2.clone(),
        x: x.clone(),
        verdict,
        failed_condition,
        partitions_checked: partitions.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{fixture, Fixture};

    fn c4() -> BipartiteGraph {
        BipartiteGraph::new([2, 2], vec![[1, 1], [1, 2], [2, 1], [2, 2]]).unwrap()
    }

    fn p4() -> BipartiteGraph {
        // path p - q - r - s with p, r on side A
        BipartiteGraph::new([2, 2], vec![[1, 1], [2, 1], [2, 2]]).unwrap()
    }

    #[test]
    fn minimal_equineighbored_on_c4() {
        let sets = minimal_equineighbored_sets(&c4(), 2);
        assert_eq!(sets, vec![BTreeSet::from([1, 2])]);
        let sets = minimal_equineighbored_sets(&c4(), 1);
        assert_eq!(sets, vec![BTreeSet::from([1, 2])]);
    }

    #[test]
    fn minimal_equineighbored_on_p4() {
        // side A = {p, r}: {p} has N = {q}, minimal
        let sets = minimal_equineighbored_sets(&p4(), 1);
        assert_eq!(sets, vec![BTreeSet::from([1])]);
    }

    #[test]
    fn minimal_equineighbored_on_edgeless() {
        let g = BipartiteGraph::new([3, 3], vec![]).unwrap();
        assert!(minimal_equineighbored_sets(&g, 1).is_empty());
        assert!(minimal_equineighbored_sets(&g, 2).is_empty());
    }

    #[test]
    fn brute_and_scc_agree_on_deficient_side() {
        // A = {a1}, B = {b1, b2} with both edges: B side not saturable
        let g = BipartiteGraph::new([1, 2], vec![[1, 1], [1, 2]]).unwrap();
        let sets = minimal_equineighbored_sets(&g, 2);
        // {b1} and {b2} each have |N| = 1
        assert_eq!(sets, vec![BTreeSet::from([1]), BTreeSet::from([2])]);
    }

    #[test]
    fn decent_examples() {
        assert!(is_decent(&c4(), &BTreeSet::from([1, 2])));
        // P4, X = {q} on side B: nu = 2 = |N({q})| + |B \ {q}| = 2 + ... no:
        // N({q}) = {p, r} has size 2 > 1, fails condition (1)
        assert!(!is_decent(&p4(), &BTreeSet::from([1])));
        // X = {p} on the A side is not a B-side set; use the side-B singleton
        // {s}: N = {r}, nu = 2 = 1 + 1, and rs is in a maximum matching
        assert!(is_decent(&p4(), &BTreeSet::from([2])));
        // star: center y on side A, leaves x1 x2 on side B
        let star = BipartiteGraph::new([1, 2], vec![[1, 1], [1, 2]]).unwrap();
        assert!(!is_decent(&star, &BTreeSet::from([1])));
    }

    #[test]
    fn good_fails_when_no_edges_leave() {
        // C4: for y in N(X), all edges from y go into X
        let g = c4();
        assert!(!is_good(&g, &BTreeSet::from([1, 2]), 2));
        // disjoint union C4 + P4, X = the C4 side pair: same empty-removal
        let g2 = BipartiteGraph::new(
            [4, 4],
            vec![
                [1, 1],
                [1, 2],
                [2, 1],
                [2, 2],
                [3, 3],
                [4, 3],
                [4, 4],
            ],
        )
        .unwrap();
        assert!(!is_good(&g2, &BTreeSet::from([1, 2]), 3));
    }

    #[test]
    fn good_set_on_designated_ten_edge_graph() {
        // a 3-edge path gadget, a C4 and a P4, pairwise disjoint; the
        // line-graph complex is a join of three 0-spheres, a 2-sphere
        let g = BipartiteGraph::new(
            [6, 6],
            vec![
                [1, 1],
                [2, 1],
                [1, 2],
                [3, 3],
                [3, 4],
                [4, 3],
                [4, 4],
                [5, 5],
                [6, 5],
                [6, 6],
            ],
        )
        .unwrap();
        let x = BTreeSet::from([2u32]);
        let cap = topo::default_cap_bipartite(&g);
        let base = topo::hom_connectivity_of_line_bg(&g, cap);
        assert_eq!(base.hom_conn, topo::HomConn::Exact(1));
        assert_eq!(base.betti, vec![0, 0, 1, 0]);
        // removing the one outside edge of X's neighbor contracts the
        // gadget factor of the join
        let removed: BTreeSet<usize> = (0..g.edge_count())
            .filter(|&i| g.edge(i) == [1, 1])
            .collect();
        let after =
            topo::hom_connectivity_of_line_bg(&g.remove_edges(&removed), cap);
        assert_eq!(after.hom_conn, topo::HomConn::AtLeast(3));
        assert!(after.hom_conn.strictly_exceeds(&base.hom_conn));
        assert!(is_good(&g, &x, cap));
    }

    #[test]
    fn fano_extension_rejects_disjoint_edges() {
        // C4 link over the first class, but two of the hyperedges through
        // X are disjoint
        let h = TripartiteHypergraph::new(
            [2, 2, 2],
            vec![[1, 1, 1], [1, 2, 1], [2, 1, 2], [2, 2, 2]],
        )
        .unwrap();
        let x = BTreeSet::from([Vertex::new(3, 1), Vertex::new(3, 2)]);
        assert_eq!(
            fano_from_equineighbored(&h, 1, &x),
            Err(LinkError::DisjointEdgesMeetSet)
        );
    }

    #[test]
    fn verify_cp_on_pieces() {
        let d = CPDecomposition::new(vec![Piece::C4 {
            a: [1, 2],
            b: [1, 2],
        }]);
        assert!(verify_cp_decomposition(&c4(), &d));

        let d = CPDecomposition::new(vec![Piece::P4 {
            a: [1, 2],
            b: [1, 2],
        }]);
        assert!(verify_cp_decomposition(&p4(), &d));

        // a P4 piece on the C4's vertices misses the fourth edge
        let d = CPDecomposition::new(vec![Piece::P4 {
            a: [1, 2],
            b: [1, 2],
        }]);
        assert!(!verify_cp_decomposition(&c4(), &d));
    }

    #[test]
    fn find_cp_on_small_graphs() {
        let d = find_cp_decomposition(&c4()).unwrap();
        assert_eq!(
            d.pieces,
            vec![Piece::C4 {
                a: [1, 2],
                b: [1, 2]
            }]
        );
        assert!(verify_cp_decomposition(&c4(), &d));

        // C4 plus a pendant edge at one corner: no decomposition
        let g = BipartiteGraph::new(
            [3, 2],
            vec![[1, 1], [1, 2], [2, 1], [2, 2], [3, 1]],
        )
        .unwrap();
        assert_eq!(find_cp_decomposition(&g), None);

        // disjoint C4 and P4
        let g2 = BipartiteGraph::new(
            [4, 4],
            vec![
                [1, 1],
                [1, 2],
                [2, 1],
                [2, 2],
                [3, 3],
                [4, 3],
                [4, 4],
            ],
        )
        .unwrap();
        let d = find_cp_decomposition(&g2).unwrap();
        assert_eq!(d.pieces.len(), 2);
        assert!(verify_cp_decomposition(&g2, &d));
    }

    #[test]
    fn odd_matching_number_has_no_decomposition() {
        let g = BipartiteGraph::new([1, 1], vec![[1, 1]]).unwrap();
        assert_eq!(find_cp_decomposition(&g), None);
    }

    #[test]
    fn fano_extension_from_pair() {
        let fano = fixture(Fixture::Fano).hypergraph;
        // X = {c, z} in V_3, minimal equineighbored in the link over V_1
        let x = BTreeSet::from([Vertex::new(3, 1), Vertex::new(3, 2)]);
        let span = fano_from_equineighbored(&fano, 1, &x).unwrap();
        assert_eq!(span.len(), 6);
        assert_eq!(span, fano.vertices().collect());
    }

    #[test]
    fn fano_extension_rejects_small_x() {
        let fx = fixture(Fixture::MinR);
        let x = BTreeSet::from([Vertex::new(3, 2)]);
        assert!(matches!(
            fano_from_equineighbored(&fx.hypergraph, 1, &x),
            Err(LinkError::NoPerfectMatchings) | Err(LinkError::NotMinimalEquineighboredPair)
        ));
    }

    #[test]
    fn cromulent_on_min_r() {
        let h = fixture(Fixture::MinR).hypergraph;
        let y1 = BTreeSet::from([Vertex::new(1, 1)]); // r1
        let y2 = BTreeSet::from([Vertex::new(2, 1)]); // r2
        let x = BTreeSet::from([Vertex::new(3, 2)]); // w3
        let c = check_cromulent(&h, &y1, &y2, &x).unwrap();
        assert_eq!(c.verdict, CromulentVerdict::PerfectlyCromulent);
    }

    #[test]
    fn cromulent_fails_neighborhood_condition() {
        let h = fixture(Fixture::MinR).hypergraph;
        let y1 = BTreeSet::from([Vertex::new(1, 1)]);
        let y2 = BTreeSet::from([Vertex::new(2, 1)]);
        let x = BTreeSet::from([Vertex::new(3, 1)]); // r3: N_link1(r3) = {r2, w2}
        let c = check_cromulent(&h, &y1, &y2, &x).unwrap();
        assert_eq!(c.verdict, CromulentVerdict::NotCromulent);
        assert_eq!(c.failed_condition, Some(2));
    }

    #[test]
    fn cromulent_fails_matching_condition_on_fano() {
        let h = fixture(Fixture::Fano).hypergraph;
        let y1 = BTreeSet::from([Vertex::new(1, 1), Vertex::new(1, 2)]);
        let y2 = BTreeSet::from([Vertex::new(2, 1), Vertex::new(2, 2)]);
        let x = BTreeSet::from([Vertex::new(3, 1), Vertex::new(3, 2)]);
        let c = check_cromulent(&h, &y1, &y2, &x).unwrap();
        assert_eq!(c.verdict, CromulentVerdict::NotCromulent);
        assert_eq!(c.failed_condition, Some(3));
    }

    #[test]
    fn cromulent_rejects_bad_placement() {
        let h = fixture(Fixture::MinR).hypergraph;
        let y1 = BTreeSet::from([Vertex::new(1, 1)]);
        let y2 = BTreeSet::from([Vertex::new(1, 2)]);
        let x = BTreeSet::from([Vertex::new(3, 2)]);
        assert_eq!(
            check_cromulent(&h, &y1, &y2, &x),
            Err(LinkError::BadTriplePlacement)
        );
    }
}
