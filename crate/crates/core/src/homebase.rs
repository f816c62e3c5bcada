//! FR-partitions and home-base hypergraphs: per-condition verification,
//! matchability via the auxiliary bipartite graphs, the edge-home property,
//! recognition by direct certificate search, essential/superfluous vertex
//! structure, heavy covers, and the constructive removal matching.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::exact::{
    self, saturating_matching, CoverWitness, HallViolator, MatchingWitness,
};
use crate::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};

/// A candidate (F, R, W) partition. Blocks are kept in canonical order:
/// each block is a sorted vertex set and blocks are sorted by their vertex
/// lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FRPartition {
    pub f_blocks: Vec<BTreeSet<Vertex>>,
    pub r_blocks: Vec<BTreeSet<Vertex>>,
    pub w: BTreeSet<Vertex>,
}

impl FRPartition {
    pub fn new(
        mut f_blocks: Vec<BTreeSet<Vertex>>,
        mut r_blocks: Vec<BTreeSet<Vertex>>,
        w: BTreeSet<Vertex>,
    ) -> Self {
        f_blocks.sort();
        r_blocks.sort();
        FRPartition {
            f_blocks,
            r_blocks,
            w,
        }
    }

    pub fn block_count(&self) -> usize {
        self.f_blocks.len() + self.r_blocks.len()
    }

    /// All vertices claimed by F blocks.
    pub fn f_vertices(&self) -> BTreeSet<Vertex> {
        self.f_blocks.iter().flatten().copied().collect()
    }

    /// All vertices claimed by R blocks.
    pub fn r_vertices(&self) -> BTreeSet<Vertex> {
        self.r_blocks.iter().flatten().copied().collect()
    }

    /// The R block containing `v`, if any.
    pub fn r_block_of(&self, v: Vertex) -> Option<usize> {
        self.r_blocks.iter().position(|b| b.contains(&v))
    }

    pub fn f_block_of(&self, v: Vertex) -> Option<usize> {
        self.f_blocks.iter().position(|b| b.contains(&v))
    }

    /// The vertex of an R block in the given class (blocks that pass the
    /// shape condition have exactly one).
    pub fn r_vertex(&self, block: usize, class: u8) -> Vertex {
        *self.r_blocks[block]
            .iter()
            .find(|v| v.class == class)
            .expect("R block has one vertex per class")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomebaseError {
    #[error("F block must have exactly two vertices per class")]
    FanoBlockShape,
    #[error("partition is not a well-shaped vertex partition; cannot build auxiliary graph")]
    MalformedPartition,
    #[error("bipartite graph has no matching saturating the first side")]
    NoSaturatingMatching,
    #[error("heavy cover needs a verified home-base partition")]
    NotHomeBase,
    #[error("class indices must be distinct and in 1..=3")]
    BadClassPair,
}

// ---------------------------------------------------------------------------
// Truncated multi-Fano recognition

/// True iff the sub-hypergraph induced by the 6-set `f` is a truncated
/// multi-Fano plane: exactly four distinct triples, forming one parity
/// class of the 2x2x2 cube spanned by `f`, each with multiplicity >= 1.
pub fn is_truncated_multi_fano(
    h: &TripartiteHypergraph,
    f: &BTreeSet<Vertex>,
) -> Result<bool, HomebaseError> {
    let mut per_class: [Vec<u32>; 3] = Default::default();
    for v in f {
        if !(1..=3).contains(&v.class) || !h.contains_vertex(*v) {
            return Err(HomebaseError::FanoBlockShape);
        }
        per_class[(v.class - 1) as usize].push(v.pos);
    }
    if per_class.iter().any(|c| c.len() != 2) {
        return Err(HomebaseError::FanoBlockShape);
    }
    let inside = h.edges_within(f);
    let mut triples: Vec<[u32; 3]> = inside.iter().map(|&i| h.edge(i)).collect();
    triples.dedup();
    if triples.len() != 4 {
        return Ok(false);
    }
    let parity = |t: &[u32; 3]| -> u32 {
        (0..3)
            .map(|c| u32::from(t[c] == per_class[c][1]))
            .sum::<u32>()
            % 2
    };
    let p0 = parity(&triples[0]);
    Ok(triples.iter().all(|t| parity(t) == p0))
}

// ---------------------------------------------------------------------------
// FR-partition conditions

/// Pass/fail report for the four FR-partition conditions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FrConditionReport {
    /// (1) blocks and W partition the vertex set
    pub partition: bool,
    /// (2) every F block induces a truncated multi-Fano plane
    pub fano_blocks: bool,
    /// (3) every R block has one vertex per class
    pub r_shape: bool,
    /// (4) number of blocks equals the matching number
    pub block_count: bool,
}

impl FrConditionReport {
    pub fn all(&self) -> bool {
        self.partition && self.fano_blocks && self.r_shape && self.block_count
    }
}

fn is_partition(h: &TripartiteHypergraph, p: &FRPartition) -> bool {
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut total = 0usize;
    for block in p.f_blocks.iter().chain(&p.r_blocks).chain([&p.w]) {
        for &v in block {
            if !h.contains_vertex(v) || !seen.insert(v) {
                return false;
            }
            total += 1;
        }
    }
    total == h.vertex_count()
}

fn r_shape_ok(block: &BTreeSet<Vertex>) -> bool {
    block.len() == 3 && (1..=3).all(|c| block.iter().filter(|v| v.class == c).count() == 1)
}

/// Evaluates conditions (1)-(4) separately; failures are reported, never
/// thrown. Condition (4) calls the exact matching solver.
pub fn check_fr_partition(h: &TripartiteHypergraph, p: &FRPartition) -> FrConditionReport {
    let partition = is_partition(h, p);
    let fano_blocks = p
        .f_blocks
        .iter()
        .all(|f| is_truncated_multi_fano(h, f).unwrap_or(false));
    let r_shape = p.r_blocks.iter().all(r_shape_ok);
    let block_count = p.block_count() == exact::nu_hypergraph(h).size;
    FrConditionReport {
        partition,
        fano_blocks,
        r_shape,
        block_count,
    }
}

// ---------------------------------------------------------------------------
// Auxiliary bipartite graphs and matchability

/// The auxiliary graph `B_i`: A side indexed by R blocks (in canonical
/// block order), B side indexed by the sorted vertices of `W` in class `i`.
#[derive(Clone, Debug)]
pub struct AuxBipartite {
    pub graph: BipartiteGraph,
    /// B-side position `q` (1-based) corresponds to `w_vertices[q - 1]`.
    pub w_vertices: Vec<Vertex>,
}

impl AuxBipartite {
    pub fn w_position(&self, v: Vertex) -> Option<u32> {
        self.w_vertices
            .iter()
            .position(|&w| w == v)
            .map(|i| i as u32 + 1)
    }
}

/// Builds `B_i` for a partition satisfying conditions (1)-(3): an edge
/// joins block `R` and `w` in `W` of class `i` exactly when the hyperedge
/// made of `w` and the two other-class vertices of `R` is present. Edges
/// meeting `banned` vertices are ignored and banned W vertices are dropped
/// from the side (this realizes the graphs of `H - S`).
pub fn aux_bipartite_filtered(
    h: &TripartiteHypergraph,
    p: &FRPartition,
    class: u8,
    banned: &BTreeSet<Vertex>,
) -> Result<AuxBipartite, HomebaseError> {
    if !(1..=3).contains(&class) {
        return Err(HomebaseError::BadClassPair);
    }
    if !is_partition(h, p) || !p.r_blocks.iter().all(r_shape_ok) {
        return Err(HomebaseError::MalformedPartition);
    }
    let w_vertices: Vec<Vertex> = p
        .w
        .iter()
        .filter(|v| v.class == class && !banned.contains(v))
        .copied()
        .collect();
    let mut edges = Vec::new();
    for (bi, _) in p.r_blocks.iter().enumerate() {
        let mut triple = [0u32; 3];
        for c in 1..=3u8 {
            if c != class {
                triple[(c - 1) as usize] = p.r_vertex(bi, c).pos;
            }
        }
        for (wi, wv) in w_vertices.iter().enumerate() {
            triple[(class - 1) as usize] = wv.pos;
            if h.multiplicity(triple) > 0 {
                edges.push([bi as u32 + 1, wi as u32 + 1]);
            }
        }
    }
    let graph = BipartiteGraph::new(
        [p.r_blocks.len() as u32, w_vertices.len() as u32],
        edges,
    )
    .expect("aux graph positions are consistent by construction");
    Ok(AuxBipartite { graph, w_vertices })
}

pub fn aux_bipartite(
    h: &TripartiteHypergraph,
    p: &FRPartition,
    class: u8,
) -> Result<AuxBipartite, HomebaseError> {
    aux_bipartite_filtered(h, p, class, &BTreeSet::new())
}

/// Saturation outcome of the three auxiliary graphs.
#[derive(Clone, Debug)]
pub struct MatchabilityReport {
    pub per_class: [Result<MatchingWitness, HallViolator>; 3],
}

impl MatchabilityReport {
    pub fn matchable(&self) -> bool {
        self.per_class.iter().all(|r| r.is_ok())
    }

    /// Hall violators (as R-block index sets) for the failing classes.
    pub fn violators(&self) -> Vec<(u8, HallViolator)> {
        self.per_class
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.as_ref()
                    .err()
                    .map(|v| (i as u8 + 1, v.clone()))
            })
            .collect()
    }
}

/// Whether every `B_i` has a matching saturating the R blocks.
pub fn is_matchable(
    h: &TripartiteHypergraph,
    p: &FRPartition,
) -> Result<MatchabilityReport, HomebaseError> {
    let mut per_class = Vec::new();
    for class in 1..=3u8 {
        let aux = aux_bipartite(h, p, class)?;
        per_class.push(saturating_matching(&aux.graph, 1));
    }
    Ok(MatchabilityReport {
        per_class: per_class.try_into().expect("three classes"),
    })
}

// ---------------------------------------------------------------------------
// Edge-home property and properness

fn edge_is_home(h: &TripartiteHypergraph, p: &FRPartition, idx: usize) -> bool {
    let vs = h.edge_vertices(idx);
    let in_f = p
        .f_blocks
        .iter()
        .any(|f| vs.iter().all(|v| f.contains(v)));
    in_f
        || p.r_blocks
            .iter()
            .any(|r| vs.iter().filter(|v| r.contains(v)).count() >= 2)
}

/// First edge occurrence that is neither inside an F block nor contains
/// two vertices of a single R block, if any.
pub fn first_edge_without_home(h: &TripartiteHypergraph, p: &FRPartition) -> Option<usize> {
    (0..h.edge_count()).find(|&i| !edge_is_home(h, p, i))
}

pub fn has_edge_home(h: &TripartiteHypergraph, p: &FRPartition) -> bool {
    first_edge_without_home(h, p).is_none()
}

/// A partition is proper when no all-W edge forms a truncated Fano plane
/// together with an R block. (Nothing was called an R that could have been
/// part of an F.)
pub fn is_proper(h: &TripartiteHypergraph, p: &FRPartition) -> bool {
    let mut w_triples: Vec<[u32; 3]> = h
        .edges()
        .iter()
        .filter(|e| {
            (0..3).all(|c| p.w.contains(&Vertex::new(c as u8 + 1, e[c])))
        })
        .copied()
        .collect();
    w_triples.dedup();
    for r in &p.r_blocks {
        if !r_shape_ok(r) {
            continue;
        }
        for t in &w_triples {
            let mut six = r.clone();
            for (c, &pos) in t.iter().enumerate() {
                six.insert(Vertex::new(c as u8 + 1, pos));
            }
            if is_truncated_multi_fano(h, &six) == Ok(true) {
                return false;
            }
        }
    }
    true
}

/// Full home-base verification: conditions (1)-(4), matchability, and the
/// edge-home property.
pub fn verify_home_base(h: &TripartiteHypergraph, p: &FRPartition) -> bool {
    check_fr_partition(h, p).all()
        && is_matchable(h, p).map(|m| m.matchable()).unwrap_or(false)
        && has_edge_home(h, p)
}

// ---------------------------------------------------------------------------
// Recognition by certificate search

/// All 6-sets that induce a truncated multi-Fano plane, in canonical order.
/// Every such set contains two distinct triples sharing exactly one vertex,
/// so candidates are generated from such pairs plus a sixth vertex.
fn fano_candidates(h: &TripartiteHypergraph) -> Vec<BTreeSet<Vertex>> {
    let triples = h.distinct_triples();
    let mut out: BTreeSet<BTreeSet<Vertex>> = BTreeSet::new();
    for (i, t) in triples.iter().enumerate() {
        for u in &triples[i + 1..] {
            let same: Vec<usize> = (0..3).filter(|&c| t[c] == u[c]).collect();
            if same.len() != 1 {
                continue;
            }
            let shared = same[0];
            for w in 1..=h.class_sizes()[shared] {
                if w == t[shared] {
                    continue;
                }
                let mut f: BTreeSet<Vertex> = BTreeSet::new();
                for c in 0..3 {
                    f.insert(Vertex::new(c as u8 + 1, t[c]));
                    f.insert(Vertex::new(c as u8 + 1, u[c]));
                }
                f.insert(Vertex::new(shared as u8 + 1, w));
                if f.len() == 6 && is_truncated_multi_fano(h, &f) == Ok(true) {
                    out.insert(f);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All one-per-class triples that could be R blocks of a matchable
/// partition: for each class, some edge must contain the other two block
/// vertices with a different third vertex.
fn r_candidates(h: &TripartiteHypergraph) -> Vec<BTreeSet<Vertex>> {
    // thirds[i] maps the (j, k)-pair of an edge to its class-i vertices
    let mut thirds: [BTreeMap<[u32; 2], BTreeSet<u32>>; 3] = Default::default();
    for e in h.distinct_triples() {
        for i in 0..3 {
            let (j, k) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            thirds[i].entry([e[j], e[k]]).or_default().insert(e[i]);
        }
    }
    let has_witness = |i: usize, pair: [u32; 2], not: u32| -> bool {
        thirds[i]
            .get(&pair)
            .is_some_and(|s| s.iter().any(|&v| v != not))
    };
    let mut out: BTreeSet<BTreeSet<Vertex>> = BTreeSet::new();
    for (&[r2, r3], firsts) in &thirds[0] {
        for r1 in 1..=h.class_sizes()[0] {
            if firsts.iter().all(|&v| v == r1) {
                continue;
            }
            if has_witness(1, [r1, r3], r2) && has_witness(2, [r1, r2], r3) {
                out.insert(BTreeSet::from([
                    Vertex::new(1, r1),
                    Vertex::new(2, r2),
                    Vertex::new(3, r3),
                ]));
            }
        }
    }
    out.into_iter().collect()
}

struct Recognizer<'a> {
    h: &'a TripartiteHypergraph,
    fanos: Vec<BTreeSet<Vertex>>,
    rs: Vec<BTreeSet<Vertex>>,
    target: usize,
    limit: usize,
    found: Vec<FRPartition>,
}

impl Recognizer<'_> {
    fn block(&self, idx: usize) -> &BTreeSet<Vertex> {
        if idx < self.fanos.len() {
            &self.fanos[idx]
        } else {
            &self.rs[idx - self.fanos.len()]
        }
    }

    /// Chosen R blocks must already be saturable against the vertices not
    /// yet claimed by any block; final W only shrinks from here.
    fn partial_saturable(&self, chosen: &[usize], used: &BTreeSet<Vertex>) -> bool {
        let r_chosen: Vec<&BTreeSet<Vertex>> = chosen
            .iter()
            .filter(|&&i| i >= self.fanos.len())
            .map(|&i| self.block(i))
            .collect();
        if r_chosen.is_empty() {
            return true;
        }
        for class in 1..=3u8 {
            let w_free: Vec<u32> = (1..=self.h.class_size(class))
                .filter(|&pos| !used.contains(&Vertex::new(class, pos)))
                .collect();
            let mut edges = Vec::new();
            for (bi, block) in r_chosen.iter().enumerate() {
                let mut triple = [0u32; 3];
                for v in block.iter() {
                    if v.class != class {
                        triple[(v.class - 1) as usize] = v.pos;
                    }
                }
                for (wi, &pos) in w_free.iter().enumerate() {
                    triple[(class - 1) as usize] = pos;
                    if self.h.multiplicity(triple) > 0 {
                        edges.push([bi as u32 + 1, wi as u32 + 1]);
                    }
                }
            }
            let g = BipartiteGraph::new(
                [r_chosen.len() as u32, w_free.len() as u32],
                edges,
            )
            .expect("positions consistent");
            if saturating_matching(&g, 1).is_err() {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, used: &mut BTreeSet<Vertex>) {
        if self.found.len() >= self.limit {
            return;
        }
        if chosen.len() == self.target {
            let f_blocks = chosen
                .iter()
                .filter(|&&i| i < self.fanos.len())
                .map(|&i| self.block(i).clone())
                .collect();
            let r_blocks = chosen
                .iter()
                .filter(|&&i| i >= self.fanos.len())
                .map(|&i| self.block(i).clone())
                .collect();
            let w = self
                .h
                .vertices()
                .filter(|v| !used.contains(v))
                .collect();
            let p = FRPartition::new(f_blocks, r_blocks, w);
            if is_matchable(self.h, &p)
                .map(|m| m.matchable())
                .unwrap_or(false)
                && has_edge_home(self.h, &p)
            {
                self.found.push(p);
            }
            return;
        }
        let total = self.fanos.len() + self.rs.len();
        if total - start < self.target - chosen.len() {
            return;
        }
        for idx in start..total {
            if total - idx < self.target - chosen.len() {
                break;
            }
            let block = self.block(idx).clone();
            if block.iter().any(|v| used.contains(v)) {
                continue;
            }
            for &v in &block {
                used.insert(v);
            }
            chosen.push(idx);
            if self.partial_saturable(chosen, used) {
                self.dfs(idx + 1, chosen, used);
            }
            chosen.pop();
            for v in &block {
                used.remove(v);
            }
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

/// Up to `limit` home-base partitions of `h`, in canonical enumeration
/// order (F candidates before R candidates, increasing index sequences).
pub fn home_base_partitions(h: &TripartiteHypergraph, limit: usize) -> Vec<FRPartition> {
    if limit == 0 {
        return Vec::new();
    }
    let target = exact::nu_hypergraph(h).size;
    let mut rec = Recognizer {
        h,
        fanos: fano_candidates(h),
        rs: r_candidates(h),
        target,
        limit,
        found: Vec::new(),
    };
    let mut chosen = Vec::new();
    let mut used = BTreeSet::new();
    rec.dfs(0, &mut chosen, &mut used);
    rec.found
}

/// Searches for a home-base partition; `None` means the hypergraph is not
/// a home-base hypergraph (the search over candidate blocks is complete).
pub fn recognize_home_base(h: &TripartiteHypergraph) -> Option<FRPartition> {
    home_base_partitions(h, 1).into_iter().next()
}

// ---------------------------------------------------------------------------
// Essential subsets, superfluous vertices

/// The unique maximal essential subset of the B side of a bipartite graph
/// whose A side can be saturated, together with its tight family and the
/// superfluous remainder.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EssentialReport {
    /// B-side positions of the maximal essential subset C.
    pub maximal_essential: BTreeSet<u32>,
    /// A-side positions of the family U with N(U) = C and |U| = |C|.
    pub tight_family: BTreeSet<u32>,
    /// B-side positions outside C.
    pub superfluous: BTreeSet<u32>,
}

/// A B-side vertex is essential exactly when deleting it destroys every
/// A-saturating matching; the tight family is assembled from the Hall
/// violators those deletions expose.
pub fn maximal_essential_set(b: &BipartiteGraph) -> Result<EssentialReport, HomebaseError> {
    if saturating_matching(b, 1).is_err() {
        return Err(HomebaseError::NoSaturatingMatching);
    }
    let mut maximal_essential = BTreeSet::new();
    let mut tight_family: BTreeSet<u32> = BTreeSet::new();
    for w in 1..=b.side_sizes()[1] {
        let reduced = b.remove_vertex_edges(2, w);
        if let Err(violator) = saturating_matching(&reduced, 1) {
            maximal_essential.insert(w);
            tight_family.extend(violator.set);
        }
    }
    let neighborhood = b.neighborhood(1, &tight_family);
    debug_assert_eq!(neighborhood, maximal_essential);
    debug_assert_eq!(tight_family.len(), maximal_essential.len());
    let superfluous = (1..=b.side_sizes()[1])
        .filter(|p| !maximal_essential.contains(p))
        .collect();
    Ok(EssentialReport {
        maximal_essential,
        tight_family,
        superfluous,
    })
}

/// Superfluous vertices of `W` in the given class (those whose removal
/// keeps every `B_i` saturable).
pub fn superfluous_vertices(
    h: &TripartiteHypergraph,
    p: &FRPartition,
    class: u8,
) -> Result<BTreeSet<Vertex>, HomebaseError> {
    let aux = aux_bipartite(h, p, class)?;
    let report = maximal_essential_set(&aux.graph)?;
    Ok(report
        .superfluous
        .iter()
        .map(|&q| aux.w_vertices[(q - 1) as usize])
        .collect())
}

// ---------------------------------------------------------------------------
// Heavy covers

/// The `i`-heavy `(i, j)`-cover of a verified home-base partition: the
/// maximal essential set of `B_i`, all F/R vertices of class `i`, and the
/// class-`j` vertices of the R blocks outside the tight family. Always a
/// vertex cover of size twice the matching number.
pub fn heavy_cover(
    h: &TripartiteHypergraph,
    p: &FRPartition,
    i: u8,
    j: u8,
) -> Result<CoverWitness, HomebaseError> {
    if i == j || !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(HomebaseError::BadClassPair);
    }
    if !verify_home_base(h, p) {
        return Err(HomebaseError::NotHomeBase);
    }
    let aux = aux_bipartite(h, p, i)?;
    let report = maximal_essential_set(&aux.graph)?;
    let mut vertices: BTreeSet<Vertex> = report
        .maximal_essential
        .iter()
        .map(|&q| aux.w_vertices[(q - 1) as usize])
        .collect();
    for v in p.f_vertices().into_iter().chain(p.r_vertices()) {
        if v.class == i {
            vertices.insert(v);
        }
    }
    for (bi, _) in p.r_blocks.iter().enumerate() {
        if !report.tight_family.contains(&(bi as u32 + 1)) {
            vertices.insert(p.r_vertex(bi, j));
        }
    }
    let size = vertices.len();
    debug_assert_eq!(size, 2 * p.block_count());
    let witness = CoverWitness { size, vertices };
    debug_assert!(exact::verify_hypergraph_cover(h, &witness));
    Ok(witness)
}

// ---------------------------------------------------------------------------
// The removal matching

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonsterError {
    #[error("partition is not a matchable FR-partition")]
    InvalidPartition,
    #[error("the triple must contain one vertex of each class")]
    TripleNotOnePerClass,
    #[error("every edge of F block {0} meets the removed triple")]
    FanoBlockCovered(usize),
    #[error("every R-edge of block {0} meets the removed triple")]
    RBlockCovered(usize),
    #[error("vertex {0} is not a superfluous W vertex")]
    NotSuperfluous(Vertex),
    #[error("at most one superfluous vertex per class may be removed")]
    TooManyPerClass,
}

/// Derived view of the hypergraph with the extra superfluous vertices
/// removed: edge occurrences avoiding them, and the filtered aux graphs.
struct Restricted<'a> {
    h: &'a TripartiteHypergraph,
    p: &'a FRPartition,
    alive: Vec<bool>,
    aux: [AuxBipartite; 3],
}

impl Restricted<'_> {
    /// Least alive occurrence with the given underlying triple.
    fn occurrence(&self, triple: [u32; 3]) -> Option<usize> {
        (0..self.h.edge_count()).find(|&i| self.alive[i] && self.h.edge(i) == triple)
    }

    /// Least alive occurrence inside the F block avoiding all of `avoid`.
    fn f_edge_avoiding(&self, f: &BTreeSet<Vertex>, avoid: &BTreeSet<Vertex>) -> Option<usize> {
        self.h.edges_within(f).into_iter().find(|&i| {
            self.alive[i]
                && self
                    .h
                    .edge_vertices(i)
                    .iter()
                    .all(|v| !avoid.contains(v))
        })
    }

    /// Least alive occurrence containing at least two vertices of the R
    /// block and avoiding all of `avoid`.
    fn r_edge_avoiding(&self, r: &BTreeSet<Vertex>, avoid: &BTreeSet<Vertex>) -> Option<usize> {
        (0..self.h.edge_count()).find(|&i| {
            if !self.alive[i] {
                return false;
            }
            let vs = self.h.edge_vertices(i);
            vs.iter().filter(|v| r.contains(v)).count() >= 2
                && vs.iter().all(|v| !avoid.contains(v))
        })
    }

    /// The block whose only neighbor in the filtered `B_class` is `v`,
    /// i.e. the block `v` is essential for, if any.
    fn essential_for(&self, class: u8, v: Vertex) -> Option<usize> {
        let aux = &self.aux[(class - 1) as usize];
        let vpos = aux.w_position(v)?;
        (0..self.p.r_blocks.len()).find(|&bi| {
            aux.graph.neighbors_of(1, bi as u32 + 1) == BTreeSet::from([vpos])
        })
    }

    /// The triple of the class-`class` attachment edge of block `bi`
    /// through the W vertex `w`.
    fn attachment_triple(&self, bi: usize, class: u8, w: Vertex) -> [u32; 3] {
        let mut triple = [0u32; 3];
        triple[(class - 1) as usize] = w.pos;
        for c in 1..=3u8 {
            if c != class {
                triple[(c - 1) as usize] = self.p.r_vertex(bi, c).pos;
            }
        }
        triple
    }

    /// W-side attachment candidates of block `bi` in `class` whose edge
    /// avoids all of `avoid`, least first.
    fn attachment_avoiding(
        &self,
        bi: usize,
        class: u8,
        avoid: &BTreeSet<Vertex>,
    ) -> Option<(Vertex, usize)> {
        let aux = &self.aux[(class - 1) as usize];
        for q in aux.graph.neighbors_of(1, bi as u32 + 1) {
            let w = aux.w_vertices[(q - 1) as usize];
            let triple = self.attachment_triple(bi, class, w);
            let vs = [
                Vertex::new(1, triple[0]),
                Vertex::new(2, triple[1]),
                Vertex::new(3, triple[2]),
            ];
            if vs.iter().any(|v| avoid.contains(v)) {
                continue;
            }
            if let Some(occ) = self.occurrence(triple) {
                return Some((w, occ));
            }
        }
        None
    }
}

/// Builds a matching of size ν(H) avoiding the triple and the removed
/// superfluous set: one F-edge per F block, and per R block a W-attachment
/// edge chosen from a saturating matching of an auxiliary graph, with
/// edges through the triple swapped out class by class according to where
/// the triple sits (in the R blocks, essential for one block, or neither).
pub fn monster_matching(
    h: &TripartiteHypergraph,
    p: &FRPartition,
    triple_in: [Vertex; 3],
    s: &BTreeSet<Vertex>,
) -> Result<MatchingWitness, MonsterError> {
    if !check_fr_partition(h, p).all()
        || !is_matchable(h, p).map(|m| m.matchable()).unwrap_or(false)
    {
        return Err(MonsterError::InvalidPartition);
    }
    let mut triple = triple_in;
    triple.sort();
    if (0..3).any(|c| triple[c].class != c as u8 + 1 || !h.contains_vertex(triple[c])) {
        return Err(MonsterError::TripleNotOnePerClass);
    }
    let avoid: BTreeSet<Vertex> = triple.iter().copied().collect();

    // S must be superfluous W vertices, at most one per class
    for c in 1..=3u8 {
        if s.iter().filter(|v| v.class == c).count() > 1 {
            return Err(MonsterError::TooManyPerClass);
        }
        let superfluous =
            superfluous_vertices(h, p, c).map_err(|_| MonsterError::InvalidPartition)?;
        for v in s.iter().filter(|v| v.class == c) {
            if !superfluous.contains(v) {
                return Err(MonsterError::NotSuperfluous(*v));
            }
        }
    }
    let s_prime: BTreeSet<Vertex> = s.difference(&avoid).copied().collect();

    // the restricted view realizes H - S'
    let alive: Vec<bool> = (0..h.edge_count())
        .map(|i| {
            h.edge_vertices(i)
                .iter()
                .all(|v| !s_prime.contains(v))
        })
        .collect();
    let aux: [AuxBipartite; 3] = [1, 2, 3].map(|c| {
        aux_bipartite_filtered(h, p, c, &s_prime)
            .expect("partition shape already validated")
    });
    let view = Restricted { h, p, alive, aux };

    // every F block must keep an edge off the triple
    let mut matching: Vec<usize> = Vec::new();
    let mut f_choice: BTreeMap<usize, usize> = BTreeMap::new();
    for (fi, f) in p.f_blocks.iter().enumerate() {
        match view.f_edge_avoiding(f, &avoid) {
            Some(occ) => {
                f_choice.insert(fi, occ);
            }
            None => return Err(MonsterError::FanoBlockCovered(fi)),
        }
    }
    // every R block must keep an R-edge off the triple
    for (ri, r) in p.r_blocks.iter().enumerate() {
        if view.r_edge_avoiding(r, &avoid).is_none() {
            return Err(MonsterError::RBlockCovered(ri));
        }
    }

    if !p.r_blocks.is_empty() {
        enum RCase {
            /// some triple vertex lies in an R block
            InR { anchor: u8 },
            /// no triple vertex in V(R), none essential for any block
            NoneEssential,
            /// anchored at an essential vertex; swap its block to a class
            /// where the triple vertex is not essential for it
            SomeEssential { anchor: u8, block: usize, swap_class: u8 },
            /// all three essential for the same block; its edge is replaced
            /// by an R-edge off the triple
            AllSameBlock { anchor: u8, block: usize, e_occ: usize },
        }

        let in_r: Vec<usize> =
            (0..3).filter(|&c| p.r_block_of(triple[c]).is_some()).collect();
        let case = if let Some(&c) = in_r.first() {
            RCase::InR { anchor: c as u8 + 1 }
        } else {
            let essential: Vec<(usize, usize)> = (0..3)
                .filter_map(|c| {
                    view.essential_for(c as u8 + 1, triple[c]).map(|b| (c, b))
                })
                .collect();
            if essential.len() == 3 && essential.iter().all(|&(_, b)| b == essential[0].1) {
                let block = essential[0].1;
                let e_occ = view
                    .r_edge_avoiding(&p.r_blocks[block], &avoid)
                    .expect("the per-block R-edge check just passed");
                let e = h.edge(e_occ);
                let outside = (0..3)
                    .find(|&c| p.r_vertex(block, c as u8 + 1).pos != e[c])
                    .unwrap_or(0);
                RCase::AllSameBlock {
                    anchor: outside as u8 + 1,
                    block,
                    e_occ,
                }
            } else if let Some(&(c, block)) = essential.first() {
                let anchor = c as u8 + 1;
                let swap_class = (1..=3u8)
                    .find(|&cl| {
                        cl != anchor
                            && view.essential_for(cl, triple[(cl - 1) as usize])
                                != Some(block)
                    })
                    .expect("the triple is not essential for one block in all classes");
                RCase::SomeEssential {
                    anchor,
                    block,
                    swap_class,
                }
            } else {
                RCase::NoneEssential
            }
        };
        let anchor = match case {
            RCase::InR { anchor }
            | RCase::SomeEssential { anchor, .. }
            | RCase::AllSameBlock { anchor, .. } => anchor,
            RCase::NoneEssential => 1,
        };

        let aux_anchor = &view.aux[(anchor - 1) as usize];
        let sat = saturating_matching(&aux_anchor.graph, 1)
            .expect("removing superfluous vertices keeps the partition matchable");
        // per-block chosen attachment edge, in the anchor class
        let mut r_part: Vec<(usize, usize)> = Vec::new(); // (block, occurrence)
        for &ei in &sat.edge_indices {
            let [bpos, wpos] = aux_anchor.graph.edge(ei);
            let bi = (bpos - 1) as usize;
            let w = aux_anchor.w_vertices[(wpos - 1) as usize];
            let occ = view
                .occurrence(view.attachment_triple(bi, anchor, w))
                .expect("aux edges come from live hyperedges");
            r_part.push((bi, occ));
        }
        let swap_to = |r_part: &mut Vec<(usize, usize)>, block: usize, cl: u8| {
            let (_, occ) = view
                .attachment_avoiding(block, cl, &avoid)
                .expect("the per-block edge checks guarantee a replacement");
            for slot in r_part.iter_mut() {
                if slot.0 == block {
                    slot.1 = occ;
                }
            }
        };

        match case {
            RCase::InR { anchor } => {
                // swap out edges hit by the non-anchor triple vertices,
                // class by class in canonical order
                for cl in 1..=3u8 {
                    if cl == anchor {
                        continue;
                    }
                    let hit = r_part.iter().position(|&(_, occ)| {
                        h.edge_vertices(occ).contains(&triple[(cl - 1) as usize])
                    });
                    if let Some(pos) = hit {
                        let block = r_part[pos].0;
                        swap_to(&mut r_part, block, cl);
                    }
                }
            }
            RCase::NoneEssential => {
                // only the class-1 triple vertex can hit (as a matched W
                // vertex); re-route that block through class 2
                let hit = r_part.iter().position(|&(_, occ)| {
                    h.edge_vertices(occ).contains(&triple[0])
                });
                if let Some(pos) = hit {
                    let block = r_part[pos].0;
                    swap_to(&mut r_part, block, 2);
                }
            }
            RCase::SomeEssential {
                block, swap_class, ..
            } => {
                // the anchored matching necessarily routes the block
                // through the essential triple vertex
                swap_to(&mut r_part, block, swap_class);
            }
            RCase::AllSameBlock { anchor, block, e_occ } => {
                for slot in r_part.iter_mut() {
                    if slot.0 == block {
                        slot.1 = e_occ;
                    }
                }
                // e may enter an F block in the anchor class: re-choose
                // that F-edge disjoint from e
                let e = h.edge(e_occ);
                let v = Vertex::new(anchor, e[(anchor - 1) as usize]);
                if let Some(fi) = p.f_block_of(v) {
                    let mut avoid_v = avoid.clone();
                    avoid_v.insert(v);
                    let occ = view
                        .f_edge_avoiding(&p.f_blocks[fi], &avoid_v)
                        .expect("a truncated Fano plane is never covered by one vertex");
                    f_choice.insert(fi, occ);
                }
            }
        }
        matching.extend(r_part.into_iter().map(|(_, occ)| occ));
    }

    matching.extend(f_choice.values().copied());
    matching.sort_unstable();
    let witness = MatchingWitness {
        size: matching.len(),
        edge_indices: matching,
    };
    debug_assert!(exact::verify_hypergraph_matching(h, &witness));
    debug_assert_eq!(witness.size, p.block_count());
    debug_assert!(witness.edge_indices.iter().all(|&i| {
        h.edge_vertices(i)
            .iter()
            .all(|v| !avoid.contains(v) && !s.contains(v))
    }));
    Ok(witness)
}
