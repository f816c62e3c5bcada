//! Independence complexes and their reduced integral homology, used as the
//! computable proxy for topological connectedness of line-graph complexes.
//!
//! Conventions: the empty complex has connectivity -2; a nonempty
//! disconnected complex has -1. Faces are enumerated exactly up to a
//! dimension cap; Betti numbers are therefore certain for dimensions below
//! the cap, and a report whose known prefix vanishes states a lower bound
//! instead of an exact value. Homology is computed over the integers by
//! Smith normal form; torsion counts as nonvanishing.

use std::fmt;

use thiserror::Error;

use crate::exact;
use crate::hypergraph::{BipartiteGraph, SimpleGraph, TripartiteHypergraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopoError {
    #[error("face {0:?} exceeds the vertex count {1}")]
    FaceOutOfRange(Vec<u32>, usize),
    #[error("face {0:?} is not sorted and duplicate-free")]
    MalformedFace(Vec<u32>),
    #[error("face {0:?} is missing a boundary face; complex not downward closed")]
    NotClosed(Vec<u32>),
}

/// A simplicial complex stored as faces by dimension, up to a cap.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertex_count: usize,
    cap: usize,
    /// `faces[d]` lists the d-faces as sorted vertex tuples, lex order.
    faces: Vec<Vec<Vec<u32>>>,
}

impl SimplicialComplex {
    /// Builds a complex from explicit faces, validating shape and downward
    /// closure up to the cap.
    pub fn from_faces(
        vertex_count: usize,
        cap: usize,
        by_dim: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self, TopoError> {
        let mut faces = by_dim;
        faces.resize(cap + 1, Vec::new());
        for (d, dim_faces) in faces.iter_mut().enumerate() {
            dim_faces.sort();
            dim_faces.dedup();
            for f in dim_faces.iter() {
                if f.len() != d + 1 {
                    return Err(TopoError::MalformedFace(f.clone()));
                }
                if !f.windows(2).all(|w| w[0] < w[1]) {
                    return Err(TopoError::MalformedFace(f.clone()));
                }
                if f.iter().any(|&v| v as usize >= vertex_count) {
                    return Err(TopoError::FaceOutOfRange(f.clone(), vertex_count));
                }
            }
        }
        for d in (1..=cap).rev() {
            for f in &faces[d] {
                for skip in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(skip);
                    if faces[d - 1].binary_search(&sub).is_err() {
                        return Err(TopoError::NotClosed(f.clone()));
                    }
                }
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            cap,
            faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn faces(&self, dim: usize) -> &[Vec<u32>] {
        &self.faces[dim]
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.len()).collect()
    }

    /// No faces exist at the cap dimension, so nothing was truncated.
    pub fn fully_enumerated(&self) -> bool {
        self.faces[self.cap].is_empty()
    }

    /// The 1-skeleton as a simple graph (for connectivity cross-checks).
    pub fn one_skeleton(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.vertex_count);
        if self.cap >= 1 {
            for f in &self.faces[1] {
                g.add_edge(f[0] as usize, f[1] as usize);
            }
        }
        g
    }
}

/// All independent sets of `g` of size at most `cap + 1`, enumerated
/// exactly; the faces of the independence complex up to the cap.
pub fn independence_complex(g: &SimpleGraph, cap: usize) -> SimplicialComplex {
    let n = g.vertex_count();
    let mut faces: Vec<Vec<Vec<u32>>> = vec![Vec::new(); cap + 1];
    let mut current: Vec<usize> = Vec::new();
    fn extend(
        g: &SimpleGraph,
        cap: usize,
        start: usize,
        current: &mut Vec<usize>,
        faces: &mut [Vec<Vec<u32>>],
    ) {
        for v in start..g.vertex_count() {
            if g.independent_from(v, current) {
                current.push(v);
                faces[current.len() - 1].push(current.iter().map(|&x| x as u32).collect());
                if current.len() < cap + 1 {
                    extend(g, cap, v + 1, current, faces);
                }
                current.pop();
            }
        }
    }
    extend(g, cap, 0, &mut current, &mut faces);
    SimplicialComplex {
        vertex_count: n,
        cap,
        faces,
    }
}

/// Homological connectivity estimate.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomConn {
    /// Empty complex; conventionally -2.
    Empty,
    /// Vanishing fails at the next dimension: the exact value.
    Exact(i64),
    /// Every checked dimension vanished; the true value is at least this.
    AtLeast(i64),
}

impl HomConn {
    /// Largest value the estimate certifies.
    pub fn lower(&self) -> i64 {
        match *self {
            HomConn::Empty => -2,
            HomConn::Exact(k) | HomConn::AtLeast(k) => k,
        }
    }

    /// Whether `hom_conn >= num/den` is established (den > 0).
    pub fn satisfies_ge_frac(&self, num: i64, den: i64) -> bool {
        assert!(den > 0);
        self.lower() * den >= num
    }

    /// Whether this estimate certifies a strictly larger value than
    /// `other`. One-sided: an `AtLeast` on the right can never be exceeded
    /// with certainty, so the comparison is conservative.
    pub fn strictly_exceeds(&self, other: &HomConn) -> bool {
        let upper = match *other {
            HomConn::Empty => -2,
            HomConn::Exact(k) => k,
            HomConn::AtLeast(_) => return false,
        };
        self.lower() > upper
    }
}

impl fmt::Display for HomConn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomConn::Empty => write!(f, "-2"),
            HomConn::Exact(k) => write!(f, "{k}"),
            HomConn::AtLeast(k) => write!(f, ">={k}"),
        }
    }
}

/// Reduced integral homology of a complex, dimension by dimension.
#[derive(Clone, Debug)]
pub struct HomologyReport {
    /// Reduced Betti numbers for dimensions `0..cap` (certain values).
    pub betti: Vec<i64>,
    /// Whether the homology at each dimension has torsion.
    pub torsion: Vec<bool>,
    pub hom_conn: HomConn,
    pub face_counts: Vec<usize>,
    pub fully_enumerated: bool,
}

impl HomologyReport {
    /// Reduced Euler characteristic from face counts (only meaningful on a
    /// fully enumerated complex).
    pub fn euler_from_faces(&self) -> i64 {
        let mut chi = -1i64;
        for (d, &c) in self.face_counts.iter().enumerate() {
            chi += if d % 2 == 0 { c as i64 } else { -(c as i64) };
        }
        chi
    }

    pub fn euler_from_betti(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b } else { -b })
            .sum()
    }
}

/// Diagonal of a Smith-style diagonalization of `m` (absolute values,
/// nonzero entries only). Divisibility normalization is skipped: rank and
/// the presence of torsion do not need it.
fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut t = 0usize;
    let mut diag = Vec::new();
    while t < rows.min(cols) {
        // smallest-magnitude nonzero pivot keeps the integers tame
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = false;
        while !clean {
            clean = true;
            // clear column t; a nonzero remainder becomes the new, smaller
            // pivot and the pass restarts
            let pivot_row = m[t].clone();
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t] / pivot_row[t];
                    if q != 0 {
                        for (x, &p) in m[i][t..cols].iter_mut().zip(&pivot_row[t..cols]) {
                            *x -= q * p;
                        }
                    }
                    if m[i][t] != 0 {
                        m.swap(t, i);
                        clean = false;
                        break;
                    }
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j] / m[t][t];
                    if q != 0 {
                        for row in m.iter_mut().skip(t) {
                            let v = row[t];
                            row[j] -= q * v;
                        }
                    }
                    if m[t][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(t, j);
                        }
                        clean = false;
                        break;
                    }
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Boundary matrix from dimension `d` faces to dimension `d - 1` faces.
/// For `d == 0` this is the augmentation map to the empty face.
fn boundary_matrix(k: &SimplicialComplex, d: usize) -> Vec<Vec<i128>> {
    let cols = k.faces(d).len();
    if d == 0 {
        return if cols == 0 {
            Vec::new()
        } else {
            vec![vec![1i128; cols]]
        };
    }
    let rows = k.faces(d - 1).len();
    let mut m = vec![vec![0i128; cols]; rows];
    for (j, f) in k.faces(d).iter().enumerate() {
        for skip in 0..f.len() {
            let mut sub = f.clone();
            sub.remove(skip);
            let i = k
                .faces(d - 1)
                .binary_search(&sub)
                .expect("complex is downward closed");
            m[i][j] = if skip % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// Reduced integral homology via Smith normal form, with the homological
/// connectivity derived from the vanishing prefix.
pub fn homology(k: &SimplicialComplex) -> HomologyReport {
    let cap = k.cap();
    let face_counts = k.face_counts();
    let fully = k.fully_enumerated();
    if face_counts[0] == 0 {
        return HomologyReport {
            betti: Vec::new(),
            torsion: Vec::new(),
            hom_conn: HomConn::Empty,
            face_counts,
            fully_enumerated: fully,
        };
    }

    // diag[d] = Smith diagonal of the boundary map leaving dimension d
    let diags: Vec<Vec<i128>> = (0..=cap).map(|d| smith_diagonal(boundary_matrix(k, d))).collect();
    let rank = |d: usize| -> i64 {
        if d > cap {
            0
        } else {
            diags[d].iter().filter(|&&x| x != 0).count() as i64
        }
    };
    let mut betti = Vec::new();
    let mut torsion = Vec::new();
    for d in 0..cap {
        betti.push(face_counts[d] as i64 - rank(d) - rank(d + 1));
        torsion.push(diags[d + 1].iter().any(|&x| x.abs() > 1));
    }
    let failure = (0..cap).find(|&d| betti[d] != 0 || torsion[d]);
    let hom_conn = match failure {
        Some(d) => HomConn::Exact(d as i64 - 1),
        None if fully => HomConn::AtLeast(cap as i64),
        None => HomConn::AtLeast(cap as i64 - 1),
    };
    HomologyReport {
        betti,
        torsion,
        hom_conn,
        face_counts,
        fully_enumerated: fully,
    }
}

/// Default dimension cap: half the matching number plus one, which covers
/// the indices the structural results live at for desk-scale inputs.
pub fn default_cap_hypergraph(h: &TripartiteHypergraph) -> usize {
    exact::nu_hypergraph(h).size / 2 + 1
}

pub fn default_cap_bipartite(g: &BipartiteGraph) -> usize {
    exact::max_matching_bipartite(g).size / 2 + 1
}

/// Homological connectivity of the independence complex of the line graph
/// of a 3-partite 3-graph.
pub fn hom_connectivity_of_line_hg(h: &TripartiteHypergraph, cap: usize) -> HomologyReport {
    homology(&independence_complex(&h.line_graph(), cap))
}

/// Same for a bipartite multigraph.
pub fn hom_connectivity_of_line_bg(g: &BipartiteGraph, cap: usize) -> HomologyReport {
    homology(&independence_complex(&g.line_graph(), cap))
}
