//! Exact solvers and structure theory for Ryser-extremal 3-partite
//! 3-uniform hypergraphs.
//!
//! A 3-partite 3-graph satisfies τ ≤ 2ν, and equality holds exactly for
//! the home-base hypergraphs: vertex-disjoint truncated multi-Fano planes
//! and matchable triple blocks whose edges interact only in restricted
//! ways. This crate provides the data model ([`hypergraph`]), exact
//! matching and cover solvers ([`exact`]), verification and recognition of
//! home-base partitions ([`homebase`]), the bipartite structure theory of
//! link graphs including CP-decompositions ([`linkstruct`]), homological
//! connectivity of independence complexes ([`topo`]), and instance
//! generators ([`gen`]).

pub mod exact;
pub mod gen;
pub mod homebase;
pub mod hypergraph;
pub mod linkstruct;
pub mod topo;

pub use exact::{CoverWitness, HallViolator, MatchingWitness};
pub use homebase::{EssentialReport, FRPartition};
pub use hypergraph::{BipartiteGraph, SimpleGraph, TripartiteHypergraph, Vertex};
pub use linkstruct::{CPDecomposition, CromulentCandidate, CromulentVerdict, Piece};
pub use topo::{HomConn, HomologyReport, SimplicialComplex};
