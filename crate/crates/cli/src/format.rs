//! The five text formats. All are line based; `#` starts a comment that
//! runs to the end of the line; blank lines are ignored; the first
//! significant line is a header naming the kind.
//!
//! - `thg n1 n2 n3` with `e p1 p2 p3` edge lines (1-based positions, one
//!   per class; repeated lines encode multiplicity)
//! - `bg nA nB` with `e pa pb` edge lines
//! - `frp n1 n2 n3` with `F`/`R`/`W` lines of `class:pos` vertex tokens
//! - `cpd nA nB` with `C a1 b1 a2 b2` (cycle order) and `P v1 v2 v3 v4`
//!   (path order, starting and ending positions on the A and B side)
//! - `bp` with `f m1 m2 m3 m4`, `r a1 a2 a3`, `w n1 n2 n3` and extra-edge
//!   `e p1 p2 p3` lines in the blueprint's final vertex layout
//!
//! Serialization is canonical (sorted lines); parsing a serialized
//! document reproduces it exactly.

use std::collections::BTreeSet;
use std::fmt;

use ryser_core::gen::Blueprint;
use ryser_core::homebase::FRPartition;
use ryser_core::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};
use ryser_core::linkstruct::{CPDecomposition, Piece};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Document {
    Hypergraph(TripartiteHypergraph),
    Bipartite(BipartiteGraph),
    Partition {
        sizes: [u32; 3],
        partition: FRPartition,
    },
    Decomposition {
        sides: [u32; 2],
        decomposition: CPDecomposition,
    },
    Blueprint(Blueprint),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hypergraph(_) => "thg",
            Document::Bipartite(_) => "bg",
            Document::Partition { .. } => "frp",
            Document::Decomposition { .. } => "cpd",
            Document::Blueprint(_) => "bp",
        }
    }
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

struct Lines<'a> {
    rows: Vec<(usize, Vec<&'a str>)>,
}

fn significant_lines(text: &str) -> Lines<'_> {
    let rows = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = stripped.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some((i + 1, tokens))
            }
        })
        .collect();
    Lines { rows }
}

fn parse_number(line: usize, token: &str, what: &str) -> Result<u32, ParseError> {
    token
        .parse::<u32>()
        .map_err(|_| ParseError {
            line,
            message: format!("bad {what}: {token:?}"),
        })
}

fn parse_vertex(line: usize, token: &str, sizes: &[u32]) -> Result<Vertex, ParseError> {
    let Some((c, p)) = token.split_once(':') else {
        return fail(line, format!("vertex token {token:?} is not class:pos"));
    };
    let class = parse_number(line, c, "class")?;
    let pos = parse_number(line, p, "position")?;
    if class == 0 || class as usize > sizes.len() {
        return fail(line, format!("class {class} out of range"));
    }
    if pos == 0 || pos > sizes[(class - 1) as usize] {
        return fail(
            line,
            format!("index {pos} out of range in class {class}"),
        );
    }
    Ok(Vertex::new(class as u8, pos))
}

fn expect_arity(line: usize, tokens: &[&str], n: usize) -> Result<(), ParseError> {
    if tokens.len() != n + 1 {
        return fail(
            line,
            format!(
                "expected {} fields after {:?}, found {}",
                n,
                tokens[0],
                tokens.len() - 1
            ),
        );
    }
    Ok(())
}

/// Strict parser; the header line decides the kind.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = significant_lines(text);
    let Some(&(header_line, ref header)) = lines.rows.first() else {
        return fail(1, "empty document: missing header");
    };
    match header[0] {
        "thg" => parse_thg(header_line, header, &lines.rows[1..]),
        "bg" => parse_bg(header_line, header, &lines.rows[1..]),
        "frp" => parse_frp(header_line, header, &lines.rows[1..]),
        "cpd" => parse_cpd(header_line, header, &lines.rows[1..]),
        "bp" => parse_bp(header_line, header, &lines.rows[1..]),
        other => fail(header_line, format!("unknown document kind {other:?}")),
    }
}

fn parse_sizes<const N: usize>(
    line: usize,
    header: &[&str],
) -> Result<[u32; N], ParseError> {
    expect_arity(line, header, N)?;
    let mut sizes = [0u32; N];
    for (i, t) in header[1..].iter().enumerate() {
        sizes[i] = parse_number(line, t, "class size")?;
    }
    Ok(sizes)
}

fn parse_thg(
    hline: usize,
    header: &[&str],
    rows: &[(usize, Vec<&str>)],
) -> Result<Document, ParseError> {
    let sizes: [u32; 3] = parse_sizes(hline, header)?;
    let mut edges = Vec::new();
    for &(line, ref tokens) in rows {
        if tokens[0] != "e" {
            return fail(line, format!("expected an e line, found {:?}", tokens[0]));
        }
        expect_arity(line, tokens, 3)?;
        let mut e = [0u32; 3];
        for c in 0..3 {
            e[c] = parse_number(line, tokens[c + 1], "position")?;
            if e[c] == 0 || e[c] > sizes[c] {
                return fail(
                    line,
                    format!("index {} out of range in class {}", e[c], c + 1),
                );
            }
        }
        edges.push(e);
    }
    Ok(Document::Hypergraph(
        TripartiteHypergraph::new(sizes, edges).expect("ranges checked"),
    ))
}

fn parse_bg(
    hline: usize,
    header: &[&str],
    rows: &[(usize, Vec<&str>)],
) -> Result<Document, ParseError> {
    let sizes: [u32; 2] = parse_sizes(hline, header)?;
    let mut edges = Vec::new();
    for &(line, ref tokens) in rows {
        if tokens[0] != "e" {
            return fail(line, format!("expected an e line, found {:?}", tokens[0]));
        }
        expect_arity(line, tokens, 2)?;
        let mut e = [0u32; 2];
        for c in 0..2 {
            e[c] = parse_number(line, tokens[c + 1], "position")?;
            if e[c] == 0 || e[c] > sizes[c] {
                return fail(
                    line,
                    format!("index {} out of range on side {}", e[c], c + 1),
                );
            }
        }
        edges.push(e);
    }
    Ok(Document::Bipartite(
        BipartiteGraph::new(sizes, edges).expect("ranges checked"),
    ))
}

fn parse_frp(
    hline: usize,
    header: &[&str],
    rows: &[(usize, Vec<&str>)],
) -> Result<Document, ParseError> {
    let sizes: [u32; 3] = parse_sizes(hline, header)?;
    let mut f_blocks = Vec::new();
    let mut r_blocks = Vec::new();
    let mut w: BTreeSet<Vertex> = BTreeSet::new();
    for &(line, ref tokens) in rows {
        let mut set: BTreeSet<Vertex> = BTreeSet::new();
        for t in &tokens[1..] {
            let v = parse_vertex(line, t, &sizes)?;
            if !set.insert(v) {
                return fail(line, format!("repeated vertex {v}"));
            }
        }
        match tokens[0] {
            "F" => {
                if set.len() != 6 {
                    return fail(line, "an F line takes six vertices");
                }
                f_blocks.push(set);
            }
            "R" => {
                if set.len() != 3 {
                    return fail(line, "an R line takes three vertices");
                }
                r_blocks.push(set);
            }
            "W" => w.extend(set),
            other => {
                return fail(line, format!("expected F, R or W, found {other:?}"))
            }
        }
    }
    Ok(Document::Partition {
        sizes,
        partition: FRPartition::new(f_blocks, r_blocks, w),
    })
}

fn parse_cpd(
    hline: usize,
    header: &[&str],
    rows: &[(usize, Vec<&str>)],
) -> Result<Document, ParseError> {
    let sides: [u32; 2] = parse_sizes(hline, header)?;
    let mut pieces = Vec::new();
    for &(line, ref tokens) in rows {
        expect_arity(line, tokens, 4)?;
        let mut v = [0u32; 4];
        for (i, t) in tokens[1..].iter().enumerate() {
            v[i] = parse_number(line, t, "position")?;
        }
        // cycle/path order alternates sides, starting on side A
        for (i, &x) in v.iter().enumerate() {
            let limit = sides[i % 2];
            if x == 0 || x > limit {
                return fail(
                    line,
                    format!("index {} out of range on side {}", x, i % 2 + 1),
                );
            }
        }
        match tokens[0] {
            "C" => {
                if v[0] == v[2] || v[1] == v[3] {
                    return fail(line, "a C piece needs four distinct vertices");
                }
                let mut a = [v[0], v[2]];
                let mut b = [v[1], v[3]];
                a.sort_unstable();
                b.sort_unstable();
                pieces.push(Piece::C4 { a, b });
            }
            "P" => {
                if v[0] == v[2] || v[1] == v[3] {
                    return fail(line, "a P piece needs four distinct vertices");
                }
                pieces.push(Piece::P4 {
                    a: [v[0], v[2]],
                    b: [v[1], v[3]],
                });
            }
            other => return fail(line, format!("expected C or P, found {other:?}")),
        }
    }
    Ok(Document::Decomposition {
        sides,
        decomposition: CPDecomposition::new(pieces),
    })
}

fn parse_bp(
    hline: usize,
    header: &[&str],
    rows: &[(usize, Vec<&str>)],
) -> Result<Document, ParseError> {
    expect_arity(hline, header, 0)?;
    let mut bp = Blueprint::default();
    let mut seen_w = false;
    for &(line, ref tokens) in rows {
        match tokens[0] {
            "f" => {
                expect_arity(line, tokens, 4)?;
                let mut m = [0u32; 4];
                for (i, t) in tokens[1..].iter().enumerate() {
                    m[i] = parse_number(line, t, "multiplicity")?;
                }
                bp.fano_blocks.push(m);
            }
            "r" => {
                expect_arity(line, tokens, 3)?;
                let mut a = [0u32; 3];
                for (i, t) in tokens[1..].iter().enumerate() {
                    a[i] = parse_number(line, t, "attachment count")?;
                }
                bp.r_blocks.push(a);
            }
            "w" => {
                expect_arity(line, tokens, 3)?;
                if seen_w {
                    return fail(line, "at most one w line");
                }
                seen_w = true;
                for (i, t) in tokens[1..].iter().enumerate() {
                    bp.isolated_w[i] = parse_number(line, t, "count")?;
                }
            }
            "e" => {
                expect_arity(line, tokens, 3)?;
                let mut e = [0u32; 3];
                for (i, t) in tokens[1..].iter().enumerate() {
                    e[i] = parse_number(line, t, "position")?;
                }
                bp.extra_edges.push(e);
            }
            other => {
                return fail(line, format!("expected f, r, w or e, found {other:?}"))
            }
        }
    }
    Ok(Document::Blueprint(bp))
}

/// Canonical text form: header plus sorted content lines.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Hypergraph(h) => {
            let s = h.class_sizes();
            out.push_str(&format!("thg {} {} {}\n", s[0], s[1], s[2]));
            for e in h.edges() {
                out.push_str(&format!("e {} {} {}\n", e[0], e[1], e[2]));
            }
        }
        Document::Bipartite(g) => {
            let s = g.side_sizes();
            out.push_str(&format!("bg {} {}\n", s[0], s[1]));
            for e in g.edges() {
                out.push_str(&format!("e {} {}\n", e[0], e[1]));
            }
        }
        Document::Partition { sizes, partition } => {
            out.push_str(&format!("frp {} {} {}\n", sizes[0], sizes[1], sizes[2]));
            for f in &partition.f_blocks {
                out.push_str(&format!("F {}\n", join_vertices(f)));
            }
            for r in &partition.r_blocks {
                out.push_str(&format!("R {}\n", join_vertices(r)));
            }
            if !partition.w.is_empty() {
                out.push_str(&format!("W {}\n", join_vertices(&partition.w)));
            }
        }
        Document::Decomposition {
            sides,
            decomposition,
        } => {
            out.push_str(&format!("cpd {} {}\n", sides[0], sides[1]));
            for piece in &decomposition.pieces {
                match piece {
                    Piece::C4 { a, b } => out.push_str(&format!(
                        "C {} {} {} {}\n",
                        a[0], b[0], a[1], b[1]
                    )),
                    Piece::P4 { a, b } => out.push_str(&format!(
                        "P {} {} {} {}\n",
                        a[0], b[0], a[1], b[1]
                    )),
                }
            }
        }
        Document::Blueprint(bp) => {
            out.push_str("bp\n");
            for m in &bp.fano_blocks {
                out.push_str(&format!("f {} {} {} {}\n", m[0], m[1], m[2], m[3]));
            }
            for a in &bp.r_blocks {
                out.push_str(&format!("r {} {} {}\n", a[0], a[1], a[2]));
            }
            if bp.isolated_w != [0, 0, 0] {
                out.push_str(&format!(
                    "w {} {} {}\n",
                    bp.isolated_w[0], bp.isolated_w[1], bp.isolated_w[2]
                ));
            }
            let mut extra = bp.extra_edges.clone();
            extra.sort_unstable();
            for e in extra {
                out.push_str(&format!("e {} {} {}\n", e[0], e[1], e[2]));
            }
        }
    }
    out
}

fn join_vertices(set: &BTreeSet<Vertex>) -> String {
    set.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
