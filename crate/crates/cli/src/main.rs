//! Command-line frontend. Subcommands print human-readable lines plus a
//! final machine line `RESULT key=value ...` (as a `#` comment when the
//! output is itself a document). Exit codes: 0 affirmative / success,
//! 1 negative verdict, 2 input error.

mod format;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ryser_core::exact::{nu_hypergraph, tau_hypergraph};
use ryser_core::gen::{
    enumerate_small, fixture, from_blueprint, from_cp_decomposition, random_home_base,
    Fixture, SizeParams,
};
use ryser_core::homebase::{
    check_fr_partition, first_edge_without_home, is_matchable, recognize_home_base,
    FRPartition,
};
use ryser_core::hypergraph::{BipartiteGraph, TripartiteHypergraph, Vertex};
use ryser_core::linkstruct::{
    check_cromulent, find_cp_decomposition, verify_cp_decomposition, CromulentVerdict,
};
use ryser_core::topo;

use format::{parse, serialize, Document};

#[derive(Parser)]
#[command(name = "ryser", version, about = "Exact solvers and structure tools for 3-partite 3-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matching number of a hypergraph with a witness matching
    Nu { file: PathBuf },
    /// Vertex cover number of a hypergraph with a witness cover
    Tau { file: PathBuf },
    /// Link graph over one class, as a bg document
    Link {
        file: PathBuf,
        /// Class index 1..=3
        #[arg(long)]
        class: u8,
        /// Comma-separated positions; defaults to the whole class
        #[arg(long)]
        subset: Option<String>,
        /// Emit a DOT edge list instead of a bg document
        #[arg(long)]
        dot: bool,
    },
    /// Search for a home-base partition
    Recognize { file: PathBuf },
    /// Verify a partition document against a hypergraph
    Verify {
        file: PathBuf,
        #[arg(long)]
        partition: PathBuf,
    },
    /// Find a CP-decomposition, or check one with --check
    Cpdecomp {
        file: PathBuf,
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Homological connectivity of the line-graph complex
    Conn {
        file: PathBuf,
        /// Dimension cap (default: matching number / 2 + 1, or RYSER_MAX_DIM)
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, value_enum, default_value_t = InputKind::Hypergraph)]
        of: InputKind,
    },
    /// Evaluate the cromulent-triple conditions for (Y1, Y2, X)
    Cromulent {
        file: PathBuf,
        /// Comma-separated class:pos vertex tokens
        #[arg(long)]
        y1: String,
        #[arg(long)]
        y2: String,
        #[arg(long)]
        x: String,
    },
    /// Emit an instance: a named fixture, a blueprint, a CP construction,
    /// or a seeded random home-base hypergraph
    Gen {
        /// FANO | FANO_MINUS | MIN_R | UNMATCH | S8 | EMPTY
        name: Option<String>,
        #[arg(long, conflicts_with_all = ["name", "from_cp", "random"])]
        blueprint: Option<PathBuf>,
        /// Graph file and decomposition file
        #[arg(long, num_args = 2, value_names = ["GFILE", "DFILE"], conflicts_with_all = ["name", "random"])]
        from_cp: Option<Vec<PathBuf>>,
        /// Matching number of a random home-base instance
        #[arg(long, conflicts_with = "name")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the home-base partition (frp) instead of the hypergraph
        #[arg(long)]
        partition: bool,
    },
    /// Enumerate small simple instances up to class-preserving symmetry
    Enumerate {
        /// n1,n2,n3
        #[arg(long)]
        sizes: String,
        #[arg(long)]
        max_edges: usize,
        /// Print each instance as one line of class:pos triples
        #[arg(long)]
        print: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputKind {
    Hypergraph,
    Bipartite,
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn read_hypergraph(path: &Path) -> Result<TripartiteHypergraph, CliError> {
    match read_document(path)? {
        Document::Hypergraph(h) => Ok(h),
        d => Err(CliError(format!(
            "{}: expected a thg document, found {}",
            path.display(),
            d.kind()
        ))),
    }
}

fn read_bipartite(path: &Path) -> Result<BipartiteGraph, CliError> {
    match read_document(path)? {
        Document::Bipartite(g) => Ok(g),
        d => Err(CliError(format!(
            "{}: expected a bg document, found {}",
            path.display(),
            d.kind()
        ))),
    }
}

fn parse_positions(list: &str) -> Result<BTreeSet<u32>, CliError> {
    list.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError(format!("bad position {t:?}")))
        })
        .collect()
}

fn parse_vertex_list(list: &str) -> Result<BTreeSet<Vertex>, CliError> {
    list.split(',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim();
            let (c, p) = t
                .split_once(':')
                .ok_or_else(|| CliError(format!("vertex token {t:?} is not class:pos")))?;
            let class: u8 = c.parse().map_err(|_| CliError(format!("bad class in {t:?}")))?;
            let pos: u32 = p.parse().map_err(|_| CliError(format!("bad position in {t:?}")))?;
            Ok(Vertex::new(class, pos))
        })
        .collect()
}

fn vertex_line(h: &TripartiteHypergraph, idx: usize) -> String {
    h.edge_vertices(idx)
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Nu { file } => {
            let h = read_hypergraph(&file)?;
            let w = nu_hypergraph(&h);
            println!("nu = {}", w.size);
            for &i in &w.edge_indices {
                println!("edge {}", vertex_line(&h, i));
            }
            println!("RESULT nu={}", w.size);
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { file } => {
            let h = read_hypergraph(&file)?;
            let w = tau_hypergraph(&h);
            println!("tau = {}", w.size);
            let cover = w
                .vertices
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!("cover {cover}");
            println!("RESULT tau={}", w.size);
            Ok(ExitCode::SUCCESS)
        }
        Command::Link {
            file,
            class,
            subset,
            dot,
        } => {
            let h = read_hypergraph(&file)?;
            if !(1..=3).contains(&class) {
                return Err(CliError(format!("class {class} out of range")));
            }
            let subset = match subset {
                Some(list) => parse_positions(&list)?,
                None => (1..=h.class_size(class)).collect(),
            };
            let link = h.link_graph(class, &subset)?;
            if dot {
                println!("graph link {{");
                for e in link.edges() {
                    println!("  a{} -- b{};", e[0], e[1]);
                }
                println!("}}");
            } else {
                print!("{}", serialize(&Document::Bipartite(link.clone())));
                println!("# RESULT edges={}", link.edge_count());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Recognize { file } => {
            let h = read_hypergraph(&file)?;
            match recognize_home_base(&h) {
                Some(p) => {
                    print!(
                        "{}",
                        serialize(&Document::Partition {
                            sizes: h.class_sizes(),
                            partition: p.clone(),
                        })
                    );
                    println!(
                        "# RESULT home-base=yes f={} r={}",
                        p.f_blocks.len(),
                        p.r_blocks.len()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("NOT-HOME-BASE");
                    println!("RESULT home-base=no");
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Verify { file, partition } => {
            let h = read_hypergraph(&file)?;
            let Document::Partition { sizes, partition } = read_document(&partition)? else {
                return Err(CliError("expected an frp document".into()));
            };
            if sizes != h.class_sizes() {
                return Err(CliError(format!(
                    "partition sizes {sizes:?} do not match hypergraph {:?}",
                    h.class_sizes()
                )));
            }
            let report = check_fr_partition(&h, &partition);
            let mut verdict = report.all();
            let yesno = |b: bool| if b { "pass" } else { "fail" };
            println!("partition: {}", yesno(report.partition));
            println!("fano-blocks: {}", yesno(report.fano_blocks));
            println!("r-shape: {}", yesno(report.r_shape));
            println!("block-count: {}", yesno(report.block_count));
            if report.partition && report.fano_blocks && report.r_shape {
                let m = is_matchable(&h, &partition)?;
                println!("matchable: {}", yesno(m.matchable()));
                for (class, violator) in m.violators() {
                    println!(
                        "hall-violator class={} blocks={:?} neighborhood={:?}",
                        class,
                        violator.set.iter().collect::<Vec<_>>(),
                        violator.neighborhood.iter().collect::<Vec<_>>()
                    );
                }
                verdict &= m.matchable();
                match first_edge_without_home(&h, &partition) {
                    None => println!("edge-home: pass"),
                    Some(i) => {
                        println!("edge-home: fail");
                        println!("offending-edge {}", vertex_line(&h, i));
                        verdict = false;
                    }
                }
            } else {
                verdict = false;
            }
            println!("RESULT home-base={}", if verdict { "yes" } else { "no" });
            Ok(if verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Cpdecomp { file, check } => {
            let g = read_bipartite(&file)?;
            match check {
                Some(dfile) => {
                    let Document::Decomposition {
                        sides,
                        decomposition,
                    } = read_document(&dfile)?
                    else {
                        return Err(CliError("expected a cpd document".into()));
                    };
                    if sides != g.side_sizes() {
                        return Err(CliError(format!(
                            "decomposition sides {sides:?} do not match graph {:?}",
                            g.side_sizes()
                        )));
                    }
                    let ok = verify_cp_decomposition(&g, &decomposition);
                    println!("RESULT valid={}", if ok { "yes" } else { "no" });
                    Ok(if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                None => match find_cp_decomposition(&g) {
                    Some(d) => {
                        print!(
                            "{}",
                            serialize(&Document::Decomposition {
                                sides: g.side_sizes(),
                                decomposition: d.clone(),
                            })
                        );
                        println!("# RESULT found=yes pieces={}", d.pieces.len());
                        Ok(ExitCode::SUCCESS)
                    }
                    None => {
                        println!("NO-CP-DECOMPOSITION");
                        println!("RESULT found=no");
                        Ok(ExitCode::from(1))
                    }
                },
            }
        }
        Command::Conn { file, max_dim, of } => {
            let cap_override = max_dim.or_else(|| {
                std::env::var("RYSER_MAX_DIM")
                    .ok()
                    .and_then(|v| v.parse().ok())
            });
            let report = match of {
                InputKind::Hypergraph => {
                    let h = read_hypergraph(&file)?;
                    let cap = cap_override.unwrap_or_else(|| topo::default_cap_hypergraph(&h));
                    topo::hom_connectivity_of_line_hg(&h, cap)
                }
                InputKind::Bipartite => {
                    let g = read_bipartite(&file)?;
                    let cap = cap_override.unwrap_or_else(|| topo::default_cap_bipartite(&g));
                    topo::hom_connectivity_of_line_bg(&g, cap)
                }
            };
            let join = |it: Vec<String>| it.join(" ");
            println!(
                "faces {}",
                join(report.face_counts.iter().map(|c| c.to_string()).collect())
            );
            println!(
                "betti {}",
                join(report.betti.iter().map(|b| b.to_string()).collect())
            );
            println!(
                "torsion {}",
                join(report
                    .torsion
                    .iter()
                    .map(|&t| if t { "yes" } else { "-" }.to_string())
                    .collect())
            );
            println!("fully-enumerated: {}", report.fully_enumerated);
            println!("hom-conn {}", report.hom_conn);
            println!("RESULT hom_conn={}", report.hom_conn);
            Ok(ExitCode::SUCCESS)
        }
        Command::Cromulent { file, y1, y2, x } => {
            let h = read_hypergraph(&file)?;
            let y1 = parse_vertex_list(&y1)?;
            let y2 = parse_vertex_list(&y2)?;
            let x = parse_vertex_list(&x)?;
            let report = check_cromulent(&h, &y1, &y2, &x)?;
            let verdict = match report.verdict {
                CromulentVerdict::NotCromulent => "not-cromulent",
                CromulentVerdict::Cromulent => "cromulent",
                CromulentVerdict::PerfectlyCromulent => "perfectly-cromulent",
            };
            println!("verdict {verdict}");
            if let Some(c) = report.failed_condition {
                if c == 6 {
                    println!("failed-condition 5*");
                } else {
                    println!("failed-condition {c}");
                }
            }
            if report.partitions_checked > 0 {
                println!("partitions-checked {}", report.partitions_checked);
            }
            println!("RESULT verdict={verdict}");
            Ok(match report.verdict {
                CromulentVerdict::NotCromulent => ExitCode::from(1),
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Gen {
            name,
            blueprint,
            from_cp,
            random,
            seed,
            partition,
        } => {
            let (h, p): (TripartiteHypergraph, Option<FRPartition>) =
                if let Some(path) = blueprint {
                    let Document::Blueprint(bp) = read_document(&path)? else {
                        return Err(CliError("expected a bp document".into()));
                    };
                    let (h, p) = from_blueprint(&bp)?;
                    (h, Some(p))
                } else if let Some(files) = from_cp {
                    let g = read_bipartite(&files[0])?;
                    let Document::Decomposition {
                        sides,
                        decomposition,
                    } = read_document(&files[1])?
                    else {
                        return Err(CliError("expected a cpd document".into()));
                    };
                    if sides != g.side_sizes() {
                        return Err(CliError("decomposition sides do not match graph".into()));
                    }
                    let (h, p) = from_cp_decomposition(&g, &decomposition)?;
                    (h, Some(p))
                } else if let Some(k) = random {
                    let (h, p) = random_home_base(seed, k, &SizeParams::default());
                    (h, Some(p))
                } else if let Some(name) = name {
                    let Some(f) = Fixture::from_name(&name) else {
                        return Err(CliError(format!("unknown fixture {name:?}")));
                    };
                    let data = fixture(f);
                    (data.hypergraph, data.partition)
                } else {
                    return Err(CliError(
                        "gen needs a fixture name, --blueprint, --from-cp or --random".into(),
                    ));
                };
            if partition {
                let Some(p) = p else {
                    return Err(CliError("no partition applies to this instance".into()));
                };
                print!(
                    "{}",
                    serialize(&Document::Partition {
                        sizes: h.class_sizes(),
                        partition: p,
                    })
                );
                println!("# RESULT kind=frp");
            } else {
                print!("{}", serialize(&Document::Hypergraph(h.clone())));
                println!(
                    "# RESULT kind=thg vertices={} edges={}",
                    h.vertex_count(),
                    h.edge_count()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate {
            sizes,
            max_edges,
            print,
        } => {
            let parts: Vec<u32> = sizes
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|_| CliError(format!("bad size {t:?}")))
                })
                .collect::<Result<_, _>>()?;
            let [n1, n2, n3] = parts[..] else {
                return Err(CliError("--sizes needs n1,n2,n3".into()));
            };
            let mut count = 0usize;
            for h in enumerate_small([n1, n2, n3], max_edges)? {
                count += 1;
                if print {
                    let line = h
                        .edges()
                        .iter()
                        .map(|e| format!("{}:{}:{}", e[0], e[1], e[2]))
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!("instance {line}");
                }
            }
            println!("RESULT count={count}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_lists_parse() {
        let set = parse_vertex_list("1:1, 2:3").unwrap();
        assert_eq!(
            set,
            BTreeSet::from([Vertex::new(1, 1), Vertex::new(2, 3)])
        );
        assert!(parse_vertex_list("11").is_err());
    }

    #[test]
    fn position_lists_parse() {
        assert_eq!(parse_positions("1,2,5").unwrap(), BTreeSet::from([1, 2, 5]));
        assert!(parse_positions("1,x").is_err());
    }
}
