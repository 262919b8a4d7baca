//! Command-line interface. Exit codes: 0 yes/success, 1 no/not in class,
//! 2 usage or parse error, 3 internal invariant violation.

use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::canon::{canon_with, CanonOptions};
use crate::chordal::{is_chordal, Chordality};
use crate::error::Error;
use crate::generators::{
    enumerate_small_roots, gen_chordal, gen_chordal_line, gen_random, gen_triangle_cactus,
};
use crate::graph::{parse_graph, serialize_graph, Graph, Vertex};
use crate::iso::are_isomorphic;
use crate::linegraph::{is_chordal_line, line_graph, root_graph, root_graph_of_components, ChordalLine};
use crate::reductions::{hat, hat_split};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "chordline", version, about = "Chordal line graph toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide class membership and print a witness.
    Recognize {
        /// Edge-list file, or `-` for standard input.
        input: String,
        #[arg(long, value_enum)]
        class: Class,
    },
    /// Print the canonical form of a graph whose components are chordal line
    /// graphs.
    Canon {
        input: String,
        /// Append `c v i` lines mapping input vertex `v` to position `i`.
        #[arg(long)]
        witness: bool,
        /// Re-verify the witness before printing.
        #[arg(long)]
        paranoid: bool,
    },
    /// Apply a graph construction or its inverse.
    Transform {
        input: String,
        #[arg(long, value_enum)]
        op: Op,
    },
    /// Decide isomorphism.
    Iso {
        first: String,
        second: String,
        /// Print `v w` lines of a verified isomorphism.
        #[arg(long)]
        mapping: bool,
    },
    /// Emit generated graphs.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 10)]
        blocks: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Probability that a cactus block is a triangle.
        #[arg(long, default_value_t = 0.5)]
        triangles: f64,
        /// Probability of keeping each clique member (chordal kind).
        #[arg(long, default_value_t = 0.5)]
        fill: f64,
        /// Edge probability (random kind).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of graphs; seeds run upwards from `--seed`.
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Exact root edge count (roots-exhaustive kind).
        #[arg(long, default_value_t = 3)]
        max_edges: usize,
        /// Write one file per graph into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Class {
    Chordal,
    Line,
    ChordalLine,
    Hat,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Hat,
    Unhat,
    Linegraph,
    Rootgraph,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Cactus,
    ChordalLine,
    Chordal,
    Random,
    RootsExhaustive,
}

impl Kind {
    fn file_class(self) -> &'static str {
        match self {
            Kind::Cactus => "cactus",
            Kind::ChordalLine => "chordalline",
            Kind::Chordal => "chordal",
            Kind::Random => "random",
            Kind::RootsExhaustive => "roots",
        }
    }
}

/// Outcome of a command before it is turned into an exit code.
enum Failure {
    Usage(String),
    Internal(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Io(e)
    }
}

type Outcome = std::result::Result<u8, Failure>;

/// Runs the command line `args` (program name first). `stdin` is called at
/// most once, when an input is `-`.
pub fn run<F>(args: &[String], stdin: F, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    F: FnOnce() -> io::Result<String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let mut stdin = Some(stdin);
    let mut read = |path: &str| -> std::result::Result<Graph, Failure> {
        let text = if path == "-" {
            let f = stdin
                .take()
                .ok_or_else(|| Failure::Usage("standard input can be read only once".into()))?;
            f()?
        } else {
            std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?
        };
        parse_graph(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    };
    let result = match cli.command {
        Command::Recognize { input, class } => read(&input).and_then(|g| recognize(&g, class, out)),
        Command::Canon { input, witness, paranoid } => {
            read(&input).and_then(|g| canonise(&g, witness, paranoid, out, err))
        }
        Command::Transform { input, op } => read(&input).and_then(|g| transform(&g, op, out, err)),
        Command::Iso { first, second, mapping } => match (read(&first), read(&second)) {
            (Ok(a), Ok(b)) => iso(&a, &b, mapping, out),
            (Err(e), _) | (_, Err(e)) => Err(e),
        },
        Command::Gen { kind, blocks, n, triangles, fill, p, seed, count, max_edges, out: dir } => {
            let params = GenParams { kind, blocks, n, triangles, fill, p, seed, count, max_edges };
            generate(&params, dir, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

fn join(vs: impl IntoIterator<Item = Vertex>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn verdict(out: &mut dyn Write, yes: bool) -> io::Result<u8> {
    writeln!(out, "{}", if yes { "yes" } else { "no" })?;
    Ok(if yes { EXIT_YES } else { EXIT_NO })
}

fn recognize(g: &Graph, class: Class, out: &mut dyn Write) -> Outcome {
    let code = match class {
        Class::Chordal => match is_chordal(g) {
            Chordality::Chordal(order) => {
                let code = verdict(out, true)?;
                writeln!(out, "elimination order: {}", join(order.vertices().iter().copied()))?;
                code
            }
            Chordality::NotChordal(cycle) => {
                let code = verdict(out, false)?;
                writeln!(out, "chordless cycle: {}", join(cycle))?;
                code
            }
        },
        Class::Line => match root_graph_of_components(g) {
            Ok(root) => {
                let code = verdict(out, true)?;
                write_root(out, &root)?;
                code
            }
            Err(Error::NotLineGraph(o)) => {
                let code = verdict(out, false)?;
                writeln!(out, "obstruction: {o}")?;
                code
            }
            Err(e) => return Err(Failure::Internal(e.to_string())),
        },
        Class::ChordalLine => match is_chordal_line(g) {
            ChordalLine::Yes(root) => {
                let code = verdict(out, true)?;
                write_root(out, &root)?;
                code
            }
            ChordalLine::No(reason) => {
                let code = verdict(out, false)?;
                writeln!(out, "reason: {reason}")?;
                code
            }
        },
        Class::Hat => match hat_split(g) {
            Ok(img) => {
                let code = verdict(out, true)?;
                writeln!(out, "core: {}", join(img.core.iter().copied()))?;
                for (p, (a, b)) in img.pendants {
                    writeln!(out, "pendant {p}: {a} {b}")?;
                }
                code
            }
            Err(e) => {
                let code = verdict(out, false)?;
                writeln!(out, "reason: {e}")?;
                code
            }
        },
    };
    Ok(code)
}

fn write_root(out: &mut dyn Write, root: &Graph) -> io::Result<()> {
    let edges: Vec<String> = root.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    writeln!(out, "root edges: {}", edges.join(" "))
}

fn canonise(g: &Graph, witness: bool, paranoid: bool, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match canon_with(g, CanonOptions { paranoid }) {
        Ok(form) => {
            write!(out, "{}", serialize_graph(&form.graph))?;
            if witness {
                for (v, i) in &form.witness {
                    writeln!(out, "c {v} {i}")?;
                }
            }
            Ok(EXIT_YES)
        }
        Err(e @ (Error::NotChordalLine { .. } | Error::EmptyGraph)) => {
            writeln!(err, "{e}")?;
            Ok(EXIT_NO)
        }
        Err(e) => Err(Failure::Internal(e.to_string())),
    }
}

/// Writes `g` renumbered to `1..n` in identifier order, preceded by comment
/// lines describing each output vertex.
fn write_with_provenance(
    out: &mut dyn Write,
    g: &Graph,
    describe: impl Fn(Vertex) -> String,
) -> io::Result<()> {
    let (labeled, ids) = g.to_labeled().expect("graph is nonempty");
    for (i, &v) in ids.iter().enumerate() {
        writeln!(out, "# {} <- {}", i + 1, describe(v))?;
    }
    write!(out, "{}", serialize_graph(&labeled))
}

fn transform(g: &Graph, op: Op, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match op {
        Op::Hat => {
            let img = hat(g);
            let describe = |v: Vertex| match img.pendants.binary_search_by_key(&v, |&(p, _)| p) {
                Ok(i) => format!("edge {} {}", img.pendants[i].1 .0, img.pendants[i].1 .1),
                Err(_) => format!("vertex {v}"),
            };
            write_with_provenance(out, &img.graph, describe)?;
        }
        Op::Unhat => match hat_split(g) {
            Ok(img) => {
                let root = Graph::new(img.core.iter().copied(), img.pendants.iter().map(|&(_, e)| e))
                    .map_err(|e| Failure::Internal(e.to_string()))?;
                write_with_provenance(out, &root, |v| format!("vertex {v}"))?;
            }
            Err(e) => {
                writeln!(err, "{e}")?;
                return Ok(EXIT_NO);
            }
        },
        Op::Linegraph => match line_graph(g) {
            Ok(l) => {
                let describe = |v: Vertex| {
                    let (a, b) = l.edge_of(v).expect("line graph vertex");
                    format!("edge {a} {b}")
                };
                write_with_provenance(out, &l.graph, describe)?;
            }
            Err(e) => return Err(Failure::Usage(e.to_string())),
        },
        Op::Rootgraph => match root_graph(g) {
            Ok(r) => {
                for &((a, b), v) in &r.correspondence {
                    writeln!(out, "# edge {a} {b} <- vertex {v}")?;
                }
                let (labeled, _) = r.root.to_labeled().expect("root is nonempty");
                write!(out, "{}", serialize_graph(&labeled))?;
            }
            Err(e @ Error::NotLineGraph(_)) => {
                writeln!(err, "{e}")?;
                return Ok(EXIT_NO);
            }
            Err(e) => return Err(Failure::Usage(e.to_string())),
        },
    }
    Ok(EXIT_YES)
}

fn iso(a: &Graph, b: &Graph, mapping: bool, out: &mut dyn Write) -> Outcome {
    match are_isomorphic(a, b) {
        Some(m) => {
            if mapping {
                for (v, w) in m {
                    writeln!(out, "{v} {w}")?;
                }
            }
            Ok(EXIT_YES)
        }
        None => Ok(EXIT_NO),
    }
}

struct GenParams {
    kind: Kind,
    blocks: usize,
    n: usize,
    triangles: f64,
    fill: f64,
    p: f64,
    seed: u64,
    count: u64,
    max_edges: usize,
}

fn generate(params: &GenParams, dir: Option<PathBuf>, out: &mut dyn Write) -> Outcome {
    let ratio_ok = |x: f64| (0.0..=1.0).contains(&x);
    if !ratio_ok(params.triangles) || !ratio_ok(params.fill) || !ratio_ok(params.p) {
        return Err(Failure::Usage("probabilities must lie in [0, 1]".into()));
    }
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    let class = params.kind.file_class();
    if params.kind == Kind::RootsExhaustive {
        let roots = enumerate_small_roots(params.max_edges).map_err(|e| Failure::Usage(e.to_string()))?;
        for (i, g) in roots.into_iter().enumerate() {
            graphs.push((format!("{class}_b{:02}_s{:04}.txt", params.max_edges, i), g));
        }
    } else {
        let size = match params.kind {
            Kind::Cactus | Kind::ChordalLine => params.blocks,
            _ => params.n,
        };
        if size == 0 {
            return Err(Failure::Usage("--blocks and --n must be positive".into()));
        }
        for seed in (0..params.count).map(|i| params.seed.wrapping_add(i)) {
            let g = match params.kind {
                Kind::Cactus => gen_triangle_cactus(size, params.triangles, seed),
                Kind::ChordalLine => gen_chordal_line(size, params.triangles, seed),
                Kind::Chordal => gen_chordal(size, params.fill, seed),
                Kind::Random => gen_random(size, params.p, seed),
                Kind::RootsExhaustive => unreachable!(),
            };
            graphs.push((format!("{class}_b{size:02}_s{seed:04}.txt"), g));
        }
    }
    match dir {
        Some(dir) => {
            std::fs::create_dir_all(&dir)?;
            for (name, g) in &graphs {
                let (labeled, _) = g.to_labeled().expect("generated graphs are nonempty");
                std::fs::write(dir.join(name), serialize_graph(&labeled))?;
            }
        }
        None => {
            for (name, g) in &graphs {
                let (labeled, _) = g.to_labeled().expect("generated graphs are nonempty");
                if graphs.len() > 1 {
                    writeln!(out, "# {name}")?;
                }
                write!(out, "{}", serialize_graph(&labeled))?;
            }
        }
    }
    Ok(EXIT_YES)
}
