use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use liec::coloring::{format_coloring, parse_coloring};
use liec::generators;
use liec::oracle::{exact_chi_irr_with, OracleConfig};
use liec::{
    cactus_liec_components, classify, parse_edge_list, to_edge_list, verify_liec, EdgeColoring,
    Error, Graph,
};

/// Locally irregular edge colorings of cacti.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color each input graph with at most four colors.
    Solve {
        #[arg(required = true)]
        graphs: Vec<PathBuf>,
        /// Coloring file; defaults to `<graph>.col`. Only with a single input.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
        /// Number of inputs solved concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Check a coloring and list the violating edges.
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print the colorability class, with the decomposition for the triangle
    /// family.
    Classify {
        graph: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact value by exhaustive search (small graphs only).
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(long, default_value_t = 12)]
        max_edges: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write a generated graph as an edge list.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        cycles: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Write the graph in DOT format, colored when a coloring is given.
    ExportDot {
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(clap::Args)]
struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    /// The smallest cactus needing four colors.
    Bowtie,
    /// Two triangles sharing a vertex.
    Butterfly,
    Tree,
    Unicyclic,
    Cactus,
    /// A non-colorable member of the triangle family.
    TMember,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let internal = err
                .chain()
                .any(|e| matches!(e.downcast_ref::<Error>(), Some(Error::Internal(_))));
            ExitCode::from(if internal { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve {
            graphs,
            out,
            force,
            jobs,
        } => solve(&graphs, out, force, jobs),
        Command::Verify {
            graph,
            coloring,
            out,
        } => {
            let g = read_graph(&graph)?;
            let text = fs::read_to_string(&coloring)
                .with_context(|| format!("reading {}", coloring.display()))?;
            let col = parse_coloring(&g, &text)
                .with_context(|| format!("parsing {}", coloring.display()))?;
            let report = verify_liec(&g, &col);
            let mut s = String::new();
            s.push_str(if report.is_valid() { "VALID\n" } else { "INVALID\n" });
            for v in &report.violations {
                let (a, b) = g.edge(v.edge);
                writeln!(s, "{} {} {}", g.label(a), g.label(b), v.color)?;
            }
            emit(&out, &s)?;
            Ok(0)
        }
        Command::Classify { graph, out } => {
            let g = read_graph(&graph)?;
            emit(&out, &classify_text(&g)?)?;
            Ok(0)
        }
        Command::Exact {
            graph,
            kmax,
            max_edges,
            out,
        } => {
            let g = read_graph(&graph)?;
            let config = OracleConfig {
                max_edges,
                ..OracleConfig::default()
            };
            let s = match exact_chi_irr_with(&g, kmax, &config)? {
                Some((k, _)) => format!("{k}\n"),
                None => "NONE\n".to_string(),
            };
            emit(&out, &s)?;
            Ok(0)
        }
        Command::Gen {
            kind,
            seed,
            n,
            cycles,
            steps,
            out,
        } => {
            let g = match kind {
                GenKind::Bowtie => generators::gen_bowtie(),
                GenKind::Butterfly => generators::gen_butterfly(),
                GenKind::Tree => generators::gen_random_tree(n.max(1), seed),
                GenKind::Unicyclic => generators::gen_random_unicyclic(n, seed)?,
                GenKind::Cactus => generators::gen_random_cactus(n, cycles, seed)?,
                GenKind::TMember => generators::gen_t_member(seed, steps),
            };
            emit(&out, &to_edge_list(&g))?;
            Ok(0)
        }
        Command::ExportDot {
            graph,
            coloring,
            out,
        } => {
            let g = read_graph(&graph)?;
            let col = match coloring {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    Some(parse_coloring(&g, &text)?)
                }
                None => None,
            };
            emit(&out, &dot(&g, col.as_ref()))?;
            Ok(0)
        }
    }
}

enum Solved {
    Colored(usize),
    NonColorable(String),
}

fn solve(graphs: &[PathBuf], out: Option<PathBuf>, force: bool, jobs: usize) -> Result<u8> {
    if out.is_some() && graphs.len() > 1 {
        bail!("--out needs a single input graph");
    }
    let targets: Vec<PathBuf> = graphs
        .iter()
        .map(|p| out.clone().unwrap_or_else(|| p.with_extension("col")))
        .collect();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<Solved>>>> =
        Mutex::new((0..graphs.len()).map(|_| None).collect());
    thread::scope(|scope| {
        for _ in 0..jobs.clamp(1, graphs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= graphs.len() {
                    break;
                }
                let r = solve_one(&graphs[i], &targets[i], force);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut code = 0;
    for (path, r) in graphs.iter().zip(results.into_inner().unwrap()) {
        match r.expect("every input is solved") {
            Ok(Solved::Colored(k)) => println!("{}: {k} colors", path.display()),
            Ok(Solved::NonColorable(class)) => {
                println!("{}: not colorable ({class})", path.display());
                code = code.max(1);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(code)
}

fn solve_one(path: &Path, target: &Path, force: bool) -> Result<Solved> {
    let g = read_graph(path)?;
    let col = match cactus_liec_components(&g) {
        Ok(col) => col,
        Err(Error::NonColorable(class)) => return Ok(Solved::NonColorable(class.to_string())),
        Err(e) => return Err(e).with_context(|| format!("solving {}", path.display())),
    };
    write_file(target, &format_coloring(&g, &col), force)?;
    Ok(Solved::Colored(col.num_colors()))
}

fn classify_text(g: &Graph) -> Result<String> {
    let comps: Vec<_> = g.components();
    let mut s = String::new();
    for (i, comp) in comps.iter().enumerate() {
        let sub = g.induced(comp);
        let c = classify(&sub.graph)?;
        if comps.len() > 1 {
            write!(s, "component {i}: ")?;
        }
        writeln!(s, "{}", c.class)?;
        let Some(w) = c.witness else { continue };
        let labels = |vs: &[usize]| {
            vs.iter()
                .map(|&v| sub.graph.label(v).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        for t in &w.triangles {
            writeln!(s, "triangle {}", labels(t))?;
        }
        for p in &w.connectors {
            writeln!(s, "connector {}", labels(p))?;
        }
        for p in &w.pendants {
            writeln!(s, "pendant {}", labels(p))?;
        }
    }
    Ok(s)
}

const PALETTE: [&str; 8] = [
    "red", "blue", "green3", "orange", "purple", "brown", "cyan3", "magenta",
];

fn dot(g: &Graph, col: Option<&EdgeColoring>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        let _ = writeln!(s, "  {};", g.label(v));
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = write!(s, "  {} -- {}", g.label(u), g.label(v));
        if let Some(col) = col {
            let c = col.get(e);
            let name = PALETTE[(c as usize - 1) % PALETTE.len()];
            let _ = write!(s, " [color={name}, label={c}]");
        }
        s.push_str(";\n");
    }
    s.push_str("}\n");
    s
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, text: &str, force: bool) -> Result<()> {
    if path.exists() && !force {
        bail!("{} exists; pass --force to overwrite", path.display());
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn emit(out: &OutArgs, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => write_file(path, text, out.force),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
