//! Command-line front end: argument definitions and dispatch.

pub mod formats;

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nonrep::embedding::{is_triangulation, triangulate, RotationSystem};
use nonrep::engine::{colour_planar, colour_tree, colour_tree_auto, planar_colour_bound, PlanarOptions};
use nonrep::generators::{gen_lowerbound, GenSpec, Generated};
use nonrep::graph::set_members;
use nonrep::layering::bfs_layering;
use nonrep::local::colour_local;
use nonrep::separator::{to_separation, LollipopSearch};
use nonrep::verify::{find_repetitive_path_with, min_nonrepetitive_colouring, PathSearch, DEFAULT_NODE_BUDGET};
use nonrep::words::{find_walk_repetition, generate_walk_certified, thue_word, WalkCertificate, DEFAULT_T_MAX};

use formats::{
    is_pg, parse_colouring, parse_embedding, parse_graph, parse_sequence, parse_set, read_file, write_colouring,
    write_embedding, write_graph, write_sequence, ColourFile,
};

#[derive(Debug, Parser)]
#[command(name = "nonrep", version, about = "Nonrepetitive colourings of planar graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Produce a colouring.
    #[command(subcommand)]
    Colour(ColourCmd),
    /// Check a property of a colouring.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Exact nonrepetitive chromatic number.
    #[command(subcommand)]
    Pi(PiCmd),
    /// Separators.
    #[command(subcommand)]
    Sep(SepCmd),
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Squarefree and walk-certified sequences.
    #[command(subcommand)]
    Words(WordsCmd),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ColourCmd {
    /// Separator-recursion colouring of an embedded planar graph (.pg).
    Planar {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
        /// Walk certificate (.seq) to use instead of generating one.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Re-check separator side counts after every move.
        #[arg(long)]
        audit: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Layer-pattern colouring of a tree (.g or .pg).
    Tree {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Slab colouring with no repetitive path of order at most 2k.
    Local {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Search for a repetitively coloured path.
    Nonrep {
        graph: PathBuf,
        colouring: PathBuf,
        /// Only paths of at most this many vertices.
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum PiCmd {
    /// Smallest number of colours with no repetitive path.
    Exact {
        input: PathBuf,
        #[arg(long)]
        max_colours: Option<usize>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Also write an optimal colouring here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SepCmd {
    /// Balanced lollipop separator; non-triangulated inputs are triangulated first.
    Lollipop {
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Vertex set B (.set); defaults to all vertices.
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long)]
        audit: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    G,
    Pg,
}

#[derive(Debug, Subcommand)]
pub enum GenCmd {
    /// Random stacked triangulation with edge flips.
    Triangulation {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of flips; defaults to n.
        #[arg(long)]
        flips: Option<usize>,
        #[arg(long, value_enum, default_value_t = GraphFormat::Pg)]
        format: GraphFormat,
        #[command(flatten)]
        out: Output,
    },
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Pg)]
        format: GraphFormat,
        #[command(flatten)]
        out: Output,
    },
    Cycle {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormat::Pg)]
        format: GraphFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Random recursive tree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Pg)]
        format: GraphFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Random tree plus a cycle through each BFS layer from vertex 0.
    TreeCycles {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Pg)]
        format: GraphFormat,
        #[command(flatten)]
        out: Output,
    },
    /// Path of 22 vertices, two dominators, and a copy of H on each path vertex.
    Lowerbound {
        /// The graph H (.g or .pg).
        #[arg(long)]
        h: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum WordsCmd {
    /// Prefix of the ternary Thue word.
    Thue {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Walk-certified sequence by backtracking.
    Walk {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        sigma: usize,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Check a sequence (.seq) for walk repetitions.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
    },
}

/// Whether the checked property holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Holds => 0,
            Outcome::Violated => 1,
        }
    }
}

fn emit(out: &Output, text: &str) -> Result<()> {
    match &out.output {
        Some(path) => formats::write_file(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes()).context("writing to stdout")?,
    }
    Ok(())
}

/// Reads `path` and parses it, prefixing parse errors with the path.
fn load<T>(path: &Path, parse: impl FnOnce(&str) -> formats::Result<T>) -> Result<T> {
    let text = read_file(path)?;
    parse(&text).with_context(|| path.display().to_string())
}

fn read_embedding(path: &Path) -> Result<RotationSystem> {
    if !is_pg(path) {
        bail!("{}: an embedded graph (.pg) is required", path.display());
    }
    load(path, parse_embedding)
}

fn read_graph(path: &Path) -> Result<nonrep::graph::Graph> {
    if is_pg(path) {
        Ok(read_embedding(path)?.graph().clone())
    } else {
        load(path, parse_graph)
    }
}

fn read_certificate(path: &Path, t_max: usize) -> Result<WalkCertificate> {
    let seq = load(path, parse_sequence)?;
    let cert = WalkCertificate { sequence: seq, t_max };
    if !cert.verify() {
        bail!("{}: sequence is not walk-nonrepetitive up to {t_max}", path.display());
    }
    Ok(cert)
}

fn write_generated(g: &Generated, format: GraphFormat, out: &Output) -> Result<()> {
    let text = match (g, format) {
        (Generated::Embedded(e), GraphFormat::Pg) => write_embedding(e),
        (_, GraphFormat::G) => write_graph(g.graph()),
        (Generated::Plain(_), GraphFormat::Pg) => bail!("this family has no embedding; use --format g"),
    };
    emit(out, &text)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Colour(cmd) => colour(cmd),
        Command::Verify(VerifyCmd::Nonrep { graph, colouring, max_order, budget }) => {
            let g = read_graph(&graph)?;
            let col = load(&colouring, parse_colouring)?;
            if col.flat.len() != g.n() {
                bail!("colouring has {} vertices, graph has {}", col.flat.len(), g.n());
            }
            let opts = PathSearch { max_order, node_budget: budget, ..PathSearch::default() };
            match find_repetitive_path_with(&g, &col.flat, opts)? {
                None => {
                    println!("nonrepetitive");
                    Ok(Outcome::Holds)
                }
                Some(w) => {
                    println!("repetitive path: {}", join(&w.path));
                    println!("half colours: {}", join(&w.half_colours));
                    Ok(Outcome::Violated)
                }
            }
        }
        Command::Pi(PiCmd::Exact { input, max_colours, max_order, budget, output }) => {
            let g = read_graph(&input)?;
            let (k, col) = min_nonrepetitive_colouring(&g, max_order, max_colours, budget)?;
            println!("pi = {k}");
            if let Some(path) = output {
                formats::write_file(&path, &write_colouring(&ColourFile { flat: col, triples: None }))?;
            }
            Ok(Outcome::Holds)
        }
        Command::Sep(SepCmd::Lollipop { input, root, set, audit }) => {
            let mut e = read_embedding(&input)?;
            if !is_triangulation(&e) {
                eprintln!("input is not a triangulation; triangulating first");
                e = triangulate(&e)?;
            }
            let n = e.n();
            let b = match &set {
                Some(p) => load(p, |t| parse_set(t, n))?,
                None => vec![true; n],
            };
            let lay = bfs_layering(e.graph(), root)?;
            let search = LollipopSearch::new(&e, &lay)?.with_audit(audit);
            if b.iter().filter(|&&x| x).count() <= 2 {
                println!("|B| <= 2: whole-graph separation");
                println!("boundary: {}", join(&(0..n).collect::<Vec<_>>()));
                return Ok(Outcome::Holds);
            }
            let found = search.find_balanced(&b)?;
            let s = &found.lollipop;
            let sep = to_separation(s, &found.stats);
            println!("u: {}", join(&s.u));
            println!("v: {}", join(&s.v));
            println!("apex: {}", s.apex.map_or("none".to_string(), |a| a.to_string()));
            println!("iterations: {}", found.iterations);
            println!(
                "r_B {} l_B {} r {} l {}",
                found.stats.r_b, found.stats.l_b, found.stats.r_all, found.stats.l_all
            );
            println!("boundary: {}", join(&sep.boundary()));
            println!("right: {}", join(&set_members(&found.stats.right)));
            println!("left: {}", join(&set_members(&found.stats.left)));
            Ok(Outcome::Holds)
        }
        Command::Gen(cmd) => {
            match cmd {
                GenCmd::Triangulation { n, seed, flips, format, out } => {
                    let g = GenSpec::Triangulation { n, seed, flips: flips.unwrap_or(n) }.generate()?;
                    write_generated(&g, format, &out)?;
                }
                GenCmd::Path { n, format, out } => write_generated(&GenSpec::Path { n }.generate()?, format, &out)?,
                GenCmd::Cycle { n, format, out } => write_generated(&GenSpec::Cycle { n }.generate()?, format, &out)?,
                GenCmd::Tree { n, seed, format, out } => {
                    write_generated(&GenSpec::RandomTree { n, seed }.generate()?, format, &out)?
                }
                GenCmd::TreeCycles { n, seed, format, out } => {
                    write_generated(&GenSpec::TreeCycles { n, seed }.generate()?, format, &out)?
                }
                GenCmd::Lowerbound { h, out } => {
                    let h = read_graph(&h)?;
                    let (g, _) = gen_lowerbound(&h)?;
                    emit(&out, &write_graph(&g))?;
                }
            }
            Ok(Outcome::Holds)
        }
        Command::Words(cmd) => match cmd {
            WordsCmd::Thue { n, out } => {
                emit(&out, &write_sequence(&thue_word(n)))?;
                Ok(Outcome::Holds)
            }
            WordsCmd::Walk { n, sigma, t_max, out } => {
                let cert = generate_walk_certified(n, sigma, t_max)?;
                emit(&out, &write_sequence(&cert.sequence))?;
                Ok(Outcome::Holds)
            }
            WordsCmd::Check { input, t_max } => {
                let seq = load(&input, parse_sequence)?;
                match find_walk_repetition(&seq.symbols, t_max) {
                    None => {
                        println!("walk-nonrepetitive up to {t_max}");
                        Ok(Outcome::Holds)
                    }
                    Some(w) => {
                        println!("repetitive walk: {}", join(&w));
                        Ok(Outcome::Violated)
                    }
                }
            }
        },
    }
}

fn colour(cmd: ColourCmd) -> Result<Outcome> {
    match cmd {
        ColourCmd::Planar { input, root, t_max, certificate, audit, out } => {
            let e = read_embedding(&input)?;
            let certificate = certificate.map(|p| read_certificate(&p, t_max)).transpose()?;
            let run = colour_planar(&e, &PlanarOptions { root, t_max, certificate, audit })?;
            let c = &run.colouring;
            let triples = (0..c.n()).map(|v| (c.pattern[v], c.depth[v], c.label[v])).collect();
            let file = ColourFile { flat: c.flat.clone(), triples: Some(triples) };
            eprintln!(
                "colours {} (bound {}), max depth {}, alphabet {}",
                c.num_colours(),
                planar_colour_bound(e.n()),
                c.max_depth,
                run.certificate.sigma()
            );
            emit(&out, &write_colouring(&file))?;
        }
        ColourCmd::Tree { input, root, t_max, certificate, out } => {
            let g = read_graph(&input)?;
            let flat = match certificate {
                Some(p) => colour_tree(&g, root, &read_certificate(&p, t_max)?)?,
                None => colour_tree_auto(&g, root, t_max)?.0,
            };
            let file = ColourFile { flat, triples: None };
            eprintln!("colours {}", file.num_colours());
            emit(&out, &write_colouring(&file))?;
        }
        ColourCmd::Local { input, k, root, seed, out } => {
            let g = read_graph(&input)?;
            let run = colour_local(&g, root, k, seed)?;
            let file = ColourFile { flat: run.colouring.flat.clone(), triples: None };
            eprintln!("colours {} over {} slabs", file.num_colours(), run.slabs.len());
            emit(&out, &write_colouring(&file))?;
        }
    }
    Ok(Outcome::Holds)
}
