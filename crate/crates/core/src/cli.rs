//! Command-line front end. Exit codes: 0 success, 1 failed verification or
//! I/O, 2 refused precondition, 3 malformed input, 4 internal failure.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use rand::rngs::StdRng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::grid::{generate, Instance, LatticePoint, TriGridGraph};
use crate::placement::{verify_sequence, Placement, SlideSequence};
use crate::plan::{PlanReport, Strategy};
use crate::{ear_planner, hc_planner, io as text, matching, oracle, render};

#[derive(Parser, Debug)]
#[command(name = "trigrid", version, about = "Slide reconfiguration on triangular grid graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Triangle,
    Pentagon,
    Hexagon,
    StarOfDavid,
    DiamondCycle,
    ChordCycle,
    HexWithHole,
    /// A random placement on `--graph`.
    Placement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Ear,
    Hamilton,
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a named instance or a random placement.
    Gen {
        kind: GenKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 2)]
        radius: i64,
        /// Points removed from the patch, as `x,y;x,y`.
        #[arg(long, default_value = "")]
        remove: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report structural properties and which planner applies.
    Check {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Plan a slide sequence from START to TARGET.
    Plan {
        graph: PathBuf,
        start: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a plan from START and optionally compare with TARGET.
    Verify {
        graph: PathBuf,
        start: PathBuf,
        plan: PathBuf,
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Exhaustive search from a placement (or the first one) with a CSV export.
    Oracle {
        graph: PathBuf,
        #[arg(long)]
        start: Option<PathBuf>,
        #[arg(long)]
        budget_states: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a graph, a placement or every frame of a plan.
    Render {
        graph: PathBuf,
        #[arg(long)]
        placement: Option<PathBuf>,
        /// Plan file; needs `--placement` for the start unless it lists pieces.
        #[arg(long)]
        plan: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) | Error::NotFound(_) | Error::NonLattice | Error::Budget(_) | Error::NotAligned(_) => 2,
        Error::Parse { .. }
        | Error::Empty
        | Error::Disconnected
        | Error::EvenOrder(_)
        | Error::TooSmall
        | Error::DuplicatePoint(..)
        | Error::InvalidParams(_)
        | Error::VertexOutOfRange(_)
        | Error::InvalidEdge(..)
        | Error::InvalidMatching(_)
        | Error::InvalidPlacement(_)
        | Error::InvalidDecomposition(_) => 3,
        Error::Internal(_) | Error::NoExposingMatching(_) => 4,
        Error::IllegalMove { .. } | Error::Io(_) => 1,
    }
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<TriGridGraph> {
    text::parse_graph(&read(path)?)
}

fn parse_points(spec: &str) -> Result<Vec<LatticePoint>> {
    spec.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (x, y) = s.split_once(',').ok_or_else(|| Error::InvalidParams(format!("bad point `{s}`")))?;
            let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::InvalidParams(format!("bad point `{s}`")));
            Ok(LatticePoint::new(parse(x)?, parse(y)?))
        })
        .collect()
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParams(format!("--{name} is required")))
}

/// Property report of `cmd check`.
pub fn check_report(g: &TriGridGraph) -> String {
    let mut out = String::new();
    let fc = matching::is_factor_critical(g);
    let two = g.is_two_connected();
    let lc = g.is_locally_connected();
    let sod = g.is_star_of_david();
    let deg6 = g.degree6_vertices();
    let yes = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "vertices: {}", g.vertex_count()).unwrap();
    writeln!(out, "edges: {}", g.edge_count()).unwrap();
    writeln!(out, "lattice: {}", yes(g.is_lattice())).unwrap();
    writeln!(out, "connected: {}", yes(g.is_connected())).unwrap();
    writeln!(out, "two_connected: {}", yes(two)).unwrap();
    writeln!(out, "factor_critical: {}", yes(fc)).unwrap();
    writeln!(out, "locally_connected: {}", yes(lc)).unwrap();
    writeln!(out, "star_of_david: {}", yes(sod)).unwrap();
    let ids: Vec<String> = deg6.iter().map(|v| (v + 1).to_string()).collect();
    writeln!(out, "degree6: {}", if ids.is_empty() { "none".to_string() } else { ids.join(" ") }).unwrap();
    match g.holes() {
        Ok(h) => {
            let lens: Vec<String> = h.iter().map(|w| w.vertices.len().to_string()).collect();
            writeln!(out, "holes: {} [{}]", h.len(), lens.join(" ")).unwrap();
        }
        Err(_) => writeln!(out, "holes: n/a").unwrap(),
    }
    let mut applies = Vec::new();
    if lc && !sod && g.is_lattice() {
        applies.push("hamilton");
    }
    if two && fc && !deg6.is_empty() {
        applies.push("ear");
    }
    writeln!(out, "planners: {}", if applies.is_empty() { "none".to_string() } else { applies.join(" ") }).unwrap();
    if !fc {
        writeln!(out, "advice: not factor-critical, no planner can succeed").unwrap();
    }
    out
}

fn pick_strategy(g: &TriGridGraph, s: StrategyArg) -> Strategy {
    match s {
        StrategyArg::Ear => Strategy::Ear,
        StrategyArg::Hamilton => Strategy::Hamilton,
        StrategyArg::Auto if g.is_lattice() && g.is_locally_connected() && !g.is_star_of_david() => Strategy::Hamilton,
        StrategyArg::Auto => Strategy::Ear,
    }
}

pub fn plan(g: &TriGridGraph, p: &Placement, q: &Placement, strategy: Strategy) -> Result<PlanReport> {
    match strategy {
        Strategy::Ear => ear_planner::plan_ear(g, p, q),
        Strategy::Hamilton => hc_planner::plan_hamilton(g, p, q),
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { kind, n, m, radius, remove, graph, seed, out } => {
            let inst = match kind {
                GenKind::Triangle => Instance::Triangle,
                GenKind::Pentagon => Instance::Pentagon,
                GenKind::Hexagon => Instance::Hexagon,
                GenKind::StarOfDavid => Instance::StarOfDavid,
                GenKind::DiamondCycle => Instance::DiamondCycle { n: need(n, "n")? },
                GenKind::ChordCycle => Instance::ChordCycle { n: need(n, "n")?, m: need(m, "m")? },
                GenKind::HexWithHole => Instance::HexWithHole { radius, removed: parse_points(&remove)? },
                GenKind::Placement => {
                    let path = graph.ok_or_else(|| Error::InvalidParams("--graph is required".into()))?;
                    let g = load_graph(&path)?;
                    let p = Placement::random(&g, &mut StdRng::seed_from_u64(seed))?;
                    return emit(out.as_deref(), &text::write_placement(&p));
                }
            };
            emit(out.as_deref(), &text::write_graph(&generate(&inst)?))
        }
        Command::Check { graph, out } => {
            let g = load_graph(&graph)?;
            emit(out.as_deref(), &check_report(&g))
        }
        Command::Plan { graph, start, target, strategy, out } => {
            let g = load_graph(&graph)?;
            let p = text::parse_placement(&g, &read(&start)?)?;
            let q = text::parse_placement(&g, &read(&target)?)?;
            let strategy = pick_strategy(&g, strategy);
            let report = plan(&g, &p, &q, strategy)?;
            let check = verify_sequence(&g, &report.sequence, Some(&q))?;
            if check.matches_expected != Some(true) {
                return Err(Error::Internal("plan failed its own verification".into()));
            }
            info!("{} plan with {} slides", strategy, report.slide_count);
            eprintln!("verified: {} slides, strategy {}", report.slide_count, strategy);
            emit(out.as_deref(), &text::write_plan(&report))
        }
        Command::Verify { graph, start, plan, target } => {
            let g = load_graph(&graph)?;
            let p = text::parse_placement(&g, &read(&start)?)?;
            let file = text::parse_plan(&g, &read(&plan)?)?;
            let q = target.map(|t| read(&t).and_then(|s| text::parse_placement(&g, &s))).transpose()?;
            let report = verify_sequence(&g, &SlideSequence { start: p, moves: file.moves }, q.as_ref())?;
            match report.matches_expected {
                Some(false) => Err(Error::IllegalMove { index: report.move_count, reason: "final placement differs from target".into() }),
                _ => {
                    println!("ok {} slides", report.move_count);
                    Ok(())
                }
            }
        }
        Command::Oracle { graph, start, budget_states, out } => {
            let g = load_graph(&graph)?;
            let mut budget = oracle::Budget::default();
            if let Some(b) = budget_states {
                budget.max_states = b;
            }
            let p = match start {
                Some(s) => text::parse_placement(&g, &read(&s)?)?,
                None => oracle::all_placements(&g)
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Precondition("graph has no nearly perfect matching".into()))?,
            };
            let comp = oracle::bfs_component(&g, &p, budget)?;
            let census = oracle::census(&g, budget)?;
            let mut csv = comp.to_csv();
            writeln!(
                csv,
                "# components={} total={} component_size={} eccentricity={}",
                census.component_count(),
                census.total,
                comp.len(),
                comp.eccentricity()
            )
            .unwrap();
            emit(out.as_deref(), &csv)
        }
        Command::Render { graph, placement, plan, out, format: Format::Svg } => {
            let g = load_graph(&graph)?;
            let p = placement.map(|s| read(&s).and_then(|t| text::parse_placement(&g, &t))).transpose()?;
            match plan {
                None => Ok(fs::write(&out, render::render_svg(&g, p.as_ref(), None)?)?),
                Some(path) => {
                    let file = text::parse_plan(&g, &read(&path)?)?;
                    let start = file
                        .start
                        .or(p)
                        .ok_or_else(|| Error::InvalidParams("plan rendering needs a start placement".into()))?;
                    let frames = render::render_frames(&g, &SlideSequence { start, moves: file.moves })?;
                    fs::create_dir_all(&out)?;
                    for (i, f) in frames.iter().enumerate() {
                        fs::write(out.join(format!("frame_{i:04}.svg")), f)?;
                    }
                    Ok(())
                }
            }
        }
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let _ = env_logger::Builder::from_env(env_logger::Env::new().filter("TRIGRID_LOG")).try_init();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 3 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
