//! Line-oriented text formats. Ids and labels are 1-based in text.
//!
//! ```text
//! v <id> <x> <y>        lattice vertex (ids follow lexicographic point order)
//! av <id>               abstract vertex
//! ae <u> <v>            abstract edge
//! m <u> <v>             matching edge
//! p <label> <u> <v>     piece
//! s <label> <kept> <dest>  slide
//! h <v1> ... <vk>       Hamilton cycle
//! base <v1> ... / ear <v1> ... / kind <k>   ear decomposition
//! strategy <s> / slides <n>                  plan header
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::ears::{AdmissibleKind, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::grid::{build_graph, LatticePoint, TriGridGraph};
use crate::hamilton::HamiltonCycle;
use crate::matching::Matching;
use crate::placement::{Placement, SlideMove, SlideSequence};
use crate::plan::{PlanReport, Strategy};

struct Line<'a> {
    no: usize,
    tag: &'a str,
    args: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.no, msg: msg.into() }
    }

    fn ints(&self, count: usize) -> Result<Vec<i64>> {
        if self.args.len() != count {
            return Err(self.err(format!("`{}` takes {count} values, got {}", self.tag, self.args.len())));
        }
        self.all_ints()
    }

    fn all_ints(&self) -> Result<Vec<i64>> {
        self.args
            .iter()
            .map(|a| a.parse::<i64>().map_err(|_| self.err(format!("`{a}` is not an integer"))))
            .collect()
    }

    /// 1-based id in `1..=n`, returned 0-based.
    fn id(&self, x: i64, n: usize) -> Result<usize> {
        if x < 1 || x as usize > n {
            return Err(self.err(format!("id {x} outside 1..={n}")));
        }
        Ok(x as usize - 1)
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            return None;
        }
        let mut it = t.split_whitespace();
        let tag = it.next()?;
        Some(Line { no: i + 1, tag, args: it.collect() })
    })
}

fn check_dense(ids: &[usize], what: &str, last_line: usize) -> Result<()> {
    let mut sorted = ids.to_vec();
    sorted.sort_unstable();
    if sorted.iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::Parse { line: last_line, msg: format!("{what} ids must be exactly 1..{}", ids.len()) });
    }
    Ok(())
}

pub fn parse_graph(text: &str) -> Result<TriGridGraph> {
    let mut lattice: Vec<(usize, LatticePoint, usize)> = Vec::new();
    let mut abstract_ids = Vec::new();
    let mut abstract_edges = Vec::new();
    let mut last = 0;
    for l in lines(text) {
        last = l.no;
        match l.tag {
            "v" => {
                let a = l.ints(3)?;
                if a[0] < 1 {
                    return Err(l.err("ids start at 1"));
                }
                lattice.push((a[0] as usize - 1, LatticePoint::new(a[1], a[2]), l.no));
            }
            "av" => {
                let a = l.ints(1)?;
                if a[0] < 1 {
                    return Err(l.err("ids start at 1"));
                }
                abstract_ids.push(a[0] as usize - 1);
            }
            "ae" => {
                let a = l.ints(2)?;
                abstract_edges.push((a[0], a[1], l.no));
            }
            other => return Err(l.err(format!("unknown record `{other}`"))),
        }
    }
    if !lattice.is_empty() && !(abstract_ids.is_empty() && abstract_edges.is_empty()) {
        return Err(Error::Parse { line: last, msg: "lattice and abstract records mixed".into() });
    }
    if lattice.is_empty() && abstract_ids.is_empty() {
        return Err(Error::Empty);
    }
    if !lattice.is_empty() {
        let ids: Vec<usize> = lattice.iter().map(|t| t.0).collect();
        check_dense(&ids, "vertex", last)?;
        lattice.sort_by_key(|t| t.0);
        let pts: Vec<LatticePoint> = lattice.iter().map(|t| t.1).collect();
        let g = build_graph(&pts)?;
        for (id, p, no) in &lattice {
            if g.vertex_of(*p) != Some(*id) {
                return Err(Error::Parse { line: *no, msg: "ids must follow lexicographic (x, y) order".into() });
            }
        }
        return Ok(g);
    }
    check_dense(&abstract_ids, "vertex", last)?;
    let n = abstract_ids.len();
    let mut edges = Vec::new();
    for (a, b, no) in abstract_edges {
        let bad = |x: i64| x < 1 || x as usize > n;
        if bad(a) || bad(b) || a == b {
            return Err(Error::Parse { line: no, msg: format!("bad edge ({a}, {b})") });
        }
        edges.push((a as usize - 1, b as usize - 1));
    }
    TriGridGraph::abstract_graph(Graph::new(n, edges)?)
}

pub fn write_graph(g: &TriGridGraph) -> String {
    let mut out = String::new();
    match g.points() {
        Ok(pts) => {
            for (i, p) in pts.iter().enumerate() {
                writeln!(out, "v {} {} {}", i + 1, p.x, p.y).unwrap();
            }
        }
        Err(_) => {
            for v in g.vertices() {
                writeln!(out, "av {}", v + 1).unwrap();
            }
            for e in g.edges() {
                writeln!(out, "ae {} {}", e.u() + 1, e.v() + 1).unwrap();
            }
        }
    }
    out
}

fn parse_pieces<'a>(g: &Graph, ls: impl Iterator<Item = Line<'a>>) -> Result<Option<Placement>> {
    let n = g.vertex_count();
    let mut pieces: Vec<(usize, Edge)> = Vec::new();
    let mut last = 0;
    for l in ls {
        last = l.no;
        let a = l.ints(3)?;
        let label = l.id(a[0], n / 2)?;
        let (u, v) = (l.id(a[1], n)?, l.id(a[2], n)?);
        if u == v {
            return Err(l.err("piece endpoints coincide"));
        }
        pieces.push((label, Edge::new(u, v)));
    }
    if pieces.is_empty() {
        return Ok(None);
    }
    let labels: Vec<usize> = pieces.iter().map(|t| t.0).collect();
    check_dense(&labels, "label", last)?;
    pieces.sort_by_key(|t| t.0);
    Placement::new(g, pieces.into_iter().map(|t| t.1).collect()).map(Some)
}

pub fn parse_placement(g: &Graph, text: &str) -> Result<Placement> {
    let mut ps = Vec::new();
    for l in lines(text) {
        match l.tag {
            "p" => ps.push(l),
            other => return Err(l.err(format!("unknown record `{other}` in placement"))),
        }
    }
    parse_pieces(g, ps.into_iter())?.ok_or_else(|| Error::Parse { line: 0, msg: "no pieces".into() })
}

pub fn write_placement(p: &Placement) -> String {
    let mut out = String::new();
    for (l, e) in p.pieces().iter().enumerate() {
        writeln!(out, "p {} {} {}", l + 1, e.u() + 1, e.v() + 1).unwrap();
    }
    out
}

pub fn parse_matching(g: &Graph, text: &str) -> Result<Matching> {
    let mut edges = Vec::new();
    for l in lines(text) {
        if l.tag != "m" {
            return Err(l.err(format!("unknown record `{}` in matching", l.tag)));
        }
        let a = l.ints(2)?;
        edges.push(Edge::new(l.id(a[0], g.vertex_count())?, l.id(a[1], g.vertex_count())?));
    }
    Matching::from_edges(g, &edges)
}

pub fn write_matching(m: &Matching) -> String {
    let mut out = String::new();
    for e in m.edges() {
        writeln!(out, "m {} {}", e.u() + 1, e.v() + 1).unwrap();
    }
    out
}

fn parse_move(l: &Line, n: usize) -> Result<SlideMove> {
    let a = l.ints(3)?;
    Ok(SlideMove { label: l.id(a[0], n / 2)?, kept: l.id(a[1], n)?, dest: l.id(a[2], n)? })
}

/// A plan file: optional header, optional start pieces, then moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanFile {
    pub strategy: Option<Strategy>,
    pub slides: Option<usize>,
    pub start: Option<Placement>,
    pub moves: Vec<SlideMove>,
}

pub fn parse_plan(g: &Graph, text: &str) -> Result<PlanFile> {
    let n = g.vertex_count();
    let mut plan = PlanFile { strategy: None, slides: None, start: None, moves: Vec::new() };
    let mut pieces = Vec::new();
    for l in lines(text) {
        match l.tag {
            "strategy" => {
                let [s] = l.args[..] else { return Err(l.err("`strategy` takes one value")) };
                plan.strategy = Some(s.parse().map_err(|_| l.err(format!("unknown strategy `{s}`")))?);
            }
            "slides" => plan.slides = Some(l.ints(1)?[0].max(0) as usize),
            "p" => pieces.push(l),
            "s" => plan.moves.push(parse_move(&l, n)?),
            other => return Err(l.err(format!("unknown record `{other}` in plan"))),
        }
    }
    plan.start = parse_pieces(g, pieces.into_iter())?;
    if let Some(k) = plan.slides {
        if k != plan.moves.len() {
            return Err(Error::Parse { line: 0, msg: format!("header says {k} slides, found {}", plan.moves.len()) });
        }
    }
    Ok(plan)
}

pub fn write_moves(moves: &[SlideMove]) -> String {
    let mut out = String::new();
    for mv in moves {
        writeln!(out, "{mv}").unwrap();
    }
    out
}

pub fn write_plan(report: &PlanReport) -> String {
    format!("strategy {}\nslides {}\n{}", report.strategy, report.slide_count, write_moves(&report.sequence.moves))
}

/// Start pieces followed by moves.
pub fn write_sequence(seq: &SlideSequence) -> String {
    format!("{}{}", write_placement(&seq.start), write_moves(&seq.moves))
}

pub fn parse_sequence(g: &Graph, text: &str) -> Result<SlideSequence> {
    let plan = parse_plan(g, text)?;
    let start = plan.start.ok_or_else(|| Error::Parse { line: 0, msg: "sequence has no start pieces".into() })?;
    Ok(SlideSequence { start, moves: plan.moves })
}

pub fn parse_cycle(g: &Graph, text: &str) -> Result<HamiltonCycle> {
    let mut found = None;
    for l in lines(text) {
        if l.tag != "h" || found.is_some() {
            return Err(l.err("expected a single `h` record"));
        }
        let ids = l.all_ints()?;
        let order = ids.iter().map(|&x| l.id(x, g.vertex_count())).collect::<Result<Vec<Vertex>>>()?;
        found = Some(HamiltonCycle::new(g, order)?);
    }
    found.ok_or_else(|| Error::Parse { line: 0, msg: "no cycle".into() })
}

pub fn write_decomposition(d: &EarDecomposition) -> String {
    let mut out = String::new();
    let ids = |path: &[Vertex]| path.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "kind {}", d.kind).unwrap();
    writeln!(out, "base {}", ids(&d.base_cycle)).unwrap();
    for e in &d.ears {
        writeln!(out, "ear {}", ids(&e.path)).unwrap();
    }
    out
}

pub fn parse_decomposition(g: &Graph, text: &str) -> Result<EarDecomposition> {
    let n = g.vertex_count();
    let mut d = EarDecomposition { base_cycle: Vec::new(), ears: Vec::new(), kind: AdmissibleKind::None };
    for l in lines(text) {
        match l.tag {
            "kind" => {
                d.kind = match l.args[..] {
                    ["none"] => AdmissibleKind::None,
                    ["pentagon"] => AdmissibleKind::Pentagon,
                    ["diamond_cycle"] => AdmissibleKind::DiamondCycle,
                    _ => return Err(l.err("unknown kind")),
                }
            }
            "base" | "ear" => {
                let path = l.all_ints()?.iter().map(|&x| l.id(x, n)).collect::<Result<Vec<_>>>()?;
                if l.tag == "base" {
                    d.base_cycle = path;
                } else {
                    d.ears.push(Ear::new(path));
                }
            }
            other => return Err(l.err(format!("unknown record `{other}` in decomposition"))),
        }
    }
    d.validate(g, false)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};

    #[test]
    fn graph_round_trip() {
        for inst in [Instance::Pentagon, Instance::DiamondCycle { n: 3 }, Instance::StarOfDavid] {
            let g = generate(&inst).unwrap();
            let back = parse_graph(&write_graph(&g)).unwrap();
            assert_eq!(back.graph(), g.graph());
            assert_eq!(back.is_lattice(), g.is_lattice());
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("# comment\nv 1 0 0\nv 2 1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_graph("v 1 0 0\nq 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn ids_must_be_lexicographic() {
        assert!(parse_graph("v 1 1 0\nv 2 0 0\nv 3 0 1\n").is_err());
        assert!(parse_graph("v 1 0 0\nv 2 0 1\nv 3 1 0\n").is_ok());
    }

    #[test]
    fn plan_header_count_checked() {
        let g = generate(&Instance::Triangle).unwrap();
        assert!(parse_plan(&g, "strategy ear\nslides 2\ns 1 1 3\n").is_err());
        let p = parse_plan(&g, "strategy ear\nslides 1\ns 1 1 3\n").unwrap();
        assert_eq!(p.strategy, Some(Strategy::Ear));
        assert_eq!(p.moves, vec![SlideMove { label: 0, kept: 0, dest: 2 }]);
    }
}
