//! Odd proper ear decompositions and admissible cores.

use std::collections::BTreeSet;
use std::fmt;

use log::debug;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, SubGraph, Vertex};
use crate::matching::{self, Matching};
use crate::placement::{is_aligned_with_cycle, path_moves, Placement, Run, SlideSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub path: Vec<Vertex>,
}

impl Ear {
    pub fn new(path: Vec<Vertex>) -> Ear {
        Ear { path }
    }

    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() <= 1
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.path[0], *self.path.last().unwrap())
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.path[1..self.path.len() - 1]
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.path.windows(2).map(|w| Edge::new(w[0], w[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibleKind {
    None,
    Pentagon,
    DiamondCycle,
}

impl fmt::Display for AdmissibleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdmissibleKind::None => "none",
            AdmissibleKind::Pentagon => "pentagon",
            AdmissibleKind::DiamondCycle => "diamond_cycle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EarDecomposition {
    pub base_cycle: Vec<Vertex>,
    pub ears: Vec<Ear>,
    pub kind: AdmissibleKind,
}

fn cycle_edges(c: &[Vertex]) -> impl Iterator<Item = Edge> + '_ {
    (0..c.len()).map(move |i| Edge::new(c[i], c[(i + 1) % c.len()]))
}

impl EarDecomposition {
    /// Number of nested subgraphs `G_1, ..., G_k`.
    pub fn stage_count(&self) -> usize {
        self.ears.len() + 1
    }

    /// Edges of `G_i` (1-based `i`).
    pub fn stage_edges(&self, i: usize) -> Vec<Edge> {
        let mut out: Vec<Edge> = cycle_edges(&self.base_cycle).collect();
        for ear in &self.ears[..i - 1] {
            out.extend(ear.edges());
        }
        out.sort();
        out
    }

    pub fn stage(&self, host_order: usize, i: usize) -> SubGraph {
        SubGraph::from_edges(host_order, &self.stage_edges(i))
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.base_cycle.clone();
        for ear in &self.ears {
            v.extend(ear.interior());
        }
        v.sort_unstable();
        v
    }

    /// Structural check; with `complete` every edge of `g` must be used once.
    pub fn validate(&self, g: &Graph, complete: bool) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidDecomposition(m));
        let n = g.vertex_count();
        let c = &self.base_cycle;
        if c.len() < 3 || c.len() % 2 == 0 {
            return bad(format!("base cycle has length {}", c.len()));
        }
        let mut inside = vec![false; n];
        let mut used = BTreeSet::new();
        for &v in c {
            if v >= n || std::mem::replace(&mut inside[v], true) {
                return bad("base cycle repeats a vertex".into());
            }
        }
        for e in cycle_edges(c) {
            if !g.contains_edge(e) {
                return bad(format!("base edge {e} missing"));
            }
            used.insert(e);
        }
        for (i, ear) in self.ears.iter().enumerate() {
            if ear.path.len() < 2 || ear.len() % 2 == 0 {
                return bad(format!("ear {} has even length", i + 1));
            }
            let (a, b) = ear.ends();
            if a == b || !inside[a] || !inside[b] {
                return bad(format!("ear {} endpoints not distinct old vertices", i + 1));
            }
            for &x in ear.interior() {
                if x >= n || std::mem::replace(&mut inside[x], true) {
                    return bad(format!("ear {} interior vertex {} not new", i + 1, x + 1));
                }
            }
            for e in ear.edges() {
                if !g.contains_edge(e) || !used.insert(e) {
                    return bad(format!("ear {} edge {e} missing or reused", i + 1));
                }
            }
        }
        if complete && (used.len() != g.edge_count() || inside.iter().any(|x| !x)) {
            return bad("decomposition does not cover the graph".into());
        }
        match self.kind {
            AdmissibleKind::None => {}
            AdmissibleKind::Pentagon => {
                if c.len() != 5 || self.ears.len() < 2 || self.ears[0].len() != 1 || self.ears[1].len() != 1 {
                    return bad("pentagon core must be a 5-cycle with two chords".into());
                }
            }
            AdmissibleKind::DiamondCycle => {
                if self.ears.len() < 2 || self.ears[0].len() != 3 || self.ears[1].len() != 1 {
                    return bad("diamond core needs a length-3 ear and a diagonal".into());
                }
                let (u, v) = self.ears[0].ends();
                if !g.has_edge(u, v) || !cycle_edges(c).any(|e| e == Edge::new(u, v)) {
                    return bad("length-3 ear endpoints must be adjacent on the base cycle".into());
                }
                let p = &self.ears[0].path;
                let (x, y) = self.ears[1].ends();
                let quad: BTreeSet<Vertex> = p.iter().copied().collect();
                if !quad.contains(&x) || !quad.contains(&y) {
                    return bad("diagonal must lie inside the diamond".into());
                }
            }
        }
        Ok(())
    }

    /// Number of leading stages forming the admissible core.
    pub fn core_stage(&self) -> usize {
        match self.kind {
            AdmissibleKind::None => 1,
            _ => 3,
        }
    }
}

/// Alignment conditions: base cycle alternating with the exposed vertex on
/// it, and every ear alternating with its ends left to other pieces.
pub fn is_aligned(p: &Placement, d: &EarDecomposition) -> bool {
    if !is_aligned_with_cycle(p, &d.base_cycle) {
        return false;
    }
    d.ears.iter().all(|ear| {
        let path = &ear.path;
        let l = ear.len();
        if l == 1 {
            return !p.pieces().contains(&Edge::new(path[0], path[1]));
        }
        (0..(l - 1) / 2).all(|i| {
            let (a, b) = (path[2 * i + 1], path[2 * i + 2]);
            p.owner(a).is_some() && p.owner(a) == p.owner(b)
        })
    })
}

pub fn ear_decomposition(g: &Graph, m: &Matching) -> Result<EarDecomposition> {
    if !g.is_two_connected() {
        return Err(Error::Precondition("graph is not 2-connected".into()));
    }
    if !matching::is_factor_critical(g) {
        return Err(Error::Precondition("graph is not factor-critical".into()));
    }
    let x = m
        .exposed_vertex()
        .filter(|_| 2 * m.len() + 1 == g.vertex_count())
        .ok_or_else(|| Error::InvalidMatching("matching is not nearly perfect".into()))?;
    let u = g.neighbors(x)[0];
    let base = matching::odd_alternating_cycle_through(g, m, Edge::new(u, x), true)?;
    let partial = EarDecomposition { base_cycle: base, ears: Vec::new(), kind: AdmissibleKind::None };
    extend_from_central(g, m, &partial)
}

/// Matching that is perfect outside `h` and nearly perfect on the edges of `h`.
fn central_witness(g: &Graph, m: &Matching, partial: &EarDecomposition) -> Result<Matching> {
    let n = g.vertex_count();
    let hv = partial.vertices();
    let mut in_h = vec![false; n];
    hv.iter().for_each(|&v| in_h[v] = true);
    let h_edges: BTreeSet<Edge> = partial.stage_edges(partial.stage_count()).into_iter().collect();
    let fits = m.len() * 2 + 1 == n
        && m.exposed_vertex().is_some_and(|x| in_h[x])
        && m.edges().iter().all(|e| if in_h[e.u()] { h_edges.contains(e) } else { !in_h[e.v()] });
    if fits {
        return Ok(m.clone());
    }
    let outside = matching::perfect_matching_avoiding(g, &hv)
        .ok_or_else(|| Error::Precondition("subgraph is not central".into()))?;
    let sub = SubGraph::from_edges(n, &h_edges.iter().copied().collect::<Vec<_>>());
    let inner = matching::near_perfect_matching(&sub.graph, 0)?
        .ok_or_else(|| Error::Internal("odd ear decomposition without a nearly perfect matching".into()))?;
    let mut w = outside;
    for e in inner.edges() {
        w.insert(e.map(|x| sub.to_global(x)));
    }
    Ok(w)
}

/// Grows a decomposition of a central subgraph into one of the whole graph.
pub fn extend_from_central(g: &Graph, m: &Matching, partial: &EarDecomposition) -> Result<EarDecomposition> {
    partial.validate(g, false)?;
    let n = g.vertex_count();
    if !matching::is_central(g, &partial.vertices()) {
        return Err(Error::Precondition("subgraph is not central".into()));
    }
    let m = central_witness(g, m, partial)?;
    let mut d = partial.clone();
    let mut in_h = vec![false; n];
    d.vertices().iter().for_each(|&v| in_h[v] = true);
    let mut used: BTreeSet<Edge> = d.stage_edges(d.stage_count()).into_iter().collect();
    while used.len() < g.edge_count() {
        if let Some(&chord) = g.edges().iter().find(|e| !used.contains(e) && in_h[e.u()] && in_h[e.v()]) {
            d.ears.push(Ear::new(vec![chord.u(), chord.v()]));
            used.insert(chord);
            continue;
        }
        let path = find_ear(g, &m, &in_h).ok_or_else(|| Error::Internal("no alternating ear found".into()))?;
        for &x in &path[1..path.len() - 1] {
            in_h[x] = true;
        }
        let ear = Ear::new(path);
        used.extend(ear.edges());
        d.ears.push(ear);
    }
    d.validate(g, true)?;
    Ok(d)
}

/// Shortest ear `a, b, mate(b), ..., y, z` leaving and re-entering `H`.
fn find_ear(g: &Graph, m: &Matching, in_h: &[bool]) -> Option<Vec<Vertex>> {
    let crossing: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .flat_map(|e| [(e.u(), e.v()), (e.v(), e.u())])
        .filter(|&(a, b)| in_h[a] && !in_h[b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let outside = in_h.iter().filter(|x| !**x).count();
    for depth in 1..=outside / 2 {
        for &(a, b) in &crossing {
            let mut on = vec![false; in_h.len()];
            let mut path = vec![a];
            if ear_dfs(g, m, in_h, b, depth, &mut on, &mut path) {
                return Some(path);
            }
        }
    }
    None
}

fn ear_dfs(
    g: &Graph,
    m: &Matching,
    in_h: &[bool],
    b: Vertex,
    depth: usize,
    on: &mut [bool],
    path: &mut Vec<Vertex>,
) -> bool {
    let Some(b1) = m.mate(b) else { return false };
    if on[b1] || in_h[b1] {
        return false;
    }
    on[b] = true;
    on[b1] = true;
    path.push(b);
    path.push(b1);
    if depth == 1 {
        if let Some(&z) = g.neighbors(b1).iter().find(|&&z| in_h[z] && z != path[0]) {
            path.push(z);
            return true;
        }
    } else {
        for &c in g.neighbors(b1) {
            if !on[c] && !in_h[c] && ear_dfs(g, m, in_h, c, depth - 1, on, path) {
                return true;
            }
        }
    }
    path.pop();
    path.pop();
    on[b] = false;
    on[b1] = false;
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchRoute {
    CentralPentagon,
    DiamondCycle,
}

#[derive(Clone, Debug)]
pub struct AdmissibleWitness {
    pub decomposition: EarDecomposition,
    pub matching: Matching,
    pub route: SearchRoute,
    /// Matched hexagon edges around the lowest degree-6 vertex, if any.
    pub hexagon_case: Option<usize>,
}

/// All induced fans `o; w1 - w2 - w3 - w4` as `[o, w1, w2, w3, w4]`.
pub fn pentagons(g: &Graph) -> Vec<[Vertex; 5]> {
    let mut out = Vec::new();
    for o in g.vertices() {
        let nb = g.neighbors(o);
        for &w1 in nb {
            for &w2 in nb {
                for &w3 in nb {
                    for &w4 in nb {
                        let w = [w1, w2, w3, w4];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| w[i] != w[j]));
                        if !distinct || w1 > w4 {
                            continue;
                        }
                        let path = g.has_edge(w1, w2) && g.has_edge(w2, w3) && g.has_edge(w3, w4);
                        let extra = g.has_edge(w1, w3) || g.has_edge(w1, w4) || g.has_edge(w2, w4);
                        if path && !extra {
                            out.push([o, w1, w2, w3, w4]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Diamonds as `[a, b, c, d]` in cyclic order with diagonal `(a, c)`.
pub fn diamonds(g: &Graph) -> Vec<[Vertex; 4]> {
    let mut out = Vec::new();
    for e in g.edges() {
        let (a, c) = (e.u(), e.v());
        let common: Vec<Vertex> = g.neighbors(a).iter().copied().filter(|&x| g.has_edge(x, c)).collect();
        for (i, &b) in common.iter().enumerate() {
            for &d in &common[i + 1..] {
                if !g.has_edge(b, d) {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

pub fn find_admissible(g: &Graph) -> Result<AdmissibleWitness> {
    let n = g.vertex_count();
    let hexagon_case = g.vertices().find(|&v| g.degree(v) == 6).and_then(|o| {
        let m = matching::near_perfect_matching(g, o).ok().flatten()?;
        let ring = g.neighbors(o);
        Some(
            m.edges()
                .iter()
                .filter(|e| ring.contains(&e.u()) && ring.contains(&e.v()))
                .count(),
        )
    });
    for f in pentagons(g) {
        let [o, w1, w2, w3, w4] = f;
        let Some(mut m) = matching::perfect_matching_avoiding(g, &f) else { continue };
        m.insert(Edge::new(w1, w2));
        m.insert(Edge::new(w3, w4));
        let partial = EarDecomposition {
            base_cycle: vec![o, w1, w2, w3, w4],
            ears: vec![Ear::new(vec![o, w2]), Ear::new(vec![o, w3])],
            kind: AdmissibleKind::Pentagon,
        };
        debug!("central pentagon at apex {}", o + 1);
        let decomposition = extend_from_central(g, &m, &partial)?;
        return Ok(AdmissibleWitness { decomposition, matching: m, route: SearchRoute::CentralPentagon, hexagon_case });
    }
    let mut best: Option<(usize, EarDecomposition, Matching)> = None;
    for q in diamonds(g) {
        for i in 0..4 {
            let (u, x, y, v) = (q[i], q[(i + 3) % 4], q[(i + 2) % 4], q[(i + 1) % 4]);
            let rest: Vec<Vertex> = g.vertices().filter(|&z| z != x && z != y).collect();
            let sub = g.induced(&rest);
            let (lu, lv) = (sub.local(u).unwrap(), sub.local(v).unwrap());
            let Some(nu) = matching::near_perfect_matching(&sub.graph, lu)? else { continue };
            let Some(path) = matching::shortest_alternating_path(&sub.graph, &nu, lu, lv) else { continue };
            if best.as_ref().is_some_and(|(len, _, _)| *len <= path.len()) {
                continue;
            }
            let base: Vec<Vertex> = path.iter().map(|&z| sub.to_global(z)).collect();
            let mut m = Matching::empty(n);
            for e in nu.edges() {
                m.insert(e.map(|z| sub.to_global(z)));
            }
            m.insert(Edge::new(x, y));
            let partial = EarDecomposition {
                base_cycle: base,
                ears: vec![Ear::new(vec![u, x, y, v]), Ear::new(vec![q[0], q[2]])],
                kind: AdmissibleKind::DiamondCycle,
            };
            best = Some((path.len(), partial, m));
        }
    }
    let (_, partial, m) = best.ok_or_else(|| Error::NotFound("no admissible ear decomposition".into()))?;
    debug!("diamond core with base cycle of length {}", partial.base_cycle.len());
    let decomposition = extend_from_central(g, &m, &partial)?;
    Ok(AdmissibleWitness { decomposition, matching: m, route: SearchRoute::DiamondCycle, hexagon_case })
}

/// The pieces of `p` inside `sub`, in local ids.
pub(crate) fn local_matching(p: &Placement, sub: &SubGraph) -> Result<Matching> {
    let mut local = Matching::empty(sub.order());
    for (i, &x) in sub.global.iter().enumerate() {
        if x == p.exposed() {
            continue;
        }
        let e = p.piece(p.owner(x).unwrap());
        if !sub.contains_edge(e) {
            return Err(Error::NotAligned(format!("piece on {e} leaves the subgraph")));
        }
        let j = sub.local(e.other(x)).unwrap();
        if i < j {
            local.insert(Edge::new(i, j));
        }
    }
    Ok(local)
}

/// Even alternating path inside `sub` from the exposed vertex to `v`, in global ids.
pub(crate) fn path_within(p: &Placement, sub: &SubGraph, v: Vertex) -> Result<Vec<Vertex>> {
    let local = local_matching(p, sub)?;
    let from = sub
        .local(p.exposed())
        .ok_or_else(|| Error::NotAligned("exposed vertex outside the subgraph".into()))?;
    let to = sub.local(v).ok_or(Error::VertexOutOfRange(v))?;
    let path = matching::alternating_path_to(&sub.graph, &local, from, to)?;
    Ok(path.iter().map(|&z| sub.to_global(z)).collect())
}

/// Makes `v` the exposed vertex using only moves inside `sub`.
pub(crate) fn expose_within(run: &mut Run, sub: &SubGraph, v: Vertex) -> Result<()> {
    if run.state.exposed() == v {
        return Ok(());
    }
    let path = path_within(&run.state, sub, v)?;
    let moves = path_moves(&run.state, &path);
    run.apply_all(moves)
}

/// Aligns by exposing an endpoint of each ear, last ear first.
pub(crate) fn align_run(run: &mut Run, d: &EarDecomposition) -> Result<()> {
    let n = run.g.vertex_count();
    for i in (1..d.stage_count()).rev() {
        let stage = d.stage(n, i + 1);
        expose_within(run, &stage, d.ears[i - 1].path[0])?;
    }
    if !is_aligned(&run.state, d) {
        return Err(Error::Internal("alignment postcondition failed".into()));
    }
    Ok(())
}

pub fn align_with_ears(g: &Graph, p: &Placement, d: &EarDecomposition) -> Result<SlideSequence> {
    d.validate(g, true)?;
    let mut run = Run::new(g, p.clone());
    align_run(&mut run, d)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};

    fn cycle_graph(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn odd_cycle_has_no_ears() {
        let g = cycle_graph(9);
        let m = matching::near_perfect_matching(&g, 4).unwrap().unwrap();
        let d = ear_decomposition(&g, &m).unwrap();
        assert_eq!(d.base_cycle.len(), 9);
        assert!(d.ears.is_empty());
    }

    #[test]
    fn pentagon_decomposes_with_two_chords() {
        let g = generate(&Instance::Pentagon).unwrap();
        let w = find_admissible(&g).unwrap();
        assert_eq!(w.route, SearchRoute::CentralPentagon);
        let d = &w.decomposition;
        assert_eq!(d.base_cycle.len(), 5);
        assert_eq!(d.ears.iter().map(Ear::len).collect::<Vec<_>>(), vec![1, 1]);
        d.validate(&g, true).unwrap();
    }

    #[test]
    fn diamond_cycle_core() {
        let g = generate(&Instance::DiamondCycle { n: 3 }).unwrap();
        let w = find_admissible(&g).unwrap();
        assert_eq!(w.route, SearchRoute::DiamondCycle);
        assert_eq!(w.decomposition.kind, AdmissibleKind::DiamondCycle);
        assert_eq!(w.decomposition.base_cycle.len(), 5);
        w.decomposition.validate(&g, true).unwrap();
    }

    #[test]
    fn hexagon_pentagon_core() {
        let g = generate(&Instance::Hexagon).unwrap();
        let w = find_admissible(&g).unwrap();
        assert_eq!(w.decomposition.kind, AdmissibleKind::Pentagon);
        assert!(w.hexagon_case.is_some());
        let placement = Placement::from_matching(&g, &w.matching).unwrap();
        assert!(is_aligned(&placement, &w.decomposition));
    }

    #[test]
    fn extend_identity() {
        let g = cycle_graph(5);
        let d = EarDecomposition { base_cycle: vec![0, 1, 2, 3, 4], ears: vec![], kind: AdmissibleKind::None };
        let m = matching::near_perfect_matching(&g, 0).unwrap().unwrap();
        assert_eq!(extend_from_central(&g, &m, &d).unwrap(), d);
    }

    #[test]
    fn pentagon_alignment_is_exhaustive() {
        let g = generate(&Instance::Pentagon).unwrap();
        let d = find_admissible(&g).unwrap().decomposition;
        for m in matching::near_perfect_matchings(&g) {
            let p = Placement::from_matching(&g, &m).unwrap();
            let seq = align_with_ears(&g, &p, &d).unwrap();
            assert!(seq.len() <= 4);
            assert!(is_aligned(&seq.end(&g).unwrap(), &d));
        }
    }
}
