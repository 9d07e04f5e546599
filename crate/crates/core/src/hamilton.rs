//! Hamilton cycles, the dual forests they induce, and parity diamonds.

use std::fmt;

use log::debug;

use crate::ears::{self, AdmissibleKind, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::grid::TriGridGraph;

/// Default cap on search nodes for the backtracking search.
pub const DEFAULT_NODE_BUDGET: usize = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonCycle {
    order: Vec<Vertex>,
    pos: Vec<usize>,
}

impl HamiltonCycle {
    /// Checks that `order` visits every vertex once along edges of `g`.
    pub fn new(g: &Graph, order: Vec<Vertex>) -> Result<HamiltonCycle> {
        let n = g.vertex_count();
        if order.len() != n {
            return Err(Error::InvalidParams(format!("cycle has {} vertices, graph has {n}", order.len())));
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            g.check_vertex(v)?;
            if pos[v] != usize::MAX {
                return Err(Error::InvalidParams(format!("vertex {} repeated", v + 1)));
            }
            pos[v] = i;
        }
        for i in 0..n {
            let (a, b) = (order[i], order[(i + 1) % n]);
            if !g.has_edge(a, b) {
                return Err(Error::InvalidEdge(a, b));
            }
        }
        Ok(HamiltonCycle { order, pos })
    }

    pub fn order(&self) -> &[Vertex] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, v: Vertex) -> usize {
        self.pos[v]
    }

    pub fn next(&self, v: Vertex) -> Vertex {
        self.order[(self.pos[v] + 1) % self.len()]
    }

    pub fn prev(&self, v: Vertex) -> Vertex {
        self.order[(self.pos[v] + self.len() - 1) % self.len()]
    }

    pub fn contains_edge(&self, a: Vertex, b: Vertex) -> bool {
        a != b && (self.next(a) == b || self.prev(a) == b)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.len();
        let mut out: Vec<Edge> = (0..n).map(|i| Edge::new(self.order[i], self.order[(i + 1) % n])).collect();
        out.sort();
        out
    }

    /// The arc from `from` to `to` that does not pass through `avoid`.
    pub fn arc_avoiding(&self, from: Vertex, to: Vertex, avoid: Vertex) -> Option<Vec<Vertex>> {
        for step in [1, self.len() - 1] {
            let mut out = vec![from];
            let mut i = self.pos[from];
            while self.order[i] != to {
                i = (i + step) % self.len();
                out.push(self.order[i]);
            }
            if !out.contains(&avoid) {
                return Some(out);
            }
        }
        None
    }

    /// The cycle as an ear decomposition whose remaining edges are chords.
    pub fn to_decomposition(&self, g: &Graph) -> EarDecomposition {
        let ears = g
            .edges()
            .iter()
            .filter(|e| !self.contains_edge(e.u(), e.v()))
            .map(|e| Ear::new(vec![e.u(), e.v()]))
            .collect();
        EarDecomposition { base_cycle: self.order.clone(), ears, kind: AdmissibleKind::None }
    }

    fn reoriented(g: &TriGridGraph, mut order: Vec<Vertex>) -> Result<HamiltonCycle> {
        let start = (0..order.len()).min_by_key(|&i| order[i]).unwrap();
        order.rotate_left(start);
        if g.is_lattice() && signed_area(g, &order)? < 0.0 {
            order[1..].reverse();
        }
        HamiltonCycle::new(g, order)
    }
}

impl fmt::Display for HamiltonCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("h")?;
        for v in &self.order {
            write!(f, " {}", v + 1)?;
        }
        Ok(())
    }
}

fn signed_area(g: &TriGridGraph, order: &[Vertex]) -> Result<f64> {
    let mut s = 0.0;
    for i in 0..order.len() {
        let (x1, y1) = g.cartesian(order[i])?;
        let (x2, y2) = g.cartesian(order[(i + 1) % order.len()])?;
        s += x1 * y2 - x2 * y1;
    }
    Ok(s / 2.0)
}

struct Search<'a, F: FnMut(&[Vertex]) -> bool> {
    g: &'a Graph,
    on: Vec<bool>,
    path: Vec<Vertex>,
    nodes: usize,
    budget: usize,
    visit: F,
}

impl<F: FnMut(&[Vertex]) -> bool> Search<'_, F> {
    fn dead_end(&self) -> bool {
        let g = self.g;
        let (start, cur) = (self.path[0], *self.path.last().unwrap());
        g.vertices().filter(|&w| !self.on[w]).any(|w| {
            let free = g.neighbors(w).iter().filter(|&&x| !self.on[x] || x == start || x == cur).count();
            free < 2
        })
    }

    /// Returns `Ok(true)` once the visitor asks to stop.
    fn extend(&mut self) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(self.budget));
        }
        let g = self.g;
        let cur = *self.path.last().unwrap();
        if self.path.len() == g.vertex_count() {
            // each cycle once: second vertex below the last
            if g.has_edge(cur, self.path[0]) && self.path[1] < cur {
                return Ok((self.visit)(&self.path));
            }
            return Ok(false);
        }
        if self.dead_end() {
            return Ok(false);
        }
        let mut next: Vec<Vertex> = g.neighbors(cur).iter().copied().filter(|&x| !self.on[x]).collect();
        next.sort_by_key(|&x| (g.degree(x), x));
        for x in next {
            self.on[x] = true;
            self.path.push(x);
            let stop = self.extend()?;
            self.path.pop();
            self.on[x] = false;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Calls `visit` on every Hamilton cycle (once per cycle) until it returns true.
pub fn for_each_hamilton_cycle(g: &Graph, budget: usize, visit: impl FnMut(&[Vertex]) -> bool) -> Result<()> {
    if g.vertex_count() < 3 {
        return Ok(());
    }
    let mut s = Search { g, on: vec![false; g.vertex_count()], path: vec![0], nodes: 0, budget, visit };
    s.on[0] = true;
    s.extend()?;
    Ok(())
}

/// A Hamilton cycle by exact search, anticlockwise from the lowest id.
pub fn find_hamilton(g: &TriGridGraph) -> Result<HamiltonCycle> {
    if g.is_star_of_david() {
        return Err(Error::Precondition("the hexagram graph is excluded".into()));
    }
    let mut found = None;
    for_each_hamilton_cycle(g, DEFAULT_NODE_BUDGET, |c| {
        found = Some(c.to_vec());
        true
    })?;
    let order = found.ok_or_else(|| Error::NotFound("graph has no Hamilton cycle".into()))?;
    HamiltonCycle::reoriented(g, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Triangles between the cycle and the outer face.
    Outer,
    Inner,
}

/// Triangle faces split by a Hamilton cycle, with dual adjacencies per side.
#[derive(Clone, Debug)]
pub struct DualForests {
    pub triangles: Vec<[Vertex; 3]>,
    pub side: Vec<Side>,
    pub outer_edges: Vec<(usize, usize)>,
    pub inner_edges: Vec<(usize, usize)>,
    /// Inner edges of the graph that the cycle uses.
    pub cut_edges: Vec<Edge>,
}

impl DualForests {
    fn edges_of(&self, side: Side) -> &[(usize, usize)] {
        match side {
            Side::Outer => &self.outer_edges,
            Side::Inner => &self.inner_edges,
        }
    }

    fn adjacency(&self, side: Side) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.triangles.len()];
        for &(s, t) in self.edges_of(side) {
            adj[s].push(t);
            adj[t].push(s);
        }
        adj
    }

    /// Components of one side, as triangle indices.
    pub fn components(&self, side: Side) -> Vec<Vec<usize>> {
        let adj = self.adjacency(side);
        let mut seen = vec![false; self.triangles.len()];
        let mut out = Vec::new();
        for s in 0..self.triangles.len() {
            if seen[s] || self.side[s] != side {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                for &t in &adj[comp[i]] {
                    if !seen[t] {
                        seen[t] = true;
                        comp.push(t);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self, side: Side) -> bool {
        let vertices = self.side.iter().filter(|&&s| s == side).count();
        self.edges_of(side).len() + self.components(side).len() == vertices
    }

    pub fn max_degree(&self, side: Side) -> usize {
        self.adjacency(side).iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn largest_component(&self) -> usize {
        [Side::Outer, Side::Inner]
            .iter()
            .flat_map(|&s| self.components(s))
            .map(|c| c.len())
            .max()
            .unwrap_or(0)
    }
}

fn inside_polygon(poly: &[(f64, f64)], (px, py): (f64, f64)) -> bool {
    let mut inside = false;
    let k = poly.len();
    for i in 0..k {
        let (x1, y1) = poly[i];
        let (x2, y2) = poly[(i + 1) % k];
        if (y1 > py) != (y2 > py) && px < x1 + (py - y1) * (x2 - x1) / (y2 - y1) {
            inside = !inside;
        }
    }
    inside
}

pub fn dual_forests(g: &TriGridGraph, h: &HamiltonCycle) -> Result<DualForests> {
    HamiltonCycle::new(g, h.order().to_vec())?;
    let triangles = g.triangles()?.to_vec();
    let poly: Vec<(f64, f64)> = h.order().iter().map(|&v| g.cartesian(v)).collect::<Result<_>>()?;
    let mut side = Vec::with_capacity(triangles.len());
    for t in &triangles {
        let pts: Vec<(f64, f64)> = t.iter().map(|&v| g.cartesian(v)).collect::<Result<_>>()?;
        let centroid = ((pts[0].0 + pts[1].0 + pts[2].0) / 3.0, (pts[0].1 + pts[1].1 + pts[2].1) / 3.0);
        side.push(if inside_polygon(&poly, centroid) { Side::Inner } else { Side::Outer });
    }
    let mut outer_edges = Vec::new();
    let mut inner_edges = Vec::new();
    let mut cut_edges = Vec::new();
    for &e in g.inner_edges()? {
        let shared: Vec<usize> = (0..triangles.len())
            .filter(|&i| triangles[i].contains(&e.u()) && triangles[i].contains(&e.v()))
            .collect();
        if shared.len() != 2 {
            return Err(Error::Internal(format!("inner edge {e} borders {} triangles", shared.len())));
        }
        let (s, t) = (shared[0], shared[1]);
        if h.contains_edge(e.u(), e.v()) {
            cut_edges.push(e);
            continue;
        }
        if side[s] != side[t] {
            return Err(Error::Internal(format!("edge {e} off the cycle separates its triangles")));
        }
        match side[s] {
            Side::Outer => outer_edges.push((s, t)),
            Side::Inner => inner_edges.push((s, t)),
        }
    }
    Ok(DualForests { triangles, side, outer_edges, inner_edges, cut_edges })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondCase {
    /// The cycle uses `(a, b)` and `(c, d)` but not the diagonal `(a, c)`.
    I,
    /// The cycle uses `(a, b)` and `(b, c)`.
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalRoute {
    /// A diamond on the first cycle found.
    Direct,
    /// A diamond after moving one vertex of the cycle next to a triangle edge.
    Exchanged,
    /// A diamond on a later cycle of the exhaustive search.
    Researched,
}

/// Diamond `a, b, c, d` with diagonal `(a, c)` and the two cycle arcs used for swapping.
#[derive(Clone, Debug)]
pub struct ParityDiamond {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub d: Vertex,
    pub cycle: HamiltonCycle,
    pub case: DiamondCase,
    /// Even arc from `d` to `a` avoiding `b`.
    pub p1: Vec<Vertex>,
    /// Odd arc from `b` to `c` avoiding `a`.
    pub p2: Vec<Vertex>,
    pub route: LocalRoute,
}

impl ParityDiamond {
    pub fn vertices(&self) -> [Vertex; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Rechecks every structural condition against `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let [a, b, c, d] = self.vertices();
        let h = &self.cycle;
        let diamond = g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a) && g.has_edge(a, c);
        let case = diamond_case(h, [a, b, c, d]).is_some();
        let p1 = self.p1.len() >= 3 && self.p1[0] == d && *self.p1.last().unwrap() == a && (self.p1.len() - 1) % 2 == 0;
        let p2 = self.p2.len() >= 2 && self.p2[0] == b && *self.p2.last().unwrap() == c && (self.p2.len() - 1) % 2 == 1;
        let arcs = h.arc_avoiding(d, a, b).as_ref() == Some(&self.p1) && h.arc_avoiding(b, c, a).as_ref() == Some(&self.p2);
        diamond && case && p1 && p2 && arcs && h.contains_edge(a, b) && !h.contains_edge(a, c)
    }
}

/// Which condition, if any, `q = [a, b, c, d]` meets on `h`.
pub fn diamond_case(h: &HamiltonCycle, q: [Vertex; 4]) -> Option<DiamondCase> {
    let [a, b, c, d] = q;
    if h.contains_edge(a, b) && h.contains_edge(c, d) && !h.contains_edge(a, c) {
        Some(DiamondCase::I)
    } else if h.contains_edge(a, b) && h.contains_edge(b, c) {
        Some(DiamondCase::II)
    } else {
        None
    }
}

/// Relabels a diamond meeting condition (i) or (ii) so the arc parities line up.
pub fn select_parity(h: &HamiltonCycle, q: [Vertex; 4]) -> Result<ParityDiamond> {
    let case = diamond_case(h, q).ok_or_else(|| Error::Precondition("diamond meets neither condition".into()))?;
    let [a, b, c, d] = q;
    let candidates = match case {
        DiamondCase::I => [[a, b, c, d], [c, d, a, b]],
        DiamondCase::II => [[a, b, c, d], [c, b, a, d]],
    };
    for [a, b, c, d] in candidates {
        if !h.contains_edge(a, b) || h.contains_edge(a, c) {
            continue;
        }
        let (Some(p1), Some(p2)) = (h.arc_avoiding(d, a, b), h.arc_avoiding(b, c, a)) else { continue };
        if (p1.len() - 1) % 2 == 0 && (p2.len() - 1) % 2 == 1 {
            return Ok(ParityDiamond { a, b, c, d, cycle: h.clone(), case, p1, p2, route: LocalRoute::Direct });
        }
    }
    Err(Error::Internal("no orientation of the diamond has the required parities".into()))
}

fn labelings(g: &Graph) -> Vec<[Vertex; 4]> {
    ears::diamonds(g)
        .into_iter()
        .flat_map(|[a, b, c, d]| [[a, b, c, d], [a, d, c, b], [c, b, a, d], [c, d, a, b]])
        .collect()
}

/// Best diamond on `h`: shortest `p2`, then smallest ids.
fn best_on(g: &Graph, h: &HamiltonCycle) -> Option<ParityDiamond> {
    labelings(g)
        .into_iter()
        .filter(|&q| diamond_case(h, q).is_some())
        .filter_map(|q| select_parity(h, q).ok())
        .min_by_key(|pd| (pd.p2.len(), pd.vertices()))
}

/// Cycles obtained by moving one vertex `a` between two adjacent cycle neighbours `b, c`.
fn exchanges(g: &Graph, h: &HamiltonCycle) -> Vec<HamiltonCycle> {
    let mut out = Vec::new();
    for a in g.vertices() {
        let (f, gg) = (h.prev(a), h.next(a));
        if !g.has_edge(f, gg) {
            continue;
        }
        let rest: Vec<Vertex> = h.order().iter().copied().filter(|&x| x != a).collect();
        let k = rest.len();
        for i in 0..k {
            let (b, c) = (rest[i], rest[(i + 1) % k]);
            if (b, c) == (f, gg) || !g.has_edge(a, b) || !g.has_edge(a, c) {
                continue;
            }
            let mut order = rest.clone();
            order.insert(i + 1, a);
            if let Ok(cyc) = HamiltonCycle::new(g, order) {
                out.push(cyc);
            }
        }
    }
    out
}

/// A Hamilton cycle and a diamond meeting condition (i) or (ii), parities selected.
pub fn find_local_structure(g: &TriGridGraph, h: &HamiltonCycle) -> Result<ParityDiamond> {
    if g.vertex_count() < 5 {
        return Err(Error::Precondition("local structure needs at least 5 vertices".into()));
    }
    if g.is_star_of_david() {
        return Err(Error::Precondition("the hexagram graph is excluded".into()));
    }
    HamiltonCycle::new(g, h.order().to_vec())?;
    if let Some(pd) = best_on(g, h) {
        return Ok(pd);
    }
    for h2 in exchanges(g, h) {
        if let Some(mut pd) = best_on(g, &h2) {
            debug!("diamond found after a cycle exchange");
            pd.cycle = HamiltonCycle::reoriented(g, pd.cycle.order().to_vec())?;
            pd.route = LocalRoute::Exchanged;
            return Ok(pd);
        }
    }
    let mut found = None;
    for_each_hamilton_cycle(g, DEFAULT_NODE_BUDGET, |c| {
        let Ok(h3) = HamiltonCycle::new(g, c.to_vec()) else { return false };
        found = best_on(g, &h3);
        found.is_some()
    })?;
    let mut pd = found.ok_or_else(|| Error::NotFound("no Hamilton cycle carries a suitable diamond".into()))?;
    debug!("diamond found on another Hamilton cycle");
    pd.cycle = HamiltonCycle::reoriented(g, pd.cycle.order().to_vec())?;
    pd.route = LocalRoute::Researched;
    Ok(pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, hexagon_patch, Instance, LatticePoint};

    #[test]
    fn triangle_cycle() {
        let g = generate(&Instance::Triangle).unwrap();
        let h = find_hamilton(&g).unwrap();
        assert_eq!(h.len(), 3);
        let f = dual_forests(&g, &h).unwrap();
        let sides: Vec<usize> = [Side::Outer, Side::Inner].iter().map(|&s| f.components(s).len()).collect();
        assert_eq!(sides, vec![0, 1]);
    }

    #[test]
    fn hexagon_cycle_is_anticlockwise() {
        let g = generate(&Instance::Hexagon).unwrap();
        let h = find_hamilton(&g).unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(h.order()[0], 0);
        assert!(signed_area(&g, h.order()).unwrap() > 0.0);
    }

    #[test]
    fn hexagram_is_refused() {
        let g = generate(&Instance::StarOfDavid).unwrap();
        assert!(matches!(find_hamilton(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn triangle_is_too_small_for_a_diamond() {
        let g = generate(&Instance::Triangle).unwrap();
        let h = find_hamilton(&g).unwrap();
        assert!(find_local_structure(&g, &h).is_err());
    }

    #[test]
    fn pentagon_structure() {
        let g = generate(&Instance::Pentagon).unwrap();
        let h = find_hamilton(&g).unwrap();
        let pd = find_local_structure(&g, &h).unwrap();
        assert!(pd.is_valid(&g));
        assert_eq!(pd.p1.len() - 1 + pd.p2.len() - 1 + 2, 5);
    }

    #[test]
    fn case_two_parity_uses_single_edge() {
        let g = generate(&Instance::Hexagon).unwrap();
        let h = find_hamilton(&g).unwrap();
        for q in labelings(&g) {
            if diamond_case(&h, q) == Some(DiamondCase::II) {
                let pd = select_parity(&h, q).unwrap();
                assert_eq!(pd.p2.len(), 2);
                assert!(pd.is_valid(&g));
            }
        }
    }

    #[test]
    fn exchanged_cycles_stay_hamiltonian() {
        let pts: Vec<LatticePoint> = hexagon_patch(2).into_iter().filter(|p| p.y != 0 || p.x.abs() != 2).collect();
        let g = crate::grid::build_graph(&pts).unwrap();
        let h = find_hamilton(&g).unwrap();
        for h2 in exchanges(&g, &h) {
            assert_eq!(h2.len(), g.vertex_count());
        }
    }
}
