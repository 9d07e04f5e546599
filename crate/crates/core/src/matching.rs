//! Matchings: blossom search, exposing matchings, alternating paths and cycles.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<Vertex>>,
}

impl Matching {
    pub fn empty(n: usize) -> Matching {
        Matching { mate: vec![None; n] }
    }

    pub fn from_edges(g: &Graph, edges: &[Edge]) -> Result<Matching> {
        let mut m = Matching::empty(g.vertex_count());
        for &e in edges {
            if !g.contains_edge(e) {
                return Err(Error::InvalidEdge(e.u(), e.v()));
            }
            if m.mate[e.u()].is_some() || m.mate[e.v()].is_some() {
                return Err(Error::InvalidMatching(format!("edges share an endpoint at {e}")));
            }
            m.mate[e.u()] = Some(e.v());
            m.mate[e.v()] = Some(e.u());
        }
        Ok(m)
    }

    fn from_raw(raw: &[usize]) -> Matching {
        Matching { mate: raw.iter().map(|&x| (x != NONE).then_some(x)).collect() }
    }

    pub fn mate(&self, v: Vertex) -> Option<Vertex> {
        self.mate[v]
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.mate[e.u()] == Some(e.v())
    }

    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| Edge::new(v, w)))
            .collect()
    }

    pub fn exposed(&self) -> Vec<Vertex> {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none()).collect()
    }

    /// The unique exposed vertex of a nearly perfect matching.
    pub fn exposed_vertex(&self) -> Option<Vertex> {
        let e = self.exposed();
        (e.len() == 1).then(|| e[0])
    }

    pub fn symmetric_difference(&self, other: &Matching) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.edges().into_iter().filter(|e| !other.contains(*e)).collect();
        out.extend(other.edges().into_iter().filter(|e| !self.contains(*e)));
        out.sort();
        out
    }

    pub fn remove(&mut self, e: Edge) {
        if self.contains(e) {
            self.mate[e.u()] = None;
            self.mate[e.v()] = None;
        }
    }

    pub fn insert(&mut self, e: Edge) {
        debug_assert!(self.mate[e.u()].is_none() && self.mate[e.v()].is_none());
        self.mate[e.u()] = Some(e.v());
        self.mate[e.v()] = Some(e.u());
    }
}

/// Edmonds' augmenting search with blossom contraction over active vertices.
struct Blossom<'a> {
    g: &'a Graph,
    active: Vec<bool>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(g: &'a Graph, active: Vec<bool>, mate: Vec<usize>) -> Self {
        let n = g.vertex_count();
        Blossom {
            g,
            active,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// Searches an augmenting path from the exposed `root`; returns its far end.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if !self.active[to] || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.active[i] && self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }

    fn maximize(&mut self) {
        for v in 0..self.g.vertex_count() {
            if self.active[v] && self.mate[v] == NONE {
                if let Some(end) = self.search(v) {
                    self.augment(end);
                }
            }
        }
    }
}

fn raw_mate(m: &Matching) -> Vec<usize> {
    m.mate.iter().map(|x| x.unwrap_or(NONE)).collect()
}

/// Maximum matching on the vertices flagged active, grown from `start`.
pub fn maximum_matching_within(g: &Graph, active: &[bool], start: Option<&Matching>) -> Matching {
    let mate = start.map(raw_mate).unwrap_or_else(|| vec![NONE; g.vertex_count()]);
    let mut b = Blossom::new(g, active.to_vec(), mate);
    b.maximize();
    Matching::from_raw(&b.mate)
}

pub fn maximum_matching(g: &Graph) -> Matching {
    maximum_matching_within(g, &vec![true; g.vertex_count()], None)
}

/// A matching of size (|V|-1)/2 leaving exactly `expose` uncovered.
pub fn near_perfect_matching(g: &Graph, expose: Vertex) -> Result<Option<Matching>> {
    g.check_vertex(expose)?;
    let n = g.vertex_count();
    if n % 2 == 0 {
        return Ok(None);
    }
    let mut active = vec![true; n];
    active[expose] = false;
    let m = maximum_matching_within(g, &active, None);
    Ok((m.len() == n / 2).then_some(m))
}

pub fn is_factor_critical(g: &Graph) -> bool {
    g.vertex_count() % 2 == 1
        && g.vertices().all(|v| matches!(near_perfect_matching(g, v), Ok(Some(_))))
}

/// Perfect matching of `g` minus `removed`, if one exists.
pub fn perfect_matching_avoiding(g: &Graph, removed: &[Vertex]) -> Option<Matching> {
    let n = g.vertex_count();
    let mut active = vec![true; n];
    for &r in removed {
        active[r] = false;
    }
    let remaining = active.iter().filter(|&&a| a).count();
    if remaining % 2 == 1 {
        return None;
    }
    let m = maximum_matching_within(g, &active, None);
    (2 * m.len() == remaining).then_some(m)
}

pub fn is_central(g: &Graph, sub: &[Vertex]) -> bool {
    perfect_matching_avoiding(g, sub).is_some()
}

/// Even alternating path from the exposed vertex `from` to `to`.
///
/// The path is the symmetric difference of `m` with a matching exposing `to`.
pub fn alternating_path_to(g: &Graph, m: &Matching, from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
    g.check_vertex(from)?;
    g.check_vertex(to)?;
    if m.mate(from).is_some() {
        return Err(Error::InvalidMatching(format!("vertex {} is not exposed", from + 1)));
    }
    if from == to {
        return Ok(vec![from]);
    }
    let w = m.mate(to).ok_or(Error::NoExposingMatching(to))?;
    let mut reduced = m.clone();
    reduced.remove(Edge::new(to, w));
    let mut active = vec![true; g.vertex_count()];
    active[to] = false;
    let mut b = Blossom::new(g, active, raw_mate(&reduced));
    let end = b.search(w).ok_or(Error::NoExposingMatching(to))?;
    b.augment(end);
    let mv = Matching::from_raw(&b.mate);
    let diff = m.symmetric_difference(&mv);
    // walk the path component of the difference starting at `from`
    let mut path = vec![from];
    let mut prev = NONE;
    let mut cur = from;
    while cur != to {
        let next = diff
            .iter()
            .filter(|e| e.contains(cur))
            .map(|e| e.other(cur))
            .find(|&x| x != prev)
            .ok_or_else(|| Error::Internal("broken alternating path".into()))?;
        prev = cur;
        cur = next;
        path.push(cur);
    }
    Ok(path)
}

/// Odd cycle through `e = (u, exposed)` alternating with respect to `m`.
///
/// The cycle starts at the exposed vertex and ends at `u`. With `minimize`
/// the shortest such cycle is returned.
pub fn odd_alternating_cycle_through(g: &Graph, m: &Matching, e: Edge, minimize: bool) -> Result<Vec<Vertex>> {
    if !g.contains_edge(e) {
        return Err(Error::InvalidEdge(e.u(), e.v()));
    }
    let x = match (m.mate(e.u()), m.mate(e.v())) {
        (None, Some(_)) => e.u(),
        (Some(_), None) => e.v(),
        _ => return Err(Error::InvalidMatching("edge must touch the exposed vertex".into())),
    };
    let u = e.other(x);
    if !minimize {
        return alternating_path_to(g, m, x, u)
            .map_err(|_| Error::NotFound(format!("odd alternating cycle through {e}")));
    }
    shortest_alternating_path(g, m, x, u).ok_or_else(|| Error::NotFound(format!("odd alternating cycle through {e}")))
}

/// Shortest simple even alternating path from exposed `x` to `u`.
pub fn shortest_alternating_path(g: &Graph, m: &Matching, x: Vertex, u: Vertex) -> Option<Vec<Vertex>> {
    let n = g.vertex_count();
    if x == u {
        return Some(vec![x]);
    }
    // relaxed distance over "even" vertices, ignoring simplicity
    let mut dist = vec![usize::MAX; n];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(w) = queue.pop_front() {
        let Some(b) = m.mate(w) else { continue };
        for &a in g.neighbors(b) {
            if a != w && dist[a] == usize::MAX {
                dist[a] = dist[w] + 1;
                queue.push_back(a);
            }
        }
    }
    if dist[x] == usize::MAX {
        return None;
    }
    let mut on_path = vec![false; n];
    let mut path = vec![x];
    on_path[x] = true;
    for limit in dist[x]..=n / 2 {
        if alt_dfs(g, m, u, limit, &dist, &mut on_path, &mut path) {
            return Some(path);
        }
    }
    None
}

fn alt_dfs(
    g: &Graph,
    m: &Matching,
    target: Vertex,
    budget: usize,
    dist: &[usize],
    on_path: &mut [bool],
    path: &mut Vec<Vertex>,
) -> bool {
    let a = *path.last().unwrap();
    if a == target {
        return true;
    }
    if budget == 0 || dist[a] > budget {
        return false;
    }
    for &b in g.neighbors(a) {
        if on_path[b] || Some(b) == m.mate(a) {
            continue;
        }
        let Some(c) = m.mate(b) else { continue };
        if on_path[c] || dist[c] == usize::MAX || dist[c] + 1 > budget {
            continue;
        }
        on_path[b] = true;
        on_path[c] = true;
        path.push(b);
        path.push(c);
        if alt_dfs(g, m, target, budget - 1, dist, on_path, path) {
            return true;
        }
        path.pop();
        path.pop();
        on_path[b] = false;
        on_path[c] = false;
    }
    false
}

/// Every matching with exactly one exposed vertex (exhaustive).
pub fn near_perfect_matchings(g: &Graph) -> Vec<Matching> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n % 2 == 0 {
        return out;
    }
    let mut mate = vec![NONE; n];
    enumerate(g, &mut mate, 0, true, &mut out);
    out
}

fn enumerate(g: &Graph, mate: &mut Vec<usize>, from: usize, may_skip: bool, out: &mut Vec<Matching>) {
    let n = g.vertex_count();
    let Some(v) = (from..n).find(|&v| mate[v] == NONE) else {
        if !may_skip {
            // the skipped vertex is marked as its own mate
            let raw: Vec<usize> = mate.iter().enumerate().map(|(i, &m)| if m == i { NONE } else { m }).collect();
            out.push(Matching::from_raw(&raw));
        }
        return;
    };
    if may_skip {
        mate[v] = v;
        enumerate(g, mate, v + 1, false, out);
        mate[v] = NONE;
    }
    for &w in g.neighbors(v) {
        if w > v && mate[w] == NONE {
            mate[v] = w;
            mate[w] = v;
            enumerate(g, mate, v + 1, may_skip, out);
            mate[v] = NONE;
            mate[w] = NONE;
        }
    }
}

/// Size of a maximum matching by exhaustive search (small graphs only).
pub fn maximum_matching_size_exhaustive(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut Vec<bool>, from: usize) -> usize {
        let n = g.vertex_count();
        let Some(v) = (from..n).find(|&v| !used[v]) else { return 0 };
        used[v] = true;
        let mut best = go(g, used, v + 1);
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                best = best.max(1 + go(g, used, v + 1));
                used[w] = false;
            }
        }
        used[v] = false;
        best
    }
    go(g, &mut vec![false; g.vertex_count()], 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn triangle_exposing_third_vertex() {
        let g = generate(&Instance::Triangle).unwrap();
        let m = near_perfect_matching(&g, 2).unwrap().unwrap();
        assert_eq!(m.edges(), vec![Edge::new(0, 1)]);
    }

    #[test]
    fn pentagon_every_vertex_exposable() {
        let g = generate(&Instance::Pentagon).unwrap();
        for v in g.vertices() {
            let m = near_perfect_matching(&g, v).unwrap().unwrap();
            assert_eq!(m.len(), 2);
            assert_eq!(m.exposed(), vec![v]);
        }
        assert!(is_factor_critical(&g));
    }

    #[test]
    fn pentagon_alternating_path() {
        let g = generate(&Instance::Pentagon).unwrap();
        let m = Matching::from_edges(&g, &[Edge::new(1, 2), Edge::new(3, 4)]).unwrap();
        assert_eq!(alternating_path_to(&g, &m, 0, 2).unwrap(), vec![0, 1, 2]);
        assert_eq!(alternating_path_to(&g, &m, 0, 0).unwrap(), vec![0]);
    }

    #[test]
    fn odd_cycles_are_factor_critical() {
        for n in [3, 5, 7, 9] {
            assert!(is_factor_critical(&cycle(n)));
        }
        assert!(!is_factor_critical(&cycle(6)));
    }

    #[test]
    fn star_of_david_not_factor_critical() {
        let g = generate(&Instance::StarOfDavid).unwrap();
        assert!(!is_factor_critical(&g));
        let missing = g
            .vertices()
            .filter(|&v| near_perfect_matching(&g, v).unwrap().is_none())
            .count();
        assert!(missing > 0);
    }

    #[test]
    fn whole_cycle_is_the_odd_cycle() {
        let g = cycle(7);
        let m = near_perfect_matching(&g, 0).unwrap().unwrap();
        for minimize in [false, true] {
            let c = odd_alternating_cycle_through(&g, &m, Edge::new(0, 1), minimize).unwrap();
            assert_eq!(c.len(), 7);
            assert_eq!((c[0], c[6]), (0, 1));
        }
    }

    #[test]
    fn centrality_parity() {
        let g = generate(&Instance::Pentagon).unwrap();
        assert!(is_central(&g, &[0, 1, 2, 3, 4]));
        assert!(!is_central(&g, &[0, 1]));
    }

    #[test]
    fn enumeration_counts_odd_cycle() {
        // a (2k+1)-cycle has exactly 2k+1 nearly perfect matchings
        assert_eq!(near_perfect_matchings(&cycle(7)).len(), 7);
        let g = generate(&Instance::Pentagon).unwrap();
        let all = near_perfect_matchings(&g);
        assert!(all.iter().all(|m| m.len() == 2 && m.exposed().len() == 1));
    }
}
