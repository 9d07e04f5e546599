//! Plain undirected simple graphs with 0-based vertex ids.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        assert_ne!(a, b, "self loop");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(self) -> Vertex {
        self.0
    }

    pub fn v(self) -> Vertex {
        self.1
    }

    pub fn contains(self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`.
    pub fn other(self, x: Vertex) -> Vertex {
        debug_assert!(self.contains(x));
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }

    pub fn map(self, f: impl Fn(Vertex) -> Vertex) -> Edge {
        Edge::new(f(self.0), f(self.1))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0 + 1, self.1 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Graph> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidEdge(a, b));
            }
            list.push(Edge::new(a, b));
        }
        list.sort();
        list.dedup();
        Ok(Self::from_sorted(n, list))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Graph {
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.0].push(e.1);
            adj[e.1].push(e.0);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Graph { adj, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        a < self.adj.len() && self.adj[a].binary_search(&b).is_ok()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.0, e.1)
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        self.edges.binary_search(&e).ok()
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v))
        }
    }

    /// Number of connected components among vertices not flagged in `removed`.
    pub fn components_without(&self, removed: &[bool]) -> usize {
        let n = self.vertex_count();
        let mut seen = removed.to_vec();
        seen.resize(n, false);
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.components_without(&[]) <= 1
    }

    pub fn cut_vertices(&self) -> Vec<Vertex> {
        let n = self.vertex_count();
        let base = self.components_without(&[]);
        let mut removed = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            removed[v] = true;
            if self.components_without(&removed) > base {
                out.push(v);
            }
            removed[v] = false;
        }
        out
    }

    pub fn is_two_connected(&self) -> bool {
        self.vertex_count() >= 3 && self.is_connected() && self.cut_vertices().is_empty()
    }

    /// True iff every neighbourhood induces a connected subgraph.
    pub fn is_locally_connected(&self) -> bool {
        self.vertices().all(|v| {
            let nb = &self.adj[v];
            if nb.is_empty() {
                return true;
            }
            let mut seen = vec![false; nb.len()];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(i) = stack.pop() {
                for j in 0..nb.len() {
                    if !seen[j] && self.has_edge(nb[i], nb[j]) {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            seen.iter().all(|&s| s)
        })
    }

    /// Subgraph induced by `keep`, with the local-to-global id map.
    pub fn induced(&self, keep: &[Vertex]) -> SubGraph {
        let mut global = keep.to_vec();
        global.sort_unstable();
        global.dedup();
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|e| global.binary_search(&e.0).is_ok() && global.binary_search(&e.1).is_ok())
            .collect::<Vec<_>>();
        SubGraph::from_parts(self.vertex_count(), global, &edges)
    }
}

/// A graph on a subset of host vertices, renumbered locally.
#[derive(Clone, Debug)]
pub struct SubGraph {
    pub graph: Graph,
    pub global: Vec<Vertex>,
    local: Vec<Option<Vertex>>,
}

impl SubGraph {
    /// Subgraph spanned by `edges`; its vertex set is the set of endpoints.
    pub fn from_edges(host_order: usize, edges: &[Edge]) -> SubGraph {
        let mut global: Vec<Vertex> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
        global.sort_unstable();
        global.dedup();
        Self::from_parts(host_order, global, edges)
    }

    fn from_parts(host_order: usize, global: Vec<Vertex>, edges: &[Edge]) -> SubGraph {
        let mut local = vec![None; host_order];
        for (i, &g) in global.iter().enumerate() {
            local[g] = Some(i);
        }
        let mut list: Vec<Edge> = edges
            .iter()
            .map(|e| Edge::new(local[e.0].unwrap(), local[e.1].unwrap()))
            .collect();
        list.sort();
        list.dedup();
        let graph = Graph::from_sorted(global.len(), list);
        SubGraph { graph, global, local }
    }

    pub fn local(&self, v: Vertex) -> Option<Vertex> {
        self.local.get(v).copied().flatten()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.local(v).is_some()
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        match (self.local(e.0), self.local(e.1)) {
            (Some(a), Some(b)) => self.graph.has_edge(a, b),
            _ => false,
        }
    }

    pub fn to_global(&self, v: Vertex) -> Vertex {
        self.global[v]
    }

    pub fn global_edges(&self) -> Vec<Edge> {
        self.graph.edges().iter().map(|e| e.map(|x| self.global[x])).collect()
    }

    pub fn order(&self) -> usize {
        self.global.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn edges_are_normalized() {
        let e = Edge::new(4, 1);
        assert_eq!((e.u(), e.v()), (1, 4));
        assert_eq!(e.other(4), 1);
    }

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let g = bowtie();
        assert_eq!(g.cut_vertices(), vec![2]);
        assert!(!g.is_two_connected());
        assert!(!g.is_locally_connected());
    }

    #[test]
    fn rejects_self_loops() {
        assert!(Graph::new(2, [(1, 1)]).is_err());
    }

    #[test]
    fn induced_subgraph_renumbers() {
        let g = bowtie();
        let s = g.induced(&[4, 2, 3]);
        assert_eq!(s.global, vec![2, 3, 4]);
        assert_eq!(s.graph.edge_count(), 3);
        assert_eq!(s.local(3), Some(1));
        assert!(s.contains_edge(Edge::new(3, 4)));
        assert!(!s.contains_edge(Edge::new(0, 2)));
    }
}
