//! Induced subgraphs of the triangular lattice.
//!
//! Points use axial coordinates; `(x, y)` is drawn at `(x + y/2, y·√3/2)`.
//! Vertex ids follow the lexicographic order of the points.

use std::collections::{BTreeSet, HashMap};
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};

/// Lattice directions in anticlockwise order starting at angle 0.
pub const DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    pub fn is_adjacent(self, other: LatticePoint) -> bool {
        direction_index(other.x - self.x, other.y - self.y).is_some()
    }

    pub fn neighbors(self) -> [LatticePoint; 6] {
        DIRECTIONS.map(|(dx, dy)| LatticePoint::new(self.x + dx, self.y + dy))
    }

    pub fn cartesian(self) -> (f64, f64) {
        (self.x as f64 + self.y as f64 / 2.0, self.y as f64 * 3f64.sqrt() / 2.0)
    }

    fn rotate60(self) -> LatticePoint {
        LatticePoint::new(-self.y, self.x + self.y)
    }

    fn reflect(self) -> LatticePoint {
        LatticePoint::new(self.y, self.x)
    }
}

fn direction_index(dx: i64, dy: i64) -> Option<usize> {
    DIRECTIONS.iter().position(|&d| d == (dx, dy))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryKind {
    Outer,
    Hole,
}

/// A closed facial walk that is not a triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    pub kind: BoundaryKind,
    pub vertices: Vec<Vertex>,
}

impl BoundaryWalk {
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
    }
}

/// A triangular grid graph, or an abstract graph flagged as non-lattice.
#[derive(Clone, Debug)]
pub struct TriGridGraph {
    graph: Graph,
    points: Option<Vec<LatticePoint>>,
    triangles: Vec<[Vertex; 3]>,
    boundary: Vec<BoundaryWalk>,
    inner_edges: Vec<Edge>,
}

impl Deref for TriGridGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

pub fn build_graph(points: &[LatticePoint]) -> Result<TriGridGraph> {
    if points.is_empty() {
        return Err(Error::Empty);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicatePoint(w[0].x, w[0].y));
        }
    }
    let index: HashMap<LatticePoint, Vertex> =
        sorted.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, p) in sorted.iter().enumerate() {
        for q in p.neighbors() {
            if let Some(&j) = index.get(&q) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    let graph = Graph::new(sorted.len(), edges)?;
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    if sorted.len() % 2 == 0 {
        return Err(Error::EvenOrder(sorted.len()));
    }
    if sorted.len() < 3 {
        return Err(Error::TooSmall);
    }
    let mut g = TriGridGraph {
        graph,
        points: Some(sorted),
        triangles: Vec::new(),
        boundary: Vec::new(),
        inner_edges: Vec::new(),
    };
    g.face_census(&index)?;
    Ok(g)
}

impl TriGridGraph {
    /// Wraps a graph that has no lattice embedding.
    pub fn abstract_graph(graph: Graph) -> Result<TriGridGraph> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if graph.vertex_count() % 2 == 0 {
            return Err(Error::EvenOrder(graph.vertex_count()));
        }
        if graph.vertex_count() < 3 {
            return Err(Error::TooSmall);
        }
        Ok(TriGridGraph {
            graph,
            points: None,
            triangles: Vec::new(),
            boundary: Vec::new(),
            inner_edges: Vec::new(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_lattice(&self) -> bool {
        self.points.is_some()
    }

    pub fn points(&self) -> Result<&[LatticePoint]> {
        self.points.as_deref().ok_or(Error::NonLattice)
    }

    pub fn point(&self, v: Vertex) -> Result<LatticePoint> {
        Ok(self.points()?[v])
    }

    pub fn vertex_of(&self, p: LatticePoint) -> Option<Vertex> {
        self.points.as_ref()?.binary_search(&p).ok()
    }

    /// Triangle faces as sorted vertex triples.
    pub fn triangles(&self) -> Result<&[[Vertex; 3]]> {
        self.points()?;
        Ok(&self.triangles)
    }

    pub fn boundary_walks(&self) -> Result<&[BoundaryWalk]> {
        self.points()?;
        Ok(&self.boundary)
    }

    pub fn holes(&self) -> Result<Vec<&BoundaryWalk>> {
        Ok(self.boundary_walks()?.iter().filter(|b| b.kind == BoundaryKind::Hole).collect())
    }

    pub fn inner_edges(&self) -> Result<&[Edge]> {
        self.points()?;
        Ok(&self.inner_edges)
    }

    pub fn degree6_vertices(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == 6).collect()
    }

    /// Canonical hexagram test; abstract graphs are never the hexagram.
    pub fn is_star_of_david(&self) -> bool {
        match &self.points {
            Some(pts) if pts.len() == 13 => canonical_form(pts) == canonical_form(&star_of_david_points()),
            _ => false,
        }
    }

    pub fn cartesian(&self, v: Vertex) -> Result<(f64, f64)> {
        Ok(self.point(v)?.cartesian())
    }

    fn face_census(&mut self, index: &HashMap<LatticePoint, Vertex>) -> Result<()> {
        let pts = self.points.clone().unwrap();
        let n = pts.len();
        // rotation system: neighbours ordered anticlockwise, indexed by direction
        let rot: Vec<Vec<Vertex>> = (0..n)
            .map(|v| pts[v].neighbors().iter().filter_map(|q| index.get(q).copied()).collect())
            .collect();
        let dir = |a: Vertex, b: Vertex| direction_index(pts[b].x - pts[a].x, pts[b].y - pts[a].y).unwrap();
        let mut used: HashMap<(Vertex, Vertex), bool> = HashMap::new();
        let mut faces: Vec<Vec<Vertex>> = Vec::new();
        for u in 0..n {
            for &v in &rot[u] {
                if used.contains_key(&(u, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    used.insert((a, b), true);
                    walk.push(a);
                    // next neighbour of b clockwise from a
                    let back = dir(b, a);
                    let r = &rot[b];
                    let w = (1..=6)
                        .map(|s| (back + 6 - s) % 6)
                        .find_map(|d| r.iter().copied().find(|&x| dir(b, x) == d))
                        .unwrap();
                    a = b;
                    b = w;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        let area = |w: &Vec<Vertex>| -> f64 {
            let k = w.len();
            (0..k)
                .map(|i| {
                    let (x0, y0) = pts[w[i]].cartesian();
                    let (x1, y1) = pts[w[(i + 1) % k]].cartesian();
                    x0 * y1 - x1 * y0
                })
                .sum::<f64>()
                / 2.0
        };
        let outer = (0..faces.len())
            .min_by(|&i, &j| area(&faces[i]).partial_cmp(&area(&faces[j])).unwrap())
            .unwrap();
        let mut triangles = Vec::new();
        let mut boundary = Vec::new();
        for (i, f) in faces.into_iter().enumerate() {
            if i == outer {
                boundary.push(BoundaryWalk { kind: BoundaryKind::Outer, vertices: f });
            } else if f.len() == 3 {
                let mut t = [f[0], f[1], f[2]];
                t.sort_unstable();
                triangles.push(t);
            } else if f.len() < 6 {
                return Err(Error::Internal(format!("inner face of length {}", f.len())));
            } else {
                boundary.push(BoundaryWalk { kind: BoundaryKind::Hole, vertices: f });
            }
        }
        triangles.sort_unstable();
        let on_boundary: BTreeSet<Edge> = boundary.iter().flat_map(|b| b.edges()).collect();
        self.inner_edges = self.graph.edges().iter().copied().filter(|e| !on_boundary.contains(e)).collect();
        self.triangles = triangles;
        self.boundary = boundary;
        Ok(())
    }
}

/// Representative of a point set under lattice rotations, reflections and translations.
pub fn canonical_form(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut best: Option<Vec<LatticePoint>> = None;
    for flip in [false, true] {
        let mut cur: Vec<LatticePoint> =
            points.iter().map(|&p| if flip { p.reflect() } else { p }).collect();
        for _ in 0..6 {
            cur = cur.iter().map(|p| p.rotate60()).collect();
            let mx = cur.iter().map(|p| p.x).min().unwrap();
            let my = cur.iter().map(|p| p.y).min().unwrap();
            let mut t: Vec<LatticePoint> =
                cur.iter().map(|p| LatticePoint::new(p.x - mx, p.y - my)).collect();
            t.sort();
            if best.as_ref().map_or(true, |b| t < *b) {
                best = Some(t);
            }
        }
    }
    best.unwrap()
}

pub fn star_of_david_points() -> Vec<LatticePoint> {
    let mut pts = vec![LatticePoint::new(0, 0)];
    pts.extend(LatticePoint::new(0, 0).neighbors());
    for (x, y) in [(1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1)] {
        pts.push(LatticePoint::new(x, y));
    }
    pts
}

/// Named instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Triangle,
    Pentagon,
    Hexagon,
    StarOfDavid,
    /// Hexagonal patch of the given radius with some points removed.
    HexWithHole { radius: i64, removed: Vec<LatticePoint> },
    /// Odd cycle `1..2n-1` with a diamond on `{2n-2, 2n-1, 2n, 2n+1}`.
    DiamondCycle { n: usize },
    /// Cycle `1..2n+1` with the chord `(1, 2m+1)`.
    ChordCycle { n: usize, m: usize },
}

pub fn hexagon_patch(radius: i64) -> Vec<LatticePoint> {
    let mut pts = Vec::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            if (x + y).abs() <= radius {
                pts.push(LatticePoint::new(x, y));
            }
        }
    }
    pts
}

pub fn generate(kind: &Instance) -> Result<TriGridGraph> {
    let p = LatticePoint::new;
    match kind {
        Instance::Triangle => build_graph(&[p(0, 0), p(1, 0), p(0, 1)]),
        Instance::Pentagon => build_graph(&[p(0, 0), p(1, 0), p(0, 1), p(-1, 1), p(-1, 0)]),
        Instance::Hexagon => build_graph(&hexagon_patch(1)),
        Instance::StarOfDavid => build_graph(&star_of_david_points()),
        Instance::HexWithHole { radius, removed } => {
            if *radius < 1 {
                return Err(Error::InvalidParams("radius must be at least 1".into()));
            }
            let pts: Vec<LatticePoint> =
                hexagon_patch(*radius).into_iter().filter(|q| !removed.contains(q)).collect();
            build_graph(&pts)
        }
        Instance::DiamondCycle { n } => {
            let n = *n;
            if n < 2 {
                return Err(Error::InvalidParams("diamond_cycle needs n >= 2".into()));
            }
            // cycle 0..2n-2, diamond on u, v, x, y
            let c = 2 * n - 1;
            let mut edges: Vec<(Vertex, Vertex)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
            let (u, v, x, y) = (2 * n - 3, 2 * n - 2, 2 * n - 1, 2 * n);
            edges.extend([(u, x), (x, y), (y, v), (v, x)]);
            TriGridGraph::abstract_graph(Graph::new(2 * n + 1, edges)?)
        }
        Instance::ChordCycle { n, m } => {
            let (n, m) = (*n, *m);
            if n < 2 || m < 1 || m >= n {
                return Err(Error::InvalidParams("chord_cycle needs 1 <= m < n".into()));
            }
            let c = 2 * n + 1;
            let mut edges: Vec<(Vertex, Vertex)> = (0..c).map(|i| (i, (i + 1) % c)).collect();
            edges.push((0, 2 * m));
            TriGridGraph::abstract_graph(Graph::new(c, edges)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_census() {
        let g = generate(&Instance::Triangle).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.triangles().unwrap().len(), 1);
        assert!(g.holes().unwrap().is_empty());
        assert!(g.inner_edges().unwrap().is_empty());
    }

    #[test]
    fn pentagon_census() {
        let g = generate(&Instance::Pentagon).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 7));
        assert_eq!(g.triangles().unwrap().len(), 3);
        assert!(g.holes().unwrap().is_empty());
        assert_eq!(g.inner_edges().unwrap().len(), 2);
        assert!(g.is_two_connected());
    }

    #[test]
    fn build_rejects_bad_input() {
        let p = LatticePoint::new;
        assert!(matches!(build_graph(&[]), Err(Error::Empty)));
        assert!(matches!(build_graph(&[p(0, 0), p(1, 0)]), Err(Error::EvenOrder(2))));
        assert!(matches!(build_graph(&[p(0, 0), p(0, 0), p(1, 0)]), Err(Error::DuplicatePoint(0, 0))));
        assert!(matches!(build_graph(&[p(0, 0), p(1, 0), p(5, 5)]), Err(Error::Disconnected)));
    }

    #[test]
    fn hexagon_center_has_degree_six() {
        let g = generate(&Instance::Hexagon).unwrap();
        let c = g.vertex_of(LatticePoint::new(0, 0)).unwrap();
        assert_eq!(g.degree6_vertices(), vec![c]);
    }

    #[test]
    fn two_holes() {
        let removed = vec![LatticePoint::new(-1, 0), LatticePoint::new(1, 0)];
        let g = generate(&Instance::HexWithHole { radius: 3, removed }).unwrap();
        let holes = g.holes().unwrap();
        assert_eq!(holes.len(), 2);
        assert!(holes.iter().all(|h| h.vertices.len() >= 6));
    }

    #[test]
    fn star_of_david_is_canonical_under_symmetry() {
        let g = generate(&Instance::StarOfDavid).unwrap();
        assert!(g.is_star_of_david());
        assert!(g.is_locally_connected());
        let moved: Vec<LatticePoint> = star_of_david_points()
            .into_iter()
            .map(|q| q.rotate60().reflect())
            .map(|q| LatticePoint::new(q.x + 4, q.y - 7))
            .collect();
        assert!(build_graph(&moved).unwrap().is_star_of_david());
        assert!(!generate(&Instance::Pentagon).unwrap().is_star_of_david());
    }

    #[test]
    fn chord_cycle_shape() {
        let g = generate(&Instance::ChordCycle { n: 4, m: 2 }).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 10);
        assert!(!g.is_lattice());
        assert!(g.triangles().is_err());
        assert!(!g.is_locally_connected());
    }

    #[test]
    fn diamond_cycle_shape() {
        let g = generate(&Instance::DiamondCycle { n: 3 }).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 9);
        assert!(g.is_two_connected());
    }
}
