//! Exhaustive breadth-first search over labeled placements of small graphs.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::matching;
use crate::placement::{legal_moves, Placement};

pub const DEFAULT_MAX_VERTICES: usize = 13;
pub const DEFAULT_MAX_STATES: usize = 20_000_000;

/// Compact state: 7 bits of edge index per label.
pub type StateKey = u128;

const BITS: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_states: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_vertices: DEFAULT_MAX_VERTICES, max_states: DEFAULT_MAX_STATES }
    }
}

impl Budget {
    fn admit(&self, g: &Graph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::Budget(self.max_vertices));
        }
        let labels = g.vertex_count() / 2;
        if g.edge_count() >= 1 << BITS || labels as u32 * BITS > 128 {
            return Err(Error::InvalidParams("graph too large for the state encoding".into()));
        }
        Ok(())
    }
}

pub fn state_key(g: &Graph, p: &Placement) -> Result<StateKey> {
    let mut key: StateKey = 0;
    for (label, &e) in p.pieces().iter().enumerate() {
        let i = g.edge_index(e).ok_or(Error::InvalidEdge(e.u(), e.v()))?;
        key |= (i as u128) << (BITS * label as u32);
    }
    Ok(key)
}

/// Inverse of [`state_key`] for keys produced on `g`.
pub fn decode_key(g: &Graph, key: StateKey) -> Placement {
    let labels = g.vertex_count() / 2;
    let mask = (1u128 << BITS) - 1;
    let pieces: Vec<Edge> = (0..labels)
        .map(|l| g.edges()[((key >> (BITS * l as u32)) & mask) as usize])
        .collect();
    Placement::from_pieces_unchecked(g.vertex_count(), pieces)
}

/// States reachable from a start placement, with their distances.
#[derive(Clone, Debug)]
pub struct Component {
    pub start: Placement,
    /// Keys in breadth-first order.
    pub order: Vec<StateKey>,
    pub distances: HashMap<StateKey, usize>,
    /// Which vertices are exposed in some state of the component.
    pub exposed_seen: Vec<bool>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn eccentricity(&self) -> usize {
        self.order.last().map(|k| self.distances[k]).unwrap_or(0)
    }

    pub fn distance_to(&self, g: &Graph, q: &Placement) -> Option<usize> {
        let k = state_key(g, q).ok()?;
        self.distances.get(&k).copied()
    }

    pub fn contains(&self, g: &Graph, q: &Placement) -> bool {
        self.distance_to(g, q).is_some()
    }

    /// `state_key,distance` rows in breadth-first order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state_key,distance\n");
        for k in &self.order {
            writeln!(out, "{:032x},{}", k, self.distances[k]).unwrap();
        }
        out
    }
}

pub fn bfs_component(g: &Graph, p: &Placement, budget: Budget) -> Result<Component> {
    budget.admit(g)?;
    let start = state_key(g, p)?;
    let mut distances = HashMap::from([(start, 0usize)]);
    let mut order = vec![start];
    let mut exposed_seen = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([(p.clone(), 0usize)]);
    while let Some((s, d)) = queue.pop_front() {
        exposed_seen[s.exposed()] = true;
        for mv in legal_moves(g, &s) {
            let mut t = s.clone();
            t.apply_unchecked(mv);
            let k = state_key(g, &t)?;
            if distances.contains_key(&k) {
                continue;
            }
            if distances.len() >= budget.max_states {
                return Err(Error::Budget(budget.max_states));
            }
            distances.insert(k, d + 1);
            order.push(k);
            queue.push_back((t, d + 1));
        }
    }
    Ok(Component { start: p.clone(), order, distances, exposed_seen })
}

/// Shortest slide count from `p` to `q`, or `None` when unreachable.
pub fn distance(g: &Graph, p: &Placement, q: &Placement, budget: Budget) -> Result<Option<usize>> {
    Ok(bfs_component(g, p, budget)?.distance_to(g, q))
}

/// Every labeled placement of `g`, in a fixed order.
pub fn all_placements(g: &Graph) -> Vec<Placement> {
    let labels = g.vertex_count() / 2;
    let mut out = Vec::new();
    for m in matching::near_perfect_matchings(g) {
        let edges = m.edges();
        for perm in (0..labels).permutations(labels) {
            let pieces = perm.iter().map(|&i| edges[i]).collect();
            out.push(Placement::from_pieces_unchecked(g.vertex_count(), pieces));
        }
    }
    out
}

pub fn placement_count(g: &Graph) -> usize {
    let labels = g.vertex_count() / 2;
    matching::near_perfect_matchings(g).len() * (1..=labels).product::<usize>()
}

/// Component sizes of the whole slide graph, largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub component_sizes: Vec<usize>,
    pub total: usize,
}

impl Census {
    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }
}

pub fn census(g: &Graph, budget: Budget) -> Result<Census> {
    budget.admit(g)?;
    let total = placement_count(g);
    if total > budget.max_states {
        return Err(Error::Budget(budget.max_states));
    }
    let mut seen: HashSet<StateKey> = HashSet::with_capacity(total);
    let mut sizes = Vec::new();
    for p in all_placements(g) {
        let k = state_key(g, &p)?;
        if seen.contains(&k) {
            continue;
        }
        let c = bfs_component(g, &p, budget)?;
        sizes.push(c.len());
        seen.extend(c.order);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Census { component_sizes: sizes, total })
}

/// True iff any two placements of `g` are connected by slides.
pub fn is_reconfigurable_bruteforce(g: &Graph, budget: Budget) -> Result<bool> {
    budget.admit(g)?;
    let Some(m) = g.vertices().find_map(|v| matching::near_perfect_matching(g, v).ok().flatten()) else {
        return Ok(false);
    };
    let total = placement_count(g);
    if total > budget.max_states {
        return Err(Error::Budget(budget.max_states));
    }
    let p = Placement::from_matching(g, &m)?;
    Ok(bfs_component(g, &p, budget)?.len() == total)
}

/// Vertices never exposed within the component of `p`.
pub fn unexposable(g: &Graph, p: &Placement, budget: Budget) -> Result<Vec<Vertex>> {
    let c = bfs_component(g, p, budget)?;
    Ok(g.vertices().filter(|&v| !c.exposed_seen[v]).collect())
}
