//! Labeled placements, slides, rotations along aligned odd cycles.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::matching::{self, Matching};

/// Piece label, 0-based internally and 1-based in text.
pub type Label = usize;

/// Labeled nearly perfect matching with its exposed vertex cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pieces: Vec<Edge>,
    owner: Vec<Option<Label>>,
    exposed: Vertex,
}

impl Placement {
    pub fn new(g: &Graph, pieces: Vec<Edge>) -> Result<Placement> {
        let n = g.vertex_count();
        if n % 2 == 0 || pieces.len() != n / 2 {
            return Err(Error::InvalidPlacement(format!(
                "{} pieces on {} vertices",
                pieces.len(),
                n
            )));
        }
        let mut owner = vec![None; n];
        for (label, e) in pieces.iter().enumerate() {
            if !g.contains_edge(*e) {
                return Err(Error::InvalidPlacement(format!("piece {} on non-edge {e}", label + 1)));
            }
            for x in [e.u(), e.v()] {
                if owner[x].is_some() {
                    return Err(Error::InvalidPlacement(format!("vertex {} covered twice", x + 1)));
                }
                owner[x] = Some(label);
            }
        }
        let exposed = owner.iter().position(|o| o.is_none()).unwrap();
        Ok(Placement { pieces, owner, exposed })
    }

    /// Builds a placement from pieces already known to form a valid matching.
    pub(crate) fn from_pieces_unchecked(vertex_count: usize, pieces: Vec<Edge>) -> Placement {
        let mut owner = vec![None; vertex_count];
        for (label, e) in pieces.iter().enumerate() {
            owner[e.u()] = Some(label);
            owner[e.v()] = Some(label);
        }
        let exposed = owner.iter().position(|o| o.is_none()).unwrap();
        Placement { pieces, owner, exposed }
    }

    /// Labels follow the sorted edge order of `m`.
    pub fn from_matching(g: &Graph, m: &Matching) -> Result<Placement> {
        Placement::new(g, m.edges())
    }

    /// A random placement: random exposing matching, random walk, shuffled labels.
    pub fn random<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<Placement> {
        let mut order: Vec<Vertex> = g.vertices().collect();
        order.shuffle(rng);
        let m = order
            .iter()
            .find_map(|&v| matching::near_perfect_matching(g, v).ok().flatten())
            .ok_or_else(|| Error::Precondition("graph has no nearly perfect matching".into()))?;
        let mut p = Placement::from_matching(g, &m)?;
        let steps = 4 * g.vertex_count() * g.vertex_count();
        for _ in 0..steps {
            let moves = legal_moves(g, &p);
            if let Some(mv) = moves.choose(rng) {
                p.apply_unchecked(*mv);
            }
        }
        let mut pieces = p.pieces.clone();
        pieces.shuffle(rng);
        Placement::new(g, pieces)
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn pieces(&self) -> &[Edge] {
        &self.pieces
    }

    pub fn piece(&self, label: Label) -> Edge {
        self.pieces[label]
    }

    pub fn exposed(&self) -> Vertex {
        self.exposed
    }

    pub fn owner(&self, v: Vertex) -> Option<Label> {
        self.owner[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.owner.len()
    }

    pub fn matching(&self) -> Matching {
        let mut m = Matching::empty(self.owner.len());
        for &e in &self.pieces {
            m.insert(e);
        }
        m
    }

    /// Same edges with the pieces of labels `a` and `b` exchanged.
    pub fn with_swapped(&self, a: Label, b: Label) -> Placement {
        let mut p = self.clone();
        p.pieces.swap(a, b);
        for l in [a, b] {
            let e = p.pieces[l];
            p.owner[e.u()] = Some(l);
            p.owner[e.v()] = Some(l);
        }
        p
    }

    fn check(&self, g: &Graph, mv: SlideMove) -> std::result::Result<(), String> {
        if mv.label >= self.pieces.len() {
            return Err(format!("label {} absent", mv.label + 1));
        }
        let e = self.pieces[mv.label];
        if !e.contains(mv.kept) {
            return Err(format!("piece {} on {e} does not contain vertex {}", mv.label + 1, mv.kept + 1));
        }
        if mv.dest != self.exposed {
            return Err(format!("destination {} is not the exposed vertex {}", mv.dest + 1, self.exposed + 1));
        }
        if !g.has_edge(mv.kept, mv.dest) {
            return Err(format!("vertices {} and {} are not adjacent", mv.kept + 1, mv.dest + 1));
        }
        Ok(())
    }

    /// Applies a move known to be legal; returns the newly exposed vertex.
    pub(crate) fn apply_unchecked(&mut self, mv: SlideMove) -> Vertex {
        let old = self.pieces[mv.label];
        let abandoned = old.other(mv.kept);
        self.pieces[mv.label] = Edge::new(mv.kept, mv.dest);
        self.owner[abandoned] = None;
        self.owner[mv.dest] = Some(mv.label);
        self.exposed = abandoned;
        abandoned
    }

    /// Move undoing `mv` when applied right after it.
    pub fn reverse_of(&self, mv: SlideMove) -> SlideMove {
        SlideMove { label: mv.label, kept: mv.kept, dest: self.pieces[mv.label].other(mv.kept) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlideMove {
    pub label: Label,
    pub kept: Vertex,
    pub dest: Vertex,
}

impl fmt::Display for SlideMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s {} {} {}", self.label + 1, self.kept + 1, self.dest + 1)
    }
}

pub fn slide(g: &Graph, p: &Placement, mv: SlideMove) -> Result<Placement> {
    p.check(g, mv).map_err(|reason| Error::IllegalMove { index: 0, reason })?;
    let mut q = p.clone();
    q.apply_unchecked(mv);
    Ok(q)
}

pub fn legal_moves(g: &Graph, p: &Placement) -> Vec<SlideMove> {
    let mut out: Vec<SlideMove> = g
        .neighbors(p.exposed)
        .iter()
        .filter_map(|&v| p.owner[v].map(|label| SlideMove { label, kept: v, dest: p.exposed }))
        .collect();
    out.sort_by_key(|m| (m.label, m.kept));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideSequence {
    pub start: Placement,
    pub moves: Vec<SlideMove>,
}

impl SlideSequence {
    pub fn new(start: Placement) -> Self {
        SlideSequence { start, moves: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Final placement after replaying every move with validation.
    pub fn end(&self, g: &Graph) -> Result<Placement> {
        Ok(verify_sequence(g, self, None)?.final_placement)
    }

    /// The sequence that walks back from the end to the start.
    pub fn reversed(&self, g: &Graph) -> Result<SlideSequence> {
        let mut state = self.start.clone();
        let mut back = Vec::with_capacity(self.moves.len());
        for (index, &mv) in self.moves.iter().enumerate() {
            state.check(g, mv).map_err(|reason| Error::IllegalMove { index, reason })?;
            let rev = state.reverse_of(mv);
            state.apply_unchecked(mv);
            back.push(rev);
        }
        back.reverse();
        Ok(SlideSequence { start: state, moves: back })
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub final_placement: Placement,
    pub move_count: usize,
    /// `None` when no expected end was supplied.
    pub matches_expected: Option<bool>,
}

pub fn verify_sequence(g: &Graph, seq: &SlideSequence, expected: Option<&Placement>) -> Result<VerifyReport> {
    let mut state = seq.start.clone();
    for (index, &mv) in seq.moves.iter().enumerate() {
        state.check(g, mv).map_err(|reason| Error::IllegalMove { index, reason })?;
        state.apply_unchecked(mv);
    }
    let matches_expected = expected.map(|q| *q == state);
    Ok(VerifyReport { final_placement: state, move_count: seq.moves.len(), matches_expected })
}

/// Moves that push the exposed vertex along an even alternating path.
pub fn path_moves(p: &Placement, path: &[Vertex]) -> Vec<SlideMove> {
    (0..path.len() / 2)
        .map(|i| {
            let kept = path[2 * i + 1];
            SlideMove { label: p.owner[kept].expect("path vertex covered"), kept, dest: path[2 * i] }
        })
        .collect()
}

/// Slides making `v` the exposed vertex, along one alternating path.
pub fn expose(g: &Graph, p: &Placement, v: Vertex) -> Result<SlideSequence> {
    let path = matching::alternating_path_to(g, &p.matching(), p.exposed, v)?;
    Ok(SlideSequence { start: p.clone(), moves: path_moves(p, &path) })
}

fn check_cycle(g: &Graph, cycle: &[Vertex]) -> Result<()> {
    let k = cycle.len();
    if k < 3 || k % 2 == 0 {
        return Err(Error::InvalidParams(format!("cycle of length {k} is not odd")));
    }
    let mut seen = vec![false; g.vertex_count()];
    for i in 0..k {
        let v = cycle[i];
        g.check_vertex(v)?;
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::InvalidParams(format!("cycle repeats vertex {}", v + 1)));
        }
        if !g.has_edge(v, cycle[(i + 1) % k]) {
            return Err(Error::InvalidParams(format!("cycle step {} -> {} is not an edge", v + 1, cycle[(i + 1) % k] + 1)));
        }
    }
    Ok(())
}

/// Exposed vertex on the cycle and the cycle alternating around it.
pub fn is_aligned_with_cycle(p: &Placement, cycle: &[Vertex]) -> bool {
    let k = cycle.len();
    let Some(j) = cycle.iter().position(|&v| v == p.exposed) else { return false };
    (0..k / 2).all(|i| {
        let a = cycle[(j + 2 * i + 1) % k];
        let b = cycle[(j + 2 * i + 2) % k];
        p.owner[a].is_some() && p.owner[a] == p.owner[b]
    })
}

/// Closed-form placement on a `(2k+1)`-cycle: exposed at position `j`,
/// first piece starting at position `h`. `j - h` must be even mod `2k+1`.
pub fn closed_form(cycle: &[Vertex], order: &[Label], j: usize, h: usize) -> Result<Vec<(Label, Edge)>> {
    let m = cycle.len();
    if m % 2 == 0 || order.len() != m / 2 || j >= m || h >= m {
        return Err(Error::InvalidParams("bad rotation target".into()));
    }
    let d = (j + m - h) % m;
    if d % 2 == 1 {
        return Err(Error::InvalidParams(format!("offsets j={j}, h={h} differ by an odd amount")));
    }
    Ok(order
        .iter()
        .enumerate()
        .map(|(idx, &label)| {
            let i = idx + 1;
            let s = if 2 * i - 1 < d { h + 2 * i - 2 } else { h + 2 * i - 1 };
            (label, Edge::new(cycle[s % m], cycle[(s + 1) % m]))
        })
        .collect())
}

/// Offsets `(j, h)` and the cyclic label order starting at the lowest label.
pub fn cycle_offsets(p: &Placement, cycle: &[Vertex]) -> Result<(usize, usize, Vec<Label>)> {
    if !is_aligned_with_cycle(p, cycle) {
        return Err(Error::NotAligned("placement is not aligned with the cycle".into()));
    }
    let m = cycle.len();
    let j = cycle.iter().position(|&v| v == p.exposed).unwrap();
    let starts: Vec<(usize, Label)> = (0..m / 2)
        .map(|i| {
            let s = (j + 2 * i + 1) % m;
            (s, p.owner[cycle[s]].unwrap())
        })
        .collect();
    let (ri, &(a, _)) = starts.iter().enumerate().min_by_key(|(_, (_, l))| *l).unwrap();
    let order: Vec<Label> = (0..starts.len()).map(|t| starts[(ri + t) % starts.len()].1).collect();
    let h = if (a + m - 1) % m == j { j } else { a };
    Ok((j, h, order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RotationTarget {
    /// Move the exposed vertex to position `j`, keeping the offset `h`.
    Exposed(usize),
    /// Reach the placement with offsets `(j, h)`.
    Offset { j: usize, h: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSpec {
    pub cycle: Vec<Vertex>,
    pub target: RotationTarget,
}

fn step(p: &mut Placement, cycle: &[Vertex], pos: &mut usize, forward: bool) -> SlideMove {
    let m = cycle.len();
    let next = if forward { (*pos + 1) % m } else { (*pos + m - 1) % m };
    let kept = cycle[next];
    let mv = SlideMove { label: p.owner[kept].unwrap(), kept, dest: cycle[*pos] };
    p.apply_unchecked(mv);
    *pos = if forward { (*pos + 2) % m } else { (*pos + m - 2) % m };
    mv
}

/// Nearest placement in the rotation orbit satisfying `pred`, walking both
/// directions in lockstep. `p` must be aligned with `cycle`.
pub fn rotate_until(p: &Placement, cycle: &[Vertex], pred: impl Fn(&Placement) -> bool) -> Option<Vec<SlideMove>> {
    if pred(p) {
        return Some(Vec::new());
    }
    let m = cycle.len();
    let orbit = (m / 2) * m;
    let start = cycle.iter().position(|&v| v == p.exposed)?;
    let (mut fw, mut bw) = (p.clone(), p.clone());
    let (mut fpos, mut bpos) = (start, start);
    let (mut fmoves, mut bmoves) = (Vec::new(), Vec::new());
    for _ in 0..orbit.div_ceil(2) {
        fmoves.push(step(&mut fw, cycle, &mut fpos, true));
        if pred(&fw) {
            return Some(fmoves);
        }
        bmoves.push(step(&mut bw, cycle, &mut bpos, false));
        if pred(&bw) {
            return Some(bmoves);
        }
    }
    None
}

pub fn rotate(g: &Graph, p: &Placement, spec: &RotationSpec) -> Result<SlideSequence> {
    check_cycle(g, &spec.cycle)?;
    let (_, h0, order) = cycle_offsets(p, &spec.cycle)?;
    let (j, h) = match spec.target {
        RotationTarget::Exposed(j) => (j, h0),
        RotationTarget::Offset { j, h } => (j, h),
    };
    let target = closed_form(&spec.cycle, &order, j, h)?;
    let moves = rotate_until(p, &spec.cycle, |s| target.iter().all(|&(l, e)| s.piece(l) == e))
        .ok_or_else(|| Error::Internal("rotation target outside the orbit".into()))?;
    Ok(SlideSequence { start: p.clone(), moves })
}

/// Replays moves onto a running state, recording them.
#[derive(Clone, Debug)]
pub(crate) struct Run<'g> {
    pub g: &'g Graph,
    pub state: Placement,
    pub moves: Vec<SlideMove>,
}

impl<'g> Run<'g> {
    pub fn new(g: &'g Graph, start: Placement) -> Self {
        Run { g, state: start, moves: Vec::new() }
    }

    pub fn apply(&mut self, mv: SlideMove) -> Result<()> {
        self.state
            .check(self.g, mv)
            .map_err(|reason| Error::IllegalMove { index: self.moves.len(), reason })?;
        self.state.apply_unchecked(mv);
        self.moves.push(mv);
        Ok(())
    }

    pub fn apply_all(&mut self, moves: impl IntoIterator<Item = SlideMove>) -> Result<()> {
        moves.into_iter().try_for_each(|mv| self.apply(mv))
    }

    /// Rotates along `cycle` to the nearest state satisfying `pred`.
    pub fn rotate_until(&mut self, cycle: &[Vertex], pred: impl Fn(&Placement) -> bool) -> Result<usize> {
        let moves = rotate_until(&self.state, cycle, pred)
            .ok_or_else(|| Error::Internal("rotation target outside the orbit".into()))?;
        let k = moves.len();
        self.apply_all(moves)?;
        Ok(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};

    fn cycle_graph(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a - 1, b - 1)
    }

    #[test]
    fn triangle_slide() {
        let g = generate(&Instance::Triangle).unwrap();
        let p = Placement::new(&g, vec![e(1, 2)]).unwrap();
        assert_eq!(p.exposed(), 2);
        assert_eq!(legal_moves(&g, &p).len(), 2);
        let q = slide(&g, &p, SlideMove { label: 0, kept: 1, dest: 2 }).unwrap();
        assert_eq!(q.piece(0), e(2, 3));
        assert_eq!(q.exposed(), 0);
        let back = slide(&g, &q, p.reverse_of(SlideMove { label: 0, kept: 1, dest: 2 }));
        assert_eq!(back.unwrap().exposed(), 2);
    }

    #[test]
    fn seven_cycle_one_slide() {
        // exposed at 3 (1-based) slides to exposed at 1
        let g = cycle_graph(7);
        let p = Placement::new(&g, vec![e(1, 2), e(4, 5), e(6, 7)]).unwrap();
        assert_eq!(legal_moves(&g, &p).len(), 2);
        let q = slide(&g, &p, SlideMove { label: 0, kept: 1, dest: 2 }).unwrap();
        assert_eq!(q.pieces(), &[e(2, 3), e(4, 5), e(6, 7)]);
        let cycle: Vec<usize> = (0..7).collect();
        let spec = RotationSpec { cycle, target: RotationTarget::Exposed(0) };
        assert_eq!(rotate(&g, &p, &spec).unwrap().len(), 1);
    }

    #[test]
    fn closed_form_examples() {
        let cycle: Vec<usize> = (0..7).collect();
        let p64 = closed_form(&cycle, &[0, 1, 2], 5, 3).unwrap();
        assert_eq!(p64.iter().map(|x| x.1).collect::<Vec<_>>(), vec![e(4, 5), e(7, 1), e(2, 3)]);
        let p31 = closed_form(&cycle, &[0, 1, 2], 2, 0).unwrap();
        assert_eq!(p31.iter().map(|x| x.1).collect::<Vec<_>>(), vec![e(1, 2), e(4, 5), e(6, 7)]);
    }

    #[test]
    fn rotate_to_p64() {
        let g = cycle_graph(7);
        let p = Placement::new(&g, vec![e(1, 2), e(4, 5), e(6, 7)]).unwrap();
        let spec = RotationSpec { cycle: (0..7).collect(), target: RotationTarget::Offset { j: 5, h: 3 } };
        let seq = rotate(&g, &p, &spec).unwrap();
        assert!(seq.len() <= 12);
        let end = seq.end(&g).unwrap();
        assert_eq!(end.pieces(), &[e(4, 5), e(7, 1), e(2, 3)]);
    }

    #[test]
    fn pentagon_apex_moves() {
        let g = generate(&Instance::Pentagon).unwrap();
        let p = Placement::new(&g, vec![e(1, 2), e(4, 5)]).unwrap();
        assert_eq!(p.exposed(), 2);
        assert_eq!(legal_moves(&g, &p).len(), 4);
    }

    #[test]
    fn expose_pentagon() {
        let g = generate(&Instance::Pentagon).unwrap();
        let p = Placement::new(&g, vec![e(2, 3), e(4, 5)]).unwrap();
        let seq = expose(&g, &p, 2).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(seq.end(&g).unwrap().exposed(), 2);
    }

    #[test]
    fn verify_reports_bad_index() {
        let g = cycle_graph(7);
        let p = Placement::new(&g, vec![e(1, 2), e(4, 5), e(6, 7)]).unwrap();
        let mut seq = SlideSequence::new(p.clone());
        seq.moves.push(SlideMove { label: 0, kept: 1, dest: 2 });
        seq.moves.push(SlideMove { label: 1, kept: 3, dest: 6 });
        match verify_sequence(&g, &seq, None) {
            Err(Error::IllegalMove { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
        let empty = SlideSequence::new(p.clone());
        assert_eq!(verify_sequence(&g, &empty, Some(&p)).unwrap().matches_expected, Some(true));
    }

    #[test]
    fn reversed_sequence_returns_home() {
        let g = cycle_graph(9);
        let p = Placement::new(&g, vec![e(1, 2), e(3, 4), e(5, 6), e(7, 8)]).unwrap();
        let spec = RotationSpec { cycle: (0..9).collect(), target: RotationTarget::Offset { j: 4, h: 2 } };
        let seq = rotate(&g, &p, &spec).unwrap();
        let back = seq.reversed(&g).unwrap();
        assert_eq!(back.end(&g).unwrap(), p);
    }
}
