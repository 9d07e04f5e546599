//! Reconfiguration along an admissible ear decomposition.
//!
//! The planner keeps one global placement and works on nested stages
//! `G_1 ⊂ ... ⊂ G_k`. At stage `i` it only slides pieces along edges of
//! `G_i`; pieces outside stay where they are. Exchanging two pieces inside
//! `G_{i-1}` is a recursive call with a target that has the two labels swapped.

use std::collections::{HashMap, VecDeque};

use log::{debug, trace};

use crate::ears::{self, align_run, expose_within, path_within, AdmissibleKind, Ear, EarDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, SubGraph, Vertex};
use crate::matching;
use crate::placement::{cycle_offsets, legal_moves, Label, Placement, Run, SlideMove, SlideSequence};
use crate::plan::{PlanReport, Strategy, TraceEntry};

struct Planner<'a> {
    g: &'a Graph,
    d: &'a EarDecomposition,
    stages: Vec<SubGraph>,
    trace: Vec<TraceEntry>,
}

/// `target` with `v` exposed inside `sub`, and the moves leading back to `target`.
fn exposed_target(g: &Graph, target: &Placement, sub: &SubGraph, v: Vertex) -> Result<(Placement, Vec<SlideMove>)> {
    let mut r = Run::new(g, target.clone());
    expose_within(&mut r, sub, v)?;
    let back = SlideSequence { start: target.clone(), moves: r.moves }.reversed(g)?;
    Ok((r.state, back.moves))
}

impl<'a> Planner<'a> {
    fn new(g: &'a Graph, d: &'a EarDecomposition) -> Result<Self> {
        d.validate(g, true)?;
        if d.kind == AdmissibleKind::None {
            return Err(Error::Precondition("ear decomposition is not admissible".into()));
        }
        let n = g.vertex_count();
        let stages: Vec<SubGraph> = (1..=d.stage_count()).map(|i| d.stage(n, i)).collect();
        let trace = (0..=d.stage_count())
            .map(|i| TraceEntry { level: i, ..Default::default() })
            .collect();
        Ok(Planner { g, d, stages, trace })
    }

    fn stage(&self, i: usize) -> &SubGraph {
        &self.stages[i - 1]
    }

    /// Turns the running state into `target` using edges of `G_i` only.
    fn solve(&mut self, run: &mut Run, i: usize, target: &Placement) -> Result<()> {
        self.trace[i].calls += 1;
        if run.state == *target {
            return Ok(());
        }
        if i <= self.d.core_stage() {
            self.base(run, target)?;
        } else {
            let ear = self.d.ears[i - 2].clone();
            let v = ear.path[0];
            let stage = self.stage(i).clone();
            expose_within(run, &stage, v)?;
            let (tq, back) = exposed_target(self.g, target, &stage, v)?;
            if ear.len() > 1 {
                let labels: Vec<Label> = (0..(ear.len() - 1) / 2)
                    .map(|t| tq.owner(ear.path[2 * t + 1]).unwrap())
                    .collect();
                self.load(run, i, &ear, &labels)?;
            }
            self.solve(run, i - 1, &tq)?;
            run.apply_all(back)?;
        }
        if run.state != *target {
            return Err(Error::Internal(format!("stage {i} missed its target")));
        }
        Ok(())
    }

    fn swap(&mut self, run: &mut Run, i: usize, a: Label, b: Label) -> Result<()> {
        trace!("swap {} and {} inside stage {}", a + 1, b + 1, i);
        self.trace[i + 1].swaps += 1;
        let t = run.state.with_swapped(a, b);
        self.solve(run, i, &t)
    }

    /// Puts `labels` on the interior of `ear` in order, exposed at its first end.
    fn load(&mut self, run: &mut Run, i: usize, ear: &Ear, labels: &[Label]) -> Result<()> {
        let path = &ear.path;
        let l = labels.len();
        let v = path[0];
        let u = *path.last().unwrap();
        let entry = &mut self.trace[i];
        entry.ear_len = ear.len();
        entry.loaded = l;
        if (0..l).all(|t| run.state.owner(path[2 * t + 1]) == Some(labels[t])) {
            return Ok(());
        }
        let prev = self.stage(i - 1).clone();
        let p = path_within(&run.state, &prev, u)?;
        let mut cycle = path.clone();
        cycle.extend(p[1..p.len() - 1].iter().rev());
        let m = cycle.len() / 2;
        let hamiltonian = cycle.len() == self.stage(i).order();
        self.trace[i].hamiltonian |= hamiltonian;
        let at = |s: &Placement, label: Label, t: usize| {
            s.exposed() == v && s.owner(cycle[2 * t + 1]) == Some(label) && s.owner(cycle[2 * t + 2]) == Some(label)
        };
        let slot_of = |s: &Placement, label: Label| (0..m).find(|&t| s.owner(cycle[2 * t + 1]) == Some(label));
        let on_cycle = |s: &Placement, label: Label| cycle.contains(&s.piece(label).u());
        if !hamiltonian {
            let spare: Edge = prev
                .global
                .iter()
                .filter(|&&x| x != run.state.exposed())
                .map(|&x| run.state.piece(run.state.owner(x).unwrap()))
                .find(|e| !cycle.contains(&e.u()) && !cycle.contains(&e.v()))
                .ok_or_else(|| Error::Internal("no spare piece off the cycle".into()))?;
            for t in 0..l {
                let lt = labels[t];
                if on_cycle(&run.state, lt) {
                    run.rotate_until(&cycle, |s| s.exposed() == v && slot_of(s, lt).is_some_and(|x| x >= l))?;
                    let parked = run.state.owner(spare.u()).unwrap();
                    self.swap(run, i - 1, lt, parked)?;
                }
                if t > 0 {
                    run.rotate_until(&cycle, |s| at(s, labels[t - 1], l - 1))?;
                }
                let x = run.state.owner(cycle[2 * l + 1]).unwrap();
                self.swap(run, i - 1, lt, x)?;
            }
        } else {
            for t in 1..l {
                loop {
                    let sp = slot_of(&run.state, labels[t - 1]).unwrap();
                    let st = slot_of(&run.state, labels[t]).unwrap();
                    if st == (sp + 1) % m {
                        break;
                    }
                    let x = run.state.owner(cycle[2 * ((st + m - 1) % m) + 1]).unwrap();
                    let lt = labels[t];
                    run.rotate_until(&cycle, |s| at(s, x, l) && at(s, lt, l + 1))?;
                    self.swap(run, i - 1, x, lt)?;
                }
            }
        }
        run.rotate_until(&cycle, |s| at(s, labels[l - 1], l - 1))?;
        Ok(())
    }

    fn base(&mut self, run: &mut Run, target: &Placement) -> Result<()> {
        let core = self.stage(self.d.core_stage()).clone();
        match self.d.kind {
            AdmissibleKind::Pentagon => bfs_within(run, &core, target),
            AdmissibleKind::DiamondCycle => {
                let c = DiamondCore::from_decomposition(self.d)?;
                c.reconfigure(run, target)
            }
            AdmissibleKind::None => Err(Error::Precondition("no admissible core".into())),
        }
    }
}

/// Shortest slide sequence inside `sub` by breadth-first search.
pub(crate) fn bfs_within(run: &mut Run, sub: &SubGraph, target: &Placement) -> Result<()> {
    let g = run.g;
    let start = run.state.clone();
    let mut parent: HashMap<Placement, (Placement, SlideMove)> = HashMap::new();
    let mut queue = VecDeque::from([start.clone()]);
    let mut found = start == *target;
    while let Some(s) = queue.pop_front() {
        if found {
            break;
        }
        for mv in legal_moves(g, &s) {
            let piece = s.piece(mv.label);
            if !sub.contains_edge(piece) || !sub.contains_edge(Edge::new(mv.kept, mv.dest)) {
                continue;
            }
            let mut t = s.clone();
            t.apply_unchecked(mv);
            if t == start || parent.contains_key(&t) {
                continue;
            }
            parent.insert(t.clone(), (s.clone(), mv));
            if t == *target {
                found = true;
                break;
            }
            queue.push_back(t);
        }
    }
    if !found {
        return Err(Error::NotFound("target unreachable inside the core".into()));
    }
    let mut moves = Vec::new();
    let mut cur = target.clone();
    while cur != start {
        let (prev, mv) = parent.remove(&cur).unwrap();
        moves.push(mv);
        cur = prev;
    }
    moves.reverse();
    run.apply_all(moves)
}

/// Odd cycle `C` through `(u, v)` with the diamond path `u - x - y - v`.
#[derive(Clone, Debug)]
pub struct DiamondCore {
    pub cycle: Vec<Vertex>,
    pub path: [Vertex; 4],
    pub diagonal: Edge,
}

impl DiamondCore {
    fn from_decomposition(d: &EarDecomposition) -> Result<Self> {
        if d.kind != AdmissibleKind::DiamondCycle {
            return Err(Error::Precondition("decomposition has no diamond core".into()));
        }
        let p = &d.ears[0].path;
        let (a, b) = d.ears[1].ends();
        Ok(DiamondCore { cycle: d.base_cycle.clone(), path: [p[0], p[1], p[2], p[3]], diagonal: Edge::new(a, b) })
    }

    /// `C` with `(u, v)` replaced by the path, as `[v, ..., u, x, y]`.
    pub fn detour(&self) -> Vec<Vertex> {
        let [u, x, y, v] = self.path;
        let c = &self.cycle;
        let k = c.len();
        let pv = c.iter().position(|&z| z == v).unwrap();
        let step = if c[(pv + 1) % k] == u { k - 1 } else { 1 };
        let mut out = Vec::with_capacity(k + 2);
        let mut i = pv;
        loop {
            out.push(c[i]);
            if c[i] == u {
                break;
            }
            i = (i + step) % k;
        }
        out.extend([x, y]);
        out
    }

    fn detour_decomposition(&self) -> EarDecomposition {
        let [u, _, _, v] = self.path;
        EarDecomposition {
            base_cycle: self.detour(),
            ears: vec![Ear::new(vec![u, v]), Ear::new(vec![self.diagonal.u(), self.diagonal.v()])],
            kind: AdmissibleKind::None,
        }
    }

    /// Insertion along the long cycle: park the next label on `(x, y)`,
    /// then turn the short cycle until its predecessor sits next to it.
    fn reconfigure(&self, run: &mut Run, target: &Placement) -> Result<()> {
        if run.state == *target {
            return Ok(());
        }
        let [u, x, y, _] = self.path;
        let long = self.detour();
        let dd = self.detour_decomposition();
        align_run(run, &dd)?;
        let mut tr = Run::new(run.g, target.clone());
        align_run(&mut tr, &dd)?;
        let aligned_target = tr.state.clone();
        let back = SlideSequence { start: target.clone(), moves: tr.moves }.reversed(run.g)?;
        let (_, _, order) = cycle_offsets(&aligned_target, &long)?;
        let pu = long.iter().position(|&z| z == u).unwrap();
        let before_u = long[pu - 1];
        let xy = Edge::new(x, y);
        for j in 1..order.len() {
            let (_, _, cur) = cycle_offsets(&run.state, &long)?;
            let a = cur.iter().position(|&l| l == order[j - 1]).unwrap();
            if cur[(a + 1) % cur.len()] == order[j] {
                continue;
            }
            let (tj, prev) = (order[j], order[j - 1]);
            run.rotate_until(&long, |s| s.piece(tj) == xy)?;
            run.rotate_until(&self.cycle, |s| s.piece(prev) == Edge::new(before_u, u))?;
        }
        run.rotate_until(&long, |s| *s == aligned_target)?;
        run.apply_all(back.moves)?;
        debug!("diamond core reconfigured");
        Ok(())
    }
}

fn plan_with(g: &Graph, d: &EarDecomposition, p: &Placement, q: &Placement) -> Result<(SlideSequence, Vec<TraceEntry>)> {
    let mut planner = Planner::new(g, d)?;
    let mut run = Run::new(g, p.clone());
    align_run(&mut run, d)?;
    let mut tr = Run::new(g, q.clone());
    align_run(&mut tr, d)?;
    let back = SlideSequence { start: q.clone(), moves: tr.moves }.reversed(g)?;
    planner.solve(&mut run, d.stage_count(), &tr.state)?;
    run.apply_all(back.moves)?;
    let trace = planner.trace.into_iter().filter(|t| t.calls > 0).collect();
    Ok((SlideSequence { start: p.clone(), moves: run.moves }, trace))
}

fn check_host(g: &Graph) -> Result<()> {
    if !g.is_two_connected() {
        return Err(Error::Precondition("graph is not 2-connected".into()));
    }
    if !matching::is_factor_critical(g) {
        return Err(Error::Precondition("graph is not factor-critical".into()));
    }
    Ok(())
}

/// Plans `p -> q` through an admissible ear decomposition.
pub fn plan_ear(g: &Graph, p: &Placement, q: &Placement) -> Result<PlanReport> {
    check_host(g)?;
    let w = ears::find_admissible(g)?;
    plan_ear_with(g, &w.decomposition, p, q)
}

pub fn plan_ear_with(g: &Graph, d: &EarDecomposition, p: &Placement, q: &Placement) -> Result<PlanReport> {
    let (sequence, trace) = plan_with(g, d, p, q)?;
    let report = crate::placement::verify_sequence(g, &sequence, Some(q))?;
    if report.matches_expected != Some(true) {
        return Err(Error::Internal("plan does not reach the target".into()));
    }
    Ok(PlanReport::new(sequence, Strategy::Ear, trace))
}

/// Reconfigures between two placements already aligned with `d`.
pub fn reconfigure_aligned(g: &Graph, d: &EarDecomposition, p: &Placement, q: &Placement) -> Result<SlideSequence> {
    for (name, s) in [("start", p), ("target", q)] {
        if !ears::is_aligned(s, d) {
            return Err(Error::NotAligned(format!("{name} placement")));
        }
    }
    let mut planner = Planner::new(g, d)?;
    let mut run = Run::new(g, p.clone());
    planner.solve(&mut run, d.stage_count(), q)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

/// One recursion level: load the ear of stage `i`, then recurse.
///
/// `p` and `q` must agree on every piece outside `G_i` and keep their
/// pieces inside `G_i` on its edges.
pub fn phase2_step(g: &Graph, d: &EarDecomposition, i: usize, p: &Placement, q: &Placement) -> Result<SlideSequence> {
    let mut planner = Planner::new(g, d)?;
    if i < 1 || i > d.stage_count() {
        return Err(Error::InvalidParams(format!("stage {i} out of range")));
    }
    let stage = planner.stage(i).clone();
    for v in g.vertices().filter(|&v| !stage.contains(v)) {
        if p.owner(v) != q.owner(v) || p.owner(v).map(|l| p.piece(l)) != q.owner(v).map(|l| q.piece(l)) {
            return Err(Error::Precondition(format!("placements differ outside stage {i}")));
        }
    }
    let mut run = Run::new(g, p.clone());
    planner.solve(&mut run, i, q)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

fn is_pentagon_host(g: &Graph) -> bool {
    g.vertex_count() == 5 && g.edge_count() == 7 && ears::pentagons(g).len() == 1
}

/// Shortest sequence on the five-vertex fan.
pub fn base_pentagon(g: &Graph, p: &Placement, q: &Placement) -> Result<SlideSequence> {
    if !is_pentagon_host(g) {
        return Err(Error::Precondition("host is not a pentagon".into()));
    }
    let sub = g.induced(&g.vertices().collect::<Vec<_>>());
    let mut run = Run::new(g, p.clone());
    bfs_within(&mut run, &sub, q)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

/// Two-cycle insertion schedule on an odd cycle with one attached diamond.
pub fn base_diamond_cycle(g: &Graph, p: &Placement, q: &Placement) -> Result<SlideSequence> {
    let w = ears::find_admissible(g).map_err(|_| Error::Precondition("host is not a diamond cycle".into()))?;
    let d = &w.decomposition;
    if d.kind != AdmissibleKind::DiamondCycle || d.ears.len() != 2 {
        return Err(Error::Precondition("host is not a diamond cycle".into()));
    }
    let core = DiamondCore::from_decomposition(d)?;
    let mut run = Run::new(g, p.clone());
    core.reconfigure(&mut run, q)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};
    use crate::placement::verify_sequence;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn pentagon_pairs_within_eight() {
        let g = generate(&Instance::Pentagon).unwrap();
        let all = crate::oracle::all_placements(&g);
        assert_eq!(all.len(), 14);
        for p in &all {
            for q in &all {
                let seq = base_pentagon(&g, p, q).unwrap();
                assert!(seq.len() <= 8);
                assert_eq!(seq.end(&g).unwrap(), *q);
            }
        }
    }

    #[test]
    fn diamond_cycle_random_pairs() {
        let mut rng = StdRng::seed_from_u64(7);
        for n in [3, 4] {
            let g = generate(&Instance::DiamondCycle { n }).unwrap();
            for _ in 0..20 {
                let p = Placement::random(&g, &mut rng).unwrap();
                let q = Placement::random(&g, &mut rng).unwrap();
                let seq = base_diamond_cycle(&g, &p, &q).unwrap();
                let r = verify_sequence(&g, &seq, Some(&q)).unwrap();
                assert_eq!(r.matches_expected, Some(true));
            }
        }
    }

    #[test]
    fn hexagon_plans_verify() {
        let g = generate(&Instance::Hexagon).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let p = Placement::random(&g, &mut rng).unwrap();
            let q = Placement::random(&g, &mut rng).unwrap();
            let rep = plan_ear(&g, &p, &q).unwrap();
            assert_eq!(rep.sequence.end(&g).unwrap(), q);
            assert!(rep.budget_n2n_ok);
        }
    }

    #[test]
    fn same_placement_gives_empty_plan() {
        let g = generate(&Instance::Hexagon).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        let p = Placement::random(&g, &mut rng).unwrap();
        let d = ears::find_admissible(&g).unwrap().decomposition;
        let mut run = Run::new(&g, p.clone());
        align_run(&mut run, &d).unwrap();
        let a = run.state.clone();
        assert!(reconfigure_aligned(&g, &d, &a, &a).unwrap().is_empty());
    }
}
