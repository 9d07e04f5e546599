//! Reconfiguration on locally connected grids through one Hamilton cycle.
//!
//! Both placements are aligned with the cycle and normalised so that `c` is
//! exposed. Labels then sit in slots `0..n` counted from the successor of `c`,
//! and the diamond lets us exchange the two slots ending at `a`.

use log::debug;

use crate::ear_planner::bfs_within;
use crate::ears::align_run;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::grid::TriGridGraph;
use crate::hamilton::{find_hamilton, find_local_structure, HamiltonCycle, ParityDiamond};
use crate::placement::{verify_sequence, Label, Placement, Run, SlideMove, SlideSequence};
use crate::plan::{PlanReport, Strategy, TraceEntry};

/// Cycle walk `d, P1.., a, b, P2.., c, ...` with slot bookkeeping.
struct Frame<'a> {
    pd: &'a ParityDiamond,
    walk: Vec<Vertex>,
    cpos: usize,
    /// Slot whose first vertex is `a`.
    ab: usize,
}

impl<'a> Frame<'a> {
    fn new(pd: &'a ParityDiamond) -> Result<Self> {
        let h = &pd.cycle;
        let n = h.len();
        let start = h.position(pd.d);
        let step = if h.order()[(start + 1) % n] == pd.p1[1] { 1 } else { n - 1 };
        let walk: Vec<Vertex> = (0..n).map(|i| h.order()[(start + i * step) % n]).collect();
        let cpos = walk.iter().position(|&v| v == pd.c).unwrap();
        let ab = (0..n / 2)
            .find(|&t| walk[(cpos + 1 + 2 * t) % n] == pd.a)
            .ok_or_else(|| Error::Internal("diamond edge (a, b) is not a slot".into()))?;
        if ab == 0 {
            return Err(Error::Internal("no slot precedes (a, b)".into()));
        }
        Ok(Frame { pd, walk, cpos, ab })
    }

    fn slot_vertex(&self, t: usize) -> Vertex {
        self.walk[(self.cpos + 1 + 2 * t) % self.walk.len()]
    }

    fn slots(&self) -> usize {
        self.walk.len() / 2
    }

    fn order(&self, s: &Placement) -> Vec<Label> {
        (0..self.slots()).map(|t| s.owner(self.slot_vertex(t)).unwrap()).collect()
    }

    fn at(&self, s: &Placement, label: Label, t: usize) -> bool {
        s.exposed() == self.pd.c && s.owner(self.slot_vertex(t)) == Some(label)
    }

    fn normal(&self, s: &Placement) -> bool {
        s.exposed() == self.pd.c && crate::placement::is_aligned_with_cycle(s, &self.walk)
    }

    /// Exchanges the labels in slots `ab - 1` and `ab`; normal form in and out.
    fn swap_here(&self, run: &mut Run) -> Result<()> {
        let pd = self.pd;
        let x = run.state.owner(self.slot_vertex(self.ab - 1)).unwrap();
        let y = run.state.owner(pd.a).unwrap();
        let expected = run.state.with_swapped(x, y);
        if pd.p1.len() == 3 {
            let v = pd.p1[1];
            let sub = run.g.induced(&[pd.a, pd.b, pd.c, pd.d, v]);
            bfs_within(run, &sub, &expected)?;
        } else {
            let v3 = pd.p1[1];
            run.apply(SlideMove { label: y, kept: pd.b, dest: pd.c })?;
            let c1 = pd.p1.clone();
            run.rotate_until(&c1, |s| s.piece(x) == Edge::new(pd.d, v3) && s.exposed() == pd.a)?;
            let mut c2 = pd.p1.clone();
            c2.extend([pd.b, pd.c]);
            run.rotate_until(&c2, |s| *s == expected)?;
        }
        if run.state != expected {
            return Err(Error::Internal("swap left other pieces displaced".into()));
        }
        Ok(())
    }
}

fn check_host(g: &TriGridGraph) -> Result<()> {
    if g.is_star_of_david() {
        return Err(Error::Precondition("the hexagram graph is excluded".into()));
    }
    if !g.is_locally_connected() {
        return Err(Error::Precondition("graph is not locally connected".into()));
    }
    Ok(())
}

fn align_in(run: &mut Run, h: &HamiltonCycle) -> Result<()> {
    let d = h.to_decomposition(run.g);
    align_run(run, &d)
}

/// Moves every piece onto `h`, leaving the exposed vertex on it.
pub fn align_with_hamilton(g: &Graph, p: &Placement, h: &HamiltonCycle) -> Result<SlideSequence> {
    if !g.is_two_connected() {
        return Err(Error::Precondition("graph is not 2-connected".into()));
    }
    let mut run = Run::new(g, p.clone());
    align_in(&mut run, h)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

/// Exchanges the labels in slots `j` and `j + 1` (counted from the successor of `c`).
///
/// `p` must be aligned with `pd.cycle` with `c` exposed; every other piece
/// ends where it started.
pub fn swap_adjacent(g: &Graph, p: &Placement, j: usize, pd: &ParityDiamond) -> Result<SlideSequence> {
    let f = Frame::new(pd)?;
    if !f.normal(p) {
        return Err(Error::NotAligned("placement must be aligned with c exposed".into()));
    }
    let k = f.slots();
    if k < 2 {
        return Err(Error::InvalidParams("need two pieces to swap".into()));
    }
    let order = f.order(p);
    let (x, y) = (order[j % k], order[(j + 1) % k]);
    let expected = p.with_swapped(x, y);
    let mut run = Run::new(g, p.clone());
    run.rotate_until(&f.walk, |s| f.at(s, x, f.ab - 1))?;
    f.swap_here(&mut run)?;
    run.rotate_until(&f.walk, |s| *s == expected)?;
    Ok(SlideSequence { start: p.clone(), moves: run.moves })
}

fn plan_with(g: &Graph, pd: Option<&ParityDiamond>, h: &HamiltonCycle, p: &Placement, q: &Placement) -> Result<(SlideSequence, TraceEntry)> {
    let mut trace = TraceEntry { level: 0, calls: 1, hamiltonian: true, loaded: p.len(), ..Default::default() };
    let mut run = Run::new(g, p.clone());
    align_in(&mut run, h)?;
    let mut tr = Run::new(g, q.clone());
    align_in(&mut tr, h)?;
    let Some(pd) = pd else {
        // at most one piece: rotation alone reaches every aligned target
        run.rotate_until(h.order(), |s| *s == tr.state)?;
        let back = SlideSequence { start: q.clone(), moves: tr.moves }.reversed(g)?;
        run.apply_all(back.moves)?;
        return Ok((SlideSequence { start: p.clone(), moves: run.moves }, trace));
    };
    let f = Frame::new(pd)?;
    trace.ear_len = pd.p1.len() - 1;
    run.rotate_until(&f.walk, |s| s.exposed() == pd.c)?;
    tr.rotate_until(&f.walk, |s| s.exposed() == pd.c)?;
    let target = tr.state.clone();
    let back = SlideSequence { start: q.clone(), moves: tr.moves }.reversed(g)?;
    let want = f.order(&target);
    let k = f.slots();
    for j in 1..k {
        loop {
            let cur = f.order(&run.state);
            let sp = cur.iter().position(|&l| l == want[j - 1]).unwrap();
            let st = cur.iter().position(|&l| l == want[j]).unwrap();
            if st == (sp + 1) % k {
                break;
            }
            let x = cur[(st + k - 1) % k];
            let lt = want[j];
            run.rotate_until(&f.walk, |s| f.at(s, x, f.ab - 1) && f.at(s, lt, f.ab))?;
            f.swap_here(&mut run)?;
            trace.swaps += 1;
        }
    }
    run.rotate_until(&f.walk, |s| *s == target)?;
    run.apply_all(back.moves)?;
    debug!("hamilton plan used {} swaps", trace.swaps);
    Ok((SlideSequence { start: p.clone(), moves: run.moves }, trace))
}

/// Plans `p -> q` with an explicit diamond and its cycle.
pub fn plan_hamilton_with(g: &Graph, pd: &ParityDiamond, p: &Placement, q: &Placement) -> Result<PlanReport> {
    if !pd.is_valid(g) {
        return Err(Error::Precondition("diamond does not meet the parity conditions".into()));
    }
    finish(g, plan_with(g, Some(pd), &pd.cycle, p, q)?, q)
}

fn finish(g: &Graph, (sequence, trace): (SlideSequence, TraceEntry), q: &Placement) -> Result<PlanReport> {
    let report = verify_sequence(g, &sequence, Some(q))?;
    if report.matches_expected != Some(true) {
        return Err(Error::Internal("plan does not reach the target".into()));
    }
    Ok(PlanReport::new(sequence, Strategy::Hamilton, vec![trace]))
}

/// Plans `p -> q` on a locally connected grid other than the hexagram.
pub fn plan_hamilton(g: &TriGridGraph, p: &Placement, q: &Placement) -> Result<PlanReport> {
    check_host(g)?;
    let h = find_hamilton(g)?;
    if p.len() < 2 {
        return finish(g, plan_with(g, None, &h, p, q)?, q);
    }
    let pd = find_local_structure(g, &h)?;
    finish(g, plan_with(g, Some(&pd), &pd.cycle, p, q)?, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, hexagon_patch, build_graph, Instance};
    use crate::oracle;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn pentagon_all_pairs() {
        let g = generate(&Instance::Pentagon).unwrap();
        let all = oracle::all_placements(&g);
        for p in &all {
            let comp = oracle::bfs_component(&g, p, oracle::Budget::default()).unwrap();
            for q in &all {
                let rep = plan_hamilton(&g, p, q).unwrap();
                assert!(rep.slide_count >= comp.distance_to(&g, q).unwrap());
            }
        }
    }

    #[test]
    fn triangle_rotates_only() {
        let g = generate(&Instance::Triangle).unwrap();
        let all = oracle::all_placements(&g);
        let rep = plan_hamilton(&g, &all[0], &all[2]).unwrap();
        assert_eq!(rep.sequence.end(&g).unwrap(), all[2]);
    }

    #[test]
    fn swap_is_a_transposition() {
        let g = build_graph(&hexagon_patch(2)[..15]).unwrap();
        let h = find_hamilton(&g).unwrap();
        let pd = find_local_structure(&g, &h).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        let p = Placement::random(&g, &mut rng).unwrap();
        let mut run = Run::new(&g, p);
        align_in(&mut run, &pd.cycle).unwrap();
        let f = Frame::new(&pd).unwrap();
        run.rotate_until(&f.walk, |s| s.exposed() == pd.c).unwrap();
        let before = run.state.clone();
        for j in 0..f.slots() {
            let seq = swap_adjacent(&g, &before, j, &pd).unwrap();
            let after = seq.end(&g).unwrap();
            let (o1, o2) = (f.order(&before), f.order(&after));
            let diff: Vec<usize> = (0..o1.len()).filter(|&i| o1[i] != o2[i]).collect();
            assert_eq!(diff.len(), 2);
            assert_eq!(after.exposed(), pd.c);
        }
    }

    #[test]
    fn hexagram_refused() {
        let g = generate(&Instance::StarOfDavid).unwrap();
        let m = crate::matching::maximum_matching(&g);
        let p = Placement::new(&g, m.edges()).unwrap();
        assert!(matches!(plan_hamilton(&g, &p, &p), Err(Error::Precondition(_))));
    }
}
