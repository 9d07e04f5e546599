use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use trigrid::ears::{self, align_with_ears};
use trigrid::grid::{build_graph, LatticePoint, TriGridGraph};
use trigrid::hamilton::{dual_forests, find_hamilton, find_local_structure, Side};
use trigrid::placement::{legal_moves, slide, verify_sequence, Placement, SlideSequence};
use trigrid::{ear_planner, hc_planner, io, matching, oracle, Edge};

fn animal(seed: u64, n: usize) -> Option<TriGridGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut pts = vec![LatticePoint::new(0, 0)];
    while pts.len() < n {
        let base = *pts.choose(&mut rng).unwrap();
        let q = *base.neighbors().choose(&mut rng).unwrap();
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    build_graph(&pts).ok()
}

fn sizes() -> impl Strategy<Value = usize> {
    (1usize..=6).prop_map(|k| 2 * k + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn induced_closure_and_face_census(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n).unwrap();
        let pts = g.points().unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                prop_assert_eq!(g.has_edge(a, b), pts[a].is_adjacent(pts[b]));
            }
        }
        let tri = g.triangles().unwrap();
        let count = |e: Edge| tri.iter().filter(|t| t.contains(&e.u()) && t.contains(&e.v())).count();
        for &e in g.inner_edges().unwrap() {
            prop_assert_eq!(count(e), 2);
        }
        let mut on_boundary = vec![false; g.vertex_count()];
        for w in g.boundary_walks().unwrap() {
            for e in w.edges() {
                prop_assert!(count(e) <= 1);
            }
            w.vertices.iter().for_each(|&v| on_boundary[v] = true);
        }
        for h in g.holes().unwrap() {
            prop_assert!(h.vertices.len() >= 6);
        }
        let interior: Vec<usize> = g.vertices().filter(|&v| !on_boundary[v]).collect();
        prop_assert_eq!(g.degree6_vertices(), interior);
        if g.is_locally_connected() {
            prop_assert!(g.is_two_connected());
        }
    }

    #[test]
    fn maximum_matching_is_maximum(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n.min(11)).unwrap();
        let m = matching::maximum_matching(&g);
        let mut seen = BTreeSet::new();
        for e in m.edges() {
            prop_assert!(g.contains_edge(e));
            prop_assert!(seen.insert(e.u()) && seen.insert(e.v()));
        }
        prop_assert_eq!(m.len(), matching::maximum_matching_size_exhaustive(&g));
        for v in g.vertices() {
            if let Some(nm) = matching::near_perfect_matching(&g, v).unwrap() {
                prop_assert_eq!(nm.exposed(), vec![v]);
            }
        }
    }

    #[test]
    fn slides_are_reversible(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n).unwrap();
        let mut rng = StdRng::seed_from_u64(seed ^ 1);
        let Ok(mut p) = Placement::random(&g, &mut rng) else { return Ok(()) };
        let mut seq = SlideSequence::new(p.clone());
        for _ in 0..30 {
            let moves = legal_moves(&g, &p);
            let Some(&mv) = moves.choose(&mut rng) else { break };
            let q = slide(&g, &p, mv).unwrap();
            prop_assert_eq!(slide(&g, &q, p.reverse_of(mv)).unwrap(), p.clone());
            // cached exposed vertex agrees with the pieces
            prop_assert_eq!(q.matching().exposed(), vec![q.exposed()]);
            seq.moves.push(mv);
            p = q;
        }
        let back = seq.reversed(&g).unwrap();
        prop_assert_eq!(back.end(&g).unwrap(), seq.start.clone());
        prop_assert_eq!(verify_sequence(&g, &seq, Some(&p)).unwrap().matches_expected, Some(true));
    }

    #[test]
    fn ear_decompositions_and_alignment(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n).unwrap();
        prop_assume!(g.is_two_connected() && matching::is_factor_critical(&g));
        let m = matching::near_perfect_matching(&g, 0).unwrap().unwrap();
        let d = ears::ear_decomposition(&g, &m).unwrap();
        prop_assert!(d.validate(&g, true).is_ok());
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Placement::random(&g, &mut rng).unwrap();
        let seq = align_with_ears(&g, &p, &d).unwrap();
        prop_assert!(ears::is_aligned(&seq.end(&g).unwrap(), &d));
    }

    #[test]
    fn ear_plans_verify(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n).unwrap();
        prop_assume!(g.is_two_connected() && matching::is_factor_critical(&g));
        prop_assume!(ears::find_admissible(&g).is_ok());
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Placement::random(&g, &mut rng).unwrap();
        let q = Placement::random(&g, &mut rng).unwrap();
        let rep = ear_planner::plan_ear(&g, &p, &q).unwrap();
        prop_assert_eq!(verify_sequence(&g, &rep.sequence, Some(&q)).unwrap().matches_expected, Some(true));
        prop_assert!(rep.budget_n2n_ok);
    }

    #[test]
    fn hamilton_structures(seed in any::<u64>(), n in (2usize..=12).prop_map(|k| 2 * k + 1)) {
        let g = animal(seed, n).unwrap();
        prop_assume!(g.is_locally_connected() && !g.is_star_of_david());
        let h = find_hamilton(&g).unwrap();
        let f = dual_forests(&g, &h).unwrap();
        for side in [Side::Outer, Side::Inner] {
            prop_assert!(f.is_forest(side));
            prop_assert!(f.max_degree(side) <= 3);
        }
        prop_assert!(f.largest_component() >= 2);
        let pd = find_local_structure(&g, &h).unwrap();
        prop_assert!(pd.is_valid(&g));
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Placement::random(&g, &mut rng).unwrap();
        let q = Placement::random(&g, &mut rng).unwrap();
        let rep = hc_planner::plan_hamilton(&g, &p, &q).unwrap();
        prop_assert_eq!(rep.sequence.end(&g).unwrap(), q);
    }

    #[test]
    fn oracle_symmetry_and_lower_bound(seed in any::<u64>(), n in (2usize..=4).prop_map(|k| 2 * k + 1)) {
        let g = animal(seed, n).unwrap();
        prop_assume!(g.is_two_connected() && matching::is_factor_critical(&g));
        let mut rng = StdRng::seed_from_u64(seed);
        let p = Placement::random(&g, &mut rng).unwrap();
        let q = Placement::random(&g, &mut rng).unwrap();
        let b = oracle::Budget::default();
        let cp = oracle::bfs_component(&g, &p, b).unwrap();
        let cq = oracle::bfs_component(&g, &q, b).unwrap();
        prop_assert_eq!(cp.contains(&g, &q), cq.contains(&g, &p));
        prop_assert!(cp.exposed_seen.iter().all(|&x| x));
        if let Ok(rep) = ear_planner::plan_ear(&g, &p, &q) {
            prop_assert!(rep.slide_count >= cp.distance_to(&g, &q).unwrap());
        }
    }

    #[test]
    fn text_round_trips(seed in any::<u64>(), n in sizes()) {
        let g = animal(seed, n).unwrap();
        let back = io::parse_graph(&io::write_graph(&g)).unwrap();
        prop_assert_eq!(back.graph(), g.graph());
        let mut rng = StdRng::seed_from_u64(seed);
        let Ok(p) = Placement::random(&g, &mut rng) else { return Ok(()) };
        prop_assert_eq!(io::parse_placement(&g, &io::write_placement(&p)).unwrap(), p.clone());
        let mut seq = SlideSequence::new(p.clone());
        let mut cur = p;
        for _ in 0..5 {
            let Some(&mv) = legal_moves(&g, &cur).first() else { break };
            cur = slide(&g, &cur, mv).unwrap();
            seq.moves.push(mv);
        }
        prop_assert_eq!(io::parse_sequence(&g, &io::write_sequence(&seq)).unwrap(), seq);
    }
}
