//! Instance corpora shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use trigrid::grid::{build_graph, canonical_form, hexagon_patch, LatticePoint, TriGridGraph};
use trigrid::matching;

/// Odd subsets of the radius-2 patch that contain the unit hexagon, up to symmetry,
/// filtered to 2-connected factor-critical graphs with at most `max_vertices` vertices.
pub fn degree6_corpus(max_vertices: usize) -> Vec<TriGridGraph> {
    let core = hexagon_patch(1);
    let ring: Vec<LatticePoint> = hexagon_patch(2).into_iter().filter(|p| !core.contains(p)).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ring.len()) {
        let extra = mask.count_ones() as usize;
        if extra % 2 == 1 || core.len() + extra > max_vertices {
            continue;
        }
        let mut pts = core.clone();
        pts.extend((0..ring.len()).filter(|i| mask >> i & 1 == 1).map(|i| ring[i]));
        if !seen.insert(canonical_form(&pts)) {
            continue;
        }
        let Ok(g) = build_graph(&pts) else { continue };
        if g.is_two_connected() && matching::is_factor_critical(&g) && !g.degree6_vertices().is_empty() {
            out.push(g);
        }
    }
    out
}

/// Random connected lattice animals grown from the origin, odd order in `sizes`.
pub fn random_animals(seed: u64, sizes: &[usize], per_size: usize) -> Vec<TriGridGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &n in sizes {
        let mut got = 0;
        let mut tries = 0;
        while got < per_size && tries < 10_000 {
            tries += 1;
            let mut pts = vec![LatticePoint::new(0, 0)];
            while pts.len() < n {
                let base = *pts.choose(&mut rng).unwrap();
                let q = *base.neighbors().choose(&mut rng).unwrap();
                if !pts.contains(&q) {
                    pts.push(q);
                }
            }
            let Ok(g) = build_graph(&pts) else { continue };
            if g.is_locally_connected() && !g.is_star_of_david() {
                out.push(g);
                got += 1;
            }
        }
    }
    out
}
