//! Hamilton cycle, dual forests and a plan on a locally connected grid.

use rand::rngs::StdRng;
use rand::SeedableRng;
use trigrid::grid::{build_graph, hexagon_patch};
use trigrid::hamilton::{dual_forests, find_hamilton, find_local_structure, Side};
use trigrid::hc_planner::plan_hamilton;
use trigrid::placement::Placement;

fn main() -> trigrid::Result<()> {
    let g = build_graph(&hexagon_patch(2)[..17])?;
    let h = find_hamilton(&g)?;
    println!("{h}");
    let f = dual_forests(&g, &h)?;
    for side in [Side::Outer, Side::Inner] {
        println!("{side:?}: {} trees, max degree {}", f.components(side).len(), f.max_degree(side));
    }
    let pd = find_local_structure(&g, &h)?;
    println!("diamond a={} b={} c={} d={} ({:?}, {:?})", pd.a + 1, pd.b + 1, pd.c + 1, pd.d + 1, pd.case, pd.route);
    let mut rng = StdRng::seed_from_u64(3);
    let p = Placement::random(&g, &mut rng)?;
    let q = Placement::random(&g, &mut rng)?;
    let rep = plan_hamilton(&g, &p, &q)?;
    println!("{} slides, {} swaps", rep.slide_count, rep.trace[0].swaps);
    Ok(())
}
