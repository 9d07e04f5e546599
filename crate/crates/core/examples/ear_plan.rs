//! Plans between two random placements with the ear planner.

use rand::rngs::StdRng;
use rand::SeedableRng;
use trigrid::ear_planner::plan_ear;
use trigrid::ears::find_admissible;
use trigrid::grid::{generate, Instance};
use trigrid::io::write_decomposition;
use trigrid::placement::Placement;

fn main() -> trigrid::Result<()> {
    let g = generate(&Instance::Hexagon)?;
    let w = find_admissible(&g)?;
    print!("{}", write_decomposition(&w.decomposition));
    let mut rng = StdRng::seed_from_u64(7);
    let p = Placement::random(&g, &mut rng)?;
    let q = Placement::random(&g, &mut rng)?;
    let rep = plan_ear(&g, &p, &q)?;
    println!("{} slides, within n^(2n): {}", rep.slide_count, rep.budget_n2n_ok);
    for t in &rep.trace {
        println!("  level {} ear {} swaps {}", t.level, t.ear_len, t.swaps);
    }
    Ok(())
}
