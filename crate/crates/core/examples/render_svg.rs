//! Writes SVG frames of a short plan into a directory (default `frames`).

use std::fs;

use rand::rngs::StdRng;
use rand::SeedableRng;
use trigrid::grid::{generate, Instance};
use trigrid::placement::Placement;
use trigrid::render::render_frames;

fn main() -> trigrid::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "frames".into());
    let g = generate(&Instance::Pentagon)?;
    let mut rng = StdRng::seed_from_u64(1);
    let p = Placement::random(&g, &mut rng)?;
    let q = Placement::random(&g, &mut rng)?;
    let rep = trigrid::ear_planner::plan_ear(&g, &p, &q)?;
    fs::create_dir_all(&dir)?;
    for (i, svg) in render_frames(&g, &rep.sequence)?.iter().enumerate() {
        fs::write(format!("{dir}/frame_{i:04}.svg"), svg)?;
    }
    println!("{} frames in {dir}", rep.slide_count + 1);
    Ok(())
}
