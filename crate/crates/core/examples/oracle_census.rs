//! Exhaustive state-space census of small graphs.

use trigrid::grid::{generate, Instance};
use trigrid::oracle::{bfs_component, census, all_placements, Budget};

fn main() -> trigrid::Result<()> {
    let b = Budget::default();
    for (name, inst) in [("pentagon", Instance::Pentagon), ("hexagon", Instance::Hexagon), ("chord_cycle(5,3)", Instance::ChordCycle { n: 5, m: 3 })] {
        let g = generate(&inst)?;
        let c = census(&g, b)?;
        let first = &all_placements(&g)[0];
        let comp = bfs_component(&g, first, b)?;
        println!("{name}: {} placements, components {:?}, eccentricity {}", c.total, c.component_sizes, comp.eccentricity());
    }
    Ok(())
}
