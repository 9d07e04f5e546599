//! Nearly perfect matchings and the factor-critical test.

use trigrid::grid::{generate, Instance};
use trigrid::matching::{is_factor_critical, maximum_matching, near_perfect_matching};

fn main() -> trigrid::Result<()> {
    for (name, inst) in [("hexagon", Instance::Hexagon), ("hexagram", Instance::StarOfDavid)] {
        let g = generate(&inst)?;
        let m = maximum_matching(&g);
        println!("{name}: maximum matching {} edges, factor-critical {}", m.len(), is_factor_critical(&g));
        for v in g.vertices() {
            match near_perfect_matching(&g, v)? {
                Some(m) => println!("  expose {}: {:?}", v + 1, m.edges().iter().map(|e| (e.u() + 1, e.v() + 1)).collect::<Vec<_>>()),
                None => println!("  expose {}: impossible", v + 1),
            }
        }
    }
    Ok(())
}
