//! Rotating pieces around an odd cycle.

use trigrid::graph::Graph;
use trigrid::placement::{closed_form, rotate, Placement, RotationSpec, RotationTarget};

fn main() -> trigrid::Result<()> {
    let m = 9;
    let g = Graph::new(m, (0..m).map(|i| (i, (i + 1) % m)))?;
    let cycle: Vec<usize> = (0..m).collect();
    let form = closed_form(&cycle, &[0, 1, 2, 3], 0, 0)?;
    let p = Placement::new(&g, form.iter().map(|x| x.1).collect())?;
    for target in [RotationTarget::Exposed(6), RotationTarget::Offset { j: 3, h: 1 }] {
        let seq = rotate(&g, &p, &RotationSpec { cycle: cycle.clone(), target })?;
        let end = seq.end(&g)?;
        println!("{target:?}: {} slides, exposed now {}", seq.len(), end.exposed() + 1);
    }
    Ok(())
}
