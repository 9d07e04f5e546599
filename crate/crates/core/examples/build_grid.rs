//! Builds a grid with a hole and prints its structure.

use trigrid::grid::{build_graph, hexagon_patch, LatticePoint};

fn main() -> trigrid::Result<()> {
    let pts: Vec<LatticePoint> = hexagon_patch(2).into_iter().filter(|p| *p != LatticePoint::new(0, 0)).collect();
    // 18 points is even, so drop one corner as well
    let pts: Vec<LatticePoint> = pts.into_iter().filter(|p| *p != LatticePoint::new(2, 0)).collect();
    let g = build_graph(&pts)?;
    println!("vertices {} edges {} triangles {}", g.vertex_count(), g.edge_count(), g.triangles()?.len());
    for h in g.holes()? {
        println!("hole of length {}", h.vertices.len());
    }
    println!("inner edges {}", g.inner_edges()?.len());
    println!("2-connected {} locally connected {}", g.is_two_connected(), g.is_locally_connected());
    println!("degree-6 vertices {:?}", g.degree6_vertices());
    Ok(())
}
