//! SVG drawings of graphs, placements and plans.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::Result;
use crate::graph::Vertex;
use crate::grid::TriGridGraph;
use crate::placement::{Placement, SlideSequence};

const SCALE: f64 = 60.0;
const MARGIN: f64 = 40.0;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// Lattice positions, or a circle for abstract graphs.
fn layout(g: &TriGridGraph) -> Vec<(f64, f64)> {
    let n = g.vertex_count();
    if g.is_lattice() {
        g.vertices().map(|v| g.cartesian(v).unwrap()).collect()
    } else {
        let r = n as f64 / TAU;
        (0..n).map(|i| (r * (TAU * i as f64 / n as f64).cos(), r * (TAU * i as f64 / n as f64).sin())).collect()
    }
}

struct Canvas {
    pos: Vec<(f64, f64)>,
    width: f64,
    height: f64,
}

impl Canvas {
    fn new(g: &TriGridGraph) -> Canvas {
        let raw = layout(g);
        let minx = raw.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
        let maxx = raw.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        let miny = raw.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let maxy = raw.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        // y grows downwards in SVG
        let pos = raw.iter().map(|&(x, y)| (MARGIN + (x - minx) * SCALE, MARGIN + (maxy - y) * SCALE)).collect();
        Canvas { pos, width: 2.0 * MARGIN + (maxx - minx) * SCALE, height: 2.0 * MARGIN + (maxy - miny) * SCALE }
    }

    fn line(&self, out: &mut String, a: Vertex, b: Vertex, style: &str) {
        let (p, q) = (self.pos[a], self.pos[b]);
        writeln!(out, r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" {style}/>"#, p.0, p.1, q.0, q.1).unwrap();
    }
}

/// One drawing; pieces are thick coloured edges, the exposed vertex is hollow.
pub fn render_svg(g: &TriGridGraph, p: Option<&Placement>, caption: Option<&str>) -> Result<String> {
    let c = Canvas::new(g);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.2} {:.2}">"#,
        c.width, c.height, c.width, c.height
    )
    .unwrap();
    writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for e in g.edges() {
        c.line(&mut out, e.u(), e.v(), r##"stroke="#bbbbbb" stroke-width="2""##);
    }
    if let Some(p) = p {
        for (label, e) in p.pieces().iter().enumerate() {
            let color = PALETTE[label % PALETTE.len()];
            c.line(&mut out, e.u(), e.v(), &format!(r#"stroke="{color}" stroke-width="9" stroke-linecap="round""#));
            let (a, b) = (c.pos[e.u()], c.pos[e.v()]);
            writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle" fill="black">{}</text>"#,
                (a.0 + b.0) / 2.0,
                (a.1 + b.1) / 2.0 - 8.0,
                label + 1
            )
            .unwrap();
        }
    }
    for v in g.vertices() {
        let (x, y) = c.pos[v];
        let exposed = p.is_some_and(|p| p.exposed() == v);
        let fill = if exposed { "white" } else { "#333333" };
        writeln!(out, r##"  <circle cx="{x:.2}" cy="{y:.2}" r="6" fill="{fill}" stroke="#333333" stroke-width="2"/>"##).unwrap();
    }
    if let Some(text) = caption {
        writeln!(out, r#"  <text x="8" y="18" font-size="14">{text}</text>"#).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// One frame per state of the sequence, start included.
pub fn render_frames(g: &TriGridGraph, seq: &SlideSequence) -> Result<Vec<String>> {
    let mut state = seq.start.clone();
    let total = seq.moves.len();
    let mut frames = vec![render_svg(g, Some(&state), Some(&format!("0/{total}")))?];
    for (i, mv) in seq.moves.iter().enumerate() {
        state = crate::placement::slide(g, &state, *mv)?;
        frames.push(render_svg(g, Some(&state), Some(&format!("{}/{total}", i + 1)))?);
    }
    Ok(frames)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{generate, Instance};

    #[test]
    fn deterministic_output() {
        let g = generate(&Instance::Hexagon).unwrap();
        let a = render_svg(&g, None, None).unwrap();
        assert_eq!(a, render_svg(&g, None, None).unwrap());
        assert_eq!(a.matches("<line").count(), g.edge_count());
        assert_eq!(a.matches("<circle").count(), 7);
    }

    #[test]
    fn frames_per_slide() {
        let g = generate(&Instance::Triangle).unwrap();
        let p = Placement::new(&g, vec![crate::graph::Edge::new(0, 1)]).unwrap();
        let seq = crate::placement::expose(&g, &p, 0).unwrap();
        assert_eq!(render_frames(&g, &seq).unwrap().len(), seq.len() + 1);
    }
}
