//! Slide reconfiguration of labeled nearly perfect matchings on triangular grid graphs.
//!
//! A placement puts numbered pieces on the edges of a matching that leaves one
//! vertex uncovered. A slide moves a piece `(u, v)` to `(v, w)` where `w` is the
//! uncovered vertex. Two planners build slide sequences between placements:
//! [`ear_planner`] for 2-connected factor-critical graphs and [`hc_planner`] for
//! locally connected ones. [`oracle`] searches small state spaces exhaustively.

pub mod cli;
pub mod ear_planner;
pub mod ears;
pub mod error;
pub mod graph;
pub mod grid;
pub mod hamilton;
pub mod hc_planner;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod placement;
pub mod plan;
pub mod render;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, Vertex};
pub use grid::{build_graph, generate, Instance, LatticePoint, TriGridGraph};
pub use placement::{Placement, SlideMove, SlideSequence};
pub use plan::{PlanReport, Strategy};
