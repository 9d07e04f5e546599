//! Planner output shared by both strategies.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::placement::SlideSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Ear,
    Hamilton,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Ear => "ear",
            Strategy::Hamilton => "hamilton",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "ear" => Ok(Strategy::Ear),
            "hamilton" => Ok(Strategy::Hamilton),
            other => Err(Error::InvalidParams(format!("unknown strategy {other}"))),
        }
    }
}

/// Per-level counters collected while planning.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TraceEntry {
    /// Stage index for the ear planner; 0 for the Hamilton planner.
    pub level: usize,
    pub ear_len: usize,
    /// Pieces placed onto the ear (or the whole cycle).
    pub loaded: usize,
    /// Two-piece exchanges requested at this level.
    pub swaps: usize,
    /// Visits of this level.
    pub calls: usize,
    pub hamiltonian: bool,
}

#[derive(Clone, Debug)]
pub struct PlanReport {
    pub sequence: SlideSequence,
    pub slide_count: usize,
    pub strategy: Strategy,
    /// Whether the plan stays under `n^(2n)` slides.
    pub budget_n2n_ok: bool,
    pub trace: Vec<TraceEntry>,
}

impl PlanReport {
    pub(crate) fn new(sequence: SlideSequence, strategy: Strategy, trace: Vec<TraceEntry>) -> Self {
        let n = sequence.start.len().max(1) as f64;
        let count = sequence.len();
        let budget_n2n_ok = count <= 1 || (count as f64).ln() <= 2.0 * n * n.ln() + 1e-9;
        PlanReport { slide_count: count, sequence, strategy, budget_n2n_ok, trace }
    }
}
