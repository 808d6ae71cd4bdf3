use std::time::Duration;

use crate::set::ElementSet;

/// Counters reported by an enumeration run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub engine: &'static str,
    pub wall_time: Duration,
    /// Engine-specific work counter: model-finder calls for `blocking`,
    /// search nodes for `mmcs`, minimization passes for `berge`.
    pub decisions: u64,
    pub emitted: u64,
}

/// Minimum-weight members among a filtered result.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub weight: f64,
    pub members: Vec<ElementSet>,
}

/// Minimal hitting sets in canonical order, plus run statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationResult {
    pub mhses: Vec<ElementSet>,
    pub stats: EngineStats,
    /// Set when enumeration stopped early (emission limit or cancellation).
    pub partial: bool,
    pub optimum: Option<Optimum>,
}

impl EnumerationResult {
    pub fn len(&self) -> usize {
        self.mhses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mhses.is_empty()
    }
}
