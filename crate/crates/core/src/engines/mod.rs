//! Minimal hitting set enumeration engines.
//!
//! Three independent algorithms share one streaming interface:
//!
//! * [`blocking`] finds a model of the monotone clause system, shrinks it to a
//!   minimal hitting set, and blocks it before asking again.
//! * [`berge`] builds the transversals of each prefix of the family in turn.
//! * [`mmcs`] grows partial transversals depth first while every chosen element
//!   keeps a critical set.
//!
//! Emission order differs between engines; only the canonical form of the
//! collected output is shared.

pub mod berge;
pub mod blocking;
mod dpll;
pub mod mmcs;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::family::{canonicalize, ElementId, SetFamily};
use crate::result::{EnumerationResult, Optimum};
use crate::set::ElementSet;

pub use berge::{berge_prefix_trace, enumerate_berge, BergeOptions, DEFAULT_BERGE_CAP};
pub use blocking::enumerate_blocking;
pub use mmcs::enumerate_mmcs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineKind {
    Blocking,
    Berge,
    Mmcs,
}

impl EngineKind {
    pub const ALL: [EngineKind; 3] = [EngineKind::Blocking, EngineKind::Berge, EngineKind::Mmcs];

    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Blocking => "blocking",
            EngineKind::Berge => "berge",
            EngineKind::Mmcs => "mmcs",
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown engine `{0}` (expected blocking, berge or mmcs)")]
pub struct UnknownEngine(pub String);

impl FromStr for EngineKind {
    type Err = UnknownEngine;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "blocking" => Ok(EngineKind::Blocking),
            "berge" => Ok(EngineKind::Berge),
            "mmcs" => Ok(EngineKind::Mmcs),
            other => Err(UnknownEngine(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("intermediate transversal collection exceeded its cap of {cap}")]
    BudgetExceeded { cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// Receives minimal hitting sets as an engine produces them.
///
/// `emit` is called once per distinct set. Returning [`Flow::Stop`] from
/// either method ends the run; engines call `poll` at branch points so
/// deadline checks can interrupt long searches between emissions.
pub trait EmitSink {
    fn emit(&mut self, mhs: &ElementSet) -> Flow;

    fn poll(&mut self) -> Flow {
        Flow::Continue
    }
}

impl<F: FnMut(&ElementSet) -> Flow> EmitSink for F {
    fn emit(&mut self, mhs: &ElementSet) -> Flow {
        self(mhs)
    }
}

/// Collects (or just counts) emissions, stopping at an optional count or deadline.
#[derive(Debug)]
pub struct CollectSink {
    pub found: Vec<ElementSet>,
    pub count: usize,
    /// When false only `count` is maintained.
    pub store: bool,
    pub limit: Option<usize>,
    pub deadline: Option<Instant>,
    pub hit_limit: bool,
    pub timed_out: bool,
    polls: u32,
}

impl CollectSink {
    pub fn new(limit: Option<usize>, deadline: Option<Instant>) -> Self {
        CollectSink {
            found: Vec::new(),
            count: 0,
            store: true,
            limit,
            deadline,
            hit_limit: false,
            timed_out: false,
            polls: 0,
        }
    }

    pub fn counting(limit: Option<usize>, deadline: Option<Instant>) -> Self {
        CollectSink {
            store: false,
            ..Self::new(limit, deadline)
        }
    }

    fn past_deadline(&mut self) -> bool {
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.timed_out = true;
            }
        }
        self.timed_out
    }
}

impl EmitSink for CollectSink {
    fn emit(&mut self, mhs: &ElementSet) -> Flow {
        self.count += 1;
        if self.store {
            self.found.push(mhs.clone());
        }
        if self.limit.is_some_and(|l| self.count >= l) {
            self.hit_limit = true;
            return Flow::Stop;
        }
        if self.past_deadline() {
            return Flow::Stop;
        }
        Flow::Continue
    }

    fn poll(&mut self) -> Flow {
        if self.limit == Some(0) {
            self.hit_limit = true;
            return Flow::Stop;
        }
        self.polls = self.polls.wrapping_add(1);
        // Instant::now is cheap but not free; sample every 64th branch point.
        if self.polls.is_multiple_of(64) && self.past_deadline() {
            return Flow::Stop;
        }
        Flow::Continue
    }
}

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    pub limit: Option<usize>,
    pub deadline: Option<Instant>,
    pub berge: BergeOptions,
}

/// Runs one engine to completion (or until `limit` sets were emitted) and
/// returns its output in canonical order.
pub fn enumerate(
    family: &SetFamily,
    kind: EngineKind,
    limit: Option<usize>,
) -> Result<EnumerationResult, EngineError> {
    enumerate_with(
        family,
        kind,
        &EnumerateOptions {
            limit,
            ..Default::default()
        },
    )
}

pub fn enumerate_with(
    family: &SetFamily,
    kind: EngineKind,
    options: &EnumerateOptions,
) -> Result<EnumerationResult, EngineError> {
    let mut sink = CollectSink::new(options.limit, options.deadline);
    let stats = run_engine(family, kind, &options.berge, &mut sink)?;
    Ok(EnumerationResult {
        mhses: canonicalize(sink.found),
        stats,
        partial: sink.hit_limit || sink.timed_out,
        optimum: None,
    })
}

/// Dispatches to the engine named by `kind`.
pub fn run_engine(
    family: &SetFamily,
    kind: EngineKind,
    berge: &BergeOptions,
    sink: &mut dyn EmitSink,
) -> Result<crate::result::EngineStats, EngineError> {
    match kind {
        EngineKind::Blocking => Ok(enumerate_blocking(family, sink)),
        EngineKind::Berge => enumerate_berge(family, sink, berge),
        EngineKind::Mmcs => Ok(enumerate_mmcs(family, sink)),
    }
}

/// Non-negative weights keyed by external element identifier.
/// Elements without an entry weigh 1.
pub type Weights = BTreeMap<ElementId, f64>;

/// Restricts a canonical result to sets of at most `size_bound` elements that
/// contain every element of `required`, and reports the minimum-weight
/// survivors when weights are supplied.
///
/// Filtering applies to the minimal hitting sets of the whole family; the
/// survivors are not re-minimized within the constrained space.
/// `required` holds external identifiers; one outside the universe leaves no survivors.
pub fn filter_and_optimize(
    family: &SetFamily,
    result: &EnumerationResult,
    size_bound: Option<usize>,
    required: Option<&[ElementId]>,
    weights: Option<&Weights>,
) -> EnumerationResult {
    let required = match required.map(|ids| family.set_from_names(ids)) {
        Some(Err(_)) => {
            return EnumerationResult {
                mhses: Vec::new(),
                stats: result.stats.clone(),
                partial: result.partial,
                optimum: weights.map(|_| Optimum {
                    weight: 0.0,
                    members: Vec::new(),
                }),
            }
        }
        Some(Ok(set)) => Some(set),
        None => None,
    };
    let mhses: Vec<ElementSet> = result
        .mhses
        .iter()
        .filter(|h| size_bound.is_none_or(|k| h.len() <= k))
        .filter(|h| required.as_ref().is_none_or(|r| r.is_subset(h)))
        .cloned()
        .collect();
    let optimum = weights.map(|w| {
        let weight_of = |h: &ElementSet| -> f64 {
            h.iter()
                .map(|x| w.get(&family.name_of(x)).copied().unwrap_or(1.0))
                .sum()
        };
        let scored: Vec<(f64, &ElementSet)> = mhses.iter().map(|h| (weight_of(h), h)).collect();
        let best = scored.iter().map(|(s, _)| *s).fold(f64::INFINITY, f64::min);
        Optimum {
            weight: if best.is_finite() { best } else { 0.0 },
            members: scored
                .iter()
                .filter(|(s, _)| *s == best)
                .map(|(_, h)| (*h).clone())
                .collect(),
        }
    });
    EnumerationResult {
        mhses,
        stats: result.stats.clone(),
        partial: result.partial,
        optimum,
    }
}

/// Occurrence lists: for each element, the indices of the sets containing it.
pub(crate) fn occurrences(family: &SetFamily) -> Vec<Vec<u32>> {
    let mut occ = vec![Vec::new(); family.universe_size()];
    for (i, s) in family.sets().iter().enumerate() {
        for x in s {
            occ[x].push(i as u32);
        }
    }
    occ
}
