//! Iterative model finding with blocking clauses.
//!
//! The clause system has one positive clause per set and one negative
//! clause `¬x1 ∨ … ∨ ¬xk` per emitted minimal hitting set `{x1..xk}`. A
//! negative clause excludes exactly the models containing that set, and no
//! other minimal hitting set contains it, so each model found shrinks to a
//! minimal hitting set that has not been emitted yet.

use std::time::Instant;

use super::dpll::{Lit, ModelFinder};
use super::{occurrences, EmitSink, Flow};
use crate::family::SetFamily;
use crate::result::EngineStats;
use crate::set::ElementSet;

/// Enumerates by repeated model finding. `decisions` counts model-finder
/// calls, which is one per emitted set plus the final unsatisfiable call
/// when the run completes.
pub fn enumerate_blocking(family: &SetFamily, sink: &mut dyn EmitSink) -> EngineStats {
    let start = Instant::now();
    let universe = family.universe_size();
    let occ = occurrences(family);
    let mut finder = ModelFinder::new(universe);
    for set in family.sets() {
        finder.add_clause(set.iter().map(Lit::pos).collect());
    }
    let mut shrinker = Shrinker::new(family, &occ);
    let mut stats = EngineStats {
        engine: "blocking",
        ..Default::default()
    };
    loop {
        if sink.poll() == Flow::Stop {
            break;
        }
        stats.decisions += 1;
        let Some(model) = finder.solve() else { break };
        let model = ElementSet::from_indices(universe, (0..universe).filter(|&v| model[v]));
        let mhs = shrinker.shrink(&model);
        finder.add_clause(mhs.iter().map(Lit::neg).collect());
        stats.emitted += 1;
        if sink.emit(&mhs) == Flow::Stop {
            break;
        }
    }
    stats.wall_time = start.elapsed();
    stats
}

/// Reduces a hitting set to a minimal one by dropping elements in
/// descending index order, keeping any element that is the sole hitter of
/// some set.
pub struct Shrinker<'a> {
    occ: &'a [Vec<u32>],
    hits: Vec<u32>,
}

impl<'a> Shrinker<'a> {
    pub fn new(family: &'a SetFamily, occ: &'a [Vec<u32>]) -> Self {
        Shrinker {
            occ,
            hits: vec![0; family.num_sets()],
        }
    }

    /// `model` must hit every set.
    pub fn shrink(&mut self, model: &ElementSet) -> ElementSet {
        for x in model {
            for &s in &self.occ[x] {
                self.hits[s as usize] += 1;
            }
        }
        debug_assert!(
            self.hits.iter().all(|&h| h > 0),
            "shrink needs a hitting set"
        );
        let mut h = model.clone();
        let members = model.to_vec();
        for &x in members.iter().rev() {
            let critical = self.occ[x].iter().any(|&s| self.hits[s as usize] == 1);
            if !critical {
                h.remove(x);
                for &s in &self.occ[x] {
                    self.hits[s as usize] -= 1;
                }
            }
        }
        for x in &h {
            for &s in &self.occ[x] {
                self.hits[s as usize] = 0;
            }
        }
        h
    }
}
