//! Exhaustive reference enumeration for small universes.

use std::time::Instant;

use thiserror::Error;

use crate::family::{canonicalize, is_minimal_hitting_set, SetFamily};
use crate::result::{EngineStats, EnumerationResult};
use crate::set::ElementSet;

pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("universe of {universe} elements exceeds the oracle cap of {cap}")]
pub struct OracleTooLarge {
    pub universe: usize,
    pub cap: usize,
}

/// Tests every subset of the universe against the minimality predicate.
pub fn brute_force_mhs(family: &SetFamily) -> Result<EnumerationResult, OracleTooLarge> {
    brute_force_mhs_capped(family, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_mhs_capped(
    family: &SetFamily,
    cap: usize,
) -> Result<EnumerationResult, OracleTooLarge> {
    let universe = family.universe_size();
    if universe > cap || universe >= 64 {
        return Err(OracleTooLarge { universe, cap });
    }
    let start = Instant::now();
    let mut found = Vec::new();
    for mask in 0u64..(1u64 << universe) {
        let h = ElementSet::from_indices(universe, (0..universe).filter(|i| mask >> i & 1 == 1));
        if is_minimal_hitting_set(family, &h) {
            found.push(h);
        }
    }
    let mhses = canonicalize(found);
    Ok(EnumerationResult {
        stats: EngineStats {
            engine: "oracle",
            wall_time: start.elapsed(),
            decisions: 1u64 << universe,
            emitted: mhses.len() as u64,
        },
        mhses,
        partial: false,
        optimum: None,
    })
}
