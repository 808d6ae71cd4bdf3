//! Enumeration of all minimal hitting sets of a set family.
//!
//! A family `S = {S1, …, Sk}` is mapped to the positive disjunctive program
//! with one fact `a1 ∨ … ∨ al` per set; the answer sets of that program are
//! exactly the minimal hitting sets of `S` ([`reduction`]). Three native
//! engines ([`engines`]) enumerate them directly and are cross-checked
//! against an exhaustive oracle ([`oracle`]).
//!
//! ```
//! use minhit::{engines::{enumerate, EngineKind}, io::parse_instance};
//!
//! let family = parse_instance("1 2\n3\n2 3 4\n").unwrap();
//! let result = enumerate(&family, EngineKind::Mmcs, None).unwrap();
//! let ids: Vec<_> = result.mhses.iter().map(|h| family.names_of(h)).collect();
//! assert_eq!(ids, vec![vec![1, 3], vec![2, 3]]);
//! ```

pub mod bench;
pub mod engines;
pub mod family;
pub mod io;
pub mod oracle;
pub mod reduction;
mod result;
pub mod set;

#[cfg(test)]
mod testutil;

pub use family::{
    canonicalize, critical_witnesses, instance_stats, is_hitting_set, is_minimal_hitting_set,
    ElementId, FamilyError, InstanceStats, SetFamily,
};
pub use result::{EngineStats, EnumerationResult, Optimum};
pub use set::ElementSet;
