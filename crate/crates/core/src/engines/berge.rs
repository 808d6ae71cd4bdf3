//! Berge's sequential transversal construction.
//!
//! After processing sets `S1..Si` the working collection `T` holds exactly
//! the minimal hitting sets of that prefix. Processing `S(i+1)` keeps the
//! members of `T` that already hit it and extends every other member `t` by
//! each `x ∈ S(i+1)`, discarding extensions that are supersets of another
//! member of the new collection.
//!
//! The superset test is carried out through critical sets: `t ∪ {x}` is
//! non-minimal exactly when some `y ∈ t` has lost every set of the prefix
//! that `t ∪ {x}` hits only at `y`. Two distinct `t` never yield the same
//! extension because neither contains `x`.

use std::time::Instant;

use super::{EmitSink, EngineError, Flow};
use crate::family::{canonicalize, SetFamily};
use crate::result::EngineStats;
use crate::set::ElementSet;

pub const DEFAULT_BERGE_CAP: usize = 10_000_000;

#[derive(Debug, Clone)]
pub struct BergeOptions {
    /// Upper bound on the size of the working collection.
    pub cap: usize,
    /// Process sets by ascending cardinality instead of input order.
    pub sort_by_size: bool,
}

impl Default for BergeOptions {
    fn default() -> Self {
        BergeOptions {
            cap: DEFAULT_BERGE_CAP,
            sort_by_size: false,
        }
    }
}

/// Runs the construction and emits the final collection in canonical order.
/// `decisions` counts processed sets (one minimization pass each).
pub fn enumerate_berge(
    family: &SetFamily,
    sink: &mut dyn EmitSink,
    options: &BergeOptions,
) -> Result<EngineStats, EngineError> {
    let start = Instant::now();
    let mut stats = EngineStats {
        engine: "berge",
        ..Default::default()
    };
    let transversals = run(family, options, sink, &mut stats, &mut |_, _| {})?;
    if let Some(transversals) = transversals {
        for t in &transversals {
            stats.emitted += 1;
            if sink.emit(t) == Flow::Stop {
                break;
            }
        }
    }
    stats.wall_time = start.elapsed();
    Ok(stats)
}

/// Calls `observer(i, T)` after each of the `i = 1..=m` sets is processed,
/// with `T` in canonical order. Returns the final collection.
pub fn berge_prefix_trace(
    family: &SetFamily,
    options: &BergeOptions,
    observer: &mut dyn FnMut(usize, &[ElementSet]),
) -> Result<Vec<ElementSet>, EngineError> {
    let mut stats = EngineStats::default();
    let mut never_stop = |_: &ElementSet| Flow::Continue;
    let out = run(family, options, &mut never_stop, &mut stats, &mut |i, t| {
        observer(i, &canonicalize(t.to_vec()))
    })?;
    Ok(out.expect("unstoppable sink"))
}

// Returns None when the sink asked to stop mid-construction.
fn run(
    family: &SetFamily,
    options: &BergeOptions,
    sink: &mut dyn EmitSink,
    stats: &mut EngineStats,
    observer: &mut dyn FnMut(usize, &[ElementSet]),
) -> Result<Option<Vec<ElementSet>>, EngineError> {
    let ordered;
    let family = if options.sort_by_size {
        ordered = family.sorted_by_size();
        &ordered
    } else {
        family
    };
    let universe = family.universe_size();
    let sets = family.sets();
    let mut current = vec![ElementSet::empty(universe)];
    let mut witnessed = ElementSet::empty(universe);
    for (i, set) in sets.iter().enumerate() {
        if sink.poll() == Flow::Stop {
            return Ok(None);
        }
        stats.decisions += 1;
        let prefix = &sets[..i];
        let mut next = Vec::with_capacity(current.len());
        let mut extend = Vec::new();
        for t in current {
            if t.intersects(set) {
                next.push(t);
            } else {
                extend.push(t);
            }
        }
        for (n, t) in extend.iter().enumerate() {
            if n % 256 == 0 && sink.poll() == Flow::Stop {
                return Ok(None);
            }
            for x in set {
                let candidate = t.with(x);
                if still_minimal(prefix, t, &candidate, &mut witnessed) {
                    next.push(candidate);
                    if next.len() > options.cap {
                        return Err(EngineError::BudgetExceeded { cap: options.cap });
                    }
                }
            }
        }
        current = next;
        observer(i + 1, &current);
    }
    Ok(Some(canonicalize(current)))
}

// Every member of `t` must keep a prefix set that `candidate` hits only there.
fn still_minimal(
    prefix: &[ElementSet],
    t: &ElementSet,
    candidate: &ElementSet,
    witnessed: &mut ElementSet,
) -> bool {
    witnessed.clear();
    let needed = t.len();
    let mut found = 0;
    for s in prefix {
        if let Some(y) = s.sole_common(candidate) {
            if witnessed.insert(y) {
                found += 1;
                if found == needed {
                    return true;
                }
            }
        }
    }
    found == needed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_mhs;
    use crate::testutil::{ids, random_family, running_example};

    #[test]
    fn running_example_prefixes() {
        let f = running_example();
        let mut trace = Vec::new();
        let out = berge_prefix_trace(&f, &BergeOptions::default(), &mut |i, t| {
            trace.push((i, ids(&f, t)))
        })
        .unwrap();
        assert_eq!(
            trace,
            vec![
                (1, vec![vec![1], vec![2]]),
                (2, vec![vec![1, 3], vec![2, 3]]),
                (3, vec![vec![1, 3], vec![2, 3]]),
            ]
        );
        assert_eq!(ids(&f, &out), vec![vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn single_set() {
        let f = SetFamily::from_id_sets([[5]]).unwrap();
        let out = berge_prefix_trace(&f, &BergeOptions::default(), &mut |_, _| {}).unwrap();
        assert_eq!(ids(&f, &out), vec![vec![5]]);
    }

    #[test]
    fn prefix_invariant_against_oracle() {
        for seed in 0..150 {
            let f = random_family(seed, 10, 8, 4);
            berge_prefix_trace(&f, &BergeOptions::default(), &mut |i, t| {
                let prefix = f.prefix(i);
                let expected: Vec<_> = brute_force_mhs(&prefix)
                    .unwrap()
                    .mhses
                    .iter()
                    .map(|h| prefix.names_of(h))
                    .collect();
                assert_eq!(ids(&f, t), expected, "seed {seed} prefix {i}");
            })
            .unwrap();
        }
    }

    #[test]
    fn sorted_order_same_result() {
        for seed in 0..100 {
            let f = random_family(seed, 10, 10, 5);
            let sorted = BergeOptions {
                sort_by_size: true,
                ..Default::default()
            };
            let a = berge_prefix_trace(&f, &BergeOptions::default(), &mut |_, _| {}).unwrap();
            let b = berge_prefix_trace(&f, &sorted, &mut |_, _| {}).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cap_is_enforced() {
        // five disjoint pairs: 32 transversals at the end
        let sets: Vec<Vec<u32>> = (0..5).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let f = SetFamily::from_id_sets(sets).unwrap();
        let tight = BergeOptions {
            cap: 31,
            ..Default::default()
        };
        let err = berge_prefix_trace(&f, &tight, &mut |_, _| {}).unwrap_err();
        assert_eq!(err, EngineError::BudgetExceeded { cap: 31 });
        let ok = BergeOptions {
            cap: 32,
            ..Default::default()
        };
        assert_eq!(
            berge_prefix_trace(&f, &ok, &mut |_, _| {}).unwrap().len(),
            32
        );
    }
}
