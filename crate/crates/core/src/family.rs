//! Set families, hitting-set predicates and instance statistics.
//!
//! Hitting sets are upward closed: if `h` hits every set then so does every
//! superset of `h`. Minimality therefore only needs single-element removals;
//! if no `h \ {x}` is a hitting set then no smaller subset is either.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::set::ElementSet;

/// External element identifier as read from an instance file.
pub type ElementId = u32;

/// Largest identifier accepted from input (`2^31 - 1`).
pub const MAX_ELEMENT_ID: ElementId = i32::MAX as ElementId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("set {index} is empty; a family containing an empty set has no hitting set")]
    EmptySet { index: usize },
    #[error("set {set} contains element index {element} outside universe of size {universe}")]
    ElementOutOfRange {
        set: usize,
        element: usize,
        universe: usize,
    },
    #[error("element {element} does not occur in any set")]
    UnusedElement { element: usize },
    #[error("element name list has {names} entries for a universe of size {universe}")]
    NameCount { names: usize, universe: usize },
    #[error("element name {name} is assigned to more than one index")]
    DuplicateName { name: ElementId },
}

/// A family of non-empty sets over a dense universe `0..universe_size`.
///
/// Every index in the universe occurs in at least one set, and each index
/// carries the external identifier it was read as.
#[derive(Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe_size: usize,
    sets: Vec<ElementSet>,
    element_names: Vec<ElementId>,
}

impl SetFamily {
    /// Builds a family from sets of external identifiers.
    ///
    /// Identifiers are compacted to dense indices in ascending identifier
    /// order, so dense order and identifier order agree. Duplicate
    /// identifiers within one set collapse.
    pub fn from_id_sets<S, I>(sets: S) -> Result<Self, FamilyError>
    where
        S: IntoIterator<Item = I>,
        I: IntoIterator<Item = ElementId>,
    {
        let raw: Vec<Vec<ElementId>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        if let Some(index) = raw.iter().position(|s| s.is_empty()) {
            return Err(FamilyError::EmptySet { index });
        }
        let mut names: Vec<ElementId> = raw.iter().flatten().copied().collect();
        names.sort_unstable();
        names.dedup();
        let universe_size = names.len();
        let sets = raw
            .iter()
            .map(|s| {
                ElementSet::from_indices(
                    universe_size,
                    s.iter()
                        .map(|id| names.binary_search(id).expect("id collected above")),
                )
            })
            .collect();
        Ok(SetFamily {
            universe_size,
            sets,
            element_names: names,
        })
    }

    /// Builds a family directly over dense indices, naming each index by itself.
    pub fn from_dense(universe_size: usize, sets: Vec<ElementSet>) -> Result<Self, FamilyError> {
        let names = (0..universe_size as ElementId).collect();
        Self::with_names(universe_size, sets, names)
    }

    /// Builds a family over dense indices with explicit external names.
    pub fn with_names(
        universe_size: usize,
        sets: Vec<ElementSet>,
        element_names: Vec<ElementId>,
    ) -> Result<Self, FamilyError> {
        if element_names.len() != universe_size {
            return Err(FamilyError::NameCount {
                names: element_names.len(),
                universe: universe_size,
            });
        }
        let mut seen = std::collections::HashSet::with_capacity(universe_size);
        for &name in &element_names {
            if !seen.insert(name) {
                return Err(FamilyError::DuplicateName { name });
            }
        }
        let mut covered = ElementSet::empty(universe_size);
        let mut normalized = Vec::with_capacity(sets.len());
        for (index, set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(FamilyError::EmptySet { index });
            }
            if let Some(element) = set.iter().find(|&x| x >= universe_size) {
                return Err(FamilyError::ElementOutOfRange {
                    set: index,
                    element,
                    universe: universe_size,
                });
            }
            let set = if set.universe() == universe_size {
                set
            } else {
                ElementSet::from_indices(universe_size, set.iter())
            };
            covered.union_with(&set);
            normalized.push(set);
        }
        if let Some(element) = (0..universe_size).find(|&x| !covered.contains(x)) {
            return Err(FamilyError::UnusedElement { element });
        }
        Ok(SetFamily {
            universe_size,
            sets: normalized,
            element_names,
        })
    }

    /// The family with no sets (and therefore an empty universe).
    pub fn empty() -> Self {
        SetFamily {
            universe_size: 0,
            sets: Vec::new(),
            element_names: Vec::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn element_names(&self) -> &[ElementId] {
        &self.element_names
    }

    pub fn name_of(&self, index: usize) -> ElementId {
        self.element_names[index]
    }

    /// Dense index of an external identifier, if it belongs to the universe.
    pub fn index_of(&self, name: ElementId) -> Option<usize> {
        self.element_names.binary_search(&name).ok().or_else(|| {
            // names built through `with_names` need not be sorted
            self.element_names.iter().position(|&n| n == name)
        })
    }

    /// The family restricted to its first `len` sets, with the universe
    /// recompacted to the elements those sets use.
    pub fn prefix(&self, len: usize) -> SetFamily {
        self.project(self.sets[..len].to_vec())
    }

    /// Drops duplicate sets and sets that are supersets of another set.
    ///
    /// The result has the same minimal hitting sets. Elements that occurred
    /// only in dropped sets leave the universe; surviving sets keep their
    /// relative order.
    pub fn minimized(&self) -> SetFamily {
        let mut keep = Vec::new();
        for (i, s) in self.sets.iter().enumerate() {
            let dominated = self
                .sets
                .iter()
                .enumerate()
                .any(|(j, t)| j != i && t.is_subset(s) && (t != s || j < i));
            if !dominated {
                keep.push(s.clone());
            }
        }
        self.project(keep)
    }

    /// Sets reordered by ascending cardinality (stable).
    pub fn sorted_by_size(&self) -> SetFamily {
        let mut sets = self.sets.clone();
        sets.sort_by_key(|s| s.len());
        SetFamily {
            universe_size: self.universe_size,
            sets,
            element_names: self.element_names.clone(),
        }
    }

    /// Converts an internal set back to ascending external identifiers.
    pub fn names_of(&self, set: &ElementSet) -> Vec<ElementId> {
        let mut ids: Vec<ElementId> = set.iter().map(|i| self.element_names[i]).collect();
        ids.sort_unstable();
        ids
    }

    /// Converts external identifiers to an internal set; unknown ids are returned as `Err`.
    pub fn set_from_names(&self, names: &[ElementId]) -> Result<ElementSet, ElementId> {
        let mut set = ElementSet::empty(self.universe_size);
        for &name in names {
            set.insert(self.index_of(name).ok_or(name)?);
        }
        Ok(set)
    }

    // Keeps external names for the elements `sets` still use.
    fn project(&self, sets: Vec<ElementSet>) -> SetFamily {
        let mut used = ElementSet::empty(self.universe_size);
        for s in &sets {
            used.union_with(s);
        }
        let old_to_new: BTreeMap<usize, usize> = used
            .iter()
            .enumerate()
            .map(|(new, old)| (old, new))
            .collect();
        let universe_size = old_to_new.len();
        let sets = sets
            .iter()
            .map(|s| ElementSet::from_indices(universe_size, s.iter().map(|x| old_to_new[&x])))
            .collect();
        let element_names = used.iter().map(|old| self.element_names[old]).collect();
        SetFamily {
            universe_size,
            sets,
            element_names,
        }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.sets.iter().map(|s| self.names_of(s)))
            .finish()
    }
}

/// True iff `h` intersects every set of the family. Vacuously true for the empty family.
pub fn is_hitting_set(family: &SetFamily, h: &ElementSet) -> bool {
    family.sets.iter().all(|s| s.intersects(h))
}

/// True iff `h` is a hitting set none of whose one-element-smaller subsets is.
pub fn is_minimal_hitting_set(family: &SetFamily, h: &ElementSet) -> bool {
    is_hitting_set(family, h) && h.iter().all(|x| !is_hitting_set(family, &h.without(x)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("candidate is not a hitting set: set {missed} is disjoint from it")]
pub struct NotHittingSet {
    pub missed: usize,
}

/// For each member `x` of the hitting set `h`, the index of the first set
/// `S` with `S ∩ h = {x}`, or `None` when `x` has no such critical set.
///
/// `h` is minimal exactly when every member has a witness.
pub fn critical_witnesses(
    family: &SetFamily,
    h: &ElementSet,
) -> Result<BTreeMap<usize, Option<usize>>, NotHittingSet> {
    let mut witnesses: BTreeMap<usize, Option<usize>> = h.iter().map(|x| (x, None)).collect();
    for (i, s) in family.sets.iter().enumerate() {
        let mut hits = s.iter().filter(|&x| h.contains(x));
        match (hits.next(), hits.next()) {
            (None, _) => return Err(NotHittingSet { missed: i }),
            (Some(x), None) => {
                witnesses.get_mut(&x).expect("x in h").get_or_insert(i);
            }
            _ => {}
        }
    }
    Ok(witnesses)
}

/// Sorts lexicographically by ascending member sequence and removes duplicates.
pub fn canonicalize(mut sets: Vec<ElementSet>) -> Vec<ElementSet> {
    sets.sort();
    sets.dedup();
    sets
}

/// Size measures used to bucket instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceStats {
    pub num_sets: usize,
    pub universe_size: usize,
    /// Mean set cardinality; 0 for a family with no sets.
    pub avg_disjunction: f64,
}

pub fn instance_stats(family: &SetFamily) -> InstanceStats {
    let total: usize = family.sets.iter().map(ElementSet::len).sum();
    let avg_disjunction = if family.sets.is_empty() {
        0.0
    } else {
        total as f64 / family.sets.len() as f64
    };
    InstanceStats {
        num_sets: family.num_sets(),
        universe_size: family.universe_size,
        avg_disjunction,
    }
}
