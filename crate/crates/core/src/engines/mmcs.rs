//! Depth-first minimal transversal search with critical-set pruning
//! (the MMCS scheme from the sparsity-based dualization line of work).
//!
//! The search keeps a partial transversal `h`, the sets it leaves
//! uncovered, and for every member of `h` the number of sets it alone
//! hits. A branch adds one element of a chosen uncovered set and survives
//! only if every member of `h` still has a critical set; a branch with no
//! uncovered sets left is a minimal hitting set.
//!
//! Duplicate avoidance: when branching on the elements of the chosen set in
//! ascending order, each element is dropped from the candidate pool once
//! tried, so later siblings never re-add it.

use std::time::Instant;

use super::{occurrences, EmitSink, Flow};
use crate::family::SetFamily;
use crate::result::EngineStats;
use crate::set::ElementSet;

/// Enumerates by depth-first search. `decisions` counts search nodes.
pub fn enumerate_mmcs(family: &SetFamily, sink: &mut dyn EmitSink) -> EngineStats {
    let start = Instant::now();
    let mut search = Search::new(family);
    let mut stats = EngineStats {
        engine: "mmcs",
        ..Default::default()
    };
    search.descend(sink, &mut stats);
    stats.wall_time = start.elapsed();
    stats
}

struct Search {
    /// Members of every set, concatenated; set `s` is `members_of[bounds[s]..bounds[s + 1]]`.
    members_of: Vec<u32>,
    bounds: Vec<usize>,
    occ: Vec<Vec<u32>>,
    current: ElementSet,
    candidates: ElementSet,
    /// Elements taken out of `candidates` by open branches, restored on unwind.
    tried: Vec<u32>,
    /// |S ∩ h| per set.
    hits: Vec<u32>,
    /// XOR of the members hitting each set; equals the sole hitter when `hits == 1`.
    hitter_xor: Vec<u32>,
    /// Number of sets for which each element is the sole hitter.
    crit: Vec<u32>,
    /// Members of `h` with no critical set.
    uncritical: usize,
    uncovered: Vec<u32>,
    /// Position of each set in `uncovered`, or `u32::MAX` when covered.
    uncovered_pos: Vec<u32>,
}

impl Search {
    fn new(family: &SetFamily) -> Self {
        let n = family.universe_size();
        let m = family.num_sets();
        let mut members_of = Vec::new();
        let mut bounds = vec![0];
        for set in family.sets() {
            members_of.extend(set.iter().map(|x| x as u32));
            bounds.push(members_of.len());
        }
        Search {
            members_of,
            bounds,
            occ: occurrences(family),
            current: ElementSet::empty(n),
            candidates: ElementSet::full(n),
            tried: Vec::new(),
            hits: vec![0; m],
            hitter_xor: vec![0; m],
            crit: vec![0; n],
            uncritical: 0,
            uncovered: (0..m as u32).collect(),
            uncovered_pos: (0..m as u32).collect(),
        }
    }

    /// Returns `Flow::Stop` once the sink asks to stop.
    fn descend(&mut self, sink: &mut dyn EmitSink, stats: &mut EngineStats) -> Flow {
        stats.decisions += 1;
        if sink.poll() == Flow::Stop {
            return Flow::Stop;
        }
        if self.uncovered.is_empty() {
            stats.emitted += 1;
            return sink.emit(&self.current);
        }
        let chosen = self.choose_set();
        let base = self.tried.len();
        let mut flow = Flow::Continue;
        for k in self.bounds[chosen]..self.bounds[chosen + 1] {
            let x = self.members_of[k] as usize;
            if !self.candidates.contains(x) {
                continue;
            }
            self.drop_candidate(x);
            self.add(x);
            if self.uncritical == 0 {
                flow = self.descend(sink, stats);
            }
            self.remove(x);
            if flow == Flow::Stop {
                break;
            }
        }
        // tried elements return to the pool only for the caller
        while self.tried.len() > base {
            let x = self.tried.pop().expect("above base") as usize;
            self.candidates.insert(x);
        }
        flow
    }

    /// Uncovered set with the fewest candidates; lowest index on ties.
    fn choose_set(&self) -> usize {
        self.uncovered
            .iter()
            .map(|&s| {
                let s = s as usize;
                let live = self.members_of[self.bounds[s]..self.bounds[s + 1]]
                    .iter()
                    .filter(|&&x| self.candidates.contains(x as usize))
                    .count();
                (live, s)
            })
            .min()
            .map(|(_, s)| s)
            .expect("called with uncovered sets")
    }

    fn drop_candidate(&mut self, x: usize) {
        self.candidates.remove(x);
        self.tried.push(x as u32);
    }

    fn add(&mut self, x: usize) {
        self.uncritical += 1;
        for k in 0..self.occ[x].len() {
            let s = self.occ[x][k] as usize;
            match self.hits[s] {
                0 => {
                    if self.crit[x] == 0 {
                        self.uncritical -= 1;
                    }
                    self.crit[x] += 1;
                    self.cover(s);
                }
                1 => {
                    let y = self.hitter_xor[s] as usize;
                    self.crit[y] -= 1;
                    if self.crit[y] == 0 {
                        self.uncritical += 1;
                    }
                }
                _ => {}
            }
            self.hits[s] += 1;
            self.hitter_xor[s] ^= x as u32;
        }
        self.current.insert(x);
    }

    fn remove(&mut self, x: usize) {
        self.current.remove(x);
        for k in 0..self.occ[x].len() {
            let s = self.occ[x][k] as usize;
            self.hits[s] -= 1;
            self.hitter_xor[s] ^= x as u32;
            match self.hits[s] {
                0 => {
                    self.crit[x] -= 1;
                    if self.crit[x] == 0 {
                        self.uncritical += 1;
                    }
                    self.uncover(s);
                }
                1 => {
                    let y = self.hitter_xor[s] as usize;
                    if self.crit[y] == 0 {
                        self.uncritical -= 1;
                    }
                    self.crit[y] += 1;
                }
                _ => {}
            }
        }
        self.uncritical -= 1;
    }

    fn cover(&mut self, s: usize) {
        let pos = self.uncovered_pos[s] as usize;
        let last = *self.uncovered.last().expect("set is uncovered");
        self.uncovered.swap_remove(pos);
        if last as usize != s {
            self.uncovered_pos[last as usize] = pos as u32;
        }
        self.uncovered_pos[s] = u32::MAX;
    }

    fn uncover(&mut self, s: usize) {
        self.uncovered_pos[s] = self.uncovered.len() as u32;
        self.uncovered.push(s as u32);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_mhs;
    use crate::testutil::{ids, random_family, running_example};

    fn run(f: &SetFamily) -> Vec<ElementSet> {
        let mut out = Vec::new();
        enumerate_mmcs(f, &mut |h: &ElementSet| {
            out.push(h.clone());
            Flow::Continue
        });
        out
    }

    #[test]
    fn running_example_two_sets() {
        let f = running_example();
        let mut out = run(&f);
        out.sort();
        assert_eq!(ids(&f, &out), vec![vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn pair_gives_singletons() {
        let f = SetFamily::from_id_sets([[1, 2]]).unwrap();
        assert_eq!(ids(&f, &run(&f)), vec![vec![1], vec![2]]);
    }

    #[test]
    fn chooses_smallest_uncovered_set() {
        let f = SetFamily::from_id_sets(vec![vec![1, 2, 3], vec![4], vec![5, 6]]).unwrap();
        let search = Search::new(&f);
        assert_eq!(search.choose_set(), 1);
        let f = SetFamily::from_id_sets(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(Search::new(&f).choose_set(), 0);
    }

    #[test]
    fn matches_oracle_on_random_families() {
        for seed in 0..1000 {
            let f = random_family(seed, 12, 15, 5);
            let mut out = run(&f);
            let n = out.len();
            out.sort();
            out.dedup();
            assert_eq!(out.len(), n, "duplicate emission, seed {seed}");
            assert_eq!(out, brute_force_mhs(&f).unwrap().mhses, "seed {seed}");
        }
    }
}
