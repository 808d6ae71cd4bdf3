//! A small incremental DPLL model finder with two-watched-literal
//! propagation and chronological backtracking. No clause learning.
//!
//! Decisions pick the lowest-index unassigned variable and try `false`
//! first, so on monotone clause sets propagation does the work of
//! choosing which elements become true.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Lit(u32);

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit((var as u32) << 1)
    }

    pub fn neg(var: usize) -> Lit {
        Lit((var as u32) << 1 | 1)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNASSIGNED: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;

struct Level {
    trail_start: usize,
    decision: Lit,
    flipped: bool,
}

pub(crate) struct ModelFinder {
    num_vars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<u32>>,
    units: Vec<Lit>,
    unsat: bool,
    values: Vec<i8>,
    trail: Vec<Lit>,
    levels: Vec<Level>,
    qhead: usize,
}

impl ModelFinder {
    pub fn new(num_vars: usize) -> Self {
        ModelFinder {
            num_vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            units: Vec::new(),
            unsat: false,
            values: vec![UNASSIGNED; num_vars],
            trail: Vec::new(),
            levels: Vec::new(),
            qhead: 0,
        }
    }

    /// Adds a clause. Must be called between `solve` calls only.
    pub fn add_clause(&mut self, mut lits: Vec<Lit>) {
        lits.sort_unstable_by_key(|l| l.0);
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var() == w[1].var()) {
            // contains x and not x
            return;
        }
        match lits.len() {
            0 => self.unsat = true,
            1 => self.units.push(lits[0]),
            _ => {
                let ci = self.clauses.len() as u32;
                self.watches[lits[0].index()].push(ci);
                self.watches[lits[1].index()].push(ci);
                self.clauses.push(lits);
            }
        }
    }

    /// Searches for a model, returning the set of true variables.
    pub fn solve(&mut self) -> Option<Vec<bool>> {
        if self.unsat {
            return None;
        }
        self.reset();
        for i in 0..self.units.len() {
            let unit = self.units[i];
            match self.value(unit) {
                TRUE => {}
                FALSE => {
                    self.unsat = true;
                    return None;
                }
                _ => self.assign(unit),
            }
        }
        loop {
            if self.propagate() {
                if !self.resolve_conflict() {
                    self.unsat = true;
                    return None;
                }
                continue;
            }
            match (0..self.num_vars).find(|&v| self.values[v] == UNASSIGNED) {
                None => return Some(self.values.iter().map(|&v| v == TRUE).collect()),
                Some(var) => {
                    let decision = Lit::neg(var);
                    self.levels.push(Level {
                        trail_start: self.trail.len(),
                        decision,
                        flipped: false,
                    });
                    self.assign(decision);
                }
            }
        }
    }

    fn reset(&mut self) {
        for lit in self.trail.drain(..) {
            self.values[lit.var()] = UNASSIGNED;
        }
        self.levels.clear();
        self.qhead = 0;
    }

    // Undo to the most recent unflipped decision and take its other branch.
    fn resolve_conflict(&mut self) -> bool {
        while let Some(level) = self.levels.pop() {
            for lit in self.trail.drain(level.trail_start..) {
                self.values[lit.var()] = UNASSIGNED;
            }
            self.qhead = self.trail.len();
            if !level.flipped {
                let flipped = !level.decision;
                self.levels.push(Level {
                    trail_start: self.trail.len(),
                    decision: flipped,
                    flipped: true,
                });
                self.assign(flipped);
                return true;
            }
        }
        false
    }

    #[inline]
    fn value(&self, lit: Lit) -> i8 {
        let v = self.values[lit.var()];
        if lit.is_neg() {
            -v
        } else {
            v
        }
    }

    #[inline]
    fn assign(&mut self, lit: Lit) {
        self.values[lit.var()] = if lit.is_neg() { FALSE } else { TRUE };
        self.trail.push(lit);
    }

    /// Returns true on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let false_lit = !self.trail[self.qhead];
            self.qhead += 1;
            let mut watchers = std::mem::take(&mut self.watches[false_lit.index()]);
            let mut keep = 0;
            let mut conflict = false;
            let mut i = 0;
            while i < watchers.len() {
                let ci = watchers[i] as usize;
                i += 1;
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let other = clause[0];
                let other_value = {
                    let v = self.values[other.var()];
                    if other.is_neg() {
                        -v
                    } else {
                        v
                    }
                };
                if other_value == TRUE {
                    watchers[keep] = ci as u32;
                    keep += 1;
                    continue;
                }
                let values = &self.values;
                let replacement = clause[2..].iter().position(|&l| {
                    let v = values[l.var()];
                    (if l.is_neg() { -v } else { v }) != FALSE
                });
                if let Some(k) = replacement {
                    clause.swap(1, k + 2);
                    let new_watch = clause[1];
                    self.watches[new_watch.index()].push(ci as u32);
                    continue;
                }
                watchers[keep] = ci as u32;
                keep += 1;
                if other_value == FALSE {
                    conflict = true;
                    break;
                }
                self.assign(other);
            }
            while i < watchers.len() {
                watchers[keep] = watchers[i];
                keep += 1;
                i += 1;
            }
            watchers.truncate(keep);
            self.watches[false_lit.index()] = watchers;
            if conflict {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn satisfied(clauses: &[Vec<Lit>], model: &[bool]) -> bool {
        clauses
            .iter()
            .all(|c| c.iter().any(|l| model[l.var()] != l.is_neg()))
    }

    fn brute_sat(n: usize, clauses: &[Vec<Lit>]) -> bool {
        (0u32..1 << n).any(|m| {
            let model: Vec<bool> = (0..n).map(|v| m >> v & 1 == 1).collect();
            satisfied(clauses, &model)
        })
    }

    #[test]
    fn random_formulas_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let n = rng.random_range(1..8);
            let m = rng.random_range(0..20);
            let clauses: Vec<Vec<Lit>> = (0..m)
                .map(|_| {
                    let len = rng.random_range(1..4);
                    (0..len)
                        .map(|_| {
                            let v = rng.random_range(0..n);
                            if rng.random_bool(0.5) {
                                Lit::pos(v)
                            } else {
                                Lit::neg(v)
                            }
                        })
                        .collect()
                })
                .collect();
            let mut finder = ModelFinder::new(n);
            for c in &clauses {
                finder.add_clause(c.clone());
            }
            match finder.solve() {
                Some(model) => assert!(satisfied(&clauses, &model)),
                None => assert!(!brute_sat(n, &clauses), "{clauses:?}"),
            }
        }
    }

    #[test]
    fn incremental_blocking_counts_models() {
        // (a or b), 2 vars: models {a}, {b}, {a,b}
        let mut finder = ModelFinder::new(2);
        finder.add_clause(vec![Lit::pos(0), Lit::pos(1)]);
        let mut count = 0;
        while let Some(model) = finder.solve() {
            count += 1;
            let block = (0..2)
                .map(|v| if model[v] { Lit::neg(v) } else { Lit::pos(v) })
                .collect();
            finder.add_clause(block);
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn empty_clause_is_unsat() {
        let mut finder = ModelFinder::new(1);
        finder.add_clause(Vec::new());
        assert!(finder.solve().is_none());
    }
}
