//! Minimal hitting sets as answer sets of a positive disjunctive program.
//!
//! Each set `{a1, …, al}` of the family becomes the fact `a1 ∨ … ∨ al ←`.
//! An interpretation models the program exactly when the elements it makes
//! true hit every set, and since the program has no negation its reduct is
//! itself, so its answer sets are its subset-minimal models: the minimal
//! hitting sets.

use std::fmt::Write as _;

use thiserror::Error;

use crate::engines::{enumerate, EngineError, EngineKind};
use crate::family::{ElementId, FamilyError, SetFamily, MAX_ELEMENT_ID};
use crate::result::EnumerationResult;
use crate::set::ElementSet;

/// A propositional atom standing for the element with the same dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub usize);

/// `head ← body_pos, not body_neg`, with the head read disjunctively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub head: ElementSet,
    pub body_pos: ElementSet,
    pub body_neg: ElementSet,
}

impl Rule {
    /// A rule with an empty body.
    pub fn fact(head: ElementSet) -> Rule {
        let atoms = head.universe();
        Rule {
            head,
            body_pos: ElementSet::empty(atoms),
            body_neg: ElementSet::empty(atoms),
        }
    }

    pub fn is_fact(&self) -> bool {
        self.body_pos.is_empty() && self.body_neg.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctiveProgram {
    pub atom_count: usize,
    pub rules: Vec<Rule>,
}

/// The set of atoms taken to be true.
pub type Interpretation = ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("rule {rule} has a non-empty body; only disjunctive facts are supported")]
    UnsupportedProgram { rule: usize },
    #[error("program is not the image of a set family: {0}")]
    NotFamilyImage(#[from] FamilyError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// One disjunctive fact per set, over one atom per element.
pub fn dlp(family: &SetFamily) -> DisjunctiveProgram {
    DisjunctiveProgram {
        atom_count: family.universe_size(),
        rules: family.sets().iter().cloned().map(Rule::fact).collect(),
    }
}

/// `M ⊨ P`: every rule has a true head or negative-body atom, or a false
/// positive-body atom.
pub fn satisfies(m: &Interpretation, p: &DisjunctiveProgram) -> bool {
    p.rules
        .iter()
        .all(|r| r.head.intersects(m) || r.body_neg.intersects(m) || !r.body_pos.is_subset(m))
}

/// Drops rules whose negative body meets `m` and strips the negative body
/// from the rest.
pub fn gl_reduct(p: &DisjunctiveProgram, m: &Interpretation) -> DisjunctiveProgram {
    DisjunctiveProgram {
        atom_count: p.atom_count,
        rules: p
            .rules
            .iter()
            .filter(|r| !r.body_neg.intersects(m))
            .map(|r| Rule {
                head: r.head.clone(),
                body_pos: r.body_pos.clone(),
                body_neg: ElementSet::empty(p.atom_count),
            })
            .collect(),
    }
}

/// Answer-set check for programs made of disjunctive facts only.
///
/// Models of such programs are upward closed, so `m` is a minimal model of
/// the reduct as soon as no single atom can be dropped from it.
pub fn is_answer_set(p: &DisjunctiveProgram, m: &Interpretation) -> Result<bool, ReductionError> {
    if let Some(rule) = p.rules.iter().position(|r| !r.is_fact()) {
        return Err(ReductionError::UnsupportedProgram { rule });
    }
    if !satisfies(m, p) {
        return Ok(false);
    }
    let reduct = gl_reduct(p, m);
    Ok(m.iter().all(|a| !satisfies(&m.without(a), &reduct)))
}

/// Recovers the set family whose image `p` is (atoms named by their index).
pub fn family_of(p: &DisjunctiveProgram) -> Result<SetFamily, ReductionError> {
    if let Some(rule) = p.rules.iter().position(|r| !r.is_fact()) {
        return Err(ReductionError::UnsupportedProgram { rule });
    }
    let sets = p.rules.iter().map(|r| r.head.clone()).collect();
    Ok(SetFamily::from_dense(p.atom_count, sets)?)
}

/// Enumerates the answer sets of a family image with a native engine.
pub fn answer_sets_via_engine(
    p: &DisjunctiveProgram,
    engine: EngineKind,
) -> Result<EnumerationResult, ReductionError> {
    let family = family_of(p)?;
    // Dense indices are the atom indices, so the engine's sets already are
    // interpretations.
    Ok(enumerate(&family, engine, None)?)
}

/// ASP-Core-2 text: one `h(N1) | … | h(Nk).` line per rule using the
/// external identifiers, then `#show h/1.`
pub fn emit_asp_core2(p: &DisjunctiveProgram, names: &[ElementId]) -> String {
    let mut out = String::new();
    for rule in &p.rules {
        let mut ids: Vec<ElementId> = rule.head.iter().map(|a| names[a]).collect();
        ids.sort_unstable();
        for (i, id) in ids.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            write!(out, "h({id})").expect("writing to a String");
        }
        out.push_str(".\n");
    }
    out.push_str("#show h/1.\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct AspParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Strict reader for the text produced by [`emit_asp_core2`].
///
/// Accepts exactly the lines `h(INT)( | h(INT))*.` followed by a final
/// `#show h/1.`, each terminated by LF. Returns the program together with
/// the element names its atoms stand for (compacted in ascending order).
pub fn parse_asp_core2(text: &str) -> Result<(DisjunctiveProgram, Vec<ElementId>), AspParseError> {
    let err = |line: usize, column: usize, message: &str| AspParseError {
        line,
        column,
        message: message.to_string(),
    };
    let Some(body) = text.strip_suffix('\n') else {
        let line = text.split('\n').count();
        return Err(err(line, 1, "missing trailing newline"));
    };
    let lines: Vec<&str> = body.split('\n').collect();
    let last = lines.len();
    if lines[last - 1] != "#show h/1." {
        return Err(err(last, 1, "expected `#show h/1.` as the final line"));
    }
    let mut heads = Vec::with_capacity(last - 1);
    for (i, line) in lines[..last - 1].iter().enumerate() {
        heads.push(parse_rule(line).map_err(|(column, message)| err(i + 1, column, message))?);
    }
    let family = SetFamily::from_id_sets(heads).map_err(|e| err(1, 1, &e.to_string()))?;
    Ok((dlp(&family), family.element_names().to_vec()))
}

fn parse_rule(line: &str) -> Result<Vec<ElementId>, (usize, &'static str)> {
    let bytes = line.as_bytes();
    let mut pos = 0;
    let mut ids = Vec::new();
    loop {
        if !bytes[pos..].starts_with(b"h(") {
            return Err((pos + 1, "expected `h(`"));
        }
        pos += 2;
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let digits = &line[start..pos];
        if digits.is_empty() {
            return Err((start + 1, "expected an integer"));
        }
        if digits.len() > 1 && digits.starts_with('0') {
            return Err((start + 1, "leading zero in integer"));
        }
        match digits.parse::<u64>() {
            Ok(v) if v <= u64::from(MAX_ELEMENT_ID) => ids.push(v as ElementId),
            _ => return Err((start + 1, "identifier exceeds 2^31-1")),
        }
        if bytes.get(pos) != Some(&b')') {
            return Err((pos + 1, "expected `)`"));
        }
        pos += 1;
        if bytes[pos..].starts_with(b" | ") {
            pos += 3;
        } else if &bytes[pos..] == b"." {
            return Ok(ids);
        } else {
            return Err((pos + 1, "expected ` | ` or final `.`"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_force_mhs;
    use crate::testutil::{ids, random_family, running_example, set_of};

    fn atoms(f: &SetFamily, xs: &[u32]) -> Interpretation {
        set_of(f, xs)
    }

    #[test]
    fn dlp_of_running_example() {
        let f = running_example();
        let p = dlp(&f);
        assert_eq!(p.atom_count, 4);
        let heads: Vec<Vec<usize>> = p.rules.iter().map(|r| r.head.to_vec()).collect();
        assert_eq!(heads, vec![vec![0, 1], vec![2], vec![1, 2, 3]]);
        assert!(p.rules.iter().all(Rule::is_fact));

        let single = dlp(&SetFamily::from_id_sets([[5]]).unwrap());
        assert_eq!(single.rules.len(), 1);
        let empty = dlp(&SetFamily::empty());
        assert_eq!((empty.atom_count, empty.rules.len()), (0, 0));
    }

    #[test]
    fn satisfaction() {
        let f = running_example();
        let p = dlp(&f);
        assert!(satisfies(&atoms(&f, &[1, 3]), &p));
        assert!(!satisfies(&ElementSet::empty(4), &p));
        let empty = dlp(&SetFamily::empty());
        assert!(satisfies(&ElementSet::empty(0), &empty));
    }

    #[test]
    fn reduct_follows_definition() {
        // a ← not b, with M = {b}: dropped
        let rule = Rule {
            head: ElementSet::from_indices(2, [0]),
            body_pos: ElementSet::empty(2),
            body_neg: ElementSet::from_indices(2, [1]),
        };
        let p = DisjunctiveProgram {
            atom_count: 2,
            rules: vec![rule.clone()],
        };
        assert!(gl_reduct(&p, &ElementSet::from_indices(2, [1]))
            .rules
            .is_empty());
        // with M = {} the rule survives without its negative body
        let kept = gl_reduct(&p, &ElementSet::empty(2));
        assert_eq!(
            kept.rules,
            vec![Rule::fact(ElementSet::from_indices(2, [0]))]
        );
        // a ← b keeps its positive body
        let pos = DisjunctiveProgram {
            atom_count: 2,
            rules: vec![Rule {
                head: ElementSet::from_indices(2, [0]),
                body_pos: ElementSet::from_indices(2, [1]),
                body_neg: ElementSet::empty(2),
            }],
        };
        assert_eq!(gl_reduct(&pos, &ElementSet::full(2)), pos);
        let empty = DisjunctiveProgram {
            atom_count: 0,
            rules: vec![],
        };
        assert_eq!(gl_reduct(&empty, &ElementSet::empty(0)), empty);
    }

    #[test]
    fn satisfaction_with_bodies() {
        // a ← b, not c
        let p = DisjunctiveProgram {
            atom_count: 3,
            rules: vec![Rule {
                head: ElementSet::from_indices(3, [0]),
                body_pos: ElementSet::from_indices(3, [1]),
                body_neg: ElementSet::from_indices(3, [2]),
            }],
        };
        assert!(satisfies(&ElementSet::empty(3), &p));
        assert!(!satisfies(&ElementSet::from_indices(3, [1]), &p));
        assert!(satisfies(&ElementSet::from_indices(3, [1, 2]), &p));
        assert!(satisfies(&ElementSet::from_indices(3, [0, 1]), &p));
        assert_eq!(
            is_answer_set(&p, &ElementSet::empty(3)),
            Err(ReductionError::UnsupportedProgram { rule: 0 })
        );
    }

    #[test]
    fn answer_sets_of_running_example() {
        let f = running_example();
        let p = dlp(&f);
        assert_eq!(is_answer_set(&p, &atoms(&f, &[1, 3])), Ok(true));
        assert_eq!(is_answer_set(&p, &atoms(&f, &[1, 2, 3])), Ok(false));
        assert_eq!(is_answer_set(&p, &atoms(&f, &[2, 3])), Ok(true));
        for kind in EngineKind::ALL {
            let r = answer_sets_via_engine(&p, kind).unwrap();
            assert_eq!(ids(&f, &r.mhses), vec![vec![1, 3], vec![2, 3]]);
            for m in &r.mhses {
                assert_eq!(is_answer_set(&p, m), Ok(true));
            }
        }
        let single = SetFamily::from_id_sets([[5]]).unwrap();
        let r = answer_sets_via_engine(&dlp(&single), EngineKind::Mmcs).unwrap();
        assert_eq!(r.mhses, vec![ElementSet::from_indices(1, [0])]);
    }

    #[test]
    fn via_engine_matches_oracle() {
        for seed in 0..100 {
            let f = random_family(seed, 8, 8, 4);
            let r = answer_sets_via_engine(&dlp(&f), EngineKind::Blocking).unwrap();
            assert_eq!(r.mhses, brute_force_mhs(&f).unwrap().mhses, "seed {seed}");
        }
    }

    #[test]
    fn reduct_is_identity_on_images() {
        for seed in 0..50 {
            let f = random_family(seed, 8, 8, 4);
            let p = dlp(&f);
            let u = f.universe_size();
            for mask in 0u32..1 << u {
                let m = ElementSet::from_indices(u, (0..u).filter(|i| mask >> i & 1 == 1));
                assert_eq!(gl_reduct(&p, &m), p);
                assert_eq!(satisfies(&m, &p), crate::family::is_hitting_set(&f, &m));
            }
        }
    }

    #[test]
    fn emission_examples() {
        let f = running_example();
        assert_eq!(
            emit_asp_core2(&dlp(&f), f.element_names()),
            "h(1) | h(2).\nh(3).\nh(2) | h(3) | h(4).\n#show h/1.\n"
        );
        let single = SetFamily::from_id_sets([[5]]).unwrap();
        assert_eq!(
            emit_asp_core2(&dlp(&single), single.element_names()),
            "h(5).\n#show h/1.\n"
        );
        let empty = SetFamily::empty();
        assert_eq!(
            emit_asp_core2(&dlp(&empty), empty.element_names()),
            "#show h/1.\n"
        );
    }

    #[test]
    fn strict_reader() {
        let (p, names) =
            parse_asp_core2("h(1) | h(2).\nh(3).\nh(2) | h(3) | h(4).\n#show h/1.\n").unwrap();
        assert_eq!(p, dlp(&running_example()));
        assert_eq!(names, vec![1, 2, 3, 4]);
        let (p, names) = parse_asp_core2("#show h/1.\n").unwrap();
        assert_eq!((p.rules.len(), names.len()), (0, 0));

        let bad = [
            ("h(1).\n#show h/1.", 2, 1),
            ("h(1)\n#show h/1.\n", 1, 5),
            ("h(1);h(2).\n#show h/1.\n", 1, 5),
            ("h(01).\n#show h/1.\n", 1, 3),
            ("h().\n#show h/1.\n", 1, 3),
            ("h(1).\n", 1, 1),
            ("h(1).\nh(2).\n", 2, 1),
            ("h(9999999999).\n#show h/1.\n", 1, 3),
            ("h(1) |h(2).\n#show h/1.\n", 1, 5),
            ("\n#show h/1.\n", 1, 1),
        ];
        for (text, line, column) in bad {
            let e = parse_asp_core2(text).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        }
    }
}
