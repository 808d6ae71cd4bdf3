//! Instance, output and harness CSV formats.
//!
//! Instances are plain text with one set per line, each a whitespace
//! separated list of non-negative integer identifiers. Blank lines and
//! lines starting with `#` are ignored.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::engines::Weights;
use crate::family::{ElementId, InstanceStats, SetFamily, MAX_ELEMENT_ID};
use crate::result::{EngineStats, EnumerationResult};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("invalid token `{0}`")]
    MalformedToken(String),
    #[error("identifier {0} exceeds 2^31-1")]
    Oversized(String),
    #[error("input is not valid UTF-8")]
    InvalidUtf8,
    #[error("invalid weight `{0}`")]
    BadWeight(String),
    #[error("expected `<id> <weight>`")]
    WeightArity,
}

/// A parse failure at a 1-based line and byte column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Whitespace-separated tokens of one line with their 1-based byte columns.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let base = line.as_ptr() as usize;
    line.split_ascii_whitespace()
        .map(move |t| (t.as_ptr() as usize - base + 1, t))
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split('\n').enumerate().filter_map(|(i, line)| {
        let trimmed = line.trim_start_matches(|c: char| c.is_ascii_whitespace());
        (!trimmed.is_empty() && !trimmed.starts_with('#')).then_some((i + 1, line))
    })
}

fn parse_id(token: &str) -> Result<ElementId, ParseErrorKind> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseErrorKind::MalformedToken(token.to_string()));
    }
    match token.parse::<u64>() {
        Ok(v) if v <= u64::from(MAX_ELEMENT_ID) => Ok(v as ElementId),
        _ => Err(ParseErrorKind::Oversized(token.to_string())),
    }
}

/// Parses raw bytes; invalid UTF-8 is reported at the offending position.
pub fn parse_instance_bytes(bytes: &[u8]) -> Result<SetFamily, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_instance(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let column =
                valid.len() - valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1) + 1;
            Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::InvalidUtf8,
            })
        }
    }
}

/// Parses instance text. Repeated identifiers within a line collapse;
/// line order is preserved.
pub fn parse_instance(text: &str) -> Result<SetFamily, ParseError> {
    let mut sets = Vec::new();
    for (line_no, line) in data_lines(text) {
        let mut set = Vec::new();
        for (column, token) in tokens(line) {
            let id = parse_id(token).map_err(|kind| ParseError {
                line: line_no,
                column,
                kind,
            })?;
            set.push(id);
        }
        sets.push(set);
    }
    Ok(SetFamily::from_id_sets(sets).expect("every data line has at least one token"))
}

/// Instance text for a family: one line per set, ascending identifiers.
pub fn print_instance(family: &SetFamily) -> String {
    let mut out = String::new();
    for set in family.sets() {
        write_ids(&mut out, &family.names_of(set));
        out.push('\n');
    }
    out
}

fn write_ids(out: &mut String, ids: &[ElementId]) {
    for (i, id) in ids.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{id}").expect("writing to a String");
    }
}

/// How the empty hitting set (sole answer for a family with no sets) is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmptyRepr {
    /// An empty line.
    #[default]
    Blank,
    /// The literal `{}`.
    Eps,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OutputOptions {
    pub empty_as: EmptyRepr,
    /// Append a `c count=<N>` trailer line.
    pub count_trailer: bool,
}

/// One line per set in result order, identifiers ascending.
pub fn write_mhses(
    result: &EnumerationResult,
    family: &SetFamily,
    options: OutputOptions,
) -> String {
    write_sets(&result.mhses, family, options)
}

pub fn write_sets(sets: &[ElementSet], family: &SetFamily, options: OutputOptions) -> String {
    let mut out = String::new();
    for h in sets {
        if h.is_empty() && options.empty_as == EmptyRepr::Eps {
            out.push_str("{}");
        } else {
            write_ids(&mut out, &family.names_of(h));
        }
        out.push('\n');
    }
    if options.count_trailer {
        writeln!(out, "c count={}", sets.len()).expect("writing to a String");
    }
    out
}

/// Reads `<id> <weight>` lines; `#` comments and blank lines are skipped.
pub fn parse_weights(text: &str) -> Result<Weights, ParseError> {
    let mut weights = Weights::new();
    for (line_no, line) in data_lines(text) {
        let toks: Vec<(usize, &str)> = tokens(line).collect();
        let at = |column, kind| ParseError {
            line: line_no,
            column,
            kind,
        };
        let [(id_col, id), (w_col, w)] = toks[..] else {
            return Err(at(1, ParseErrorKind::WeightArity));
        };
        let id = parse_id(id).map_err(|k| at(id_col, k))?;
        let weight: f64 = w
            .parse()
            .ok()
            .filter(|v: &f64| v.is_finite() && *v >= 0.0)
            .ok_or_else(|| at(w_col, ParseErrorKind::BadWeight(w.to_string())))?;
        weights.insert(id, weight);
    }
    Ok(weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RunStatus {
    Ok,
    Timeout,
    Memout,
    Partial,
    Error,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Timeout => "timeout",
            RunStatus::Memout => "memout",
            RunStatus::Partial => "partial",
            RunStatus::Error => "error",
        }
    }
}

impl fmt::Display for RunStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RunStatus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "ok" => RunStatus::Ok,
            "timeout" => RunStatus::Timeout,
            "memout" => RunStatus::Memout,
            "partial" => RunStatus::Partial,
            "error" => RunStatus::Error,
            other => return Err(format!("unknown status `{other}`")),
        })
    }
}

/// One (instance, engine) measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRow {
    pub instance: String,
    pub instance_stats: InstanceStats,
    pub engine: EngineStats,
    pub status: RunStatus,
}

impl RunRow {
    /// The enumerated count, reported for complete and partial runs only.
    pub fn mhs_count(&self) -> Option<u64> {
        matches!(self.status, RunStatus::Ok | RunStatus::Partial).then_some(self.engine.emitted)
    }

    pub fn time_ms(&self) -> f64 {
        self.engine.wall_time.as_secs_f64() * 1000.0
    }
}

pub const STATS_HEADER: &str =
    "instance,engine,num_sets,universe,avg_disjunction,mhs_count,time_ms,decisions,status";

/// Keeps identifiers free of CSV metacharacters.
pub fn sanitize_field(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            ',' | '"' | '\n' | '\r' => '_',
            c => c,
        })
        .collect()
}

pub fn write_stats_csv(rows: &[RunRow]) -> String {
    let mut out = String::from(STATS_HEADER);
    out.push('\n');
    for row in rows {
        let count = row.mhs_count().map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{:.3},{},{:.3},{},{}",
            sanitize_field(&row.instance),
            row.engine.engine,
            row.instance_stats.num_sets,
            row.instance_stats.universe_size,
            row.instance_stats.avg_disjunction,
            count,
            row.time_ms(),
            row.engine.decisions,
            row.status
        )
        .expect("writing to a String");
    }
    out
}

/// A row read back from a stats CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub instance: String,
    pub engine: String,
    pub num_sets: usize,
    pub universe: usize,
    pub avg_disjunction: f64,
    pub mhs_count: Option<u64>,
    pub time_ms: f64,
    pub decisions: u64,
    pub status: RunStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("csv line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

pub fn read_stats_csv(text: &str) -> Result<Vec<CsvRow>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == STATS_HEADER => {}
        _ => {
            return Err(CsvError {
                line: 1,
                message: "missing or unexpected header".into(),
            })
        }
    }
    lines
        .map(|(i, line)| {
            let fail = |message: String| CsvError {
                line: i + 1,
                message,
            };
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 9 {
                return Err(fail(format!("expected 9 fields, found {}", f.len())));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| fail(format!("{s}: {e}")));
            let int = |s: &str| s.parse::<u64>().map_err(|e| fail(format!("{s}: {e}")));
            Ok(CsvRow {
                instance: f[0].to_string(),
                engine: f[1].to_string(),
                num_sets: int(f[2])? as usize,
                universe: int(f[3])? as usize,
                avg_disjunction: num(f[4])?,
                mhs_count: if f[5].is_empty() {
                    None
                } else {
                    Some(int(f[5])?)
                },
                time_ms: num(f[6])?,
                decisions: int(f[7])?,
                status: f[8].parse().map_err(fail)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::{enumerate, EngineKind};
    use crate::family::instance_stats;
    use crate::testutil::{random_family, running_example};
    use proptest::prelude::*;
    use std::time::Duration;

    #[test]
    fn parse_examples() {
        let f = parse_instance("1 2\n3\n2 3 4\n").unwrap();
        assert_eq!(f, running_example());
        let f = parse_instance("# comment\n\n5\n").unwrap();
        assert_eq!(f, SetFamily::from_id_sets([[5]]).unwrap());
        let f = parse_instance("1 1 2\n").unwrap();
        assert_eq!(f, SetFamily::from_id_sets([[1, 2]]).unwrap());
        assert_eq!(parse_instance("").unwrap(), SetFamily::empty());
        let f = parse_instance("  7\t8 \r\n   # indented comment\n9").unwrap();
        assert_eq!(format!("{f:?}"), "[[7, 8], [9]]");
    }

    #[test]
    fn parse_errors_are_positional() {
        let e = parse_instance("a b\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 1));
        assert_eq!(e.kind, ParseErrorKind::MalformedToken("a".into()));
        let e = parse_instance("1 2\n3 -4\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_instance("1\n\n  2147483648\n").unwrap_err();
        assert_eq!((e.line, e.column), (3, 3));
        assert!(matches!(e.kind, ParseErrorKind::Oversized(_)));
        assert!(parse_instance("2147483647\n").is_ok());
        let e = parse_instance_bytes(b"1 2\n3 \xff\n").unwrap_err();
        assert_eq!(
            (e.line, e.column, e.kind),
            (2, 3, ParseErrorKind::InvalidUtf8)
        );
        let e = parse_instance("1 +2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
    }

    #[test]
    fn output_examples() {
        let f = running_example();
        let r = enumerate(&f, EngineKind::Mmcs, None).unwrap();
        assert_eq!(write_mhses(&r, &f, OutputOptions::default()), "1 3\n2 3\n");
        let trailer = OutputOptions {
            count_trailer: true,
            ..Default::default()
        };
        assert_eq!(write_mhses(&r, &f, trailer), "1 3\n2 3\nc count=2\n");
        assert_eq!(write_sets(&[], &f, OutputOptions::default()), "");

        let empty = SetFamily::empty();
        let r = enumerate(&empty, EngineKind::Mmcs, None).unwrap();
        assert_eq!(write_mhses(&r, &empty, OutputOptions::default()), "\n");
        let eps = OutputOptions {
            empty_as: EmptyRepr::Eps,
            ..Default::default()
        };
        assert_eq!(write_mhses(&r, &empty, eps), "{}\n");
    }

    #[test]
    fn output_reparses_as_family_of_mhses() {
        let f = running_example();
        let r = enumerate(&f, EngineKind::Blocking, None).unwrap();
        let text = write_mhses(&r, &f, OutputOptions::default());
        let g = parse_instance(&text).unwrap();
        let got: Vec<_> = g.sets().iter().map(|s| g.names_of(s)).collect();
        assert_eq!(got, vec![vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn weights() {
        let w = parse_weights("# w\n1 0.5\n3 2\n\n").unwrap();
        assert_eq!(w.into_iter().collect::<Vec<_>>(), vec![(1, 0.5), (3, 2.0)]);
        let e = parse_weights("1 -2\n").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_weights("1\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::WeightArity);
        let e = parse_weights("1 2 3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::WeightArity);
        assert!(parse_weights("1 NaN\n").is_err());
        assert!(parse_weights("1 inf\n").is_err());
    }

    fn row(status: RunStatus) -> RunRow {
        RunRow {
            instance: "ex".into(),
            instance_stats: instance_stats(&running_example()),
            engine: EngineStats {
                engine: "mmcs",
                wall_time: Duration::from_micros(1500),
                decisions: 5,
                emitted: 2,
            },
            status,
        }
    }

    #[test]
    fn stats_csv() {
        assert_eq!(write_stats_csv(&[]), format!("{STATS_HEADER}\n"));
        let text = write_stats_csv(&[row(RunStatus::Ok), row(RunStatus::Timeout)]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "ex,mmcs,3,4,2.000,2,1.500,5,ok");
        assert_eq!(lines[2], "ex,mmcs,3,4,2.000,,1.500,5,timeout");
        assert!(lines.iter().all(|l| l.split(',').count() == 9));
        let back = read_stats_csv(&text).unwrap();
        assert_eq!(back[0].mhs_count, Some(2));
        assert_eq!(back[1].mhs_count, None);
        assert_eq!(back[1].status, RunStatus::Timeout);

        let mut odd = row(RunStatus::Ok);
        odd.instance = "a,b\"c".into();
        assert!(write_stats_csv(&[odd])
            .lines()
            .nth(1)
            .unwrap()
            .starts_with("a_b_c,"));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(seed in any::<u64>()) {
            let f = random_family(seed, 30, 20, 6);
            prop_assert_eq!(parse_instance(&print_instance(&f)).unwrap(), f);
        }

        #[test]
        fn parser_total_on_bytes(bytes in prop::collection::vec(any::<u8>(), 0..200)) {
            match parse_instance_bytes(&bytes) {
                Ok(f) => prop_assert!(f.sets().iter().all(|s| !s.is_empty())),
                Err(e) => prop_assert!(e.line >= 1 && e.column >= 1),
            }
        }
    }
}
