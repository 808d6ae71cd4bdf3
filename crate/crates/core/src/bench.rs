//! Desk-scale benchmark harness: random instances, budgeted runs,
//! cactus data and per-bucket summaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::engines::{run_engine, BergeOptions, CollectSink, EngineError, EngineKind};
use crate::family::{instance_stats, ElementId, SetFamily};
use crate::io::{sanitize_field, RunRow, RunStatus};
use crate::result::EngineStats;

/// Parameters of a random instance. Element identifiers are `1..=universe_size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub universe_size: usize,
    pub num_sets: usize,
    pub set_size_min: usize,
    pub set_size_max: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("infeasible generator spec: need 1 <= min ({min}) <= max ({max}) <= universe ({universe})")]
pub struct InfeasibleSpec {
    pub min: usize,
    pub max: usize,
    pub universe: usize,
}

/// Draws `num_sets` sets, each of a size uniform in the stated range and
/// with members sampled uniformly without replacement.
pub fn gen_random(spec: &GenSpec) -> Result<SetFamily, InfeasibleSpec> {
    if spec.set_size_min == 0
        || spec.set_size_min > spec.set_size_max
        || spec.set_size_max > spec.universe_size
        || spec.universe_size > ElementId::MAX as usize
    {
        return Err(InfeasibleSpec {
            min: spec.set_size_min,
            max: spec.set_size_max,
            universe: spec.universe_size,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let sets: Vec<Vec<ElementId>> = (0..spec.num_sets)
        .map(|_| {
            let size = rng.random_range(spec.set_size_min..=spec.set_size_max);
            let mut members: Vec<ElementId> = sample(&mut rng, spec.universe_size, size)
                .into_iter()
                .map(|i| i as ElementId + 1)
                .collect();
            members.sort_unstable();
            members
        })
        .collect();
    Ok(SetFamily::from_id_sets(sets).expect("generated sets are non-empty"))
}

#[derive(Debug, Clone)]
pub struct RunBudget {
    pub time_limit: Duration,
    pub emit_limit: Option<usize>,
    pub berge_cap: usize,
}

impl Default for RunBudget {
    fn default() -> Self {
        RunBudget {
            time_limit: Duration::from_secs(1000),
            emit_limit: None,
            berge_cap: crate::engines::DEFAULT_BERGE_CAP,
        }
    }
}

/// Runs one engine on one instance under the budget. Cancellation is
/// cooperative: engines poll the deadline at branch and emission points.
pub fn run_one(id: &str, family: &SetFamily, engine: EngineKind, budget: &RunBudget) -> RunRow {
    let start = Instant::now();
    let mut sink = CollectSink::counting(budget.emit_limit, Some(start + budget.time_limit));
    let berge = BergeOptions {
        cap: budget.berge_cap,
        ..Default::default()
    };
    let outcome = run_engine(family, engine, &berge, &mut sink);
    let (engine_stats, status) = match outcome {
        Ok(stats) if sink.timed_out => (stats, RunStatus::Timeout),
        Ok(stats) if sink.hit_limit => (stats, RunStatus::Partial),
        Ok(stats) => (stats, RunStatus::Ok),
        Err(EngineError::BudgetExceeded { .. }) => (
            EngineStats {
                engine: engine.name(),
                wall_time: start.elapsed(),
                decisions: 0,
                emitted: sink.count as u64,
            },
            RunStatus::Memout,
        ),
    };
    RunRow {
        instance: sanitize_field(id),
        instance_stats: instance_stats(family),
        engine: engine_stats,
        status,
    }
}

/// Runs every (instance, engine) pair. Rows come back in instance-major,
/// engine-minor order regardless of `jobs`.
pub fn run_suite(
    instances: &[(String, SetFamily)],
    engines: &[EngineKind],
    budget: &RunBudget,
    jobs: usize,
) -> Vec<RunRow> {
    let tasks: Vec<(usize, EngineKind)> = (0..instances.len())
        .flat_map(|i| engines.iter().map(move |&e| (i, e)))
        .collect();
    let slots: Mutex<Vec<Option<RunRow>>> = Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    let worker = || loop {
        let t = next.fetch_add(1, Ordering::Relaxed);
        let Some(&(i, engine)) = tasks.get(t) else {
            break;
        };
        let (id, family) = &instances[i];
        let row = run_one(id, family, engine, budget);
        slots.lock().expect("no worker panicked")[t] = Some(row);
    };
    std::thread::scope(|scope| {
        for _ in 1..jobs.max(1) {
            scope.spawn(worker);
        }
        worker();
    });
    slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every task ran"))
        .collect()
}

/// Cactus-plot points for one engine: the k-th point is `(k, t_k)` where
/// `t_k` is the k-th smallest time (seconds) among `ok` rows.
pub fn cactus_data(rows: &[RunRow]) -> Vec<(usize, f64)> {
    let mut times: Vec<f64> = rows
        .iter()
        .filter(|r| r.status == RunStatus::Ok)
        .map(|r| r.engine.wall_time.as_secs_f64())
        .collect();
    times.sort_by(f64::total_cmp);
    times
        .into_iter()
        .enumerate()
        .map(|(k, t)| (k + 1, t))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BucketKind {
    NumSets,
    Dis,
}

impl BucketKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BucketKind::NumSets => "num_sets",
            BucketKind::Dis => "dis",
        }
    }
}

/// Half-open power-of-ten bucket `[lo, hi)`; values below 1 land in `[0, 1)`.
pub fn bucket_of(value: f64) -> (u64, u64) {
    if value < 1.0 {
        return (0, 1);
    }
    let mut lo = 1u64;
    while (lo as f64) * 10.0 <= value {
        lo *= 10;
    }
    (lo, lo * 10)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub kind: BucketKind,
    pub lo: u64,
    pub hi: u64,
    pub engine: String,
    pub solved: usize,
    pub total: usize,
}

/// Solved/total counts per engine and power-of-ten bucket of |S| and of
/// the average set size.
pub fn summarize(rows: &[RunRow]) -> Vec<SummaryRow> {
    let mut buckets: BTreeMap<(BucketKind, u64, u64, &str), (usize, usize)> = BTreeMap::new();
    for row in rows {
        let solved = usize::from(row.status == RunStatus::Ok);
        for (kind, value) in [
            (BucketKind::NumSets, row.instance_stats.num_sets as f64),
            (BucketKind::Dis, row.instance_stats.avg_disjunction),
        ] {
            let (lo, hi) = bucket_of(value);
            let entry = buckets
                .entry((kind, lo, hi, row.engine.engine))
                .or_default();
            entry.0 += solved;
            entry.1 += 1;
        }
    }
    buckets
        .into_iter()
        .map(|((kind, lo, hi, engine), (solved, total))| SummaryRow {
            kind,
            lo,
            hi,
            engine: engine.to_string(),
            solved,
            total,
        })
        .collect()
}

pub const SUMMARY_HEADER: &str = "bucket_kind,bucket_lo,bucket_hi,engine,solved,total";

pub fn write_summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.kind.as_str(),
            r.lo,
            r.hi,
            r.engine,
            r.solved,
            r.total
        )
        .expect("writing to a String");
    }
    out
}
