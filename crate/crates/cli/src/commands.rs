use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use minhit::bench::{gen_random, run_suite, summarize, write_summary_csv, GenSpec, RunBudget};
use minhit::engines::{enumerate_with, filter_and_optimize, BergeOptions, EnumerateOptions};
use minhit::io::{
    parse_instance_bytes, parse_weights, print_instance, write_sets, write_stats_csv, EmptyRepr,
    OutputOptions,
};
use minhit::reduction::{dlp, emit_asp_core2};
use minhit::{
    critical_witnesses, instance_stats, is_hitting_set, ElementId, EnumerationResult, SetFamily,
};

use crate::{
    BenchArgs, CheckArgs, Cli, Command, CountArgs, EmptyAs, EngineArgs, EnumerateArgs, GenArgs,
    GenParams,
};

const PARTIAL: u8 = 2;

pub fn run(cli: Cli) -> Result<ExitCode> {
    let verbose = cli.verbose;
    match cli.command {
        Command::Enumerate(args) => enumerate(args, verbose),
        Command::Count(args) => count(args, verbose),
        Command::Check(args) => check(args),
        Command::EmitAsp(args) => {
            let family = read_instance(&args.input)?;
            let text = emit_asp_core2(&dlp(&family), family.element_names());
            write_stdout(text.as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats(args) => {
            let family = read_instance(&args.input)?;
            let st = instance_stats(&family);
            write_stdout(
                format!(
                    "sets={} universe={} dis={:.3}\n",
                    st.num_sets, st.universe_size, st.avg_disjunction
                )
                .as_bytes(),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(args) => gen(args),
        Command::Bench(args) => bench(args, verbose),
    }
}

fn read_instance(path: &Path) -> Result<SetFamily> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        buf
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_instance_bytes(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn write_stdout(bytes: &[u8]) -> Result<()> {
    let mut out = BufWriter::new(io::stdout().lock());
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

fn parse_id_list(list: &str) -> Result<Vec<ElementId>> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<ElementId>()
                .ok()
                .filter(|&v| v <= minhit::family::MAX_ELEMENT_ID)
                .with_context(|| format!("invalid element identifier `{t}`"))
        })
        .collect()
}

fn run_engine(original: &SetFamily, args: &EngineArgs, verbose: bool) -> Result<EnumerationResult> {
    let family = original;
    let minimized;
    let family = if args.minimize_input {
        minimized = family.minimized();
        &minimized
    } else {
        family
    };
    let options = EnumerateOptions {
        limit: args.limit,
        deadline: args
            .time_limit
            .map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
        berge: BergeOptions {
            cap: args.berge_cap,
            sort_by_size: args.berge_sort,
        },
    };
    let result = match enumerate_with(family, args.engine, &options) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            // Nothing usable was produced; report as an empty partial run.
            EnumerationResult {
                mhses: Vec::new(),
                stats: minhit::EngineStats {
                    engine: args.engine.name(),
                    ..Default::default()
                },
                partial: true,
                optimum: None,
            }
        }
    };
    if verbose {
        eprintln!(
            "engine={} emitted={} decisions={} time={:.3}ms partial={}",
            result.stats.engine,
            result.stats.emitted,
            result.stats.decisions,
            result.stats.wall_time.as_secs_f64() * 1000.0,
            result.partial
        );
    }
    if !args.minimize_input {
        return Ok(result);
    }
    // Map back to the caller's family by identifier.
    let mhses = minhit::canonicalize(
        result
            .mhses
            .iter()
            .map(|h| {
                original
                    .set_from_names(&family.names_of(h))
                    .expect("minimized names are a subset")
            })
            .collect(),
    );
    Ok(EnumerationResult { mhses, ..result })
}

fn exit_for(result: &EnumerationResult) -> ExitCode {
    if result.partial {
        ExitCode::from(PARTIAL)
    } else {
        ExitCode::SUCCESS
    }
}

fn enumerate(args: EnumerateArgs, verbose: bool) -> Result<ExitCode> {
    let family = read_instance(&args.input.input)?;
    let required = args.require.as_deref().map(parse_id_list).transpose()?;
    let weights = match &args.weights {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(parse_weights(&text).with_context(|| format!("parsing {}", path.display()))?)
        }
        None => None,
    };
    let result = run_engine(&family, &args.engine, verbose)?;
    let filtered = filter_and_optimize(
        &family,
        &result,
        args.size_bound,
        required.as_deref(),
        weights.as_ref(),
    );
    let sets = match &filtered.optimum {
        Some(opt) => {
            if verbose {
                eprintln!("optimal weight={}", opt.weight);
            }
            &opt.members
        }
        None => &filtered.mhses,
    };
    let options = OutputOptions {
        empty_as: match args.empty_as {
            EmptyAs::Blank => EmptyRepr::Blank,
            EmptyAs::Eps => EmptyRepr::Eps,
        },
        count_trailer: args.count_trailer,
    };
    write_stdout(write_sets(sets, &family, options).as_bytes())?;
    Ok(exit_for(&result))
}

fn count(args: CountArgs, verbose: bool) -> Result<ExitCode> {
    let family = read_instance(&args.input.input)?;
    let result = run_engine(&family, &args.engine, verbose)?;
    write_stdout(format!("{}\n", result.len()).as_bytes())?;
    Ok(exit_for(&result))
}

fn check(args: CheckArgs) -> Result<ExitCode> {
    let family = read_instance(&args.input.input)?;
    let ids = parse_id_list(&args.candidate)?;
    let (known, unknown): (Vec<ElementId>, Vec<ElementId>) =
        ids.iter().partition(|&&id| family.index_of(id).is_some());
    let h = family
        .set_from_names(&known)
        .expect("partitioned to known ids");
    let verdict = if !is_hitting_set(&family, &h) {
        "not-hitting".to_string()
    } else {
        let witnesses = critical_witnesses(&family, &h).expect("checked hitting");
        // Identifiers outside the universe hit nothing and are always removable.
        let mut removable: Vec<ElementId> = witnesses
            .iter()
            .filter(|(_, w)| w.is_none())
            .map(|(&x, _)| family.name_of(x))
            .chain(unknown)
            .collect();
        removable.sort_unstable();
        removable.dedup();
        if removable.is_empty() {
            "minimal".to_string()
        } else {
            let list: Vec<String> = removable.iter().map(ToString::to_string).collect();
            format!("hitting-not-minimal removable={}", list.join(","))
        }
    };
    write_stdout(format!("{verdict}\n").as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn spec_of(p: &GenParams, seed: u64) -> GenSpec {
    GenSpec {
        universe_size: p.universe,
        num_sets: p.sets,
        set_size_min: p.min_size,
        set_size_max: p.max_size,
        seed,
    }
}

fn gen(args: GenArgs) -> Result<ExitCode> {
    let family = gen_random(&spec_of(&args.params, args.params.seed))?;
    let text = print_instance(&family);
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => write_stdout(text.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs, verbose: bool) -> Result<ExitCode> {
    if !(args.time_limit > 0.0 && args.time_limit.is_finite()) {
        bail!("--time-limit must be a positive number of seconds");
    }
    if args.engines.is_empty() {
        bail!("--engines must name at least one engine");
    }
    let mut instances = Vec::new();
    for path in &args.inputs {
        instances.push((path.display().to_string(), read_instance(path)?));
    }
    for k in 0..args.generate {
        let seed = args.params.seed + k as u64;
        let family = gen_random(&spec_of(&args.params, seed))?;
        instances.push((format!("gen-{seed}"), family));
    }
    if instances.is_empty() {
        bail!("no instances: pass files or --generate N");
    }
    let budget = RunBudget {
        time_limit: Duration::from_secs_f64(args.time_limit),
        emit_limit: args.emit_limit,
        berge_cap: args.berge_cap,
    };
    let rows = run_suite(&instances, &args.engines, &budget, args.jobs);
    if verbose {
        for r in &rows {
            eprintln!(
                "{} {} {} {:?}",
                r.instance, r.engine.engine, r.status, r.engine.wall_time
            );
        }
    }
    let csv = write_stats_csv(&rows);
    match &args.out {
        Some(path) => {
            fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?
        }
        None => write_stdout(csv.as_bytes())?,
    }
    if let Some(path) = &args.summary {
        fs::write(path, write_summary_csv(&summarize(&rows)))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}
