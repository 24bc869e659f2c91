//! Benchmark suites: every algorithm on every instance, once per seed for
//! randomized algorithms and once otherwise.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use catec_core::io::{append_report, read_hypergraph, read_reports, write_reports_csv};
use catec_core::{solve, Algorithm, LabeledHypergraph, SolveOptions, SolveReport};
use rayon::prelude::*;
use serde::Deserialize;

use crate::commands::backend;
use crate::error::{usage, CliError, CliResult, Context, EXIT_INCOMPATIBLE};
use crate::BenchArgs;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    /// Instance paths, relative to the suite file.
    pub instances: Vec<PathBuf>,
    pub algorithms: Vec<String>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub bound: bool,
    /// Rounding threshold for `lp-rand`.
    pub t: Option<f64>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

/// Identifies a row for resuming.
type Key = (String, String, Option<u64>);

fn key(r: &SolveReport) -> Key {
    (r.instance.clone().unwrap_or_default(), r.algorithm.clone(), r.seed)
}

struct Job<'a> {
    name: String,
    instance: &'a LabeledHypergraph,
    algorithm: Algorithm,
    seed: Option<u64>,
}

fn load_suite(path: &Path) -> CliResult<Suite> {
    let text = catec_core::io::read_text(path).at(path)?;
    toml::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn completed(out: &Path) -> CliResult<Vec<SolveReport>> {
    if !out.exists() {
        return Ok(Vec::new());
    }
    let file = std::fs::File::open(out).map_err(|e| usage(format!("{}: {e}", out.display())))?;
    read_reports(BufReader::new(file)).at(out)
}

pub fn run(args: BenchArgs) -> CliResult<()> {
    let suite = load_suite(&args.suite)?;
    let algorithms = suite
        .algorithms
        .iter()
        .map(|a| a.parse::<Algorithm>().context("suite"))
        .collect::<CliResult<Vec<_>>>()?;
    let base = args.suite.parent().unwrap_or(Path::new("."));
    let instances = suite
        .instances
        .iter()
        .map(|p| {
            let path = base.join(p);
            read_hypergraph(&path).at(&path).map(|h| (p.display().to_string(), h))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let lp_backend = backend(args.solver.as_deref())?;

    let done: HashSet<Key> = completed(&args.out)?.iter().map(key).collect();
    let mut jobs = Vec::new();
    for (name, h) in &instances {
        for &algorithm in &algorithms {
            let seeds: Vec<Option<u64>> = if algorithm.is_randomized() {
                suite.seeds.iter().map(|&s| Some(s)).collect()
            } else {
                vec![None]
            };
            for seed in seeds {
                if !done.contains(&(name.clone(), algorithm.name().to_owned(), seed)) {
                    jobs.push(Job {
                        name: name.clone(),
                        instance: h,
                        algorithm,
                        seed,
                    });
                }
            }
        }
    }
    eprintln!("{} rows to run, {} already done", jobs.len(), done.len());

    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&args.out)
        .map_err(|e| usage(format!("{}: {e}", args.out.display())))?;
    let writer = Mutex::new(file);
    let failures = Mutex::new(Vec::<CliError>::new());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| usage(e.to_string()))?;
    pool.install(|| {
        jobs.par_iter().for_each(|job| {
            let options = SolveOptions {
                seed: job.seed.unwrap_or(0),
                threshold: suite.t,
                bound: suite.bound,
                backend: lp_backend.clone(),
            };
            let label = format!("{} on {}", job.algorithm, job.name);
            match solve(job.instance, job.algorithm, &options).context(label.clone()) {
                Ok((_, mut report)) => {
                    report.instance = Some(job.name.clone());
                    let mut line = Vec::new();
                    append_report(&report, &mut line).expect("writing to memory");
                    let mut out = writer.lock().unwrap();
                    if let Err(e) = out.write_all(&line).and_then(|_| out.flush()) {
                        failures.lock().unwrap().push(usage(format!("{}: {e}", args.out.display())));
                    }
                }
                Err(e) if e.exit_code() == EXIT_INCOMPATIBLE => eprintln!("skipped {e}"),
                Err(e) => {
                    eprintln!("failed {e}");
                    failures.lock().unwrap().push(e);
                }
            }
        })
    });

    if let Some(path) = &args.emit_csv {
        let mut rows = completed(&args.out)?;
        rows.sort_by_key(key);
        catec_core::io::write_file(path, |w| write_reports_csv(&rows, w)).at(path)?;
    }
    match failures.into_inner().unwrap().into_iter().next() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
