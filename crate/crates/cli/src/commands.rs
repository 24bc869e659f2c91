use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use catec_core::io::{
    append_report, canonical_order, convert_parallel_files, hypergraph_to_string, parse_hypergraph, parse_temporal, read_clustering, read_hypergraph,
    read_reports, read_text, write_clustering, write_file, write_hypergraph, write_reports_csv,
};
use catec_core::lp::{build_lp, lower_bound, solve_lp_with, write_lp_text, LpBackend};
use catec_core::metrics::{degree_filter, evaluate, EvalInputs};
use catec_core::synthetic::{
    bin_timestamps, gen_chromatic_graph, gen_chromatic_hypergraph, inject_label_noise,
    ChromaticParams,
};
use catec_core::two_color::build_reduction;
use catec_core::{solve as run_solver, Algorithm, Clustering, LabeledHypergraph, SolveOptions, SolveReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::{usage, CliResult, Context};
use crate::{
    ConvertArgs, EvalArgs, ExportArgs, FilterArgs, GenCommand, ModelArgs, SolveArgs, SummarizeArgs,
};

/// `--solver` if given, else `CATEC_LP_SOLVER`.
pub fn backend(flag: Option<&str>) -> CliResult<LpBackend> {
    match flag {
        Some(s) => s.parse().context("--solver"),
        None => LpBackend::from_env().context("CATEC_LP_SOLVER"),
    }
}

fn write_to(path: &Path, body: impl FnOnce(&mut dyn Write) -> catec_core::Result<()>) -> CliResult<()> {
    write_file(path, |w| body(w)).at(path)
}

pub fn solve(args: SolveArgs) -> CliResult<()> {
    let cfg = RunConfig::load(args.config.as_deref())?;
    let alg = args
        .alg
        .or(cfg.alg)
        .ok_or_else(|| usage("no algorithm given (--alg or `alg` in the config)"))?;
    let algorithm: Algorithm = alg.parse().context("--alg")?;
    let options = SolveOptions {
        seed: args.seed.or(cfg.seed).unwrap_or(0),
        threshold: args.t.or(cfg.t),
        bound: args.bound || cfg.bound.unwrap_or(false),
        backend: backend(args.solver.as_deref().or(cfg.solver.as_deref()))?,
    };
    let h = read_hypergraph(&args.instance).at(&args.instance)?;
    let (y, mut report) = run_solver(&h, algorithm, &options).context(algorithm.name())?;
    report.instance = Some(args.instance.display().to_string());

    match &args.out {
        Some(path) => write_to(path, |w| write_clustering(&h, &y, w))?,
        None => write_clustering(&h, &y, std::io::stdout().lock()).context("stdout")?,
    }
    if let Some(path) = &args.report {
        write_to(path, |w| append_report(&report, w))?;
    }
    eprintln!("{}", describe(&report));
    Ok(())
}

fn describe(r: &SolveReport) -> String {
    let mut line = format!("{}: objective {}", r.algorithm, r.objective);
    if let Some(lb) = r.lower_bound {
        line += &format!(", lower bound {lb:.6}");
    }
    if let Some(ratio) = r.approx_ratio {
        line += &format!(", ratio {ratio:.4}");
    }
    if let Some(s) = r.edge_satisfaction {
        line += &format!(", satisfaction {s:.4}");
    }
    line + &format!(", {:.3}s", r.wall_time_secs)
}

fn model_params(m: &ModelArgs, r: usize) -> ChromaticParams {
    ChromaticParams {
        r,
        ..ChromaticParams::graph(m.n, m.colors, m.clusters, m.p, m.q, m.w)
    }
}

fn write_instance(h: &LabeledHypergraph, path: &Path) -> CliResult<()> {
    write_to(path, |w| write_hypergraph(h, w))?;
    eprintln!(
        "wrote {}: {} nodes, {} edges, {} categories",
        path.display(),
        h.node_count(),
        h.edge_count(),
        h.category_count()
    );
    Ok(())
}

pub fn generate(cmd: GenCommand) -> CliResult<()> {
    match cmd {
        GenCommand::ChromaticGraph(m) => {
            let params = model_params(&m, 2);
            let (h, truth) = gen_chromatic_graph(&params, &mut ChaCha8Rng::seed_from_u64(m.seed))
                .context("chromatic-graph")?;
            write_planted(&h, &truth.node_labels(), &m)
        }
        GenCommand::ChromaticHypergraph { model, r, budget } => {
            let params = ChromaticParams {
                tuple_budget: budget,
                ..model_params(&model, r)
            };
            let (h, truth) =
                gen_chromatic_hypergraph(&params, &mut ChaCha8Rng::seed_from_u64(model.seed))
                    .context("chromatic-hypergraph")?;
            write_planted(&h, &truth.node_labels(), &model)
        }
        GenCommand::TimeBins { input, k, out } => {
            let t = parse_temporal(&read_text(&input).at(&input)?).at(&input)?;
            let h = bin_timestamps(&t, k).context("time-bins")?;
            write_instance(&h, &out)
        }
        GenCommand::NoisyLabels {
            instance,
            truth,
            w,
            seed,
            out,
        } => {
            let g = read_hypergraph(&instance).at(&instance)?;
            let truth = read_clustering(&truth, &g).at(&truth)?;
            let h = inject_label_noise(&g, truth.labels(), w, &mut ChaCha8Rng::seed_from_u64(seed))
                .context("noisy-labels")?;
            write_instance(&h, &out)
        }
    }
}

fn write_planted(h: &LabeledHypergraph, truth: &[u32], m: &ModelArgs) -> CliResult<()> {
    write_instance(h, &m.out)?;
    if let Some(path) = &m.truth {
        // name the truth after the instance as it reads back from disk
        let written = parse_hypergraph(&hypergraph_to_string(h)).context("re-reading instance")?;
        let y = Clustering::new(canonical_order(h).iter().map(|&v| truth[v]).collect());
        write_to(path, |w| write_clustering(&written, &y, w))?;
    }
    Ok(())
}

/// Reorders a clustering of `h` to the node numbering of the temporal file,
/// matching nodes by id.
fn align_to_temporal(
    h: &LabeledHypergraph,
    y: &Clustering,
    names: &[String],
) -> CliResult<Clustering> {
    let index: BTreeMap<String, usize> = (0..h.node_count()).map(|v| (h.node_name(v), v)).collect();
    let labels = names
        .iter()
        .map(|name| {
            index
                .get(name)
                .map(|&v| y[v])
                .ok_or_else(|| usage(format!("temporal node `{name}` is not in the instance")))
        })
        .collect::<CliResult<_>>()?;
    Ok(Clustering::new(labels))
}

pub fn eval(args: EvalArgs) -> CliResult<()> {
    let h = read_hypergraph(&args.instance).at(&args.instance)?;
    let y = read_clustering(&args.clustering, &h).at(&args.clustering)?;
    let truth = match &args.truth {
        Some(path) => Some(read_clustering(path, &h).at(path)?),
        None => None,
    };
    let lower = if args.bound {
        let b = backend(args.solver.as_deref())?;
        let lp = build_lp(&h).context("LP bound")?;
        Some(lower_bound(&solve_lp_with(&lp, &b).context("LP bound")?))
    } else {
        None
    };
    let mut report = evaluate(
        &h,
        &y,
        EvalInputs {
            truth: truth.as_ref().map(|t| t.labels()),
            lower_bound: lower,
            temporal: None,
        },
    )
    .context("eval")?;
    if let Some(path) = &args.temporal {
        let t = parse_temporal(&read_text(path).at(path)?).at(path)?;
        let yt = align_to_temporal(&h, &y, &t.node_names)?;
        report.avg_time_diff = match catec_core::metrics::avg_time_diff(&t, &yt) {
            Ok(d) => Some(d),
            Err(catec_core::Error::NoInteriorEdges) => None,
            Err(e) => return Err(e).at(path),
        };
    }
    if args.json {
        let text = serde_json::to_string_pretty(&report).map_err(|e| usage(e.to_string()))?;
        println!("{text}");
    } else {
        print!("{}", report.to_table());
    }
    Ok(())
}

pub fn filter(args: FilterArgs) -> CliResult<()> {
    let cfg = RunConfig::load(args.config.as_deref())?;
    let beta = args
        .beta
        .or(cfg.beta)
        .ok_or_else(|| usage("no beta given (--beta or `beta` in the config)"))?;
    let h = read_hypergraph(&args.instance).at(&args.instance)?;
    let f = degree_filter(&h, beta).context("filter")?;
    write_to(&args.out, |w| write_hypergraph(&f.instance, w))?;
    if let Some(path) = &args.removed {
        write_to(path, |w| {
            for &v in &f.removed {
                writeln!(w, "{}", h.node_name(v))?;
            }
            Ok(())
        })?;
    }
    eprintln!(
        "kept {} of {} nodes and {} of {} edges",
        f.instance.node_count(),
        h.node_count(),
        f.instance.edge_count(),
        h.edge_count()
    );
    Ok(())
}

pub fn convert(args: ConvertArgs) -> CliResult<()> {
    let edges = read_text(&args.edges).at(&args.edges)?;
    let labels = read_text(&args.labels).at(&args.labels)?;
    let h = convert_parallel_files(&edges, &labels).context("convert")?;
    write_instance(&h, &args.out)
}

pub fn export(args: ExportArgs) -> CliResult<()> {
    if args.lp.is_none() && args.dimacs.is_none() {
        return Err(usage("nothing to export: give --lp and/or --dimacs"));
    }
    let h = read_hypergraph(&args.instance).at(&args.instance)?;
    if let Some(path) = &args.lp {
        let lp = build_lp(&h).context("LP export")?;
        write_to(path, |w| write_lp_text(&lp, w))?;
    }
    if let Some(path) = &args.dimacs {
        let net = build_reduction(&h).context("flow export")?;
        write_to(path, |w| Ok(w.write_all(net.to_dimacs().as_bytes())?))?;
    }
    Ok(())
}

#[derive(Default)]
struct Group {
    runs: usize,
    objective: f64,
    ratio: (f64, usize),
    satisfaction: (f64, usize),
    time: f64,
}

fn mean((sum, count): (f64, usize)) -> String {
    if count == 0 {
        "-".into()
    } else {
        format!("{:.4}", sum / count as f64)
    }
}

pub fn summarize(args: SummarizeArgs) -> CliResult<()> {
    let input = catec_core::io::open_input(&args.results).at(&args.results)?;
    let reports = read_reports(input).at(&args.results)?;
    let mut groups: BTreeMap<(String, String), Group> = BTreeMap::new();
    for r in &reports {
        let key = (r.instance.clone().unwrap_or_default(), r.algorithm.clone());
        let g = groups.entry(key).or_default();
        g.runs += 1;
        g.objective += r.objective;
        g.time += r.wall_time_secs;
        if let Some(x) = r.approx_ratio {
            g.ratio.0 += x;
            g.ratio.1 += 1;
        }
        if let Some(x) = r.edge_satisfaction {
            g.satisfaction.0 += x;
            g.satisfaction.1 += 1;
        }
    }
    println!("instance\talgorithm\truns\tobjective\tratio\tsatisfaction\tseconds");
    for ((instance, algorithm), g) in &groups {
        let n = g.runs as f64;
        println!(
            "{instance}\t{algorithm}\t{}\t{:.4}\t{}\t{}\t{:.4}",
            g.runs,
            g.objective / n,
            mean(g.ratio),
            mean(g.satisfaction),
            g.time / n
        );
    }
    if let Some(path) = &args.csv {
        write_to(path, |w| write_reports_csv(&reports, w))?;
    }
    Ok(())
}
