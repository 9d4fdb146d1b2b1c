use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use serde_json::json;

use ecgkit::applications::{cada_scores, dimmer, dimmer_profile};
use ecgkit::generators::{
    degree_preserving_random, inject_anomalies, planted_partition, ring_of_cliques, LabeledGraph,
};
use ecgkit::io::{
    load_edge_list, read_edge_weights, read_mask, read_partition, write_dot, write_mask,
    write_partition, write_weighted_edges, Indexing, LoadOptions,
};
use ecgkit::metrics::{self, stability, Algorithm};
use ecgkit::rng::derive_master;
use ecgkit::{
    csi, ecg_cluster, louvain_level1, louvain_multilevel, modularity, Combine, EcgParams,
    EdgeWeightMap, Graph, Partition, RngSeed,
};

use crate::args::*;
use crate::error::CliError;
use crate::manifest::{read_manifest, replayable_argv, write_json, ManifestBuilder, SCHEMA_VERSION};

type CliResult<T> = Result<T, CliError>;

pub fn run(command: Command, argv: &[String]) -> CliResult<()> {
    if let Command::Replay(args) = command {
        return replay(&args);
    }
    let name = subcommand_name(&command);
    let mut manifest = ManifestBuilder::new(&name, replayable_argv(argv), parameters(&command)?);
    match command {
        Command::Cluster(a) => cluster(a, &mut manifest),
        Command::Ecg(a) => ecg(a, &mut manifest),
        Command::Csi(a) => csi_cmd(a, &mut manifest),
        Command::Compare(a) => compare(a, &mut manifest),
        Command::Stability(a) => stability_cmd(a, &mut manifest),
        Command::Generate(g) => generate(g, &mut manifest),
        Command::Dimmer(a) => dimmer_cmd(a, &mut manifest),
        Command::Cada(a) => cada(a, &mut manifest),
        Command::Bench(b) => bench(b, &mut manifest),
        Command::Replay(_) => unreachable!(),
    }
}

fn subcommand_name(command: &Command) -> String {
    match command {
        Command::Cluster(_) => "cluster".into(),
        Command::Ecg(_) => "ecg".into(),
        Command::Csi(_) => "csi".into(),
        Command::Compare(_) => "compare".into(),
        Command::Stability(_) => "stability".into(),
        Command::Generate(g) => match g {
            GenerateCommand::Ring(_) => "generate ring".into(),
            GenerateCommand::Sbm(_) => "generate sbm".into(),
            GenerateCommand::Null(_) => "generate null".into(),
            GenerateCommand::Anomalies(_) => "generate anomalies".into(),
        },
        Command::Dimmer(_) => "dimmer".into(),
        Command::Cada(_) => "cada".into(),
        Command::Bench(b) => match b {
            BenchCommand::Ring(_) => "bench ring".into(),
            BenchCommand::Sbm(_) => "bench sbm".into(),
        },
        Command::Replay(_) => "replay".into(),
    }
}

fn indexing(one_based: bool) -> Indexing {
    if one_based {
        Indexing::OneBased
    } else {
        Indexing::ZeroBased
    }
}

fn open(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: ecgkit::Result<T>) -> CliResult<T> {
    r.map_err(|e| {
        let inner = CliError::from(e);
        match inner {
            CliError::Input(m) => CliError::input(format!("{}: {m}", path.display())),
            other => other,
        }
    })
}

fn load_graph(input: &GraphInput, manifest: &mut ManifestBuilder) -> CliResult<Graph> {
    manifest.input(&input.input)?;
    let opts = LoadOptions {
        indexing: indexing(input.one_based),
        weighted: input.weighted,
        compact_ids: false,
    };
    Ok(with_path(&input.input, load_edge_list(open(&input.input)?, opts))?.graph)
}

fn load_partition(path: &Path, one_based: bool, manifest: &mut ManifestBuilder) -> CliResult<Partition> {
    manifest.input(path)?;
    with_path(path, read_partition(open(path)?, indexing(one_based)))
}

fn parameters(command: &Command) -> CliResult<serde_json::Value> {
    serde_json::to_value(command).map_err(|e| CliError::runtime(e.to_string()))
}

/// Picks a random seed when none was given and records it so that the
/// manifest arguments and parameters both carry the value actually used.
fn resolve_seed(seed: Option<u64>, manifest: &mut ManifestBuilder) -> CliResult<u64> {
    if let Some(s) = seed {
        manifest.seed(s, true);
        return Ok(s);
    }
    let s = rand::random::<u64>();
    eprintln!("note: no --seed given, using {s}");
    manifest.seed(s, false);
    // --out is required by the parser but never serialized
    let argv = std::iter::once("ecgkit".to_string())
        .chain(manifest.manifest.argv.iter().cloned())
        .chain(["--out".to_string(), ".".to_string()]);
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::runtime(e.to_string()))?;
    manifest.manifest.parameters = parameters(&cli.command)?;
    Ok(s)
}

fn prepare_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::runtime(format!("{}: {e}", dir.display())))
}

fn write_with<F>(path: PathBuf, body: F) -> CliResult<()>
where
    F: FnOnce(&mut Vec<u8>) -> ecgkit::Result<()>,
{
    let mut buf = Vec::new();
    body(&mut buf).map_err(|e| CliError::runtime(e.to_string()))?;
    fs::write(&path, buf).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

fn write_text(path: PathBuf, text: &str) -> CliResult<()> {
    fs::write(&path, text).map_err(|e| CliError::runtime(format!("{}: {e}", path.display())))
}

/// Writes `summary.json` and the manifest into `dir`.
fn finish(dir: &Path, summary: &serde_json::Value, manifest: &ManifestBuilder) -> CliResult<()> {
    write_json(&dir.join("summary.json"), summary)?;
    manifest.write(dir)?;
    Ok(())
}

/// Prints a JSON summary and, when an output directory is given, also
/// stores it there with a manifest.
fn report(out: Option<&Path>, summary: &serde_json::Value, manifest: &ManifestBuilder) -> CliResult<()> {
    let text = serde_json::to_string_pretty(summary).map_err(|e| CliError::runtime(e.to_string()))?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{text}").map_err(|e| CliError::runtime(e.to_string()))?;
    if let Some(dir) = out {
        prepare_dir(dir)?;
        finish(dir, summary, manifest)?;
    }
    Ok(())
}

fn algorithm(algo: Algo, ecg: &EcgOptions) -> Algorithm {
    match algo {
        Algo::Ml => Algorithm::Multilevel,
        Algo::Ecg => Algorithm::Ecg {
            ensemble_size: ecg.ens_size,
            min_weight: ecg.min_weight,
        },
    }
}

fn check_ecg_options(ecg: &EcgOptions) -> CliResult<()> {
    EcgParams::new(ecg.ens_size, ecg.min_weight, 0).validate()?;
    Ok(())
}

fn cluster(a: ClusterArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    let g = load_graph(&a.graph, manifest)?;
    let seed = resolve_seed(a.seed, manifest)?;
    let p = match a.algo {
        ClusterAlgo::Ml => louvain_multilevel(&g, RngSeed::new(seed, 0))?,
        ClusterAlgo::Level1 => louvain_level1(&g, RngSeed::new(seed, 0))?,
    };
    let q = modularity(&g, &p)?;
    let dir = &a.out.out;
    prepare_dir(dir)?;
    let idx = indexing(a.graph.one_based);
    write_with(dir.join("partition.txt"), |b| write_partition(&p, idx, b))?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "algo": a.algo,
        "seed": seed,
        "num_vertices": g.num_vertices(),
        "num_edges": g.num_edges(),
        "num_clusters": p.num_clusters(),
        "modularity": q,
    });
    finish(dir, &summary, manifest)
}

fn ecg(a: EcgArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    let g = load_graph(&a.graph, manifest)?;
    let seed = resolve_seed(a.seed, manifest)?;
    let params = EcgParams {
        ensemble_size: a.ecg.ens_size,
        min_weight: a.ecg.min_weight,
        seed,
        combine: match a.combine {
            CombineArg::Replace => Combine::Replace,
            CombineArg::Multiply => Combine::Multiply,
        },
    };
    params.validate()?;
    let res = ecg_cluster(&g, &params)?;
    if res.core_size == 0 {
        eprintln!("warning: the graph has an empty 2-core; every consensus weight equals the minimum weight and the CSI is not meaningful");
    }
    let q = modularity(&g, &res.partition)?;
    let dir = &a.out.out;
    prepare_dir(dir)?;
    let idx = indexing(a.graph.one_based);
    write_with(dir.join("partition.txt"), |b| write_partition(&res.partition, idx, b))?;
    write_with(dir.join("weights.txt"), |b| {
        write_weighted_edges(&g, Some(res.weights.as_slice()), idx, b)
    })?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "k": params.ensemble_size,
        "w_star": params.min_weight,
        "seed": seed,
        "combine": a.combine,
        "num_vertices": g.num_vertices(),
        "num_edges": g.num_edges(),
        "core_size": res.core_size,
        "num_clusters": res.partition.num_clusters(),
        "modularity": q,
        "weighted_modularity": res.weighted_modularity,
        "csi": res.csi,
    });
    finish(dir, &summary, manifest)
}

fn csi_cmd(a: CsiArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    manifest.input(&a.weights)?;
    let opts = LoadOptions {
        indexing: indexing(a.one_based),
        weighted: true,
        compact_ids: false,
    };
    let g = with_path(&a.weights, load_edge_list(open(&a.weights)?, opts))?.graph;
    let weights = EdgeWeightMap::new(g.edges().iter().map(|e| e.w).collect());
    let value = csi(&weights)?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "num_edges": g.num_edges(),
        "csi": value,
    });
    report(a.out.as_deref(), &summary, manifest)
}

fn compare(a: CompareArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    let truth = load_partition(&a.truth, a.one_based, manifest)?;
    let found = load_partition(&a.found, a.one_based, manifest)?;
    if truth.len() != found.len() {
        return Err(CliError::input(format!(
            "partitions cover {} and {} vertices",
            truth.len(),
            found.len()
        )));
    }
    let mut padded = 0;
    let graph = match &a.graph {
        None => None,
        Some(path) => {
            let input = GraphInput {
                input: path.clone(),
                one_based: a.one_based,
                weighted: false,
            };
            let g = load_graph(&input, manifest)?;
            if g.num_vertices() > truth.len() {
                return Err(CliError::input(format!(
                    "graph has {} vertices but the partitions cover {}",
                    g.num_vertices(),
                    truth.len()
                )));
            }
            padded = truth.len() - g.num_vertices();
            if padded > 0 {
                eprintln!("note: {padded} vertices appear only in the partitions and are treated as isolated");
            }
            Some(g.padded_to(truth.len()))
        }
    };
    let r = metrics::compare(&found, &truth, graph.as_ref())?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "ari": r.ari,
        "agri": r.agri,
        "count_ratio": r.count_ratio,
        "found_clusters": found.num_clusters(),
        "true_clusters": truth.num_clusters(),
        "isolated_padding": padded,
    });
    report(a.out.as_deref(), &summary, manifest)
}

fn stability_cmd(a: StabilityArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    check_ecg_options(&a.ecg)?;
    let g = load_graph(&a.graph, manifest)?;
    let seed = resolve_seed(a.seed, manifest)?;
    let r = stability(&g, algorithm(a.algo, &a.ecg), a.runs, seed)?;
    let per_pair: Vec<_> = r
        .per_pair
        .iter()
        .map(|s| json!({"first": s.first, "second": s.second, "ari": s.ari, "agri": s.agri}))
        .collect();
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "algo": a.algo,
        "runs": a.runs,
        "seed": seed,
        "ari_mean": r.ari_mean,
        "agri_mean": r.agri_mean,
        "per_pair": per_pair,
    });
    report(a.out.as_deref(), &summary, manifest)
}

fn write_labeled(dir: &Path, lg: &LabeledGraph) -> CliResult<()> {
    prepare_dir(dir)?;
    let idx = Indexing::ZeroBased;
    write_with(dir.join("graph.txt"), |b| write_weighted_edges(&lg.graph, None, idx, b))?;
    write_with(dir.join("truth.txt"), |b| write_partition(&lg.truth, idx, b))?;
    if let Some(mask) = &lg.anomalies {
        write_with(dir.join("anomalies.txt"), |b| write_mask(mask, idx, b))?;
    }
    Ok(())
}

fn generate(cmd: GenerateCommand, manifest: &mut ManifestBuilder) -> CliResult<()> {
    let (dir, lg, extra) = match cmd {
        GenerateCommand::Ring(a) => {
            let seed = resolve_seed(a.seed, manifest)?;
            let lg = ring_of_cliques(a.cliques, a.size, a.between, RngSeed::new(seed, 0))?;
            (a.out.out, lg, json!({}))
        }
        GenerateCommand::Sbm(a) => {
            let seed = resolve_seed(a.seed, manifest)?;
            let lg = planted_partition(&a.sizes, a.pin, a.pout, RngSeed::new(seed, 0))?;
            (a.out.out, lg, json!({}))
        }
        GenerateCommand::Null(a) => {
            let g = load_graph(&a.graph, manifest)?;
            let seed = resolve_seed(a.seed, manifest)?;
            let model = degree_preserving_random(&g, RngSeed::new(seed, 0));
            let n = model.graph.num_vertices();
            let lg = LabeledGraph {
                graph: model.graph,
                truth: Partition::all_in_one(n),
                anomalies: None,
            };
            (a.out.out, lg, json!({ "discarded_pairs": model.discarded }))
        }
        GenerateCommand::Anomalies(a) => {
            let g = load_graph(&a.graph, manifest)?;
            let truth = match &a.truth {
                Some(path) => load_partition(path, a.graph.one_based, manifest)?,
                None => Partition::all_in_one(g.num_vertices()),
            };
            if truth.len() < g.num_vertices() {
                return Err(CliError::input("truth partition does not cover every vertex"));
            }
            let g = g.padded_to(truth.len());
            let seed = resolve_seed(a.seed, manifest)?;
            let base = LabeledGraph {
                graph: g,
                truth,
                anomalies: None,
            };
            let inj = inject_anomalies(&base, a.count, RngSeed::new(seed, 0))?;
            if inj.clamped > 0 {
                eprintln!("note: {} anomaly degrees were clamped to the vertex count", inj.clamped);
            }
            (a.out.out, inj.graph, json!({ "clamped": inj.clamped, "count": a.count }))
        }
    };
    write_labeled(&dir, &lg)?;
    let mut summary = json!({
        "schema_version": SCHEMA_VERSION,
        "seed": manifest.manifest.seed,
        "num_vertices": lg.graph.num_vertices(),
        "num_edges": lg.graph.num_edges(),
        "num_clusters": lg.truth.num_clusters(),
    });
    if let (Some(obj), Some(more)) = (summary.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    finish(&dir, &summary, manifest)
}

fn dimmer_cmd(a: DimmerArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    let g = load_graph(&a.graph, manifest)?;
    let idx = indexing(a.graph.one_based);
    manifest.input(&a.weights)?;
    let weights = EdgeWeightMap::new(with_path(&a.weights, read_edge_weights(&g, open(&a.weights)?, idx))?);
    let p = load_partition(&a.partition, a.graph.one_based, manifest)?;
    if p.len() != g.num_vertices() {
        return Err(CliError::input(format!(
            "partition covers {} vertices, graph has {}",
            p.len(),
            g.num_vertices()
        )));
    }
    let off = u64::from(a.graph.one_based);
    let seed_vertex = a
        .seed_vertex
        .checked_sub(off)
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| CliError::input("seed vertex out of range"))?;
    let sub = dimmer(&g, &weights, &p, seed_vertex, a.theta)?;
    let sub_weights: Vec<f64> = sub.edge_map.iter().map(|&e| weights.as_slice()[e]).collect();
    let names: Vec<usize> = sub.vertex_map.iter().map(|&v| v + off as usize).collect();

    let dir = &a.out.out;
    prepare_dir(dir)?;
    let mut edges = String::new();
    for (e, w) in sub.graph.edges().iter().zip(&sub_weights) {
        edges.push_str(&format!("{} {} {w:.6}\n", names[e.u], names[e.v]));
    }
    write_text(dir.join("subgraph.txt"), &edges)?;
    let local_seed = sub.local_id(seed_vertex);
    write_with(dir.join("subgraph.dot"), |b| {
        write_dot(&sub.graph, Some(&sub_weights), local_seed, Some(&names), b)
    })?;

    let mut summary = json!({
        "schema_version": SCHEMA_VERSION,
        "seed_vertex": a.seed_vertex,
        "theta": a.theta,
        "num_vertices": sub.graph.num_vertices(),
        "num_edges": sub.graph.num_edges(),
        "cluster_size": p.sizes()[p.label(seed_vertex)],
    });
    if a.profile {
        let prof = dimmer_profile(&g, &weights, &p, seed_vertex, a.steps, true)?;
        let mut table = String::from("theta\tnum_vertices\tnum_edges\n");
        let subs = prof.subgraphs.as_deref().unwrap_or_default();
        for ((t, n), s) in prof.thresholds.iter().zip(&prof.subgraph_sizes).zip(subs) {
            table.push_str(&format!("{t}\t{n}\t{}\n", s.graph.num_edges()));
        }
        write_text(dir.join("profile.tsv"), &table)?;
        summary["profile_points"] = json!(prof.thresholds.len());
    }
    finish(dir, &summary, manifest)
}

fn cada(a: CadaArgs, manifest: &mut ManifestBuilder) -> CliResult<()> {
    check_ecg_options(&a.ecg)?;
    let g = load_graph(&a.graph, manifest)?;
    let idx = indexing(a.graph.one_based);
    let mask = match &a.anomalies {
        Some(path) => {
            manifest.input(path)?;
            let m = with_path(path, read_mask(open(path)?, idx))?;
            if m.len() != g.num_vertices() {
                return Err(CliError::input(format!(
                    "anomaly mask covers {} vertices, graph has {}",
                    m.len(),
                    g.num_vertices()
                )));
            }
            Some(m)
        }
        None => None,
    };
    let seed = resolve_seed(a.seed, manifest)?;
    let p = algorithm(a.algo, &a.ecg).run(&g, seed)?;
    let scores = cada_scores(&g, &p)?;
    let auc = mask
        .as_ref()
        .map(|m| metrics::roc_auc(&scores.scores, m.as_slice()))
        .transpose()?;

    let dir = &a.out.out;
    prepare_dir(dir)?;
    let off = usize::from(a.graph.one_based);
    let mut table = String::from("vertex\tdegree\tscore\tundefined\n");
    for v in 0..g.num_vertices() {
        table.push_str(&format!(
            "{}\t{}\t{:.6}\t{}\n",
            v + off,
            g.degree(v),
            scores.scores[v],
            u8::from(scores.undefined_mask[v])
        ));
    }
    write_text(dir.join("scores.tsv"), &table)?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "algo": a.algo,
        "seed": seed,
        "num_clusters": p.num_clusters(),
        "auc": auc,
    });
    finish(dir, &summary, manifest)
}

/// One row of a benchmark table.
struct BenchRow {
    param: String,
    rep: usize,
    graph_seed: u64,
    algo: Algo,
    n: usize,
    m: usize,
    true_clusters: usize,
    found_clusters: usize,
    count_ratio: f64,
    ari: f64,
    agri: f64,
    modularity: f64,
    csi: Option<f64>,
}

const BENCH_HEADER: &str =
    "family\tparam\trep\tgraph_seed\talgo\tn\tm\ttrue_clusters\tfound_clusters\tcount_ratio\tari\tagri\tmodularity\tcsi\n";

fn run_cell(lg: &LabeledGraph, algo: Algo, ecg: &EcgOptions, seed: u64) -> ecgkit::Result<(Partition, Option<f64>)> {
    match algo {
        Algo::Ml => Ok((louvain_multilevel(&lg.graph, RngSeed::new(seed, 0))?, None)),
        Algo::Ecg => {
            let r = ecg_cluster(&lg.graph, &EcgParams::new(ecg.ens_size, ecg.min_weight, seed))?;
            Ok((r.partition, Some(r.csi)))
        }
    }
}

fn bench_grid<F>(
    family: &str,
    params: Vec<String>,
    common: &BenchCommon,
    manifest: &mut ManifestBuilder,
    make: F,
) -> CliResult<()>
where
    F: Fn(usize, u64) -> ecgkit::Result<LabeledGraph> + Sync,
{
    check_ecg_options(&common.ecg)?;
    if common.algos.is_empty() || common.seeds == 0 {
        return Err(CliError::input("need at least one algorithm and one seed"));
    }
    let master = resolve_seed(common.seed, manifest)?;
    let cells: Vec<(usize, usize)> = (0..params.len())
        .flat_map(|i| (0..common.seeds).map(move |r| (i, r)))
        .collect();
    let rows: Vec<Vec<BenchRow>> = cells
        .par_iter()
        .map(|&(i, rep)| -> ecgkit::Result<Vec<BenchRow>> {
            let graph_seed = derive_master(derive_master(master, i as u64), rep as u64);
            let lg = make(i, graph_seed)?;
            common
                .algos
                .iter()
                .map(|&algo| {
                    let (p, csi) = run_cell(&lg, algo, &common.ecg, graph_seed)?;
                    Ok(BenchRow {
                        param: params[i].clone(),
                        rep,
                        graph_seed,
                        algo,
                        n: lg.graph.num_vertices(),
                        m: lg.graph.num_edges(),
                        true_clusters: lg.truth.num_clusters(),
                        found_clusters: p.num_clusters(),
                        count_ratio: metrics::count_ratio(&p, &lg.truth)?,
                        ari: metrics::ari(&p, &lg.truth)?,
                        agri: metrics::agri(&lg.graph, &p, &lg.truth)?,
                        modularity: modularity(&lg.graph, &p)?,
                        csi,
                    })
                })
                .collect()
        })
        .collect::<ecgkit::Result<_>>()?;

    let mut table = String::from(BENCH_HEADER);
    for r in rows.iter().flatten() {
        let algo = match r.algo {
            Algo::Ml => "ml",
            Algo::Ecg => "ecg",
        };
        let csi = r.csi.map_or_else(|| "NA".to_string(), |c| format!("{c:.6}"));
        table.push_str(&format!(
            "{family}\t{}\t{}\t{}\t{algo}\t{}\t{}\t{}\t{}\t{:.6}\t{:.6}\t{:.6}\t{:.6}\t{csi}\n",
            r.param, r.rep, r.graph_seed, r.n, r.m, r.true_clusters, r.found_clusters, r.count_ratio, r.ari, r.agri, r.modularity
        ));
    }
    let dir = &common.out.out;
    prepare_dir(dir)?;
    write_text(dir.join("results.tsv"), &table)?;
    let summary = json!({
        "schema_version": SCHEMA_VERSION,
        "family": family,
        "seed": master,
        "grid_points": params.len(),
        "rows": rows.iter().map(Vec::len).sum::<usize>(),
    });
    finish(dir, &summary, manifest)
}

/// Parses `a..b` (inclusive, stepping by `step`) or a comma list.
pub fn parse_range(text: &str, step: usize) -> Result<Vec<usize>, String> {
    if step == 0 {
        return Err("step must be positive".into());
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| format!("bad range start in {text:?}"))?;
        let hi: usize = hi.trim().parse().map_err(|_| format!("bad range end in {text:?}"))?;
        if lo > hi {
            return Err(format!("empty range {text:?}"));
        }
        return Ok((lo..=hi).step_by(step).collect());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| format!("bad value {t:?} in {text:?}")))
        .collect()
}

fn bench(cmd: BenchCommand, manifest: &mut ManifestBuilder) -> CliResult<()> {
    match cmd {
        BenchCommand::Ring(a) => {
            let cliques = parse_range(&a.cliques, a.step).map_err(CliError::Usage)?;
            let labels = cliques.iter().map(usize::to_string).collect();
            bench_grid("ring", labels, &a.common, manifest, |i, seed| {
                ring_of_cliques(cliques[i], a.size, a.between, RngSeed::new(seed, 0))
            })
        }
        BenchCommand::Sbm(a) => {
            let labels = a.pout.iter().map(f64::to_string).collect();
            bench_grid("sbm", labels, &a.common, manifest, |i, seed| {
                planted_partition(&a.sizes, a.pin, a.pout[i], RngSeed::new(seed, 0))
            })
        }
    }
}

fn replay(a: &ReplayArgs) -> CliResult<()> {
    let recorded = read_manifest(&a.manifest)?;
    for input in &recorded.inputs {
        let now = crate::manifest::digest_file(Path::new(&input.path))?;
        if now.sha256 != input.sha256 {
            return Err(CliError::input(format!("{} changed since the manifest was written", input.path)));
        }
    }
    let mut argv = vec![recorded.tool.clone()];
    argv.extend(recorded.argv.iter().cloned());
    argv.push("--out".into());
    argv.push(a.out.out.display().to_string());
    let cli = Cli::try_parse_from(&argv).map_err(|e| CliError::input(format!("manifest arguments: {e}")))?;
    if matches!(cli.command, Command::Replay(_)) {
        return Err(CliError::input("a manifest cannot replay another replay"));
    }
    run(cli.command, &argv[1..])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5..20", 5).unwrap(), vec![5, 10, 15, 20]);
        assert_eq!(parse_range("3,7", 1).unwrap(), vec![3, 7]);
        assert!(parse_range("9..3", 1).is_err());
        assert!(parse_range("a..3", 1).is_err());
        assert!(parse_range("1..3", 0).is_err());
    }
}
