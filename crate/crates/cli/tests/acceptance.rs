//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;
#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::io::Write;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use ecgkit::applications::cada_pipeline;
use ecgkit::ecg::ensemble;
use ecgkit::generators::{
    degree_preserving_random, inject_anomalies, planted_partition, ring_of_cliques, zipf_sizes,
};
use ecgkit::metrics::stability;
use ecgkit::{
    agri, ari, count_ratio, ecg_cluster, ecg_weights, louvain_multilevel, modularity, two_core,
    Algorithm, EcgParams, Graph, Partition, RngSeed,
};

use common::{run_into, Fixture};

const SEEDS: u64 = 10;
const ECG: Algorithm = Algorithm::Ecg {
    ensemble_size: 16,
    min_weight: 0.05,
};

struct Outcome {
    pass: bool,
    detail: String,
}

fn criterion(id: u32, name: &str, limit: Duration, body: fn() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let in_time = elapsed <= limit;
    let pass = outcome.pass && in_time;
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "criterion {id:>2} {:<4} {name}: {} [{:.1}s of {}s]",
        if pass { "PASS" } else { "FAIL" },
        outcome.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    pass
}

fn mean(xs: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = xs.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    sum / n as f64
}

fn resolution_threshold() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for m in 2..=6usize {
        for l in 3..=40usize {
            let ring = ring_of_cliques(l, m, 1, RngSeed::from(0)).unwrap();
            let merged: Vec<usize> = (0..l * m).map(|v| v / m / 2).collect();
            let q_cliques = modularity(&ring.graph, &ring.truth).unwrap();
            let q_merged = modularity(&ring.graph, &Partition::from_labels(&merged)).unwrap();
            let cliques_win = q_cliques - q_merged > 1e-12;
            let predicted = m * (m - 1) + 2 > l;
            checked += 1;
            if cliques_win != predicted {
                mismatches.push((m, l));
            }
        }
    }
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!("{checked} (m, l) pairs, mismatches {mismatches:?}"),
    }
}

fn ml_failure_ecg_recovery() -> Outcome {
    let ring = ring_of_cliques(30, 5, 1, RngSeed::from(0)).unwrap().graph;
    let runs = 20;
    let ml_merged = (0..runs)
        .filter(|&s| louvain_multilevel(&ring, RngSeed::new(s, 0)).unwrap().num_clusters() < 30)
        .count();
    let ecg_exact = (0..runs)
        .filter(|&s| ecg_cluster(&ring, &EcgParams::new(16, 0.05, s)).unwrap().partition.num_clusters() == 30)
        .count();
    Outcome {
        pass: ml_merged * 10 >= 6 * runs as usize && ecg_exact * 10 >= 9 * runs as usize,
        detail: format!("ML < 30 clusters in {ml_merged}/{runs}, ECG = 30 in {ecg_exact}/{runs}"),
    }
}

fn small_min_weight() -> Outcome {
    let ring = ring_of_cliques(40, 5, 1, RngSeed::from(0)).unwrap().graph;
    let w_star = 1.0 / (2.0 * ring.num_vertices() as f64);
    let exact = (0..20)
        .filter(|&s| ecg_cluster(&ring, &EcgParams::new(16, w_star, s)).unwrap().partition.num_clusters() == 40)
        .count();
    Outcome {
        pass: exact == 20,
        detail: format!("w* = {w_star}, 40 clusters in {exact}/20"),
    }
}

fn weight_separation() -> Outcome {
    let mut worst = f64::INFINITY;
    let mut failing = Vec::new();
    for b in 1..=15usize {
        let mut inside = Vec::new();
        let mut across = Vec::new();
        for s in 0..SEEDS {
            let ring = ring_of_cliques(4, 5, b, RngSeed::new(s, b as u64)).unwrap();
            let w = ecg_weights(&ring.graph, &EcgParams::new(16, 0.05, s)).unwrap();
            let (mut wi, mut wa) = (Vec::new(), Vec::new());
            for (e, &x) in ring.graph.edges().iter().zip(w.as_slice()) {
                if ring.truth.same_cluster(e.u, e.v) {
                    wi.push(x);
                } else {
                    wa.push(x);
                }
            }
            inside.push(mean(wi));
            across.push(mean(wa));
        }
        let gap = mean(inside) - mean(across);
        worst = worst.min(gap);
        if gap <= 0.0 {
            failing.push(b);
        }
    }
    Outcome {
        pass: failing.is_empty(),
        detail: format!("smallest intra minus inter gap {worst:.3}, failing b {failing:?}"),
    }
}

const SBM_SIZES: [usize; 10] = [100; 10];
const SBM_PIN: f64 = 0.2;
const SBM_POUT: [f64; 3] = [0.005, 0.02, 0.05];

fn csi_ordering() -> Outcome {
    let mut by_pout = [Vec::new(), Vec::new(), Vec::new()];
    let mut null = Vec::new();
    for s in 0..SEEDS {
        for (i, &p_out) in SBM_POUT.iter().enumerate() {
            let lg = planted_partition(&SBM_SIZES, SBM_PIN, p_out, RngSeed::new(s, i as u64)).unwrap();
            by_pout[i].push(ecg_cluster(&lg.graph, &EcgParams::new(16, 0.05, s)).unwrap().csi);
            if i == 0 {
                let random = degree_preserving_random(&lg.graph, RngSeed::new(s, 100)).graph;
                null.push(ecg_cluster(&random, &EcgParams::new(16, 0.05, s)).unwrap().csi);
            }
        }
    }
    let avg: Vec<f64> = by_pout.iter().map(|v| mean(v.iter().copied())).collect();
    let null = mean(null);
    Outcome {
        pass: avg[0] > avg[1] && avg[1] > avg[2] && null < avg[0] - 0.1,
        detail: format!("CSI {:.3} > {:.3} > {:.3}, null {null:.3}", avg[0], avg[1], avg[2]),
    }
}

fn stability_dominance() -> Outcome {
    let p_out = SBM_POUT[1];
    let mut wins = 0;
    let mut ties = 0;
    for s in 0..SEEDS {
        let lg = planted_partition(&SBM_SIZES, SBM_PIN, p_out, RngSeed::new(s, 1)).unwrap();
        let e = stability(&lg.graph, ECG, 5, s).unwrap().ari_mean;
        let m = stability(&lg.graph, Algorithm::Multilevel, 5, s).unwrap().ari_mean;
        if e > m {
            wins += 1;
        } else if e == m {
            ties += 1;
        }
    }
    Outcome {
        pass: wins >= 8,
        detail: format!("p_out {p_out}: ECG more stable on {wins}/{SEEDS} graphs, tied on {ties}"),
    }
}

const HETERO_POUT: [f64; 5] = [0.002, 0.005, 0.01, 0.02, 0.03];
const HETERO_PIN: f64 = 0.25;
const HIGH_NOISE: [usize; 2] = [3, 4];

fn hetero_sizes() -> Vec<usize> {
    zipf_sizes(2000, 20, 1.0, 30).unwrap()
}

fn accuracy_dominance() -> Outcome {
    let sizes = hetero_sizes();
    let mut pass = true;
    let mut notes = Vec::new();
    for (i, &p_out) in HETERO_POUT.iter().enumerate() {
        let mut rows = Vec::new();
        for s in 0..SEEDS {
            let lg = planted_partition(&sizes, HETERO_PIN, p_out, RngSeed::new(s, i as u64)).unwrap();
            let e = ECG.run(&lg.graph, s).unwrap();
            let m = Algorithm::Multilevel.run(&lg.graph, s).unwrap();
            rows.push([
                ari(&e, &lg.truth).unwrap(),
                ari(&m, &lg.truth).unwrap(),
                agri(&lg.graph, &e, &lg.truth).unwrap(),
                agri(&lg.graph, &m, &lg.truth).unwrap(),
                (count_ratio(&e, &lg.truth).unwrap() - 1.0).abs(),
                (count_ratio(&m, &lg.truth).unwrap() - 1.0).abs(),
            ]);
        }
        let avg: Vec<f64> = (0..6).map(|k| mean(rows.iter().map(|r| r[k]))).collect();
        let mut ok = avg[0] >= avg[1] && avg[2] >= avg[3];
        if HIGH_NOISE.contains(&i) {
            ok &= avg[4] < avg[5];
        }
        pass &= ok;
        notes.push(format!(
            "{p_out}: ARI {:.3}/{:.3} AGRI {:.3}/{:.3} |cr-1| {:.3}/{:.3}",
            avg[0], avg[1], avg[2], avg[3], avg[4], avg[5]
        ));
    }
    Outcome {
        pass,
        detail: format!("ECG/ML {}", notes.join("; ")),
    }
}

fn cada_proxy() -> Outcome {
    let sizes = hetero_sizes();
    let mut pass = true;
    let mut notes = Vec::new();
    for &i in &HIGH_NOISE {
        let p_out = HETERO_POUT[i];
        let (mut e, mut m) = (Vec::new(), Vec::new());
        for s in 0..SEEDS {
            let lg = planted_partition(&sizes, HETERO_PIN, p_out, RngSeed::new(s, i as u64)).unwrap();
            let lg = inject_anomalies(&lg, 40, RngSeed::new(s, 200)).unwrap().graph;
            e.push(cada_pipeline(&lg, ECG, s).unwrap());
            m.push(cada_pipeline(&lg, Algorithm::Multilevel, s).unwrap());
        }
        let (e, m) = (mean(e), mean(m));
        pass &= e >= m && m > 0.5 && e > 0.5;
        notes.push(format!("{p_out}: AUC ECG {e:.4} ML {m:.4}"));
    }
    Outcome {
        pass,
        detail: notes.join("; "),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = RngSeed::from(2024).rng();
    let mut failures: Vec<String> = Vec::new();
    let mut graphs = 0;
    while graphs < 200 {
        let n = rng.random_range(2..=12usize);
        let density = rng.random_range(0.15..0.9);
        let weighted = rng.random_bool(0.5);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(density) {
                    let w = if weighted { f64::from(rng.random_range(1..=8u32)) / 4.0 } else { 1.0 };
                    edges.push((u, v, w));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        graphs += 1;
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        let a: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
        let b: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
        let (pa, pb) = (Partition::from_labels(&a), Partition::from_labels(&b));

        if (modularity(&g, &pa).unwrap() - oracles::modularity(n, &edges, &a)).abs() > 1e-10 {
            failures.push(format!("modularity on graph {graphs}"));
        }
        if (ari(&pa, &pb).unwrap() - oracles::ari(&a, &b)).abs() > 1e-10 {
            failures.push(format!("ARI on graph {graphs}"));
        }
        if (agri(&g, &pa, &pb).unwrap() - oracles::agri(&edges, &a, &b)).abs() > 1e-10 {
            failures.push(format!("AGRI on graph {graphs}"));
        }
        if two_core(&g).as_slice() != oracles::two_core(n, &edges).as_slice() {
            failures.push(format!("2-core on graph {graphs}"));
        }
        let params = EcgParams::new(rng.random_range(1..=8), 0.05, rng.random());
        let labels: Vec<Vec<usize>> = ensemble(&g, &params)
            .unwrap()
            .iter()
            .map(|p| p.labels().to_vec())
            .collect();
        let expected = oracles::ecg_weights(n, &edges, &labels, params.min_weight);
        let got = ecg_weights(&g, &params).unwrap();
        if got.as_slice().iter().zip(&expected).any(|(x, y)| (x - y).abs() > 1e-10) {
            failures.push(format!("consensus weights on graph {graphs}"));
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!("{graphs} graphs, mismatches {failures:?}"),
    }
}

fn determinism() -> Outcome {
    let f = Fixture::new();
    let mut differing = Vec::new();
    let commands = f.commands();
    for (name, args) in &commands {
        let first = run_into(args, &f.dir(&format!("{name}-a")), 1);
        let second = run_into(args, &f.dir(&format!("{name}-b")), 1);
        let parallel = run_into(args, &f.dir(&format!("{name}-c")), 4);
        if first != second || first != parallel {
            differing.push(name.to_string());
        }
    }
    let manifest = f.dir("ecg-a").join("manifest.json");
    let replay: Vec<String> = ["replay", "--manifest", common::path(&manifest)]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let replays = [1, 4].map(|w| run_into(&replay, &f.dir(&format!("replay-{w}")), w).1);
    if replays.iter().any(|r| *r != common::snapshot(&f.dir("ecg-a"))) {
        differing.push("replay".into());
    }
    Outcome {
        pass: differing.is_empty(),
        detail: format!("{} commands plus replay, differing {differing:?}", commands.len()),
    }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "resolution threshold", secs(10), resolution_threshold),
        criterion(2, "ML resolution failure, ECG recovery", secs(60), ml_failure_ecg_recovery),
        criterion(3, "small minimum weight", secs(60), small_min_weight),
        criterion(4, "weight separation on rings", secs(60), weight_separation),
        criterion(5, "CSI ordering", secs(300), csi_ordering),
        criterion(6, "stability dominance", secs(300), stability_dominance),
        criterion(7, "accuracy on heterogeneous blocks", secs(600), accuracy_dominance),
        criterion(8, "anomaly detection", secs(600), cada_proxy),
        criterion(9, "oracle equivalence", secs(30), oracle_equivalence),
        criterion(10, "CLI determinism", secs(600), determinism),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    let _ = writeln!(std::io::stderr(), "acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
