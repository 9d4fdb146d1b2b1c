//! Synthetic graphs with planted ground truth.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexMask};
use crate::partition::Partition;
use crate::rng::RngSeed;

/// A graph with its true communities and, optionally, planted anomalies.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub truth: Partition,
    pub anomalies: Option<VertexMask>,
}

/// `l` cliques of `m` vertices arranged in a ring, with `b` random edges
/// between each pair of consecutive cliques. Clique `c` owns vertices
/// `c*m .. (c+1)*m`. With `b = 1` the last vertex of each clique is joined
/// to the first vertex of the next one.
pub fn ring_of_cliques(l: usize, m: usize, b: usize, seed: RngSeed) -> Result<LabeledGraph> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("need at least 3 cliques, got {l}")));
    }
    if m < 2 {
        return Err(Error::InvalidParameter(format!("clique size must be at least 2, got {m}")));
    }
    if b < 1 || b > m * m {
        return Err(Error::InvalidParameter(format!(
            "edges between cliques must lie in 1..={}, got {b}",
            m * m
        )));
    }
    let mut rng = seed.rng();
    let mut edges = Vec::with_capacity(l * (m * (m - 1) / 2 + b));
    for c in 0..l {
        let base = c * m;
        for i in 0..m {
            for j in i + 1..m {
                edges.push((base + i, base + j));
            }
        }
        let next = ((c + 1) % l) * m;
        if b == 1 {
            edges.push((base + m - 1, next));
        } else {
            for pair in index::sample(&mut rng, m * m, b) {
                edges.push((base + pair / m, next + pair % m));
            }
        }
    }
    let graph = Graph::from_unweighted(l * m, edges)?;
    let truth = Partition::from_labels(&(0..l * m).map(|v| v / m).collect::<Vec<_>>());
    Ok(LabeledGraph {
        graph,
        truth,
        anomalies: None,
    })
}

/// Stochastic block model: each pair inside a block is an edge with
/// probability `p_in`, each pair across blocks with probability `p_out`.
pub fn planted_partition(sizes: &[usize], p_in: f64, p_out: f64, seed: RngSeed) -> Result<LabeledGraph> {
    if sizes.is_empty() {
        return Err(Error::InvalidParameter("need at least one block".into()));
    }
    for p in [p_in, p_out] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
        }
    }
    let block: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    let n = block.len();
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if block[u] == block[v] { p_in } else { p_out };
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    let graph = Graph::from_unweighted(n, edges)?;
    Ok(LabeledGraph {
        graph,
        truth: Partition::from_labels(&block),
        anomalies: None,
    })
}

/// Block sizes proportional to `1 / rank^exponent`, each at least
/// `min_size`, summing to exactly `n`.
pub fn zipf_sizes(n: usize, blocks: usize, exponent: f64, min_size: usize) -> Result<Vec<usize>> {
    if blocks == 0 || blocks * min_size > n {
        return Err(Error::InvalidParameter(format!(
            "cannot split {n} vertices into {blocks} blocks of at least {min_size}"
        )));
    }
    let raw: Vec<f64> = (1..=blocks).map(|r| (r as f64).powf(-exponent)).collect();
    let total: f64 = raw.iter().sum();
    let spare = (n - blocks * min_size) as f64;
    let mut sizes: Vec<usize> = raw
        .iter()
        .map(|x| min_size + (spare * x / total).floor() as usize)
        .collect();
    let mut left = n - sizes.iter().sum::<usize>();
    for s in sizes.iter_mut() {
        if left == 0 {
            break;
        }
        *s += 1;
        left -= 1;
    }
    Ok(sizes)
}

/// Configuration-model graph with the degree sequence of `g`.
#[derive(Debug, Clone)]
pub struct NullModel {
    pub graph: Graph,
    /// Stub pairs dropped because they formed a self-loop or repeated an
    /// edge; the output has `2 * discarded` fewer degree units than `g`.
    pub discarded: usize,
}

/// Random stub matching on the degree sequence of `g`. Self-loops and
/// repeated pairs are dropped rather than resampled.
pub fn degree_preserving_random(g: &Graph, seed: RngSeed) -> NullModel {
    let mut stubs: Vec<usize> = (0..g.num_vertices())
        .flat_map(|v| std::iter::repeat_n(v, g.degree(v)))
        .collect();
    let mut rng = seed.rng();
    stubs.shuffle(&mut rng);
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    let mut discarded = 0;
    for pair in stubs.chunks_exact(2) {
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u == v || !seen.insert((u, v)) {
            discarded += 1;
        } else {
            edges.push((u, v));
        }
    }
    let graph = Graph::from_unweighted(g.num_vertices(), edges).expect("stub pairs are valid edges");
    NullModel { graph, discarded }
}

#[derive(Debug, Clone)]
pub struct Injected {
    pub graph: LabeledGraph,
    /// Anomalies whose sampled degree exceeded the vertex count and was
    /// clamped.
    pub clamped: usize,
}

/// Appends `count` anomalous vertices. Each draws its degree uniformly from
/// the original degree sequence and attaches to that many distinct
/// original vertices chosen uniformly. Anomalies get singleton truth
/// labels and are marked in the anomaly mask.
pub fn inject_anomalies(lg: &LabeledGraph, count: usize, seed: RngSeed) -> Result<Injected> {
    let g = &lg.graph;
    let n = g.num_vertices();
    if count == 0 {
        return Err(Error::InvalidParameter("anomaly count must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("cannot inject into an empty graph".into()));
    }
    lg.truth.check_len(n)?;
    let degrees = g.degrees();
    let mut rng = seed.rng();
    let mut edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
    let mut clamped = 0;
    for a in 0..count {
        let mut d = degrees[rng.random_range(0..n)];
        if d > n {
            d = n;
            clamped += 1;
        }
        for t in index::sample(&mut rng, n, d) {
            edges.push((t, n + a, 1.0));
        }
    }
    let graph = Graph::from_edges(n + count, edges)?;
    let truth = lg.truth.with_singletons_appended(count);
    let mut mask = lg
        .anomalies
        .as_ref()
        .map_or_else(|| vec![false; n], |m| m.as_slice().to_vec());
    mask.resize(n + count, true);
    Ok(Injected {
        graph: LabeledGraph {
            graph,
            truth,
            anomalies: Some(VertexMask::new(mask)),
        },
        clamped,
    })
}
