//! Uses of ECG output: the dimmer sub-graph around a seed vertex and
//! community-aware anomaly (CADA) scores.

use std::collections::HashMap;

use crate::ecg::EdgeWeightMap;
use crate::error::{Error, Result};
use crate::generators::LabeledGraph;
use crate::graph::{connected_component, Graph, Subgraph};
use crate::metrics::{roc_auc, Algorithm};
use crate::partition::Partition;

fn check_inputs(g: &Graph, w: &EdgeWeightMap, p: &Partition, seed_vertex: usize) -> Result<()> {
    if w.len() != g.num_edges() {
        return Err(Error::SizeMismatch {
            expected: g.num_edges(),
            found: w.len(),
        });
    }
    p.check_len(g.num_vertices())?;
    if seed_vertex >= g.num_vertices() {
        return Err(Error::VertexOutOfRange {
            vertex: seed_vertex,
            n: g.num_vertices(),
        });
    }
    Ok(())
}

/// Component of `seed_vertex` inside its own cluster after deleting every
/// edge whose weight is strictly below `theta`.
pub fn dimmer(
    g: &Graph,
    w: &EdgeWeightMap,
    p: &Partition,
    seed_vertex: usize,
    theta: f64,
) -> Result<Subgraph> {
    check_inputs(g, w, p, seed_vertex)?;
    let cluster = p.label(seed_vertex);
    let weights = w.as_slice();
    connected_component(g, seed_vertex, |i, e| {
        p.label(e.u) == cluster && p.label(e.v) == cluster && weights[i] >= theta
    })
}

#[derive(Debug, Clone)]
pub struct DimmerProfile {
    pub thresholds: Vec<f64>,
    pub subgraph_sizes: Vec<usize>,
    pub subgraphs: Option<Vec<Subgraph>>,
}

/// Evaluates the dimmer at `steps` evenly spaced thresholds in `[0, 1]` and
/// at every distinct weight inside the seed's cluster. When some weight
/// reaches 1 the float just above the largest weight is added too, so the
/// profile always ends with the seed alone.
pub fn dimmer_profile(
    g: &Graph,
    w: &EdgeWeightMap,
    p: &Partition,
    seed_vertex: usize,
    steps: usize,
    keep_subgraphs: bool,
) -> Result<DimmerProfile> {
    if steps < 2 {
        return Err(Error::InvalidParameter("profile needs at least 2 steps".into()));
    }
    check_inputs(g, w, p, seed_vertex)?;
    let cluster = p.label(seed_vertex);
    let mut thresholds: Vec<f64> = (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect();
    let inside = g
        .edges()
        .iter()
        .zip(w.as_slice())
        .filter(|(e, _)| p.label(e.u) == cluster && p.label(e.v) == cluster)
        .map(|(_, &x)| x);
    let mut top = 0.0f64;
    for x in inside {
        thresholds.push(x);
        top = top.max(x);
    }
    if top >= 1.0 {
        thresholds.push(top.next_up());
    }
    thresholds.sort_by(f64::total_cmp);
    thresholds.dedup();

    let mut subgraph_sizes = Vec::with_capacity(thresholds.len());
    let mut subgraphs = keep_subgraphs.then(Vec::new);
    for &theta in &thresholds {
        let sub = dimmer(g, w, p, seed_vertex, theta)?;
        subgraph_sizes.push(sub.graph.num_vertices());
        if let Some(list) = subgraphs.as_mut() {
            list.push(sub);
        }
    }
    Ok(DimmerProfile {
        thresholds,
        subgraph_sizes,
        subgraphs,
    })
}

/// CADA scores `N(v) / N_c(v)`: degree over the largest number of
/// neighbors sharing one cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct AnomalyScores {
    pub scores: Vec<f64>,
    /// Degree-0 vertices, whose score is fixed at 1.
    pub undefined_mask: Vec<bool>,
}

pub fn cada_scores(g: &Graph, p: &Partition) -> Result<AnomalyScores> {
    p.check_len(g.num_vertices())?;
    let n = g.num_vertices();
    let mut scores = vec![1.0; n];
    let mut undefined_mask = vec![false; n];
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() {
            undefined_mask[v] = true;
            continue;
        }
        counts.clear();
        for &(u, _) in nbrs {
            *counts.entry(p.label(u)).or_default() += 1;
        }
        let top = counts.values().copied().max().unwrap_or(1);
        scores[v] = nbrs.len() as f64 / top as f64;
    }
    Ok(AnomalyScores {
        scores,
        undefined_mask,
    })
}

/// Clusters the graph with `algo` (master seed `seed`), scores every vertex
/// and returns the AUC of the scores against the anomaly mask.
pub fn cada_pipeline(lg: &LabeledGraph, algo: Algorithm, seed: u64) -> Result<f64> {
    let mask = lg
        .anomalies
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("graph has no anomaly mask".into()))?;
    let partition = algo.run(&lg.graph, seed)?;
    let scores = cada_scores(&lg.graph, &partition)?;
    roc_auc(&scores.scores, mask.as_slice())
}
