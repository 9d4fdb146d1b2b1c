//! Partition similarity and evaluation measures.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::ecg::{ecg_cluster, EcgParams};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::louvain::louvain_multilevel;
use crate::partition::Partition;
use crate::rng::{derive_master, RngSeed};

fn check_same_len(p: &Partition, q: &Partition) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            found: q.len(),
        });
    }
    Ok(())
}

fn pairs(x: u64) -> f64 {
    (x * x.saturating_sub(1) / 2) as f64
}

/// Adjusted Rand index over all vertex pairs.
///
/// Returns 1 when the adjustment is degenerate (both partitions all
/// singletons, both a single cluster, or fewer than two vertices).
pub fn ari(p: &Partition, q: &Partition) -> Result<f64> {
    check_same_len(p, q)?;
    let mut table: HashMap<(usize, usize), u64> = HashMap::new();
    for (&a, &b) in p.labels().iter().zip(q.labels()) {
        *table.entry((a, b)).or_default() += 1;
    }
    let index: f64 = table.values().map(|&c| pairs(c)).sum();
    let sum_p: f64 = p.sizes().into_iter().map(|s| pairs(s as u64)).sum();
    let sum_q: f64 = q.sizes().into_iter().map(|s| pairs(s as u64)).sum();
    let total = pairs(p.len() as u64);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = sum_p * sum_q / total;
    let max = 0.5 * (sum_p + sum_q);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// Graph-aware adjusted Rand index, restricted to edges.
///
/// With `a_e` (resp. `b_e`) marking edges whose endpoints share a cluster
/// in `p` (resp. `q`):
///
/// ```text
/// R = mean(a_e == b_e)
/// E = pa * pb + (1 - pa) * (1 - pb),   pa = mean(a_e), pb = mean(b_e)
/// AGRI = (R - E) / (1 - E)
/// ```
///
/// When `E = 1` both partitions agree on every edge and the result is 1.
pub fn agri(g: &Graph, p: &Partition, q: &Partition) -> Result<f64> {
    p.check_len(g.num_vertices())?;
    q.check_len(g.num_vertices())?;
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let (mut agree, mut in_p, mut in_q) = (0u64, 0u64, 0u64);
    for e in g.edges() {
        let a = p.same_cluster(e.u, e.v);
        let b = q.same_cluster(e.u, e.v);
        agree += u64::from(a == b);
        in_p += u64::from(a);
        in_q += u64::from(b);
    }
    let m = g.num_edges() as f64;
    let raw = agree as f64 / m;
    let (pa, pb) = (in_p as f64 / m, in_q as f64 / m);
    let expected = pa * pb + (1.0 - pa) * (1.0 - pb);
    if expected == 1.0 {
        return Ok(1.0);
    }
    Ok((raw - expected) / (1.0 - expected))
}

/// Number of found clusters over number of true clusters.
pub fn count_ratio(found: &Partition, truth: &Partition) -> Result<f64> {
    if truth.num_clusters() == 0 {
        return Err(Error::InvalidParameter("reference partition has no clusters".into()));
    }
    Ok(found.num_clusters() as f64 / truth.num_clusters() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub ari: f64,
    /// Present when a graph was supplied.
    pub agri: Option<f64>,
    pub count_ratio: f64,
}

pub fn compare(found: &Partition, truth: &Partition, g: Option<&Graph>) -> Result<ComparisonReport> {
    Ok(ComparisonReport {
        ari: ari(found, truth)?,
        agri: g.map(|g| agri(g, found, truth)).transpose()?,
        count_ratio: count_ratio(found, truth)?,
    })
}

/// Algorithm whose run-to-run stability is measured.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Algorithm {
    Multilevel,
    Ecg { ensemble_size: usize, min_weight: f64 },
}

impl Algorithm {
    /// Clusters `g` with a master seed.
    pub fn run(&self, g: &Graph, seed: u64) -> Result<Partition> {
        match *self {
            Algorithm::Multilevel => louvain_multilevel(g, RngSeed::new(seed, 0)),
            Algorithm::Ecg {
                ensemble_size,
                min_weight,
            } => ecg_cluster(g, &EcgParams::new(ensemble_size, min_weight, seed)).map(|r| r.partition),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub first: usize,
    pub second: usize,
    pub ari: f64,
    pub agri: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    pub ari_mean: f64,
    pub agri_mean: f64,
    pub per_pair: Vec<PairScore>,
}

/// Runs `algo` `runs` times with seeds derived from `master` and averages
/// ARI and AGRI over all pairs of runs.
pub fn stability(g: &Graph, algo: Algorithm, runs: usize, master: u64) -> Result<StabilityReport> {
    if runs < 2 {
        return Err(Error::InvalidParameter("stability needs at least 2 runs".into()));
    }
    let partitions: Vec<Partition> = (0..runs)
        .into_par_iter()
        .map(|i| algo.run(g, derive_master(master, i as u64)))
        .collect::<Result<_>>()?;
    let mut per_pair = Vec::with_capacity(runs * (runs - 1) / 2);
    for i in 0..runs {
        for j in i + 1..runs {
            per_pair.push(PairScore {
                first: i,
                second: j,
                ari: ari(&partitions[i], &partitions[j])?,
                agri: agri(g, &partitions[i], &partitions[j])?,
            });
        }
    }
    let count = per_pair.len() as f64;
    Ok(StabilityReport {
        ari_mean: per_pair.iter().map(|s| s.ari).sum::<f64>() / count,
        agri_mean: per_pair.iter().map(|s| s.agri).sum::<f64>() / count,
        per_pair,
    })
}

/// Area under the ROC curve: the probability that a random positive
/// scores above a random negative, ties counting one half.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::SizeMismatch {
            expected: scores.len(),
            found: labels.len(),
        });
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::InvalidParameter("scores contain NaN".into()));
    }
    let positives = labels.iter().filter(|&&b| b).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(Error::InvalidParameter(
            "ROC AUC needs at least one positive and one negative label".into(),
        ));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    // average ranks (1-based) over tied groups
    let mut rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let mid_rank = (start + end + 1) as f64 / 2.0;
        let tied_pos = order[start..end].iter().filter(|&&i| labels[i]).count();
        rank_sum += mid_rank * tied_pos as f64;
        start = end;
    }
    let (p, n) = (positives as f64, negatives as f64);
    Ok((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}
