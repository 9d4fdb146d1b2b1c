//! Ensemble clustering for graphs.
//!
//! `k` level-1 Louvain runs vote on every edge: an edge whose endpoints are
//! both in the 2-core gets weight `w* + (1 - w*) * votes / k`, where `votes`
//! is the number of runs that put both endpoints in the same cluster. Every
//! other edge gets `w*`. A multilevel Louvain run on the re-weighted graph
//! gives the consensus partition.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{two_core, Graph, VertexMask};
use crate::louvain::{louvain_level1, louvain_multilevel, modularity};
use crate::partition::Partition;
use crate::rng::RngSeed;

pub const DEFAULT_ENSEMBLE_SIZE: usize = 16;
pub const DEFAULT_MIN_WEIGHT: f64 = 0.05;

/// How input edge weights enter the integration pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Combine {
    /// Cluster on the consensus weights alone.
    #[default]
    Replace,
    /// Multiply each consensus weight by the input weight.
    Multiply,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcgParams {
    pub ensemble_size: usize,
    pub min_weight: f64,
    pub seed: u64,
    pub combine: Combine,
}

impl Default for EcgParams {
    fn default() -> Self {
        EcgParams {
            ensemble_size: DEFAULT_ENSEMBLE_SIZE,
            min_weight: DEFAULT_MIN_WEIGHT,
            seed: 0,
            combine: Combine::Replace,
        }
    }
}

impl EcgParams {
    pub fn new(ensemble_size: usize, min_weight: f64, seed: u64) -> Self {
        EcgParams {
            ensemble_size,
            min_weight,
            seed,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ensemble_size == 0 {
            return Err(Error::InvalidParameter("ensemble size must be at least 1".into()));
        }
        if !(self.min_weight > 0.0 && self.min_weight < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "minimum weight must lie in (0, 1), got {}",
                self.min_weight
            )));
        }
        Ok(())
    }

    /// Seed of the `i`-th ensemble run.
    pub fn generation_seed(&self, i: usize) -> RngSeed {
        RngSeed::new(self.seed, i as u64)
    }

    /// Seed of the integration run, distinct from every generation stream.
    pub fn integration_seed(&self) -> RngSeed {
        RngSeed::new(self.seed, self.ensemble_size as u64)
    }
}

/// Consensus weight of each edge, aligned to the graph's edge indices.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeightMap(Vec<f64>);

impl EdgeWeightMap {
    pub fn new(weights: Vec<f64>) -> Self {
        EdgeWeightMap(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Per-edge co-membership counts over an ensemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoAssociation {
    pub counts: Vec<u32>,
    pub ensemble_size: usize,
}

impl CoAssociation {
    pub fn from_partitions(g: &Graph, partitions: &[Partition]) -> Self {
        let mut counts = vec![0u32; g.num_edges()];
        for p in partitions {
            for (c, e) in counts.iter_mut().zip(g.edges()) {
                *c += u32::from(p.same_cluster(e.u, e.v));
            }
        }
        CoAssociation {
            counts,
            ensemble_size: partitions.len(),
        }
    }

    /// Applies the consensus weighting. `core` gates which edges may rise
    /// above `min_weight`.
    pub fn weights(&self, g: &Graph, core: &VertexMask, min_weight: f64) -> EdgeWeightMap {
        let k = self.ensemble_size as f64;
        let weights = g
            .edges()
            .iter()
            .zip(&self.counts)
            .map(|(e, &votes)| {
                if core.contains(e.u) && core.contains(e.v) {
                    min_weight + (1.0 - min_weight) * (f64::from(votes) / k)
                } else {
                    min_weight
                }
            })
            .collect();
        EdgeWeightMap(weights)
    }
}

/// The `k` level-1 partitions, one per generation stream. Runs execute in
/// parallel and are returned in stream order.
pub fn ensemble(g: &Graph, params: &EcgParams) -> Result<Vec<Partition>> {
    params.validate()?;
    (0..params.ensemble_size)
        .into_par_iter()
        .map(|i| louvain_level1(g, params.generation_seed(i)))
        .collect()
}

pub fn ecg_weights(g: &Graph, params: &EcgParams) -> Result<EdgeWeightMap> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let partitions = ensemble(g, params)?;
    let core = two_core(g);
    Ok(CoAssociation::from_partitions(g, &partitions).weights(g, &core, params.min_weight))
}

/// Community strength indicator: one minus twice the mean distance of the
/// weights from the nearest of 0 and 1.
pub fn csi(weights: &EdgeWeightMap) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let spread: f64 = weights.0.iter().map(|&w| w.min(1.0 - w)).sum();
    Ok(1.0 - 2.0 * spread / weights.len() as f64)
}

#[derive(Debug, Clone)]
pub struct EcgResult {
    pub partition: Partition,
    pub weights: EdgeWeightMap,
    pub csi: f64,
    pub params: EcgParams,
    /// Modularity of the partition on the re-weighted graph.
    pub weighted_modularity: f64,
    /// Number of vertices in the 2-core of the input graph.
    pub core_size: usize,
}

pub fn ecg_cluster(g: &Graph, params: &EcgParams) -> Result<EcgResult> {
    let weights = ecg_weights(g, params)?;
    let integration: Vec<f64> = match params.combine {
        Combine::Replace => weights.0.clone(),
        Combine::Multiply => weights.0.iter().zip(g.edges()).map(|(w, e)| w * e.w).collect(),
    };
    let reweighted = g.with_weights(&integration)?;
    let partition = louvain_multilevel(&reweighted, params.integration_seed())?;
    Ok(EcgResult {
        csi: csi(&weights)?,
        weighted_modularity: modularity(&reweighted, &partition)?,
        core_size: two_core(g).count(),
        partition,
        weights,
        params: *params,
    })
}
