//! Community detection with ensemble clustering for graphs (ECG).
//!
//! ECG builds an ensemble of weak partitions with randomized single-level
//! Louvain runs, turns their agreement on each edge into a consensus edge
//! weight and clusters the re-weighted graph with multilevel Louvain. The
//! crate also ships the pieces needed to evaluate it: partition similarity
//! measures, synthetic graph generators, and the dimmer and CADA
//! applications built on ECG weights.

pub mod applications;
pub mod ecg;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod louvain;
pub mod metrics;
pub mod partition;
pub mod rng;

pub use ecg::{csi, ecg_cluster, ecg_weights, Combine, EcgParams, EcgResult, EdgeWeightMap};
pub use error::{Error, Result};
pub use graph::{connected_component, two_core, Edge, Graph, Subgraph, VertexMask};
pub use louvain::{louvain_level1, louvain_multilevel, modularity};
pub use metrics::{agri, ari, count_ratio, roc_auc, Algorithm, ComparisonReport};
pub use partition::Partition;
pub use rng::RngSeed;
