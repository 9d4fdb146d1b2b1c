use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

/// Assignment of every vertex to a cluster.
///
/// Labels are dense (`0..num_clusters`) and canonical: clusters are
/// numbered in order of their smallest vertex, so two partitions that group
/// vertices identically compare equal regardless of how they were labeled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    labels: Vec<usize>,
    num_clusters: usize,
}

impl Partition {
    /// Canonicalizes arbitrary labels.
    pub fn from_labels<T: Hash + Eq + Copy>(raw: &[T]) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let labels: Vec<usize> = raw
            .iter()
            .map(|x| {
                let next = ids.len();
                *ids.entry(*x).or_insert(next)
            })
            .collect();
        Partition {
            num_clusters: ids.len(),
            labels,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            num_clusters: n,
        }
    }

    pub fn all_in_one(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            num_clusters: usize::from(n > 0),
        }
    }

    #[inline]
    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn num_clusters(&self) -> usize {
        self.num_clusters
    }

    /// Cluster sizes indexed by label.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_clusters];
        for &c in &self.labels {
            sizes[c] += 1;
        }
        sizes
    }

    /// Vertices of each cluster, ascending.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters];
        for (v, &c) in self.labels.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    #[inline]
    pub fn same_cluster(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.labels.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: self.labels.len(),
            });
        }
        Ok(())
    }

    /// Extends the partition with `extra` new vertices, each in its own
    /// new cluster.
    pub fn with_singletons_appended(&self, extra: usize) -> Self {
        let mut labels = self.labels.clone();
        labels.extend(self.num_clusters..self.num_clusters + extra);
        Partition {
            labels,
            num_clusters: self.num_clusters + extra,
        }
    }
}
