//! Randomized Louvain modularity optimization.
//!
//! [`louvain_level1`] runs only the first local-moving phase from singletons
//! (the weak partitions used to build ECG ensembles). [`louvain_multilevel`]
//! alternates local moving and aggregation until no vertex moves.
//!
//! Modularity uses resolution 1:
//!
//! ```text
//! Q = sum_c [ W_c / W - (S_c / 2W)^2 ]
//! ```
//!
//! with `W` the total edge weight, `W_c` the weight inside cluster `c` and
//! `S_c` the summed strength of its vertices.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::Partition;
use crate::rng::RngSeed;

/// A move (or a level) must raise modularity by more than this.
pub const MOVE_TOLERANCE: f64 = 1e-9;

/// Newman-Girvan modularity of `p` on `g`.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    p.check_len(g.num_vertices())?;
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let total = g.total_weight();
    let mut inside = vec![0.0; p.num_clusters()];
    let mut strength = vec![0.0; p.num_clusters()];
    for e in g.edges() {
        let (cu, cv) = (p.label(e.u), p.label(e.v));
        if cu == cv {
            inside[cu] += e.w;
        }
        strength[cu] += e.w;
        strength[cv] += e.w;
    }
    Ok(inside
        .iter()
        .zip(&strength)
        .map(|(&w_in, &s)| w_in / total - (s / (2.0 * total)).powi(2))
        .sum())
}

/// Partition after the first local-moving phase, with no aggregation.
pub fn louvain_level1(g: &Graph, seed: RngSeed) -> Result<Partition> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let work = WorkGraph::from_graph(g);
    let mut rng = seed.rng();
    let (community, _) = work.local_moving(&mut rng);
    Ok(Partition::from_labels(&community))
}

/// Full multilevel Louvain. The first level consumes the random stream
/// exactly as [`louvain_level1`] does, so both start from the same
/// partition for a given seed.
pub fn louvain_multilevel(g: &Graph, seed: RngSeed) -> Result<Partition> {
    if g.num_edges() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut work = WorkGraph::from_graph(g);
    let mut rng = seed.rng();
    let mut membership: Vec<usize> = (0..g.num_vertices()).collect();
    loop {
        // every accepted move gained more than MOVE_TOLERANCE, so a level
        // with at least one move is an improvement above tolerance
        let (community, moved) = work.local_moving(&mut rng);
        if !moved {
            break;
        }
        let (community, count) = compact(&community);
        for m in membership.iter_mut() {
            *m = community[*m];
        }
        work = work.aggregate(&community, count);
    }
    Ok(Partition::from_labels(&membership))
}

fn compact(labels: &[usize]) -> (Vec<usize>, usize) {
    let p = Partition::from_labels(labels);
    let count = p.num_clusters();
    (p.labels().to_vec(), count)
}

/// Weighted graph with self-loops, as produced by aggregation.
struct WorkGraph {
    offsets: Vec<usize>,
    /// `(neighbor, weight)` in both directions, self-loops excluded.
    links: Vec<(usize, f64)>,
    /// Weight of edges folded inside each node (each counted once).
    self_weight: Vec<f64>,
    /// Weighted degree, a self-loop contributing twice its weight.
    strength: Vec<f64>,
    total: f64,
}

impl WorkGraph {
    fn from_graph(g: &Graph) -> Self {
        let n = g.num_vertices();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut links = Vec::with_capacity(2 * g.num_edges());
        offsets.push(0);
        for v in 0..n {
            links.extend(g.neighbors(v).iter().map(|&(u, e)| (u, g.edge(e).w)));
            offsets.push(links.len());
        }
        let strength = (0..n).map(|v| g.strength(v)).collect();
        WorkGraph {
            offsets,
            links,
            self_weight: vec![0.0; n],
            strength,
            total: g.total_weight(),
        }
    }

    fn len(&self) -> usize {
        self.strength.len()
    }

    fn links(&self, v: usize) -> &[(usize, f64)] {
        &self.links[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Local moving from singletons until a full sweep makes no move.
    /// Returns the community of each node and whether anything moved.
    fn local_moving<R: Rng>(&self, rng: &mut R) -> (Vec<usize>, bool) {
        let n = self.len();
        let two_w = 2.0 * self.total;
        let mut community: Vec<usize> = (0..n).collect();
        let mut community_strength = self.strength.clone();
        let mut link_weight = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut order: Vec<usize> = (0..n).collect();
        let mut any_move = false;

        loop {
            order.shuffle(rng);
            let mut moved = false;
            for &v in &order {
                let home = community[v];
                let k = self.strength[v];
                for &(u, w) in self.links(v) {
                    let c = community[u];
                    if link_weight[c] == 0.0 {
                        touched.push(c);
                    }
                    link_weight[c] += w;
                }
                community_strength[home] -= k;

                // gains are in units of W; divide by W for delta-Q
                let stay = link_weight[home] - community_strength[home] * k / two_w;
                let mut best: Option<(usize, f64)> = None;
                for &c in &touched {
                    if c == home {
                        continue;
                    }
                    let gain = link_weight[c] - community_strength[c] * k / two_w;
                    best = match best {
                        Some((bc, bg)) if bg > gain || (bg == gain && bc < c) => Some((bc, bg)),
                        _ => Some((c, gain)),
                    };
                }
                let target = match best {
                    Some((c, gain)) if (gain - stay) / self.total > MOVE_TOLERANCE => c,
                    _ => home,
                };
                community_strength[target] += k;
                if target != home {
                    community[v] = target;
                    moved = true;
                }
                for c in touched.drain(..) {
                    link_weight[c] = 0.0;
                }
            }
            if !moved {
                break;
            }
            any_move = true;
        }
        (community, any_move)
    }

    /// Collapses each community into one node. `community` must be dense.
    fn aggregate(&self, community: &[usize], count: usize) -> WorkGraph {
        let mut self_weight = vec![0.0; count];
        let mut strength = vec![0.0; count];
        let mut cross: Vec<(usize, usize, f64)> = Vec::new();
        for v in 0..self.len() {
            let cv = community[v];
            self_weight[cv] += self.self_weight[v];
            strength[cv] += self.strength[v];
            for &(u, w) in self.links(v) {
                if u <= v {
                    continue;
                }
                let cu = community[u];
                if cu == cv {
                    self_weight[cv] += w;
                } else {
                    cross.push((cv.min(cu), cv.max(cu), w));
                }
            }
        }
        cross.sort_by_key(|c| (c.0, c.1));
        let mut merged: Vec<(usize, usize, f64)> = Vec::with_capacity(cross.len());
        for (a, b, w) in cross {
            match merged.last_mut() {
                Some(last) if last.0 == a && last.1 == b => last.2 += w,
                _ => merged.push((a, b, w)),
            }
        }
        let mut degree = vec![0usize; count];
        for &(a, b, _) in &merged {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut offsets = Vec::with_capacity(count + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..count].to_vec();
        let mut links = vec![(0, 0.0); 2 * merged.len()];
        for &(a, b, w) in &merged {
            links[fill[a]] = (b, w);
            fill[a] += 1;
            links[fill[b]] = (a, w);
            fill[b] += 1;
        }
        WorkGraph {
            offsets,
            links,
            self_weight,
            strength,
            total: self.total,
        }
    }
}
