//! Brute-force reference implementations used to cross-check the library.
//! Everything here works on dense matrices or explicit vertex pairs.

#![allow(dead_code)]

pub type WeightedEdge = (usize, usize, f64);

pub fn adjacency(n: usize, edges: &[WeightedEdge]) -> Vec<Vec<f64>> {
    let mut a = vec![vec![0.0; n]; n];
    for &(u, v, w) in edges {
        a[u][v] += w;
        a[v][u] += w;
    }
    a
}

/// Q = 1/(2W) * sum_ij [A_ij - k_i k_j / (2W)] delta(c_i, c_j)
pub fn modularity(n: usize, edges: &[WeightedEdge], labels: &[usize]) -> f64 {
    let a = adjacency(n, edges);
    let k: Vec<f64> = a.iter().map(|row| row.iter().sum()).collect();
    let two_w: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_w;
            }
        }
    }
    q / two_w
}

/// Pair-counting form of the adjusted Rand index.
pub fn ari(a: &[usize], b: &[usize]) -> f64 {
    let (mut n11, mut n10, mut n01, mut n00) = (0.0, 0.0, 0.0, 0.0);
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            match (a[i] == a[j], b[i] == b[j]) {
                (true, true) => n11 += 1.0,
                (true, false) => n10 += 1.0,
                (false, true) => n01 += 1.0,
                (false, false) => n00 += 1.0,
            }
        }
    }
    let den = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
    if den == 0.0 {
        1.0
    } else {
        2.0 * (n11 * n00 - n10 * n01) / den
    }
}

/// Adjusted agreement over the edge set: each edge is a pair whose
/// same-cluster status is compared between the two labelings.
pub fn agri(edges: &[WeightedEdge], a: &[usize], b: &[usize]) -> f64 {
    let mut table = [[0.0f64; 2]; 2];
    for &(u, v, _) in edges {
        table[usize::from(a[u] == a[v])][usize::from(b[u] == b[v])] += 1.0;
    }
    let m = edges.len() as f64;
    let observed = (table[0][0] + table[1][1]) / m;
    let pa = (table[1][0] + table[1][1]) / m;
    let pb = (table[0][1] + table[1][1]) / m;
    let expected = pa * pb + (1.0 - pa) * (1.0 - pb);
    if expected == 1.0 {
        1.0
    } else {
        (observed - expected) / (1.0 - expected)
    }
}

/// Repeatedly deletes every vertex with fewer than two live neighbours,
/// recounting degrees from scratch each round.
pub fn two_core(n: usize, edges: &[WeightedEdge]) -> Vec<bool> {
    let mut alive = vec![true; n];
    loop {
        let mut degree = vec![0usize; n];
        for &(u, v, _) in edges {
            if alive[u] && alive[v] {
                degree[u] += 1;
                degree[v] += 1;
            }
        }
        let doomed: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] < 2).collect();
        if doomed.is_empty() {
            return alive;
        }
        for v in doomed {
            alive[v] = false;
        }
    }
}

/// Consensus weight of every edge given the ensemble labelings.
pub fn ecg_weights(n: usize, edges: &[WeightedEdge], ensemble: &[Vec<usize>], min_weight: f64) -> Vec<f64> {
    let core = two_core(n, edges);
    let k = ensemble.len() as f64;
    edges
        .iter()
        .map(|&(u, v, _)| {
            if core[u] && core[v] {
                let votes = ensemble.iter().filter(|p| p[u] == p[v]).count() as f64;
                min_weight + (1.0 - min_weight) * votes / k
            } else {
                min_weight
            }
        })
        .collect()
}

/// Largest modularity gain available to any single vertex moving into the
/// cluster of one of its neighbours, by recomputing Q.
pub fn best_single_move_gain(n: usize, edges: &[WeightedEdge], labels: &[usize]) -> f64 {
    let base = modularity(n, edges, labels);
    let a = adjacency(n, edges);
    let mut best = f64::NEG_INFINITY;
    for v in 0..n {
        let targets: Vec<usize> = (0..n).filter(|&u| a[v][u] > 0.0).map(|u| labels[u]).collect();
        for t in targets {
            if t == labels[v] {
                continue;
            }
            let mut moved = labels.to_vec();
            moved[v] = t;
            best = best.max(modularity(n, edges, &moved) - base);
        }
    }
    best
}
