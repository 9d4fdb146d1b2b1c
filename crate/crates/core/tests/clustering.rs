use ecgkit::ecg::ensemble;
use ecgkit::generators::ring_of_cliques;
use ecgkit::{
    ari, csi, ecg_cluster, louvain_level1, louvain_multilevel, modularity, Combine, EcgParams,
    EdgeWeightMap, Graph, Partition, RngSeed,
};

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    Graph::from_edges(g.num_vertices(), g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.w))).unwrap()
}

#[test]
fn louvain_is_deterministic_per_seed() {
    let ring = ring_of_cliques(20, 4, 2, RngSeed::from(5)).unwrap().graph;
    for s in 0..5 {
        let seed = RngSeed::new(s, 1);
        assert_eq!(louvain_multilevel(&ring, seed).unwrap(), louvain_multilevel(&ring, seed).unwrap());
        assert_eq!(louvain_level1(&ring, seed).unwrap(), louvain_level1(&ring, seed).unwrap());
    }
}

#[test]
fn level1_finds_cliques_of_a_ring() {
    let ring = ring_of_cliques(12, 5, 1, RngSeed::from(0)).unwrap();
    for s in 0..10 {
        let p = louvain_level1(&ring.graph, RngSeed::from(s)).unwrap();
        assert_eq!(ari(&p, &ring.truth).unwrap(), 1.0);
    }
}

#[test]
fn well_separated_structure_survives_relabelling() {
    let ring = ring_of_cliques(6, 6, 1, RngSeed::from(0)).unwrap();
    let n = ring.graph.num_vertices();
    let perm: Vec<usize> = (0..n).map(|v| (v * 17 + 5) % n).collect();
    let moved = permuted(&ring.graph, &perm);
    for s in 0..5 {
        let p = louvain_multilevel(&ring.graph, RngSeed::from(s)).unwrap();
        let q = louvain_multilevel(&moved, RngSeed::from(s)).unwrap();
        let pulled: Vec<usize> = (0..n).map(|v| q.label(perm[v])).collect();
        assert_eq!(ari(&p, &Partition::from_labels(&pulled)).unwrap(), 1.0);
    }
}

#[test]
fn modularity_reference_values() {
    let ring = ring_of_cliques(4, 3, 1, RngSeed::from(0)).unwrap();
    let g = &ring.graph;
    assert!(modularity(g, &Partition::all_in_one(12)).unwrap().abs() < 1e-15);
    // 4 triangles, each with 3 inner edges and total degree 8, W = 16
    let q = modularity(g, &ring.truth).unwrap();
    assert!((q - (4.0 * (3.0 / 16.0 - (8.0f64 / 32.0).powi(2)))).abs() < 1e-12);
    assert!(modularity(g, &Partition::singletons(12)).unwrap() < 0.0);
}

#[test]
fn ecg_recovers_a_ring_louvain_merges() {
    let ring = ring_of_cliques(30, 5, 1, RngSeed::from(2)).unwrap();
    let res = ecg_cluster(&ring.graph, &EcgParams::new(16, 0.05, 9)).unwrap();
    assert_eq!(res.partition.num_clusters(), 30);
    assert_eq!(res.core_size, 150);
    assert!(res.csi > 0.9);
}

#[test]
fn ecg_is_reproducible_across_thread_pools() {
    let ring = ring_of_cliques(15, 4, 3, RngSeed::from(1)).unwrap().graph;
    let params = EcgParams::new(8, 0.05, 77);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| ecg_cluster(&ring, &params).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.partition, b.partition);
    assert_eq!(a.weights, b.weights);
    assert_eq!(ensemble(&ring, &params).unwrap().len(), 8);
}

#[test]
fn tree_has_flat_weights() {
    let path = Graph::from_unweighted(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    let res = ecg_cluster(&path, &EcgParams::new(4, 0.05, 0)).unwrap();
    assert_eq!(res.core_size, 0);
    assert!(res.weights.as_slice().iter().all(|&w| w == 0.05));
    assert!((res.csi - 0.9).abs() < 1e-12);
}

#[test]
fn multiply_with_unit_weights_matches_replace() {
    let ring = ring_of_cliques(10, 4, 2, RngSeed::from(4)).unwrap().graph;
    let mut params = EcgParams::new(6, 0.05, 3);
    let plain = ecg_cluster(&ring, &params).unwrap();
    params.combine = Combine::Multiply;
    assert_eq!(ecg_cluster(&ring, &params).unwrap().partition, plain.partition);
}

#[test]
fn invalid_parameters_are_rejected() {
    let g = Graph::from_unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(ecg_cluster(&g, &EcgParams::new(0, 0.05, 0)).is_err());
    assert!(ecg_cluster(&g, &EcgParams::new(4, 0.0, 0)).is_err());
    assert!(ecg_cluster(&g, &EcgParams::new(4, 1.0, 0)).is_err());
    assert!(ecg_cluster(&Graph::empty(3), &EcgParams::new(4, 0.05, 0)).is_err());
}

#[test]
fn csi_extremes_and_uniform_weights() {
    let crisp = EdgeWeightMap::new(vec![0.0, 1.0, 1.0, 0.0]);
    assert_eq!(csi(&crisp).unwrap(), 1.0);
    assert_eq!(csi(&EdgeWeightMap::new(vec![0.5; 10])).unwrap(), 0.0);
    use rand::Rng;
    let mut rng = RngSeed::from(11).rng();
    let uniform: Vec<f64> = (0..100_000).map(|_| rng.random::<f64>()).collect();
    assert!((csi(&EdgeWeightMap::new(uniform)).unwrap() - 0.5).abs() < 0.02);
    assert!(csi(&EdgeWeightMap::new(vec![])).is_err());
}
