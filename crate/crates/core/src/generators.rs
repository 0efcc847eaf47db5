//! Deterministic graph generators used by tests, benchmarks and the CLI.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn complete(n: usize) -> Graph {
    Graph::from_dense_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn path(n: usize) -> Graph {
    Graph::from_dense_edges(n, (1..n).map(|v| (v - 1, v)))
}

/// Center 0 joined to `leaves` other vertices.
pub fn star(leaves: usize) -> Graph {
    Graph::from_dense_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Erdos-Renyi G(n, p), seeded.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_dense_edges(n, edges)
}

/// G(n, p) with a clique on `size` randomly chosen vertices. Returns the graph
/// and the planted vertices, sorted.
pub fn planted_clique(n: usize, p: f64, size: usize, seed: u64) -> (Graph, Vec<usize>) {
    assert!(size <= n);
    let base = gnp(n, p, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(&mut rng);
    let mut planted = ids[..size].to_vec();
    planted.sort_unstable();
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for (i, &u) in planted.iter().enumerate() {
        for &v in &planted[i + 1..] {
            edges.push((u, v));
        }
    }
    (Graph::from_dense_edges(n, edges), planted)
}

/// Vertex-disjoint union; the second graph's ids are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    Graph::from_dense_edges(
        a.n() + b.n(),
        a.edges().chain(b.edges().map(|(u, v)| (u + shift, v + shift))),
    )
}

/// `blocks` communities of `size` vertices, G(size, p_in) inside each and
/// G(n, p_out) between them. Community `b` owns ids `b*size..(b+1)*size`.
pub fn communities(blocks: usize, size: usize, p_in: f64, p_out: f64, seed: u64) -> Graph {
    let n = blocks * size;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if u / size == v / size { p_in } else { p_out };
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_dense_edges(n, edges)
}
