#![allow(dead_code)]

use kcds::generators::gnp;
use kcds::Graph;

pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

/// 50 seeded G(n, p) graphs with n in [10, 25] and p alternating 0.2 / 0.4.
pub fn corpus() -> Vec<Instance> {
    (0..50u64)
        .map(|seed| {
            let n = 10 + (seed as usize * 7) % 16;
            let p = if seed % 2 == 0 { 0.2 } else { 0.4 };
            Instance { name: format!("gnp(n={n}, p={p}, seed={seed})"), graph: gnp(n, p, seed) }
        })
        .collect()
}

/// Its k = 3 tree has a path with holds {3, 6, 7} and pivot {5}, i.e. a path
/// whose only clique is its hold set.
pub fn hold_heavy() -> Graph {
    Graph::from_dense_edges(
        8,
        [
            (0, 1), (0, 2), (0, 3), (0, 5), (0, 6), (1, 2), (1, 4), (1, 5), (1, 6), (1, 7), (2, 3),
            (2, 4), (2, 5), (2, 7), (3, 4), (3, 5), (3, 6), (3, 7), (4, 7), (5, 6), (5, 7), (6, 7),
        ],
    )
}

pub const KS: [usize; 3] = [3, 4, 5];

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    if b == 0.0 {
        a.abs() <= tol
    } else {
        ((a - b) / b).abs() <= tol
    }
}
