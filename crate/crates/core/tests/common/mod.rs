#![allow(dead_code)]

use graphbench_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic Erdos-Renyi graph: every pair independently becomes an edge
/// with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Triangle {0,1,2} with a pendant edge (2,3).
pub fn pendant_triangle() -> Graph {
    Graph::from_edges(4, vec![(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap()
}

pub fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
