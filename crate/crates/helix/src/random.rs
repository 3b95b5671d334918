//! Seeded Erdős–Rényi instances.

use helix_core::graph::{Graph, GraphError, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `G(n, p)`: each pair `u < v` is an edge with probability `p`, decided in
/// lexicographic pair order from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(n: Vertex, p: f64, seed: u64) -> Result<Graph, GraphError> {
    assert!(
        (0.0..=1.0).contains(&p),
        "edge probability {p} outside [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let a = random_graph(10, 0.4, 7).unwrap();
        assert_eq!(a, random_graph(10, 0.4, 7).unwrap());
        assert_ne!(a, random_graph(10, 0.4, 8).unwrap());
    }

    #[test]
    fn extremes() {
        assert_eq!(random_graph(6, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(random_graph(6, 1.0, 1).unwrap().edge_count(), 15);
    }

    #[test]
    fn density_is_plausible() {
        let edges: usize = (0..50)
            .map(|s| random_graph(10, 0.4, s).unwrap().edge_count())
            .sum();
        // 50 graphs x 45 pairs x 0.4 = 900 expected.
        assert!((800..1000).contains(&edges), "{edges}");
    }
}
