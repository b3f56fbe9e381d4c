//! Fixtures shared by the benchmarks in `benches/`.

use gsv_core::generate::random_graph;
use gsv_core::Graph;

/// First connected `G(n, p)` sample at or after `seed`.
pub fn connected_random(n: usize, p: f64, mut seed: u64) -> Graph {
    loop {
        let g = random_graph(n, p, seed).expect("n within range");
        if g.is_connected() {
            return g;
        }
        seed += 1;
    }
}
