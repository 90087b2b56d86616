// shared between test binaries; not every binary uses every helper
#![allow(dead_code)]

use linkrank::graph::LinkGraph;
use linkrank::matrix::ColumnStochasticMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EIGHT_PAGES: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/eight_pages.edges"));
pub const FOUR_CYCLE: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/four_cycle.edges"));

pub fn eight_pages() -> ColumnStochasticMatrix {
    ColumnStochasticMatrix::build(&LinkGraph::parse_edge_list(EIGHT_PAGES).unwrap()).unwrap()
}

pub fn four_cycle() -> ColumnStochasticMatrix {
    ColumnStochasticMatrix::build(&LinkGraph::parse_edge_list(FOUR_CYCLE).unwrap()).unwrap()
}

/// A random valid link graph: n pages, every page with at least one
/// out-link, no self-loops, no duplicates. Disconnected and bipartite
/// structures are all possible.
pub fn random_valid_graph(rng: &mut ChaCha8Rng, max_n: usize) -> LinkGraph {
    let n = rng.random_range(2..=max_n);
    let mut text = String::new();
    for s in 0..n {
        let out_degree = rng.random_range(1..n);
        let mut targets: Vec<usize> = (0..n).filter(|&t| t != s).collect();
        for i in 0..out_degree {
            let j = rng.random_range(i..targets.len());
            targets.swap(i, j);
        }
        for &t in &targets[..out_degree] {
            text.push_str(&format!("p{s} p{t}\n"));
        }
    }
    LinkGraph::parse_edge_list(&text).unwrap()
}

/// The fixed 200-graph corpus used by the random-graph acceptance checks.
pub fn corpus() -> Vec<LinkGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1ab);
    (0..200).map(|_| random_valid_graph(&mut rng, 10)).collect()
}
