#![allow(dead_code)]

use std::collections::HashMap;

use matchkit_core::chain::ChainRng;
use matchkit_core::graph::Graph;
use matchkit_core::recognition::are_isomorphic;

fn invariant(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    let mut inv: Vec<(usize, Vec<usize>)> = (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    inv.sort();
    inv
}

/// All connected graphs on `n` vertices up to isomorphism, for `n <= 8`.
///
/// Every connected graph has a vertex whose removal keeps it connected, so
/// each one arises from a connected graph on `n - 1` vertices plus a new vertex.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n));
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut buckets: HashMap<Vec<(usize, Vec<usize>)>, Vec<Graph>> = HashMap::new();
        let mut out = Vec::new();
        for base in &level {
            for mask in 1u32..1 << (size - 1) {
                let g =
                    Graph::from_fn(size, |u, v| if v == size - 1 { mask >> u & 1 == 1 } else { base.has_edge(u, v) });
                let reps = buckets.entry(invariant(&g)).or_default();
                if reps.iter().all(|h| !are_isomorphic(h, &g)) {
                    reps.push(g.clone());
                    out.push(g);
                }
            }
        }
        level = out;
    }
    level
}

/// Random graph with edge probability `p`.
pub fn random_graph(n: usize, p: f64, rng: &mut ChainRng) -> Graph {
    Graph::from_fn(n, |_, _| rng.unit_f64() < p)
}

/// Random connected graph: a random spanning tree plus independent extra edges.
pub fn random_connected(n: usize, p: f64, rng: &mut ChainRng) -> Graph {
    let parent: Vec<usize> = (0..n).map(|v| if v == 0 { 0 } else { rng.vertex(v) }).collect();
    let extra = random_graph(n, p, rng);
    Graph::from_fn(n, |u, v| parent[v] == u || extra.has_edge(u, v))
}

/// Mixed densities for random corpora.
pub const DENSITIES: [f64; 5] = [0.2, 0.35, 0.5, 0.65, 0.8];

/// Random labelled cograph built from random unions and joins.
pub fn random_cograph(n: usize, rng: &mut ChainRng) -> Graph {
    fn build(vs: &[usize], rng: &mut ChainRng, edges: &mut Vec<(usize, usize)>) {
        if vs.len() == 1 {
            return;
        }
        let cut = 1 + rng.vertex(vs.len() - 1);
        let (a, b) = vs.split_at(cut);
        build(a, rng, edges);
        build(b, rng, edges);
        if rng.next_u64() & 1 == 1 {
            for &u in a {
                for &v in b {
                    edges.push((u, v));
                }
            }
        }
    }
    let mut vs: Vec<usize> = (0..n).collect();
    shuffle(&mut vs, rng);
    let mut edges = Vec::new();
    build(&vs, rng, &mut edges);
    Graph::new(n, &edges).unwrap()
}

pub fn shuffle(vs: &mut [usize], rng: &mut ChainRng) {
    for i in (1..vs.len()).rev() {
        let j = rng.vertex(i + 1);
        vs.swap(i, j);
    }
}
