#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumset_core::corpus::{generate, CorpusParams};
use sumset_core::hypergraph::VertexId;
use sumset_core::{HypercubeGraph, IndexSet, SumsetInstance};

pub fn corpus() -> Vec<SumsetInstance> {
    generate(&CorpusParams::default()).expect("default corpus parameters are valid")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut impl Rng, vs: &[VertexId]) -> Vec<VertexId> {
    loop {
        let pick: Vec<VertexId> = vs.iter().copied().filter(|_| rng.random_bool(0.5)).collect();
        if !pick.is_empty() || vs.is_empty() {
            return pick;
        }
    }
}

/// A random `I <= I'` with random nonempty `X` in `U_I` and `Y` in `U_I'`.
pub fn channel_request(g: &HypercubeGraph, rng: &mut impl Rng) -> (IndexSet, Vec<VertexId>, IndexSet, Vec<VertexId>) {
    let h = g.h();
    let from = IndexSet::from_bits(h, rng.random_range(0..(1u32 << h)));
    let extra = IndexSet::from_bits(h, rng.random_range(0..(1u32 << h)));
    let to = from.union(extra.difference(from));
    let x = random_subset(rng, &g.class(from).collect::<Vec<_>>());
    let y = random_subset(rng, &g.class(to).collect::<Vec<_>>());
    (from, x, to, y)
}

/// `g` with the edge `k` (in successor order) deleted.
pub fn without_edge(g: &HypercubeGraph, k: usize) -> HypercubeGraph {
    use sumset_core::hypergraph::{HypercubeGraphBuilder, Layered};
    let mut b = HypercubeGraphBuilder::new(g.h());
    for v in 0..g.num_vertices() {
        b.add_vertex(g.class_of(v), g.payload(v).cloned());
    }
    let edges = (0..g.num_vertices()).flat_map(|u| g.successors(u).iter().map(move |&v| (u, v)));
    for (n, (u, v)) in edges.enumerate() {
        if n != k {
            b.add_edge(u, v);
        }
    }
    b.build().expect("subgraph of a valid graph")
}

/// 50 graphs with at most 4 vertices per class: random ones, small addition
/// graphs, and addition graphs with one edge deleted.
pub fn tiny_graphs(seed: u64) -> Vec<HypercubeGraph> {
    let mut out = sumset_core::corpus::random_hypercube_graphs(20, 4, seed).expect("valid parameters");
    let p = CorpusParams { count: 400, h_min: 2, h_max: 2, max_a: 2, max_b: 2, seed, ..CorpusParams::default() };
    let mut rng = rng(seed);
    let instances = generate(&p).expect("valid parameters");
    let small = instances
        .iter()
        .map(HypercubeGraph::addition_graph)
        .filter(|g| IndexSet::all(g.h()).all(|i| g.class(i).len() <= 4) && g.num_edges() > 0);
    for (n, g) in small.take(30).enumerate() {
        if n % 2 == 1 {
            let k = rng.random_range(0..g.num_edges());
            out.push(without_edge(&g, k));
        } else {
            out.push(g);
        }
    }
    out
}
