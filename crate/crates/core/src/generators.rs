//! Seeded generators and small exhaustive enumerators.
//!
//! Randomness comes from SplitMix64 with the state set to the seed:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9       (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB       (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! A uniform integer below `k` rejects outputs smaller than `2^64 mod k` and
//! reduces the rest modulo `k`. A uniform float is `(x >> 11) * 2^-53`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::iso::{are_isomorphic, color_refinement};
use crate::linegraph::line_graph;

pub type Seed = u64;

/// The documented random stream.
#[derive(Clone, Debug)]
pub struct Stream(SplitMix64);

impl Stream {
    pub fn new(seed: Seed) -> Stream {
        Stream(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        assert!(k > 0);
        let threshold = k.wrapping_neg() % k;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % k;
            }
        }
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Connected graph whose blocks are edges and triangles. Starting from vertex
/// 1, each block draws a unit float (triangle when it is below
/// `triangle_fraction`) and then a uniform attachment vertex.
pub fn gen_triangle_cactus(blocks: usize, triangle_fraction: f64, seed: Seed) -> Graph {
    let mut rng = Stream::new(seed);
    let mut n: Vertex = 1;
    let mut edges = Vec::new();
    for _ in 0..blocks {
        let triangle = rng.unit() < triangle_fraction;
        let at = 1 + rng.below(n as u64) as Vertex;
        if triangle {
            edges.extend([(at, n + 1), (at, n + 2), (n + 1, n + 2)]);
            n += 2;
        } else {
            edges.push((at, n + 1));
            n += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("cactus blocks are fresh")
}

/// Line graph of [`gen_triangle_cactus`], hence a connected chordal line
/// graph.
pub fn gen_chordal_line(blocks: usize, triangle_fraction: f64, seed: Seed) -> Graph {
    if blocks == 0 {
        return Graph::edgeless(0);
    }
    line_graph(&gen_triangle_cactus(blocks, triangle_fraction, seed))
        .expect("a cactus with a block has an edge")
        .graph
}

/// Random connected chordal graph on `1..=n`. Vertex `i` picks a uniform
/// maximal clique `Q` of the graph on `1..i` and joins each member with
/// probability `fill` (one uniform member if none was kept), so reversing
/// the insertion order is a perfect elimination ordering.
pub fn gen_chordal(n: usize, fill: f64, seed: Seed) -> Graph {
    let mut rng = Stream::new(seed);
    let mut cliques: Vec<Vec<Vertex>> = vec![vec![1]];
    let mut edges = Vec::new();
    for i in 2..=n as Vertex {
        let q = rng.below(cliques.len() as u64) as usize;
        let mut chosen: Vec<Vertex> = cliques[q].iter().copied().filter(|_| rng.unit() < fill).collect();
        if chosen.is_empty() {
            let k = rng.below(cliques[q].len() as u64) as usize;
            chosen.push(cliques[q][k]);
        }
        edges.extend(chosen.iter().map(|&v| (v, i)));
        let whole = chosen.len() == cliques[q].len();
        chosen.push(i);
        if whole {
            cliques[q] = chosen;
        } else {
            cliques.push(chosen);
        }
    }
    Graph::from_edges(n as u32, &edges).expect("each new vertex joins distinct earlier vertices")
}

/// `G(n, p)`: pairs are visited in lexicographic order and kept when a unit
/// float falls below `p`.
pub fn gen_random(n: usize, p: f64, seed: Seed) -> Graph {
    let mut rng = Stream::new(seed);
    let n = n as Vertex;
    let mut edges = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if rng.unit() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pairs are distinct")
}

pub const MAX_ROOT_EDGES: usize = 9;

/// Every connected graph with exactly `edges` edges whose blocks are edges or
/// triangles, one per isomorphism class.
pub fn enumerate_small_roots(edges: usize) -> Result<Vec<Graph>> {
    if edges > MAX_ROOT_EDGES {
        return Err(Error::TooLarge(format!("{edges} edges, enumeration stops at {MAX_ROOT_EDGES}")));
    }
    let mut levels: Vec<Vec<Graph>> = vec![Vec::new(); edges + 1];
    for k in 1..=edges {
        let mut found = Vec::new();
        if k == 1 {
            found.push(Graph::complete(2));
        }
        if k == 3 {
            found.push(Graph::complete(3));
        }
        // removing a leaf block leaves a smaller member of the family
        for g in &levels[k - 1] {
            for &v in g.vertices() {
                found.push(attach(g, v, false));
            }
        }
        if k > 3 {
            for g in &levels[k - 3] {
                for &v in g.vertices() {
                    found.push(attach(g, v, true));
                }
            }
        }
        levels[k] = dedup_isomorphic(found);
    }
    Ok(std::mem::take(&mut levels[edges]))
}

fn attach(g: &Graph, at: Vertex, triangle: bool) -> Graph {
    let n = g.order() as Vertex;
    let mut edges = g.edges();
    edges.push((at, n + 1));
    if triangle {
        edges.extend([(at, n + 2), (n + 1, n + 2)]);
    }
    Graph::from_edges(n + 1 + triangle as Vertex, &edges).expect("attached block is fresh")
}

fn dedup_isomorphic(graphs: Vec<Graph>) -> Vec<Graph> {
    let mut kept: Vec<(Vec<usize>, Graph)> = Vec::new();
    for g in graphs {
        let mut key: Vec<usize> = g.vertices().iter().map(|&v| g.degree(v).unwrap()).collect();
        key.sort_unstable();
        key.extend(color_refinement(&g).class_sizes());
        let duplicate = kept
            .iter()
            .any(|(k, h)| *k == key && are_isomorphic(&g, h).is_some());
        if !duplicate {
            kept.push((key, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}
