//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library algorithm it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::path::PathBuf;

use chordline::generators::Stream;
use chordline::graph::{parse_graph, Graph, Vertex};
use chordline::iso::{are_isomorphic, color_refinement};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> Graph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_graph(&text).expect("fixture parses")
}

fn pairs(n: u32) -> Vec<(Vertex, Vertex)> {
    (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect()
}

/// Every labeled graph on `1..=n`.
pub fn labeled_graphs(n: u32) -> impl Iterator<Item = Graph> {
    let all = pairs(n);
    let count = 1u64 << all.len();
    (0..count).map(move |mask| {
        let edges: Vec<_> = all
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

fn adjacency(g: &Graph) -> HashMap<Vertex, BTreeSet<Vertex>> {
    let mut adj: HashMap<Vertex, BTreeSet<Vertex>> =
        g.vertices().iter().map(|&v| (v, BTreeSet::new())).collect();
    for (a, b) in g.edges() {
        adj.get_mut(&a).unwrap().insert(b);
        adj.get_mut(&b).unwrap().insert(a);
    }
    adj
}

fn subsets(items: &[Vertex]) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    (0u64..1 << items.len()).map(move |m| {
        items
            .iter()
            .enumerate()
            .filter(|&(i, _)| m >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

/// Some vertex subset of size at least four induces a connected 2-regular
/// graph.
pub fn has_chordless_cycle(g: &Graph) -> bool {
    let adj = adjacency(g);
    subsets(g.vertices()).any(|s| {
        if s.len() < 4 {
            return false;
        }
        let inside: BTreeSet<Vertex> = s.iter().copied().collect();
        if !s.iter().all(|v| adj[v].intersection(&inside).count() == 2) {
            return false;
        }
        let mut seen = BTreeSet::from([s[0]]);
        let mut stack = vec![s[0]];
        while let Some(v) = stack.pop() {
            for w in adj[&v].intersection(&inside) {
                if seen.insert(*w) {
                    stack.push(*w);
                }
            }
        }
        seen.len() == s.len()
    })
}

/// Some cycle (not necessarily induced) has length at least four.
pub fn has_long_cycle(g: &Graph) -> bool {
    let adj = adjacency(g);
    fn walk(
        adj: &HashMap<Vertex, BTreeSet<Vertex>>,
        start: Vertex,
        path: &mut Vec<Vertex>,
    ) -> bool {
        let last = *path.last().unwrap();
        for &w in &adj[&last] {
            if w == start && path.len() >= 4 {
                return true;
            }
            // only extend through vertices larger than the start so each
            // cycle is found from its least vertex
            if w > start && !path.contains(&w) {
                path.push(w);
                if walk(adj, start, path) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    g.vertices().iter().any(|&s| walk(&adj, s, &mut vec![s]))
}

/// Inclusion-maximal cliques by subset enumeration, sorted.
pub fn brute_maximal_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    let adj = adjacency(g);
    let is_clique = |s: &[Vertex]| {
        s.iter()
            .enumerate()
            .all(|(i, a)| s[i + 1..].iter().all(|b| adj[a].contains(b)))
    };
    let cliques: Vec<Vec<Vertex>> = subsets(g.vertices()).filter(|s| !s.is_empty() && is_clique(s)).collect();
    let mut out: Vec<Vec<Vertex>> = cliques
        .iter()
        .filter(|c| {
            !g.vertices()
                .iter()
                .any(|v| !c.contains(v) && c.iter().all(|u| adj[u].contains(v)))
        })
        .cloned()
        .collect();
    out.sort();
    out
}

/// Relabels `g` by `perm` (`perm[i]` is the image of the `i`-th vertex in
/// sorted order).
pub fn relabeled(g: &Graph, perm: &[Vertex]) -> Graph {
    let pos: HashMap<Vertex, usize> = g.vertices().iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Graph::new(
        perm.iter().copied(),
        g.edges().into_iter().map(|(a, b)| (perm[pos[&a]], perm[pos[&b]])),
    )
    .unwrap()
}

/// A uniform permutation of `values` (Fisher–Yates).
pub fn shuffle(values: &mut [Vertex], rng: &mut Stream) {
    for i in (1..values.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        values.swap(i, j);
    }
}

/// `g` relabeled by a random permutation of scattered identifiers.
pub fn random_relabeling(g: &Graph, rng: &mut Stream) -> Graph {
    let mut ids: Vec<Vertex> = (1..=g.order() as Vertex).map(|i| 3 * i + 7).collect();
    shuffle(&mut ids, rng);
    relabeled(g, &ids)
}

/// One representative per isomorphism class among `graphs`.
pub fn dedup_classes(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut buckets: HashMap<Vec<usize>, Vec<Graph>> = HashMap::new();
    let mut out = Vec::new();
    for g in graphs {
        let mut key: Vec<usize> = g.vertices().iter().map(|&v| g.degree(v).unwrap()).collect();
        key.sort_unstable();
        key.extend(color_refinement(&g).class_sizes());
        let bucket = buckets.entry(key).or_default();
        if !bucket.iter().any(|h| are_isomorphic(&g, h).is_some()) {
            bucket.push(g.clone());
            out.push(g);
        }
    }
    out
}

/// Every graph on `n` vertices arises by adding a vertex to a graph on
/// `n - 1` vertices, so extending class representatives covers all classes.
pub fn extend_by_vertex(reps: &[Graph]) -> Vec<Graph> {
    let mut out = Vec::new();
    for g in reps {
        let n = g.order() as Vertex;
        let old: Vec<Vertex> = g.vertices().to_vec();
        for s in subsets(&old) {
            let mut edges = g.edges();
            edges.extend(s.iter().map(|&v| (v, n + 1)));
            out.push(Graph::from_edges(n + 1, &edges).unwrap());
        }
    }
    out
}

/// Isomorphism class representatives for every order `0..=max`.
pub fn classes_up_to(max: u32) -> Vec<Vec<Graph>> {
    let mut levels = vec![vec![Graph::edgeless(0)]];
    for _ in 1..=max {
        let next = dedup_classes(extend_by_vertex(levels.last().unwrap()));
        levels.push(next);
    }
    levels
}

/// Triple sets from their definitions: every triple in a unique maximal
/// clique with its separator, component and bag.
pub struct BruteTriples {
    pub triples: Vec<[Vertex; 3]>,
    pub alpha: Vec<BTreeSet<Vertex>>,
    pub beta: Vec<BTreeSet<Vertex>>,
    pub sigma: Vec<BTreeSet<Vertex>>,
}

pub fn brute_triples(g: &Graph) -> BruteTriples {
    let cliques = brute_maximal_cliques(g);
    let adj = adjacency(g);
    let mut out = BruteTriples { triples: Vec::new(), alpha: Vec::new(), beta: Vec::new(), sigma: Vec::new() };
    for &u1 in g.vertices() {
        for &u2 in g.vertices() {
            for &u3 in g.vertices() {
                if u3 == u1 || u3 == u2 {
                    continue;
                }
                let holding: Vec<&Vec<Vertex>> = cliques
                    .iter()
                    .filter(|c| c.contains(&u1) && c.contains(&u2) && c.contains(&u3))
                    .collect();
                if holding.len() != 1 {
                    continue;
                }
                let sigma = BTreeSet::from([u1, u2]);
                let mut alpha = BTreeSet::from([u3]);
                let mut stack = vec![u3];
                while let Some(v) = stack.pop() {
                    for &w in &adj[&v] {
                        if !sigma.contains(&w) && alpha.insert(w) {
                            stack.push(w);
                        }
                    }
                }
                out.triples.push([u1, u2, u3]);
                out.alpha.push(alpha);
                out.beta.push(holding[0].iter().copied().collect());
                out.sigma.push(sigma);
            }
        }
    }
    out
}

impl BruteTriples {
    pub fn index_of(&self, t: [Vertex; 3]) -> Option<usize> {
        self.triples.iter().position(|&x| x == t)
    }

    /// `alpha` sets of the covers of triple `i` under strict reverse
    /// inclusion of `alpha`.
    pub fn cover_alphas(&self, i: usize) -> BTreeSet<BTreeSet<Vertex>> {
        let below: Vec<usize> = (0..self.triples.len())
            .filter(|&j| self.alpha[j].is_subset(&self.alpha[i]) && self.alpha[j] != self.alpha[i])
            .collect();
        below
            .iter()
            .filter(|&&j| {
                !below.iter().any(|&w| {
                    self.alpha[j].is_subset(&self.alpha[w]) && self.alpha[j] != self.alpha[w]
                })
            })
            .map(|&j| self.alpha[j].clone())
            .collect()
    }
}
