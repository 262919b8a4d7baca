//! Simple undirected graphs, labeled graphs on `[1..n]`, the edge-list text
//! format, and the elementary algorithms everything else builds on.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Opaque vertex identifier. Transformations keep identifiers meaningful so
/// provenance can be traced back to the input.
pub type Vertex = u32;

/// A finite simple undirected graph over arbitrary vertex identifiers.
///
/// Vertices are kept sorted and every algorithm works on dense indices
/// `0..order()`; `vertex(i)` and `index_of(v)` translate between the two.
/// Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    ids: Vec<Vertex>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges, duplicate vertices
    /// and endpoints that are not listed as vertices.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = Vertex>,
        E: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut ids: Vec<Vertex> = vertices.into_iter().collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate vertex".into()));
        }
        let mut adj = vec![Vec::new(); ids.len()];
        let mut seen = HashSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            let i = ids
                .binary_search(&u)
                .map_err(|_| Error::UnknownVertex(u))?;
            let j = ids
                .binary_search(&v)
                .map_err(|_| Error::UnknownVertex(v))?;
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::InvalidGraph(format!("duplicate edge {u} {v}")));
            }
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { ids, adj })
    }

    /// Graph on `1..=n` with the given edges.
    pub fn from_edges(n: u32, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        Graph::new(1..=n, edges.iter().copied())
    }

    pub(crate) fn from_index_adjacency(ids: Vec<Vertex>, mut adj: Vec<Vec<usize>>) -> Graph {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Graph { ids, adj }
    }

    pub fn complete(n: u32) -> Graph {
        let edges: Vec<_> = (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn edgeless(n: u32) -> Graph {
        Graph::from_edges(n, &[]).expect("edgeless graph is simple")
    }

    pub fn path(n: u32) -> Graph {
        let edges: Vec<_> = (1..n).map(|a| (a, a + 1)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    /// The cycle `1-2-...-n-1`; requires `n >= 3`.
    pub fn cycle(n: u32) -> Graph {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..n).map(|a| (a, a + 1)).collect();
        edges.push((1, n));
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    pub fn order(&self) -> usize {
        self.ids.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Sorted vertex identifiers.
    pub fn vertices(&self) -> &[Vertex] {
        &self.ids
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        self.ids[index]
    }

    pub fn index_of(&self, v: Vertex) -> Option<usize> {
        self.ids.binary_search(&v).ok()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.index_of(v).is_some()
    }

    /// Sorted neighbour indices of the vertex at `index`.
    pub fn adj(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree_at(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn adjacent_at(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn degree(&self, v: Vertex) -> Option<usize> {
        self.index_of(v).map(|i| self.adj[i].len())
    }

    pub fn neighbors(&self, v: Vertex) -> Option<impl Iterator<Item = Vertex> + '_> {
        let i = self.index_of(v)?;
        Some(self.adj[i].iter().map(move |&j| self.ids[j]))
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adjacent_at(i, j),
            _ => false,
        }
    }

    /// Edges as `(min, max)` pairs in ascending lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.size());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((self.ids[i], self.ids[j]));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.iter().all(|l| l.len() + 1 == n)
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && component_indices(self).len() == 1
    }

    /// Whether the given vertex indices are pairwise adjacent.
    pub fn is_clique_at(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(k, &a)| set[k + 1..].iter().all(|&b| self.adjacent_at(a, b)))
    }

    /// Subgraph induced by the vertices at the given indices; identifiers are kept.
    pub fn induced_at(&self, indices: &[usize]) -> Graph {
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut pos = vec![usize::MAX; self.order()];
        for (k, &i) in sorted.iter().enumerate() {
            pos[i] = k;
        }
        let adj = sorted
            .iter()
            .map(|&i| {
                self.adj[i]
                    .iter()
                    .filter_map(|&j| (pos[j] != usize::MAX).then_some(pos[j]))
                    .collect()
            })
            .collect();
        let ids = sorted.iter().map(|&i| self.ids[i]).collect();
        Graph::from_index_adjacency(ids, adj)
    }

    /// Subgraph induced by the given vertex identifiers.
    pub fn induced(&self, vertices: &[Vertex]) -> Result<Graph> {
        let idx = vertices
            .iter()
            .map(|&v| self.index_of(v).ok_or(Error::UnknownVertex(v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.induced_at(&idx))
    }

    /// Renames every vertex through `f`, which must be injective on `V(self)`.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, f: F) -> Result<Graph> {
        Graph::new(
            self.ids.iter().map(|&v| f(v)),
            self.edges().into_iter().map(|(a, b)| (f(a), f(b))),
        )
    }

    /// Renumbers the vertices `1..=n` in ascending identifier order.
    /// Returns the labeled graph and the original identifier of every label.
    pub fn to_labeled(&self) -> Result<(LabeledGraph, Vec<Vertex>)> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut edges = Vec::with_capacity(self.size());
        for (i, list) in self.adj.iter().enumerate() {
            for &j in list {
                if i < j {
                    edges.push((i as u32 + 1, j as u32 + 1));
                }
            }
        }
        let lg = LabeledGraph::from_sorted_unchecked(self.order() as u32, edges);
        Ok((lg, self.ids.clone()))
    }
}

/// A simple graph whose vertex set is exactly `[1..n]`, `n >= 1`.
///
/// `Ord` is the s-lex order: smaller vertex sets first, then edge sets are
/// compared by their first differing pair, and the side that lacks it is
/// the smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl LabeledGraph {
    pub fn new(n: u32, edges: &[(u32, u32)]) -> Result<LabeledGraph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {a}")));
            }
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        Ok(LabeledGraph { n, edges: out })
    }

    /// `edges` must already be normalized, sorted and duplicate-free.
    pub(crate) fn from_sorted_unchecked(n: u32, edges: Vec<(u32, u32)>) -> LabeledGraph {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(a, b)| 1 <= a && a < b && b <= n));
        LabeledGraph { n, edges }
    }

    /// Normalizes, sorts and deduplicates raw pairs.
    pub(crate) fn from_pairs(n: u32, mut edges: Vec<(u32, u32)>) -> LabeledGraph {
        for e in &mut edges {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        LabeledGraph::from_sorted_unchecked(n, edges)
    }

    pub fn complete(n: u32) -> LabeledGraph {
        let edges = (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .collect();
        LabeledGraph::from_sorted_unchecked(n, edges)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges).expect("labeled graph is simple")
    }
}

impl Ord for LabeledGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        slex_compare(self, other)
    }
}

impl PartialOrd for LabeledGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two sorted duplicate-free sequences as sets: the first element of
/// the symmetric difference belongs to the greater set.
pub(crate) fn set_lex_cmp<T: Ord>(a: &[T], b: &[T]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            },
        }
    }
}

/// The s-lex order on labeled graphs.
///
/// Vertex sets are compared first; for initial segments `[1..n]` that reduces
/// to comparing `n`. Then edge sets are compared as sets of pairs under the
/// lexicographic pair order: the graph owning the first edge of the symmetric
/// difference is the greater one.
pub fn slex_compare(g: &LabeledGraph, h: &LabeledGraph) -> Ordering {
    g.n.cmp(&h.n).then_with(|| set_lex_cmp(&g.edges, &h.edges))
}

/// Image of `g` under `perm`, where `perm[i - 1]` is the image of vertex `i`.
pub fn apply_permutation(g: &LabeledGraph, perm: &[u32]) -> Result<LabeledGraph> {
    let n = g.n as usize;
    if perm.len() != n {
        return Err(Error::NonBijective(n));
    }
    let mut hit = vec![false; n];
    for &p in perm {
        if p == 0 || p as usize > n || std::mem::replace(&mut hit[p as usize - 1], true) {
            return Err(Error::NonBijective(n));
        }
    }
    let edges = g
        .edges
        .iter()
        .map(|&(a, b)| (perm[a as usize - 1], perm[b as usize - 1]))
        .collect();
    Ok(LabeledGraph::from_pairs(g.n, edges))
}

/// Parses the edge-list format: `#` comment lines anywhere, a header `n m`,
/// then exactly `m` lines `u v` with `1 <= u, v <= n`. Blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!("expected two integers, found {line:?}")));
        }
        match header {
            None => {
                let n: u32 = fields[0]
                    .parse()
                    .map_err(|_| err(format!("bad vertex count {:?}", fields[0])))?;
                let m: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad edge count {:?}", fields[1])))?;
                if n == 0 {
                    return Err(err("graph must have at least one vertex".into()));
                }
                header = Some((n, m));
            }
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(err(format!("more than the declared {m} edges")));
                }
                let u: u32 = fields[0]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint {:?}", fields[0])))?;
                let v: u32 = fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint {:?}", fields[1])))?;
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(format!("endpoint {x} out of range 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(format!("loop at vertex {u}")));
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
                edges.push((u, v));
            }
        }
    }
    let (n, m) = header.ok_or(Error::Parse {
        line: last_line.max(1),
        message: "missing header".into(),
    })?;
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line.max(1),
            message: format!("declared {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges)
}

/// Canonical text form: header `n m`, then sorted edges, `\n` line endings.
pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::with_capacity(8 * (g.edges.len() + 1));
    writeln!(out, "{} {}", g.n, g.edges.len()).unwrap();
    for &(a, b) in &g.edges {
        writeln!(out, "{a} {b}").unwrap();
    }
    out
}

pub(crate) fn component_indices(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in g.adj(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                    queue.push_back(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Vertex sets of the connected components, each sorted, ordered by their
/// smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    component_indices(g)
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.vertex(i)).collect())
        .collect()
}

/// Biconnected blocks as sorted vertex sets: maximal 2-connected pieces,
/// bridges, and isolated vertices.
pub fn biconnected_blocks(g: &Graph) -> Vec<Vec<Vertex>> {
    block_indices(g)
        .into_iter()
        .map(|b| b.into_iter().map(|i| g.vertex(i)).collect())
        .collect()
}

pub(crate) fn block_indices(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    // frames: (vertex, parent, next neighbour position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree_at(root) == 0 {
            disc[root] = timer;
            timer += 1;
            blocks.push(vec![root]);
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, pos) = *frame;
            if pos < g.degree_at(v) {
                frame.2 += 1;
                let w = g.adj(v)[pos];
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut block = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (parent, v) {
                                break;
                            }
                        }
                        blocks.push(block.into_iter().collect());
                    }
                }
            }
        }
    }
    blocks
}

/// A rooted tree over nodes `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
}

impl RootedTree {
    /// Validates that exactly `root` lacks a parent and that following parents
    /// from every node reaches the root.
    pub fn new(parent: Vec<Option<usize>>) -> Result<RootedTree> {
        let roots: Vec<usize> = (0..parent.len()).filter(|&t| parent[t].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidGraph(format!(
                "a rooted tree needs exactly one root, found {}",
                roots.len()
            )));
        }
        let root = roots[0];
        for start in 0..parent.len() {
            let mut t = start;
            let mut steps = 0;
            while let Some(p) = parent[t] {
                if p >= parent.len() || steps > parent.len() {
                    return Err(Error::InvalidGraph("parent map has a cycle".into()));
                }
                t = p;
                steps += 1;
            }
        }
        Ok(RootedTree { parent, root })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn children(&self, t: usize) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.parent[c] == Some(t)).collect()
    }

    /// Children, then the parent.
    pub fn neighbours(&self, t: usize) -> Vec<usize> {
        let mut out = self.children(t);
        out.extend(self.parent[t]);
        out
    }

    /// `t` followed by all of its descendants.
    pub fn subtree(&self, t: usize) -> Vec<usize> {
        let mut out = vec![t];
        let mut k = 0;
        while k < out.len() {
            let s = out[k];
            out.extend(self.children(s));
            k += 1;
        }
        out
    }
}
