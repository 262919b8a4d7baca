//! Line graphs, root-graph reconstruction from a Krausz clique cover, and
//! recognition of chordal line graphs.

use std::collections::VecDeque;

use crate::chordal::{is_chordal, Chordality};
use crate::error::{Error, Obstruction, Result};
use crate::graph::{block_indices, component_indices, Graph, Vertex};

/// `L(g)` together with the edge of `g` behind each of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    pub graph: Graph,
    /// `edges[i]` is the root edge behind vertex `i + 1`.
    pub edges: Vec<(Vertex, Vertex)>,
}

impl LineGraph {
    pub fn edge_of(&self, v: Vertex) -> Option<(Vertex, Vertex)> {
        let i = usize::try_from(v).ok()?.checked_sub(1)?;
        self.edges.get(i).copied()
    }
}

/// Line graph of `g`. Vertex `i` stands for the `i`-th edge of `g` in sorted
/// order.
pub fn line_graph(g: &Graph) -> Result<LineGraph> {
    let edges = g.edges();
    if edges.is_empty() {
        return Err(Error::EdgelessInput);
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        incident[g.index_of(a).unwrap()].push(e);
        incident[g.index_of(b).unwrap()].push(e);
    }
    let mut adj = vec![Vec::new(); edges.len()];
    for star in &incident {
        for (k, &e) in star.iter().enumerate() {
            for &f in &star[k + 1..] {
                adj[e].push(f);
                adj[f].push(e);
            }
        }
    }
    let ids = (1..=edges.len() as Vertex).collect();
    Ok(LineGraph {
        graph: Graph::from_index_adjacency(ids, adj),
        edges,
    })
}

/// The edges at `v`, written `(min, max)` and sorted.
pub fn vertex_star(g: &Graph, v: Vertex) -> Result<Vec<(Vertex, Vertex)>> {
    let nb = g.neighbors(v).ok_or(Error::UnknownVertex(v))?;
    let mut star: Vec<_> = nb.map(|w| (v.min(w), v.max(w))).collect();
    star.sort_unstable();
    Ok(star)
}

/// A root graph and the vertex of the line graph behind each root edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGraphResult {
    pub root: Graph,
    /// Root edge `(min, max)` paired with the input vertex it corresponds to,
    /// sorted by edge.
    pub correspondence: Vec<((Vertex, Vertex), Vertex)>,
}

impl RootGraphResult {
    /// Input vertex corresponding to the root edge `{a, b}`.
    pub fn vertex_for(&self, a: Vertex, b: Vertex) -> Option<Vertex> {
        let key = (a.min(b), a.max(b));
        self.correspondence
            .binary_search_by_key(&key, |&(e, _)| e)
            .ok()
            .map(|i| self.correspondence[i].1)
    }
}

/// Grows a Krausz cover from an initial clique. Every vertex ends up in at
/// most two cliques and every edge in exactly one, or `None`.
fn grow_cover(h: &Graph, seed: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = h.order();
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    // covered[i] holds the neighbours of i already joined through a clique
    let mut covered: Vec<Vec<bool>> = Vec::new();
    let mut pos: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let row: Vec<usize> = h.adj(i).to_vec();
        covered.push(vec![false; row.len()]);
        pos.push(row);
    }
    let slot = |pos: &Vec<Vec<usize>>, a: usize, b: usize| pos[a].binary_search(&b).ok();

    let add = |clique: Vec<usize>,
                   member: &mut Vec<Vec<usize>>,
                   covered: &mut Vec<Vec<bool>>,
                   cliques: &mut Vec<Vec<usize>>|
     -> bool {
        let id = cliques.len();
        for (k, &a) in clique.iter().enumerate() {
            if member[a].len() == 2 {
                return false;
            }
            member[a].push(id);
            for &b in &clique[k + 1..] {
                let (Some(sa), Some(sb)) = (slot(&pos, a, b), slot(&pos, b, a)) else {
                    return false;
                };
                if covered[a][sa] {
                    return false;
                }
                covered[a][sa] = true;
                covered[b][sb] = true;
            }
        }
        cliques.push(clique);
        true
    };

    let mut queue = VecDeque::new();
    if !add(seed.to_vec(), &mut member, &mut covered, &mut cliques) {
        return None;
    }
    queue.extend(seed.iter().copied());
    let mut done = vec![false; n];
    while let Some(x) = queue.pop_front() {
        if std::mem::replace(&mut done[x], true) {
            continue;
        }
        let rest: Vec<usize> = h
            .adj(x)
            .iter()
            .enumerate()
            .filter(|&(k, _)| !covered[x][k])
            .map(|(_, &w)| w)
            .collect();
        if rest.is_empty() {
            continue;
        }
        if member[x].len() != 1 {
            return None;
        }
        let mut clique = rest;
        clique.push(x);
        clique.sort_unstable();
        if !add(clique.clone(), &mut member, &mut covered, &mut cliques) {
            return None;
        }
        queue.extend(clique);
    }
    if covered.iter().all(|row| row.iter().all(|&c| c)) {
        Some(cliques)
    } else {
        None
    }
}

fn induced_claw(h: &Graph) -> Option<Obstruction> {
    for v in 0..h.order() {
        let nb = h.adj(v);
        for (i, &a) in nb.iter().enumerate() {
            for (j, &b) in nb.iter().enumerate().skip(i + 1) {
                if h.adjacent_at(a, b) {
                    continue;
                }
                for &c in &nb[j + 1..] {
                    if !h.adjacent_at(a, c) && !h.adjacent_at(b, c) {
                        return Some(Obstruction::InducedClaw {
                            center: h.vertex(v),
                            leaves: [h.vertex(a), h.vertex(b), h.vertex(c)],
                        });
                    }
                }
            }
        }
    }
    None
}

fn obstruction(h: &Graph) -> Error {
    Error::NotLineGraph(induced_claw(h).unwrap_or(Obstruction::KrauszFailure))
}

fn krausz_cover(h: &Graph) -> Option<Vec<Vec<usize>>> {
    let v0 = (0..h.order()).max_by_key(|&v| (h.degree_at(v), std::cmp::Reverse(v)))?;
    let w = *h.adj(v0).first()?;
    let common: Vec<usize> = h
        .adj(v0)
        .iter()
        .copied()
        .filter(|&z| z != w && h.adjacent_at(w, z))
        .collect();
    // The clique holding v0w is {v0, w} plus all common neighbours, or all but
    // one of them.
    let mut full = common.clone();
    full.extend([v0, w]);
    full.sort_unstable();
    let mut seeds = vec![full.clone()];
    for &z in &common {
        seeds.push(full.iter().copied().filter(|&x| x != z).collect());
    }
    seeds.into_iter().find_map(|s| {
        if h.is_clique_at(&s) {
            grow_cover(h, &s)
        } else {
            None
        }
    })
}

/// Root graph of a connected line graph. `K_3` yields the claw and `K_1`
/// yields `K_2`; otherwise the root is unique up to isomorphism.
///
/// Root vertices are numbered from 1: first the cover cliques in discovery
/// order, then one pendant vertex per input vertex lying in a single clique.
pub fn root_graph(h: &Graph) -> Result<RootGraphResult> {
    if h.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = h.order();
    let cliques: Vec<Vec<usize>> = if n == 1 {
        vec![vec![0]]
    } else if n == 3 && h.is_complete() {
        vec![vec![0, 1, 2]]
    } else {
        krausz_cover(h).ok_or_else(|| obstruction(h))?
    };
    let mut member: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for (c, clique) in cliques.iter().enumerate() {
        for &x in clique {
            member[x].push(c as Vertex + 1);
        }
    }
    let mut next = cliques.len() as Vertex + 1;
    let mut correspondence = Vec::with_capacity(n);
    for (x, m) in member.iter_mut().enumerate() {
        if m.len() == 1 {
            m.push(next);
            next += 1;
        }
        correspondence.push(((m[0].min(m[1]), m[0].max(m[1])), h.vertex(x)));
    }
    correspondence.sort_unstable();
    let root = Graph::new(1..next, correspondence.iter().map(|&(e, _)| e))
        .map_err(|_| obstruction(h))?;
    let result = RootGraphResult { root, correspondence };
    if !correspondence_is_exact(h, &result) {
        return Err(obstruction(h));
    }
    Ok(result)
}

/// Two input vertices are adjacent iff their root edges share an endpoint.
fn correspondence_is_exact(h: &Graph, r: &RootGraphResult) -> bool {
    let mut edge_at = vec![(0, 0); h.order()];
    for &((a, b), v) in &r.correspondence {
        edge_at[h.index_of(v).unwrap()] = (a, b);
    }
    let shares = |e: (Vertex, Vertex), f: (Vertex, Vertex)| {
        e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
    };
    // every adjacency is explained; then count to rule out extra sharing
    for i in 0..h.order() {
        for &j in h.adj(i) {
            if !shares(edge_at[i], edge_at[j]) {
                return false;
            }
        }
    }
    let sharing: usize = r
        .root
        .vertices()
        .iter()
        .map(|&v| {
            let d = r.root.degree(v).unwrap();
            d * d.saturating_sub(1) / 2
        })
        .sum();
    sharing == h.size()
}

/// Root graph of every component, as one graph with consecutive ids.
pub fn root_graph_of_components(h: &Graph) -> Result<Graph> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut offset = 0;
    for comp in component_indices(h) {
        let r = root_graph(&h.induced_at(&comp))?;
        vertices.extend(r.root.vertices().iter().map(|&v| v + offset));
        edges.extend(r.root.edges().into_iter().map(|(a, b)| (a + offset, b + offset)));
        offset += r.root.order() as Vertex;
    }
    Ok(Graph::new(vertices, edges).expect("component roots are disjoint"))
}

/// Whether every connected component of `h` is a line graph.
pub fn is_line_graph(h: &Graph) -> bool {
    component_indices(h)
        .iter()
        .all(|c| root_graph(&h.induced_at(c)).is_ok())
}

/// Why a graph is not a chordal line graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotChordalLineReason {
    NotChordal(Vec<Vertex>),
    NotLineGraph(Obstruction),
}

impl std::fmt::Display for NotChordalLineReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotChordalLineReason::NotChordal(c) => write!(f, "not chordal: chordless cycle {c:?}"),
            NotChordalLineReason::NotLineGraph(o) => write!(f, "not a line graph: {o}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordalLine {
    /// A root graph all of whose cycles are triangles; components of the input
    /// map to components of the root.
    Yes(Graph),
    No(NotChordalLineReason),
}

/// Recognizes chordal line graphs. Chordality is tested first, so a graph
/// failing both reports its chordless cycle.
pub fn is_chordal_line(h: &Graph) -> ChordalLine {
    if let Chordality::NotChordal(c) = is_chordal(h) {
        return ChordalLine::No(NotChordalLineReason::NotChordal(c));
    }
    let root = match root_graph_of_components(h) {
        Ok(r) => r,
        Err(Error::NotLineGraph(o)) => return ChordalLine::No(NotChordalLineReason::NotLineGraph(o)),
        Err(e) => unreachable!("root_graph on a connected component: {e}"),
    };
    debug_assert!(all_cycles_triangles(&root));
    ChordalLine::Yes(root)
}

/// Whether every cycle of `g` is a triangle, i.e. every block has at most
/// three vertices.
pub fn all_cycles_triangles(g: &Graph) -> bool {
    block_indices(g).iter().all(|b| b.len() <= 3)
}
