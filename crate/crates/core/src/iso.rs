//! Exact isomorphism oracles and 1-dimensional Weisfeiler–Leman refinement.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{apply_permutation, Graph, LabeledGraph, Vertex};

/// Stable 1-WL colouring. Colour ids are ranks of sorted refinement
/// signatures, so isomorphic graphs receive identical colour multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    /// `(vertex, colour)` in vertex order.
    pub colors: Vec<(Vertex, u32)>,
    pub rounds: usize,
}

impl Coloring {
    pub fn color_of(&self, v: Vertex) -> Option<u32> {
        self.colors
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| self.colors[i].1)
    }

    pub fn num_classes(&self) -> usize {
        let mut c: Vec<u32> = self.colors.iter().map(|&(_, c)| c).collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// Sorted sizes of the colour classes.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut count: HashMap<u32, usize> = HashMap::new();
        for &(_, c) in &self.colors {
            *count.entry(c).or_default() += 1;
        }
        let mut sizes: Vec<usize> = count.into_values().collect();
        sizes.sort_unstable();
        sizes
    }
}

/// Refines `initial` colours on index adjacency lists until stable.
fn refine(adj: &[&[usize]], initial: Vec<u32>) -> (Vec<u32>, usize) {
    let n = adj.len();
    let mut colors = initial;
    let mut classes = count_distinct(&colors);
    let mut rounds = 0;
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u32)
            .collect();
        let next_classes = sorted.len();
        rounds += 1;
        colors = next;
        if next_classes == classes {
            return (colors, rounds);
        }
        classes = next_classes;
    }
}

fn count_distinct(c: &[u32]) -> usize {
    let mut c = c.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Stable colour refinement starting from the uniform colouring.
pub fn color_refinement(g: &Graph) -> Coloring {
    let adj: Vec<&[usize]> = (0..g.order()).map(|i| g.adj(i)).collect();
    let (colors, rounds) = refine(&adj, vec![0; g.order()]);
    Coloring {
        colors: g.vertices().iter().copied().zip(colors).collect(),
        rounds,
    }
}

/// An isomorphism `g -> h` as `(vertex of g, vertex of h)` pairs sorted by
/// the first component, or `None`.
///
/// Both graphs are refined jointly so colours are comparable, then a
/// backtracking search maps vertices colour-preservingly, checking adjacency
/// against every vertex already placed. The result is verified before it is
/// returned. Exponential in the worst case.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<(Vertex, Vertex)>> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return None;
    }
    let shifted: Vec<Vec<usize>> = (0..n).map(|i| h.adj(i).iter().map(|&j| j + n).collect()).collect();
    let adj: Vec<&[usize]> = (0..n)
        .map(|i| g.adj(i))
        .chain(shifted.iter().map(Vec::as_slice))
        .collect();
    let (colors, _) = refine(&adj, vec![0; 2 * n]);
    let (cg, ch) = colors.split_at(n);
    let mut a = cg.to_vec();
    let mut b = ch.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }

    // Visit rare colours first, then vertices adjacent to placed ones.
    let mut freq: HashMap<u32, usize> = HashMap::new();
    for &c in cg {
        *freq.entry(c).or_default() += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let links = g.adj(v).iter().filter(|&&w| placed[w]).count();
                (std::cmp::Reverse(links), freq[&cg[v]], v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
    for (j, &c) in ch.iter().enumerate() {
        by_color.entry(c).or_default().push(j);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend(g, h, &order, 0, cg, &by_color, &mut map, &mut used) {
        return None;
    }
    let mapping: Vec<(Vertex, Vertex)> = (0..n).map(|i| (g.vertex(i), h.vertex(map[i]))).collect();
    assert!(is_isomorphism(g, h, &mapping), "backtracking produced a non-isomorphism");
    Some(mapping)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    depth: usize,
    cg: &[u32],
    by_color: &HashMap<u32, Vec<usize>>,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for &w in &by_color[&cg[v]] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&x| g.adjacent_at(v, x) == h.adjacent_at(w, map[x]));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, order, depth + 1, cg, by_color, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Whether `mapping` is a bijection `V(g) -> V(h)` preserving adjacency and
/// non-adjacency.
pub fn is_isomorphism(g: &Graph, h: &Graph, mapping: &[(Vertex, Vertex)]) -> bool {
    if g.order() != h.order() || g.size() != h.size() || mapping.len() != g.order() {
        return false;
    }
    let mut image = HashMap::with_capacity(mapping.len());
    let mut hit = vec![false; h.order()];
    for &(v, w) in mapping {
        let Some(j) = h.index_of(w) else { return false };
        if !g.contains(v) || image.insert(v, w).is_some() || std::mem::replace(&mut hit[j], true) {
            return false;
        }
    }
    g.edges().into_iter().all(|(a, b)| h.has_edge(image[&a], image[&b]))
}

pub const BRUTE_FORCE_MAX: u32 = 9;

/// The s-lex least relabeling of `g` over all `n!` permutations.
pub fn brute_canonical(g: &LabeledGraph) -> Result<LabeledGraph> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge(format!("{n} vertices, brute force stops at {BRUTE_FORCE_MAX}")));
    }
    let mut perm: Vec<u32> = (1..=n).collect();
    let mut best = g.clone();
    // Heap's algorithm, iterative form
    let mut c = vec![0usize; n as usize];
    let mut i = 0;
    while i < n as usize {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            let candidate = apply_permutation(g, &perm)?;
            if candidate < best {
                best = candidate;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(best)
}
