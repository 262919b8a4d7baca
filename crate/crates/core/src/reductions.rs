//! The hat construction: a complete graph on `V(G)` plus one degree-two
//! vertex per edge of `G`. Hat images are always chordal, so any decider for
//! chordal graphs transports to arbitrary graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::linegraph::line_graph;

/// A hat image together with its split into core and pendant vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HatImage {
    pub graph: Graph,
    /// The vertices of the original graph, sorted.
    pub core: Vec<Vertex>,
    /// Pendant vertex and the core edge it encodes, sorted by pendant.
    pub pendants: Vec<(Vertex, (Vertex, Vertex))>,
}

/// Builds the hat of `g`. Core vertices keep their identifiers; the vertex for
/// the `i`-th edge of `g` (sorted order) is `max(V(g)) + i`.
pub fn hat(g: &Graph) -> HatImage {
    let core = g.vertices().to_vec();
    let base = core.last().copied().unwrap_or(0);
    let pendants: Vec<_> = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(i, e)| (base + 1 + i as Vertex, e))
        .collect();
    let mut edges = Vec::new();
    for (k, &a) in core.iter().enumerate() {
        for &b in &core[k + 1..] {
            edges.push((a, b));
        }
    }
    for &(p, (a, b)) in &pendants {
        edges.push((a, p));
        edges.push((b, p));
    }
    let vertices = core.iter().copied().chain(pendants.iter().map(|&(p, _)| p));
    let graph = Graph::new(vertices, edges).expect("hat construction is simple");
    HatImage { graph, core, pendants }
}

/// Checks the structural conditions of a hat image for a proposed core.
fn split_with_core(h: &Graph, in_core: &[bool]) -> std::result::Result<HatImage, String> {
    let core: Vec<usize> = (0..h.order()).filter(|&i| in_core[i]).collect();
    if !h.is_clique_at(&core) {
        return Err("core is not a clique".into());
    }
    let mut pendants = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for p in (0..h.order()).filter(|&i| !in_core[i]) {
        let nb = h.adj(p);
        if nb.len() != 2 || !in_core[nb[0]] || !in_core[nb[1]] {
            return Err(format!("vertex {} is not attached to exactly two core vertices", h.vertex(p)));
        }
        let pair = (h.vertex(nb[0]), h.vertex(nb[1]));
        if !seen.insert(pair) {
            return Err(format!("two pendant vertices encode the edge {} {}", pair.0, pair.1));
        }
        pendants.push((h.vertex(p), pair));
    }
    Ok(HatImage {
        graph: h.clone(),
        core: core.into_iter().map(|i| h.vertex(i)).collect(),
        pendants,
    })
}

const BRUTE_FORCE_LIMIT: usize = 6;

/// Recovers the core/pendant split of a hat image.
///
/// From seven vertices on the core is exactly the set of vertices of degree
/// at least three. Smaller inputs try every vertex subset, preferring the
/// largest core and then the lexicographically smallest, which resolves
/// `K_3` to the hat of three isolated vertices.
pub fn hat_split(h: &Graph) -> Result<HatImage> {
    let n = h.order();
    if n == 0 {
        return Err(Error::NotHatImage("the graph is empty".into()));
    }
    if n > BRUTE_FORCE_LIMIT {
        let in_core: Vec<bool> = (0..n).map(|i| h.degree_at(i) >= 3).collect();
        return split_with_core(h, &in_core).map_err(Error::NotHatImage);
    }
    let mut best: Option<(usize, Vec<usize>, HatImage)> = None;
    let mut last_reason = String::new();
    for mask in 1u32..(1 << n) {
        let in_core: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let members: Vec<usize> = (0..n).filter(|&i| in_core[i]).collect();
        match split_with_core(h, &in_core) {
            Ok(img) => {
                let better = match &best {
                    None => true,
                    Some((size, set, _)) => {
                        members.len() > *size || (members.len() == *size && members < *set)
                    }
                };
                if better {
                    best = Some((members.len(), members, img));
                }
            }
            Err(reason) => last_reason = reason,
        }
    }
    best.map(|(_, _, img)| img)
        .ok_or(Error::NotHatImage(format!("no core split works ({last_reason})")))
}

pub fn is_hat(h: &Graph) -> bool {
    hat_split(h).is_ok()
}

/// Inverse of [`hat`] up to isomorphism. Core vertices keep their
/// identifiers and the edges are the pairs encoded by pendant vertices.
pub fn unhat(h: &Graph) -> Result<Graph> {
    let img = hat_split(h)?;
    Graph::new(img.core.iter().copied(), img.pendants.iter().map(|&(_, e)| e))
}

/// Target class a decider is transported through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Hat,
    LineGraph,
}

/// Turns a decider on hat images (chordal graphs) or on line graphs into a
/// decider on all graphs by composing it with the construction.
pub fn transport_decider<F>(decider: F, via: Via) -> impl Fn(&Graph) -> Result<bool>
where
    F: Fn(&Graph) -> Result<bool>,
{
    move |g: &Graph| match via {
        Via::Hat => decider(&hat(g).graph),
        Via::LineGraph => decider(&line_graph(g)?.graph),
    }
}
