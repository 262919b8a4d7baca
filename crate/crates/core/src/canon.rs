//! Canonical forms for chordal line graphs.
//!
//! A connected, non-complete chordal line graph is described from a triple
//! `(u1, u2, u3)` whose vertices lie in a unique maximal clique `beta`. The
//! separator is `sigma = {u1, u2}`, `alpha` is the component of `G - sigma`
//! holding `u3`, and the cone is `gamma = sigma + alpha`. Below a node, the
//! components of `alpha - beta` are the child cones; each attaches to `beta`
//! through its own separator of one or two vertices. Pointed forms are built
//! bottom-up, with `u1 -> 1` and `u2 -> 2`, and the canonical form is the
//! s-lex least pointed form over all triples whose cone is the whole graph.
//!
//! Triples whose recursion meets a node that cannot come from a good tree
//! decomposition are discarded: every node needs child separators of size at
//! most two, each child bag must be a clique, and overlapping separators are
//! only allowed when the bag is a triangle with at most two children.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::graph::{component_indices, Graph, LabeledGraph, Vertex};
use crate::linegraph::{is_chordal_line, ChordalLine};

/// A triple of vertices; `u1 == u2` is allowed, `u3` differs from both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleNode {
    pub u1: Vertex,
    pub u2: Vertex,
    pub u3: Vertex,
}

impl TripleNode {
    pub fn new(u1: Vertex, u2: Vertex, u3: Vertex) -> TripleNode {
        TripleNode { u1, u2, u3 }
    }
}

/// The sets attached to a triple, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData {
    pub sigma: Vec<Vertex>,
    pub alpha: Vec<Vertex>,
    pub beta: Vec<Vertex>,
    pub gamma: Vec<Vertex>,
}

/// Children of a node sharing one pointed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChildGroup {
    /// One representative triple per cone in the group.
    pub representatives: Vec<TripleNode>,
    /// The cones, parallel to `representatives`.
    pub cones: Vec<Vec<Vertex>>,
    /// The shared pointed form: least over both separator orders.
    pub form: LabeledGraph,
    pub multiplicity: usize,
    pub sigma_size: usize,
    pub order: usize,
}

/// A canonical copy and an isomorphism onto it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub graph: LabeledGraph,
    /// `(input vertex, position in [1..n])`, sorted by input vertex.
    pub witness: Vec<(Vertex, u32)>,
}

impl CanonicalForm {
    /// Whether the witness maps the edges of `g` exactly onto those of the
    /// canonical graph.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = self.graph.order() as usize;
        if g.order() != n || g.size() != self.graph.size() || self.witness.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        let mut pos = HashMap::with_capacity(n);
        for &(v, p) in &self.witness {
            if p == 0 || p as usize > n || std::mem::replace(&mut seen[p as usize], true) || !g.contains(v) {
                return false;
            }
            pos.insert(v, p);
        }
        g.edges().into_iter().all(|(a, b)| self.graph.has_edge(pos[&a], pos[&b]))
    }
}

/// Separator order, then a representative vertex. Determines a node.
type Key = (usize, usize, usize);
/// `(sigma, alpha, beta)` as sorted vertex indices.
type ConeSets = (Vec<usize>, Vec<usize>, Vec<usize>);

#[derive(Debug)]
struct Node {
    beta: Vec<usize>,
    gamma_len: usize,
    /// Child separators (sorted, one or two vertices) and representatives.
    children: Vec<(Vec<usize>, usize)>,
}

/// Pointed form and the input index at each position.
#[derive(Debug)]
struct Form {
    graph: LabeledGraph,
    order: Vec<usize>,
}

type Outcome<T> = Rc<std::result::Result<T, String>>;

struct Canoniser<'g> {
    g: &'g Graph,
    cliques: Vec<Vec<usize>>,
    member: Vec<Vec<usize>>,
    nodes: HashMap<Key, Outcome<Node>>,
    forms: HashMap<Key, Outcome<Form>>,
}

fn normal(k: Key) -> Key {
    (k.0.min(k.1), k.0.max(k.1), k.2)
}

fn orientations(sigma: &[usize], y: usize) -> Vec<Key> {
    match *sigma {
        [a] => vec![(a, a, y)],
        [a, b] => vec![(a, b, y), (b, a, y)],
        _ => unreachable!("child separators have one or two vertices"),
    }
}

impl<'g> Canoniser<'g> {
    /// Requires `g` chordal.
    fn new(g: &'g Graph) -> Result<Canoniser<'g>> {
        let cliques = crate::chordal::maximal_clique_indices(g)?;
        let mut member = vec![Vec::new(); g.order()];
        for (c, clique) in cliques.iter().enumerate() {
            for &v in clique {
                member[v].push(c);
            }
        }
        Ok(Canoniser { g, cliques, member, nodes: HashMap::new(), forms: HashMap::new() })
    }

    fn index(&self, v: Vertex) -> Result<usize> {
        self.g.index_of(v).ok_or(Error::UnknownVertex(v))
    }

    fn key_of(&self, u: TripleNode) -> Result<Key> {
        Ok((self.index(u.u1)?, self.index(u.u2)?, self.index(u.u3)?))
    }

    fn triple(&self, k: Key) -> TripleNode {
        TripleNode::new(self.g.vertex(k.0), self.g.vertex(k.1), self.g.vertex(k.2))
    }

    /// The only maximal clique containing all of `set`.
    fn unique_clique(&self, set: &[usize]) -> Option<usize> {
        let mut found = self.member[set[0]]
            .iter()
            .copied()
            .filter(|&c| set[1..].iter().all(|v| self.cliques[c].binary_search(v).is_ok()));
        let first = found.next()?;
        found.next().is_none().then_some(first)
    }

    /// Returns `(sigma, alpha, beta)` as sorted index sets, or `None` when
    /// the triple is outside `U`.
    fn cone(&self, k: Key) -> Option<ConeSets> {
        let (u1, u2, u3) = k;
        if u3 == u1 || u3 == u2 {
            return None;
        }
        let beta = self.unique_clique(&[u1, u2, u3])?;
        let mut sigma = vec![u1, u2];
        sigma.sort_unstable();
        sigma.dedup();
        let mut seen = vec![false; self.g.order()];
        for &s in &sigma {
            seen[s] = true;
        }
        seen[u3] = true;
        let mut alpha = vec![u3];
        let mut i = 0;
        while i < alpha.len() {
            for &w in self.g.adj(alpha[i]) {
                if !seen[w] {
                    seen[w] = true;
                    alpha.push(w);
                }
            }
            i += 1;
        }
        alpha.sort_unstable();
        Some((sigma, alpha, self.cliques[beta].clone()))
    }

    fn node(&mut self, k: Key) -> Outcome<Node> {
        let nk = normal(k);
        if let Some(n) = self.nodes.get(&nk) {
            return n.clone();
        }
        let n = Rc::new(self.expand(nk));
        self.nodes.insert(nk, n.clone());
        n
    }

    fn expand(&self, k: Key) -> std::result::Result<Node, String> {
        let g = self.g;
        let (sigma, alpha, beta) = self
            .cone(k)
            .ok_or_else(|| format!("{:?} lies in no unique maximal clique", self.triple(k)))?;
        let n = g.order();
        let mut in_beta = vec![false; n];
        for &b in &beta {
            in_beta[b] = true;
        }
        if sigma.iter().any(|&s| !in_beta[s]) || alpha.iter().any(|&a| sigma.contains(&a)) {
            return Err("separator outside the bag".into());
        }
        let mut rest = vec![false; n];
        for &a in &alpha {
            rest[a] = !in_beta[a];
        }
        let mut comp = vec![usize::MAX; n];
        let mut children = Vec::new();
        for &start in &alpha {
            if !rest[start] || comp[start] != usize::MAX {
                continue;
            }
            let id = children.len();
            comp[start] = id;
            let mut c = vec![start];
            let mut touches = BTreeSet::new();
            let mut i = 0;
            while i < c.len() {
                for &w in g.adj(c[i]) {
                    if rest[w] && comp[w] == usize::MAX {
                        comp[w] = id;
                        c.push(w);
                    } else if in_beta[w] {
                        touches.insert(w);
                    }
                }
                i += 1;
            }
            let child_sigma: Vec<usize> = touches.into_iter().collect();
            if child_sigma.is_empty() || child_sigma.len() > 2 {
                return Err(format!("child separator of size {}", child_sigma.len()));
            }
            let mut inner: Vec<usize> = c
                .into_iter()
                .filter(|&x| child_sigma.iter().all(|&s| g.adjacent_at(x, s)))
                .collect();
            if inner.is_empty() {
                return Err("child bag is covered by its separator".into());
            }
            inner.sort_unstable();
            let mut bag = child_sigma.clone();
            bag.extend(&inner);
            bag.sort_unstable();
            if !g.is_clique_at(&bag) {
                return Err("child bag is not a clique".into());
            }
            let y = inner[0];
            let mut probe = child_sigma.clone();
            probe.push(y);
            match self.unique_clique(&probe) {
                Some(c) if self.cliques[c] == bag => {}
                _ => return Err("child bag is not the clique of its triple".into()),
            }
            children.push((child_sigma, y));
        }
        Ok(Node {
            beta,
            gamma_len: sigma.len() + alpha.len(),
            children,
        })
    }

    /// Pointed form for the node `k`, computed bottom-up without recursion.
    fn form(&mut self, k: Key) -> Outcome<Form> {
        let mut stack = vec![(k, false)];
        while let Some((key, ready)) = stack.pop() {
            if self.forms.contains_key(&key) {
                continue;
            }
            let node = self.node(key);
            let node = match node.as_ref() {
                Ok(n) => n,
                Err(e) => {
                    self.forms.insert(key, Rc::new(Err(e.clone())));
                    continue;
                }
            };
            if ready {
                let f = self.assemble(key, node);
                self.forms.insert(key, Rc::new(f));
            } else {
                stack.push((key, true));
                for (s, y) in &node.children {
                    for ck in orientations(s, *y) {
                        if !self.forms.contains_key(&ck) {
                            stack.push((ck, false));
                        }
                    }
                }
            }
        }
        self.forms[&k].clone()
    }

    fn child_forms(&self, s: &[usize], y: usize) -> std::result::Result<Vec<&Form>, String> {
        orientations(s, y)
            .into_iter()
            .map(|ck| self.forms[&ck].as_ref().as_ref().map_err(Clone::clone))
            .collect()
    }

    fn assemble(&self, k: Key, node: &Node) -> std::result::Result<Form, String> {
        let mut sigma = vec![k.0];
        if k.1 != k.0 {
            sigma.push(k.1);
        }
        let overlap = {
            let mut seen: Vec<usize> = sigma.clone();
            let mut clash = false;
            for (s, _) in &node.children {
                for v in s {
                    if seen.contains(v) {
                        clash = true;
                    }
                }
                seen.extend(s);
            }
            clash
        };
        let form = if overlap {
            self.assemble_overlapping(&sigma, node)?
        } else {
            self.assemble_disjoint(&sigma, node)?
        };
        debug_assert_eq!(form.order.len(), node.gamma_len);
        Ok(form)
    }

    /// Bag positions first (separator, then the bag vertices no child
    /// touches), then each child's pointed form in s-lex order, ties broken
    /// by separator size; the bag
    /// vertices, including every child's separator, become a clique.
    fn assemble_disjoint(&self, sigma: &[usize], node: &Node) -> std::result::Result<Form, String> {
        let mut kids = Vec::with_capacity(node.children.len());
        for (s, y) in &node.children {
            let options = self.child_forms(s, *y)?;
            let best = options
                .into_iter()
                .min_by(|a, b| a.graph.cmp(&b.graph))
                .expect("at least one orientation");
            kids.push((s.len(), best));
        }
        // equal forms glued along separators of different sizes differ
        kids.sort_by(|a, b| a.1.graph.cmp(&b.1.graph).then(a.0.cmp(&b.0)));

        let touched: BTreeSet<usize> = node.children.iter().flat_map(|(s, _)| s.iter().copied()).collect();
        let mut order: Vec<usize> = sigma.to_vec();
        order.extend(
            node.beta
                .iter()
                .copied()
                .filter(|b| !touched.contains(b) && !sigma.contains(b)),
        );
        let q = order.len();
        let mut clique: Vec<u32> = (1..=q as u32).collect();
        let mut edges = Vec::new();
        for (qj, f) in &kids {
            let offset = order.len() as u32;
            clique.extend(offset + 1..=offset + *qj as u32);
            edges.extend(f.graph.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
            order.extend(&f.order);
        }
        if clique.len() != node.beta.len() {
            return Err("bag size does not match the assembled clique".into());
        }
        for (i, &a) in clique.iter().enumerate() {
            for &b in &clique[i + 1..] {
                edges.push((a, b));
            }
        }
        Ok(Form {
            graph: LabeledGraph::from_pairs(order.len() as u32, edges),
            order,
        })
    }

    /// Triangle bags whose child separators overlap: try every placement of
    /// the bag fixing the separator, every child separator order and both
    /// child orders, and keep the s-lex least result.
    fn assemble_overlapping(&self, sigma: &[usize], node: &Node) -> std::result::Result<Form, String> {
        if node.beta.len() != 3 || node.children.len() > 2 {
            return Err(format!(
                "overlapping separators at a bag of size {} with {} children",
                node.beta.len(),
                node.children.len()
            ));
        }
        let others: Vec<usize> = node.beta.iter().copied().filter(|b| !sigma.contains(b)).collect();
        let mut placements = Vec::new();
        if sigma.len() == 2 {
            placements.push(vec![sigma[0], sigma[1], others[0]]);
        } else {
            placements.push(vec![sigma[0], others[0], others[1]]);
            placements.push(vec![sigma[0], others[1], others[0]]);
        }
        let options: Vec<Vec<&Form>> = node
            .children
            .iter()
            .map(|(s, y)| self.child_forms(s, *y))
            .collect::<std::result::Result<_, _>>()?;
        let child_orders: Vec<Vec<usize>> = match options.len() {
            0 => vec![vec![]],
            1 => vec![vec![0]],
            _ => vec![vec![0, 1], vec![1, 0]],
        };
        let mut best: Option<Form> = None;
        for place in &placements {
            for choice in 0..options.iter().map(Vec::len).product::<usize>() {
                // mixed-radix digits pick one orientation per child
                let mut rest = choice;
                let picked: Vec<&Form> = options
                    .iter()
                    .map(|o| {
                        let f = o[rest % o.len()];
                        rest /= o.len();
                        f
                    })
                    .collect();
                for seq in &child_orders {
                    let f = glue_on_bag(place, seq.iter().map(|&j| (node.children[j].0.len(), picked[j])));
                    if best.as_ref().is_none_or(|b| f.graph < b.graph) {
                        best = Some(f);
                    }
                }
            }
        }
        Ok(best.expect("at least one placement"))
    }
}

/// Positions `1..=3` hold `place`; each child's separator positions map to
/// the bag positions of the same vertices, its interior follows in order.
fn glue_on_bag<'a>(place: &[usize], kids: impl Iterator<Item = (usize, &'a Form)>) -> Form {
    let mut order = place.to_vec();
    let mut edges = vec![(1, 2), (1, 3), (2, 3)];
    for (qj, f) in kids {
        let offset = order.len() as u32 - qj as u32;
        let map = |p: u32| -> u32 {
            if (p as usize) <= qj {
                let v = f.order[p as usize - 1];
                place.iter().position(|&b| b == v).expect("child separator lies in the bag") as u32 + 1
            } else {
                p + offset
            }
        };
        edges.extend(f.graph.edges().iter().map(|&(a, b)| (map(a), map(b))));
        order.extend(&f.order[qj..]);
    }
    Form {
        graph: LabeledGraph::from_pairs(order.len() as u32, edges),
        order,
    }
}

fn not_in_u(u: TripleNode) -> Error {
    Error::NotInU([u.u1, u.u2, u.u3])
}

/// The four sets of a triple. `g` must be chordal.
pub fn cone_data(g: &Graph, u: TripleNode) -> Result<ConeData> {
    let c = Canoniser::new(g)?;
    let k = c.key_of(u)?;
    let (sigma, alpha, beta) = c.cone(k).ok_or_else(|| not_in_u(u))?;
    let mut gamma: Vec<usize> = sigma.iter().chain(&alpha).copied().collect();
    gamma.sort_unstable();
    let ids = |s: Vec<usize>| s.into_iter().map(|i| g.vertex(i)).collect();
    Ok(ConeData {
        sigma: ids(sigma),
        alpha: ids(alpha),
        beta: ids(beta),
        gamma: ids(gamma),
    })
}

fn expand_public(c: &mut Canoniser, u: TripleNode) -> Result<Vec<TripleNode>> {
    let k = c.key_of(u)?;
    c.cone(k).ok_or_else(|| not_in_u(u))?;
    match c.node(k).as_ref() {
        Ok(node) => Ok(node
            .children
            .iter()
            .map(|(s, y)| c.triple((s[0], *s.last().unwrap(), *y)))
            .collect()),
        Err(e) => Err(Error::StructuralViolation(e.clone())),
    }
}

/// One representative triple per child cone of `u`: the separator in
/// ascending order and the least vertex of the child's bag outside it.
pub fn children(g: &Graph, u: TripleNode) -> Result<Vec<TripleNode>> {
    let mut c = Canoniser::new(g)?;
    expand_public(&mut c, u)
}

/// Children of `u` grouped by pointed form and separator size, ascending in
/// s-lex order and then separator size.
pub fn child_groups(g: &Graph, u: TripleNode) -> Result<Vec<ChildGroup>> {
    let mut c = Canoniser::new(g)?;
    let reps = expand_public(&mut c, u)?;
    let mut entries = Vec::new();
    for rep in reps {
        let data = cone_data(g, rep)?;
        let sigma: Vec<usize> = data.sigma.iter().map(|&v| c.index(v)).collect::<Result<_>>()?;
        let mut best: Option<LabeledGraph> = None;
        for k in orientations(&sigma, c.index(rep.u3)?) {
            match c.form(k).as_ref() {
                Ok(f) => {
                    if best.as_ref().is_none_or(|b| f.graph < *b) {
                        best = Some(f.graph.clone());
                    }
                }
                Err(e) => return Err(Error::StructuralViolation(e.clone())),
            }
        }
        entries.push((best.unwrap(), rep, data));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0).then(a.2.sigma.len().cmp(&b.2.sigma.len())));
    let mut groups: Vec<ChildGroup> = Vec::new();
    for (form, rep, data) in entries {
        match groups.last_mut() {
            Some(last) if last.form == form && last.sigma_size == data.sigma.len() => {
                last.representatives.push(rep);
                last.cones.push(data.gamma);
                last.multiplicity += 1;
            }
            _ => groups.push(ChildGroup {
                representatives: vec![rep],
                cones: vec![data.gamma],
                order: form.order() as usize,
                form,
                multiplicity: 1,
                sigma_size: data.sigma.len(),
            }),
        }
    }
    Ok(groups)
}

/// Pointed form of the cone of `u`, with `u1 -> 1` and `u2 -> 2`, and the
/// input vertex at each position.
pub fn canon_pointed_with_order(g: &Graph, u: TripleNode) -> Result<(LabeledGraph, Vec<Vertex>)> {
    let mut c = Canoniser::new(g)?;
    let k = c.key_of(u)?;
    c.cone(k).ok_or_else(|| not_in_u(u))?;
    match c.form(k).as_ref() {
        Ok(f) => Ok((f.graph.clone(), f.order.iter().map(|&i| g.vertex(i)).collect())),
        Err(e) => Err(Error::StructuralViolation(e.clone())),
    }
}

pub fn canon_pointed(g: &Graph, u: TripleNode) -> Result<LabeledGraph> {
    canon_pointed_with_order(g, u).map(|(f, _)| f)
}

/// Triples lying in a unique maximal clique whose cone is the whole graph,
/// sorted.
pub fn root_candidates(g: &Graph) -> Result<Vec<TripleNode>> {
    let c = Canoniser::new(g)?;
    let keys = candidate_keys(&c);
    if keys.is_empty() {
        return Err(Error::NoCandidates);
    }
    let mut out: Vec<TripleNode> = keys.into_iter().map(|k| c.triple(k)).collect();
    out.sort_unstable();
    Ok(out)
}

fn candidate_keys(c: &Canoniser) -> Vec<Key> {
    let g = c.g;
    let mut connected_without: HashMap<(usize, usize), bool> = HashMap::new();
    let mut out = Vec::new();
    for (x, clique) in c.cliques.iter().enumerate() {
        for &u1 in clique {
            for &u2 in clique {
                let cut = *connected_without.entry((u1.min(u2), u1.max(u2))).or_insert_with(|| {
                    let keep: Vec<usize> = (0..g.order()).filter(|&v| v != u1 && v != u2).collect();
                    !keep.is_empty() && component_indices(&g.induced_at(&keep)).len() == 1
                });
                if !cut {
                    continue;
                }
                for &u3 in clique {
                    if u3 != u1 && u3 != u2 && c.unique_clique(&[u1, u2, u3]) == Some(x) {
                        out.push((u1, u2, u3));
                    }
                }
            }
        }
    }
    out
}

/// Options for [`canon_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonOptions {
    /// Re-check the witness before returning.
    pub paranoid: bool,
}

fn complete_form(g: &Graph) -> CanonicalForm {
    CanonicalForm {
        graph: LabeledGraph::complete(g.order() as u32),
        witness: g.vertices().iter().zip(1u32..).map(|(&v, p)| (v, p)).collect(),
    }
}

fn require_chordal_line(g: &Graph) -> Result<()> {
    match is_chordal_line(g) {
        ChordalLine::Yes(_) => Ok(()),
        ChordalLine::No(reason) => Err(Error::NotChordalLine {
            component: g.vertices().first().copied().unwrap_or(0),
            reason: reason.to_string(),
        }),
    }
}

/// Canonical form of a connected chordal line graph.
pub fn canon_connected(g: &Graph) -> Result<CanonicalForm> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    require_chordal_line(g)?;
    if g.is_complete() {
        return Ok(complete_form(g));
    }
    let mut c = Canoniser::new(g)?;
    let mut best: Option<(LabeledGraph, Vec<usize>)> = None;
    let mut tried = std::collections::HashSet::new();
    for k in candidate_keys(&c) {
        // the node depends only on the ordered separator and the bag
        let bag = c.unique_clique(&[k.0, k.1, k.2]);
        if !tried.insert((k.0, k.1, bag)) {
            continue;
        }
        if let Ok(f) = c.form(k).as_ref() {
            if best.as_ref().is_none_or(|(b, _)| f.graph < *b) {
                best = Some((f.graph.clone(), f.order.clone()));
            }
        }
    }
    let (graph, order) = best.ok_or(Error::NoCandidates)?;
    let mut witness: Vec<(Vertex, u32)> = order.iter().zip(1u32..).map(|(&i, p)| (g.vertex(i), p)).collect();
    witness.sort_unstable();
    Ok(CanonicalForm { graph, witness })
}

/// Canonical form of a graph whose components are chordal line graphs:
/// component forms in ascending s-lex order on consecutive intervals.
pub fn canon(g: &Graph) -> Result<CanonicalForm> {
    canon_with(g, CanonOptions::default())
}

pub fn canon_with(g: &Graph, options: CanonOptions) -> Result<CanonicalForm> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut parts = Vec::new();
    for comp in component_indices(g) {
        let h = g.induced_at(&comp);
        let form = canon_connected(&h).map_err(|e| match e {
            Error::NotChordalLine { reason, .. } => Error::NotChordalLine {
                component: h.vertex(0),
                reason,
            },
            other => other,
        })?;
        parts.push(form);
    }
    parts.sort_by(|a, b| a.graph.cmp(&b.graph));
    let mut edges = Vec::new();
    let mut witness = Vec::with_capacity(g.order());
    let mut offset = 0u32;
    for p in &parts {
        edges.extend(p.graph.edges().iter().map(|&(a, b)| (a + offset, b + offset)));
        witness.extend(p.witness.iter().map(|&(v, q)| (v, q + offset)));
        offset += p.graph.order();
    }
    witness.sort_unstable();
    let form = CanonicalForm {
        graph: LabeledGraph::from_pairs(offset, edges),
        witness,
    };
    if options.paranoid && !form.verify(g) {
        return Err(Error::WitnessMismatch("canonical witness fails edge check".into()));
    }
    Ok(form)
}

/// A node reached while canonising, with the children it was expanded into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedNode {
    pub node: TripleNode,
    pub children: Vec<TripleNode>,
}

/// Every node expanded without violation while canonising a connected,
/// non-complete chordal line graph, sorted.
pub fn expanded_nodes(g: &Graph) -> Result<Vec<ExpandedNode>> {
    require_chordal_line(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    let mut c = Canoniser::new(g)?;
    for k in candidate_keys(&c) {
        let _ = c.form(k);
    }
    let mut out: Vec<ExpandedNode> = c
        .nodes
        .iter()
        .filter_map(|(&k, n)| {
            n.as_ref().as_ref().ok().map(|node| ExpandedNode {
                node: c.triple(k),
                children: node
                    .children
                    .iter()
                    .map(|(s, y)| c.triple((s[0], *s.last().unwrap(), *y)))
                    .collect(),
            })
        })
        .collect();
    out.sort_by_key(|e| e.node);
    Ok(out)
}
