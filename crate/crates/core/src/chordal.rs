//! Chordality testing, maximal cliques of chordal graphs, and good tree
//! decompositions (clique trees whose bags are exactly the maximal cliques).

use std::collections::{BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::graph::{component_indices, set_lex_cmp, Graph, RootedTree, Vertex};
use crate::linegraph;

/// A vertex sequence; it is a perfect elimination ordering of a graph when
/// the later neighbours of every vertex form a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder(Vec<Vertex>);

impl EliminationOrder {
    pub fn new(order: Vec<Vertex>) -> EliminationOrder {
        EliminationOrder(order)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn is_perfect_for(&self, g: &Graph) -> bool {
        verify_peo(g, self)
    }
}

/// Outcome of a chordality test, with a checkable witness either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// A chordless cycle of length at least four, in cyclic order.
    NotChordal(Vec<Vertex>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search visiting order, as indices. Ties go to the
/// smallest identifier.
pub(crate) fn mcs_visit(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best = usize::MAX;
        for v in 0..n {
            if !done[v] && (best == usize::MAX || weight[v] > weight[best]) {
                best = v;
            }
        }
        done[best] = true;
        visit.push(best);
        for &w in g.adj(best) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    visit
}

/// Elimination order derived from maximum cardinality search: the reverse of
/// the visiting order. It is perfect exactly when `g` is chordal.
pub fn mcs_order(g: &Graph) -> Result<EliminationOrder> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut visit = mcs_visit(g);
    visit.reverse();
    Ok(EliminationOrder(visit.into_iter().map(|i| g.vertex(i)).collect()))
}

/// Checks the perfect elimination property; `false` also when `order` is not
/// a permutation of the vertices.
pub fn verify_peo(g: &Graph, order: &EliminationOrder) -> bool {
    let Some(idx) = order_indices(g, order.vertices()) else {
        return false;
    };
    first_peo_failure(g, &idx).is_none()
}

fn order_indices(g: &Graph, order: &[Vertex]) -> Option<Vec<usize>> {
    if order.len() != g.order() {
        return None;
    }
    let mut seen = vec![false; g.order()];
    let mut out = Vec::with_capacity(order.len());
    for &v in order {
        let i = g.index_of(v)?;
        if std::mem::replace(&mut seen[i], true) {
            return None;
        }
        out.push(i);
    }
    Some(out)
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    pos
}

/// Later neighbours of every vertex, sorted by position.
fn later_neighbours(g: &Graph, order: &[usize], pos: &[usize]) -> Vec<Vec<usize>> {
    let mut later = vec![Vec::new(); g.order()];
    for &v in order {
        let mut l: Vec<usize> = g.adj(v).iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        l.sort_unstable_by_key(|&w| pos[w]);
        later[v] = l;
    }
    later
}

/// Returns `(v, x, y)` with `x`, `y` non-adjacent later neighbours of `v`.
fn first_peo_failure(g: &Graph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let pos = positions(order);
    let later = later_neighbours(g, order, &pos);
    for &v in order {
        if let Some((&p, rest)) = later[v].split_first() {
            for &x in rest {
                if !g.adjacent_at(p, x) {
                    return Some((v, p, x));
                }
            }
        }
    }
    None
}

/// Shortest `x`-`y` path avoiding `v` and all other neighbours of `v`.
fn path_avoiding(g: &Graph, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let n = g.order();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &w in g.adj(v) {
        blocked[w] = true;
    }
    blocked[x] = false;
    blocked[y] = false;
    let mut prev = vec![usize::MAX; n];
    prev[x] = x;
    let mut queue = VecDeque::from([x]);
    while let Some(a) = queue.pop_front() {
        if a == y {
            let mut path = vec![y];
            let mut c = y;
            while c != x {
                c = prev[c];
                path.push(c);
            }
            path.reverse();
            return Some(path);
        }
        for &b in g.adj(a) {
            if !blocked[b] && prev[b] == usize::MAX {
                prev[b] = a;
                queue.push_back(b);
            }
        }
    }
    None
}

fn chordless_cycle(g: &Graph, hint: (usize, usize, usize)) -> Vec<usize> {
    let (v, x, y) = hint;
    if let Some(p) = path_avoiding(g, v, x, y) {
        let mut cycle = vec![v];
        cycle.extend(p);
        return cycle;
    }
    // Every chordless cycle of length >= 4 passes through some vertex with two
    // non-adjacent neighbours joined outside its closed neighbourhood.
    for v in 0..g.order() {
        let nb = g.adj(v);
        for (k, &x) in nb.iter().enumerate() {
            for &y in &nb[k + 1..] {
                if !g.adjacent_at(x, y) {
                    if let Some(p) = path_avoiding(g, v, x, y) {
                        let mut cycle = vec![v];
                        cycle.extend(p);
                        return cycle;
                    }
                }
            }
        }
    }
    unreachable!("elimination order failed but no chordless cycle exists")
}

/// Chordality test by maximum cardinality search. An empty graph is chordal.
pub fn is_chordal(g: &Graph) -> Chordality {
    let mut order = mcs_visit(g);
    order.reverse();
    match first_peo_failure(g, &order) {
        None => Chordality::Chordal(EliminationOrder(
            order.into_iter().map(|i| g.vertex(i)).collect(),
        )),
        Some(hint) => Chordality::NotChordal(
            chordless_cycle(g, hint).into_iter().map(|i| g.vertex(i)).collect(),
        ),
    }
}

/// Maximal cliques of a chordal graph from a perfect elimination order given
/// as indices. Each clique is sorted; cliques are sorted lexicographically.
pub(crate) fn cliques_from_peo(g: &Graph, order: &[usize]) -> Vec<Vec<usize>> {
    let pos = positions(order);
    let later = later_neighbours(g, order, &pos);
    // C(v) = {v} + later(v) is not maximal iff some u whose first later
    // neighbour is v has exactly one more later neighbour than v.
    let mut dominated = vec![false; g.order()];
    for &u in order {
        if let Some(&p) = later[u].first() {
            if later[u].len() == later[p].len() + 1 {
                dominated[p] = true;
            }
        }
    }
    let mut out: Vec<Vec<usize>> = order
        .iter()
        .filter(|&&v| !dominated[v])
        .map(|&v| {
            let mut c = later[v].clone();
            c.push(v);
            c.sort_unstable();
            c
        })
        .collect();
    out.sort();
    out
}

pub(crate) fn maximal_clique_indices(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let mut order = mcs_visit(g);
    order.reverse();
    if let Some(hint) = first_peo_failure(g, &order) {
        return Err(Error::NotChordal(
            chordless_cycle(g, hint).into_iter().map(|i| g.vertex(i)).collect(),
        ));
    }
    Ok(cliques_from_peo(g, &order))
}

/// All inclusion-maximal cliques of a chordal graph; at most `|V|` of them.
pub fn maximal_cliques_chordal(g: &Graph) -> Result<Vec<Vec<Vertex>>> {
    Ok(maximal_clique_indices(g)?
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.vertex(i)).collect())
        .collect())
}

/// Maximal cliques of an arbitrary graph (Bron–Kerbosch with pivoting).
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<Vertex>> {
    fn expand(
        g: &Graph,
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = *p
            .iter()
            .chain(x.iter())
            .max_by_key(|&&u| g.adj(u).iter().filter(|w| p.contains(w)).count())
            .unwrap();
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !g.adjacent_at(pivot, v))
            .collect();
        for v in candidates {
            let nb: BTreeSet<usize> = g.adj(v).iter().copied().collect();
            r.push(v);
            expand(
                g,
                r,
                p.intersection(&nb).copied().collect(),
                x.intersection(&nb).copied().collect(),
                out,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    expand(g, &mut Vec::new(), (0..g.order()).collect(), BTreeSet::new(), &mut out);
    let mut cliques: Vec<Vec<Vertex>> = out
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.vertex(i)).collect())
        .collect();
    cliques.sort();
    cliques
}

/// A rooted clique tree of a connected chordal graph together with the
/// separator, cone and `cone - separator` sets of every node.
///
/// The root always has exactly one child. Its separator is a one- or
/// two-element subset of the vertices that occur in the root bag but not in
/// the child's bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoodTreeDecomposition {
    tree: RootedTree,
    bags: Vec<Vec<Vertex>>,
    sigma: Vec<Vec<Vertex>>,
    alpha: Vec<Vec<Vertex>>,
    gamma: Vec<Vec<Vertex>>,
    root_choices: Vec<Vertex>,
    tree_edges: Vec<(usize, usize)>,
}

impl GoodTreeDecomposition {
    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    pub fn bag(&self, t: usize) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn sigma(&self, t: usize) -> &[Vertex] {
        &self.sigma[t]
    }

    pub fn alpha(&self, t: usize) -> &[Vertex] {
        &self.alpha[t]
    }

    pub fn gamma(&self, t: usize) -> &[Vertex] {
        &self.gamma[t]
    }

    /// The set `S` the root separator was drawn from.
    pub fn root_separator_choices(&self) -> &[Vertex] {
        &self.root_choices
    }

    /// Undirected clique-tree edges as node pairs.
    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    /// Nodes of degree one in the underlying undirected tree.
    pub fn leaves(&self) -> Vec<usize> {
        let mut deg = vec![0; self.len()];
        for &(a, b) in &self.tree_edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        (0..self.len()).filter(|&t| deg[t] == 1).collect()
    }

    /// The same clique tree rooted at another leaf with an explicit root
    /// separator, which must be a valid choice from that root's `S`.
    pub fn rerooted(&self, leaf: usize, sigma: &[Vertex]) -> Result<GoodTreeDecomposition> {
        if !self.leaves().contains(&leaf) {
            return Err(Error::StructuralViolation(format!("node {leaf} is not a leaf")));
        }
        build_rooted(self.bags.clone(), self.tree_edges.clone(), leaf, Some(sigma))
    }

    /// One line per node: `id parent : bag`, the root's parent printed as `-`.
    pub fn to_diagnostic_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GoodTreeDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in 0..self.len() {
            let parent = self
                .tree
                .parent(t)
                .map_or_else(|| "-".to_string(), |p| p.to_string());
            let mut line = format!("{t} {parent} :");
            for v in &self.bags[t] {
                write!(line, " {v}")?;
            }
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn sorted_intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn sorted_difference(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|x| b.binary_search(x).is_err()).collect()
}

fn build_rooted(
    bags: Vec<Vec<Vertex>>,
    tree_edges: Vec<(usize, usize)>,
    root: usize,
    sigma_choice: Option<&[Vertex]>,
) -> Result<GoodTreeDecomposition> {
    let k = bags.len();
    let mut nbrs = vec![Vec::new(); k];
    for &(a, b) in &tree_edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let mut parent = vec![None; k];
    let mut seen = vec![false; k];
    let mut bfs = vec![root];
    seen[root] = true;
    let mut i = 0;
    while i < bfs.len() {
        let t = bfs[i];
        for &c in &nbrs[t] {
            if !seen[c] {
                seen[c] = true;
                parent[c] = Some(t);
                bfs.push(c);
            }
        }
        i += 1;
    }
    let tree = RootedTree::new(parent)?;
    let mut gamma: Vec<BTreeSet<Vertex>> = bags.iter().map(|b| b.iter().copied().collect()).collect();
    for &t in bfs.iter().rev() {
        if let Some(p) = tree.parent(t) {
            let below: Vec<Vertex> = gamma[t].iter().copied().collect();
            gamma[p].extend(below);
        }
    }
    let gamma: Vec<Vec<Vertex>> = gamma.into_iter().map(|s| s.into_iter().collect()).collect();

    let children = tree.children(root);
    if children.len() != 1 {
        return Err(Error::StructuralViolation("root must have exactly one child".into()));
    }
    let root_choices = sorted_difference(&bags[root], &bags[children[0]]);
    let root_sigma = match sigma_choice {
        None => root_choices.iter().copied().take(2).collect::<Vec<_>>(),
        Some(s) => {
            let mut s = s.to_vec();
            s.sort_unstable();
            s.dedup();
            let want = root_choices.len().min(2);
            if s.len() != want || s.iter().any(|v| root_choices.binary_search(v).is_err()) {
                return Err(Error::StructuralViolation(format!(
                    "root separator {s:?} is not a {want}-subset of {root_choices:?}"
                )));
            }
            s
        }
    };
    let sigma: Vec<Vec<Vertex>> = (0..k)
        .map(|t| match tree.parent(t) {
            Some(p) => sorted_intersection(&bags[t], &bags[p]),
            None => root_sigma.clone(),
        })
        .collect();
    let alpha = (0..k).map(|t| sorted_difference(&gamma[t], &sigma[t])).collect();
    Ok(GoodTreeDecomposition {
        tree,
        bags,
        sigma,
        alpha,
        gamma,
        root_choices,
        tree_edges,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Good tree decomposition of a connected, chordal, non-complete graph.
///
/// Bags are the maximal cliques; the tree is a maximum-weight spanning tree
/// of the clique intersection graph (ties by clique index pairs). The root is
/// the leaf whose bag is least in set-lexicographic order under the maximum
/// cardinality search numbering, and its separator takes the two smallest
/// identifiers of `S`.
pub fn good_tree_decomposition(g: &Graph) -> Result<GoodTreeDecomposition> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if component_indices(g).len() > 1 {
        return Err(Error::Disconnected);
    }
    let visit = mcs_visit(g);
    let mut order = visit.clone();
    order.reverse();
    if let Some(hint) = first_peo_failure(g, &order) {
        return Err(Error::NotChordal(
            chordless_cycle(g, hint).into_iter().map(|i| g.vertex(i)).collect(),
        ));
    }
    if g.is_complete() {
        return Err(Error::CompleteGraph);
    }
    let cliques = cliques_from_peo(g, &order);
    let k = cliques.len();
    let mut weighted = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = cliques[i]
                .iter()
                .filter(|x| cliques[j].binary_search(x).is_ok())
                .count();
            if w > 0 {
                weighted.push((w, i, j));
            }
        }
    }
    weighted.sort_by(|a, b| b.0.cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    let mut uf: Vec<usize> = (0..k).collect();
    let mut tree_edges = Vec::with_capacity(k - 1);
    for (_, i, j) in weighted {
        let (a, b) = (find(&mut uf, i), find(&mut uf, j));
        if a != b {
            uf[a] = b;
            tree_edges.push((i, j));
        }
    }

    let visit_no = positions(&visit);
    let mut deg = vec![0; k];
    for &(a, b) in &tree_edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let root = (0..k)
        .filter(|&t| deg[t] == 1)
        .min_by(|&a, &b| {
            let key = |t: usize| {
                let mut nums: Vec<usize> = cliques[t].iter().map(|&v| visit_no[v]).collect();
                nums.sort_unstable();
                nums
            };
            set_lex_cmp(&key(a), &key(b)).then(a.cmp(&b))
        })
        .expect("a tree with at least two nodes has a leaf");

    let bags = cliques
        .into_iter()
        .map(|c| c.into_iter().map(|i| g.vertex(i)).collect())
        .collect();
    build_rooted(bags, tree_edges, root, None)
}

/// Conditions checked by [`validate_tree_decomposition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Occurrences of every vertex form a connected subtree.
    VertexConnectivity,
    /// Every edge lies inside a bag.
    EdgeCoverage,
    /// Every bag is a maximal clique.
    BagIsMaximalClique,
    /// Every maximal clique is the bag of exactly one node.
    CliqueHasOneBag,
    /// Cones are unions of the bags at or below a node.
    Cone,
    /// Separators are parent intersections and `alpha = gamma - sigma`.
    Separator,
    /// The root has exactly one child and its separator comes from `S`.
    Root,
    /// `1 <= |sigma| <= 2` and the bag is not covered by the separator.
    SeparatorSize,
    /// Small bag with at most three neighbours, or pairwise disjoint
    /// neighbour bags (line graphs only).
    NeighbourDichotomy,
    /// Distinct bags share at most two vertices (line graphs only).
    BagIntersection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Pass,
    Fail { condition: Condition, witness: String },
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        matches!(self, ValidationReport::Pass)
    }
}

/// Checks every structural property of a good tree decomposition, plus the
/// two extra properties chordal line graphs enjoy when `g` is a line graph.
pub fn validate_tree_decomposition(g: &Graph, d: &GoodTreeDecomposition) -> ValidationReport {
    match check_decomposition(g, d) {
        Ok(()) => ValidationReport::Pass,
        Err((condition, witness)) => ValidationReport::Fail { condition, witness },
    }
}

fn check_decomposition(g: &Graph, d: &GoodTreeDecomposition) -> std::result::Result<(), (Condition, String)> {
    let tree = d.tree();
    let k = d.len();
    let fail = |c: Condition, w: String| Err((c, w));

    for &v in g.vertices() {
        let nodes: Vec<usize> = (0..k).filter(|&t| d.bag(t).contains(&v)).collect();
        if nodes.is_empty() {
            return fail(Condition::VertexConnectivity, format!("vertex {v} is in no bag"));
        }
        // a node set of a rooted tree is connected iff exactly one member's
        // parent lies outside it
        let tops = nodes
            .iter()
            .filter(|&&t| tree.parent(t).is_none_or(|p| !nodes.contains(&p)))
            .count();
        if tops != 1 {
            return fail(Condition::VertexConnectivity, format!("bags holding {v} are disconnected"));
        }
    }
    for (a, b) in g.edges() {
        if !(0..k).any(|t| d.bag(t).contains(&a) && d.bag(t).contains(&b)) {
            return fail(Condition::EdgeCoverage, format!("edge {a} {b}"));
        }
    }
    for t in 0..k {
        let bag = d.bag(t);
        let idx: Vec<usize> = match bag.iter().map(|&v| g.index_of(v)).collect::<Option<Vec<_>>>() {
            Some(i) => i,
            None => return fail(Condition::BagIsMaximalClique, format!("bag {t} has unknown vertices")),
        };
        if !g.is_clique_at(&idx) {
            return fail(Condition::BagIsMaximalClique, format!("bag {t} {bag:?} is not a clique"));
        }
        let extendable = (0..g.order())
            .any(|x| !idx.contains(&x) && idx.iter().all(|&y| g.adjacent_at(x, y)));
        if extendable {
            return fail(Condition::BagIsMaximalClique, format!("bag {t} {bag:?} is not maximal"));
        }
    }
    for c in maximal_cliques(g) {
        let count = (0..k).filter(|&t| d.bag(t) == c.as_slice()).count();
        if count != 1 {
            return fail(Condition::CliqueHasOneBag, format!("clique {c:?} is the bag of {count} nodes"));
        }
    }
    for t in 0..k {
        let mut cone = BTreeSet::new();
        for s in tree.subtree(t) {
            cone.extend(d.bag(s).iter().copied());
        }
        if cone.into_iter().collect::<Vec<_>>() != d.gamma(t) {
            return fail(Condition::Cone, format!("node {t}"));
        }
        if let Some(p) = tree.parent(t) {
            if sorted_intersection(d.bag(t), d.bag(p)) != d.sigma(t) {
                return fail(Condition::Separator, format!("node {t}"));
            }
        }
        if sorted_difference(d.gamma(t), d.sigma(t)) != d.alpha(t) {
            return fail(Condition::Separator, format!("alpha at node {t}"));
        }
        let s = d.sigma(t);
        if s.is_empty() || s.len() > 2 || sorted_difference(d.bag(t), s).is_empty() {
            return fail(Condition::SeparatorSize, format!("node {t} sigma {s:?}"));
        }
    }
    let root = tree.root();
    let kids = tree.children(root);
    if kids.len() != 1 {
        return fail(Condition::Root, format!("root has {} children", kids.len()));
    }
    let choices = sorted_difference(d.bag(root), d.bag(kids[0]));
    let rs = d.sigma(root);
    if rs.len() != choices.len().min(2) || rs.iter().any(|v| !choices.contains(v)) {
        return fail(Condition::Root, format!("root sigma {rs:?} not drawn from {choices:?}"));
    }

    if linegraph::is_line_graph(g) {
        for t in 0..k {
            let nb = tree.neighbours(t);
            let small = d.bag(t).len() == 3 && nb.len() <= 3;
            let disjoint = nb.iter().enumerate().all(|(i, &a)| {
                nb[i + 1..]
                    .iter()
                    .all(|&b| sorted_intersection(d.bag(a), d.bag(b)).is_empty())
            });
            if !small && !disjoint {
                return fail(Condition::NeighbourDichotomy, format!("node {t}"));
            }
            for u in t + 1..k {
                if sorted_intersection(d.bag(t), d.bag(u)).len() > 2 {
                    return fail(Condition::BagIntersection, format!("nodes {t} and {u}"));
                }
            }
        }
    }
    Ok(())
}
