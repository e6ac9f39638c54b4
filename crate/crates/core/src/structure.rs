//! Detectors for the graph classes the bounds are conditioned on.
//!
//! All vertex lists in serialized reports are 1-based, like the graph file
//! format.

use std::collections::VecDeque;

use serde::{Serialize, Serializer};

use crate::graph::Graph;

/// The tree obtained from a claw by subdividing two of its edges once:
/// center `x` adjacent to `a`, `b1`, `c1`, plus edges `b1b2` and `c1c2`.
///
/// Vertex order in witnesses is `[x, a, b1, b2, c1, c2]`.
pub const TSTAR_EDGES: [(usize, usize); 5] = [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5)];

pub fn tstar_pattern() -> Graph {
    Graph::from_edges(6, &TSTAR_EDGES).expect("pattern is simple")
}

/// A bipartition `(part_0, part_1)`; every edge joins the parts.
pub type Bipartition = (Vec<usize>, Vec<usize>);

fn bfs_colors(g: &Graph) -> (Vec<u8>, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    (color, parent, depth)
}

/// Breadth-first 2-colouring; `None` iff `g` has an odd cycle.
pub fn two_coloring(g: &Graph) -> Option<Bipartition> {
    let (color, _, _) = bfs_colors(g);
    if g.edges().any(|(a, b)| color[a] == color[b]) {
        return None;
    }
    let part0 = (0..g.n()).filter(|&v| color[v] == 0).collect();
    let part1 = (0..g.n()).filter(|&v| color[v] == 1).collect();
    Some((part0, part1))
}

/// An odd closed walk `v0 v1 ... v0` (first vertex repeated at the end),
/// or `None` when `g` is bipartite.
pub fn odd_closed_walk(g: &Graph) -> Option<Vec<usize>> {
    let (color, parent, depth) = bfs_colors(g);
    let (a, b) = g.edges().find(|&(a, b)| color[a] == color[b])?;
    let mut up_a = vec![a];
    let mut up_b = vec![b];
    let (mut x, mut y) = (a, b);
    while depth[x] > depth[y] {
        x = parent[x];
        up_a.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        up_b.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        up_a.push(x);
        up_b.push(y);
    }
    up_b.pop();
    up_b.reverse();
    let mut walk = up_a;
    walk.extend(up_b);
    walk.push(a);
    Some(walk)
}

/// `None` if claw-free, otherwise `[center, l1, l2, l3]` with the leaves
/// pairwise non-adjacent.
pub fn find_claw(g: &Graph) -> Option<[usize; 4]> {
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        if nb.len() < 3 {
            continue;
        }
        for (i, &p) in nb.iter().enumerate() {
            for (j, &q) in nb.iter().enumerate().skip(i + 1) {
                if g.has_edge(p, q) {
                    continue;
                }
                for &r in &nb[j + 1..] {
                    if !g.has_edge(p, r) && !g.has_edge(q, r) {
                        return Some([x, p, q, r]);
                    }
                }
            }
        }
    }
    None
}

pub fn is_claw_free(g: &Graph) -> (bool, Option<[usize; 4]>) {
    let w = find_claw(g);
    (w.is_none(), w)
}

/// Searches for an induced T*, center first.
///
/// For each center `x` of degree at least 3, picks an unordered pair
/// `{b1, c1}` and a third neighbour `a` (all pairwise non-adjacent), then
/// extends `b1` and `c1` by private neighbours `b2`, `c2` outside `N[x]`.
/// Returns `[x, a, b1, b2, c1, c2]`.
pub fn find_tstar(g: &Graph) -> Option<[usize; 6]> {
    for x in 0..g.n() {
        let nb = g.neighbors(x);
        if nb.len() < 3 {
            continue;
        }
        for (i, &b1) in nb.iter().enumerate() {
            for &c1 in &nb[i + 1..] {
                if g.has_edge(b1, c1) {
                    continue;
                }
                for &a in nb {
                    if a == b1 || a == c1 || g.has_edge(a, b1) || g.has_edge(a, c1) {
                        continue;
                    }
                    if let Some((b2, c2)) = extend_legs(g, x, a, b1, c1) {
                        return Some([x, a, b1, b2, c1, c2]);
                    }
                }
            }
        }
    }
    None
}

fn extend_legs(g: &Graph, x: usize, a: usize, b1: usize, c1: usize) -> Option<(usize, usize)> {
    let outside = |v: usize| v != x && !g.has_edge(x, v) && !g.has_edge(a, v) && v != a;
    for &b2 in g.neighbors(b1) {
        if !outside(b2) || g.has_edge(b2, c1) {
            continue;
        }
        for &c2 in g.neighbors(c1) {
            if c2 != b2 && outside(c2) && !g.has_edge(c2, b1) && !g.has_edge(c2, b2) {
                return Some((b2, c2));
            }
        }
    }
    None
}

pub fn is_tstar_free(g: &Graph) -> (bool, Option<[usize; 6]>) {
    let w = find_tstar(g);
    (w.is_none(), w)
}

/// Aggregated class predicates of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphClassReport {
    #[serde(serialize_with = "ser_bipartition")]
    pub bipartition: Option<Bipartition>,
    pub regular_degree: Option<usize>,
    pub max_degree: usize,
    pub min_degree: usize,
    pub claw_free: bool,
    #[serde(serialize_with = "ser_opt_vertices")]
    pub claw_witness: Option<[usize; 4]>,
    pub tstar_free: bool,
    #[serde(serialize_with = "ser_opt_vertices")]
    pub tstar_witness: Option<[usize; 6]>,
    pub component_orders: Vec<usize>,
    pub has_cubic_component: bool,
    /// Degrees `d` for which some component is `d`-regular, ascending.
    pub has_d_regular_component: Vec<usize>,
}

impl GraphClassReport {
    pub fn has_regular_component(&self, d: usize) -> bool {
        self.has_d_regular_component.contains(&d)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition.is_some()
    }
}

fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|v| v + 1).collect()
}

fn ser_bipartition<S: Serializer>(b: &Option<Bipartition>, s: S) -> Result<S::Ok, S::Error> {
    b.as_ref().map(|(p, q)| [one_based(p), one_based(q)]).serialize(s)
}

fn ser_opt_vertices<S: Serializer, const K: usize>(w: &Option<[usize; K]>, s: S) -> Result<S::Ok, S::Error> {
    w.as_ref().map(|w| one_based(w)).serialize(s)
}

/// Runs every detector.
pub fn classify(g: &Graph) -> GraphClassReport {
    let (claw_free, claw_witness) = is_claw_free(g);
    let (tstar_free, tstar_witness) = is_tstar_free(g);
    let mut component_orders = Vec::new();
    let mut regular = Vec::new();
    for (c, _) in g.components() {
        component_orders.push(c.n());
        if let Some(d) = c.regular_degree() {
            regular.push(d);
        }
    }
    regular.sort_unstable();
    regular.dedup();
    GraphClassReport {
        bipartition: two_coloring(g),
        regular_degree: g.regular_degree(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        claw_free,
        claw_witness,
        tstar_free,
        tstar_witness,
        component_orders,
        has_cubic_component: regular.contains(&3),
        has_d_regular_component: regular,
    }
}
