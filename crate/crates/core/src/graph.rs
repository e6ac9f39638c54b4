//! Immutable simple undirected graphs with sorted adjacency, vertex deletion,
//! connected components and the line-oriented `p edge` text format.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("declared {declared} edges but found {found}")]
    CountMismatch { declared: usize, found: usize },
}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency lists are strictly increasing, so equality of two `Graph`
/// values is equality of labelled graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

/// Relates the vertices of a derived graph to those of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    forward: BTreeMap<usize, usize>,
    inverse: Vec<usize>,
}

impl VertexMap {
    fn from_inverse(inverse: Vec<usize>) -> Self {
        let forward = inverse.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        VertexMap { forward, inverse }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_inverse((0..n).collect())
    }

    /// New index of an original vertex, if it survived.
    pub fn to_new(&self, original: usize) -> Option<usize> {
        self.forward.get(&original).copied()
    }

    /// Original index of a vertex of the derived graph.
    pub fn to_original(&self, new: usize) -> usize {
        self.inverse[new]
    }

    pub fn originals(&self) -> &[usize] {
        &self.inverse
    }

    pub fn len(&self) -> usize {
        self.inverse.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inverse.is_empty()
    }

    /// Composes `self` (parent -> child) with `child_map` (child -> grandchild)
    /// into a map parent -> grandchild.
    pub fn compose(&self, child_map: &VertexMap) -> VertexMap {
        Self::from_inverse(child_map.inverse.iter().map(|&c| self.inverse[c]).collect())
    }
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let g = Graph { adj, m: edges.len() };
        g.debug_check();
        Ok(g)
    }

    fn from_sorted_adj(adj: Vec<Vec<usize>>) -> Self {
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let g = Graph { adj, m };
        g.debug_check();
        g
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let mut total = 0;
            for (u, list) in self.adj.iter().enumerate() {
                total += list.len();
                debug_assert!(list.windows(2).all(|w| w[0] < w[1]), "adjacency of {u} not strictly increasing");
                for &v in list {
                    debug_assert!(v != u, "self-loop at {u}");
                    debug_assert!(self.adj[v].binary_search(&u).is_ok(), "asymmetric edge {u}-{v}");
                }
            }
            debug_assert_eq!(total, 2 * self.m);
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// `Some(d)` if every vertex has degree `d`. The null graph is not regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Number of edges with at least one endpoint in `set`.
    pub fn edges_touching(&self, set: &[usize]) -> usize {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut count = 0;
        for &u in set {
            for &w in &self.adj[u] {
                // edges with both ends inside are seen twice
                if !inside[w] || u < w {
                    count += 1;
                }
            }
        }
        count
    }

    /// Induced subgraph on the complement of `removed`.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            if v >= self.n() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
            }
            keep[v] = false;
        }
        let survivors: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        Ok(self.induced_on_sorted(survivors))
    }

    /// Induced subgraph on `vertices` (any order, duplicates ignored).
    pub fn induced(&self, vertices: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.last().filter(|&&v| v >= self.n()) {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() });
        }
        Ok(self.induced_on_sorted(sorted))
    }

    fn induced_on_sorted(&self, survivors: Vec<usize>) -> (Graph, VertexMap) {
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in survivors.iter().enumerate() {
            index[old] = new;
        }
        let adj = survivors
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect()
            })
            .collect();
        (Graph::from_sorted_adj(adj), VertexMap::from_inverse(survivors))
    }

    /// Connected components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<(Graph, VertexMap)> {
        self.component_vertex_sets()
            .into_iter()
            .map(|set| self.induced_on_sorted(set))
            .collect()
    }

    /// Vertex sets (sorted) of the connected components, ordered by smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut set = Vec::new();
            while let Some(u) = queue.pop_front() {
                set.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            set.sort_unstable();
            out.push(set);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.component_vertex_sets().len() == 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        Graph::from_sorted_adj(adj)
    }

    /// Breadth-first distances from `source` (`None` when unreachable).
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Parses the `p edge <n> <m>` / `e <u> <v>` format (1-based vertices).
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            let err = |msg: &str| GraphError::Parse { line, msg: msg.to_string() };
            let mut tokens = trimmed.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(err("second problem line"));
                    }
                    if tokens.next() != Some("edge") {
                        return Err(err("expected `p edge <n> <m>`"));
                    }
                    let n = parse_count(tokens.next(), line)?;
                    let m = parse_count(tokens.next(), line)?;
                    if tokens.next().is_some() {
                        return Err(err("trailing tokens on problem line"));
                    }
                    header = Some((n, m));
                }
                Some("e") => {
                    let (n, _) = header.ok_or_else(|| err("edge line before problem line"))?;
                    let u = parse_count(tokens.next(), line)?;
                    let v = parse_count(tokens.next(), line)?;
                    if tokens.next().is_some() {
                        return Err(err("trailing tokens on edge line"));
                    }
                    for x in [u, v] {
                        if x == 0 || x > n {
                            return Err(GraphError::VertexOutOfRange { vertex: x, n });
                        }
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => return Err(err("unrecognised line")),
            }
        }
        let (n, m) = header.ok_or(GraphError::Parse { line: 0, msg: "missing problem line".into() })?;
        if edges.len() != m {
            return Err(GraphError::CountMismatch { declared: m, found: edges.len() });
        }
        Graph::from_edges(n, &edges)
    }

    /// Canonical text form: problem line then edges in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "p edge {} {}", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
        out
    }
}

fn parse_count(token: Option<&str>, line: usize) -> Result<usize, GraphError> {
    let token = token.ok_or(GraphError::Parse { line, msg: "missing number".into() })?;
    token
        .parse()
        .map_err(|_| GraphError::Parse { line, msg: format!("not a non-negative integer: {token:?}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn parses_path_on_three_vertices() {
        let g = Graph::parse("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_malformed_documents() {
        assert_eq!(Graph::parse("p edge 2 1\ne 1 1\n"), Err(GraphError::SelfLoop(0)));
        assert!(matches!(Graph::parse("p edge 2 1\ne 1 3\n"), Err(GraphError::VertexOutOfRange { vertex: 3, .. })));
        assert!(matches!(Graph::parse("p edge 2 2\ne 1 2\ne 2 1\n"), Err(GraphError::DuplicateEdge(0, 1))));
        assert!(matches!(Graph::parse("p edge 3 2\ne 1 2\n"), Err(GraphError::CountMismatch { declared: 2, found: 1 })));
        assert!(matches!(Graph::parse("p edge 3 1\nx 1 2\n"), Err(GraphError::Parse { line: 2, .. })));
        assert!(matches!(Graph::parse("e 1 2\n"), Err(GraphError::Parse { .. })));
        assert!(matches!(Graph::parse("c only a comment\n"), Err(GraphError::Parse { .. })));
    }

    #[test]
    fn comments_are_skipped_and_output_is_canonical() {
        let g = Graph::parse("c hello\np edge 3 2\ne 3 2\nc mid\ne 2 1\n").unwrap();
        assert_eq!(g.serialize(), "p edge 3 2\ne 1 2\ne 2 3\n");
    }

    #[test]
    fn deleting_a_vertex_of_c4_leaves_p3() {
        let (h, map) = cycle(4).delete_vertices(&[0]).unwrap();
        assert_eq!(h.n(), 3);
        assert_eq!(h.m(), 2);
        assert_eq!(h.max_degree(), 2);
        assert_eq!(map.originals(), &[1, 2, 3]);
        assert_eq!(map.to_new(0), None);
        assert_eq!(map.to_new(2), Some(1));
    }

    #[test]
    fn deleting_an_edge_of_k33_leaves_k22() {
        let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let k33 = Graph::from_edges(6, &edges).unwrap();
        let (h, _) = k33.delete_vertices(&[0, 3]).unwrap();
        assert_eq!(k33.edges_touching(&[0, 3]), 3 + 3 - 1);
        assert_eq!(h.m(), 4);
        assert_eq!(h.regular_degree(), Some(2));
        assert!(matches!(k33.delete_vertices(&[6]), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn components_of_c4_plus_p3() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let g = cycle(4).disjoint_union(&p3);
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0.n(), 4);
        assert_eq!(comps[1].0.n(), 3);
        assert_eq!(comps[1].1.originals(), &[4, 5, 6]);
        assert!(!g.is_connected());
        assert!(cycle(5).is_connected());
    }

    #[test]
    fn vertex_maps_compose() {
        let g = cycle(6);
        let (h, first) = g.delete_vertices(&[1]).unwrap();
        let (_, second) = h.delete_vertices(&[0, 2]).unwrap();
        let total = first.compose(&second);
        assert_eq!(total.originals(), &[2, 4, 5]);
    }
}
