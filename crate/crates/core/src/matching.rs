//! Matchings, maximality, greedy extension, bipartite maximum matching and
//! exact minimum maximal matching.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("{0}-{1} is not an edge of the host graph")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is covered by two matching edges")]
    Overlap(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("naive enumeration limited to {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// A set of pairwise vertex-disjoint edges of some host graph.
///
/// Edges are stored normalised (`u < v`) and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching::default()
    }

    /// Validates `edges` against `g`.
    pub fn new(g: &Graph, edges: &[(usize, usize)]) -> Result<Self, MatchingError> {
        let mut covered = vec![false; g.n()];
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if !g.has_edge(a, b) {
                return Err(MatchingError::NotAnEdge(a, b));
            }
            for x in [a, b] {
                if covered[x] {
                    return Err(MatchingError::Overlap(x));
                }
                covered[x] = true;
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        Ok(Matching { edges: out })
    }

    /// Builds a matching without checking it against a graph. Callers
    /// guarantee disjointness.
    pub(crate) fn from_edges_unchecked(mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        debug_assert!({
            let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.windows(2).all(|w| w[0] != w[1])
        });
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Covered-vertex indicator for a host of order `n`.
    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut c = vec![false; n];
        for &(a, b) in &self.edges {
            c[a] = true;
            c[b] = true;
        }
        c
    }

    /// `V(M)`, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Union with a vertex-disjoint matching.
    pub fn union(&self, other: &Matching) -> Matching {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Matching::from_edges_unchecked(edges)
    }

    /// Renames endpoints through `f` (e.g. child graph index -> parent index).
    pub fn map_vertices(&self, f: impl Fn(usize) -> usize) -> Matching {
        Matching::from_edges_unchecked(self.edges.iter().map(|&(a, b)| (f(a), f(b))).collect())
    }

    pub fn to_one_based(&self) -> Vec<[usize; 2]> {
        self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
    }

    /// Parses `m <u> <v>` lines (1-based). Lines starting with `c` are comments.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, MatchingError> {
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            let err = |msg: String| MatchingError::Parse { line, msg };
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 3 || tokens[0] != "m" {
                return Err(err("expected `m <u> <v>`".into()));
            }
            let mut ends = [0usize; 2];
            for (slot, tok) in ends.iter_mut().zip(&tokens[1..]) {
                let x: usize = tok.parse().map_err(|_| err(format!("bad vertex {tok:?}")))?;
                if x == 0 || x > g.n() {
                    return Err(err(format!("vertex {x} out of range")));
                }
                *slot = x - 1;
            }
            edges.push((ends[0], ends[1]));
        }
        Matching::new(g, &edges)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "m {} {}", a + 1, b + 1);
        }
        out
    }
}

fn check_in(g: &Graph, m: &Matching) -> Result<Vec<bool>, MatchingError> {
    let mut covered = vec![false; g.n()];
    for &(a, b) in m.edges() {
        if !g.has_edge(a, b) {
            return Err(MatchingError::NotAnEdge(a, b));
        }
        for x in [a, b] {
            if covered[x] {
                return Err(MatchingError::Overlap(x));
            }
            covered[x] = true;
        }
    }
    Ok(covered)
}

/// First edge (lexicographically) with both endpoints uncovered, if any.
pub fn uncovered_edge(g: &Graph, m: &Matching) -> Result<Option<(usize, usize)>, MatchingError> {
    let covered = check_in(g, m)?;
    Ok(g.edges().find(|&(a, b)| !covered[a] && !covered[b]))
}

/// True iff no edge of `g` has both endpoints outside `V(M)`.
pub fn is_maximal(g: &Graph, m: &Matching) -> Result<bool, MatchingError> {
    Ok(uncovered_edge(g, m)?.is_none())
}

/// Extends `seed` to a maximal matching by scanning edges in lexicographic
/// order. With `avoid = Some(u)`, all neighbours of `u` must already be
/// covered by `seed`, and `u` stays uncovered.
pub fn greedy_maximal(g: &Graph, seed: &Matching, avoid: Option<usize>) -> Result<Matching, MatchingError> {
    let mut covered = check_in(g, seed)?;
    if let Some(u) = avoid {
        if u >= g.n() || covered[u] {
            return Err(MatchingError::Precondition(format!("avoided vertex {u} is covered by the seed")));
        }
        if let Some(&w) = g.neighbors(u).iter().find(|&&w| !covered[w]) {
            return Err(MatchingError::Precondition(format!(
                "neighbour {w} of avoided vertex {u} is not covered by the seed"
            )));
        }
    }
    let mut edges = seed.edges().to_vec();
    for (a, b) in g.edges() {
        if !covered[a] && !covered[b] {
            covered[a] = true;
            covered[b] = true;
            edges.push((a, b));
        }
    }
    Ok(Matching::from_edges_unchecked(edges))
}

/// Maximum matching among the edges of `g` joining `part_a` to `part_b`
/// (augmenting paths from each vertex of `part_a` in increasing order).
pub fn max_bipartite_matching(g: &Graph, part_a: &[usize], part_b: &[usize]) -> Result<Matching, MatchingError> {
    let mut side = vec![0u8; g.n()];
    for &a in part_a {
        side[a] = 1;
    }
    for &b in part_b {
        if side[b] == 1 {
            return Err(MatchingError::Precondition(format!("vertex {b} lies in both parts")));
        }
        side[b] = 2;
    }
    let mut a_sorted = part_a.to_vec();
    a_sorted.sort_unstable();
    a_sorted.dedup();

    let mut mate = vec![usize::MAX; g.n()];
    for &a in &a_sorted {
        let mut visited = vec![false; g.n()];
        augment(g, &side, a, &mut mate, &mut visited);
    }
    let edges = a_sorted
        .iter()
        .filter(|&&a| mate[a] != usize::MAX)
        .map(|&a| (a, mate[a]))
        .collect();
    Ok(Matching::from_edges_unchecked(edges))
}

fn augment(g: &Graph, side: &[u8], a: usize, mate: &mut [usize], visited: &mut [bool]) -> bool {
    for &b in g.neighbors(a) {
        if side[b] != 2 || visited[b] {
            continue;
        }
        visited[b] = true;
        if mate[b] == usize::MAX || augment(g, side, mate[b], mate, visited) {
            mate[a] = b;
            mate[b] = a;
            return true;
        }
    }
    false
}

/// Outcome of [`exact_min_maximal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// Edge domination number, or the best size found if the budget ran out.
    pub gamma_e: usize,
    pub witness: Matching,
    pub nodes_explored: u64,
    pub budget_hit: bool,
}

/// Branch and bound for a minimum maximal matching.
///
/// Every maximal matching contains an edge incident to each edge whose
/// endpoints are both uncovered; the solver takes the lowest such edge and
/// branches on the edges that could dominate it. Branch `i` forbids the
/// candidates tried before it, so each matching is reached at most once.
/// `budget` limits the number of search nodes.
pub fn exact_min_maximal(g: &Graph, budget: u64) -> ExactResult {
    let incumbent = greedy_maximal(g, &Matching::empty(), None).expect("empty seed is valid");
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut edge_ids: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    for (id, &(a, b)) in edges.iter().enumerate() {
        edge_ids[a].push((b, id));
        edge_ids[b].push((a, id));
    }
    let mut search = Search {
        g,
        edges,
        edge_ids,
        covered: vec![false; g.n()],
        forbidden: vec![false; g.m()],
        chosen: Vec::new(),
        best: incumbent.edges().to_vec(),
        nodes: 0,
        budget,
        budget_hit: false,
    };
    search.run();
    ExactResult {
        gamma_e: search.best.len(),
        witness: Matching::from_edges_unchecked(search.best),
        nodes_explored: search.nodes,
        budget_hit: search.budget_hit,
    }
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<(usize, usize)>,
    edge_ids: Vec<Vec<(usize, usize)>>,
    covered: Vec<bool>,
    forbidden: Vec<bool>,
    chosen: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
    budget_hit: bool,
}

impl Search<'_> {
    fn run(&mut self) {
        if self.budget_hit {
            return;
        }
        if self.nodes >= self.budget {
            self.budget_hit = true;
            return;
        }
        self.nodes += 1;

        let Some(target) = self.edges.iter().position(|&(a, b)| !self.covered[a] && !self.covered[b]) else {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        };
        if self.chosen.len() + self.residual_lower_bound() >= self.best.len() {
            return;
        }

        let (a, b) = self.edges[target];
        let mut candidates: Vec<usize> = self.edge_ids[a]
            .iter()
            .chain(&self.edge_ids[b])
            .filter(|&&(other, id)| !self.covered[other] && !self.forbidden[id])
            .map(|&(_, id)| id)
            .collect();
        candidates.sort_unstable();
        candidates.dedup();

        for &id in &candidates {
            let (x, y) = self.edges[id];
            self.covered[x] = true;
            self.covered[y] = true;
            self.chosen.push((x, y));
            self.run();
            self.chosen.pop();
            self.covered[x] = false;
            self.covered[y] = false;
            if self.budget_hit {
                break;
            }
            self.forbidden[id] = true;
        }
        for &id in &candidates {
            self.forbidden[id] = false;
        }
    }

    /// A new matching edge `xy` dominates at most `d(x) + d(y) - 1` residual
    /// edges, so `k` edges dominate at most the sum of the `2k` largest
    /// residual degrees minus `k`.
    fn residual_lower_bound(&self) -> usize {
        let mut degrees: Vec<usize> = (0..self.g.n())
            .filter(|&v| !self.covered[v])
            .map(|v| self.g.neighbors(v).iter().filter(|&&w| !self.covered[w]).count())
            .filter(|&d| d > 0)
            .collect();
        let residual_edges = degrees.iter().sum::<usize>() / 2;
        if residual_edges == 0 {
            return 0;
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut reach = 0usize;
        for k in 1.. {
            reach += degrees.get(2 * k - 2).copied().unwrap_or(0);
            reach += degrees.get(2 * k - 1).copied().unwrap_or(0);
            if reach.saturating_sub(k) >= residual_edges || 2 * k >= degrees.len() {
                return k;
            }
        }
        unreachable!()
    }
}

/// Largest order accepted by [`naive_min_maximal`].
pub const NAIVE_LIMIT: usize = 12;

/// Minimum size of a maximal matching by enumerating every matching.
pub fn naive_min_maximal(g: &Graph) -> Result<usize, MatchingError> {
    if g.n() > NAIVE_LIMIT {
        return Err(MatchingError::TooLarge { n: g.n(), limit: NAIVE_LIMIT });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut covered = vec![false; g.n()];
    let mut best = usize::MAX;
    enumerate(&edges, 0, &mut covered, 0, &mut best);
    Ok(best)
}

fn enumerate(edges: &[(usize, usize)], next: usize, covered: &mut [bool], size: usize, best: &mut usize) {
    if next == edges.len() {
        let maximal = edges.iter().all(|&(a, b)| covered[a] || covered[b]);
        if maximal && size < *best {
            *best = size;
        }
        return;
    }
    let (a, b) = edges[next];
    if !covered[a] && !covered[b] {
        covered[a] = true;
        covered[b] = true;
        enumerate(edges, next + 1, covered, size + 1, best);
        covered[a] = false;
        covered[b] = false;
    }
    enumerate(edges, next + 1, covered, size, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn c4() -> Graph {
        g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
    }

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        g(n, &e)
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let e: Vec<_> = (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect();
        g(a + b, &e)
    }

    #[test]
    fn maximality_examples() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let m = Matching::new(&p3, &[(0, 1)]).unwrap();
        assert!(is_maximal(&p3, &m).unwrap());

        let m = Matching::new(&c4(), &[(0, 1)]).unwrap();
        assert!(!is_maximal(&c4(), &m).unwrap());
        assert_eq!(uncovered_edge(&c4(), &m).unwrap(), Some((2, 3)));
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(Matching::new(&p3, &[(0, 2)]), Err(MatchingError::NotAnEdge(0, 2)));
        assert_eq!(Matching::new(&p3, &[(0, 1), (1, 2)]), Err(MatchingError::Overlap(1)));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_maximal(&c4(), &Matching::empty(), None).unwrap().len(), 2);
        assert_eq!(greedy_maximal(&complete_bipartite(1, 3), &Matching::empty(), None).unwrap().len(), 1);
    }

    #[test]
    fn greedy_avoid_preconditions() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let seed = Matching::new(&c5, &[(1, 2), (3, 4)]).unwrap();
        let out = greedy_maximal(&c5, &seed, Some(0)).unwrap();
        assert!(!out.covers(0));
        assert!(is_maximal(&c5, &out).unwrap());

        let partial = Matching::new(&c5, &[(1, 2)]).unwrap();
        assert!(matches!(greedy_maximal(&c5, &partial, Some(0)), Err(MatchingError::Precondition(_))));
        assert!(matches!(greedy_maximal(&c5, &partial, Some(1)), Err(MatchingError::Precondition(_))));
    }

    #[test]
    fn bipartite_matching_examples() {
        let k23 = complete_bipartite(2, 3);
        assert_eq!(max_bipartite_matching(&k23, &[0, 1], &[2, 3, 4]).unwrap().len(), 2);
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]);
        assert_eq!(max_bipartite_matching(&c6, &[0, 2, 4], &[1, 3, 5]).unwrap().len(), 3);
        assert!(max_bipartite_matching(&c6, &[0, 1], &[1, 2]).is_err());
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(exact_min_maximal(&c4(), u64::MAX).gamma_e, 2);
        assert_eq!(exact_min_maximal(&complete_bipartite(3, 3), u64::MAX).gamma_e, 3);
        let p4 = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let r = exact_min_maximal(&p4, u64::MAX);
        assert_eq!(r.gamma_e, 1);
        assert_eq!(r.witness.edges(), &[(1, 2)]);
        assert!(!r.budget_hit);
    }

    #[test]
    fn exact_reports_budget_exhaustion() {
        let r = exact_min_maximal(&complete(10), 3);
        assert!(r.budget_hit);
        assert!(is_maximal(&complete(10), &r.witness).unwrap());
        assert_eq!(r.gamma_e, r.witness.len());
    }

    #[test]
    fn naive_examples() {
        assert_eq!(naive_min_maximal(&complete(4)).unwrap(), 2);
        assert_eq!(naive_min_maximal(&complete_bipartite(2, 3)).unwrap(), 2);
        assert_eq!(naive_min_maximal(&Graph::empty(3)).unwrap(), 0);
        assert!(matches!(naive_min_maximal(&Graph::empty(13)), Err(MatchingError::TooLarge { .. })));
    }

    #[test]
    fn matching_file_round_trip() {
        let k33 = complete_bipartite(3, 3);
        let m = Matching::new(&k33, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(m.serialize(), "m 1 4\nm 2 5\nm 3 6\n");
        assert_eq!(Matching::parse(&k33, &m.serialize()).unwrap(), m);
        assert!(matches!(Matching::parse(&k33, "m 1\n"), Err(MatchingError::Parse { line: 1, .. })));
        assert!(matches!(Matching::parse(&k33, "m 1 2\n"), Err(MatchingError::NotAnEdge(0, 1))));
    }
}
