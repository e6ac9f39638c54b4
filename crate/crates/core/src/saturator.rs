//! Neighbourhood-saturating matchings.
//!
//! For a vertex `u`, a saturating matching `M` covers every neighbour of `u`,
//! misses `u`, and every edge of `M` has an endpoint in `N(u)`. Such an `M`
//! can be removed together with `u`: any maximal matching of the rest plus
//! `M` is maximal in the whole graph.
//!
//! Both constructions grow `M` one covered neighbour at a time using
//! alternating paths with one, two or three edges.

use thiserror::Error;

use crate::graph::Graph;
use crate::matching::{max_bipartite_matching, Matching};
use crate::structure::two_coloring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SaturatorError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The input is one of the graphs for which no saturating matching exists.
    #[error("excluded graph: {0}")]
    ExcludedGraph(String),
    /// No extension rule applied although the input satisfied the preconditions.
    #[error("no extension rule applies: {0}")]
    Stuck(String),
}

/// Snapshot of a partially built saturating matching.
///
/// `full` are the edges with both endpoints in `N(u)`, `half` those with
/// exactly one (stored as `(x, y)` with `x` in `N(u)`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturatorState {
    pub full: Vec<(usize, usize)>,
    pub half: Vec<(usize, usize)>,
    /// Neighbours of `u` not yet covered.
    pub uncovered: Vec<usize>,
}

impl SaturatorState {
    pub fn k(&self) -> usize {
        self.full.len()
    }

    pub fn l(&self) -> usize {
        self.half.len()
    }

    /// Checks the state invariants against `g` and `u`.
    pub fn check(&self, g: &Graph, u: usize) -> Result<(), String> {
        let all: Vec<(usize, usize)> = self.full.iter().chain(&self.half).copied().collect();
        let m = Matching::new(g, &all).map_err(|e| e.to_string())?;
        if m.covers(u) {
            return Err(format!("matching covers the center {u}"));
        }
        for &(a, b) in &all {
            if !g.has_edge(u, a) && !g.has_edge(u, b) {
                return Err(format!("edge {a}-{b} misses N({u})"));
            }
        }
        if self.uncovered.len() + 2 * self.k() + self.l() != g.degree(u) {
            return Err("uncovered count does not match deg(u) - 2k - l".into());
        }
        Ok(())
    }
}

/// Checks the three saturation properties of `m` around `u`.
pub fn check_saturating(g: &Graph, u: usize, m: &Matching) -> Result<(), String> {
    let m = Matching::new(g, m.edges()).map_err(|e| e.to_string())?;
    if m.covers(u) {
        return Err(format!("{u} is covered"));
    }
    let covered = m.covered(g.n());
    if let Some(&w) = g.neighbors(u).iter().find(|&&w| !covered[w]) {
        return Err(format!("neighbour {w} of {u} is uncovered"));
    }
    if let Some(&(a, b)) = m.edges().iter().find(|&&(a, b)| !g.has_edge(u, a) && !g.has_edge(u, b)) {
        return Err(format!("edge {a}-{b} has no endpoint in N({u})"));
    }
    Ok(())
}

struct Builder<'a> {
    g: &'a Graph,
    u: usize,
    in_nbr: Vec<bool>,
    mate: Vec<Option<usize>>,
    rounds: Vec<SaturatorState>,
}

impl<'a> Builder<'a> {
    fn new(g: &'a Graph, u: usize) -> Self {
        let mut in_nbr = vec![false; g.n()];
        for &w in g.neighbors(u) {
            in_nbr[w] = true;
        }
        Builder { g, u, in_nbr, mate: vec![None; g.n()], rounds: Vec::new() }
    }

    fn add(&mut self, a: usize, b: usize) {
        debug_assert!(self.g.has_edge(a, b) && self.mate[a].is_none() && self.mate[b].is_none());
        self.mate[a] = Some(b);
        self.mate[b] = Some(a);
    }

    fn remove(&mut self, a: usize, b: usize) {
        debug_assert_eq!(self.mate[a], Some(b));
        self.mate[a] = None;
        self.mate[b] = None;
    }

    /// Not in `N[u]` and not covered.
    fn is_outside(&self, z: usize) -> bool {
        z != self.u && !self.in_nbr[z] && self.mate[z].is_none()
    }

    fn uncovered_nbrs(&self) -> Vec<usize> {
        self.g.neighbors(self.u).iter().copied().filter(|&w| self.mate[w].is_none()).collect()
    }

    /// Partner of `x` if `x` is the inner end of a half-in edge.
    fn half_partner(&self, x: usize) -> Option<usize> {
        self.mate[x].filter(|&y| self.in_nbr[x] && !self.in_nbr[y])
    }

    /// Partner of `x` if `x` lies on a full-in edge.
    fn full_partner(&self, x: usize) -> Option<usize> {
        self.mate[x].filter(|&y| self.in_nbr[x] && self.in_nbr[y])
    }

    fn state(&self) -> SaturatorState {
        let mut full = Vec::new();
        let mut half = Vec::new();
        for &x in self.g.neighbors(self.u) {
            if let Some(y) = self.mate[x] {
                if self.in_nbr[y] {
                    if x < y {
                        full.push((x, y));
                    }
                } else {
                    half.push((x, y));
                }
            }
        }
        SaturatorState { full, half, uncovered: self.uncovered_nbrs() }
    }

    fn record(&mut self) {
        let s = self.state();
        debug_assert_eq!(s.check(self.g, self.u), Ok(()));
        self.rounds.push(s);
    }

    /// Tries the generic extension rules on the uncovered set `free` in
    /// priority order. Returns true if `M` changed.
    fn extend(&mut self, free: &[usize]) -> bool {
        let g = self.g;
        // edge inside the free set
        for (i, &a) in free.iter().enumerate() {
            if let Some(&b) = free[i + 1..].iter().find(|&&b| g.has_edge(a, b)) {
                self.add(a, b);
                return true;
            }
        }
        // edge to an untouched vertex outside N[u]
        for &w in free {
            if let Some(&z) = g.neighbors(w).iter().find(|&&z| self.is_outside(z)) {
                self.add(w, z);
                return true;
            }
        }
        // swap a half-in edge x y for w x
        for &w in free {
            if let Some(&x) = g.neighbors(w).iter().find(|&&x| self.half_partner(x).is_some()) {
                let y = self.mate[x].expect("half-in partner");
                self.remove(x, y);
                self.add(w, x);
                return true;
            }
        }
        // augment along w1 p q w2 for a full-in edge p q
        for (i, &w1) in free.iter().enumerate() {
            for &w2 in &free[i + 1..] {
                for &p in g.neighbors(w1) {
                    let Some(q) = self.full_partner(p) else { continue };
                    if g.has_edge(q, w2) {
                        self.remove(p, q);
                        self.add(w1, p);
                        self.add(q, w2);
                        return true;
                    }
                }
            }
        }
        false
    }

    fn finish(self) -> (Matching, Vec<SaturatorState>) {
        let edges = (0..self.g.n())
            .filter_map(|a| self.mate[a].filter(|&b| a < b).map(|b| (a, b)))
            .collect();
        (Matching::from_edges_unchecked(edges), self.rounds)
    }
}

/// Saturating matching around a minimum-degree vertex `u` that has a
/// neighbour `v` of larger degree. `v` is only used in the final round.
pub fn lemma1_saturate(g: &Graph, u: usize, v: usize) -> Result<Matching, SaturatorError> {
    lemma1_saturate_traced(g, u, v).map(|(m, _)| m)
}

/// As [`lemma1_saturate`], also returning the state after every round.
pub fn lemma1_saturate_traced(
    g: &Graph,
    u: usize,
    v: usize,
) -> Result<(Matching, Vec<SaturatorState>), SaturatorError> {
    if u >= g.n() || v >= g.n() {
        return Err(SaturatorError::Precondition("vertex out of range".into()));
    }
    if g.degree(u) != g.min_degree() {
        return Err(SaturatorError::Precondition(format!("{u} does not have minimum degree")));
    }
    if !g.has_edge(u, v) {
        return Err(SaturatorError::Precondition(format!("{v} is not a neighbour of {u}")));
    }
    if g.degree(v) <= g.degree(u) {
        return Err(SaturatorError::Precondition(format!("deg({v}) is not larger than deg({u})")));
    }

    let mut b = Builder::new(g, u);
    b.record();
    for _ in 0..=g.degree(u) {
        let free = b.uncovered_nbrs();
        if free.is_empty() {
            let out = b.finish();
            debug_assert_eq!(check_saturating(g, u, &out.0), Ok(()));
            return Ok(out);
        }
        let reserved_free: Vec<usize> = free.iter().copied().filter(|&w| w != v).collect();
        if b.extend(&reserved_free) {
            b.record();
            continue;
        }
        match reserved_free.as_slice() {
            [] => {
                if let Some(&z) = g.neighbors(v).iter().find(|&&z| b.is_outside(z)) {
                    b.add(v, z);
                } else if let Some(&x) = g.neighbors(v).iter().find(|&&x| b.half_partner(x).is_some()) {
                    let y = b.mate[x].expect("half-in partner");
                    b.remove(x, y);
                    b.add(v, x);
                } else {
                    return Err(SaturatorError::Stuck(format!("{v} has degree at most deg({u})")));
                }
            }
            [w] if g.has_edge(v, *w) => b.add(v, *w),
            _ => {
                return Err(SaturatorError::Stuck(format!(
                    "uncovered neighbours {reserved_free:?} of {u} all have degree below deg({u})"
                )))
            }
        }
        b.record();
    }
    Err(SaturatorError::Stuck("round limit exceeded".into()))
}

/// Saturating matching around any vertex `u` of a connected `d`-regular
/// graph, `d >= 2`, other than `K_{d,d}` and, for odd `d`, `K_{d+1}`.
pub fn lemma2_saturate(g: &Graph, u: usize) -> Result<Matching, SaturatorError> {
    let d = g
        .regular_degree()
        .ok_or_else(|| SaturatorError::Precondition("graph is not regular".into()))?;
    if d < 2 {
        return Err(SaturatorError::Precondition(format!("degree {d} < 2")));
    }
    if u >= g.n() {
        return Err(SaturatorError::Precondition("vertex out of range".into()));
    }
    if !g.is_connected() {
        return Err(SaturatorError::Precondition("graph is not connected".into()));
    }
    // a connected d-regular graph on 2d vertices is K_{d,d} iff bipartite,
    // and on d + 1 vertices it is complete
    if g.n() == 2 * d && two_coloring(g).is_some() {
        return Err(SaturatorError::ExcludedGraph(format!("K_{{{d},{d}}}")));
    }
    if d % 2 == 1 && g.n() == d + 1 {
        return Err(SaturatorError::ExcludedGraph(format!("K_{}", d + 1)));
    }

    let nbrs = g.neighbors(u);
    let first_inner = nbrs
        .iter()
        .enumerate()
        .find_map(|(i, &a)| nbrs[i + 1..].iter().find(|&&b| g.has_edge(a, b)).map(|&b| (a, b)));

    let m = match first_inner {
        None => saturate_independent(g, u)?,
        Some((a, b)) => saturate_with_inner_edge(g, u, a, b)?,
    };
    debug_assert_eq!(check_saturating(g, u, &m), Ok(()));
    Ok(m)
}

/// `N(u)` independent: maximum matching between `N(u)` and the vertices at
/// distance two.
fn saturate_independent(g: &Graph, u: usize) -> Result<Matching, SaturatorError> {
    let dist = g.distances_from(u);
    let second: Vec<usize> = (0..g.n()).filter(|&w| dist[w] == Some(2)).collect();
    let m = max_bipartite_matching(g, g.neighbors(u), &second)
        .map_err(|e| SaturatorError::Stuck(e.to_string()))?;
    if m.len() == g.degree(u) {
        Ok(m)
    } else {
        Err(SaturatorError::ExcludedGraph("neighbourhood cannot be saturated (K_{d,d})".into()))
    }
}

fn saturate_with_inner_edge(g: &Graph, u: usize, a: usize, b: usize) -> Result<Matching, SaturatorError> {
    let mut bld = Builder::new(g, u);
    bld.add(a, b);
    bld.record();
    for _ in 0..=g.degree(u) {
        let free = bld.uncovered_nbrs();
        match free.as_slice() {
            [] => return Ok(bld.finish().0),
            [v] => {
                let v = *v;
                if !bld.extend(&free) && !finish_last(&mut bld, v) {
                    return Err(SaturatorError::ExcludedGraph(format!("K_{}", g.degree(u) + 1)));
                }
            }
            _ => {
                if !bld.extend(&free) {
                    return Err(SaturatorError::Stuck(format!("uncovered neighbours {free:?}")));
                }
            }
        }
        bld.record();
    }
    Err(SaturatorError::Stuck("round limit exceeded".into()))
}

/// Covers the last neighbour `v` by re-routing through a full-in edge.
fn finish_last(bld: &mut Builder<'_>, v: usize) -> bool {
    let g = bld.g;
    // half-in x_i y_i and full-in p q with x_i ~ p and q ~ v:
    // drop both, add x_i p and q v
    for &x in g.neighbors(bld.u) {
        let Some(y) = bld.half_partner(x) else { continue };
        for &p in g.neighbors(x) {
            let Some(q) = bld.full_partner(p) else { continue };
            if g.has_edge(q, v) {
                bld.remove(x, y);
                bld.remove(p, q);
                bld.add(x, p);
                bld.add(q, v);
                return true;
            }
        }
    }
    // full-in p q with p ~ z outside N[u] and q ~ v: drop p q, add p z and q v
    for &p in g.neighbors(bld.u) {
        let Some(q) = bld.full_partner(p) else { continue };
        if !g.has_edge(q, v) {
            continue;
        }
        if let Some(&z) = g.neighbors(p).iter().find(|&&z| bld.is_outside(z)) {
            bld.remove(p, q);
            bld.add(p, z);
            bld.add(q, v);
            return true;
        }
    }
    false
}
