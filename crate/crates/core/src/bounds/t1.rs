//! Maximal matchings of size at most `2n/3 - m/6` in subcubic bipartite
//! T*-free graphs without cubic components, and the `5n/12 + 1/2`
//! construction for connected cubic ones.
//!
//! Each step deletes a vertex set `S` and commits a matching `M_S` inside
//! `S` such that every vertex of `S` left uncovered has all its neighbours
//! in `V(M_S)`. Any maximal matching of the rest plus `M_S` is then maximal,
//! and the step is charged against the bound through
//! `|M_S| <= 2|S|/3 - e(S)/6`, where `e(S)` counts the edges touching `S`.

use num_rational::Ratio;

use crate::graph::{Graph, VertexMap};
use crate::matching::{exact_min_maximal, is_maximal, Matching};
use crate::scalar::Scalar;

use super::formula::{t1_upper, t3_upper};
use super::trace::{ReductionTrace, Rule, TraceStep};
use super::{
    require_bipartite, require_connected_regular, require_max_degree, require_no_regular_component,
    require_tstar_free, BoundError, Construction,
};

/// Components with at most this many vertices are solved exactly. Every
/// closed configuration the reductions cannot handle has at most 14 vertices.
pub const SMALL_EXACT_THRESHOLD: usize = 15;

/// Maximal matching with at most `2n/3 - m/6` edges.
///
/// With `verify`, checks that `g` is subcubic, bipartite, T*-free and has
/// no cubic component; otherwise those are the caller's responsibility and a
/// violation surfaces as [`BoundError::StructureAssertion`] at best.
pub fn construct_t1(g: &Graph, verify: bool) -> Result<Construction, BoundError> {
    if verify {
        require_max_degree(g, 3)?;
        require_bipartite(g)?;
        require_tstar_free(g)?;
        require_no_regular_component(g, 3)?;
    }
    let c = reduce_all(g)?;
    let bound: Ratio<i64> = t1_upper(g.n(), g.m());
    if Ratio::from_count(c.matching.len()) > bound {
        return Err(BoundError::StructureAssertion(format!("{} edges exceed {bound}", c.matching.len())));
    }
    if !is_maximal(g, &c.matching)? {
        return Err(BoundError::StructureAssertion("result is not maximal".into()));
    }
    Ok(c)
}

/// Maximal matching with at most `(5n + 6)/12` edges in a connected cubic
/// bipartite T*-free graph: commit the lowest edge `uv`, then reduce
/// `G - {u, v}`.
pub fn construct_t3(g: &Graph, verify: bool) -> Result<Construction, BoundError> {
    if verify {
        require_connected_regular(g, 3)?;
        require_bipartite(g)?;
        require_tstar_free(g)?;
    }
    let (u, v) = g
        .edges()
        .next()
        .ok_or_else(|| BoundError::Precondition { reason: "graph has no edge".into(), witness: None })?;
    let (rest, map) = g.delete_vertices(&[u, v]).expect("endpoints are vertices");
    require_no_regular_component(&rest, 3).map_err(|e| BoundError::StructureAssertion(e.to_string()))?;
    let inner = reduce_all(&rest)?;

    let mut trace = ReductionTrace::default();
    trace.push(TraceStep {
        rule: Rule::EdgePeel,
        removed: vec![u, v],
        added: vec![(u, v)],
        removed_edges: g.edges_touching(&[u, v]),
        center: None,
    });
    trace.extend(remap_trace(inner.trace, &map));
    let matching = inner.matching.map_vertices(|x| map.to_original(x)).union(&Matching::new(g, &[(u, v)])?);

    let bound: Ratio<i64> = t3_upper(g.n());
    if Ratio::from_count(matching.len()) > bound {
        return Err(BoundError::StructureAssertion(format!("{} edges exceed {bound}", matching.len())));
    }
    if !is_maximal(g, &matching)? {
        return Err(BoundError::StructureAssertion("result is not maximal".into()));
    }
    Ok(Construction { matching, trace })
}

pub(crate) fn remap_trace(trace: ReductionTrace, map: &VertexMap) -> ReductionTrace {
    let f = |x: usize| map.to_original(x);
    ReductionTrace {
        steps: trace
            .steps
            .into_iter()
            .map(|s| TraceStep {
                rule: s.rule,
                removed: s.removed.into_iter().map(f).collect(),
                added: s.added.into_iter().map(|(a, b)| (f(a), f(b))).collect(),
                removed_edges: s.removed_edges,
                center: s.center.map(f),
            })
            .collect(),
    }
}

struct Reduction {
    rule: Rule,
    removed: Vec<usize>,
    added: Vec<(usize, usize)>,
}

/// Runs the reductions on every component, depth first in component order.
fn reduce_all(g: &Graph) -> Result<Construction, BoundError> {
    let mut trace = ReductionTrace::default();
    let mut edges = Vec::new();
    let mut stack: Vec<(Graph, VertexMap)> = g.components().into_iter().rev().collect();

    while let Some((c, map)) = stack.pop() {
        let to_orig = |x: usize| map.to_original(x);
        let step = if c.n() == 1 {
            Reduction { rule: Rule::Deg0, removed: vec![0], added: Vec::new() }
        } else if c.n() <= SMALL_EXACT_THRESHOLD {
            let exact = exact_min_maximal(&c, u64::MAX);
            Reduction { rule: Rule::SmallExact, removed: (0..c.n()).collect(), added: exact.witness.edges().to_vec() }
        } else {
            find_reduction(&c)?
        };

        let removed_edges = check_step(&c, &step.removed, &step.added).map_err(BoundError::StructureAssertion)?;
        let allowed: Ratio<i64> = t1_upper(step.removed.len(), removed_edges);
        if Ratio::from_count(step.added.len()) > allowed {
            return Err(BoundError::StructureAssertion(format!(
                "{} step commits {} edges, only {allowed} allowed",
                step.rule,
                step.added.len()
            )));
        }

        trace.push(TraceStep {
            rule: step.rule,
            removed: {
                let mut r: Vec<usize> = step.removed.iter().map(|&x| to_orig(x)).collect();
                r.sort_unstable();
                r
            },
            added: step.added.iter().map(|&(a, b)| (to_orig(a), to_orig(b))).collect(),
            removed_edges,
            center: None,
        });
        edges.extend(step.added.iter().map(|&(a, b)| (to_orig(a), to_orig(b))));

        if step.removed.len() < c.n() {
            let (rest, rest_map) = c.delete_vertices(&step.removed).expect("valid vertex set");
            let mut children = Vec::new();
            for (child, child_map) in rest.components() {
                if child.regular_degree() == Some(3) {
                    return Err(BoundError::StructureAssertion("reduction left a cubic component".into()));
                }
                children.push((child, map.compose(&rest_map.compose(&child_map))));
            }
            stack.extend(children.into_iter().rev());
        }
    }
    Ok(Construction { matching: Matching::new(g, &edges)?, trace })
}

/// Checks that committing `added` and deleting `removed` extends every
/// maximal matching of the rest to a maximal matching. Returns the number of
/// edges touching `removed`.
fn check_step(c: &Graph, removed: &[usize], added: &[(usize, usize)]) -> Result<usize, String> {
    let mut in_set = vec![false; c.n()];
    for &v in removed {
        if in_set[v] {
            return Err(format!("vertex {v} removed twice"));
        }
        in_set[v] = true;
    }
    let m = Matching::new(c, added).map_err(|e| e.to_string())?;
    let covered = m.covered(c.n());
    for &(a, b) in added {
        if !in_set[a] || !in_set[b] {
            return Err(format!("committed edge {a}-{b} leaves the removed set"));
        }
    }
    for &v in removed {
        if !covered[v] {
            if let Some(&w) = c.neighbors(v).iter().find(|&&w| !covered[w]) {
                return Err(format!("removed vertex {v} keeps uncovered neighbour {w}"));
            }
        }
    }
    Ok(c.edges_touching(removed))
}

/// True if the step is valid and satisfies the accounting inequality.
fn fits(c: &Graph, removed: &[usize], added: &[(usize, usize)]) -> bool {
    match check_step(c, removed, added) {
        Ok(e) => Ratio::from_count(added.len()) <= t1_upper::<Ratio<i64>>(removed.len(), e),
        Err(_) => false,
    }
}

fn others(c: &Graph, v: usize, exclude: &[usize]) -> Vec<usize> {
    c.neighbors(v).iter().copied().filter(|w| !exclude.contains(w)).collect()
}

/// Reduction for a connected component with more than
/// [`SMALL_EXACT_THRESHOLD`] vertices.
fn find_reduction(c: &Graph) -> Result<Reduction, BoundError> {
    let n = c.n();

    if let Some(u) = (0..n).find(|&u| c.degree(u) == 1) {
        let v = c.neighbors(u)[0];
        let w = *others(c, v, &[u]).first().ok_or_else(|| {
            BoundError::StructureAssertion("pendant edge forms a component".into())
        })?;
        return Ok(Reduction { rule: Rule::Deg1, removed: vec![u, v, w], added: vec![(v, w)] });
    }
    if let Some(v) = (0..n).find(|&v| c.degree(v) == 0 || c.degree(v) > 3) {
        return Err(BoundError::StructureAssertion(format!("vertex {v} has degree {}", c.degree(v))));
    }

    // a degree-2 vertex u on a 4-cycle u v1 w v2 with deg(v1) = 3
    let mut on_four_cycle = false;
    for u in (0..n).filter(|&u| c.degree(u) == 2) {
        let nb = c.neighbors(u);
        for (v1, v2) in [(nb[0], nb[1]), (nb[1], nb[0])] {
            for w in others(c, v1, &[u]).into_iter().filter(|&w| c.has_edge(w, v2)) {
                on_four_cycle = true;
                if c.degree(v1) != 3 {
                    continue;
                }
                let w1 = others(c, v1, &[u, w])[0];
                let removed = vec![u, v1, v2, w, w1];
                let added = vec![(v1, w1), (v2, w)];
                if fits(c, &removed, &added) {
                    return Ok(Reduction { rule: Rule::C4Deg2, removed, added });
                }
            }
        }
    }
    if on_four_cycle {
        return Err(BoundError::StructureAssertion(
            "degree-2 vertex on a 4-cycle without an admissible reduction".into(),
        ));
    }

    let u = (0..n)
        .find(|&u| c.degree(u) == 2)
        .ok_or_else(|| BoundError::StructureAssertion("component without a vertex of degree below 3".into()))?;
    let (a, b) = (c.neighbors(u)[0], c.neighbors(u)[1]);

    for w1 in others(c, a, &[u]) {
        for w2 in others(c, b, &[u]) {
            let removed = vec![u, a, b, w1, w2];
            let added = vec![(a, w1), (b, w2)];
            if w1 != w2 && fits(c, &removed, &added) {
                return Ok(Reduction { rule: Rule::Five, removed, added });
            }
        }
    }

    if c.degree(a) == 2 || c.degree(b) == 2 {
        let (v1, v2) = if c.degree(b) == 2 { (a, b) } else { (b, a) };
        let w2 = others(c, v2, &[u])[0];
        for arm in arms(c, v1, u) {
            let mut removed = vec![u, v2, w2];
            removed.extend(arm.vertices());
            let mut added = arm.edges().to_vec();
            added.push((v2, w2));
            if fits(c, &removed, &added) {
                return Ok(Reduction { rule: Rule::Ten, removed, added });
            }
        }
        return Err(BoundError::StructureAssertion(format!("no ten-vertex reduction around {u}")));
    }

    for first in arms(c, a, u) {
        for second in arms(c, b, u) {
            let mut removed = vec![u];
            removed.extend(first.vertices());
            removed.extend(second.vertices());
            let mut added = first.edges().to_vec();
            added.extend_from_slice(&second.edges());
            if fits(c, &removed, &added) {
                return Ok(Reduction { rule: Rule::Fifteen, removed, added });
            }
        }
    }
    Err(BoundError::StructureAssertion(format!("no fifteen-vertex reduction around {u}")))
}

/// The forced structure hanging off a neighbour `v` of a degree-2 vertex:
/// `N(v) = {u, w, w2}`, `N(w) = {v, z, z2}`, `w2` adjacent to `z` and `z2`,
/// `x` a common neighbour of `z`, `z2` other than `w`, `w2`, and `y` a
/// further neighbour of `x`. Committing `vw`, `w2 z`, `xy` leaves only `z2`
/// uncovered, and all of its neighbours are covered.
#[derive(Debug, Clone, Copy)]
struct Arm {
    v: usize,
    w: usize,
    w2: usize,
    z: usize,
    z2: usize,
    x: usize,
    y: usize,
}

impl Arm {
    fn vertices(&self) -> [usize; 7] {
        [self.v, self.w, self.w2, self.z, self.z2, self.x, self.y]
    }

    fn edges(&self) -> [(usize, usize); 3] {
        [(self.v, self.w), (self.w2, self.z), (self.x, self.y)]
    }
}

fn arms(c: &Graph, v: usize, u: usize) -> Vec<Arm> {
    let mut out = Vec::new();
    if c.degree(v) != 3 {
        return out;
    }
    let ws = others(c, v, &[u]);
    for (w, w2) in [(ws[0], ws[1]), (ws[1], ws[0])] {
        if c.degree(w) != 3 {
            continue;
        }
        let zs = others(c, w, &[v]);
        if !zs.iter().all(|&z| c.has_edge(w2, z)) {
            continue;
        }
        for (z, z2) in [(zs[0], zs[1]), (zs[1], zs[0])] {
            for x in others(c, z, &[w, w2]).into_iter().filter(|&x| c.has_edge(x, z2)) {
                for y in others(c, x, &[z, z2]) {
                    out.push(Arm { v, w, w2, z, z2, x, y });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn small_examples() {
        let p3 = g(3, &[(0, 1), (1, 2)]);
        let c = construct_t1(&p3, true).unwrap();
        assert_eq!(c.matching.len(), 1);
        assert_eq!(c.trace.steps[0].rule, Rule::SmallExact);

        let k23: Vec<_> = (0..2).flat_map(|a| (2..5).map(move |b| (a, b))).collect();
        let c = construct_t1(&g(5, &k23), true).unwrap();
        assert_eq!(c.matching.len(), 2);
    }

    #[test]
    fn isolated_vertices_use_deg0() {
        let c = construct_t1(&Graph::empty(2), true).unwrap();
        assert_eq!(c.trace.count(Rule::Deg0), 2);
        assert!(c.matching.is_empty());
    }

    #[test]
    fn long_path_uses_pendant_rule() {
        let edges: Vec<_> = (0..29).map(|i| (i, i + 1)).collect();
        let p30 = g(30, &edges);
        let c = construct_t1(&p30, true).unwrap();
        assert_eq!(c.trace.steps[0].rule, Rule::Deg1);
        assert_eq!(c.trace.replay(&p30).unwrap(), c.matching);
        c.trace.check_t1_accounting().unwrap();
    }

    #[test]
    fn long_even_cycle_uses_five_vertex_rule() {
        let edges: Vec<_> = (0..20).map(|i| (i, (i + 1) % 20)).collect();
        let c20 = g(20, &edges);
        let c = construct_t1(&c20, true).unwrap();
        assert_eq!(c.trace.steps[0].rule, Rule::Five);
        c.trace.check_t1_accounting().unwrap();
    }

    #[test]
    fn preconditions_are_reported_with_witnesses() {
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let err = construct_t1(&g(6, &k33), true).unwrap_err();
        assert!(matches!(err, BoundError::Precondition { .. }));
        assert_eq!(err.witness().unwrap().len(), 6);

        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert!(matches!(construct_t1(&g(5, &c5), true), Err(BoundError::Precondition { .. })));
    }

    #[test]
    fn peeling_on_k33() {
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let k33 = g(6, &k33);
        let c = construct_t3(&k33, true).unwrap();
        assert_eq!(c.matching.len(), 3);
        assert_eq!(c.trace.steps[0].rule, Rule::EdgePeel);
        assert_eq!(c.trace.steps[0].removed_edges, 5);
        assert_eq!(c.trace.replay(&k33).unwrap(), c.matching);
    }
}
