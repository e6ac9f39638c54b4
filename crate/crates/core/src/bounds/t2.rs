//! Maximal matchings of size at most `Δn/(2Δ-1) - m/((Δ-1)(2Δ-1))` in
//! graphs of maximum degree at most `Δ` without `Δ`-regular components, and
//! the regular-graph construction built on top of it.

use std::collections::VecDeque;

use num_rational::Ratio;

use crate::graph::{Graph, VertexMap};
use crate::matching::{greedy_maximal, is_maximal, Matching};
use crate::saturator::{lemma1_saturate, lemma2_saturate, SaturatorError};
use crate::scalar::Scalar;

use super::formula::{t2_upper, t4_upper};
use super::t1::remap_trace;
use super::trace::{ReductionTrace, Rule, TraceStep};
use super::{require_connected_regular, require_max_degree, require_no_regular_component, BoundError, Construction};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct T2Options {
    /// In a `(Δ-1)`-regular component, seed the greedy matching with a
    /// saturating matching around its first vertex, which then stays
    /// uncovered.
    pub lemma2_refinement: bool,
}

/// [`construct_t2_with`] with default options.
pub fn construct_t2(g: &Graph, delta: usize, verify: bool) -> Result<Construction, BoundError> {
    construct_t2_with(g, delta, verify, T2Options::default())
}

/// Maximal matching with at most `Δn/(2Δ-1) - m/((Δ-1)(2Δ-1))` edges.
///
/// `delta >= 3` is always checked. With `verify`, also checks the maximum
/// degree and the absence of `delta`-regular components.
pub fn construct_t2_with(g: &Graph, delta: usize, verify: bool, opts: T2Options) -> Result<Construction, BoundError> {
    if delta < 3 {
        return Err(BoundError::DeltaTooSmall(delta));
    }
    if verify {
        require_max_degree(g, delta)?;
        require_no_regular_component(g, delta)?;
    }
    let c = reduce_all(g, delta, opts)?;
    let bound: Ratio<i64> = t2_upper(delta, g.n(), g.m());
    if Ratio::from_count(c.matching.len()) > bound {
        return Err(BoundError::StructureAssertion(format!("{} edges exceed {bound}", c.matching.len())));
    }
    if !is_maximal(g, &c.matching)? {
        return Err(BoundError::StructureAssertion("result is not maximal".into()));
    }
    Ok(c)
}

/// Maximal matching with at most `(Δ(2Δ-3)n + 2Δ)/(2(Δ-1)(2Δ-1))` edges in a
/// connected `Δ`-regular graph, `Δ >= 3`: commit the lowest edge `uv`, then
/// reduce `G - {u, v}`.
pub fn construct_t4(g: &Graph, verify: bool) -> Result<Construction, BoundError> {
    let delta = g.max_degree();
    if delta < 3 {
        return Err(BoundError::DeltaTooSmall(delta));
    }
    if verify {
        require_connected_regular(g, delta)?;
    }
    let (u, v) = g.edges().next().expect("delta >= 3 implies an edge");
    let (rest, map) = g.delete_vertices(&[u, v]).expect("endpoints are vertices");
    let inner = reduce_all(&rest, delta, T2Options::default())?;

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

    let bound: Ratio<i64> = t4_upper(delta, g.n());
    if Ratio::from_count(matching.len()) > bound {
        return Err(BoundError::StructureAssertion(format!("{} edges exceed {bound}", matching.len())));
    }
    if !is_maximal(g, &matching)? {
        return Err(BoundError::StructureAssertion("result is not maximal".into()));
    }
    Ok(Construction { matching, trace })
}

fn reduce_all(g: &Graph, delta: usize, opts: T2Options) -> Result<Construction, BoundError> {
    let mut trace = ReductionTrace::default();
    let mut edges = Vec::new();
    let mut stack: Vec<(Graph, VertexMap)> = g.components().into_iter().rev().collect();

    while let Some((c, map)) = stack.pop() {
        let to_orig = |x: usize| map.to_original(x);
        if c.max_degree() > delta {
            return Err(BoundError::StructureAssertion(format!("degree above {delta}")));
        }
        if c.max_degree() < delta {
            let m = case1(&c, delta, opts)?;
            trace.push(TraceStep {
                rule: Rule::Case1Greedy,
                removed: map.originals().to_vec(),
                added: m.edges().iter().map(|&(a, b)| (to_orig(a), to_orig(b))).collect(),
                removed_edges: c.m(),
                center: None,
            });
            edges.extend(m.edges().iter().map(|&(a, b)| (to_orig(a), to_orig(b))));
            continue;
        }
        if c.regular_degree() == Some(delta) {
            return Err(BoundError::StructureAssertion(format!("component is {delta}-regular")));
        }

        let (u, v) = saturation_pair(&c, delta);
        let m0 = lemma1_saturate(&c, u, v)?;
        let mut removed = m0.vertices();
        removed.push(u);
        removed.sort_unstable();
        let removed_edges = c.edges_touching(&removed);
        check_case2(&c, delta, u, &m0, removed.len(), removed_edges)?;

        trace.push(TraceStep {
            rule: Rule::Case2Saturate,
            removed: removed.iter().map(|&x| to_orig(x)).collect(),
            added: m0.edges().iter().map(|&(a, b)| (to_orig(a), to_orig(b))).collect(),
            removed_edges,
            center: Some(to_orig(u)),
        });
        edges.extend(m0.edges().iter().map(|&(a, b)| (to_orig(a), to_orig(b))));

        let (rest, rest_map) = c.delete_vertices(&removed).expect("valid vertex set");
        let mut children = Vec::new();
        for (child, child_map) in rest.components() {
            if child.regular_degree() == Some(delta) {
                return Err(BoundError::StructureAssertion(format!("saturation left a {delta}-regular component")));
            }
            children.push((child, map.compose(&rest_map.compose(&child_map))));
        }
        stack.extend(children.into_iter().rev());
    }
    Ok(Construction { matching: Matching::new(g, &edges)?, trace })
}

/// Any maximal matching of a graph with maximum degree below `delta` is
/// within the bound; optionally shrink it with a saturating seed.
fn case1(c: &Graph, delta: usize, opts: T2Options) -> Result<Matching, BoundError> {
    if opts.lemma2_refinement && c.regular_degree() == Some(delta - 1) {
        match lemma2_saturate(c, 0) {
            Ok(seed) => return Ok(greedy_maximal(c, &seed, Some(0))?),
            Err(SaturatorError::ExcludedGraph(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(greedy_maximal(c, &Matching::empty(), None)?)
}

/// Walks a shortest path from the lowest minimum-degree vertex to the
/// nearest vertex of degree `delta`; `u` is the last minimum-degree vertex
/// before the end and `v` its successor, so `deg(v) > deg(u) = δ(G)`.
fn saturation_pair(c: &Graph, delta: usize) -> (usize, usize) {
    let low = c.min_degree();
    let start = (0..c.n()).find(|&x| c.degree(x) == low).expect("nonempty");
    let mut parent = vec![usize::MAX; c.n()];
    parent[start] = start;
    let mut queue = VecDeque::from([start]);
    let mut target = start;
    while let Some(x) = queue.pop_front() {
        if c.degree(x) == delta {
            target = x;
            break;
        }
        for &w in c.neighbors(x) {
            if parent[w] == usize::MAX {
                parent[w] = x;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![target];
    while *path.last().unwrap() != start {
        let x = *path.last().unwrap();
        path.push(parent[x]);
    }
    path.reverse();
    let j = (0..path.len() - 1).rev().find(|&i| c.degree(path[i]) == low).expect("start has minimum degree");
    (path[j], path[j + 1])
}

fn check_case2(c: &Graph, delta: usize, u: usize, m: &Matching, size: usize, e: usize) -> Result<(), BoundError> {
    let allowed: Ratio<i64> = t2_upper(delta, size, e);
    if Ratio::from_count(m.len()) > allowed {
        return Err(BoundError::StructureAssertion(format!("saturation at {u} commits {} > {allowed}", m.len())));
    }
    let (lo, hi) = (m.len() + c.degree(u), (2 * delta - 1) * m.len());
    if e < lo || e > hi {
        return Err(BoundError::StructureAssertion(format!("saturation at {u} removes {e} edges, outside [{lo}, {hi}]")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        g(n, &e)
    }

    #[test]
    fn case_one_examples() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = construct_t2(&c4, 3, true).unwrap();
        assert_eq!(c.matching.len(), 2);
        assert_eq!(c.trace.steps[0].rule, Rule::Case1Greedy);

        let c = construct_t2(&complete(4), 4, true).unwrap();
        assert_eq!(c.matching.len(), 2);
    }

    #[test]
    fn refinement_can_only_help() {
        let c6: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let c6 = g(6, &c6);
        let plain = construct_t2(&c6, 3, true).unwrap();
        let refined = construct_t2_with(&c6, 3, true, T2Options { lemma2_refinement: true }).unwrap();
        assert!(refined.matching.len() <= plain.matching.len());
        assert_eq!(refined.matching.len(), 2);
    }

    #[test]
    fn case_two_on_a_star_with_tail() {
        // claw plus a pendant path: non-regular with maximum degree 3
        let h = g(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]);
        let c = construct_t2(&h, 3, true).unwrap();
        assert!(c.trace.count(Rule::Case2Saturate) >= 1);
        assert_eq!(c.trace.replay(&h).unwrap(), c.matching);
        c.trace.check_t2_accounting(&h, 3).unwrap();
    }

    #[test]
    fn errors() {
        let k4 = complete(4);
        assert_eq!(construct_t2(&k4, 2, true).unwrap_err(), BoundError::DeltaTooSmall(2));
        assert!(matches!(construct_t2(&k4, 3, true), Err(BoundError::Precondition { .. })));
        let c5: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(construct_t4(&g(5, &c5), true).unwrap_err(), BoundError::DeltaTooSmall(2));
    }

    #[test]
    fn regular_examples() {
        let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        let k33 = g(6, &k33);
        let c = construct_t4(&k33, true).unwrap();
        assert_eq!(c.matching.len(), 3);
        c.trace.check_t2_accounting(&k33, 3).unwrap();

        for n in 4..9 {
            let kn = complete(n);
            let c = construct_t4(&kn, true).unwrap();
            assert!(is_maximal(&kn, &c.matching).unwrap());
            assert_eq!(c.trace.replay(&kn).unwrap(), c.matching);
        }
    }
}
