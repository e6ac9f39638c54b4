//! Named graphs and seeded random families.
//!
//! Randomness is a pure function of the seed (ChaCha8).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::structure::{find_tstar, two_coloring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("gave up after {0} sampling attempts")]
    RetryLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// `K_n`.
    Complete,
    /// `K_{a,b}`.
    CompleteBipartite,
    /// `K_{Δ,Δ}` minus one edge.
    KddMinusE,
    /// `t` copies of `K_{Δ,Δ} - e` linked in a cycle through their
    /// deficient vertices.
    ExtremalChain,
    /// `K_n` minus a perfect matching, `n` even.
    CompleteMinusPm,
    /// Uniform simple connected `Δ`-regular graph on `n` vertices.
    RandomRegular,
    /// Connected subcubic bipartite T*-free graph without cubic component,
    /// at most `n` vertices.
    RandomSubcubicBipTstar,
}

/// Which fields a family reads: `Complete`, `CompleteMinusPm` use `n`;
/// `CompleteBipartite` uses `a`, `b`; `KddMinusE` uses `delta`;
/// `ExtremalChain` uses `delta`, `t`; the random families use `delta`/`n`
/// and `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub family: Family,
    pub a: usize,
    pub b: usize,
    pub delta: usize,
    pub t: usize,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(family: Family) -> Self {
        GenSpec { family, a: 0, b: 0, delta: 0, t: 1, n: 0, seed: 0 }
    }

    pub fn complete(n: usize) -> Self {
        GenSpec { n, ..Self::new(Family::Complete) }
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        GenSpec { a, b, ..Self::new(Family::CompleteBipartite) }
    }

    pub fn kdd_minus_e(delta: usize) -> Self {
        GenSpec { delta, ..Self::new(Family::KddMinusE) }
    }

    pub fn extremal_chain(delta: usize, t: usize) -> Self {
        GenSpec { delta, t, ..Self::new(Family::ExtremalChain) }
    }

    pub fn complete_minus_pm(n: usize) -> Self {
        GenSpec { n, ..Self::new(Family::CompleteMinusPm) }
    }

    pub fn random_regular(delta: usize, n: usize, seed: u64) -> Self {
        GenSpec { delta, n, seed, ..Self::new(Family::RandomRegular) }
    }

    pub fn random_subcubic_bip_tstar(n: usize, seed: u64) -> Self {
        GenSpec { n, seed, ..Self::new(Family::RandomSubcubicBipTstar) }
    }
}

/// Attempts allowed for rejection sampling.
pub const RETRY_LIMIT: usize = 100_000;

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

pub fn generate(spec: &GenSpec) -> Result<Graph, GenError> {
    match spec.family {
        Family::Complete => {
            if spec.n == 0 {
                return Err(invalid("n must be positive"));
            }
            Ok(complete(spec.n))
        }
        Family::CompleteBipartite => {
            if spec.a == 0 || spec.b == 0 {
                return Err(invalid("a and b must be positive"));
            }
            Ok(complete_bipartite(spec.a, spec.b))
        }
        Family::KddMinusE => {
            if spec.delta == 0 {
                return Err(invalid("delta must be positive"));
            }
            let mut e = complete_bipartite_edges(spec.delta, spec.delta);
            e.retain(|&x| x != (0, spec.delta));
            Ok(build(2 * spec.delta, &e))
        }
        Family::ExtremalChain => extremal_chain(spec.delta, spec.t),
        Family::CompleteMinusPm => {
            if spec.n == 0 || spec.n % 2 == 1 {
                return Err(invalid("n must be even and positive"));
            }
            let e: Vec<_> = complete_edges(spec.n).into_iter().filter(|&(a, b)| !(a % 2 == 0 && b == a + 1)).collect();
            Ok(build(spec.n, &e))
        }
        Family::RandomRegular => random_regular(spec.delta, spec.n, spec.seed),
        Family::RandomSubcubicBipTstar => random_subcubic_bip_tstar(spec.n, spec.seed),
    }
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generated edges are simple")
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn complete_bipartite_edges(a: usize, b: usize) -> Vec<(usize, usize)> {
    (0..a).flat_map(|x| (a..a + b).map(move |y| (x, y))).collect()
}

pub fn complete(n: usize) -> Graph {
    build(n, &complete_edges(n))
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, &complete_bipartite_edges(a, b))
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i, i+5`.
pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &e)
}

/// Copy `i` occupies `2Δi..2Δ(i+1)`: side `a` first, then side `b`. Its
/// missing edge joins the first vertices of the two sides, and the first
/// `b` vertex of copy `i` links to the first `a` vertex of copy `i + 1 mod t`.
fn extremal_chain(delta: usize, t: usize) -> Result<Graph, GenError> {
    if delta == 0 {
        return Err(invalid("delta must be positive"));
    }
    if t.is_multiple_of(2) {
        return Err(invalid("t must be odd"));
    }
    Ok(build(t * 2 * delta, &chain_edges(delta, t)))
}

fn chain_edges(delta: usize, t: usize) -> Vec<(usize, usize)> {
    let size = 2 * delta;
    let mut edges = Vec::new();
    for i in 0..t {
        let base = i * size;
        for x in 0..delta {
            for y in 0..delta {
                if x != 0 || y != 0 {
                    edges.push((base + x, base + delta + y));
                }
            }
        }
        edges.push((base + delta, ((i + 1) % t) * size));
    }
    edges
}

fn random_regular(delta: usize, n: usize, seed: u64) -> Result<Graph, GenError> {
    if delta < 2 || n <= delta {
        return Err(invalid("need delta >= 2 and n > delta"));
    }
    if delta * n % 2 == 1 {
        return Err(invalid("delta * n must be even"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, delta)).collect();
    for _ in 0..RETRY_LIMIT {
        stubs.shuffle(&mut rng);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0], p[1])).collect();
        if let Ok(g) = Graph::from_edges(n, &edges) {
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(GenError::RetryLimit(RETRY_LIMIT))
}

/// Starts from a randomly relabelled cyclic chain of `K_{3,3} - e` copies
/// (cubic, bipartite, T*-free), deletes random vertices and keeps the
/// largest component; induced subgraphs stay T*-free. Then applies random
/// growth moves: hang a new vertex on a vertex of degree below 3, join two
/// such vertices, or subdivide an edge. A move is undone if the graph stops
/// being bipartite, the detector finds an induced T*, or the graph is cubic.
fn random_subcubic_bip_tstar(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = ((n + 1) / 6).max(1);
    let mut label: Vec<usize> = (0..6 * t).collect();
    label.shuffle(&mut rng);
    let chain: Vec<_> = chain_edges(3, t).into_iter().map(|(a, b)| (label[a], label[b])).collect();
    let chain = build(6 * t, &chain);
    let deletions = rng.gen_range(1..=(6 * t).saturating_sub(n).max(t + 1));
    let doomed: Vec<usize> = label[..deletions.min(6 * t)].to_vec();
    let (rest, _) = chain.delete_vertices(&doomed).expect("labels are vertices");
    let mut g = match rest.components().into_iter().max_by_key(|(c, _)| c.n()) {
        Some((c, _)) => c,
        None => build(1, &[]),
    };
    if g.n() > n {
        // only when n < 5 and the chain is a single K_{3,3}
        g = path(n);
    }

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    let mut rejected = 0;
    while g.n() < n && rejected < 4 * n {
        let open: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) < 3).collect();
        let mut next_edges = edges.clone();
        let mut size = g.n();
        match rng.gen_range(0..3) {
            0 => {
                let Some(&p) = open.choose(&mut rng) else { break };
                next_edges.push((p, size));
                size += 1;
            }
            1 => {
                let (Some(&p), Some(&q)) = (open.choose(&mut rng), open.choose(&mut rng)) else { break };
                if p == q || g.has_edge(p, q) {
                    rejected += 1;
                    continue;
                }
                next_edges.push((p.min(q), p.max(q)));
            }
            _ => {
                let Some(&(p, q)) = edges.choose(&mut rng) else {
                    rejected += 1;
                    continue;
                };
                next_edges.retain(|&e| e != (p, q));
                next_edges.extend([(p, size), (q, size)]);
                size += 1;
            }
        }
        let next = build(size, &next_edges);
        if two_coloring(&next).is_none() || find_tstar(&next).is_some() || next.regular_degree() == Some(3) {
            rejected += 1;
            continue;
        }
        g = next;
        edges = next_edges;
        rejected = 0;
    }
    Ok(g)
}
