//! Brute-force oracles and random inputs shared by the integration tests.
//! Nothing here calls the solver or the detectors under test.
#![allow(dead_code)]

use edgedom::Graph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn edge_list(g: &Graph) -> Vec<(usize, usize)> {
    g.edges().collect()
}

type Visit<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

/// Calls `f` on every matching of `g`, as a list of edges.
pub fn for_each_matching(g: &Graph, mut f: impl FnMut(&[(usize, usize)])) {
    fn go(
        edges: &[(usize, usize)],
        i: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        f: &mut Visit,
    ) {
        if i == edges.len() {
            f(cur);
            return;
        }
        go(edges, i + 1, used, cur, f);
        let (a, b) = edges[i];
        if !used[a] && !used[b] {
            used[a] = true;
            used[b] = true;
            cur.push((a, b));
            go(edges, i + 1, used, cur, f);
            cur.pop();
            used[a] = false;
            used[b] = false;
        }
    }
    let edges = edge_list(g);
    go(&edges, 0, &mut vec![false; g.n()], &mut Vec::new(), &mut f);
}

/// True when `m` is a matching of `g` that dominates every edge.
pub fn is_maximal_matching(g: &Graph, m: &[(usize, usize)]) -> bool {
    let mut covered = vec![false; g.n()];
    for &(a, b) in m {
        if !g.has_edge(a, b) || covered[a] || covered[b] {
            return false;
        }
        covered[a] = true;
        covered[b] = true;
    }
    g.edges().all(|(a, b)| covered[a] || covered[b])
}

pub fn brute_gamma_e(g: &Graph) -> usize {
    let mut best = usize::MAX;
    for_each_matching(g, |m| {
        if m.len() < best && is_maximal_matching(g, m) {
            best = m.len();
        }
    });
    best
}

pub fn brute_max_matching_between(g: &Graph, a: &[usize], b: &[usize]) -> usize {
    let mut best = 0;
    for_each_matching(g, |m| {
        let crossing = m
            .iter()
            .filter(|&&(x, y)| (a.contains(&x) && b.contains(&y)) || (a.contains(&y) && b.contains(&x)))
            .count();
        if crossing == m.len() {
            best = best.max(m.len());
        }
    });
    best
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for v in start..n {
            cur.push(v);
            if go(n, k, v + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(n, k, 0, &mut Vec::new(), f);
}

fn induced_degrees(g: &Graph, s: &[usize]) -> (Vec<usize>, usize) {
    let deg: Vec<usize> = s.iter().map(|&x| s.iter().filter(|&&y| g.has_edge(x, y)).count()).collect();
    let m = deg.iter().sum::<usize>() / 2;
    (deg, m)
}

/// Some 4-set induces K_{1,3}.
pub fn brute_has_claw(g: &Graph) -> bool {
    let mut found = false;
    subsets(g.n(), 4, &mut |s| {
        let (mut deg, m) = induced_degrees(g, s);
        deg.sort_unstable();
        found = m == 3 && deg == [1, 1, 1, 3];
        found
    });
    found
}

/// Some 6-set induces the tree with a degree-3 centre, two subdivided arms
/// and one plain arm: 5 edges, degrees 3,2,2,1,1,1, the centre adjacent to
/// both degree-2 vertices.
pub fn brute_has_tstar(g: &Graph) -> bool {
    let mut found = false;
    subsets(g.n(), 6, &mut |s| {
        let (deg, m) = induced_degrees(g, s);
        let mut sorted = deg.clone();
        sorted.sort_unstable();
        if m != 5 || sorted != [1, 1, 1, 2, 2, 3] {
            return false;
        }
        let centre = s[deg.iter().position(|&d| d == 3).unwrap()];
        let twos: Vec<usize> = s.iter().zip(&deg).filter(|(_, &d)| d == 2).map(|(&x, _)| x).collect();
        // the other tree with these degrees has its degree-2 vertices
        // adjacent to each other
        found = twos.iter().all(|&x| g.has_edge(centre, x)) && !g.has_edge(twos[0], twos[1]);
        found
    });
    found
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// G(n, p) conditioned on connectivity by adding a random spanning tree.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i], order[j]);
        edges.insert((a.min(b), a.max(b)));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.insert((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
}

/// Random graph with maximum degree at most `delta`: random edge insertions
/// that respect the cap.
pub fn random_capped(rng: &mut ChaCha8Rng, n: usize, delta: usize, tries: usize) -> Graph {
    let mut deg = vec![0; n];
    let mut edges = std::collections::BTreeSet::new();
    for _ in 0..tries {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = (a.min(b), a.max(b));
        if a != b && deg[a] < delta && deg[b] < delta && edges.insert(e) {
            deg[a] += 1;
            deg[b] += 1;
        }
    }
    Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>()).unwrap()
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over the
/// pairs in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for a in 0..n {
        for b in a + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((a, b));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// The three saturation properties, checked from scratch.
pub fn saturates(g: &Graph, u: usize, m: &[(usize, usize)]) -> Result<(), String> {
    let mut covered = vec![false; g.n()];
    for &(a, b) in m {
        if !g.has_edge(a, b) || covered[a] || covered[b] {
            return Err(format!("{a}-{b} is not a matching edge"));
        }
        covered[a] = true;
        covered[b] = true;
        if !g.has_edge(u, a) && !g.has_edge(u, b) {
            return Err(format!("{a}-{b} misses N({u})"));
        }
    }
    if covered[u] {
        return Err(format!("{u} is covered"));
    }
    if let Some(&w) = g.neighbors(u).iter().find(|&&w| !covered[w]) {
        return Err(format!("neighbour {w} of {u} is uncovered"));
    }
    Ok(())
}

/// Disjoint union of graphs.
pub fn union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut off = 0;
    for p in parts {
        edges.extend(p.edges().map(|(a, b)| (a + off, b + off)));
        off += p.n();
    }
    Graph::from_edges(off, &edges).unwrap()
}
