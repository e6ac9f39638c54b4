use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::matching::Matching;
use crate::scalar::Scalar;

use super::formula::{t1_upper, t2_upper};

/// Reduction rules used by the constructive algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Deg0,
    Deg1,
    C4Deg2,
    Five,
    Ten,
    Fifteen,
    SmallExact,
    Case1Greedy,
    Case2Saturate,
    EdgePeel,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Deg0 => "DEG0",
            Rule::Deg1 => "DEG1",
            Rule::C4Deg2 => "C4DEG2",
            Rule::Five => "FIVE",
            Rule::Ten => "TEN",
            Rule::Fifteen => "FIFTEEN",
            Rule::SmallExact => "SMALL-EXACT",
            Rule::Case1Greedy => "CASE1-GREEDY",
            Rule::Case2Saturate => "CASE2-SATURATE",
            Rule::EdgePeel => "EDGE-PEEL",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Rule {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One reduction: the vertices deleted, the matching edges committed and the
/// number of edges of the current graph incident to the deleted set.
///
/// Vertices are indices of the input graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: Rule,
    pub removed: Vec<usize>,
    pub added: Vec<(usize, usize)>,
    pub removed_edges: usize,
    /// The saturated vertex of a `CASE2-SATURATE` step.
    pub center: Option<usize>,
}

impl Serialize for TraceStep {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            rule: Rule,
            removed: Vec<usize>,
            added: Vec<[usize; 2]>,
            removed_edges: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            center: Option<usize>,
        }
        Wire {
            rule: self.rule,
            removed: self.removed.iter().map(|v| v + 1).collect(),
            added: self.added.iter().map(|&(a, b)| [a + 1, b + 1]).collect(),
            removed_edges: self.removed_edges,
            center: self.center.map(|c| c + 1),
        }
        .serialize(s)
    }
}

/// Ordered log of the reductions a construction performed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: ReductionTrace) {
        self.steps.extend(other.steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.steps.iter().filter(|s| s.rule == rule).count()
    }

    /// Re-applies the steps to `g`, checking that every step deletes live
    /// vertices, reports the right number of removed edges, and commits edges
    /// of `g` inside the deleted set. Returns the union of committed edges.
    pub fn replay(&self, g: &Graph) -> Result<Matching, String> {
        let mut alive = vec![true; g.n()];
        let mut edges = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            let mut in_step = vec![false; g.n()];
            for &v in &step.removed {
                if v >= g.n() || !alive[v] || in_step[v] {
                    return Err(format!("step {i}: vertex {v} not removable"));
                }
                in_step[v] = true;
            }
            let mut count = 0;
            for &v in &step.removed {
                for &w in g.neighbors(v) {
                    if alive[w] && (!in_step[w] || v < w) {
                        count += 1;
                    }
                }
            }
            if count != step.removed_edges {
                return Err(format!("step {i}: removes {count} edges, trace says {}", step.removed_edges));
            }
            for &(a, b) in &step.added {
                if !in_step[a] || !in_step[b] || !g.has_edge(a, b) {
                    return Err(format!("step {i}: committed edge {a}-{b} invalid"));
                }
            }
            for &v in &step.removed {
                alive[v] = false;
            }
            edges.extend_from_slice(&step.added);
        }
        if let Some(v) = alive.iter().position(|&a| a) {
            return Err(format!("vertex {v} never removed"));
        }
        Matching::new(g, &edges).map_err(|e| e.to_string())
    }

    /// Every step other than an edge peel satisfies
    /// `|added| <= 2|removed|/3 - removed_edges/6`.
    pub fn check_t1_accounting(&self) -> Result<(), String> {
        for (i, step) in self.steps.iter().enumerate() {
            if step.rule == Rule::EdgePeel {
                continue;
            }
            let allowed: Ratio<i64> = t1_upper(step.removed.len(), step.removed_edges);
            if Ratio::from_count(step.added.len()) > allowed {
                return Err(format!("step {i} ({}): {} edges exceed {allowed}", step.rule, step.added.len()));
            }
        }
        Ok(())
    }

    /// Every step other than an edge peel satisfies the per-step form of the
    /// maximum-degree bound; saturation steps around `u` with matching `M`
    /// also satisfy `|M| + deg(u) <= removed_edges <= (2Δ-1)|M|`, where
    /// `deg(u)` is taken in the graph left by the earlier steps.
    pub fn check_t2_accounting(&self, g: &Graph, delta: usize) -> Result<(), String> {
        let mut alive = vec![true; g.n()];
        for (i, step) in self.steps.iter().enumerate() {
            if step.rule != Rule::EdgePeel {
                let allowed: Ratio<i64> = t2_upper(delta, step.removed.len(), step.removed_edges);
                if Ratio::from_count(step.added.len()) > allowed {
                    return Err(format!("step {i} ({}): {} edges exceed {allowed}", step.rule, step.added.len()));
                }
            }
            if step.rule == Rule::Case2Saturate {
                let u = step.center.ok_or_else(|| format!("step {i}: saturation step without center"))?;
                let degree = g.neighbors(u).iter().filter(|&&w| alive[w]).count();
                let size = step.added.len();
                let lower = size + degree;
                let upper = (2 * delta - 1) * size;
                if step.removed_edges < lower || step.removed_edges > upper {
                    return Err(format!(
                        "step {i}: {} removed edges outside [{lower}, {upper}]",
                        step.removed_edges
                    ));
                }
            }
            for &v in &step.removed {
                alive[v] = false;
            }
        }
        Ok(())
    }
}
