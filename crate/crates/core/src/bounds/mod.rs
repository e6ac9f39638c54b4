//! Upper and lower bounds on the edge domination number, and the recursive
//! constructions that produce maximal matchings within the upper bounds.

mod formula;
mod rational;
mod t1;
mod t2;
mod trace;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::matching::{Matching, MatchingError};
use crate::saturator::SaturatorError;
use crate::structure::{find_tstar, odd_closed_walk};

pub use formula::*;
pub use rational::{ParseRationalError, RationalBound};
pub use t1::{construct_t1, construct_t3, SMALL_EXACT_THRESHOLD};
pub use t2::{construct_t2, construct_t2_with, construct_t4, T2Options};
pub use trace::{ReductionTrace, Rule, TraceStep};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("bound requires delta >= 3, got {0}")]
    DeltaTooSmall(usize),
    /// The input is outside the class the bound is stated for.
    #[error("precondition violated: {reason}")]
    Precondition { reason: String, witness: Option<Vec<usize>> },
    /// A structural fact the construction relies on failed; the input is
    /// outside the promised class.
    #[error("structure assertion failed: {0}")]
    StructureAssertion(String),
    #[error(transparent)]
    Saturator(#[from] SaturatorError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

impl BoundError {
    fn precondition(reason: impl Into<String>, witness: Option<Vec<usize>>) -> Self {
        BoundError::Precondition { reason: reason.into(), witness }
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            BoundError::Precondition { witness, .. } => witness.as_deref(),
            _ => None,
        }
    }
}

/// Which upper bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum UpperKind {
    T1,
    T2,
    T3,
    T4,
    Conj,
}

/// Which lower bound to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LowerKind {
    Regular,
    Clawfree,
}

fn exact(r: Ratio<i64>) -> RationalBound {
    RationalBound::from(r)
}

/// Exact value of an upper bound. `m` is ignored by `T3`, `T4` and `Conj`,
/// `delta` by `T1` and `T3`.
pub fn upper_bound(kind: UpperKind, delta: usize, n: usize, m: usize) -> Result<RationalBound, BoundError> {
    let needs_delta = matches!(kind, UpperKind::T2 | UpperKind::T4 | UpperKind::Conj);
    if needs_delta && delta < 3 {
        return Err(BoundError::DeltaTooSmall(delta));
    }
    Ok(exact(match kind {
        UpperKind::T1 => t1_upper(n, m),
        UpperKind::T2 => t2_upper(delta, n, m),
        UpperKind::T3 => t3_upper(n),
        UpperKind::T4 => t4_upper(delta, n),
        UpperKind::Conj => conj_upper(delta, n),
    }))
}

/// Exact lower bound and its ceiling (valid since the edge domination number
/// is an integer).
pub fn lower_bound(kind: LowerKind, delta: usize, n: usize) -> Result<(RationalBound, i64), BoundError> {
    if delta < 3 {
        return Err(BoundError::DeltaTooSmall(delta));
    }
    let value = exact(match kind {
        LowerKind::Regular => regular_lower(delta, n),
        LowerKind::Clawfree => clawfree_lower(delta, n),
    });
    Ok((value, value.ceil()))
}

/// A maximal matching produced by one of the constructions, with its trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub matching: Matching,
    pub trace: ReductionTrace,
}

pub(crate) fn require_bipartite(g: &Graph) -> Result<(), BoundError> {
    match odd_closed_walk(g) {
        None => Ok(()),
        Some(walk) => Err(BoundError::precondition("graph is not bipartite (odd closed walk)", Some(walk))),
    }
}

pub(crate) fn require_tstar_free(g: &Graph) -> Result<(), BoundError> {
    match find_tstar(g) {
        None => Ok(()),
        Some(w) => Err(BoundError::precondition("graph contains an induced T*", Some(w.to_vec()))),
    }
}

pub(crate) fn require_max_degree(g: &Graph, delta: usize) -> Result<(), BoundError> {
    match (0..g.n()).find(|&v| g.degree(v) > delta) {
        None => Ok(()),
        Some(v) => Err(BoundError::precondition(format!("vertex of degree above {delta}"), Some(vec![v]))),
    }
}

/// Errors with the vertex set of the first `d`-regular component.
pub(crate) fn require_no_regular_component(g: &Graph, d: usize) -> Result<(), BoundError> {
    for set in g.component_vertex_sets() {
        if set.iter().all(|&v| g.degree(v) == d) {
            return Err(BoundError::precondition(format!("component is {d}-regular"), Some(set)));
        }
    }
    Ok(())
}

pub(crate) fn require_connected_regular(g: &Graph, d: usize) -> Result<(), BoundError> {
    if !g.is_connected() {
        return Err(BoundError::precondition("graph is not connected", None));
    }
    match (0..g.n()).find(|&v| g.degree(v) != d) {
        None => Ok(()),
        Some(v) => Err(BoundError::precondition(format!("graph is not {d}-regular"), Some(vec![v]))),
    }
}
