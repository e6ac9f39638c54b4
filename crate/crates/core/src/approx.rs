//! Approximation with instance-specific certificates for regular graph
//! classes.
//!
//! After committing the lowest edge, components of order at most `n0(ε)` are
//! solved exactly and larger ones by the constructive algorithms. The
//! certificate divides the matching size by the ceiling of the class lower
//! bound.
//!
//! `n0(ε)` is not given explicitly by the analysis; the thresholds below
//! come from bounding the additive term of `upper / lower` by `ε`:
//! `2/((Δ-1)n)` for regular graphs, `5/(3n)` for cubic bipartite T*-free
//! graphs and `(2Δ+4)/((Δ-1)(2Δ-1)n)` for claw-free regular graphs.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bounds::{
    clawfree_lower, clawfree_regular_ratio, construct_t1, construct_t2, cubic_bip_tstar_ratio, regular_lower,
    regular_ratio, t3_upper, t4_upper, BoundError, RationalBound,
};
use crate::graph::Graph;
use crate::matching::{exact_min_maximal, is_maximal, Matching};
use crate::structure::{find_claw, find_tstar, odd_closed_walk};

type Q = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApproxClass {
    CubicBipTstar,
    Regular,
    ClawfreeRegular,
}

impl ApproxClass {
    pub fn tag(self) -> &'static str {
        match self {
            ApproxClass::CubicBipTstar => "CUBIC_BIP_TSTAR",
            ApproxClass::Regular => "REGULAR",
            ApproxClass::ClawfreeRegular => "CLAWFREE_REGULAR",
        }
    }

    /// Limit of `upper / lower` as `n` grows.
    pub fn limit(self, delta: usize) -> Q {
        match self {
            ApproxClass::CubicBipTstar => cubic_bip_tstar_ratio(),
            ApproxClass::Regular => regular_ratio(delta),
            ApproxClass::ClawfreeRegular => clawfree_regular_ratio(delta),
        }
    }

    /// Coefficient `c` with `upper/lower = limit + c/n`.
    fn additive(self, delta: usize) -> Q {
        let d = delta as i64;
        match self {
            ApproxClass::CubicBipTstar => Q::new(5, 3),
            ApproxClass::Regular => Q::new(2, d - 1),
            ApproxClass::ClawfreeRegular => Q::new(2 * d + 4, (d - 1) * (2 * d - 1)),
        }
    }

    /// Exact-solve threshold `n0 = ⌈c/ε⌉`.
    pub fn threshold(self, delta: usize, epsilon: Q) -> usize {
        (self.additive(delta) / epsilon).ceil().to_integer().max(0) as usize
    }
}

impl fmt::Display for ApproxClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ApproxClass {
    type Err = String;

    /// Accepts the tag or its lowercase dashed form (`cubic-bip-tstar`).
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "CUBIC_BIP_TSTAR" => Ok(ApproxClass::CubicBipTstar),
            "REGULAR" => Ok(ApproxClass::Regular),
            "CLAWFREE_REGULAR" => Ok(ApproxClass::ClawfreeRegular),
            _ => Err(format!("unknown class {s:?}")),
        }
    }
}

impl Serialize for ApproxClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("graph is not in class {class}: {reason}")]
    ClassMismatch { class: ApproxClass, reason: String, witness: Option<Vec<usize>> },
    #[error("approximation requires degree >= 3, got {0}")]
    DeltaTooSmall(usize),
    #[error(transparent)]
    Bound(#[from] BoundError),
}

/// Result of [`approx_mmm`]. Vertices serialize 1-based and rationals as
/// `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    #[serde(serialize_with = "one_based")]
    pub matching: Matching,
    pub upper_size: usize,
    pub lower: RationalBound,
    pub lower_ceiling: i64,
    /// `upper_size / lower_ceiling`.
    pub certified_ratio: RationalBound,
    /// Class limit plus `epsilon`.
    pub guaranteed_ratio: RationalBound,
    pub class_tag: ApproxClass,
    pub epsilon: RationalBound,
    pub delta: usize,
    pub n0: usize,
    /// The whole graph had at most `n0` vertices and was solved exactly.
    pub whole_graph_exact: bool,
    pub exact_components: usize,
    pub constructive_components: usize,
    /// Some component of order at most `n0` ran out of budget and was
    /// handled constructively instead.
    pub budget_hit: bool,
    /// `max(0, certified_ratio - class limit)`.
    pub achieved_epsilon: RationalBound,
}

fn one_based<S: Serializer>(m: &Matching, s: S) -> Result<S::Ok, S::Error> {
    m.to_one_based().serialize(s)
}

fn mismatch(class: ApproxClass, reason: impl Into<String>, witness: Option<Vec<usize>>) -> ApproxError {
    ApproxError::ClassMismatch { class, reason: reason.into(), witness }
}

fn check_class(g: &Graph, class: ApproxClass) -> Result<usize, ApproxError> {
    if !g.is_connected() {
        return Err(mismatch(class, "graph is not connected", None));
    }
    let delta = g
        .regular_degree()
        .ok_or_else(|| mismatch(class, "graph is not regular", None))?;
    if delta < 3 {
        return Err(ApproxError::DeltaTooSmall(delta));
    }
    match class {
        ApproxClass::Regular => {}
        ApproxClass::CubicBipTstar => {
            if delta != 3 {
                return Err(mismatch(class, format!("graph is {delta}-regular, not cubic"), None));
            }
            if let Some(walk) = odd_closed_walk(g) {
                return Err(mismatch(class, "graph is not bipartite (odd closed walk)", Some(walk)));
            }
            if let Some(w) = find_tstar(g) {
                return Err(mismatch(class, "graph contains an induced T*", Some(w.to_vec())));
            }
        }
        ApproxClass::ClawfreeRegular => {
            if let Some(w) = find_claw(g) {
                return Err(mismatch(class, "graph contains an induced claw", Some(w.to_vec())));
            }
        }
    }
    Ok(delta)
}

/// Approximate minimum maximal matching of a connected graph in `class`.
///
/// `solver_budget` is the node budget of each exact solve.
pub fn approx_mmm(g: &Graph, class: ApproxClass, epsilon: Q, solver_budget: u64) -> Result<BoundCertificate, ApproxError> {
    if epsilon <= Q::zero() {
        return Err(ApproxError::NonPositiveEpsilon);
    }
    let delta = check_class(g, class)?;
    let n0 = class.threshold(delta, epsilon);

    let mut exact_components = 0;
    let mut constructive_components = 0;
    let mut budget_hit = false;
    let mut whole_graph_exact = false;
    let mut matching = None;

    if g.n() <= n0 {
        let r = exact_min_maximal(g, solver_budget);
        if r.budget_hit {
            budget_hit = true;
        } else {
            whole_graph_exact = true;
            exact_components = 1;
            matching = Some(r.witness);
        }
    }

    let matching = match matching {
        Some(m) => m,
        None => {
            let (u, v) = g.edges().next().expect("regular of degree >= 3");
            let (rest, map) = g.delete_vertices(&[u, v]).expect("endpoints are vertices");
            let mut edges = vec![(u, v)];
            for (c, cmap) in rest.components() {
                let mut part = None;
                if c.n() <= n0 {
                    let r = exact_min_maximal(&c, solver_budget);
                    if r.budget_hit {
                        budget_hit = true;
                    } else {
                        exact_components += 1;
                        part = Some(r.witness);
                    }
                }
                let part = match part {
                    Some(m) => m,
                    None => {
                        constructive_components += 1;
                        match class {
                            ApproxClass::CubicBipTstar => construct_t1(&c, false)?.matching,
                            _ => construct_t2(&c, delta, false)?.matching,
                        }
                    }
                };
                let full = map.compose(&cmap);
                edges.extend(part.edges().iter().map(|&(a, b)| (full.to_original(a), full.to_original(b))));
            }
            Matching::new(g, &edges).map_err(BoundError::from)?
        }
    };

    if !is_maximal(g, &matching).map_err(BoundError::from)? {
        return Err(BoundError::StructureAssertion("approximate matching is not maximal".into()).into());
    }
    let cap: Q = match class {
        ApproxClass::CubicBipTstar => t3_upper(g.n()),
        _ => t4_upper(delta, g.n()),
    };
    if Q::from_integer(matching.len() as i64) > cap {
        return Err(BoundError::StructureAssertion(format!("{} edges exceed {cap}", matching.len())).into());
    }

    let lower: Q = match class {
        ApproxClass::ClawfreeRegular => clawfree_lower(delta, g.n()),
        _ => regular_lower(delta, g.n()),
    };
    let lower_ceiling = lower.ceil().to_integer();
    let upper_size = matching.len();
    let certified = Q::new(upper_size as i64, lower_ceiling.max(1));
    let limit = class.limit(delta);
    let achieved = if certified > limit { certified - limit } else { Q::zero() };

    Ok(BoundCertificate {
        matching,
        upper_size,
        lower: lower.into(),
        lower_ceiling,
        certified_ratio: certified.into(),
        guaranteed_ratio: (limit + epsilon).into(),
        class_tag: class,
        epsilon: epsilon.into(),
        delta,
        n0,
        whole_graph_exact,
        exact_components,
        constructive_components,
        budget_hit,
        achieved_epsilon: achieved.into(),
    })
}
