use std::fs;
use std::path::Path;

use edgedom::approx::{approx_mmm, ApproxClass, ApproxError};
use edgedom::bounds::{
    construct_t1, construct_t2, construct_t3, construct_t4, upper_bound, BoundError, Construction, RationalBound,
    ReductionTrace, UpperKind,
};
use edgedom::generators::{generate, Family, GenError, GenSpec};
use edgedom::matching::{exact_min_maximal, uncovered_edge, Matching, MatchingError};
use edgedom::structure::classify;
use edgedom::Graph;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

/// Failure with its exit code; printed as JSON on stderr.
#[derive(Debug, Serialize)]
pub struct CliError {
    #[serde(skip)]
    pub code: i32,
    pub error: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

impl CliError {
    pub fn new(code: i32, error: &'static str, message: impl Into<String>) -> Self {
        CliError { code, error, message: message.into(), witness: None }
    }

    fn with_witness(mut self, w: Option<&[usize]>) -> Self {
        self.witness = w.map(|w| w.iter().map(|v| v + 1).collect());
        self
    }
}

impl From<BoundError> for CliError {
    fn from(e: BoundError) -> Self {
        let w = e.witness().map(<[usize]>::to_vec);
        let kind = match e {
            BoundError::Precondition { .. } | BoundError::DeltaTooSmall(_) => "precondition",
            _ => "internal",
        };
        CliError::new(EXIT_PRECONDITION, kind, e.to_string()).with_witness(w.as_deref())
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::Bound(b) => b.into(),
            ApproxError::ClassMismatch { ref witness, .. } => {
                let w = witness.clone();
                CliError::new(EXIT_PRECONDITION, "precondition", e.to_string()).with_witness(w.as_deref())
            }
            _ => CliError::new(EXIT_PRECONDITION, "precondition", e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::new(EXIT_PRECONDITION, "parameters", e.to_string())
    }
}

/// Output of a command: JSON payload or raw text (graph files), plus the
/// exit code to use after printing it.
pub struct Outcome {
    pub payload: Payload,
    pub code: i32,
}

pub enum Payload {
    Json(Value),
    Text(String),
}

impl Outcome {
    fn json(v: impl Serialize) -> Result<Self, CliError> {
        Ok(Outcome { payload: Payload::Json(serde_json::to_value(v).expect("serializable")), code: 0 })
    }
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::new(EXIT_PARSE, "io", format!("{}: {e}", path.display())))
}

pub fn parse_graph(text: &str) -> Result<Graph, CliError> {
    Graph::parse(text).map_err(|e| CliError::new(EXIT_PARSE, "parse", e.to_string()))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::new(EXIT_PRECONDITION, "io", format!("{}: {e}", path.display())))
}

pub fn family_from_name(name: &str) -> Option<Family> {
    Some(match name {
        "complete" => Family::Complete,
        "complete-bipartite" => Family::CompleteBipartite,
        "kdd-minus-e" => Family::KddMinusE,
        "chain" | "extremal-chain" => Family::ExtremalChain,
        "complete-minus-pm" => Family::CompleteMinusPm,
        "random-regular" => Family::RandomRegular,
        "random-subcubic-bip-tstar" => Family::RandomSubcubicBipTstar,
        _ => return None,
    })
}

pub fn gen(spec: &GenSpec, out: Option<&Path>) -> Result<Outcome, CliError> {
    let g = generate(spec)?;
    let text = g.serialize();
    match out {
        Some(path) => {
            write_file(path, &text)?;
            Outcome::json(json!({ "out": path.display().to_string(), "n": g.n(), "m": g.m() }))
        }
        None => Ok(Outcome { payload: Payload::Text(text), code: 0 }),
    }
}

pub fn check(g: &Graph) -> Result<Outcome, CliError> {
    Outcome::json(classify(g))
}

#[derive(Serialize)]
struct BoundReport {
    theorem: UpperKind,
    n: usize,
    m: usize,
    delta: usize,
    bound: RationalBound,
    matching_size: usize,
    matching: Vec<[usize; 2]>,
    trace: ReductionTrace,
    bound_holds: bool,
}

pub fn bound(
    g: &Graph,
    theorem: UpperKind,
    delta: Option<usize>,
    verify: bool,
    budget: u64,
    matching_out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let delta = match theorem {
        UpperKind::T1 | UpperKind::T3 => 3,
        UpperKind::T2 => delta.unwrap_or_else(|| g.max_degree()),
        UpperKind::T4 | UpperKind::Conj => delta.unwrap_or_else(|| g.max_degree()),
    };
    if matches!(theorem, UpperKind::T4 | UpperKind::Conj) && verify && g.regular_degree() != Some(delta) {
        return Err(CliError::new(EXIT_PRECONDITION, "precondition", format!("graph is not {delta}-regular")));
    }
    let value = upper_bound(theorem, delta, g.n(), g.m())?;
    let mut code = 0;
    let Construction { matching, trace } = match theorem {
        UpperKind::T1 => construct_t1(g, verify)?,
        UpperKind::T2 => construct_t2(g, delta, verify)?,
        UpperKind::T3 => construct_t3(g, verify)?,
        UpperKind::T4 => construct_t4(g, verify)?,
        UpperKind::Conj => {
            // no construction is known; report the exact optimum instead
            if verify && !g.is_connected() {
                return Err(CliError::new(EXIT_PRECONDITION, "precondition", "graph is not connected"));
            }
            let r = exact_min_maximal(g, budget);
            if r.budget_hit {
                code = EXIT_BUDGET;
            }
            Construction { matching: r.witness, trace: ReductionTrace::default() }
        }
    };
    if let Some(path) = matching_out {
        write_file(path, &matching.serialize())?;
    }
    let report = BoundReport {
        theorem,
        n: g.n(),
        m: g.m(),
        delta,
        bound: value,
        matching_size: matching.len(),
        matching: matching.to_one_based(),
        trace,
        bound_holds: value.admits(matching.len()),
    };
    Ok(Outcome { code, ..Outcome::json(report)? })
}

pub fn solve(g: &Graph, budget: u64) -> Result<Outcome, CliError> {
    let r = exact_min_maximal(g, budget);
    let payload = json!({
        "n": g.n(),
        "m": g.m(),
        "gamma_e": r.gamma_e,
        "matching": r.witness.to_one_based(),
        "nodes_explored": r.nodes_explored,
        "budget_hit": r.budget_hit,
    });
    Ok(Outcome { payload: Payload::Json(payload), code: if r.budget_hit { EXIT_BUDGET } else { 0 } })
}

pub fn approx(g: &Graph, class: ApproxClass, eps: RationalBound, budget: u64) -> Result<Outcome, CliError> {
    Outcome::json(approx_mmm(g, class, eps.value(), budget)?)
}

pub fn verify(g: &Graph, matching_text: &str, bound: Option<RationalBound>) -> Result<Outcome, CliError> {
    let m = match Matching::parse(g, matching_text) {
        Ok(m) => m,
        Err(MatchingError::Parse { line, msg }) => {
            return Err(CliError::new(EXIT_PARSE, "parse", format!("matching line {line}: {msg}")))
        }
        Err(e) => {
            return Outcome::json(json!({ "valid": false, "reason": e.to_string() }));
        }
    };
    let uncovered = uncovered_edge(g, &m).expect("matching checked against g");
    let mut payload = json!({
        "valid": true,
        "size": m.len(),
        "maximal": uncovered.is_none(),
        "uncovered_edge": uncovered.map(|(a, b)| [a + 1, b + 1]),
    });
    if let Some(b) = bound {
        payload["bound"] = json!(b);
        payload["within_bound"] = json!(b.admits(m.len()));
    }
    Ok(Outcome { payload: Payload::Json(payload), code: 0 })
}
