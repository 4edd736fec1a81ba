//! Exhaustive ground truth on finite spaces.
//!
//! Every hypothesis of the coincidence theorem and the common fixed point
//! theorem is decided by scanning all points and pairs, and the conclusions
//! are compared against a direct enumeration of `C(g, f)`.

mod search;

use std::collections::BTreeSet;
use std::fmt;

use crate::check::{CheckResult, CheckSummary};
use crate::comparison::ComparisonFunction;
use crate::iterate::{jungck_iterate, IterateOptions, Outcome};
use crate::maps::TableMap;
use crate::pair::{
    check_alpha_admissible_wrt_g, check_contractive, check_range_inclusion, check_self_map, find_initial_point,
    Alpha, MappingPair, DEFAULT_SLACK,
};
use crate::spaces::{all_pairs, FiniteSpace};

pub use search::{
    falsification_search, falsification_trials, first_contradiction, FalsificationSummary, TrialConfig, MAX_SEARCH_SIZE,
};

pub type FinitePair = MappingPair<FiniteSpace, TableMap>;

/// Hypothesis names, in report order.
pub mod names {
    pub const SELF_MAP: &str = "self-map";
    pub const PSI: &str = "psi membership";
    pub const RANGE_INCLUSION: &str = "range inclusion";
    pub const RANGE_CLOSED: &str = "g(X) closed";
    pub const CONTRACTIVE: &str = "contractive";
    pub const ADMISSIBLE: &str = "admissible wrt g";
    pub const INITIAL_POINT: &str = "initial point";
    pub const CONDITION_III: &str = "condition (iii)";
    pub const UNIQUENESS: &str = "uniqueness hypothesis";
    pub const COMMUTING: &str = "commuting at coincidence";

    pub const COINCIDENCE_THEOREM: [&str; 8] =
        [SELF_MAP, PSI, RANGE_INCLUSION, RANGE_CLOSED, CONTRACTIVE, ADMISSIBLE, INITIAL_POINT, CONDITION_III];
    pub const FIXED_POINT_EXTRA: [&str; 2] = [UNIQUENESS, COMMUTING];
}

/// `C(g, f)`, its `g`-image, and the common fixed points, each ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoincidenceSets {
    pub coincidence_points: Vec<usize>,
    pub points_of_coincidence: Vec<usize>,
    pub common_fixed_points: Vec<usize>,
}

/// What the theorems guarantee under the hypotheses that passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    /// Coincidence-theorem hypotheses hold and `C(g, f)` is non-empty.
    CoincidencePoint,
    /// All hypotheses hold and there is exactly one common fixed point.
    UniqueCommonFixedPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    TheoremConfirmed(Conclusion),
    /// Names of the coincidence-theorem hypotheses that failed.
    HypothesesFailed(Vec<String>),
    /// Hypotheses hold but a conclusion does not. The text says which.
    Contradiction(String),
}

impl Verdict {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Verdict::Contradiction(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::TheoremConfirmed(Conclusion::CoincidencePoint) => write!(f, "TheoremConfirmed(coincidence point)"),
            Verdict::TheoremConfirmed(Conclusion::UniqueCommonFixedPoint) => {
                write!(f, "TheoremConfirmed(unique common fixed point)")
            }
            Verdict::HypothesesFailed(names) => write!(f, "HypothesesFailed({})", names.join(", ")),
            Verdict::Contradiction(why) => write!(f, "CONTRADICTION({why})"),
        }
    }
}

/// Result of running the iteration from the first admissible start.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationSummary {
    pub x0: usize,
    pub steps: usize,
    pub outcome: Outcome<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceReport {
    pub sets: CoincidenceSets,
    /// `(name, result)` in the order of [`names`].
    pub hypothesis_results: Vec<(String, CheckSummary)>,
    /// Whether every coincidence point has the same `g`-value.
    pub shared_point_of_coincidence: bool,
    pub iteration: Option<IterationSummary>,
    pub verdict: Verdict,
}

impl CoincidenceReport {
    pub fn hypothesis(&self, name: &str) -> Option<&CheckSummary> {
        self.hypothesis_results.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    fn all_pass(&self, list: &[&str]) -> bool {
        list.iter().all(|n| self.hypothesis(n).is_some_and(|s| s.passed))
    }

    pub fn coincidence_hypotheses_hold(&self) -> bool {
        self.all_pass(&names::COINCIDENCE_THEOREM)
    }

    pub fn fixed_point_hypotheses_hold(&self) -> bool {
        self.coincidence_hypotheses_hold() && self.all_pass(&names::FIXED_POINT_EXTRA)
    }
}

/// Exact enumeration by table scan.
pub fn enumerate_coincidence(pair: &FinitePair) -> CoincidenceSets {
    let n = pair.space().len();
    let coincidence_points: Vec<usize> = (0..n).filter(|&z| pair.fx(z) == pair.gx(z)).collect();
    let points_of_coincidence: BTreeSet<usize> = coincidence_points.iter().map(|&z| pair.gx(z)).collect();
    let common_fixed_points = coincidence_points.iter().copied().filter(|&z| pair.gx(z) == z).collect();
    CoincidenceSets {
        coincidence_points,
        points_of_coincidence: points_of_coincidence.into_iter().collect(),
        common_fixed_points,
    }
}

/// For all `u, v ∈ C(g, f)` some `w` has `α(gu, gw) ≥ 1` and `α(gv, gw) ≥ 1`.
/// `w` may be `u` or `v`. The witness is the first failing `(u, v)`.
pub fn check_uniqueness_hypothesis<A>(pair: &FinitePair, alpha: &A) -> CheckResult<(usize, usize)>
where
    A: Alpha<usize> + ?Sized,
{
    let c = enumerate_coincidence(pair).coincidence_points;
    let n = pair.space().len();
    let mut checked = 0;
    for &u in &c {
        for &v in &c {
            checked += 1;
            let hub = (0..n).any(|w| {
                let gw = pair.gx(w);
                alpha.at_least_one(pair.gx(u), gw) && alpha.at_least_one(pair.gx(v), gw)
            });
            if !hub {
                return CheckResult::fail((u, v), "no w with alpha(gu, gw) >= 1 and alpha(gv, gw) >= 1");
            }
        }
    }
    CheckResult::pass(checked)
}

/// `f(g z) = g(f z)` for every `z ∈ C(g, f)`.
pub fn check_commuting_at_coincidence(pair: &FinitePair) -> CheckResult<usize> {
    let c = enumerate_coincidence(pair).coincidence_points;
    for &z in &c {
        if pair.fx(pair.gx(z)) != pair.gx(pair.fx(z)) {
            return CheckResult::fail(z, "f(g z) differs from g(f z)");
        }
    }
    CheckResult::pass(c.len())
}

/// Condition (iii) on a finite space.
///
/// Consider the graph on `g(X)` with an edge `a → b` when `α(a, b) ≥ 1`. A
/// chain along edges converges only if it is eventually constant, so the
/// possible limits are the nodes `c` carrying a self-loop and the tail of such
/// a chain is the terminal cycle `[c]`. The condition asks that some node of
/// that terminal cycle satisfies `α(a, c) ≥ 1`. The witness is the terminal
/// cycle that fails.
pub fn check_condition_iii<A>(pair: &FinitePair, alpha: &A) -> CheckResult<Vec<usize>>
where
    A: Alpha<usize> + ?Sized,
{
    let range = pair.g().range();
    let mut checked = 0;
    for &c in &range {
        if !alpha.at_least_one(c, c) {
            continue;
        }
        checked += 1;
        let terminal_cycle = [c];
        if !terminal_cycle.iter().any(|&a| alpha.at_least_one(a, c)) {
            return CheckResult::fail(terminal_cycle.to_vec(), "no chain node a with alpha(a, gz) >= 1");
        }
    }
    CheckResult::pass(checked)
}

/// Positive values of `M` over all pairs, used to test ψ where it is applied.
fn m_samples(pair: &FinitePair) -> Vec<f64> {
    let mut samples: Vec<f64> = all_pairs(pair.space())
        .into_iter()
        .map(|(x, y)| pair.m_term(x, y))
        .filter(|&m| m > 0.0)
        .collect();
    samples.sort_by(f64::total_cmp);
    samples.dedup();
    samples
}

/// Runs every hypothesis check, enumerates the conclusion sets, iterates from
/// the first admissible start, and compares.
pub fn run_theorem_suite<A>(pair: &FinitePair, alpha: &A, psi: &ComparisonFunction) -> CoincidenceReport
where
    A: Alpha<usize> + ?Sized,
{
    let space = pair.space();
    let points: Vec<usize> = (0..space.len()).collect();
    let pairs = all_pairs(space);
    let initial = find_initial_point(pair, alpha, &points);

    let mut results: Vec<(String, CheckSummary)> = Vec::new();
    let mut record = |name: &str, summary: CheckSummary| results.push((name.to_string(), summary));
    record(names::SELF_MAP, check_self_map(pair, &points).summarize());
    record(names::PSI, psi.check_membership(&m_samples(pair)).summarize());
    record(names::RANGE_INCLUSION, check_range_inclusion(pair, &points).summarize());
    record(names::RANGE_CLOSED, CheckSummary::assumed("every subset of a finite space is closed"));
    record(names::CONTRACTIVE, check_contractive(pair, alpha, psi, &pairs, DEFAULT_SLACK).summarize());
    record(names::ADMISSIBLE, check_alpha_admissible_wrt_g(pair, alpha, &pairs).summarize());
    record(
        names::INITIAL_POINT,
        match initial {
            Some(x0) => CheckResult::<usize>::pass(x0 + 1).summarize(),
            None => CheckResult::fail((), "no x0 with alpha(g x0, f x0) >= 1").summarize(),
        },
    );
    record(names::CONDITION_III, check_condition_iii(pair, alpha).summarize());
    record(names::UNIQUENESS, check_uniqueness_hypothesis(pair, alpha).summarize());
    record(names::COMMUTING, check_commuting_at_coincidence(pair).summarize());

    let sets = enumerate_coincidence(pair);
    let shared_point_of_coincidence = sets.points_of_coincidence.len() <= 1;
    let mut report = CoincidenceReport {
        sets,
        hypothesis_results: results,
        shared_point_of_coincidence,
        iteration: None,
        verdict: Verdict::HypothesesFailed(Vec::new()),
    };

    if !report.coincidence_hypotheses_hold() {
        let failed = report
            .hypothesis_results
            .iter()
            .filter(|(n, s)| !s.passed && names::COINCIDENCE_THEOREM.contains(&n.as_str()))
            .map(|(n, _)| n.clone())
            .collect();
        report.verdict = Verdict::HypothesesFailed(failed);
        return report;
    }

    let x0 = initial.expect("initial point hypothesis passed");
    let opts = IterateOptions::default();
    if let Ok(trace) = jungck_iterate(pair, alpha, psi, x0, &opts) {
        report.iteration = Some(IterationSummary { x0, steps: trace.steps(), outcome: trace.outcome });
    }

    report.verdict = if report.sets.coincidence_points.is_empty() {
        Verdict::Contradiction("no coincidence point".into())
    } else if let Some(why) = iteration_disagreement(&report) {
        Verdict::Contradiction(why)
    } else if !report.fixed_point_hypotheses_hold() {
        Verdict::TheoremConfirmed(Conclusion::CoincidencePoint)
    } else if !report.shared_point_of_coincidence {
        Verdict::Contradiction("coincidence points with different g-values".into())
    } else if report.sets.common_fixed_points.len() != 1 {
        Verdict::Contradiction(format!("{} common fixed points", report.sets.common_fixed_points.len()))
    } else {
        Verdict::TheoremConfirmed(Conclusion::UniqueCommonFixedPoint)
    };
    report
}

fn iteration_disagreement(report: &CoincidenceReport) -> Option<String> {
    match &report.iteration {
        None => Some("iteration rejected an admissible start".into()),
        Some(it) => match it.outcome {
            Outcome::CoincidenceFound(z) if report.sets.coincidence_points.contains(&z) => None,
            Outcome::CoincidenceFound(z) => Some(format!("iteration stopped at {z}, not a coincidence point")),
            Outcome::MaxIterations => Some("iteration did not reach a coincidence point".into()),
            Outcome::PreimageFailure => Some("iteration lost its preimage".into()),
        },
    }
}
