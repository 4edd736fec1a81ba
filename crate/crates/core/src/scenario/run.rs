use std::path::Path;

use crate::adapters::{
    alpha_from_cyclic, alpha_from_cyclic_interval, alpha_from_order, check_cyclic_conditions,
    check_cyclic_conditions_interval, check_direct_form, check_dominance, check_g_nondecreasing, check_g_regular,
    check_upper_bound_hypothesis, reduce_corollary, CyclicConditions, Reduction,
};
use crate::check::{CheckResult, CheckSummary};
use crate::comparison::ComparisonFunction;
use crate::iterate::{
    jungck_iterate, verify_alpha_chain, verify_cauchy_certificate, verify_jungck_relation, verify_step_bounds,
    IterateOptions, Outcome,
};
use crate::maps::{RealMap, SelfMap, TableMap};
use crate::oracle::{
    check_commuting_at_coincidence, check_condition_iii, check_uniqueness_hypothesis, falsification_trials,
    run_theorem_suite, FalsificationSummary, Verdict,
};
use crate::pair::{
    check_alpha_admissible, check_alpha_admissible_wrt_g, check_contractive, check_initial_point,
    check_range_inclusion, check_self_map, find_initial_point, Alpha, AlphaMatrix, ConstAlpha, MappingPair,
    RealAlpha, Sampling, PREIMAGE_TOL,
};
use crate::spaces::{all_pairs, CyclicPartition, FiniteOrder, IntervalSpace, MetricSpace, StandardOrder};

use super::document::fmt_number;
use super::{AlphaSpec, MapSpec, Mode, OrderSpec, PartitionSpec, Report, Scenario, ScenarioError, SpaceSpec};

/// Process exit status of a scenario run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    CheckFailed = 1,
    InputError = 2,
    Contradiction = 3,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// Names accepted by `checks =` in `[run]`.
pub const CHECK_NAMES: [&str; 19] = [
    "self-map",
    "psi",
    "range-inclusion",
    "range-closed",
    "contractive",
    "admissible-wrt-g",
    "initial-point",
    "condition-iii",
    "uniqueness",
    "commuting",
    "admissible",
    "g-nondecreasing",
    "g-regular",
    "upper-bound",
    "cyclic-closed",
    "cyclic-inclusions",
    "cyclic-injective",
    "direct-form",
    "dominance",
];

/// Checks that run when a scenario does not list its own. Plain
/// admissibility is not a hypothesis of the theorems and runs only on request.
fn default_check(name: &str) -> bool {
    name != "admissible"
}

const PSI_SAMPLE_LIMIT: usize = 200;

pub fn run_scenario(path: &Path, seed: Option<u64>) -> (ExitCode, Report) {
    match std::fs::read_to_string(path) {
        Ok(text) => run_scenario_text(&text, seed),
        Err(e) => error_report(ScenarioError::Io { path: path.display().to_string(), message: e.to_string() }),
    }
}

/// Parses and runs a scenario. `seed` overrides the file's seed.
pub fn run_scenario_text(text: &str, seed: Option<u64>) -> (ExitCode, Report) {
    let mut scenario = match Scenario::parse(text) {
        Ok(s) => s,
        Err(e) => return error_report(e),
    };
    if let Some(seed) = seed {
        scenario.run.seed = seed;
    }
    let mut report = Report::default();
    report.push("scenario", scenario.run.name.as_deref().unwrap_or("unnamed"));
    report.push("mode", scenario.run.mode.as_str());
    match execute(&scenario, &mut report) {
        Ok(code) => {
            report.header.insert(2, ("exit".into(), code.code().to_string()));
            (code, report)
        }
        Err(e) => {
            let (code, mut err) = error_report(e);
            err.header.splice(0..0, report.header.into_iter().take(2));
            (code, err)
        }
    }
}

fn error_report(e: ScenarioError) -> (ExitCode, Report) {
    let mut r = Report::default();
    r.push("exit", ExitCode::InputError.code());
    r.push("error", e);
    (ExitCode::InputError, r)
}

fn execute(s: &Scenario, report: &mut Report) -> Result<ExitCode, ScenarioError> {
    if s.run.mode == Mode::Falsify {
        return Ok(falsify(s, report));
    }
    let reduction = s
        .corollary
        .as_ref()
        .map(|c| reduce_corollary(c.config(s.psi.as_ref())?).map_err(|e| ScenarioError::Invalid(e.to_string())))
        .transpose()?;
    let psi = match &reduction {
        Some(r) => r.psi.clone(),
        None => s.psi.clone().expect("validated"),
    };
    match s.space.as_ref().expect("validated") {
        SpaceSpec::Interval { lo, hi } => {
            let ctx = interval_context(s, *lo, *hi, reduction, psi)?;
            match s.run.mode {
                Mode::Check => Ok(check_interval(s, &ctx, report)),
                Mode::Iterate => iterate(s, &ctx.pair, ctx.alpha.as_ref(), &ctx.psi, s.run.x0.expect("validated"), &fmt_number, report),
                Mode::Oracle => Err(ScenarioError::NotFinite("oracle".into())),
                Mode::Falsify => unreachable!(),
            }
        }
        SpaceSpec::Finite { .. } => {
            let ctx = finite_context(s, reduction, psi)?;
            let labels = ctx.pair.space().labels().to_vec();
            let fmt = move |i: usize| labels[i].clone();
            match s.run.mode {
                Mode::Check => Ok(check_finite(s, &ctx, report)),
                Mode::Iterate => {
                    let x0 = finite_index(s.run.x0.expect("validated"), ctx.pair.space().len())?;
                    iterate(s, &ctx.pair, ctx.alpha.as_ref(), &ctx.psi, x0, &fmt, report)
                }
                Mode::Oracle => Ok(oracle(&ctx, &fmt, report)),
                Mode::Falsify => unreachable!(),
            }
        }
    }
}

fn finite_index(x: f64, n: usize) -> Result<usize, ScenarioError> {
    if x >= 0.0 && x.fract() == 0.0 && (x as usize) < n {
        Ok(x as usize)
    } else {
        Err(ScenarioError::Invalid(format!("x0 = {x} is not a point index below {n}")))
    }
}

struct Context<S: MetricSpace, M, R> {
    pair: MappingPair<S, M>,
    alpha: Box<dyn Alpha<S::Point>>,
    psi: ComparisonFunction,
    reduction: Option<Reduction>,
    order: Option<R>,
}

type IntervalContext = Context<IntervalSpace, RealMap, ()>;
type FiniteContext = Context<crate::spaces::FiniteSpace, TableMap, FiniteOrder>;

fn real(map: &MapSpec) -> RealMap {
    match map {
        MapSpec::Real(m) => m.clone(),
        MapSpec::Table(_) => unreachable!("validated"),
    }
}

fn table(map: &MapSpec) -> TableMap {
    match map {
        MapSpec::Table(t) => t.clone(),
        MapSpec::Real(_) => unreachable!("validated"),
    }
}

fn interval_context(
    s: &Scenario,
    lo: f64,
    hi: f64,
    reduction: Option<Reduction>,
    psi: ComparisonFunction,
) -> Result<IntervalContext, ScenarioError> {
    let space = IntervalSpace::new(lo, hi).map_err(|e| ScenarioError::Invalid(e.to_string()))?;
    let p = s.pair.as_ref().expect("validated");
    let pair = MappingPair::interval(space, real(&p.f), real(&p.g), real(p.g_inverse.as_ref().expect("validated")));
    if matches!(s.order, Some(OrderSpec::Matrix(_)) | Some(OrderSpec::Covers(_))) {
        return Err(ScenarioError::Invalid("interval spaces take 'form = standard-leq' orders".into()));
    }
    if matches!(s.partition, Some(PartitionSpec::Sets(..))) {
        return Err(ScenarioError::Invalid("interval spaces take 'interval lo hi' partition sets".into()));
    }
    let alpha: Box<dyn Alpha<f64>> = match (&reduction, &s.alpha) {
        (Some(r), _) => Box::new(r.alpha),
        (None, Some(AlphaSpec::Real(a))) => Box::new(a.clone()),
        (None, Some(AlphaSpec::Matrix(_))) => {
            return Err(ScenarioError::Invalid("alpha matrices need a finite space".into()))
        }
        (None, Some(AlphaSpec::Order)) => Box::new(alpha_from_order(StandardOrder)),
        (None, Some(AlphaSpec::Cyclic)) => {
            let Some(PartitionSpec::Intervals(a1, a2)) = &s.partition else { unreachable!("validated") };
            let part = CyclicPartition::interval(*a1, *a2);
            Box::new(alpha_from_cyclic_interval(&part, pair.g()).map_err(|e| ScenarioError::Invalid(e.to_string()))?)
        }
        (None, None) => unreachable!("validated"),
    };
    Ok(Context { pair, alpha, psi, reduction, order: None })
}

fn finite_context(s: &Scenario, reduction: Option<Reduction>, psi: ComparisonFunction) -> Result<FiniteContext, ScenarioError> {
    let space = s.space.as_ref().and_then(|sp| sp.finite_space()).expect("validated")?;
    let n = space.len();
    let p = s.pair.as_ref().expect("validated");
    let pair = MappingPair::finite(space, table(&p.f), table(&p.g)).map_err(|e| ScenarioError::Invalid(e.to_string()))?;
    let order = match &s.order {
        None => None,
        Some(OrderSpec::Standard) => {
            return Err(ScenarioError::Invalid("finite spaces take 'matrix' or 'covers' orders".into()))
        }
        Some(OrderSpec::Matrix(m)) => {
            if m.len() != n {
                return Err(ScenarioError::Invalid(format!("order matrix has {} rows, the space has {n} points", m.len())));
            }
            Some(FiniteOrder::from_matrix(m.clone()).map_err(|e| ScenarioError::Invalid(e.to_string()))?)
        }
        Some(OrderSpec::Covers(c)) => Some(FiniteOrder::from_covers(n, c).map_err(|e| ScenarioError::Invalid(e.to_string()))?),
    };
    if matches!(s.partition, Some(PartitionSpec::Intervals(..))) {
        return Err(ScenarioError::Invalid("finite spaces take 'set i j ...' partition sets".into()));
    }
    let alpha: Box<dyn Alpha<usize>> = match (&reduction, &s.alpha) {
        (Some(r), _) => Box::new(r.alpha),
        (None, Some(AlphaSpec::Real(RealAlpha::Constant(c)))) => Box::new(ConstAlpha(*c)),
        (None, Some(AlphaSpec::Real(_))) => {
            return Err(ScenarioError::Invalid("finite spaces take 'constant' or 'matrix' alpha forms".into()))
        }
        (None, Some(AlphaSpec::Matrix(m))) => {
            if m.len() != n {
                return Err(ScenarioError::Invalid(format!("alpha matrix has {} rows, the space has {n} points", m.len())));
            }
            Box::new(AlphaMatrix(m.clone()))
        }
        (None, Some(AlphaSpec::Order)) => Box::new(alpha_from_order(order.clone().expect("validated"))),
        (None, Some(AlphaSpec::Cyclic)) => {
            let part = finite_partition(s, n)?.expect("validated");
            Box::new(alpha_from_cyclic(&part, pair.g()))
        }
        (None, None) => unreachable!("validated"),
    };
    Ok(Context { pair, alpha, psi, reduction, order })
}

fn finite_partition(s: &Scenario, n: usize) -> Result<Option<CyclicPartition<crate::spaces::IndexSet>>, ScenarioError> {
    match &s.partition {
        Some(PartitionSpec::Sets(a1, a2)) => Ok(Some(
            CyclicPartition::finite(a1.clone(), a2.clone(), n).map_err(|e| ScenarioError::Invalid(e.to_string()))?,
        )),
        _ => Ok(None),
    }
}

/// Named check results in run order.
struct Checks {
    wanted: Vec<String>,
    results: Vec<(String, CheckSummary)>,
}

impl Checks {
    fn new(s: &Scenario) -> Self {
        Checks { wanted: s.run.checks.clone(), results: Vec::new() }
    }

    fn wants(&self, name: &str) -> bool {
        if self.wanted.is_empty() {
            default_check(name)
        } else {
            self.wanted.iter().any(|w| w == name)
        }
    }

    fn run(&mut self, name: &str, f: impl FnOnce() -> CheckSummary) {
        if self.wants(name) {
            self.results.push((name.to_string(), f()));
        }
    }

    fn finish(self, report: &mut Report) -> ExitCode {
        let passed = self.results.iter().filter(|(_, r)| r.passed).count();
        report.push("checks passed", format!("{passed}/{}", self.results.len()));
        report.push("status", if passed == self.results.len() { "pass" } else { "fail" });
        report.set_columns(&["check", "result", "checked", "detail"]);
        for (name, r) in &self.results {
            report.rows.push(vec![
                name.clone(),
                if r.passed { "pass" } else { "fail" }.to_string(),
                r.checked.to_string(),
                r.detail.clone(),
            ]);
        }
        if passed == self.results.len() {
            ExitCode::Ok
        } else {
            ExitCode::CheckFailed
        }
    }
}

/// Positive values of `M(gx, gy)` over the pairs, thinned to a geometric
/// grid when there are many.
fn psi_samples<S: MetricSpace, M: SelfMap<S::Point>>(pair: &MappingPair<S, M>, pairs: &[(S::Point, S::Point)]) -> Vec<f64> {
    let mut ms: Vec<f64> = pairs.iter().map(|&(x, y)| pair.m_term(x, y)).filter(|m| *m > 0.0 && m.is_finite()).collect();
    ms.sort_by(f64::total_cmp);
    ms.dedup();
    if ms.len() <= PSI_SAMPLE_LIMIT {
        return ms;
    }
    let (lo, hi) = (ms[0], ms[ms.len() - 1]);
    let ratio = (hi / lo).powf(1.0 / (PSI_SAMPLE_LIMIT - 1) as f64);
    (0..PSI_SAMPLE_LIMIT).map(|k| lo * ratio.powi(k as i32)).collect()
}

#[allow(clippy::too_many_arguments)]
fn common_checks<S, M, R>(
    s: &Scenario,
    ctx: &Context<S, M, R>,
    points: &[S::Point],
    pairs: &[(S::Point, S::Point)],
    x0: Option<S::Point>,
    fmt: &dyn Fn(S::Point) -> String,
    checks: &mut Checks,
) where
    S: MetricSpace,
    M: SelfMap<S::Point>,
{
    let (pair, alpha, psi) = (&ctx.pair, ctx.alpha.as_ref(), &ctx.psi);
    let pt = |w: (S::Point, S::Point)| format!("({}, {})", fmt(w.0), fmt(w.1));
    checks.run("self-map", || check_self_map(pair, points).map_witness(fmt).describe());
    checks.run("psi", || psi.check_membership(&psi_samples(pair, pairs)).summarize());
    checks.run("range-inclusion", || check_range_inclusion(pair, points).map_witness(fmt).describe());
    checks.run("contractive", || check_contractive(pair, alpha, psi, pairs, s.run.slack).map_witness(pt).describe());
    checks.run("admissible-wrt-g", || check_alpha_admissible_wrt_g(pair, alpha, pairs).map_witness(pt).describe());
    checks.run("admissible", || check_alpha_admissible(pair.f(), alpha, pairs).map_witness(pt).describe());
    checks.run("initial-point", || match x0 {
        Some(x) => match check_initial_point(pair, alpha, x) {
            Ok(true) => CheckResult::<()>::pass(1).summarize().with_detail(format!("x0 = {}", fmt(x))),
            Ok(false) => CheckResult::fail(fmt(x), "alpha(g x0, f x0) < 1").describe(),
            Err(e) => CheckResult::fail(fmt(x), e.to_string()).describe(),
        },
        None => match find_initial_point(pair, alpha, points) {
            Some(x) => CheckResult::<()>::pass(1).summarize().with_detail(format!("x0 = {}", fmt(x))),
            None => CheckResult::fail(String::new(), "no sampled x0 with alpha(g x0, f x0) >= 1").describe(),
        },
    });
    if let Some(r) = &ctx.reduction {
        checks.run("direct-form", || check_direct_form(pair, r, pairs, s.run.slack).map_witness(pt).describe());
    }
}

fn cyclic_rows(c: CyclicConditions, checks: &mut Checks) {
    checks.run("cyclic-closed", || c.images_closed.clone());
    checks.run("cyclic-inclusions", || c.inclusions.clone());
    checks.run("cyclic-injective", || c.injective.clone());
}

fn sampling(s: &Scenario, space: &IntervalSpace) -> Result<Sampling, ScenarioError> {
    let bound = |given: Option<f64>, fallback: f64, key: &str| match given {
        Some(v) => Ok(v),
        None if fallback.is_finite() => Ok(fallback),
        None => Err(ScenarioError::Invalid(format!("'{key}' is needed in [run] for an unbounded space"))),
    };
    let lo = bound(s.run.sample_lo, space.lo(), "sample_lo")?;
    let hi = bound(s.run.sample_hi, space.hi(), "sample_hi")?;
    if !(lo <= hi) {
        return Err(ScenarioError::Invalid("sample_lo must not exceed sample_hi".into()));
    }
    Ok(Sampling { lo, hi, step: s.run.sample_step, random_pairs: s.run.sample_random, seed: s.run.seed })
}

fn check_interval(s: &Scenario, ctx: &IntervalContext, report: &mut Report) -> ExitCode {
    let sampling = match sampling(s, ctx.pair.space()) {
        Ok(v) => v,
        Err(e) => return input_error(report, e),
    };
    let (points, pairs) = (sampling.points(), sampling.pairs());
    report.push("samples", format!("{} points, {} pairs in [{}, {}], seed {}", points.len(), pairs.len(), fmt_number(sampling.lo), fmt_number(sampling.hi), sampling.seed));
    let mut checks = Checks::new(s);
    common_checks(s, ctx, &points, &pairs, s.run.x0, &fmt_number, &mut checks);
    let space = ctx.pair.space();
    checks.run("range-closed", || match ctx.pair.g().image(space.lo(), space.hi()) {
        Some(img) if img.is_closed() => CheckResult::<()>::pass(1)
            .summarize()
            .with_detail(format!("g(X) = [{}, {}]", fmt_number(img.lo), fmt_number(img.hi))),
        Some(img) => CheckResult::fail(
            String::new(),
            format!("g(X) has an open end: ({}, {})", fmt_number(img.lo), fmt_number(img.hi)),
        )
        .describe(),
        None => CheckSummary::assumed("closedness of g(X) is not decided for this map"),
    });
    checks.run("condition-iii", || CheckSummary::assumed("limit condition on real spaces"));
    if s.order.is_some() {
        let pt = |w: (f64, f64)| format!("({}, {})", fmt_number(w.0), fmt_number(w.1));
        checks.run("g-nondecreasing", || check_g_nondecreasing(&ctx.pair, &StandardOrder, &pairs).map_witness(pt).describe());
        checks.run("g-regular", || CheckSummary::assumed("g-regularity on real spaces"));
    }
    if let Some(PartitionSpec::Intervals(a1, a2)) = &s.partition {
        let part = CyclicPartition::interval(*a1, *a2);
        let per_set = Sampling { step: s.run.sample_step, ..sampling.clone() };
        cyclic_rows(check_cyclic_conditions_interval(&ctx.pair, &part, &per_set), &mut checks);
    }
    if let Some(r) = &ctx.reduction {
        checks.run("dominance", || {
            let quads: Vec<[f64; 4]> = pairs
                .iter()
                .map(|&(x, y)| [ctx.pair.gx(x), ctx.pair.gx(y), ctx.pair.fx(x), ctx.pair.fx(y)])
                .collect();
            check_dominance(r, &quads, s.run.slack).map_witness(|q| format!("{q:?}")).describe()
        });
    }
    checks.finish(report)
}

fn check_finite(s: &Scenario, ctx: &FiniteContext, report: &mut Report) -> ExitCode {
    let space = ctx.pair.space();
    let points: Vec<usize> = (0..space.len()).collect();
    let pairs = all_pairs(space);
    let labels = space.labels();
    let fmt = |i: usize| labels[i].clone();
    let pt = |w: (usize, usize)| format!("({}, {})", labels[w.0], labels[w.1]);
    let x0 = match s.run.x0.map(|x| finite_index(x, space.len())).transpose() {
        Ok(v) => v,
        Err(e) => return input_error(report, e),
    };
    report.push("samples", format!("exhaustive over {} points", space.len()));
    let mut checks = Checks::new(s);
    common_checks(s, ctx, &points, &pairs, x0, &fmt, &mut checks);
    let alpha = ctx.alpha.as_ref();
    checks.run("range-closed", || CheckSummary::assumed("every subset of a finite space is closed"));
    checks.run("condition-iii", || check_condition_iii(&ctx.pair, alpha).summarize());
    checks.run("uniqueness", || check_uniqueness_hypothesis(&ctx.pair, alpha).map_witness(pt).describe());
    checks.run("commuting", || check_commuting_at_coincidence(&ctx.pair).map_witness(fmt).describe());
    if let Some(order) = &ctx.order {
        checks.run("g-nondecreasing", || check_g_nondecreasing(&ctx.pair, order, &pairs).map_witness(pt).describe());
        checks.run("g-regular", || check_g_regular(&ctx.pair, order).summarize());
        checks.run("upper-bound", || check_upper_bound_hypothesis(&ctx.pair, order).map_witness(pt).describe());
    }
    if let Some(r) = &ctx.reduction {
        checks.run("dominance", || {
            let implied = |&(x, y): &(usize, usize)| {
                !check_direct_form(&ctx.pair, r, &[(x, y)], s.run.slack).passed()
                    || check_contractive(&ctx.pair, alpha, &ctx.psi, &[(x, y)], s.run.slack).passed()
            };
            match pairs.iter().find(|p| !implied(p)) {
                None => CheckResult::<()>::pass(pairs.len()).summarize(),
                Some(&w) => CheckResult::fail(pt(w), "direct form holds but the generalized form fails").describe(),
            }
        });
    }
    match finite_partition(s, space.len()) {
        Ok(Some(part)) => cyclic_rows(check_cyclic_conditions(&ctx.pair, &part), &mut checks),
        Ok(None) => {}
        Err(e) => return input_error(report, e),
    }
    checks.finish(report)
}

fn input_error(report: &mut Report, e: ScenarioError) -> ExitCode {
    report.push("error", e);
    ExitCode::InputError
}

fn iterate<S, M>(
    s: &Scenario,
    pair: &MappingPair<S, M>,
    alpha: &dyn Alpha<S::Point>,
    psi: &ComparisonFunction,
    x0: S::Point,
    fmt: &dyn Fn(S::Point) -> String,
    report: &mut Report,
) -> Result<ExitCode, ScenarioError>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
{
    let opts = IterateOptions { tol: s.run.tol, max_iter: s.run.max_iter, ..Default::default() };
    report.push("x0", fmt(x0));
    report.push("tol", fmt_number(opts.tol));
    report.push("max_iter", opts.max_iter);
    let trace = match jungck_iterate(pair, alpha, psi, x0, &opts) {
        Ok(t) => t,
        Err(crate::iterate::IterateError::InitialPointRejected) => {
            report.push("outcome", "InitialPointRejected");
            return Ok(ExitCode::CheckFailed);
        }
        Err(e) => return Err(ScenarioError::Invalid(e.to_string())),
    };
    let space = pair.space();
    let outcome = match trace.outcome {
        Outcome::CoincidenceFound(z) => {
            report.push("outcome", "CoincidenceFound");
            report.push("z", fmt(z));
            report.push("f(z)", fmt(pair.fx(z)));
            report.push("g(z)", fmt(pair.gx(z)));
            report.push("d(f(z), g(z))", fmt_number(space.metric(pair.fx(z), pair.gx(z))));
            report.push("common fixed point", if space.coincide(z, pair.gx(z), opts.tol) { "yes" } else { "no" });
            true
        }
        Outcome::MaxIterations => {
            report.push("outcome", "MaxIterations");
            false
        }
        Outcome::PreimageFailure => {
            report.push("outcome", "PreimageFailure");
            false
        }
    };
    report.push("steps", trace.steps());
    let certificate = verify_cauchy_certificate(space, &trace, psi).map_err(|e| ScenarioError::Invalid(e.to_string()))?;
    let verdicts = [
        ("jungck relation", verify_jungck_relation(space, &trace, PREIMAGE_TOL.max(opts.tol * 1e-3)).summarize()),
        ("alpha chain", verify_alpha_chain(&trace).summarize()),
        ("step bounds", verify_step_bounds(&trace, psi).summarize()),
        ("cauchy certificate", certificate.map_witness(|(n, m)| format!("(n={n}, m={m})")).describe()),
    ];
    for (name, v) in &verdicts {
        report.push(*name, v);
    }
    report.set_columns(&["n", "x", "gx", "fx", "step", "alpha", "bound"]);
    let opt = |v: Option<f64>| v.map(fmt_number).unwrap_or_default();
    for row in trace.rows() {
        report.rows.push(vec![
            row.n.to_string(),
            fmt(row.x),
            fmt(row.gx),
            fmt(row.fx),
            opt(row.step),
            opt(row.alpha),
            opt(row.bound),
        ]);
    }
    Ok(if outcome && verdicts.iter().all(|(_, v)| v.passed) { ExitCode::Ok } else { ExitCode::CheckFailed })
}

fn oracle(ctx: &FiniteContext, fmt: &dyn Fn(usize) -> String, report: &mut Report) -> ExitCode {
    let r = run_theorem_suite(&ctx.pair, ctx.alpha.as_ref(), &ctx.psi);
    let list = |xs: &[usize]| format!("{{{}}}", xs.iter().map(|&x| fmt(x)).collect::<Vec<_>>().join(", "));
    report.push("verdict", &r.verdict);
    report.push("coincidence points", list(&r.sets.coincidence_points));
    report.push("points of coincidence", list(&r.sets.points_of_coincidence));
    report.push("common fixed points", list(&r.sets.common_fixed_points));
    if let Some(it) = &r.iteration {
        let outcome = match it.outcome {
            Outcome::CoincidenceFound(z) => format!("CoincidenceFound({})", fmt(z)),
            Outcome::MaxIterations => "MaxIterations".into(),
            Outcome::PreimageFailure => "PreimageFailure".into(),
        };
        report.push("iteration", format!("from {} in {} steps: {outcome}", fmt(it.x0), it.steps));
    }
    report.set_columns(&["hypothesis", "result", "checked", "detail"]);
    for (name, s) in &r.hypothesis_results {
        report.rows.push(vec![
            name.clone(),
            if s.passed { "pass" } else { "fail" }.into(),
            s.checked.to_string(),
            s.detail.clone(),
        ]);
    }
    match r.verdict {
        Verdict::TheoremConfirmed(_) => ExitCode::Ok,
        Verdict::HypothesesFailed(_) => ExitCode::CheckFailed,
        Verdict::Contradiction(_) => ExitCode::Contradiction,
    }
}

fn falsify(s: &Scenario, report: &mut Report) -> ExitCode {
    let trials = falsification_trials(s.run.seed, s.run.trials, s.run.max_size);
    let summary = FalsificationSummary::from_reports(trials.iter().map(|(_, r)| r));
    report.push("seed", s.run.seed);
    report.push("trials", summary.trials);
    report.push("max size", s.run.max_size.clamp(1, crate::oracle::MAX_SEARCH_SIZE));
    report.push("contradictions", summary.contradictions);
    report.push("coincidence hypotheses passed", summary.coincidence_hypotheses_passed);
    report.push("with coincidence point", summary.with_coincidence_point);
    report.push("fixed point hypotheses passed", summary.fixed_point_hypotheses_passed);
    report.push("with unique common fixed point", summary.with_unique_common_fixed_point);
    report.push("with shared point of coincidence", summary.with_shared_point_of_coincidence);
    report.set_columns(&["trial", "size", "lambda", "verdict", "coincidence", "common_fixed"]);
    for (i, (config, r)) in trials.iter().enumerate() {
        report.rows.push(vec![
            i.to_string(),
            config.pair.space().len().to_string(),
            fmt_number(config.lambda),
            r.verdict.to_string(),
            r.sets.coincidence_points.len().to_string(),
            r.sets.common_fixed_points.len().to_string(),
        ]);
    }
    if summary.contradiction_free() {
        ExitCode::Ok
    } else {
        report.header.insert(2, ("ALERT".into(), "theorem conclusion failed under passing hypotheses".into()));
        ExitCode::Contradiction
    }
}
