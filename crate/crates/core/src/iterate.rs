//! Jungck-type iteration `f(x_n) = g(x_{n+1})` with a Cauchy certificate.
//!
//! Starting from a point with `α(g x₀, f x₀) ≥ 1`, each step picks
//! `x_{n+1}` as a `g`-preimage of `f(x_n)`. Under the contractive-pair
//! hypotheses the step distances obey `d(fxₙ, fxₙ₊₁) ≤ ψⁿ(d(fx₀, fx₁))`, so
//! `d(fxₙ, fx_m) ≤ Σ_{p≥n} ψᵖ(d(fx₀, fx₁))` for every `m > n`; the trace stores
//! that tail bound for each `n` as its certificate.

use thiserror::Error;

use crate::check::CheckResult;
use crate::comparison::{ComparisonError, ComparisonFunction, DEFAULT_TAIL_EPS};
use crate::maps::SelfMap;
use crate::pair::{check_initial_point, Alpha, MappingPair};
use crate::spaces::{MetricSpace, SpaceError};

/// Absolute slack used when checking recorded traces against their bounds.
pub const TRACE_SLACK: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IterateError {
    #[error("initial point rejected: alpha(g x0, f x0) < 1")]
    InitialPointRejected,
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("certificate: {0}")]
    Certificate(#[from] ComparisonError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterateOptions {
    /// Stop once `d(f xₙ, g xₙ) ≤ tol`.
    pub tol: f64,
    /// Maximum number of steps.
    pub max_iter: usize,
    /// Truncation threshold for table-ψ certificates.
    pub tail_eps: f64,
}

impl Default for IterateOptions {
    fn default() -> Self {
        IterateOptions { tol: 1e-9, max_iter: 10_000, tail_eps: DEFAULT_TAIL_EPS }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome<P> {
    CoincidenceFound(P),
    MaxIterations,
    /// The preimage rule could not produce `x_{n+1}` from `f(x_n)`.
    PreimageFailure,
}

/// Record of one run. `points`, `g_values`, `f_values` and `certificate`
/// have one entry per iterate; `step_distances[n] = d(fxₙ, fxₙ₊₁)` and
/// `alpha_chain[n] = α(gxₙ, gxₙ₊₁)` have one entry per step.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<P> {
    pub points: Vec<P>,
    pub g_values: Vec<P>,
    pub f_values: Vec<P>,
    pub step_distances: Vec<f64>,
    pub alpha_chain: Vec<f64>,
    pub certificate: Vec<f64>,
    pub outcome: Outcome<P>,
}

impl<P: Copy> IterationTrace<P> {
    pub fn steps(&self) -> usize {
        self.step_distances.len()
    }

    pub fn coincidence(&self) -> Option<P> {
        match self.outcome {
            Outcome::CoincidenceFound(z) => Some(z),
            _ => None,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = TraceRow<P>> + '_ {
        (0..self.points.len()).map(move |n| TraceRow {
            n,
            x: self.points[n],
            gx: self.g_values[n],
            fx: self.f_values[n],
            step: self.step_distances.get(n).copied(),
            alpha: self.alpha_chain.get(n).copied(),
            bound: self.certificate.get(n).copied(),
        })
    }
}

/// One exported row of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow<P> {
    pub n: usize,
    pub x: P,
    pub gx: P,
    pub fx: P,
    pub step: Option<f64>,
    pub alpha: Option<f64>,
    pub bound: Option<f64>,
}

/// Runs the iteration from `x0`.
///
/// At least one step is always taken. The run stops with
/// `CoincidenceFound(x_{n+1})` when `d(f x_{n+1}, g x_{n+1}) ≤ tol` (exact
/// equality on finite spaces) or when `f x_{n+1} = f x_n` exactly.
pub fn jungck_iterate<S, M, A>(
    pair: &MappingPair<S, M>,
    alpha: &A,
    psi: &ComparisonFunction,
    x0: S::Point,
    opts: &IterateOptions,
) -> Result<IterationTrace<S::Point>, IterateError>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    A: Alpha<S::Point> + ?Sized,
{
    if !(opts.tol > 0.0) {
        return Err(IterateError::InvalidTolerance(opts.tol));
    }
    if !check_initial_point(pair, alpha, x0)? {
        return Err(IterateError::InitialPointRejected);
    }
    let space = pair.space();
    let mut trace = IterationTrace {
        points: vec![x0],
        g_values: vec![pair.gx(x0)],
        f_values: vec![pair.fx(x0)],
        step_distances: Vec::new(),
        alpha_chain: Vec::new(),
        certificate: Vec::new(),
        outcome: Outcome::MaxIterations,
    };

    let mut x = x0;
    for _ in 0..opts.max_iter {
        let fx = pair.fx(x);
        let Some(next) = pair.g_preimage(fx) else {
            trace.outcome = Outcome::PreimageFailure;
            break;
        };
        let (g_next, f_next) = (pair.gx(next), pair.fx(next));
        let step = space.metric(fx, f_next);
        trace.alpha_chain.push(alpha.alpha(pair.gx(x), g_next));
        trace.step_distances.push(step);
        trace.points.push(next);
        trace.g_values.push(g_next);
        trace.f_values.push(f_next);
        x = next;
        if step == 0.0 || space.coincide(f_next, g_next, opts.tol) {
            trace.outcome = Outcome::CoincidenceFound(next);
            break;
        }
    }

    if let Some(&first) = trace.step_distances.first() {
        trace.certificate = psi.tail_bounds(first, trace.points.len() - 1, opts.tail_eps)?;
    }
    Ok(trace)
}

/// `d(fxₙ, fx_m) ≤ Σ_{p≥n} ψᵖ(d(fx₀, fx₁)) + TRACE_SLACK` for all `n < m`.
/// The witness is the index pair with the largest excess.
pub fn verify_cauchy_certificate<S: MetricSpace>(
    space: &S,
    trace: &IterationTrace<S::Point>,
    psi: &ComparisonFunction,
) -> Result<CheckResult<(usize, usize)>, ComparisonError> {
    let len = trace.f_values.len();
    if len < 2 {
        return Ok(CheckResult::pass(0));
    }
    let bounds = psi.tail_bounds(trace.step_distances[0], len - 1, DEFAULT_TAIL_EPS)?;
    let mut worst: Option<((usize, usize), f64)> = None;
    let mut checked = 0;
    for n in 0..len {
        for m in n + 1..len {
            checked += 1;
            let excess = space.metric(trace.f_values[n], trace.f_values[m]) - bounds[n];
            if excess > TRACE_SLACK && worst.is_none_or(|(_, w)| excess > w) {
                worst = Some(((n, m), excess));
            }
        }
    }
    Ok(match worst {
        None => CheckResult::pass(checked),
        Some((w, e)) => CheckResult::fail_by(w, "Cauchy bound exceeded", e),
    })
}

/// Step-distance bounds along a trace: `d(fxₙ₊₁, fxₙ₊₂) ≤ ψ(d(fxₙ, fxₙ₊₁))`
/// whenever the earlier step is positive, and `d(fxₙ, fxₙ₊₁) ≤ ψⁿ(d(fx₀, fx₁))`.
/// The witness is the step index.
pub fn verify_step_bounds<P: Copy>(trace: &IterationTrace<P>, psi: &ComparisonFunction) -> CheckResult<usize> {
    let steps = &trace.step_distances;
    let Some(&first) = steps.first() else {
        return CheckResult::pass(0);
    };
    for (n, pair) in steps.windows(2).enumerate() {
        if pair[0] > 0.0 && pair[1] > psi.eval(pair[0]) + TRACE_SLACK {
            return CheckResult::fail_by(n + 1, "step exceeds psi of the previous step", pair[1] - psi.eval(pair[0]));
        }
    }
    let mut bound = first;
    for (n, &s) in steps.iter().enumerate() {
        if s > bound + TRACE_SLACK {
            return CheckResult::fail_by(n, "step exceeds psi^n of the first step", s - bound);
        }
        bound = psi.eval(bound);
    }
    CheckResult::pass(steps.len())
}

/// `α(gxₙ, gxₙ₊₁) ≥ 1` along the whole trace.
pub fn verify_alpha_chain<P>(trace: &IterationTrace<P>) -> CheckResult<usize> {
    match trace.alpha_chain.iter().position(|&a| !(a >= 1.0)) {
        Some(n) => CheckResult::fail_by(n, "alpha chain drops below 1", trace.alpha_chain[n]),
        None => CheckResult::pass(trace.alpha_chain.len()),
    }
}

/// `g xₙ₊₁ = f xₙ` for every step, within `tol` (exact on finite spaces).
pub fn verify_jungck_relation<S: MetricSpace>(space: &S, trace: &IterationTrace<S::Point>, tol: f64) -> CheckResult<usize> {
    for n in 0..trace.steps() {
        if !space.coincide(trace.g_values[n + 1], trace.f_values[n], tol) {
            return CheckResult::fail_by(n, "g x_{n+1} differs from f x_n", space.metric(trace.g_values[n + 1], trace.f_values[n]));
        }
    }
    CheckResult::pass(trace.steps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{RealMap, TableMap};
    use crate::pair::{ConstAlpha, RealAlpha};
    use crate::spaces::{FiniteSpace, IntervalSpace};

    fn piecewise_pair() -> MappingPair<IntervalSpace, RealMap> {
        let f = RealMap::Piecewise {
            breaks: vec![2.0],
            pieces: vec![RealMap::Scale(1.0 / 3.0), RealMap::Affine { a: 2.0, b: -1.5 }],
        };
        MappingPair::interval(IntervalSpace::new(0.0, f64::INFINITY).unwrap(), f, RealMap::Scale(0.5), RealMap::Scale(2.0))
    }

    fn example_alpha() -> RealAlpha {
        RealAlpha::Box { lo: 0.0, hi: 1.0, inside: 1.0, outside: 0.0 }
    }

    /// Hand oracle: x_{n+1} = (2/3) x_n and d(f x_n, g x_n) = x_n / 6, so the
    /// run stops at the first n >= 1 with (2/3)^n / 6 <= tol.
    fn geometric_oracle(tol: f64) -> (usize, f64) {
        let mut n = 1;
        let mut x = 2.0 / 3.0;
        while x / 6.0 > tol {
            n += 1;
            x *= 2.0 / 3.0;
        }
        (n, x)
    }

    #[test]
    fn piecewise_pair_converges_geometrically() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        let opts = IterateOptions { max_iter: 200, ..Default::default() };
        let trace = jungck_iterate(&piecewise_pair(), &example_alpha(), &psi, 1.0, &opts).unwrap();

        let (n_stop, x_stop) = geometric_oracle(1e-9);
        assert_eq!(n_stop, 47);
        assert_eq!(trace.steps(), n_stop);
        let z = trace.coincidence().unwrap();
        assert!((z - x_stop).abs() <= 1e-20, "{z} vs {x_stop}");
        for w in trace.points.windows(2) {
            assert!((w[1] - 2.0 / 3.0 * w[0]).abs() <= 1e-16 * w[0].max(1e-300));
        }
        assert!(verify_jungck_relation(&IntervalSpace::real_line(), &trace, 1e-12).passed());
        assert!(verify_alpha_chain(&trace).passed());
        assert!(verify_step_bounds(&trace, &psi).passed());
    }

    #[test]
    fn piecewise_pair_certificate_holds() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        let trace = jungck_iterate(&piecewise_pair(), &example_alpha(), &psi, 1.0, &IterateOptions::default()).unwrap();
        let space = IntervalSpace::new(0.0, f64::INFINITY).unwrap();
        assert!(verify_cauchy_certificate(&space, &trace, &psi).unwrap().passed());
        // d(fx0, fx1) = 1/3 - 2/9 = 1/9, so the n = 0 bound is (1/9) / 0.2
        assert!((trace.certificate[0] - 5.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn equal_maps_coincide_after_one_step() {
        let g = TableMap(vec![2, 0, 1]);
        let p = MappingPair::finite(FiniteSpace::discrete(3), g.clone(), g).unwrap();
        let psi = ComparisonFunction::linear(0.5).unwrap();
        let trace = jungck_iterate(&p, &ConstAlpha(1.0), &psi, 0, &IterateOptions::default()).unwrap();
        assert_eq!(trace.steps(), 1);
        assert_eq!(trace.outcome, Outcome::CoincidenceFound(trace.points[1]));
    }

    #[test]
    fn banach_table_reaches_fixed_point() {
        // points on the line {0, 3, 4, 10}; f sends everything toward p2 = 2
        let space = FiniteSpace::from_reals(&[0.0, 3.0, 4.0, 10.0]).unwrap();
        let f = TableMap(vec![1, 2, 2, 2]);
        let p = MappingPair::finite(space, f, TableMap::identity(4)).unwrap();
        let psi = ComparisonFunction::linear(0.5).unwrap();
        for x0 in 0..4 {
            let trace = jungck_iterate(&p, &ConstAlpha(1.0), &psi, x0, &IterateOptions::default()).unwrap();
            assert_eq!(trace.outcome, Outcome::CoincidenceFound(2));
            assert!(trace.steps() <= 4);
        }
    }

    #[test]
    fn rejected_start_and_preimage_failure() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        let opts = IterateOptions::default();
        assert_eq!(
            jungck_iterate(&piecewise_pair(), &example_alpha(), &psi, 3.0, &opts),
            Err(IterateError::InitialPointRejected)
        );
        assert!(matches!(
            jungck_iterate(&piecewise_pair(), &example_alpha(), &psi, 1.0, &IterateOptions { tol: 0.0, ..opts }),
            Err(IterateError::InvalidTolerance(_))
        ));

        let p = MappingPair::finite(FiniteSpace::discrete(3), TableMap::constant(3, 0), TableMap(vec![1, 2, 1])).unwrap();
        let trace = jungck_iterate(&p, &ConstAlpha(1.0), &psi, 1, &opts).unwrap();
        assert_eq!(trace.outcome, Outcome::PreimageFailure);
        assert!(trace.certificate.is_empty());
    }

    #[test]
    fn cycling_table_hits_max_iterations() {
        let p = MappingPair::finite(FiniteSpace::discrete(3), TableMap(vec![1, 2, 0]), TableMap::identity(3)).unwrap();
        let psi = ComparisonFunction::linear(0.5).unwrap();
        let opts = IterateOptions { max_iter: 30, ..Default::default() };
        let trace = jungck_iterate(&p, &ConstAlpha(1.0), &psi, 0, &opts).unwrap();
        assert_eq!(trace.outcome, Outcome::MaxIterations);
        assert_eq!(trace.steps(), 30);
        // a permutation keeps every step at distance 1, far above 0.5^n
        assert!(!verify_cauchy_certificate(p.space(), &trace, &psi).unwrap().passed());
        assert!(!verify_step_bounds(&trace, &psi).passed());
    }

    #[test]
    fn divergent_trace_fails_certificate() {
        // f(x) = 2x + 1, g = id on [0, inf): steps double
        let p = MappingPair::interval(
            IntervalSpace::new(0.0, f64::INFINITY).unwrap(),
            RealMap::Affine { a: 2.0, b: 1.0 },
            RealMap::identity(),
            RealMap::identity(),
        );
        let psi = ComparisonFunction::linear(0.5).unwrap();
        let opts = IterateOptions { max_iter: 20, ..Default::default() };
        let trace = jungck_iterate(&p, &ConstAlpha(1.0), &psi, 0.0, &opts).unwrap();
        assert_eq!(trace.outcome, Outcome::MaxIterations);
        assert!(!verify_cauchy_certificate(p.space(), &trace, &psi).unwrap().passed());
    }

    #[test]
    fn single_point_trace_is_vacuous() {
        let trace: IterationTrace<f64> = IterationTrace {
            points: vec![1.0],
            g_values: vec![0.5],
            f_values: vec![1.0 / 3.0],
            step_distances: vec![],
            alpha_chain: vec![],
            certificate: vec![],
            outcome: Outcome::PreimageFailure,
        };
        let psi = ComparisonFunction::linear(0.5).unwrap();
        assert_eq!(verify_cauchy_certificate(&IntervalSpace::real_line(), &trace, &psi), Ok(CheckResult::pass(0)));
    }
}
