use crate::check::CheckResult;
use crate::comparison::ComparisonFunction;
use crate::maps::SelfMap;
use crate::spaces::{MetricSpace, SpaceError};

use super::{Alpha, MappingPair, PREIMAGE_TOL};

/// Allowed excess in the contractive inequality, absorbing rounding at
/// equality cases.
pub const DEFAULT_SLACK: f64 = 1e-12;

fn first_outside<S: MetricSpace>(space: &S, pairs: &[(S::Point, S::Point)]) -> Option<(S::Point, S::Point)> {
    pairs
        .iter()
        .copied()
        .find(|&(x, y)| !space.contains(x) || !space.contains(y))
}

/// `f` and `g` map each sample point into the space.
pub fn check_self_map<S, M>(pair: &MappingPair<S, M>, points: &[S::Point]) -> CheckResult<S::Point>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
{
    for &x in points {
        if !pair.space().contains(x) {
            return CheckResult::fail(x, "sample point outside the space");
        }
        if !pair.space().contains(pair.fx(x)) {
            return CheckResult::fail(x, "f maps the point outside the space");
        }
        if !pair.space().contains(pair.gx(x)) {
            return CheckResult::fail(x, "g maps the point outside the space");
        }
    }
    CheckResult::pass(points.len())
}

/// `α(gx, gy)·d(fx, fy) ≤ ψ(M(gx, gy)) + slack` on every sample pair. On
/// failure the witness is the pair with the largest excess.
pub fn check_contractive<S, M, A>(
    pair: &MappingPair<S, M>,
    alpha: &A,
    psi: &ComparisonFunction,
    pairs: &[(S::Point, S::Point)],
    slack: f64,
) -> CheckResult<(S::Point, S::Point)>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    A: Alpha<S::Point> + ?Sized,
{
    if let Some(w) = first_outside(pair.space(), pairs) {
        return CheckResult::fail(w, "sample pair outside the space");
    }
    let space = pair.space();
    let mut worst: Option<((S::Point, S::Point), f64)> = None;
    for &(x, y) in pairs {
        let a = alpha.alpha(pair.gx(x), pair.gx(y));
        let lhs = if a == 0.0 { 0.0 } else { a * space.metric(pair.fx(x), pair.fx(y)) };
        let excess = lhs - psi.eval(pair.m_term(x, y));
        if excess > slack && worst.is_none_or(|(_, w)| excess > w) {
            worst = Some(((x, y), excess));
        }
    }
    match worst {
        None => CheckResult::pass(pairs.len()),
        Some((w, excess)) => CheckResult::fail_by(w, "contractive inequality violated", excess),
    }
}

/// Plain α-admissibility of `f`: `α(x, y) ≥ 1 ⇒ α(fx, fy) ≥ 1`.
pub fn check_alpha_admissible<P, F, A>(f: &F, alpha: &A, pairs: &[(P, P)]) -> CheckResult<(P, P)>
where
    P: Copy,
    F: SelfMap<P> + ?Sized,
    A: Alpha<P> + ?Sized,
{
    for &(x, y) in pairs {
        if alpha.at_least_one(x, y) && !alpha.at_least_one(f.apply(x), f.apply(y)) {
            return CheckResult::fail_by((x, y), "alpha(x, y) >= 1 but alpha(fx, fy) < 1", alpha.alpha(f.apply(x), f.apply(y)));
        }
    }
    CheckResult::pass(pairs.len())
}

/// α-admissibility of `f` with respect to `g`: `α(gx, gy) ≥ 1 ⇒ α(fx, fy) ≥ 1`.
pub fn check_alpha_admissible_wrt_g<S, M, A>(
    pair: &MappingPair<S, M>,
    alpha: &A,
    pairs: &[(S::Point, S::Point)],
) -> CheckResult<(S::Point, S::Point)>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    A: Alpha<S::Point> + ?Sized,
{
    for &(x, y) in pairs {
        if alpha.at_least_one(pair.gx(x), pair.gx(y)) && !alpha.at_least_one(pair.fx(x), pair.fx(y)) {
            return CheckResult::fail_by(
                (x, y),
                "alpha(gx, gy) >= 1 but alpha(fx, fy) < 1",
                alpha.alpha(pair.fx(x), pair.fx(y)),
            );
        }
    }
    CheckResult::pass(pairs.len())
}

/// `f(X) ⊆ g(X)`, established through the preimage rule: for each sample
/// `x`, the rule must produce some `y` with `g(y) = f(x)`. On a finite space
/// with all points as samples this is exhaustive.
pub fn check_range_inclusion<S, M>(pair: &MappingPair<S, M>, points: &[S::Point]) -> CheckResult<S::Point>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
{
    for &x in points {
        let target = pair.fx(x);
        let Some(pre) = pair.g_preimage(target) else {
            return CheckResult::fail(x, "f(x) has no g-preimage");
        };
        let tol = PREIMAGE_TOL * pair.space().metric(target, target).max(1.0);
        if !pair.space().coincide(pair.gx(pre), target, tol) {
            return CheckResult::fail_by(
                x,
                "g(preimage(f(x))) differs from f(x)",
                pair.space().metric(pair.gx(pre), target),
            );
        }
    }
    CheckResult::pass(points.len())
}

/// `α(g x0, f x0) ≥ 1`.
pub fn check_initial_point<S, M, A>(pair: &MappingPair<S, M>, alpha: &A, x0: S::Point) -> Result<bool, SpaceError>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    A: Alpha<S::Point> + ?Sized,
{
    if !pair.space().contains(x0) {
        return Err(SpaceError::PointOutsideSpace(x0.to_string()));
    }
    Ok(alpha.at_least_one(pair.gx(x0), pair.fx(x0)))
}

/// First sample point satisfying [`check_initial_point`].
pub fn find_initial_point<S, M, A>(pair: &MappingPair<S, M>, alpha: &A, points: &[S::Point]) -> Option<S::Point>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    A: Alpha<S::Point> + ?Sized,
{
    points
        .iter()
        .copied()
        .find(|&x| check_initial_point(pair, alpha, x).unwrap_or(false))
}
