//! (c)-comparison functions.
//!
//! A comparison function ψ is nondecreasing on `[0, ∞)` with a convergent
//! series of iterates `Σ ψⁿ(t)` for every `t > 0`. Two representations are
//! supported: the linear family `ψ(t) = λt` with `0 < λ < 1`, which covers all
//! of the classical contraction conditions, and a monotone piecewise-linear
//! knot table for experimentation.
//!
//! Membership can only be checked numerically: [`ComparisonFunction::check_membership`]
//! tests monotonicity, `ψ(t) < t` and geometric decay of the iterate series on
//! a set of sample points.

use thiserror::Error;

use crate::check::CheckResult;

/// Truncation threshold for table tail sums.
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;
/// Maximum number of series terms summed before a table ψ is declared non-summable.
pub const DEFAULT_MAX_TERMS: usize = 10_000;
/// Number of consecutive term ratios that must all be below 1 before truncating.
pub const DECAY_WINDOW: usize = 3;
/// Beyond the last knot, `ψ(t) ≤ t·(1 − EXTRAPOLATION_MARGIN)`.
pub const EXTRAPOLATION_MARGIN: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComparisonError {
    #[error("linear coefficient {0} is outside (0, 1)")]
    CoefficientOutOfRange(f64),
    #[error("knot table is empty")]
    EmptyTable,
    #[error("knot {0}: abscissae must be finite, nonnegative and strictly increasing")]
    UnorderedKnots(usize),
    #[error("knot {0}: values must be finite, nonnegative and nondecreasing")]
    NotMonotone(usize),
    #[error("table gives psi(0) = {0}, expected 0")]
    NonzeroAtOrigin(f64),
    #[error("NonSummable: iterates of psi at t = {t} show no geometric decay within {terms} terms")]
    NonSummable { t: f64, terms: usize },
}

/// Representation of a comparison function.
#[derive(Debug, Clone, PartialEq)]
pub enum PsiKind {
    /// `ψ(t) = λ·t`.
    Linear(f64),
    /// Piecewise-linear through `(t, ψ(t))` knots, with `(0, 0)` implied.
    Table(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonFunction {
    kind: PsiKind,
}

impl ComparisonFunction {
    pub fn linear(lambda: f64) -> Result<Self, ComparisonError> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(ComparisonError::CoefficientOutOfRange(lambda));
        }
        Ok(ComparisonFunction {
            kind: PsiKind::Linear(lambda),
        })
    }

    /// Builds a table ψ. Knots must have strictly increasing abscissae and
    /// nondecreasing nonnegative values; a knot at `t = 0` must have value 0.
    ///
    /// The table is not required to satisfy `ψ(t) < t`; that is what
    /// [`check_membership`](Self::check_membership) is for.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self, ComparisonError> {
        if knots.is_empty() {
            return Err(ComparisonError::EmptyTable);
        }
        let mut prev = (-1.0_f64, 0.0_f64);
        for (i, &(t, v)) in knots.iter().enumerate() {
            if !t.is_finite() || t < 0.0 || t <= prev.0 {
                return Err(ComparisonError::UnorderedKnots(i));
            }
            if !v.is_finite() || v < 0.0 || v < prev.1 {
                return Err(ComparisonError::NotMonotone(i));
            }
            prev = (t, v);
        }
        if knots[0].0 == 0.0 && knots[0].1 != 0.0 {
            return Err(ComparisonError::NonzeroAtOrigin(knots[0].1));
        }
        Ok(ComparisonFunction {
            kind: PsiKind::Table(knots),
        })
    }

    /// Samples `psi` at the given abscissae into a knot table.
    pub fn tabulate(
        psi: impl Fn(f64) -> f64,
        abscissae: impl IntoIterator<Item = f64>,
    ) -> Result<Self, ComparisonError> {
        Self::table(abscissae.into_iter().map(|t| (t, psi(t))).collect())
    }

    pub fn kind(&self) -> &PsiKind {
        &self.kind
    }

    /// The coefficient `λ` of a linear ψ.
    pub fn lambda(&self) -> Option<f64> {
        match self.kind {
            PsiKind::Linear(l) => Some(l),
            PsiKind::Table(_) => None,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match &self.kind {
            PsiKind::Linear(lambda) => lambda * t,
            PsiKind::Table(knots) => eval_table(knots, t),
        }
    }

    /// `ψⁿ(t)`: ψ applied `n` times; `n = 0` returns `t`.
    pub fn iterate(&self, n: usize, t: f64) -> f64 {
        let mut value = t;
        for _ in 0..n {
            if value == 0.0 {
                break;
            }
            value = self.eval(value);
        }
        value
    }

    /// Upper bound on `Σ_{p=n}^{∞} ψᵖ(t)` with the default term limit.
    pub fn tail_bound(&self, n: usize, t: f64, eps: f64) -> Result<f64, ComparisonError> {
        self.tail_bound_with_limit(n, t, eps, DEFAULT_MAX_TERMS)
    }

    pub fn tail_bound_with_limit(
        &self,
        n: usize,
        t: f64,
        eps: f64,
        max_terms: usize,
    ) -> Result<f64, ComparisonError> {
        Ok(self.tail_bounds_with_limit(t, n, eps, max_terms)?[n])
    }

    /// Tail bounds for every start index `0..=n_max` at once; entry `n`
    /// equals `tail_bound(n, t, eps)`.
    pub fn tail_bounds(&self, t: f64, n_max: usize, eps: f64) -> Result<Vec<f64>, ComparisonError> {
        self.tail_bounds_with_limit(t, n_max, eps, DEFAULT_MAX_TERMS)
    }

    pub fn tail_bounds_with_limit(
        &self,
        t: f64,
        n_max: usize,
        eps: f64,
        max_terms: usize,
    ) -> Result<Vec<f64>, ComparisonError> {
        match self.kind {
            PsiKind::Linear(lambda) => {
                let scale = t / (1.0 - lambda);
                let mut power = 1.0;
                let mut out = Vec::with_capacity(n_max + 1);
                for _ in 0..=n_max {
                    out.push(power * scale);
                    power *= lambda;
                }
                Ok(out)
            }
            PsiKind::Table(_) => self.table_tail_bounds(t, n_max, eps, max_terms),
        }
    }

    // Terms a_p = ψᵖ(t). Index K is a truncation point when a_K < eps and the
    // last DECAY_WINDOW ratios a_j / a_{j-1} are all below 1 (or a_K = 0).
    // The tail from n is the partial sum up to the first truncation point
    // K ≥ n plus a_K / (1 − r), r the largest ratio in the window.
    fn table_tail_bounds(
        &self,
        t: f64,
        n_max: usize,
        eps: f64,
        max_terms: usize,
    ) -> Result<Vec<f64>, ComparisonError> {
        let mut terms = vec![t];
        // closing[p] = Some(a_p / (1 − r)) when p is a truncation point
        let mut closing: Vec<Option<f64>> = Vec::new();
        let mut oldest_open = 0usize;
        loop {
            let p = terms.len() - 1;
            let close = truncation(&terms, eps);
            closing.push(close);
            if close.is_some() {
                if p >= n_max {
                    break;
                }
                oldest_open = p + 1;
            } else if p + 1 - oldest_open >= max_terms {
                return Err(ComparisonError::NonSummable { t, terms: max_terms });
            }
            let next = self.eval(terms[p]);
            terms.push(next);
        }

        let last = terms.len() - 1;
        let mut bounds = vec![0.0; last + 1];
        for p in (0..=last).rev() {
            bounds[p] = match closing[p] {
                Some(rest) => terms[p] + rest,
                None => terms[p] + bounds[p + 1],
            };
        }
        bounds.truncate(n_max + 1);
        Ok(bounds)
    }

    /// Numerical membership test on `samples`: monotonicity between
    /// consecutive samples (ascending), `ψ(t) < t`, and tail-sum convergence.
    /// The witness is the first violating sample.
    pub fn check_membership(&self, samples: &[f64]) -> CheckResult<f64> {
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut prev: Option<(f64, f64)> = None;
        for &t in &sorted {
            if !(t > 0.0 && t.is_finite()) {
                return CheckResult::fail(t, "sample is not a positive real");
            }
            let value = self.eval(t);
            if let Some((pt, pv)) = prev {
                if value < pv {
                    return CheckResult::fail_by(
                        t,
                        format!("psi is not nondecreasing: psi({pt}) > psi({t})"),
                        pv - value,
                    );
                }
            }
            if value >= t {
                return CheckResult::fail_by(t, "psi(t) < t violated", value - t);
            }
            if let Err(e) = self.tail_bound(0, t, DEFAULT_TAIL_EPS) {
                return CheckResult::fail(t, e.to_string());
            }
            prev = Some((t, value));
        }
        CheckResult::pass(sorted.len())
    }
}

fn truncation(terms: &[f64], eps: f64) -> Option<f64> {
    let k = terms.len() - 1;
    let last = terms[k];
    if last == 0.0 {
        return Some(0.0);
    }
    if k < DECAY_WINDOW || last >= eps {
        return None;
    }
    let mut ratio: f64 = 0.0;
    for j in (k + 1 - DECAY_WINDOW)..=k {
        let r = terms[j] / terms[j - 1];
        if !(r < 1.0) {
            return None;
        }
        ratio = ratio.max(r);
    }
    Some(last / (1.0 - ratio))
}

fn eval_table(knots: &[(f64, f64)], t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let idx = knots.partition_point(|&(kt, _)| kt < t);
    if idx < knots.len() {
        let (t1, v1) = knots[idx];
        if t1 == t {
            return v1;
        }
        let (t0, v0) = if idx == 0 { (0.0, 0.0) } else { knots[idx - 1] };
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
    }
    let (tl, vl) = knots[knots.len() - 1];
    let (tp, vp) = if knots.len() >= 2 {
        knots[knots.len() - 2]
    } else {
        (0.0, 0.0)
    };
    let slope = (vl - vp) / (tl - tp);
    let extrapolated = vl + slope * (t - tl);
    extrapolated.min(t * (1.0 - EXTRAPOLATION_MARGIN)).max(vl)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn harmonic_table() -> ComparisonFunction {
        // knots at 1/k hit the iterates of t/(1+t) started from 1
        let mut abscissae: Vec<f64> = (1..=20_000).rev().map(|k| 1.0 / k as f64).collect();
        abscissae.extend((2..=100).map(|k| k as f64));
        ComparisonFunction::tabulate(|t| t / (1.0 + t), abscissae).unwrap()
    }

    #[test]
    fn iterate_examples() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        assert_eq!(psi.iterate(0, 1.0), 1.0);
        assert_abs_diff_eq!(psi.iterate(3, 1.0), 0.512, epsilon = 1e-15);
        // t/(1+t) composed twice at 1: 1 -> 1/2 -> 1/3
        assert_abs_diff_eq!(harmonic_table().iterate(2, 1.0), 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn linear_tail_closed_form() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        assert_abs_diff_eq!(psi.tail_bound(0, 1.0, DEFAULT_TAIL_EPS).unwrap(), 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(psi.tail_bound(2, 1.0, DEFAULT_TAIL_EPS).unwrap(), 3.2, epsilon = 1e-14);
        let half = ComparisonFunction::linear(0.5).unwrap();
        assert_eq!(half.tail_bound(0, 2.0, DEFAULT_TAIL_EPS).unwrap(), 4.0);
    }

    #[test]
    fn rejects_bad_constructions() {
        assert!(matches!(
            ComparisonFunction::linear(1.0),
            Err(ComparisonError::CoefficientOutOfRange(_))
        ));
        assert!(ComparisonFunction::linear(0.0).is_err());
        assert_eq!(ComparisonFunction::table(vec![]), Err(ComparisonError::EmptyTable));
        assert_eq!(
            ComparisonFunction::table(vec![(1.0, 0.5), (0.5, 0.6)]),
            Err(ComparisonError::UnorderedKnots(1))
        );
        assert_eq!(
            ComparisonFunction::table(vec![(1.0, 0.5), (2.0, 0.4)]),
            Err(ComparisonError::NotMonotone(1))
        );
        assert_eq!(
            ComparisonFunction::table(vec![(0.0, 0.1), (2.0, 0.4)]),
            Err(ComparisonError::NonzeroAtOrigin(0.1))
        );
    }

    #[test]
    fn table_interpolates_and_clamps() {
        let psi = ComparisonFunction::table(vec![(1.0, 0.5), (2.0, 0.8)]).unwrap();
        assert_eq!(psi.eval(0.0), 0.0);
        assert_abs_diff_eq!(psi.eval(0.5), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.eval(1.5), 0.65, epsilon = 1e-15);
        assert_abs_diff_eq!(psi.eval(4.0), 1.4, epsilon = 1e-15);

        // steep last segment: extrapolation is capped just below the diagonal
        let steep = ComparisonFunction::table(vec![(1.0, 0.1), (2.0, 1.9)]).unwrap();
        let t = 10.0;
        assert!(steep.eval(t) < t);
        assert_abs_diff_eq!(steep.eval(t), t * (1.0 - EXTRAPOLATION_MARGIN), epsilon = 1e-12);
    }

    #[test]
    fn membership_examples() {
        let psi = ComparisonFunction::linear(0.8).unwrap();
        assert!(psi.check_membership(&[0.1, 1.0, 10.0]).passed());

        let identity = ComparisonFunction::table(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]).unwrap();
        let res = identity.check_membership(&[1.0]);
        assert_eq!(res.witness(), Some(&1.0));
        assert_eq!(res.reason(), Some("psi(t) < t violated"));

        let res = harmonic_table().check_membership(&[1.0]);
        assert!(!res.passed());
        assert!(res.reason().unwrap().starts_with("NonSummable"), "{res:?}");
    }

    #[test]
    fn harmonic_iterates_match_hand_oracle() {
        // independent oracle: psi^n(1) = 1/(n+1) for psi(t) = t/(1+t)
        let psi = harmonic_table();
        for n in 0..50 {
            let expected = 1.0 / (n as f64 + 1.0);
            assert_abs_diff_eq!(psi.iterate(n, 1.0), expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn geometric_table_is_summable() {
        let psi = ComparisonFunction::tabulate(|t| 0.5 * t, (1..=100).map(|k| k as f64)).unwrap();
        let bound = psi.tail_bound(0, 1.0, DEFAULT_TAIL_EPS).unwrap();
        // exact sum is 2; truncation overestimates by at most a few eps
        assert!((2.0 - 1e-15..2.0 + 1e-11).contains(&bound), "{bound}");
        assert!(psi.check_membership(&[0.5, 1.0, 50.0, 500.0]).passed());
    }

    #[test]
    fn zero_start_has_zero_tail() {
        let psi = ComparisonFunction::tabulate(|t| 0.5 * t, [1.0, 2.0]).unwrap();
        assert_eq!(psi.tail_bound(0, 0.0, DEFAULT_TAIL_EPS).unwrap(), 0.0);
        assert_eq!(psi.tail_bound(5, 0.0, DEFAULT_TAIL_EPS).unwrap(), 0.0);
    }

    #[test]
    fn batched_tails_agree_with_single() {
        let psi = ComparisonFunction::tabulate(|t| 0.7 * t / (1.0 + 0.1 * t), (1..=50).map(|k| k as f64 * 0.2))
            .unwrap();
        let all = psi.tail_bounds(3.0, 40, DEFAULT_TAIL_EPS).unwrap();
        for n in [0, 1, 7, 40] {
            assert_eq!(all[n], psi.tail_bound(n, 3.0, DEFAULT_TAIL_EPS).unwrap());
        }
    }
}
