use crate::check::CheckResult;

use super::{MetricSpace, SpaceError};

/// A closed interval `[lo, hi]` of the real line, possibly unbounded, with
/// the metric `|x − y|`. Closed subsets of the line are complete.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalSpace {
    lo: f64,
    hi: f64,
}

impl IntervalSpace {
    /// Only rejects NaN bounds; ordering is checked by [`validate`](Self::validate).
    pub fn new(lo: f64, hi: f64) -> Result<Self, SpaceError> {
        if lo.is_nan() || hi.is_nan() {
            return Err(SpaceError::Malformed("interval bound is NaN".into()));
        }
        Ok(IntervalSpace { lo, hi })
    }

    pub fn real_line() -> Self {
        IntervalSpace {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn validate(&self) -> CheckResult<(f64, f64)> {
        if self.lo < self.hi && self.lo != f64::INFINITY && self.hi != f64::NEG_INFINITY {
            CheckResult::pass(1)
        } else {
            CheckResult::fail((self.lo, self.hi), "interval bounds are not ordered lo < hi")
        }
    }
}

impl MetricSpace for IntervalSpace {
    type Point = f64;

    fn contains(&self, x: f64) -> bool {
        x.is_finite() && self.lo <= x && x <= self.hi
    }

    fn metric(&self, x: f64, y: f64) -> f64 {
        (x - y).abs()
    }
}

/// A bounded closed interval, used for cyclic partitions and analytic images.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ClosedInterval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, SpaceError> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(SpaceError::Malformed(format!(
                "[{lo}, {hi}] is not a bounded closed interval"
            )));
        }
        Ok(ClosedInterval { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Membership allowing an absolute rounding slack.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }

    pub fn hull(&self, other: &ClosedInterval) -> ClosedInterval {
        ClosedInterval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &ClosedInterval) -> Option<ClosedInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(ClosedInterval { lo, hi })
    }
}
