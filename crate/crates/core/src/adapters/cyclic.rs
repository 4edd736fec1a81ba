use crate::check::{CheckResult, CheckSummary};
use crate::maps::{RealMap, TableMap};
use crate::oracle::FinitePair;
use crate::pair::{Alpha, MappingPair, Sampling, PREIMAGE_TOL};
use crate::spaces::{ClosedInterval, CyclicPartition, IndexSet, IntervalSpace, Region};

use super::AdapterError;

/// `α(x, y) = 1` on `(g(A₁) × g(A₂)) ∪ (g(A₂) × g(A₁))`, `0` elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicAlpha<R> {
    pub g_a1: R,
    pub g_a2: R,
}

impl<P: Copy, R: Region<P>> Alpha<P> for CyclicAlpha<R> {
    fn alpha(&self, x: P, y: P) -> f64 {
        let across = (self.g_a1.contains(x) && self.g_a2.contains(y)) || (self.g_a2.contains(x) && self.g_a1.contains(y));
        if across {
            1.0
        } else {
            0.0
        }
    }
}

pub fn alpha_from_cyclic(partition: &CyclicPartition<IndexSet>, g: &TableMap) -> CyclicAlpha<IndexSet> {
    CyclicAlpha {
        g_a1: partition.a1.iter().map(|x| g.0[x]).collect(),
        g_a2: partition.a2.iter().map(|x| g.0[x]).collect(),
    }
}

/// Images are computed analytically and must be bounded closed intervals.
pub fn alpha_from_cyclic_interval(
    partition: &CyclicPartition<ClosedInterval>,
    g: &RealMap,
) -> Result<CyclicAlpha<ClosedInterval>, AdapterError> {
    let image = |a: &ClosedInterval, set| {
        g.image(a.lo, a.hi)
            .and_then(|img| img.as_closed_interval())
            .ok_or(AdapterError::ImageNotClosed { set })
    };
    Ok(CyclicAlpha { g_a1: image(&partition.a1, "A1")?, g_a2: image(&partition.a2, "A2")? })
}

/// Conditions (i)–(iii) of the cyclic setting, each with its own verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicConditions {
    pub images_closed: CheckSummary,
    pub inclusions: CheckSummary,
    pub injective: CheckSummary,
}

impl CyclicConditions {
    pub fn passed(&self) -> bool {
        self.images_closed.passed && self.inclusions.passed && self.injective.passed
    }
}

pub fn check_cyclic_conditions(pair: &FinitePair, partition: &CyclicPartition<IndexSet>) -> CyclicConditions {
    let alpha = alpha_from_cyclic(partition, pair.g());
    let inclusions = (|| {
        for (from, to, name) in [(&partition.a1, &alpha.g_a2, "f(A1) not inside g(A2)"), (&partition.a2, &alpha.g_a1, "f(A2) not inside g(A1)")] {
            if let Some(x) = from.iter().find(|&x| !to.contains(pair.fx(x))) {
                return CheckResult::fail(x, name);
            }
        }
        CheckResult::pass(partition.a1.len() + partition.a2.len())
    })();
    let y: Vec<usize> = partition.union().iter().collect();
    let injective = (|| {
        for (i, &a) in y.iter().enumerate() {
            if let Some(&b) = y[i + 1..].iter().find(|&&b| pair.gx(a) == pair.gx(b)) {
                return CheckResult::fail((a, b), "g is not one-to-one on A1 and A2");
            }
        }
        CheckResult::pass(y.len())
    })();
    CyclicConditions {
        images_closed: CheckSummary::assumed("every subset of a finite space is closed"),
        inclusions: inclusions.summarize(),
        injective: injective.summarize(),
    }
}

/// Closedness and injectivity are decided from the catalog; the inclusions
/// are sampled with `sampling` applied to each set in turn.
pub fn check_cyclic_conditions_interval(
    pair: &MappingPair<IntervalSpace, RealMap>,
    partition: &CyclicPartition<ClosedInterval>,
    sampling: &Sampling,
) -> CyclicConditions {
    let alpha = alpha_from_cyclic_interval(partition, pair.g());
    let images_closed = match &alpha {
        Ok(a) => CheckResult::<()>::pass(2).summarize().with_detail(format!(
            "g(A1) = [{}, {}], g(A2) = [{}, {}]",
            a.g_a1.lo, a.g_a1.hi, a.g_a2.lo, a.g_a2.hi
        )),
        Err(e) => CheckResult::fail((), e.to_string()).summarize(),
    };
    let inclusions = match &alpha {
        Err(_) => CheckResult::fail(f64::NAN, "g-images unavailable").summarize(),
        Ok(a) => {
            let mut result = CheckResult::pass(0);
            let mut checked = 0;
            for (from, to, name) in [(&partition.a1, &a.g_a2, "f(A1) not inside g(A2)"), (&partition.a2, &a.g_a1, "f(A2) not inside g(A1)")] {
                let points = Sampling { lo: from.lo, hi: from.hi, ..sampling.clone() }.points();
                checked += points.len();
                if let Some(&x) = points.iter().find(|&&x| {
                    let y = pair.fx(x);
                    !to.contains_within(y, PREIMAGE_TOL * y.abs().max(1.0))
                }) {
                    result = CheckResult::fail(x, name);
                    break;
                }
            }
            if result.passed() {
                result = CheckResult::pass(checked);
            }
            result.summarize()
        }
    };
    let hull = partition.a1.hull(&partition.a2);
    let injective = match pair.g().injective_on(hull.lo, hull.hi) {
        Some(true) => CheckResult::<()>::pass(1),
        Some(false) => CheckResult::fail((), "g is not one-to-one"),
        None => CheckResult::fail((), "injectivity of g is not known for this map"),
    };
    CyclicConditions { images_closed, inclusions, injective: injective.summarize() }
}
