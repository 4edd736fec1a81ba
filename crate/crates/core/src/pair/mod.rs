//! The mapping pair `(f, g)`, its α-function, the M-term, and the hypothesis
//! checks of the generalized α-ψ contractive pair theorems.

mod alpha;
mod checks;
mod sampling;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::maps::{RealMap, SelfMap, TableMap};
use crate::spaces::{FiniteSpace, IntervalSpace, MetricSpace, SpaceError};

pub use alpha::{Alpha, AlphaMatrix, ConstAlpha, RealAlpha};
pub use checks::{
    check_alpha_admissible, check_alpha_admissible_wrt_g, check_contractive, check_initial_point,
    check_range_inclusion, check_self_map, find_initial_point, DEFAULT_SLACK,
};
pub use sampling::Sampling;

/// Relative tolerance for `g(g⁻¹(y)) = y` on real spaces.
pub const PREIMAGE_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PairError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("{which} table has {got} entries, the space has {expected} points")]
    TableLength { which: &'static str, got: usize, expected: usize },
    #[error("{which} maps point {point} to {value}, outside the space")]
    MapOutsideSpace { which: &'static str, point: usize, value: usize },
}

type PreimageRule<P> = Arc<dyn Fn(P) -> Option<P> + Send + Sync>;

/// Two self-maps `f, g` of a space together with a rule choosing, for each
/// `y` in the range of `g`, some `x` with `g(x) = y`.
#[derive(Clone)]
pub struct MappingPair<S: MetricSpace, M> {
    space: S,
    f: M,
    g: M,
    preimage: PreimageRule<S::Point>,
}

impl<S: MetricSpace + fmt::Debug, M: fmt::Debug> fmt::Debug for MappingPair<S, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MappingPair")
            .field("space", &self.space)
            .field("f", &self.f)
            .field("g", &self.g)
            .finish_non_exhaustive()
    }
}

impl<S: MetricSpace, M: SelfMap<S::Point>> MappingPair<S, M> {
    /// A pair with an arbitrary preimage rule. The rule should return `None`
    /// when it cannot produce a valid `g`-preimage.
    pub fn with_preimage(
        space: S,
        f: M,
        g: M,
        rule: impl Fn(S::Point) -> Option<S::Point> + Send + Sync + 'static,
    ) -> Self {
        MappingPair { space, f, g, preimage: Arc::new(rule) }
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn f(&self) -> &M {
        &self.f
    }

    pub fn g(&self) -> &M {
        &self.g
    }

    pub fn fx(&self, x: S::Point) -> S::Point {
        self.f.apply(x)
    }

    pub fn gx(&self, x: S::Point) -> S::Point {
        self.g.apply(x)
    }

    /// Some `x` with `g(x) = y`, chosen by the pair's rule.
    pub fn g_preimage(&self, y: S::Point) -> Option<S::Point> {
        (self.preimage)(y)
    }

    /// `M(gx, gy) = max{ d(gx,gy), [d(gx,fx) + d(gy,fy)]/2, [d(gx,fy) + d(gy,fx)]/2 }`.
    pub fn compute_m(&self, x: S::Point, y: S::Point) -> Result<f64, SpaceError> {
        for p in [x, y] {
            if !self.space.contains(p) {
                return Err(SpaceError::PointOutsideSpace(p.to_string()));
            }
        }
        Ok(self.m_term(x, y))
    }

    pub(crate) fn m_term(&self, x: S::Point, y: S::Point) -> f64 {
        let d = |a, b| self.space.metric(a, b);
        let (fx, fy, gx, gy) = (self.fx(x), self.fx(y), self.gx(x), self.gx(y));
        let direct = d(gx, gy);
        let displacement = (d(gx, fx) + d(gy, fy)) / 2.0;
        let cross = (d(gx, fy) + d(gy, fx)) / 2.0;
        direct.max(displacement).max(cross)
    }
}

impl MappingPair<FiniteSpace, TableMap> {
    /// Table maps on a finite space; the preimage rule is least-index.
    pub fn finite(space: FiniteSpace, f: TableMap, g: TableMap) -> Result<Self, PairError> {
        let n = space.len();
        for (which, table) in [("f", &f), ("g", &g)] {
            if table.len() != n {
                return Err(PairError::TableLength { which, got: table.len(), expected: n });
            }
            if let Some((point, &value)) = table.0.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(PairError::MapOutsideSpace { which, point, value });
            }
        }
        let mut least: Vec<Option<usize>> = vec![None; n];
        for (x, &y) in g.0.iter().enumerate() {
            least[y].get_or_insert(x);
        }
        Ok(Self::with_preimage(space, f, g, move |y: usize| least.get(y).copied().flatten()))
    }
}

impl MappingPair<IntervalSpace, RealMap> {
    /// Catalog maps on an interval; `g_inverse` is the declared inverse of `g`.
    /// A preimage is accepted when it lies in the space and `g` maps it back
    /// to `y` within [`PREIMAGE_TOL`] (relative).
    pub fn interval(space: IntervalSpace, f: RealMap, g: RealMap, g_inverse: RealMap) -> Self {
        let check_g = g.clone();
        Self::with_preimage(space, f, g, move |y: f64| {
            let x = g_inverse.apply(y);
            let back = check_g.apply(x);
            let ok = space.contains(x) && (back - y).abs() <= PREIMAGE_TOL * y.abs().max(1.0);
            ok.then_some(x)
        })
    }
}
