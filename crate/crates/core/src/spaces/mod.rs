//! Metric spaces, partial orders and two-set partitions over them.
//!
//! Finite spaces carry an explicit distance matrix; every quantified
//! hypothesis over a finite space is decided by enumeration. Interval spaces
//! are closed (possibly unbounded) subsets of the real line with the
//! absolute-difference metric; hypotheses over them are sampled.

mod finite;
mod interval;
mod order;
mod partition;
mod random;

use std::fmt;

use thiserror::Error;

pub use finite::FiniteSpace;
pub use interval::{ClosedInterval, IntervalSpace};
pub use order::{FiniteOrder, PartialOrder, StandardOrder};
pub use partition::{CyclicPartition, IndexSet, Region};
pub use random::random_euclidean_space;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("point {0} is outside the space")]
    PointOutsideSpace(String),
    #[error("malformed space: {0}")]
    Malformed(String),
}

/// A metric space whose points are cheap `Copy` values.
pub trait MetricSpace {
    type Point: Copy + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn contains(&self, x: Self::Point) -> bool;

    /// The metric, without a membership test. Maps in the catalog may leave
    /// the space, and several checks need distances to such points.
    fn metric(&self, x: Self::Point, y: Self::Point) -> f64;

    /// Distance between two points of the space.
    fn distance(&self, x: Self::Point, y: Self::Point) -> Result<f64, SpaceError> {
        for p in [x, y] {
            if !self.contains(p) {
                return Err(SpaceError::PointOutsideSpace(p.to_string()));
            }
        }
        Ok(self.metric(x, y))
    }

    /// Whether two computed points should be treated as the same point.
    /// Finite spaces compare exactly; real spaces allow `tol`.
    fn coincide(&self, x: Self::Point, y: Self::Point, tol: f64) -> bool {
        x == y || self.metric(x, y) <= tol
    }

    /// Every point, when the space is finite.
    fn enumerate(&self) -> Option<Vec<Self::Point>> {
        None
    }
}

/// All ordered pairs of points of a finite space, row-major.
pub fn all_pairs(space: &FiniteSpace) -> Vec<(usize, usize)> {
    let n = space.len();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}
