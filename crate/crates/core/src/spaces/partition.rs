use std::collections::BTreeSet;

use super::{ClosedInterval, SpaceError};

/// A subset of a space, queried by membership.
pub trait Region<P>: Send + Sync {
    fn contains(&self, p: P) -> bool;
}

impl Region<f64> for ClosedInterval {
    fn contains(&self, p: f64) -> bool {
        ClosedInterval::contains(self, p)
    }
}

/// A subset of a finite space, by point index. Automatically closed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexSet(pub BTreeSet<usize>);

impl IndexSet {
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet(iter.into_iter().collect())
    }
}

impl Region<usize> for IndexSet {
    fn contains(&self, p: usize) -> bool {
        self.0.contains(&p)
    }
}

/// Two nonempty closed sets `A₁`, `A₂` covering `Y = A₁ ∪ A₂`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicPartition<R> {
    pub a1: R,
    pub a2: R,
}

impl CyclicPartition<IndexSet> {
    pub fn finite(a1: IndexSet, a2: IndexSet, space_len: usize) -> Result<Self, SpaceError> {
        if a1.is_empty() || a2.is_empty() {
            return Err(SpaceError::Malformed("cyclic partition sets must be nonempty".into()));
        }
        if let Some(p) = a1.iter().chain(a2.iter()).find(|&p| p >= space_len) {
            return Err(SpaceError::PointOutsideSpace(p.to_string()));
        }
        Ok(CyclicPartition { a1, a2 })
    }

    pub fn union(&self) -> IndexSet {
        self.a1.iter().chain(self.a2.iter()).collect()
    }
}

impl CyclicPartition<ClosedInterval> {
    /// Bounded closed intervals are nonempty and closed by construction.
    pub fn interval(a1: ClosedInterval, a2: ClosedInterval) -> Self {
        CyclicPartition { a1, a2 }
    }
}
