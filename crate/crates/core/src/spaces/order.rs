use crate::check::CheckResult;

use super::SpaceError;

/// A partial order `⪯` on points of type `P`.
pub trait PartialOrder<P>: Send + Sync {
    fn leq(&self, x: P, y: P) -> bool;

    fn comparable(&self, x: P, y: P) -> bool
    where
        P: Copy,
    {
        self.leq(x, y) || self.leq(y, x)
    }
}

impl<P, F> PartialOrder<P> for F
where
    F: Fn(P, P) -> bool + Send + Sync,
{
    fn leq(&self, x: P, y: P) -> bool {
        self(x, y)
    }
}

/// The usual `≤` on the reals.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StandardOrder;

impl PartialOrder<f64> for StandardOrder {
    fn leq(&self, x: f64, y: f64) -> bool {
        x <= y
    }
}

/// A relation on `0..n` stored as a boolean matrix; `rel[i][j]` means `i ⪯ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrder {
    rel: Vec<Vec<bool>>,
}

impl FiniteOrder {
    pub fn from_matrix(rel: Vec<Vec<bool>>) -> Result<Self, SpaceError> {
        let n = rel.len();
        if rel.iter().any(|row| row.len() != n) {
            return Err(SpaceError::Malformed(format!("order matrix must be {n}x{n}")));
        }
        Ok(FiniteOrder { rel })
    }

    /// Reflexive-transitive closure of the given `(lower, upper)` pairs.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self, SpaceError> {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(SpaceError::PointOutsideSpace(format!("({a}, {b})")));
            }
            rel[a][b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(FiniteOrder { rel })
    }

    /// `0 ⪯ 1 ⪯ ... ⪯ n−1`.
    pub fn chain(n: usize) -> Self {
        let rel = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        FiniteOrder { rel }
    }

    /// Only reflexive comparabilities.
    pub fn antichain(n: usize) -> Self {
        let rel = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        FiniteOrder { rel }
    }

    pub fn len(&self) -> usize {
        self.rel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel.is_empty()
    }

    pub fn matrix(&self) -> &[Vec<bool>] {
        &self.rel
    }

    /// Exhaustive check of reflexivity, antisymmetry and transitivity.
    pub fn validate(&self) -> CheckResult<Vec<usize>> {
        let n = self.len();
        for i in 0..n {
            if !self.rel[i][i] {
                return CheckResult::fail(vec![i], "relation is not reflexive");
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.rel[i][j] && self.rel[j][i] {
                    return CheckResult::fail(vec![i, j], "relation is not antisymmetric");
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.rel[i][j] && self.rel[j][k] && !self.rel[i][k] {
                        return CheckResult::fail(vec![i, j, k], "relation is not transitive");
                    }
                }
            }
        }
        CheckResult::pass(n * n * n)
    }
}

impl PartialOrder<usize> for FiniteOrder {
    fn leq(&self, x: usize, y: usize) -> bool {
        self.rel[x][y]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond_closure() {
        // 0 < 1, 0 < 2, 1 < 3, 2 < 3
        let d = FiniteOrder::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(d.validate().passed());
        assert!(d.leq(0, 3));
        assert!(!d.comparable(1, 2));
        assert!(d.comparable(3, 0));
    }

    #[test]
    fn chain_and_antichain_are_orders() {
        assert!(FiniteOrder::chain(5).validate().passed());
        assert!(FiniteOrder::antichain(5).validate().passed());
    }

    #[test]
    fn two_cycle_is_not_antisymmetric() {
        let r = FiniteOrder::from_covers(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(r.validate().witness(), Some(&vec![0, 1]));
    }

    #[test]
    fn missing_transitive_edge() {
        let r = FiniteOrder::from_matrix(vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ])
        .unwrap();
        assert_eq!(r.validate().reason(), Some("relation is not transitive"));
    }
}
