use crate::check::CheckResult;

use super::{MetricSpace, SpaceError};

/// Relative slack for the triangle inequality; Euclidean matrices built in
/// floating point can miss it by a rounding error on near-collinear triples.
const TRIANGLE_SLACK: f64 = 1e-12;

/// A finite metric space given by point labels and a distance matrix.
/// Points are indices `0..len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl FiniteSpace {
    /// Checks only the shape of the data; use [`validate`](Self::validate)
    /// for the metric axioms.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        if labels.is_empty() {
            return Err(SpaceError::Malformed("a finite space needs at least one point".into()));
        }
        if dist.len() != labels.len() || dist.iter().any(|row| row.len() != labels.len()) {
            return Err(SpaceError::Malformed(format!(
                "distance matrix must be {n}x{n}",
                n = labels.len()
            )));
        }
        Ok(FiniteSpace { labels, dist })
    }

    /// Points labelled `p0, p1, ...`.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        let labels = (0..dist.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, dist)
    }

    /// The discrete metric on `n` points.
    pub fn discrete(n: usize) -> Self {
        let dist = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 }).collect())
            .collect();
        Self::from_matrix(dist).expect("square by construction")
    }

    /// Points of the real line with `|x − y|`.
    pub fn from_reals(xs: &[f64]) -> Result<Self, SpaceError> {
        let dist = xs
            .iter()
            .map(|a| xs.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let labels = xs.iter().map(|x| x.to_string()).collect();
        Self::new(labels, dist)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// Exhaustive metric-axiom check: finite nonnegative entries, symmetry,
    /// zero diagonal, positivity off the diagonal and the triangle inequality
    /// over all triples. The witness lists the offending indices.
    pub fn validate(&self) -> CheckResult<Vec<usize>> {
        let n = self.len();
        for i in 0..n {
            for j in 0..n {
                let d = self.dist[i][j];
                if !d.is_finite() || d < 0.0 {
                    return CheckResult::fail(vec![i, j], "distance is not a nonnegative real");
                }
                if d != self.dist[j][i] {
                    return CheckResult::fail_by(vec![i, j], "distance is not symmetric", (d - self.dist[j][i]).abs());
                }
                if i == j && d != 0.0 {
                    return CheckResult::fail_by(vec![i], "nonzero diagonal", d);
                }
                if i != j && d == 0.0 {
                    return CheckResult::fail(vec![i, j], "distinct points at distance 0");
                }
            }
        }
        let mut checked = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    checked += 1;
                    let direct = self.dist[i][k];
                    let detour = self.dist[i][j] + self.dist[j][k];
                    if direct > detour * (1.0 + TRIANGLE_SLACK) {
                        return CheckResult::fail_by(
                            vec![i, j, k],
                            "triangle inequality violated",
                            direct - detour,
                        );
                    }
                }
            }
        }
        CheckResult::pass(checked)
    }
}

impl MetricSpace for FiniteSpace {
    type Point = usize;

    fn contains(&self, x: usize) -> bool {
        x < self.len()
    }

    fn metric(&self, x: usize, y: usize) -> f64 {
        self.dist[x][y]
    }

    fn coincide(&self, x: usize, y: usize, _tol: f64) -> bool {
        x == y
    }

    fn enumerate(&self) -> Option<Vec<usize>> {
        Some((0..self.len()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_space_is_valid() {
        let s = FiniteSpace::discrete(3);
        assert!(s.validate().passed());
        assert_eq!(s.distance(0, 2), Ok(1.0));
        assert_eq!(s.distance(1, 1), Ok(0.0));
    }

    #[test]
    fn triangle_violation_is_reported() {
        let s = FiniteSpace::from_matrix(vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ])
        .unwrap();
        let res = s.validate();
        assert_eq!(res.witness(), Some(&vec![0, 1, 2]));
        assert_eq!(res.reason(), Some("triangle inequality violated"));
    }

    #[test]
    fn other_axiom_violations() {
        let asym = FiniteSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert_eq!(asym.validate().reason(), Some("distance is not symmetric"));
        let diag = FiniteSpace::from_matrix(vec![vec![0.5, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(diag.validate().reason(), Some("nonzero diagonal"));
        let glued = FiniteSpace::from_matrix(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_eq!(glued.validate().reason(), Some("distinct points at distance 0"));
    }

    #[test]
    fn shape_and_membership_errors() {
        assert!(FiniteSpace::from_matrix(vec![vec![0.0, 1.0]]).is_err());
        assert!(FiniteSpace::from_matrix(vec![]).is_err());
        let s = FiniteSpace::discrete(2);
        assert_eq!(s.distance(0, 2), Err(SpaceError::PointOutsideSpace("2".into())));
    }
}
