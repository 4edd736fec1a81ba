use std::fmt;

/// `α : X × X → [0, ∞)`. Only the threshold `α ≥ 1` carries meaning in the
/// hypotheses.
pub trait Alpha<P>: Send + Sync {
    fn alpha(&self, x: P, y: P) -> f64;

    fn at_least_one(&self, x: P, y: P) -> bool {
        self.alpha(x, y) >= 1.0
    }
}

impl<P, F> Alpha<P> for F
where
    F: Fn(P, P) -> f64 + Send + Sync,
{
    fn alpha(&self, x: P, y: P) -> f64 {
        self(x, y)
    }
}

/// The same value on every pair, on any space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstAlpha(pub f64);

impl<P> Alpha<P> for ConstAlpha {
    fn alpha(&self, _x: P, _y: P) -> f64 {
        self.0
    }
}

/// α on a finite space as an explicit matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMatrix(pub Vec<Vec<f64>>);

impl AlphaMatrix {
    pub fn constant(n: usize, value: f64) -> Self {
        AlphaMatrix(vec![vec![value; n]; n])
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        AlphaMatrix((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Alpha<usize> for AlphaMatrix {
    fn alpha(&self, x: usize, y: usize) -> f64 {
        self.0[x][y]
    }
}

/// Declarative α forms on the real line.
#[derive(Debug, Clone, PartialEq)]
pub enum RealAlpha {
    Constant(f64),
    /// `inside` when both arguments lie in `[lo, hi]`, else `outside`.
    Box { lo: f64, hi: f64, inside: f64, outside: f64 },
    /// `above` when `x > y` (`strict`) or `x ≥ y`, else `below`.
    Threshold { strict: bool, above: f64, below: f64 },
}

impl Alpha<f64> for RealAlpha {
    fn alpha(&self, x: f64, y: f64) -> f64 {
        match *self {
            RealAlpha::Constant(c) => c,
            RealAlpha::Box { lo, hi, inside, outside } => {
                let within = |t: f64| lo <= t && t <= hi;
                if within(x) && within(y) {
                    inside
                } else {
                    outside
                }
            }
            RealAlpha::Threshold { strict, above, below } => {
                let over = if strict { x > y } else { x >= y };
                if over {
                    above
                } else {
                    below
                }
            }
        }
    }
}

impl fmt::Display for RealAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlpha::Constant(c) => write!(f, "constant {c}"),
            RealAlpha::Box { lo, hi, inside, outside } => write!(f, "box {lo} {hi} {inside} {outside}"),
            RealAlpha::Threshold { strict, above, below } => {
                let op = if *strict { "gt" } else { "ge" };
                write!(f, "threshold {op} {above} {below}")
            }
        }
    }
}
