//! Self-maps: lookup tables on finite spaces and a closed-form catalog on the
//! real line.

use std::fmt;

use crate::spaces::ClosedInterval;

/// An evaluable map from points to points.
pub trait SelfMap<P>: Send + Sync {
    fn apply(&self, x: P) -> P;
}

impl<P, F> SelfMap<P> for F
where
    F: Fn(P) -> P + Send + Sync,
{
    fn apply(&self, x: P) -> P {
        self(x)
    }
}

/// A map on a finite space given by its value table: `x ↦ table[x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMap(pub Vec<usize>);

impl TableMap {
    pub fn identity(n: usize) -> Self {
        TableMap((0..n).collect())
    }

    pub fn constant(n: usize, value: usize) -> Self {
        TableMap(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least `x` with `table[x] = y`.
    pub fn least_preimage(&self, y: usize) -> Option<usize> {
        self.0.iter().position(|&v| v == y)
    }

    /// Sorted, deduplicated set of values.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.0.clone();
        r.sort_unstable();
        r.dedup();
        r
    }
}

impl SelfMap<usize> for TableMap {
    fn apply(&self, x: usize) -> usize {
        self.0[x]
    }
}

impl fmt::Display for TableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "table")?;
        for v in &self.0 {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Closed-form maps on the real line.
#[derive(Debug, Clone, PartialEq)]
pub enum RealMap {
    /// `a·x + b`
    Affine { a: f64, b: f64 },
    /// `c·x`
    Scale(f64),
    /// `1/x`
    Reciprocal,
    /// `e^{−x}`
    ExpDecay,
    /// `e^{x}`
    Exp,
    /// `x²`
    Square,
    /// `ln(1 + x/c)`
    LogForm(f64),
    /// `√x`
    Sqrt,
    /// `−ln x`
    NegLog,
    /// `pieces[i]` applies on `(breaks[i−1], breaks[i]]`; the first piece
    /// covers everything up to `breaks[0]`, the last everything above the
    /// final breakpoint.
    Piecewise { breaks: Vec<f64>, pieces: Vec<RealMap> },
}

/// Direction of a monotone map on an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotone {
    Increasing,
    Decreasing,
    Constant,
}

/// Image of an interval under a continuous monotone map. Unbounded ends are
/// infinite; an end is closed when it is attained or infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Image {
    pub lo: f64,
    pub hi: f64,
    pub lo_attained: bool,
    pub hi_attained: bool,
}

impl Image {
    /// Closed as a subset of the real line.
    pub fn is_closed(&self) -> bool {
        (self.lo_attained || self.lo.is_infinite()) && (self.hi_attained || self.hi.is_infinite())
    }

    pub fn contains(&self, y: f64, tol: f64) -> bool {
        let above = if self.lo_attained { y >= self.lo - tol } else { y > self.lo - tol };
        let below = if self.hi_attained { y <= self.hi + tol } else { y < self.hi + tol };
        above && below
    }

    /// As a bounded closed interval, when it is one.
    pub fn as_closed_interval(&self) -> Option<ClosedInterval> {
        if self.is_closed() {
            ClosedInterval::new(self.lo, self.hi).ok()
        } else {
            None
        }
    }
}

impl RealMap {
    pub fn identity() -> Self {
        RealMap::Affine { a: 1.0, b: 0.0 }
    }

    pub fn apply(&self, x: f64) -> f64 {
        match self {
            RealMap::Affine { a, b } => a * x + b,
            RealMap::Scale(c) => c * x,
            RealMap::Reciprocal => 1.0 / x,
            RealMap::ExpDecay => (-x).exp(),
            RealMap::Exp => x.exp(),
            RealMap::Square => x * x,
            RealMap::LogForm(c) => (x / c).ln_1p(),
            RealMap::Sqrt => x.sqrt(),
            RealMap::NegLog => -x.ln(),
            RealMap::Piecewise { breaks, pieces } => {
                let idx = breaks.partition_point(|&b| b < x);
                pieces[idx].apply(x)
            }
        }
    }

    fn slope_sign(c: f64) -> Monotone {
        if c > 0.0 {
            Monotone::Increasing
        } else if c < 0.0 {
            Monotone::Decreasing
        } else {
            Monotone::Constant
        }
    }

    /// Direction of monotonicity on `[lo, hi]`, when the interval lies in the
    /// map's domain and the map is continuous and monotone there.
    pub fn monotone_on(&self, lo: f64, hi: f64) -> Option<Monotone> {
        match self {
            RealMap::Affine { a, .. } => Some(Self::slope_sign(*a)),
            RealMap::Scale(c) => Some(Self::slope_sign(*c)),
            RealMap::Reciprocal => (lo > 0.0 || hi < 0.0).then_some(Monotone::Decreasing),
            RealMap::ExpDecay => Some(Monotone::Decreasing),
            RealMap::Exp => Some(Monotone::Increasing),
            RealMap::Square => {
                if lo >= 0.0 {
                    Some(Monotone::Increasing)
                } else if hi <= 0.0 {
                    Some(Monotone::Decreasing)
                } else {
                    None
                }
            }
            RealMap::LogForm(c) => {
                if *c > 0.0 && lo > -c {
                    Some(Monotone::Increasing)
                } else if *c < 0.0 && hi < -c {
                    Some(Monotone::Decreasing)
                } else {
                    None
                }
            }
            RealMap::Sqrt => (lo >= 0.0).then_some(Monotone::Increasing),
            RealMap::NegLog => (lo >= 0.0).then_some(Monotone::Decreasing),
            RealMap::Piecewise { .. } => None,
        }
    }

    /// Image of `[lo, hi]` (bounds may be infinite), for monotone catalog maps.
    pub fn image(&self, lo: f64, hi: f64) -> Option<Image> {
        let dir = self.monotone_on(lo, hi)?;
        let at_lo = self.apply(lo);
        let at_hi = self.apply(hi);
        let lo_attained = lo.is_finite() && at_lo.is_finite();
        let hi_attained = hi.is_finite() && at_hi.is_finite();
        Some(match dir {
            Monotone::Constant => {
                let v = self.apply(if lo.is_finite() { lo } else { hi.min(0.0) });
                Image { lo: v, hi: v, lo_attained: true, hi_attained: true }
            }
            Monotone::Increasing => Image { lo: at_lo, hi: at_hi, lo_attained, hi_attained },
            Monotone::Decreasing => Image {
                lo: at_hi,
                hi: at_lo,
                lo_attained: hi_attained,
                hi_attained: lo_attained,
            },
        })
    }

    /// Whether the map is one-to-one on `[lo, hi]`; `None` when unknown.
    pub fn injective_on(&self, lo: f64, hi: f64) -> Option<bool> {
        match self.monotone_on(lo, hi) {
            Some(Monotone::Constant) => Some(lo == hi),
            Some(_) => Some(true),
            None => match self {
                RealMap::Square => Some(false),
                _ => None,
            },
        }
    }
}

impl SelfMap<f64> for RealMap {
    fn apply(&self, x: f64) -> f64 {
        RealMap::apply(self, x)
    }
}

impl fmt::Display for RealMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealMap::Affine { a, b } => write!(f, "affine {a} {b}"),
            RealMap::Scale(c) => write!(f, "scale {c}"),
            RealMap::Reciprocal => write!(f, "reciprocal"),
            RealMap::ExpDecay => write!(f, "exp-decay"),
            RealMap::Exp => write!(f, "exp"),
            RealMap::Square => write!(f, "square"),
            RealMap::LogForm(c) => write!(f, "log-form {c}"),
            RealMap::Sqrt => write!(f, "sqrt"),
            RealMap::NegLog => write!(f, "neg-log"),
            RealMap::Piecewise { breaks, pieces } => {
                write!(f, "piecewise {{ {} }}", pieces[0])?;
                for (b, p) in breaks.iter().zip(&pieces[1..]) {
                    write!(f, " {b} {{ {p} }}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_f() -> RealMap {
        RealMap::Piecewise {
            breaks: vec![2.0],
            pieces: vec![RealMap::Scale(1.0 / 3.0), RealMap::Affine { a: 2.0, b: -1.5 }],
        }
    }

    #[test]
    fn piecewise_breakpoint_belongs_to_left_piece() {
        let f = example_f();
        assert_eq!(f.apply(2.0), 2.0 / 3.0);
        assert_eq!(f.apply(3.0), 4.5);
        assert_eq!(f.apply(0.0), 0.0);
    }

    #[test]
    fn catalog_values() {
        assert_eq!(RealMap::Reciprocal.apply(4.0), 0.25);
        assert_eq!(RealMap::ExpDecay.apply(0.0), 1.0);
        assert!((RealMap::LogForm(3.0).apply(3.0) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(RealMap::Sqrt.apply(9.0), 3.0);
        assert_eq!(RealMap::Square.apply(-3.0), 9.0);
    }

    #[test]
    fn images_and_closedness() {
        // g(x) = x/2 on [0, inf) has closed range [0, inf)
        let g = RealMap::Scale(0.5);
        let img = g.image(0.0, f64::INFINITY).unwrap();
        assert_eq!((img.lo, img.hi), (0.0, f64::INFINITY));
        assert!(img.is_closed());

        // 1/x on [1, inf) is (0, 1], not closed
        let img = RealMap::Reciprocal.image(1.0, f64::INFINITY).unwrap();
        assert_eq!((img.lo, img.hi), (0.0, 1.0));
        assert!(!img.contains(0.0, 0.0));

        // -x/4 maps [-1, 0] onto [0, 1/4]
        let img = RealMap::Scale(-0.25).image(-1.0, 0.0).unwrap();
        assert_eq!(img.as_closed_interval(), Some(ClosedInterval { lo: 0.0, hi: 0.25 }));

        assert!(RealMap::Reciprocal.image(-1.0, 1.0).is_none());
        for x in [0.5, 1.0, 7.0] {
            assert!((RealMap::NegLog.apply(RealMap::ExpDecay.apply(x)) - x).abs() < 1e-15);
        }
        let img = RealMap::NegLog.image(0.0, 1.0).unwrap();
        assert_eq!((img.lo, img.hi, img.hi_attained), (0.0, f64::INFINITY, false));
        assert!(example_f().image(0.0, 5.0).is_none());
    }

    #[test]
    fn injectivity_flags() {
        assert_eq!(RealMap::identity().injective_on(-1.0, 1.0), Some(true));
        assert_eq!(RealMap::Affine { a: 0.0, b: 2.0 }.injective_on(-1.0, 1.0), Some(false));
        assert_eq!(RealMap::Square.injective_on(-1.0, 1.0), Some(false));
        assert_eq!(RealMap::Square.injective_on(0.0, 1.0), Some(true));
        assert_eq!(example_f().injective_on(0.0, 1.0), None);
    }

    #[test]
    fn table_preimages() {
        let g = TableMap(vec![2, 0, 2, 1]);
        assert_eq!(g.least_preimage(2), Some(0));
        assert_eq!(g.least_preimage(3), None);
        assert_eq!(g.range(), vec![0, 1, 2]);
        assert_eq!(g.to_string(), "table 2 0 2 1");
    }
}
