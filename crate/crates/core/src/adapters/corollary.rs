use crate::check::CheckResult;
use crate::comparison::ComparisonFunction;
use crate::maps::SelfMap;
use crate::pair::{ConstAlpha, MappingPair};
use crate::spaces::MetricSpace;

use super::AdapterError;

/// The classical contractive conditions, written for a pair `(f, g)` with
/// `gx, gy` in place of `x, y`.
#[derive(Debug, Clone, PartialEq)]
pub enum CorollaryConfig {
    /// `d(fx, fy) ≤ λ d(gx, gy)`
    Banach(f64),
    /// `d(fx, fy) ≤ λ [d(gx, fx) + d(gy, fy)]`
    Kannan(f64),
    /// `d(fx, fy) ≤ λ [d(gx, fy) + d(gy, fx)]`
    Chatterjea(f64),
    /// `d(fx, fy) ≤ λ M(gx, gy)`
    Ciric(f64),
    /// `d(fx, fy) ≤ A d(gx, gy) + B [d(gx, fx) + d(gy, fy)] + C [d(gx, fy) + d(gy, fx)]`
    HardyRogers { a: f64, b: f64, c: f64 },
    /// `d(fx, fy) ≤ ψ(d(gx, gy))`
    Berinde(ComparisonFunction),
}

/// α ≡ 1, the effective ψ, and the original inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub config: CorollaryConfig,
    pub alpha: ConstAlpha,
    pub psi: ComparisonFunction,
}

/// The five distances the classical conditions are built from.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Distances {
    direct: f64,
    own_x: f64,
    own_y: f64,
    cross_xy: f64,
    cross_yx: f64,
}

impl Distances {
    /// `gx, gy, fx, fy` as reals.
    fn of_reals(gx: f64, gy: f64, fx: f64, fy: f64) -> Self {
        Distances {
            direct: (gx - gy).abs(),
            own_x: (gx - fx).abs(),
            own_y: (gy - fy).abs(),
            cross_xy: (gx - fy).abs(),
            cross_yx: (gy - fx).abs(),
        }
    }

    fn m(&self) -> f64 {
        self.direct
            .max((self.own_x + self.own_y) / 2.0)
            .max((self.cross_xy + self.cross_yx) / 2.0)
    }
}

impl Reduction {
    fn direct_rhs(&self, d: &Distances) -> f64 {
        match &self.config {
            CorollaryConfig::Banach(l) => l * d.direct,
            CorollaryConfig::Kannan(l) => l * (d.own_x + d.own_y),
            CorollaryConfig::Chatterjea(l) => l * (d.cross_xy + d.cross_yx),
            CorollaryConfig::Ciric(l) => l * d.m(),
            CorollaryConfig::HardyRogers { a, b, c } => {
                a * d.direct + b * (d.own_x + d.own_y) + c * (d.cross_xy + d.cross_yx)
            }
            CorollaryConfig::Berinde(psi) => psi.eval(d.direct),
        }
    }
}

fn in_open(name: &str, v: f64, lo: f64, hi: f64) -> Result<(), AdapterError> {
    if v > lo && v < hi {
        Ok(())
    } else {
        Err(AdapterError::CoefficientOutOfRange(format!("{name} = {v} must lie in ({lo}, {hi})")))
    }
}

pub fn reduce_corollary(config: CorollaryConfig) -> Result<Reduction, AdapterError> {
    let lambda_eff = match &config {
        CorollaryConfig::Banach(l) | CorollaryConfig::Ciric(l) => {
            in_open("lambda", *l, 0.0, 1.0)?;
            Some(*l)
        }
        CorollaryConfig::Kannan(l) | CorollaryConfig::Chatterjea(l) => {
            in_open("lambda", *l, 0.0, 0.5)?;
            Some(2.0 * l)
        }
        CorollaryConfig::HardyRogers { a, b, c } => {
            for (name, v) in [("A", a), ("B", b), ("C", c)] {
                if !(*v >= 0.0) {
                    return Err(AdapterError::CoefficientOutOfRange(format!("{name} = {v} must be nonnegative")));
                }
            }
            let sum = a + 2.0 * b + 2.0 * c;
            in_open("A + 2B + 2C", sum, 0.0, 1.0)?;
            Some(sum)
        }
        CorollaryConfig::Berinde(_) => None,
    };
    let psi = match (&config, lambda_eff) {
        (CorollaryConfig::Berinde(psi), _) => psi.clone(),
        (_, Some(l)) => ComparisonFunction::linear(l).map_err(|e| AdapterError::CoefficientOutOfRange(e.to_string()))?,
        (_, None) => unreachable!("every non-Berinde kind yields a coefficient"),
    };
    Ok(Reduction { config, alpha: ConstAlpha(1.0), psi })
}

/// The original inequality of the corollary on every sample pair. The witness
/// is the pair with the largest excess.
pub fn check_direct_form<S, M>(
    pair: &MappingPair<S, M>,
    reduction: &Reduction,
    pairs: &[(S::Point, S::Point)],
    slack: f64,
) -> CheckResult<(S::Point, S::Point)>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
{
    let space = pair.space();
    let mut worst: Option<((S::Point, S::Point), f64)> = None;
    for &(x, y) in pairs {
        let (gx, gy, fx, fy) = (pair.gx(x), pair.gx(y), pair.fx(x), pair.fx(y));
        let d = Distances {
            direct: space.metric(gx, gy),
            own_x: space.metric(gx, fx),
            own_y: space.metric(gy, fy),
            cross_xy: space.metric(gx, fy),
            cross_yx: space.metric(gy, fx),
        };
        let excess = space.metric(fx, fy) - reduction.direct_rhs(&d);
        if excess > slack && worst.is_none_or(|(_, w)| excess > w) {
            worst = Some(((x, y), excess));
        }
    }
    match worst {
        None => CheckResult::pass(pairs.len()),
        Some((w, e)) => CheckResult::fail_by(w, "direct-form inequality violated", e),
    }
}

/// Pointwise dominance of the original right-hand side by `ψ_eff(M)` on
/// samples `(gx, gy, fx, fy)` of reals. Whenever it holds, any pair passing
/// the direct form also passes the generalized form.
pub fn check_dominance(reduction: &Reduction, samples: &[[f64; 4]], slack: f64) -> CheckResult<[f64; 4]> {
    for s in samples {
        let d = Distances::of_reals(s[0], s[1], s[2], s[3]);
        let excess = reduction.direct_rhs(&d) - reduction.psi.eval(d.m());
        if excess > slack {
            return CheckResult::fail_by(*s, "direct right-hand side exceeds psi(M)", excess);
        }
    }
    CheckResult::pass(samples.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn effective_coefficients() {
        let cases = [
            (CorollaryConfig::Banach(0.5), 0.5),
            (CorollaryConfig::Kannan(0.3), 0.6),
            (CorollaryConfig::Chatterjea(0.3), 0.6),
            (CorollaryConfig::Ciric(0.9), 0.9),
            (CorollaryConfig::HardyRogers { a: 0.2, b: 0.1, c: 0.1 }, 0.6),
        ];
        for (config, expected) in cases {
            let r = reduce_corollary(config.clone()).unwrap();
            assert!((r.psi.lambda().unwrap() - expected).abs() < 1e-15, "{config:?}");
            assert_eq!(r.alpha, ConstAlpha(1.0));
        }
        let psi = ComparisonFunction::linear(0.7).unwrap();
        assert_eq!(reduce_corollary(CorollaryConfig::Berinde(psi.clone())).unwrap().psi, psi);
    }

    #[test]
    fn coefficient_ranges() {
        for bad in [
            CorollaryConfig::Banach(1.0),
            CorollaryConfig::Ciric(0.0),
            CorollaryConfig::Kannan(0.5),
            CorollaryConfig::Chatterjea(-0.1),
            CorollaryConfig::HardyRogers { a: 0.5, b: 0.2, c: 0.1 },
            CorollaryConfig::HardyRogers { a: 0.5, b: -0.1, c: 0.0 },
            CorollaryConfig::HardyRogers { a: 0.0, b: 0.0, c: 0.0 },
        ] {
            assert!(matches!(reduce_corollary(bad), Err(AdapterError::CoefficientOutOfRange(_))));
        }
    }

    #[test]
    fn dominance_on_random_quadruples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let samples: Vec<[f64; 4]> = (0..5000).map(|_| std::array::from_fn(|_| rng.gen_range(-5.0..5.0))).collect();
        let psi = ComparisonFunction::table(vec![(1.0, 0.5), (2.0, 0.9), (10.0, 4.0)]).unwrap();
        for config in [
            CorollaryConfig::Banach(0.9),
            CorollaryConfig::Kannan(0.45),
            CorollaryConfig::Chatterjea(0.1),
            CorollaryConfig::Ciric(0.3),
            CorollaryConfig::HardyRogers { a: 0.1, b: 0.2, c: 0.2 },
            CorollaryConfig::Berinde(psi),
        ] {
            let r = reduce_corollary(config).unwrap();
            assert!(check_dominance(&r, &samples, 1e-12).passed(), "{:?}", r.config);
        }
    }
}
