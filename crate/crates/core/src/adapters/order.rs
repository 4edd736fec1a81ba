use crate::check::CheckResult;
use crate::maps::SelfMap;
use crate::oracle::FinitePair;
use crate::pair::{Alpha, MappingPair};
use crate::spaces::{FiniteOrder, MetricSpace, PartialOrder};

/// `α(x, y) = 1` when `x` and `y` are comparable, `0` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderAlpha<O>(pub O);

impl<P: Copy, O: PartialOrder<P>> Alpha<P> for OrderAlpha<O> {
    fn alpha(&self, x: P, y: P) -> f64 {
        if self.0.comparable(x, y) {
            1.0
        } else {
            0.0
        }
    }
}

pub fn alpha_from_order<O>(order: O) -> OrderAlpha<O> {
    OrderAlpha(order)
}

/// `gx ⪯ gy ⇒ fx ⪯ fy` on every sample pair.
pub fn check_g_nondecreasing<S, M, O>(
    pair: &MappingPair<S, M>,
    order: &O,
    pairs: &[(S::Point, S::Point)],
) -> CheckResult<(S::Point, S::Point)>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    O: PartialOrder<S::Point> + ?Sized,
{
    for &(x, y) in pairs {
        if order.leq(pair.gx(x), pair.gx(y)) && !order.leq(pair.fx(x), pair.fx(y)) {
            return CheckResult::fail((x, y), "gx <= gy but not fx <= fy");
        }
    }
    CheckResult::pass(pairs.len())
}

/// Some `x0` with `g x0 ⪯ f x0`, searched over `points`.
pub fn check_ordered_initial_point<S, M, O>(pair: &MappingPair<S, M>, order: &O, points: &[S::Point]) -> Option<S::Point>
where
    S: MetricSpace,
    M: SelfMap<S::Point>,
    O: PartialOrder<S::Point> + ?Sized,
{
    points.iter().copied().find(|&x| order.leq(pair.gx(x), pair.fx(x)))
}

/// g-regularity on a finite space.
///
/// The relation must first be a partial order. A nondecreasing sequence in a
/// finite space converges only by becoming constant, so its possible limits
/// are the points `c` of `g(X)` with `c ⪯ c`, and the tail of the sequence is
/// the terminal cycle `[c]`. The condition asks for a node `a` of that cycle
/// with `a ⪯ c`. The witness is the offending chain.
pub fn check_g_regular(pair: &FinitePair, order: &FiniteOrder) -> CheckResult<Vec<usize>> {
    let valid = order.validate();
    if !valid.passed() {
        return valid;
    }
    let mut checked = 0;
    for c in pair.g().range() {
        if !order.leq(c, c) {
            continue;
        }
        checked += 1;
        let terminal_cycle = [c];
        if !terminal_cycle.iter().any(|&a| order.leq(a, c)) {
            return CheckResult::fail(terminal_cycle.to_vec(), "no chain node below the limit");
        }
    }
    CheckResult::pass(checked)
}

/// For every `x, y ∈ C(g, f)` some `z` has `gx ⪯ gz` and `gy ⪯ gz`; `z` may
/// be `x` or `y`.
pub fn check_upper_bound_hypothesis(pair: &FinitePair, order: &FiniteOrder) -> CheckResult<(usize, usize)> {
    let c = crate::oracle::enumerate_coincidence(pair).coincidence_points;
    let n = pair.space().len();
    let mut checked = 0;
    for &x in &c {
        for &y in &c {
            checked += 1;
            if !(0..n).any(|z| order.leq(pair.gx(x), pair.gx(z)) && order.leq(pair.gx(y), pair.gx(z))) {
                return CheckResult::fail((x, y), "no common upper bound in g(X)");
            }
        }
    }
    CheckResult::pass(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{RealMap, TableMap};
    use crate::pair::{check_alpha_admissible_wrt_g, Sampling};
    use crate::spaces::{all_pairs, FiniteSpace, IntervalSpace, StandardOrder};

    fn diamond() -> FiniteOrder {
        FiniteOrder::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn order_alpha_matrices() {
        let chain = alpha_from_order(FiniteOrder::chain(3));
        assert!(all_pairs(&FiniteSpace::discrete(3)).iter().all(|&(x, y)| chain.alpha(x, y) == 1.0));

        let anti = alpha_from_order(FiniteOrder::antichain(2));
        assert_eq!((anti.alpha(0, 0), anti.alpha(0, 1), anti.alpha(1, 0)), (1.0, 0.0, 0.0));

        let d = alpha_from_order(diamond());
        for (x, y) in all_pairs(&FiniteSpace::discrete(4)) {
            let expected = if (x, y) == (1, 2) || (x, y) == (2, 1) { 0.0 } else { 1.0 };
            assert_eq!(d.alpha(x, y), expected, "({x}, {y})");
        }
    }

    #[test]
    fn g_nondecreasing_cases() {
        let space = FiniteSpace::discrete(3);
        let pairs = all_pairs(&space);
        let id = MappingPair::finite(space.clone(), TableMap::identity(3), TableMap::identity(3)).unwrap();
        assert!(check_g_nondecreasing(&id, &diamond_3(), &pairs).passed());
        let rev = MappingPair::finite(space, TableMap(vec![2, 1, 0]), TableMap::identity(3)).unwrap();
        assert!(!check_g_nondecreasing(&rev, &FiniteOrder::chain(3), &pairs).passed());

        let real = MappingPair::interval(
            IntervalSpace::new(0.0, f64::INFINITY).unwrap(),
            RealMap::Scale(1.0 / 3.0),
            RealMap::Scale(0.5),
            RealMap::Scale(2.0),
        );
        let samples = Sampling::new(0.0, 3.0).pairs();
        assert!(check_g_nondecreasing(&real, &StandardOrder, &samples).passed());
    }

    fn diamond_3() -> FiniteOrder {
        FiniteOrder::from_covers(3, &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn g_regular_cases() {
        let p = MappingPair::finite(FiniteSpace::discrete(3), TableMap(vec![0, 0, 1]), TableMap(vec![2, 0, 1])).unwrap();
        assert!(check_g_regular(&p, &FiniteOrder::chain(3)).passed());
        assert!(check_g_regular(&p, &FiniteOrder::antichain(3)).passed());
        // 0 <= 1 <= 0: a nondecreasing 2-cycle that never settles
        let cyc = FiniteOrder::from_matrix(vec![
            vec![true, true, false],
            vec![true, true, false],
            vec![false, false, true],
        ])
        .unwrap();
        assert_eq!(check_g_regular(&p, &cyc).witness(), Some(&vec![0, 1]));
    }

    #[test]
    fn nondecreasing_implies_admissible_on_random_tables() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let order = diamond();
        let alpha = alpha_from_order(order.clone());
        let space = FiniteSpace::discrete(4);
        let pairs = all_pairs(&space);
        let mut nondecreasing = 0;
        for _ in 0..2000 {
            let f = TableMap((0..4).map(|_| rng.gen_range(0..4)).collect());
            let g = TableMap((0..4).map(|_| rng.gen_range(0..4)).collect());
            let p = MappingPair::finite(space.clone(), f, g).unwrap();
            if check_g_nondecreasing(&p, &order, &pairs).passed() {
                nondecreasing += 1;
                assert!(check_alpha_admissible_wrt_g(&p, &alpha, &pairs).passed());
            }
        }
        assert!(nondecreasing > 20);
    }
}
