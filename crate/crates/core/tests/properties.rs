use coincidence::adapters::{
    alpha_from_cyclic, alpha_from_order, check_dominance, check_g_nondecreasing, reduce_corollary, CorollaryConfig,
};
use coincidence::comparison::DEFAULT_TAIL_EPS;
use coincidence::iterate::{verify_alpha_chain, verify_step_bounds, TRACE_SLACK};
use coincidence::oracle::{enumerate_coincidence, falsification_trials, FalsificationSummary, TrialConfig};
use coincidence::pair::{check_alpha_admissible_wrt_g, check_contractive, AlphaMatrix, ConstAlpha};
use coincidence::scenario::{fmt_number, parse_number, run_scenario_text, Scenario};
use coincidence::spaces::{all_pairs, random_euclidean_space, CyclicPartition, FiniteOrder};
use coincidence::{
    jungck_iterate, Alpha, ComparisonFunction, IterateOptions, MappingPair, MetricSpace, Outcome,
    TableMap,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn trial(seed: u64, max_size: usize) -> (TrialConfig, coincidence::oracle::CoincidenceReport) {
    falsification_trials(seed, 1, max_size).pop().unwrap()
}

fn lambda() -> impl Strategy<Value = f64> {
    0.01f64..0.99
}

proptest! {
    #[test]
    fn linear_psi_is_a_comparison_function(l in lambda(), a in 0.0f64..1e6, b in 0.0f64..1e6) {
        let psi = ComparisonFunction::linear(l).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(psi.eval(lo) <= psi.eval(hi));
        prop_assert_eq!(psi.eval(0.0), 0.0);
        if hi > 0.0 {
            prop_assert!(psi.eval(hi) < hi);
        }
    }

    #[test]
    fn linear_iterate_is_a_power(l in lambda(), t in 0.0f64..1e3, n in 0usize..200) {
        let psi = ComparisonFunction::linear(l).unwrap();
        let exact = l.powi(n as i32) * t;
        let got = psi.iterate(n, t);
        prop_assert!((got - exact).abs() <= 4.0 * f64::EPSILON * exact.abs() * (n.max(1) as f64), "{got} vs {exact}");
    }

    #[test]
    fn linear_tail_bounds_dominate_partial_sums_and_decrease(l in lambda(), t in 0.0f64..100.0, n in 0usize..50) {
        let psi = ComparisonFunction::linear(l).unwrap();
        let bounds = psi.tail_bounds(t, n + 1, DEFAULT_TAIL_EPS).unwrap();
        prop_assert!(bounds[n + 1] <= bounds[n]);
        let mut partial = 0.0;
        for p in n..n + 400 {
            partial += psi.iterate(p, t);
            prop_assert!(partial <= bounds[n] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn table_psi_is_monotone_and_below_identity(
        steps in prop::collection::vec((0.01f64..5.0, 0.05f64..0.95), 1..12),
        a in 0.0f64..80.0,
        b in 0.0f64..80.0,
    ) {
        let mut knots = vec![(0.0, 0.0)];
        let (mut t, mut v) = (0.0f64, 0.0f64);
        for (dt, frac) in steps {
            let nt = t + dt;
            v = v.max(frac * nt).min(nt * 0.95);
            t = nt;
            knots.push((t, v));
        }
        let psi = ComparisonFunction::table(knots).unwrap();
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(psi.eval(lo) <= psi.eval(hi) + 1e-12);
        if hi > 0.0 {
            prop_assert!(psi.eval(hi) < hi);
        }
        prop_assert_eq!(psi.eval(0.0), 0.0);
    }

    #[test]
    fn random_spaces_are_metrics(seed: u64, n in 1usize..9) {
        let space = random_euclidean_space(&mut ChaCha8Rng::seed_from_u64(seed), n);
        prop_assert_eq!(space.len(), n);
        prop_assert!(space.validate().passed());
    }

    #[test]
    fn m_term_is_symmetric_and_dominates_direct_distance(seed: u64) {
        let (config, _) = trial(seed, 6);
        let pair = &config.pair;
        let space = pair.space();
        for (x, y) in all_pairs(space) {
            let m = pair.compute_m(x, y).unwrap();
            prop_assert_eq!(m, pair.compute_m(y, x).unwrap());
            prop_assert!(m >= space.metric(pair.gx(x), pair.gx(y)));
        }
    }

    #[test]
    fn m_term_of_identities_is_the_metric(seed: u64, n in 1usize..7) {
        let space = random_euclidean_space(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let pair = MappingPair::finite(space.clone(), TableMap::identity(n), TableMap::identity(n)).unwrap();
        for (x, y) in all_pairs(&space) {
            prop_assert_eq!(pair.compute_m(x, y).unwrap(), space.metric(x, y));
        }
    }

    #[test]
    fn contractive_with_identity_g_matches_direct_evaluation(seed: u64, l in lambda()) {
        let (config, _) = trial(seed, 6);
        let space = config.pair.space().clone();
        let n = space.len();
        let pair = MappingPair::finite(space.clone(), config.pair.f().clone(), TableMap::identity(n)).unwrap();
        let psi = ComparisonFunction::linear(l).unwrap();
        let pairs = all_pairs(&space);
        let f = |x: usize| pair.fx(x);
        let d = |a: usize, b: usize| space.metric(a, b);
        let direct = pairs.iter().all(|&(x, y)| {
            let m = d(x, y).max((d(x, f(x)) + d(y, f(y))) / 2.0).max((d(x, f(y)) + d(y, f(x))) / 2.0);
            d(f(x), f(y)) <= l * m + 1e-12
        });
        prop_assert_eq!(check_contractive(&pair, &ConstAlpha(1.0), &psi, &pairs, 1e-12).passed(), direct);
    }

    #[test]
    fn finite_preimage_lands_in_the_fiber(seed: u64) {
        let (config, _) = trial(seed, 8);
        let pair = &config.pair;
        for x in 0..pair.space().len() {
            let y = pair.gx(x);
            let pre = pair.g_preimage(y).unwrap();
            prop_assert_eq!(pair.gx(pre), y);
            prop_assert!(pre <= x);
        }
    }

    #[test]
    fn traces_satisfy_the_jungck_relation_and_are_deterministic(seed: u64, x0_pick: usize) {
        let (config, _) = trial(seed, 6);
        let psi = ComparisonFunction::linear(config.lambda).unwrap();
        let n = config.pair.space().len();
        let x0 = x0_pick % n;
        let opts = IterateOptions { max_iter: 200, ..Default::default() };
        let Ok(trace) = jungck_iterate(&config.pair, &config.alpha, &psi, x0, &opts) else {
            return Ok(());
        };
        for k in 0..trace.f_values.len().saturating_sub(1) {
            prop_assert_eq!(trace.g_values[k + 1], trace.f_values[k]);
        }
        if let Outcome::CoincidenceFound(z) = trace.outcome {
            prop_assert_eq!(config.pair.fx(z), config.pair.gx(z));
            prop_assert!(enumerate_coincidence(&config.pair).coincidence_points.contains(&z));
        }
        let again = jungck_iterate(&config.pair, &config.alpha, &psi, x0, &opts).unwrap();
        prop_assert_eq!(again, trace);
    }

    #[test]
    fn passing_hypotheses_give_well_behaved_traces(seed: u64) {
        let (config, report) = trial(seed, 6);
        prop_assume!(report.coincidence_hypotheses_hold());
        let psi = ComparisonFunction::linear(config.lambda).unwrap();
        let x0 = report.iteration.as_ref().unwrap().x0;
        let trace = jungck_iterate(&config.pair, &config.alpha, &psi, x0, &IterateOptions::default()).unwrap();
        prop_assert!(verify_alpha_chain(&trace).passed());
        prop_assert!(verify_step_bounds(&trace, &psi).passed());
        for w in trace.step_distances.windows(2) {
            if w[0] > 0.0 {
                prop_assert!(w[1] <= psi.eval(w[0]) + TRACE_SLACK);
            }
        }
        prop_assert!(matches!(trace.outcome, Outcome::CoincidenceFound(_)));
    }

    #[test]
    fn oracle_sets_are_nested_and_step_one_holds(seed: u64) {
        let (config, report) = trial(seed, 6);
        let sets = &report.sets;
        prop_assert!(sets.common_fixed_points.iter().all(|p| sets.coincidence_points.contains(p)));
        if report.fixed_point_hypotheses_hold() {
            let g: Vec<usize> = sets.coincidence_points.iter().map(|&z| config.pair.gx(z)).collect();
            prop_assert!(g.windows(2).all(|w| w[0] == w[1]));
        }
        prop_assert!(!report.verdict.is_contradiction(), "{:?}", report.verdict);
    }

    #[test]
    fn falsification_is_contradiction_free(seed: u64) {
        let reports: Vec<_> = falsification_trials(seed, 40, 5).into_iter().map(|(_, r)| r).collect();
        prop_assert!(FalsificationSummary::from_reports(&reports).contradiction_free());
    }

    #[test]
    fn order_alpha_is_symmetric_and_monotone_g_gives_admissibility(seed: u64, n in 1usize..7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..10)) {
        let covers: Vec<(usize, usize)> = edges.into_iter().filter(|&(a, b)| a < b && b < n).collect();
        let order = FiniteOrder::from_covers(n, &covers).unwrap();
        prop_assert!(order.validate().passed());
        let alpha = alpha_from_order(order.clone());
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(alpha.alpha(x, y), alpha.alpha(y, x));
            }
        }
        let space = random_euclidean_space(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        use rand::Rng;
        let f = TableMap((0..n).map(|_| rng.gen_range(0..n)).collect());
        let g = TableMap((0..n).map(|_| rng.gen_range(0..n)).collect());
        let pair = MappingPair::finite(space.clone(), f, g).unwrap();
        let pairs = all_pairs(&space);
        if check_g_nondecreasing(&pair, &order, &pairs).passed() {
            prop_assert!(check_alpha_admissible_wrt_g(&pair, &alpha, &pairs).passed());
        }
    }

    #[test]
    fn cyclic_alpha_is_symmetric(n in 2usize..8, split in 1usize..7, g in prop::collection::vec(0usize..8, 8)) {
        let split = split.min(n - 1);
        let g = TableMap(g.into_iter().take(n).map(|v| v % n).collect());
        let part = CyclicPartition::finite((0..split).collect(), (split - 1..n).collect(), n).unwrap();
        let alpha = alpha_from_cyclic(&part, &g);
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(alpha.alpha(x, y), alpha.alpha(y, x));
            }
        }
    }

    #[test]
    fn corollary_right_sides_are_dominated(
        quads in prop::collection::vec(prop::array::uniform4(0.0f64..10.0), 1..50),
        l in 0.01f64..0.49,
        a in 0.0f64..0.3, b in 0.0f64..0.17, c in 0.0f64..0.17,
    ) {
        let mut configs = vec![
            CorollaryConfig::Banach(l),
            CorollaryConfig::Kannan(l),
            CorollaryConfig::Chatterjea(l),
            CorollaryConfig::Ciric(l),
            CorollaryConfig::Berinde(ComparisonFunction::linear(l).unwrap()),
        ];
        if a + 2.0 * b + 2.0 * c > 0.0 {
            configs.push(CorollaryConfig::HardyRogers { a, b, c });
        }
        for config in configs {
            let r = reduce_corollary(config).unwrap();
            prop_assert!(check_dominance(&r, &quads, 1e-12).passed());
        }
    }

    #[test]
    fn numbers_round_trip_through_text(x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO) {
        prop_assert_eq!(parse_number(&fmt_number(x), 1).unwrap(), x);
    }

    #[test]
    fn interval_scenarios_round_trip(lo in -50.0f64..0.0, width in 0.1f64..50.0, l in lambda(), slope in -2.0f64..2.0, x0 in 0.0f64..1.0, seed: u64) {
        let text = format!(
            "[space]\nkind = interval\nlo = {}\nhi = {}\n[pair]\nf = affine {} 0.25\ng = identity\ng_inverse = identity\n\
             [alpha]\nform = box {} {} 1 0.5\n[psi]\nlinear = {}\n[run]\nmode = iterate\nx0 = {}\nseed = {seed}\n",
            fmt_number(lo), fmt_number(lo + width), fmt_number(slope), fmt_number(lo), fmt_number(lo + width / 2.0),
            fmt_number(l), fmt_number(lo + x0 * width),
        );
        let s = Scenario::parse(&text).unwrap();
        let again = Scenario::parse(&s.to_text()).unwrap();
        prop_assert_eq!(&again, &s);
        prop_assert_eq!(run_scenario_text(&text, None).1.render(), run_scenario_text(&s.to_text(), None).1.render());
    }
}

#[test]
fn linear_membership_passes_on_a_hundredth_grid() {
    let samples: Vec<f64> = (1..=1000).map(|k| k as f64 * 0.01).collect();
    for k in 1..100 {
        let psi = ComparisonFunction::linear(k as f64 / 100.0).unwrap();
        assert!(psi.check_membership(&samples).passed(), "lambda {}", k as f64 / 100.0);
    }
}

#[test]
fn scenario_corpus_round_trips_and_reports_are_reproducible() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("scn") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let s = Scenario::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(Scenario::parse(&s.to_text()).unwrap(), s, "{}", path.display());
        let (c1, r1) = run_scenario_text(&text, Some(9));
        let (c2, r2) = run_scenario_text(&text, Some(9));
        assert_eq!((c1, r1.render()), (c2, r2.render()), "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 8);
}

#[test]
fn alpha_matrix_values_come_from_the_quantized_set() {
    for (config, _) in falsification_trials(3, 100, 6) {
        let AlphaMatrix(rows) = &config.alpha;
        assert!(rows.iter().flatten().all(|v| [0.0, 0.5, 1.0, 2.0].contains(v)));
    }
}
