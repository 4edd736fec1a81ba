use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::comparison::ComparisonFunction;
use crate::maps::TableMap;
use crate::pair::{AlphaMatrix, MappingPair};
use crate::spaces::random_euclidean_space;

use super::{run_theorem_suite, CoincidenceReport, FinitePair, Verdict};

/// Largest space the exhaustive search accepts; larger requests are clamped.
pub const MAX_SEARCH_SIZE: usize = 8;

const ALPHA_LEVELS: [f64; 4] = [0.0, 0.5, 1.0, 2.0];

/// One generated configuration.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub pair: FinitePair,
    pub alpha: AlphaMatrix,
    pub lambda: f64,
}

fn random_trial(rng: &mut ChaCha8Rng, max_size: usize) -> TrialConfig {
    let n = rng.gen_range(1..=max_size);
    let space = random_euclidean_space(rng, n);

    let g = if rng.gen_bool(0.5) {
        TableMap::identity(n)
    } else {
        TableMap((0..n).map(|_| rng.gen_range(0..n)).collect())
    };
    let range = g.range();
    let f = if rng.gen_bool(1.0 / 3.0) {
        TableMap::constant(n, *range.choose(rng).expect("g has a value"))
    } else {
        TableMap(
            (0..n)
                .map(|_| if rng.gen_bool(0.8) { *range.choose(rng).expect("g has a value") } else { rng.gen_range(0..n) })
                .collect(),
        )
    };

    let levels: &[f64] = if rng.gen_bool(0.25) { &ALPHA_LEVELS[2..] } else { &ALPHA_LEVELS };
    let alpha = AlphaMatrix(
        (0..n)
            .map(|_| (0..n).map(|_| *levels.choose(rng).expect("non-empty")).collect())
            .collect(),
    );
    let lambda = rng.gen_range(0.05..0.95);
    let pair = MappingPair::finite(space, f, g).expect("tables sized to the space");
    TrialConfig { pair, alpha, lambda }
}

/// Generates `trials` seeded random configurations on spaces of at most
/// `space_size_max` points and runs the full theorem suite on each.
pub fn falsification_trials(seed: u64, trials: usize, space_size_max: usize) -> Vec<(TrialConfig, CoincidenceReport)> {
    let max_size = space_size_max.clamp(1, MAX_SEARCH_SIZE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let config = random_trial(&mut rng, max_size);
            let psi = ComparisonFunction::linear(config.lambda).expect("lambda drawn inside (0, 1)");
            let report = run_theorem_suite(&config.pair, &config.alpha, &psi);
            (config, report)
        })
        .collect()
}

/// Reports of [`falsification_trials`].
pub fn falsification_search(seed: u64, trials: usize, space_size_max: usize) -> Vec<CoincidenceReport> {
    falsification_trials(seed, trials, space_size_max).into_iter().map(|(_, r)| r).collect()
}

/// Aggregate counts over a batch of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FalsificationSummary {
    pub trials: usize,
    pub contradictions: usize,
    pub coincidence_hypotheses_passed: usize,
    pub with_coincidence_point: usize,
    pub fixed_point_hypotheses_passed: usize,
    pub with_unique_common_fixed_point: usize,
    pub with_shared_point_of_coincidence: usize,
}

impl FalsificationSummary {
    pub fn from_reports<'a>(reports: impl IntoIterator<Item = &'a CoincidenceReport>) -> Self {
        let mut s = FalsificationSummary::default();
        for r in reports {
            s.trials += 1;
            if r.verdict.is_contradiction() {
                s.contradictions += 1;
            }
            if r.coincidence_hypotheses_hold() {
                s.coincidence_hypotheses_passed += 1;
                if !r.sets.coincidence_points.is_empty() {
                    s.with_coincidence_point += 1;
                }
                if r.fixed_point_hypotheses_hold() {
                    s.fixed_point_hypotheses_passed += 1;
                    if r.sets.common_fixed_points.len() == 1 {
                        s.with_unique_common_fixed_point += 1;
                    }
                    if r.shared_point_of_coincidence {
                        s.with_shared_point_of_coincidence += 1;
                    }
                }
            }
        }
        s
    }

    pub fn contradiction_free(&self) -> bool {
        self.contradictions == 0
            && self.with_coincidence_point == self.coincidence_hypotheses_passed
            && self.with_unique_common_fixed_point == self.fixed_point_hypotheses_passed
            && self.with_shared_point_of_coincidence == self.fixed_point_hypotheses_passed
    }
}

/// First report with a contradiction, if any.
pub fn first_contradiction(reports: &[CoincidenceReport]) -> Option<(usize, &Verdict)> {
    reports.iter().enumerate().find(|(_, r)| r.verdict.is_contradiction()).map(|(i, r)| (i, &r.verdict))
}
