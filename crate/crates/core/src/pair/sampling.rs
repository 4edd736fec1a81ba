use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sample design for hypotheses over a real interval: a deterministic grid
/// over `[lo, hi]` (all ordered pairs of grid points) followed by seeded
/// uniform random pairs in `[lo, hi]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampling {
    pub lo: f64,
    pub hi: f64,
    /// Grid spacing; `None` disables the grid.
    pub step: Option<f64>,
    pub random_pairs: usize,
    pub seed: u64,
}

impl Sampling {
    pub const DEFAULT_STEP: f64 = 0.01;
    pub const DEFAULT_RANDOM_PAIRS: usize = 10_000;
    pub const DEFAULT_SEED: u64 = 42;

    pub fn new(lo: f64, hi: f64) -> Self {
        Sampling {
            lo,
            hi,
            step: Some(Self::DEFAULT_STEP),
            random_pairs: Self::DEFAULT_RANDOM_PAIRS,
            seed: Self::DEFAULT_SEED,
        }
    }

    pub fn random_only(lo: f64, hi: f64, pairs: usize, seed: u64) -> Self {
        Sampling { lo, hi, step: None, random_pairs: pairs, seed }
    }

    pub fn grid_points(&self) -> Vec<f64> {
        let Some(step) = self.step else {
            return Vec::new();
        };
        let count = ((self.hi - self.lo) / step + 1e-9).floor() as usize;
        (0..=count).map(|k| self.lo + k as f64 * step).collect()
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Grid pairs in row-major order, then random pairs.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        let grid = self.grid_points();
        let mut out = Vec::with_capacity(grid.len() * grid.len() + self.random_pairs);
        for &x in &grid {
            for &y in &grid {
                out.push((x, y));
            }
        }
        let mut rng = self.rng();
        for _ in 0..self.random_pairs {
            out.push((rng.gen_range(self.lo..=self.hi), rng.gen_range(self.lo..=self.hi)));
        }
        out
    }

    /// Grid points, then as many random points as there are random pairs.
    pub fn points(&self) -> Vec<f64> {
        let mut out = self.grid_points();
        let mut rng = self.rng();
        out.extend((0..self.random_pairs).map(|_| rng.gen_range(self.lo..=self.hi)));
        out
    }
}
