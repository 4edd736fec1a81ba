use rand::Rng;

use super::FiniteSpace;

/// Smallest allowed separation between generated points.
const MIN_SEPARATION: f64 = 1e-6;

/// `n` distinct points drawn uniformly from the unit square, with Euclidean
/// distances. The triangle inequality holds by construction.
pub fn random_euclidean_space<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FiniteSpace {
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = (rng.gen::<f64>(), rng.gen::<f64>());
        if pts.iter().all(|q| euclid(p, *q) >= MIN_SEPARATION) {
            pts.push(p);
        }
    }
    let dist = pts
        .iter()
        .map(|&p| pts.iter().map(|&q| euclid(p, q)).collect())
        .collect();
    FiniteSpace::from_matrix(dist).expect("square by construction")
}

fn euclid(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use crate::spaces::MetricSpace;

    proptest! {
        #[test]
        fn generated_spaces_are_metric(seed in any::<u64>(), n in 1usize..=8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_euclidean_space(&mut rng, n);
            prop_assert!(s.validate().passed());
            for x in 0..n {
                for y in 0..n {
                    let d = s.distance(x, y).unwrap();
                    prop_assert_eq!(d, s.distance(y, x).unwrap());
                    prop_assert_eq!(d == 0.0, x == y);
                }
            }
        }
    }
}
