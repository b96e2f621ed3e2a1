//! The deterministic sampling scheme used for pointwise function-equality
//! audits: all signed unit vectors, the all-ones vector, and a seeded batch of
//! uniform integer vectors in `[-10, 10]^d`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{rat, unit_vector, Rational};

/// Seed of the default audit sample stream.
pub const DEFAULT_SAMPLE_SEED: u64 = 0;

/// Number of random vectors added on top of the structured ones.
pub const DEFAULT_SAMPLE_COUNT: usize = 100;

/// Deterministic audit points: `±e_i`, the all-ones vector, then `count`
/// uniform integer vectors in `[-10, 10]^d` from a ChaCha8 stream.
pub fn sample_points(d: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut points = Vec::with_capacity(2 * d + 1 + count);
    for i in 0..d {
        let e = unit_vector(d, i);
        points.push(e.clone());
        points.push(e.into_iter().map(|x| -x).collect());
    }
    points.push(vec![rat(1); d]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        points.push((0..d).map(|_| rat(rng.gen_range(-10..=10))).collect());
    }
    points
}

/// Default-seeded sample points.
pub fn default_samples(d: usize) -> Vec<Vec<Rational>> {
    sample_points(d, DEFAULT_SAMPLE_COUNT, DEFAULT_SAMPLE_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let a = sample_points(3, 10, 7);
        let b = sample_points(3, 10, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 3 + 1 + 10);
        assert_ne!(sample_points(3, 10, 8), a);
    }

    #[test]
    fn structured_prefix() {
        let pts = sample_points(2, 0, 0);
        assert_eq!(pts[0], vec![rat(1), rat(0)]);
        assert_eq!(pts[1], vec![rat(-1), rat(0)]);
        assert_eq!(pts[4], vec![rat(1), rat(1)]);
    }
}
