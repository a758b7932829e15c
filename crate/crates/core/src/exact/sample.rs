//! Seeded random rationals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::Rational;

/// Draws rationals `p/q` with `|p| <= bound` and `1 <= q <= bound` from a
/// seeded ChaCha stream, so a seed fixes every sample.
#[derive(Clone, Debug)]
pub struct RationalSampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl RationalSampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        RationalSampler { rng: ChaCha8Rng::seed_from_u64(seed), bound: bound.max(1) }
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        Rational::new(p.into(), q.into())
    }

    /// A nonzero integer in `[-bound, bound]`.
    pub fn nonzero_integer(&mut self) -> i64 {
        loop {
            let p = self.rng.gen_range(-self.bound..=self.bound);
            if p != 0 {
                return p;
            }
        }
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows).map(|_| self.vector(cols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = RationalSampler::new(7, 100).matrix(3, 4);
        let b = RationalSampler::new(7, 100).matrix(3, 4);
        assert_eq!(a, b);
        assert_ne!(a, RationalSampler::new(8, 100).matrix(3, 4));
    }
}
