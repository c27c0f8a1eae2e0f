use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{RatMatrix, Rational};
use crate::error::{Error, Result};

/// Attempts before [`random_invertible_matrix`] gives up.
pub const MAX_MATRIX_ATTEMPTS: usize = 100;

/// Deterministic random source; equal seeds give equal streams on every platform.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream.
    pub fn derive(&self, stream: u64) -> SeededRng {
        SeededRng::new(derive_seed(self.seed, stream))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.gen_range(lo..=hi)
    }

    /// Uniform float in `(0, 1]`.
    pub fn unit_open(&mut self) -> f64 {
        1.0 - self.inner.gen::<f64>()
    }
}

/// Mixes a master seed with a stream index (splitmix64 finalizer).
pub fn derive_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A `size x size` matrix with integer entries in `[-bound, bound]` and
/// nonzero determinant.
pub fn random_invertible_matrix(rng: &mut SeededRng, size: usize, bound: i64) -> Result<RatMatrix> {
    if bound < 2 {
        return Err(Error::InvalidArgument(format!("coefficient bound must be at least 2, got {bound}")));
    }
    for _ in 0..MAX_MATRIX_ATTEMPTS {
        let mut m = RatMatrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                m.set(i, j, Rational::from(rng.int_in(-bound, bound)));
            }
        }
        if !m.determinant()?.is_zero() {
            return Ok(m);
        }
    }
    Err(Error::RngExhausted { size, attempts: MAX_MATRIX_ATTEMPTS })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_matrix() {
        let a = random_invertible_matrix(&mut SeededRng::new(7), 4, 10).unwrap();
        let b = random_invertible_matrix(&mut SeededRng::new(7), 4, 10).unwrap();
        assert_eq!(a, b);
        let c = random_invertible_matrix(&mut SeededRng::new(8), 4, 10).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn entries_respect_bound() {
        let m = random_invertible_matrix(&mut SeededRng::new(1), 5, 3).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let v = m.get(i, j);
                assert!(*v >= Rational::from(-3) && *v <= Rational::from(3));
            }
        }
        assert!(!m.determinant().unwrap().is_zero());
    }

    #[test]
    fn tiny_bound_rejected() {
        assert!(random_invertible_matrix(&mut SeededRng::new(1), 2, 1).is_err());
    }

    #[test]
    fn derived_streams_differ() {
        assert_ne!(derive_seed(5, 0), derive_seed(5, 1));
        assert_ne!(derive_seed(5, 0), derive_seed(6, 0));
        assert_eq!(derive_seed(5, 3), derive_seed(5, 3));
    }
}
