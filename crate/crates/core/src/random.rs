//! Seeded random arrangements for corpus runs.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

const ATTEMPTS: usize = 64;

/// `n` pairwise non-proportional rational hyperplanes in `𝕂^ℓ` with integer
/// coefficients in `[−bound, bound]`, spanning the dual space. The same
/// arguments always give the same arrangement.
pub fn random_arrangement(seed: u64, rank: usize, n: usize, bound: u32) -> Result<Arrangement> {
    if rank == 0 || n < rank || bound == 0 {
        return Err(Error::Invalid("need rank ≥ 1, n ≥ rank and a positive bound".into()));
    }
    // lines through the origin with coefficients in the box
    let available = ((2 * bound as u128 + 1).saturating_pow(rank as u32) - 1) / 2;
    if (n as u128) > available {
        return Err(Error::Invalid("not enough distinct hyperplanes for the coefficient bound".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = bound as i64;
    for _ in 0..ATTEMPTS {
        let mut hs: Vec<Hyperplane> = Vec::with_capacity(n);
        let mut draws = 0;
        while hs.len() < n && draws < 64 * n {
            draws += 1;
            let form: Vec<Scalar> = (0..rank).map(|_| Scalar::from_int(rng.gen_range(-b..=b))).collect();
            let Ok(h) = Hyperplane::new(form) else { continue };
            if !hs.contains(&h) {
                hs.push(h);
            }
        }
        if hs.len() < n {
            continue;
        }
        let a = Arrangement::new(rank, Field::Rational, hs)?;
        if a.is_essential() {
            return Ok(a);
        }
    }
    Err(Error::Invalid("no essential arrangement found within the retry budget".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_essential() {
        let a = random_arrangement(1, 3, 3, 1).unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.form_rank(), 3);
        assert_eq!(a, random_arrangement(1, 3, 3, 1).unwrap());
        assert_ne!(random_arrangement(1, 3, 6, 3).unwrap(), random_arrangement(2, 3, 6, 3).unwrap());
    }

    #[test]
    fn impossible_requests_fail() {
        // 13 lines through the origin in the box [−1,1]³
        assert!(random_arrangement(0, 3, 13, 1).is_ok());
        assert!(random_arrangement(0, 3, 14, 1).is_err());
        assert!(random_arrangement(0, 3, 2, 1).is_err());
    }
}
