//! Seeded random test vectors.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `count` complex vectors of length `n` with entries uniform in the unit square
/// `[−1, 1]²`, normalized in `ℓ²`. The same seed always gives the same vectors.
pub fn unit_vectors(n: usize, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let v: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 0.0 {
                break v.into_iter().map(|z| z / norm).collect();
            }
        })
        .collect()
}
