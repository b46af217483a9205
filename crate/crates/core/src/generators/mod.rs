//! Seeded path generators.
//!
//! Randomness comes from ChaCha20 (`rand_chacha`) seeded through
//! `seed_from_u64`, so a seed fixes the output on every platform.

mod brownian;
mod fbm;
mod fourier;
mod kono;
mod skeleton;
mod step;

pub use brownian::{brownian_dyadic, BrownianSample};
pub use fbm::{fbm_cholesky, FbmSampler};
pub use fourier::{
    exact_truncated_mean, fourier_pair_sums, fourier_pair_sums_multi, FourierPairSpec,
    FourierPairSums, FourierPairCoefficients,
};
pub use kono::{kono_path, KonoSpec};
pub use skeleton::{first_passage_skeleton, Skeleton};
pub use step::step_path;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

/// Name of the generator behind every seed.
pub const RNG_ALGORITHM: &str = "ChaCha20";

/// A seed together with the generator it drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Seeded {
    pub seed: u64,
}

impl Seeded {
    pub fn new(seed: u64) -> Self {
        Seeded { seed }
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    pub fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

pub(crate) fn normals(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}
