use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{point_config, rsk_shape, PointConfiguration, YoungDiagram};
use crate::error::{Error, Result};

/// Largest intensity accepted by the inversion Poisson sampler.
pub const MAX_POISSON_THETA: f64 = 30.0;

/// One draw from the poissonized Plancherel measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlancherelSample {
    pub n: usize,
    pub lambda: YoungDiagram,
    pub config: PointConfiguration,
}

/// The random stream for sample `index` under `seed`. Streams for distinct
/// indices are independent, so samples can be drawn in any order or in parallel.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Plancherel-distributed diagram with `n` boxes: the RSK shape of a uniform permutation.
pub fn sample_plancherel<R: Rng + ?Sized>(n: usize, rng: &mut R) -> YoungDiagram {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    rsk_shape(&perm).expect("shuffle yields a permutation")
}

/// Poisson variate by sequential inversion.
pub fn sample_poisson<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> Result<usize> {
    if !(0.0..=MAX_POISSON_THETA).contains(&theta) {
        return Err(Error::Invalid(format!("poisson intensity must lie in [0, {MAX_POISSON_THETA}], got {theta}")));
    }
    let u: f64 = rng.gen();
    let mut k = 0usize;
    let mut p = (-theta).exp();
    let mut cdf = p;
    while u > cdf {
        k += 1;
        p *= theta / k as f64;
        if p == 0.0 {
            break;
        }
        cdf += p;
    }
    Ok(k)
}

/// A draw from the poissonized Plancherel measure with intensity `theta`.
pub fn sample_poissonized<R: Rng + ?Sized>(theta: f64, rng: &mut R) -> Result<PlancherelSample> {
    if !(theta > 0.0) {
        return Err(Error::Invalid(format!("theta must be positive, got {theta}")));
    }
    let n = sample_poisson(theta, rng)?;
    let lambda = sample_plancherel(n, rng);
    let config = point_config(&lambda);
    Ok(PlancherelSample { n, lambda, config })
}
