use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{classify, line_count, LineComplex};
use crate::data::rational_string;
use crate::error::{Error, Result};
use crate::geometry::GeometrySpace;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub n: u32,
    pub seed: u64,
    pub trials: u64,
    pub admissible: u64,
    #[serde(with = "rational_string")]
    pub rate: BigRational,
}

/// Fraction of uniformly random complexes in `Z_2^n` that are admissible.
pub fn sample_admissibility_rate(n: u32, trials: u64, seed: u64) -> Result<SampleEstimate> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("sampling needs n >= 3, got {n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let space = GeometrySpace::new(2, n)?;
    let points = space.point_count();
    let total = line_count(points);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut admissible = 0u64;
    for _ in 0..trials {
        let ids = rand::seq::index::sample(&mut rng, total, points).into_vec();
        let complex = LineComplex::new(space, ids)?;
        if classify(&complex).admissible() {
            admissible += 1;
        }
    }
    Ok(SampleEstimate {
        n,
        seed,
        trials,
        admissible,
        rate: BigRational::new(BigInt::from(admissible), BigInt::from(trials)),
    })
}
