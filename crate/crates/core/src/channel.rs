//! I.i.d. depolarizing error sampling with the X/Z component split used by
//! CSS decoding.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;

/// Identifier of the stream algorithm, recorded in every results CSV.
pub const RNG_ALGORITHM: &str = "chacha8";

/// A reproducible random stream: (seed, stream) pairs give bit-identical
/// sequences on every platform, and per-trial streams make results
/// independent of worker count.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// An n-qubit Pauli error in symplectic form: qubit i carries X iff
/// ex[i]=1 and ez[i]=0, Z iff ez[i]=1 and ex[i]=0, Y iff both.
#[derive(Clone, Debug)]
pub struct PauliError {
    pub ex: BitVec,
    pub ez: BitVec,
}

impl PauliError {
    pub fn identity(n: usize) -> Self {
        PauliError {
            ex: BitVec::zeros(n),
            ez: BitVec::zeros(n),
        }
    }
}

/// Marginal flip probability of each CSS component: X and Y both flip the
/// X-component, so the component channel is a BSC with rate 2p/3.
pub fn component_prior(p_phys: f64) -> f64 {
    2.0 * p_phys / 3.0
}

/// Draw one depolarizing error: each qubit independently gets X, Y, or Z
/// with probability p_phys/3 each.
pub fn sample(n: usize, p_phys: f64, rng: &mut impl RngCore) -> Result<PauliError> {
    if !(0.0..=1.0).contains(&p_phys) {
        return Err(Error::Validation(format!(
            "physical error rate {p_phys} outside [0, 1]"
        )));
    }
    let mut err = PauliError::identity(n);
    for i in 0..n {
        let u: f64 = rng.gen();
        if u < p_phys {
            // Thirds of the error mass: X, then Y, then Z.
            if u < p_phys / 3.0 {
                err.ex.set(i, true);
            } else if u < 2.0 * p_phys / 3.0 {
                err.ex.set(i, true);
                err.ez.set(i, true);
            } else {
                err.ez.set(i, true);
            }
        }
    }
    Ok(err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_rate_is_identity() {
        let mut rng = RngStream::new(1, 0).rng();
        let e = sample(100, 0.0, &mut rng).unwrap();
        assert!(e.ex.is_zero());
        assert!(e.ez.is_zero());
    }

    #[test]
    fn unit_rate_always_errors() {
        let mut rng = RngStream::new(2, 0).rng();
        let e = sample(200, 1.0, &mut rng).unwrap();
        for i in 0..200 {
            assert!(e.ex.get(i) || e.ez.get(i));
        }
    }

    #[test]
    fn out_of_range_rejected() {
        let mut rng = RngStream::new(3, 0).rng();
        assert!(sample(10, 1.5, &mut rng).is_err());
        assert!(sample(10, -0.1, &mut rng).is_err());
    }

    #[test]
    fn component_prior_values() {
        assert_eq!(component_prior(0.0), 0.0);
        assert!((component_prior(0.15) - 0.10).abs() < 1e-12);
        assert!((component_prior(0.75) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn component_marginal_statistics() {
        // P(ex[i]=1) = 2p/3 and P(ex[i]=ez[i]=1) = p/3, within binomial CI.
        let (n, trials, p) = (10_000usize, 100usize, 0.15f64);
        let mut x_flips = 0usize;
        let mut y_count = 0usize;
        for t in 0..trials {
            let mut rng = RngStream::new(7, t as u64).rng();
            let e = sample(n, p, &mut rng).unwrap();
            x_flips += e.ex.weight();
            y_count += e.ex.iter_ones().filter(|&i| e.ez.get(i)).count();
        }
        let samples = (n * trials) as f64;
        let x_rate = x_flips as f64 / samples;
        let y_rate = y_count as f64 / samples;
        assert!((x_rate - 0.10).abs() < 0.003, "x_rate = {x_rate}");
        let sigma_y = (p / 3.0 * (1.0 - p / 3.0) / samples).sqrt();
        assert!((y_rate - p / 3.0).abs() < 4.0 * sigma_y, "y_rate = {y_rate}");
    }

    #[test]
    fn streams_reproducible() {
        let draw = || {
            let mut rng = RngStream::new(99, 5).rng();
            let e = sample(64, 0.3, &mut rng).unwrap();
            (e.ex.words().to_vec(), e.ez.words().to_vec())
        };
        assert_eq!(draw(), draw());
    }

    #[test]
    fn distinct_streams_differ() {
        let draw = |stream| {
            let mut rng = RngStream::new(99, stream).rng();
            sample(64, 0.3, &mut rng).unwrap().ex.words().to_vec()
        };
        assert_ne!(draw(0), draw(1));
    }

    #[test]
    fn per_index_frequency_uniformity() {
        // Exchangeability check: each index flips at roughly the same rate.
        let (n, trials, p) = (64usize, 3000usize, 0.3f64);
        let mut counts = vec![0usize; n];
        for t in 0..trials {
            let mut rng = RngStream::new(11, t as u64).rng();
            let e = sample(n, p, &mut rng).unwrap();
            for i in e.ex.iter_ones() {
                counts[i] += 1;
            }
        }
        let expect = 2.0 * p / 3.0 * trials as f64;
        let sigma = (2.0 * p / 3.0 * (1.0 - 2.0 * p / 3.0) * trials as f64).sqrt();
        for (i, &c) in counts.iter().enumerate() {
            assert!(
                (c as f64 - expect).abs() < 5.0 * sigma,
                "index {i}: {c} vs {expect}"
            );
        }
    }
}
