use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Monte Carlo mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// `|mean - target| <= k * std_error`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error
    }
}

/// Running mean and second central moment (Welford), mergeable by Chan's rule.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub n: u64,
    pub mean: f64,
    pub m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        let mean = self.mean + d * other.n as f64 / n as f64;
        let m2 = self.m2 + other.m2 + d * d * (self.n as f64 * other.n as f64) / n as f64;
        Moments { n, mean, m2 }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn estimate(&self, seed: u64) -> MCEstimate {
        MCEstimate {
            mean: self.mean,
            std_error: (self.variance() / self.n.max(1) as f64).sqrt(),
            n_samples: self.n,
            seed,
        }
    }
}

/// Generator of worker `index`: the seed fixes the key, the worker index
/// selects the stream.
pub fn worker_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Sizes of the contiguous chunks handed to the workers.
pub fn chunk_sizes(n: u64, workers: usize) -> Vec<u64> {
    let w = workers.max(1) as u64;
    (0..w).map(|i| n / w + u64::from(i < n % w)).collect()
}

pub(crate) fn check_samples(n: u64, workers: usize) -> Result<()> {
    if n == 0 || workers == 0 {
        return Err(Error::precondition("need at least one sample and one worker"));
    }
    Ok(())
}

/// Runs `per_worker(rng, count)` on each worker's stream in parallel and
/// returns the results in worker order. Output depends only on
/// `(seed, workers)`.
pub fn fan_out<T, F>(n: u64, seed: u64, workers: usize, per_worker: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync,
{
    chunk_sizes(n, workers)
        .into_par_iter()
        .enumerate()
        .map(|(i, count)| {
            let mut rng = worker_rng(seed, i as u64);
            per_worker(&mut rng, count)
        })
        .collect()
}

/// Mean of `sample(rng)` over `n` draws split across `workers` streams.
pub fn monte_carlo<F>(n: u64, seed: u64, workers: usize, sample: F) -> Result<MCEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    check_samples(n, workers)?;
    let parts = fan_out(n, seed, workers, |rng, count| {
        let mut m = Moments::default();
        for _ in 0..count {
            m.push(sample(rng));
        }
        m
    });
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    Ok(total.estimate(seed))
}
