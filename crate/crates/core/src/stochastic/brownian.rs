use std::io::Write;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::mc::{check_samples, fan_out, worker_rng, MCEstimate, Moments};
use super::{gaussian_weight, MomentFunction};

/// A sampled trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrownianPath {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub seed: u64,
    pub drift_name: Option<String>,
}

impl BrownianPath {
    /// CSV with columns `t,value`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "value"])?;
        for (t, v) in self.times.iter().zip(&self.values) {
            w.write_record([format!("{t:?}"), format!("{v:?}")])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::precondition("empty time grid"));
    }
    if grid[0] != 0.0 {
        return Err(Error::precondition("time grid must start at 0"));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
        return Err(Error::precondition("time grid must be strictly ascending and finite"));
    }
    Ok(())
}

fn fill_path(grid: &[f64], rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut values = Vec::with_capacity(grid.len());
    let mut b = 0.0;
    values.push(0.0);
    for w in grid.windows(2) {
        let z: f64 = StandardNormal.sample(rng);
        b += (w[1] - w[0]).sqrt() * z;
        values.push(b);
    }
    values
}

/// Standard Brownian motion on `grid` (which must start at 0). The seed
/// determines the path exactly.
pub fn sample_brownian(grid: &[f64], seed: u64) -> Result<BrownianPath> {
    check_grid(grid)?;
    let mut rng = worker_rng(seed, 0);
    Ok(BrownianPath {
        times: grid.to_vec(),
        values: fill_path(grid, &mut rng),
        seed,
        drift_name: None,
    })
}

/// `B_t + m(t)`.
pub fn add_drift(path: &BrownianPath, m: &MomentFunction) -> BrownianPath {
    BrownianPath {
        times: path.times.clone(),
        values: path
            .times
            .iter()
            .zip(&path.values)
            .map(|(&t, &v)| v + m.value_at(t))
            .collect(),
        seed: path.seed,
        drift_name: Some(m.name().to_string()),
    }
}

/// `G(t)(B_sqrt(t) + m(sqrt(t)))` on the cell `[n-1, n]`, held constant
/// outside it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerRiemannPath {
    pub n: u32,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub seed: u64,
}

impl WienerRiemannPath {
    /// Linear interpolation inside the cell, constant extension outside.
    pub fn value_at(&self, t: f64) -> f64 {
        let (lo, hi) = (self.times[0], *self.times.last().expect("nonempty"));
        if t <= lo {
            return self.values[0];
        }
        if t >= hi {
            return *self.values.last().expect("nonempty");
        }
        let j = self.times.partition_point(|&x| x <= t).max(1);
        let (t0, t1) = (self.times[j - 1], self.times[j]);
        let w = (t - t0) / (t1 - t0);
        self.values[j - 1] * (1.0 - w) + self.values[j] * w
    }
}

/// One sample of the process on the `n`-th cell with `resolution` grid
/// intervals. Brownian values are drawn on the square-root image of the grid.
pub fn wiener_riemann_path(n: u32, m: &MomentFunction, resolution: usize, seed: u64) -> Result<WienerRiemannPath> {
    if n == 0 {
        return Err(Error::domain("cell index n must be at least 1"));
    }
    let res = resolution.max(1);
    let a = (n - 1) as f64;
    let times: Vec<f64> = (0..=res).map(|j| a + j as f64 / res as f64).collect();
    let mut sqrt_grid: Vec<f64> = Vec::with_capacity(res + 2);
    if a > 0.0 {
        sqrt_grid.push(0.0);
    }
    sqrt_grid.extend(times.iter().map(|t| t.sqrt()));
    let mut rng = worker_rng(seed, 0);
    let b = fill_path(&sqrt_grid, &mut rng);
    let offset = usize::from(a > 0.0);
    let values = times
        .iter()
        .enumerate()
        .map(|(j, &t)| {
            let r = t.sqrt();
            gaussian_weight(t) * (b[j + offset] + m.value_at(r))
        })
        .collect();
    Ok(WienerRiemannPath { n, times, values, seed })
}

/// Draws the cell `n` with `P(n) = 2^-n`, then a path on that cell.
pub fn sample_r_m(m: &MomentFunction, seed: u64, resolution: usize) -> Result<(u32, WienerRiemannPath)> {
    let mut rng = worker_rng(seed, 0);
    let n = draw_cell(&mut rng);
    let path_seed: u64 = rng.random();
    Ok((n, wiener_riemann_path(n, m, resolution, path_seed)?))
}

pub(crate) fn draw_cell(rng: &mut ChaCha8Rng) -> u32 {
    let geo = Geometric::new(0.5).expect("valid probability");
    (geo.sample(rng) + 1).min(u32::MAX as u64) as u32
}

/// Cell of `t` under half-open cells `[n-1, n)`.
pub fn cell_of(t: f64) -> u32 {
    t.floor() as u32 + 1
}

/// Closed form `2^-n G(t) m(sqrt t)` of the mean of `p(t)` under the measure.
pub fn mean_under_r_m(t: f64, m: &MomentFunction) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    let n = cell_of(t);
    Ok(0.5f64.powi(n as i32) * gaussian_weight(t) * m.value_at(t.sqrt()))
}

/// Value of a sampled `p(t)` for a path on cell `n`, drawn from its marginal.
pub(crate) fn marginal_sample(t: f64, n: u32, m: &MomentFunction, rng: &mut ChaCha8Rng) -> f64 {
    let e = t.clamp((n - 1) as f64, n as f64);
    let r = e.sqrt();
    let z: f64 = StandardNormal.sample(rng);
    gaussian_weight(e) * (r.sqrt() * z + m.value_at(r))
}

/// Monte Carlo estimate of the mean of `p(t)` under the measure.
pub fn mean_under_r_m_mc(t: f64, m: &MomentFunction, samples: u64, seed: u64, workers: usize) -> Result<MCEstimate> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time must be nonnegative, got {t}")));
    }
    super::mc::monte_carlo(samples, seed, workers, |rng| {
        let n = draw_cell(rng);
        marginal_sample(t, n, m, rng)
    })
}

/// Frequencies of the sampled cell index.
pub fn cell_frequencies(samples: u64, seed: u64, workers: usize, max_cell: u32) -> Result<Vec<MCEstimate>> {
    check_samples(samples, workers)?;
    let parts = fan_out(samples, seed, workers, |rng, count| {
        let mut acc = vec![Moments::default(); max_cell as usize];
        for _ in 0..count {
            let n = draw_cell(rng);
            for (i, a) in acc.iter_mut().enumerate() {
                a.push(if n as usize == i + 1 { 1.0 } else { 0.0 });
            }
        }
        acc
    });
    let mut total = vec![Moments::default(); max_cell as usize];
    for part in parts {
        for (t, p) in total.iter_mut().zip(part) {
            *t = t.merge(p);
        }
    }
    Ok(total.into_iter().map(|m| m.estimate(seed)).collect())
}

/// `sum_{n=1}^N 2^-n`, which tends to 1.
pub fn cell_mass(n_max: u32) -> f64 {
    (1..=n_max).map(|n| 0.5f64.powi(n as i32)).sum()
}

/// Moments of normalized increments of many independent paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncrementStats {
    pub paths: u64,
    pub increments: u64,
    pub variance: f64,
    pub variance_se: f64,
    pub kurtosis: f64,
    pub kurtosis_se: f64,
    pub terminal_variance: f64,
    pub terminal_variance_se: f64,
}

impl IncrementStats {
    pub fn passes(&self, k: f64) -> bool {
        (self.variance - 1.0).abs() <= k * self.variance_se
            && (self.kurtosis - 3.0).abs() <= k * self.kurtosis_se
            && (self.terminal_variance - 1.0).abs() <= k * self.terminal_variance_se
    }
}

/// Samples `paths` Brownian paths on a uniform grid of `[0, 1]` with `steps`
/// intervals and measures the variance and kurtosis of `dB / sqrt(dt)` and
/// the variance of `B_1`.
pub fn increment_stats(paths: u64, steps: usize, seed: u64, workers: usize) -> Result<IncrementStats> {
    check_samples(paths, workers)?;
    let steps = steps.max(1);
    let grid: Vec<f64> = (0..=steps).map(|j| j as f64 / steps as f64).collect();
    let dt = 1.0 / steps as f64;
    let parts = fan_out(paths, seed, workers, |rng, count| {
        let (mut s2, mut s4) = (0.0f64, 0.0f64);
        let mut terminal = Moments::default();
        for _ in 0..count {
            let b = fill_path(&grid, rng);
            for w in b.windows(2) {
                let z = (w[1] - w[0]) / dt.sqrt();
                let z2 = z * z;
                s2 += z2;
                s4 += z2 * z2;
            }
            terminal.push(*b.last().expect("nonempty"));
        }
        (s2, s4, terminal)
    });
    let (mut s2, mut s4) = (0.0, 0.0);
    let mut terminal = Moments::default();
    for (a, b, t) in parts {
        s2 += a;
        s4 += b;
        terminal = terminal.merge(t);
    }
    let n = (paths * steps as u64) as f64;
    let variance = s2 / n;
    let kurtosis = (s4 / n) / (variance * variance);
    Ok(IncrementStats {
        paths,
        increments: n as u64,
        variance,
        variance_se: (2.0 / n).sqrt(),
        kurtosis,
        kurtosis_se: (24.0 / n).sqrt(),
        // second moment about the known mean 0
        terminal_variance: terminal.m2 / terminal.n as f64 + terminal.mean * terminal.mean,
        terminal_variance_se: (2.0 / paths as f64).sqrt(),
    })
}
