//! Brownian motion with drift, the Wiener-Riemann process and measure,
//! 1/2-stable Lévy moments and the characteristic numbers `b_s`, `m_s`.

mod brownian;
mod characteristic;
mod levy;
mod mc;
mod moment;

pub use brownian::{
    add_drift, cell_frequencies, cell_mass, cell_of, increment_stats, mean_under_r_m, mean_under_r_m_mc,
    sample_brownian, sample_r_m, wiener_riemann_path, BrownianPath, IncrementStats, WienerRiemannPath,
};
pub use characteristic::{
    b_s_components, b_s_components_with, folded_normal_mean, m_s_mc, m_s_value, BsReport, DEFAULT_Y0,
};
pub(crate) use characteristic::m_s_integral;
pub use levy::{
    diagnose, levy_density, levy_ladder, levy_moment, levy_moment_closed_form, DivergenceDiagnostic, LevyMoment,
    Verdict, DEFAULT_LADDER,
};
pub use mc::{chunk_sizes, fan_out, monte_carlo, worker_rng, MCEstimate, Moments};
pub use moment::MomentFunction;

/// `G(t) = exp(-pi t^2)`.
pub fn gaussian_weight(t: f64) -> f64 {
    (-std::f64::consts::PI * t * t).exp()
}

#[cfg(test)]
mod tests;
