//! Γ, Riemann and Hurwitz ζ, the Davenport-Heilbronn combination ζ_H and
//! critical-line zeros.

mod gamma;
mod zeros;
mod zeta;

pub use gamma::{gamma, ln_gamma, reciprocal_gamma};
pub use zeros::{
    hardy_theta, hardy_z, riemann_von_mangoldt_count, winding_number, zero_scan, zeta_h_zero_scan, Rectangle,
    ZeroCount, ZeroRecord, ZetaHCell, ZERO_TOLERANCE,
};
pub use zeta::{
    compare_gamma_pairings, eta_constant, functional_eq_residual_h, functional_eq_sides_h, hurwitz_difference,
    hurwitz_zeta, riemann_zeta, zeta_h, FunctionalEquationSides, GammaPairing, PairingComparison,
};

pub(crate) use zeta::bernoulli_ratios;
