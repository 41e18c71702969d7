//! Test functions of the Poisson space: membership checks, built-in members
//! and the Poisson summation residual.

pub mod builtins;
mod loader;
mod membership;
mod psf;
mod test_function;

pub use builtins::{builtin, constant, exp_inverse, gaussian, gaussian_p, hermite_even, BUILTIN_NAMES};
pub use loader::{load_test_functions, parse_test_functions, resolve};
pub use membership::{check_membership, ConditionVerdict, MembershipReport, SamplingGrid};
pub use psf::{psf_residual, psf_scaled_residual, PsfReport};
pub use test_function::{MellinFn, RealFn, TestFunction};

#[cfg(test)]
mod tests;
