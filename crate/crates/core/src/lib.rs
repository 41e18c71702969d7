//! Numerical laboratory for Mellin/theta transforms, Poisson-space test
//! functions, Wiener-Riemann measures and Müntz-type functional equations of
//! the Riemann zeta function.

pub mod complex;
pub mod error;
pub mod experiment;
pub mod muntz_relations;
pub mod poisson_space;
pub mod quadrature;
pub mod report;
pub mod special_functions;
pub mod stochastic;
pub mod transforms;

pub use complex::{ComplexPoint, C64};
pub use error::{Error, Result};
pub use poisson_space::{MembershipReport, TestFunction};
pub use quadrature::{Envelope, QuadratureSpec, TailStrategy};
pub use report::{Diagnostics, ReportVariant, ResidualReport};
pub use special_functions::ZeroRecord;
pub use transforms::{SeriesSpec, TransformValue};
