use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::complex::{ComplexPoint, C64};
use crate::error::{Error, Result};

/// Which normalization of a functional equation a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportVariant {
    Paper,
    Derived,
}

impl ReportVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ReportVariant::Paper => "paper",
            ReportVariant::Derived => "derived",
        }
    }
}

/// Error estimates gathered while evaluating the two sides.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub lhs_error: f64,
    pub rhs_error: f64,
    pub evaluations: usize,
    pub notes: Vec<String>,
}

/// One functional-equation check at a single point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub s: ComplexPoint,
    pub lhs: ComplexPoint,
    pub rhs: ComplexPoint,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub variant: ReportVariant,
    pub diagnostics: Diagnostics,
}

impl ResidualReport {
    pub fn new(s: C64, lhs: C64, rhs: C64, variant: ReportVariant, diagnostics: Diagnostics) -> Result<Self> {
        let finite = |z: C64, side: &str| {
            ComplexPoint::try_from(z).map_err(|_| Error::NonConvergence {
                what: format!("{side} at s = {s}"),
                achieved: f64::INFINITY,
                requested: 0.0,
            })
        };
        let lhs_p = finite(lhs, "left side")?;
        let rhs_p = finite(rhs, "right side")?;
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / lhs.norm().max(rhs.norm()).max(1e-300);
        Ok(ResidualReport {
            s: ComplexPoint::try_from(s)?,
            lhs: lhs_p,
            rhs: rhs_p,
            abs_residual,
            rel_residual,
            variant,
            diagnostics,
        })
    }
}

pub const RESIDUAL_CSV_HEADER: [&str; 9] = [
    "s_re",
    "s_im",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "abs_residual",
    "rel_residual",
    "variant",
];

/// Writes reports as CSV with full-precision floats.
pub fn write_residual_csv<W: Write>(reports: &[ResidualReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESIDUAL_CSV_HEADER)?;
    for r in reports {
        w.write_record([
            format!("{:?}", r.s.re()),
            format!("{:?}", r.s.im()),
            format!("{:?}", r.lhs.re()),
            format!("{:?}", r.lhs.im()),
            format!("{:?}", r.rhs.re()),
            format!("{:?}", r.rhs.im()),
            format!("{:?}", r.abs_residual),
            format!("{:?}", r.rel_residual),
            r.variant.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
