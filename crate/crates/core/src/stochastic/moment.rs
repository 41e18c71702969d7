use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Drift `m` of the Brownian motion: `m(0) = 1`, `0 <= m <= 1`, `m = 0` on
/// `[1, inf)`, Lipschitz with the declared constant.
#[derive(Clone)]
pub struct MomentFunction {
    name: String,
    value: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    lipschitz_bound: f64,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for MomentFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MomentFunction")
            .field("name", &self.name)
            .field("lipschitz_bound", &self.lipschitz_bound)
            .finish()
    }
}

const DYADIC_LEVEL: u32 = 12;

impl MomentFunction {
    /// Validates the conditions on a dyadic grid of `[0, 1]` and samples of `[1, 8]`.
    pub fn new(
        name: impl Into<String>,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lipschitz_bound: f64,
    ) -> Result<Self> {
        let m = MomentFunction {
            name: name.into(),
            value: Arc::new(value),
            lipschitz_bound,
            breakpoints: Vec::new(),
        };
        m.validate()?;
        Ok(m)
    }

    /// The drift-free case; exempt from the conditions.
    pub fn zero() -> Self {
        MomentFunction {
            name: "zero".into(),
            value: Arc::new(|_| 0.0),
            lipschitz_bound: 0.0,
            breakpoints: Vec::new(),
        }
    }

    /// `max(0, 1 - k x)`.
    pub fn tent(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("tent index k must be at least 1"));
        }
        let kf = k as f64;
        let mut m = MomentFunction::new(format!("tent({k})"), move |x| (1.0 - kf * x).max(0.0), kf)?;
        m.breakpoints = vec![1.0 / kf];
        Ok(m)
    }

    /// `tent(k)` or `zero`.
    pub fn by_name(name: &str) -> Result<Self> {
        let name = name.trim();
        if name == "zero" {
            return Ok(Self::zero());
        }
        if let Some(arg) = name.strip_prefix("tent(").and_then(|r| r.strip_suffix(')')) {
            let k = arg
                .trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad tent index '{arg}'")))?;
            return Self::tent(k);
        }
        Err(Error::UnknownName(format!("moment function {name}")))
    }

    pub fn with_breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    fn validate(&self) -> Result<()> {
        let fail = |what: String| Err(Error::precondition(format!("{}: {what}", self.name)));
        if !(self.lipschitz_bound >= 0.0 && self.lipschitz_bound.is_finite()) {
            return fail("Lipschitz bound must be finite and nonnegative".into());
        }
        if self.value_at(0.0) != 1.0 {
            return fail(format!("m(0) = {} instead of 1", self.value_at(0.0)));
        }
        let steps = 1u32 << DYADIC_LEVEL;
        let dx = 1.0 / steps as f64;
        let mut prev = self.value_at(0.0);
        for j in 1..=steps {
            let x = j as f64 * dx;
            let v = self.value_at(x);
            if !(0.0..=1.0).contains(&v) {
                return fail(format!("m({x}) = {v} outside [0, 1]"));
            }
            if (v - prev).abs() > self.lipschitz_bound * dx * (1.0 + 1e-9) + 1e-15 {
                return fail(format!("jump {} at x = {x} exceeds the Lipschitz bound", (v - prev).abs()));
            }
            prev = v;
        }
        for j in 0..=700 {
            let x = 1.0 + j as f64 * 0.01;
            let v = self.value_at(x);
            if v != 0.0 {
                return fail(format!("m({x}) = {v} but m must vanish on [1, inf)"));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value_at(&self, x: f64) -> f64 {
        (self.value)(x)
    }

    pub fn lipschitz_bound(&self) -> f64 {
        self.lipschitz_bound
    }

    /// Kinks of `m`, used as quadrature breakpoints.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }
}
