use std::fmt;
use std::sync::Arc;

use crate::complex::C64;
use crate::error::{Error, Result};
use crate::quadrature::{Envelope, NearZero, QuadratureSpec, TailStrategy};

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type MellinFn = Arc<dyn Fn(C64) -> Result<C64> + Send + Sync>;

/// A real function on [0, inf) with declared decay data and optional
/// closed-form companions.
#[derive(Clone)]
pub struct TestFunction {
    name: String,
    value: RealFn,
    fourier: Option<RealFn>,
    mellin: Option<MellinFn>,
    theta: Option<RealFn>,
    fourier_theta: Option<RealFn>,
    envelope: Option<Envelope>,
    fourier_envelope: Option<Envelope>,
    decay_constant: Option<f64>,
    fourier_decay_constant: Option<f64>,
    near_zero: NearZero,
    fourier_near_zero: Option<NearZero>,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("fourier", &self.fourier.is_some())
            .field("mellin", &self.mellin.is_some())
            .field("envelope", &self.envelope)
            .field("fourier_envelope", &self.fourier_envelope)
            .field("decay_constant", &self.decay_constant)
            .field("fourier_decay_constant", &self.fourier_decay_constant)
            .finish()
    }
}

impl TestFunction {
    /// A function known only through its values. `near_zero` describes
    /// `|f(x) - f(0)| <= holder x^exponent` on [0, 1].
    pub fn new(name: impl Into<String>, value: impl Fn(f64) -> f64 + Send + Sync + 'static, near_zero_holder: (f64, f64)) -> Self {
        let value: RealFn = Arc::new(value);
        let g0 = value(0.0);
        TestFunction {
            name: name.into(),
            value,
            fourier: None,
            mellin: None,
            theta: None,
            fourier_theta: None,
            envelope: None,
            fourier_envelope: None,
            decay_constant: None,
            fourier_decay_constant: None,
            near_zero: NearZero {
                g0,
                holder: near_zero_holder.0,
                exponent: near_zero_holder.1,
            },
            fourier_near_zero: None,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_envelope(mut self, env: Envelope) -> Self {
        self.envelope = Some(env);
        if self.decay_constant.is_none() {
            self.decay_constant = Some(env.quadratic_constant());
        }
        self
    }

    pub fn with_fourier(
        mut self,
        fourier: impl Fn(f64) -> f64 + Send + Sync + 'static,
        env: Envelope,
        near_zero_holder: (f64, f64),
    ) -> Self {
        let fourier: RealFn = Arc::new(fourier);
        self.fourier_near_zero = Some(NearZero {
            g0: fourier(0.0),
            holder: near_zero_holder.0,
            exponent: near_zero_holder.1,
        });
        self.fourier = Some(fourier);
        self.fourier_envelope = Some(env);
        if self.fourier_decay_constant.is_none() {
            self.fourier_decay_constant = Some(env.quadratic_constant());
        }
        self
    }

    pub fn with_mellin(mut self, mellin: impl Fn(C64) -> Result<C64> + Send + Sync + 'static) -> Self {
        self.mellin = Some(Arc::new(mellin));
        self
    }

    /// Closed forms of θ(f) and θ(f̂).
    pub fn with_theta(
        mut self,
        theta: Option<RealFn>,
        fourier_theta: Option<RealFn>,
    ) -> Self {
        self.theta = theta;
        self.fourier_theta = fourier_theta;
        self
    }

    pub fn with_decay_constants(mut self, c: Option<f64>, fourier_c: Option<f64>) -> Self {
        self.decay_constant = c;
        self.fourier_decay_constant = fourier_c;
        self
    }

    pub fn with_breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    /// Drops every closed-form companion, leaving only values and envelopes.
    pub fn without_companions(mut self) -> Self {
        self.fourier = None;
        self.mellin = None;
        self.theta = None;
        self.fourier_theta = None;
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// f(x) for x >= 0; negative arguments are reflected.
    pub fn value_at(&self, x: f64) -> f64 {
        (self.value)(x.abs())
    }

    pub fn fourier_at(&self, x: f64) -> Option<f64> {
        self.fourier.as_ref().map(|f| f(x.abs()))
    }

    pub fn mellin_at(&self, s: C64) -> Option<Result<C64>> {
        self.mellin.as_ref().map(|m| m(s))
    }

    pub fn theta_closed_form(&self, x: f64) -> Option<f64> {
        self.theta.as_ref().map(|t| t(x))
    }

    pub fn fourier_theta_closed_form(&self, x: f64) -> Option<f64> {
        self.fourier_theta.as_ref().map(|t| t(x))
    }

    pub fn has_fourier(&self) -> bool {
        self.fourier.is_some()
    }

    pub fn envelope(&self) -> Option<Envelope> {
        self.envelope
    }

    pub fn fourier_envelope(&self) -> Option<Envelope> {
        self.fourier_envelope
    }

    pub fn decay_constant(&self) -> Option<f64> {
        self.decay_constant
    }

    pub fn fourier_decay_constant(&self) -> Option<f64> {
        self.fourier_decay_constant
    }

    pub fn near_zero(&self) -> NearZero {
        self.near_zero
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Envelope used for tail bounds under the given strategy.
    pub fn tail_envelope(&self, q: &QuadratureSpec) -> Result<Option<Envelope>> {
        match q.tail_strategy {
            TailStrategy::None => Ok(None),
            TailStrategy::ExponentialBound => self
                .envelope
                .or(self.decay_constant.map(|c| Envelope::Quadratic { c }))
                .map(Some)
                .ok_or_else(|| self.no_envelope()),
            TailStrategy::PowerBound => self
                .decay_constant
                .map(|c| Some(Envelope::Quadratic { c }))
                .ok_or_else(|| self.no_envelope()),
        }
    }

    pub(crate) fn require_envelope(&self) -> Result<Envelope> {
        self.envelope
            .or(self.decay_constant.map(|c| Envelope::Quadratic { c }))
            .ok_or_else(|| self.no_envelope())
    }

    fn no_envelope(&self) -> Error {
        Error::precondition(format!("{} declares no decay envelope", self.name))
    }

    /// The transform f̂ as a test function in its own right (its transform is f
    /// again by Fourier inversion for even functions).
    pub fn fourier_function(&self) -> Option<TestFunction> {
        let fourier = self.fourier.clone()?;
        let near = self.fourier_near_zero?;
        Some(TestFunction {
            name: format!("fourier({})", self.name),
            value: fourier,
            fourier: Some(self.value.clone()),
            mellin: None,
            theta: self.fourier_theta.clone(),
            fourier_theta: self.theta.clone(),
            envelope: self.fourier_envelope,
            fourier_envelope: self.envelope,
            decay_constant: self.fourier_decay_constant,
            fourier_decay_constant: self.decay_constant,
            near_zero: near,
            fourier_near_zero: Some(self.near_zero),
            breakpoints: Vec::new(),
        })
    }
}
