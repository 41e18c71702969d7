use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::transforms::HermiteKind;

use super::builtins::{builtin, gaussian_p, hermite_even};
use super::TestFunction;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionFile {
    #[serde(default)]
    function: Vec<FunctionEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionEntry {
    name: String,
    family: String,
    p: Option<f64>,
    n: Option<usize>,
    kind: Option<HermiteKind>,
    decay_constant: Option<f64>,
    fourier_decay_constant: Option<f64>,
    #[serde(default = "yes")]
    companions: bool,
}

fn yes() -> bool {
    true
}

/// Parses a TOML list of test functions built from the built-in families:
///
/// ```toml
/// [[function]]
/// name = "wide"
/// family = "gaussian_p"   # gaussian | exp_inverse | gaussian_p | hermite_even | constant
/// p = 0.5
/// companions = false      # drop closed-form transforms
/// ```
pub fn parse_test_functions(text: &str) -> Result<Vec<TestFunction>> {
    let file: FunctionFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.function.into_iter().map(build).collect()
}

pub fn load_test_functions(path: &Path) -> Result<Vec<TestFunction>> {
    parse_test_functions(&std::fs::read_to_string(path)?)
}

fn build(e: FunctionEntry) -> Result<TestFunction> {
    let need_p = || e.p.ok_or_else(|| Error::Parse(format!("{}: family {} needs p", e.name, e.family)));
    let f = match e.family.as_str() {
        "gaussian_p" => gaussian_p(need_p()?)?,
        "hermite_even" => {
            let n = e.n.ok_or_else(|| Error::Parse(format!("{}: hermite_even needs n", e.name)))?;
            hermite_even(n, need_p()?, e.kind.unwrap_or(HermiteKind::Derivative))?
        }
        other => builtin(other)?,
    };
    let c = e.decay_constant.or(f.decay_constant());
    let fc = e.fourier_decay_constant.or(f.fourier_decay_constant());
    let f = f.renamed(e.name).with_decay_constants(c, fc);
    Ok(if e.companions { f } else { f.without_companions() })
}

/// Finds `name` among `extra` first, then among the built-ins.
pub fn resolve(name: &str, extra: &[TestFunction]) -> Result<TestFunction> {
    extra
        .iter()
        .find(|f| f.name() == name)
        .cloned()
        .map(Ok)
        .unwrap_or_else(|| builtin(name))
}
