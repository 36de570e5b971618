//! Tolerances and the JSON verdict emitted by every check.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub decomposition: f64,
    pub finite_diff: f64,
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            decomposition: 1e-10,
            finite_diff: 1e-4,
            quadrature: 1e-2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub params: Map<String, Value>,
    pub expected: f64,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Report {
    /// A residual that should vanish.
    pub fn residual(check: &str, params: Map<String, Value>, measured: f64, tolerance: f64) -> Self {
        Report {
            check: check.to_string(),
            params,
            expected: 0.0,
            measured,
            tolerance,
            pass: measured.is_finite() && measured <= tolerance,
        }
    }

    pub fn compare(check: &str, params: Map<String, Value>, expected: f64, measured: f64, tolerance: f64) -> Self {
        Report {
            check: check.to_string(),
            params,
            expected,
            measured,
            tolerance,
            pass: (measured - expected).abs() <= tolerance,
        }
    }

    /// Report for a check that could not be evaluated.
    pub fn failed(check: &str, mut params: Map<String, Value>, expected: f64, tolerance: f64, why: String) -> Self {
        params.insert("error".into(), Value::String(why));
        Report {
            check: check.to_string(),
            params,
            expected,
            measured: f64::NAN,
            tolerance,
            pass: false,
        }
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
