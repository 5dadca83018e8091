use std::fmt;

use crate::linalg::Rational;

/// Outcome of checking one identity over a finite family of inputs.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub checked: usize,
    pub failure: Option<Failure>,
}

/// The first input tuple on which an identity failed.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub witness: String,
    pub residual: String,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), checked: 0, failure: None }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    /// Records one evaluation; only the first failure is kept.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String, residual: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(Failure { witness: witness(), residual: residual() });
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "witness": self.failure.as_ref().map(|f| f.witness.clone()),
            "residual": self.failure.as_ref().map(|f| f.residual.clone()),
        })
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} cases)", self.name, self.checked),
            Some(fail) => write!(
                f,
                "FAIL {} ({} cases) at {}: residual {}",
                self.name, self.checked, fail.witness, fail.residual
            ),
        }
    }
}

/// Sparse rendering `c0*e0 + c3*e3` of a coordinate vector, with `0` for zero.
pub fn format_vector(v: &[Rational], basis_name: &dyn Fn(usize) -> String) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| format!("({c})*{}", basis_name(i)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
