//! Verification reports. Exact results are serialized as strings of exact
//! arithmetic; numeric residuals carry their provenance and threshold. For
//! a fixed document, seed, and sample count the rendered report is byte
//! identical across runs.

use beurling::inner::MatrixInner;
use beurling::polymat::{PolyMat, RatMat};
use serde::Serialize;
use serde_json::{json, Value};

/// Report format version, independent of the document schema version.
pub const REPORT_VERSION: &str = "1";

#[derive(Debug, Serialize)]
pub struct Report {
    pub report_version: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: String,
    pub tasks: Vec<TaskReport>,
    pub pass: bool,
}

impl Report {
    pub fn new(seed: u64, samples: usize, tolerance: f64, mut tasks: Vec<TaskReport>) -> Report {
        tasks.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = tasks.iter().all(|t| t.pass);
        Report {
            report_version: REPORT_VERSION,
            seed,
            samples,
            tolerance: format!("{tolerance:e}"),
            tasks,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "verification report (version {}), seed {}, samples {}, tolerance {}\n",
            self.report_version, self.seed, self.samples, self.tolerance
        ));
        for task in &self.tasks {
            out.push_str(&format!(
                "task {} [{}]: {}\n",
                task.id,
                task.op,
                verdict(task.pass)
            ));
            out.push_str(&format!(
                "  exact: {}\n",
                serde_json::to_string(&task.exact).expect("exact serializes")
            ));
            for check in &task.checks {
                out.push_str("  check ");
                out.push_str(&check.name);
                out.push_str(&format!(" [{}]", check.provenance));
                if let Some(r) = &check.residual {
                    out.push_str(&format!(": residual {r}"));
                }
                if let Some(t) = &check.tolerance {
                    out.push_str(&format!(" (tolerance {t})"));
                }
                out.push_str(&format!(": {}\n", verdict(check.pass)));
            }
        }
        out.push_str(&format!("overall: {}\n", verdict(self.pass)));
        out
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Serialize)]
pub struct TaskReport {
    pub id: String,
    pub op: String,
    /// Operation-specific exact results; every number a string.
    pub exact: Value,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

impl TaskReport {
    /// Assembles a task report; the task passes only if every check does.
    pub fn new(id: &str, op: &str, exact: Value, checks: Vec<CheckReport>) -> TaskReport {
        let pass = checks.iter().all(|c| c.pass);
        TaskReport { id: id.to_string(), op: op.to_string(), exact, checks, pass }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Where the compared value came from: "exact", "expectation", or a
    /// "numeric:" source.
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    pub pass: bool,
}

impl CheckReport {
    /// Bit-exact identity that either holds or does not.
    pub fn exact(name: &str, pass: bool) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            provenance: "exact".into(),
            residual: None,
            tolerance: None,
            pass,
        }
    }

    /// Declared outcome compared bit-exactly against the computed one.
    pub fn expectation(name: &str, pass: bool) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            provenance: "expectation".into(),
            residual: None,
            tolerance: None,
            pass,
        }
    }

    /// Floating-point residual against a threshold.
    pub fn numeric(name: &str, source: &str, residual: f64, tolerance: f64) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            provenance: format!("numeric:{source}"),
            residual: Some(format_residual(residual)),
            tolerance: Some(format!("{tolerance:e}")),
            pass: residual.is_finite() && residual <= tolerance,
        }
    }

    /// Integer agreement between a numeric estimate and an exact count.
    pub fn numeric_count(name: &str, source: &str, numeric: usize, exact: usize) -> CheckReport {
        CheckReport {
            name: format!("{name} (numeric {numeric}, exact {exact})"),
            provenance: format!("numeric:{source}"),
            residual: Some(format!("{}", numeric.abs_diff(exact))),
            tolerance: None,
            pass: numeric == exact,
        }
    }
}

pub fn format_residual(x: f64) -> String {
    format!("{x:.3e}")
}

/// Rational matrix as a grid of exact entry strings.
pub fn json_ratmat(m: &RatMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols()).map(|j| Value::String(m.at(i, j).to_string())).collect(),
                )
            })
            .collect(),
    )
}

/// Polynomial matrix as a grid of exact entry strings.
pub fn json_polymat(m: &PolyMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols()).map(|j| Value::String(m.at(i, j).to_string())).collect(),
                )
            })
            .collect(),
    )
}

/// Inner function with its matrix, squared column norms, and shape.
pub fn json_inner(theta: &MatrixInner) -> Value {
    json!({
        "rows": theta.rows(),
        "columns": theta.cols(),
        "matrix": json_ratmat(theta.mat()),
        "tags": theta.tags().iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    })
}
