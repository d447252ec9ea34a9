//! Serde model of the JSON symbol document. Every exact number travels as a
//! string ("3/4", "1/2+1/3i"); polynomials are coefficient arrays, lowest
//! degree first. A bare float anywhere in the document fails
//! deserialization, so no value can be contaminated silently.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::fault::{CliResult, Fault};

/// Document format version accepted by this binary.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDocument {
    pub schema_version: String,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectDecl>,
    #[serde(default)]
    pub tasks: Vec<TaskDecl>,
}

impl SymbolDocument {
    pub fn load(path: &Path) -> CliResult<SymbolDocument> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Fault::Schema(format!("cannot read {}: {e}", path.display())))?;
        let doc: SymbolDocument = serde_json::from_str(&text)
            .map_err(|e| Fault::Schema(format!("{}: {e}", path.display())))?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> CliResult<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Fault::Schema(format!(
                "schema_version {:?} not supported; this binary reads version {:?}",
                self.schema_version, SCHEMA_VERSION
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for task in &self.tasks {
            if task.id.is_empty() {
                return Err(Fault::Schema("task with empty id".into()));
            }
            if !seen.insert(&task.id) {
                return Err(Fault::Schema(format!("duplicate task id {:?}", task.id)));
            }
        }
        Ok(())
    }
}

/// A named declaration. Scalar-valued kinds (`polynomial`, `rational`,
/// `blaschke`) may be referenced from matrix entries; `inner` wraps a named
/// matrix; references cannot form cycles because values never contain them.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectDecl {
    Polynomial {
        coeffs: Vec<String>,
    },
    Rational {
        num: Vec<String>,
        den: Vec<String>,
    },
    /// Finite Blaschke product with the given zeros, all in the open disk.
    Blaschke {
        zeros: Vec<String>,
    },
    Matrix {
        entries: Vec<Vec<EntryDecl>>,
    },
    /// A formal bounded-type atom, usable in `symbol` free terms.
    Atom,
    /// A matrix over rationals plus formal atom terms with rational
    /// coefficients.
    Symbol {
        entries: Vec<Vec<EntryDecl>>,
        #[serde(default)]
        free: Vec<FreeTermDecl>,
    },
    /// A named matrix certified as (scaled) inner; tags are the constant
    /// squared column norms, all 1 when omitted.
    Inner {
        matrix: String,
        #[serde(default)]
        tags: Vec<String>,
    },
}

/// One matrix entry: a constant, a polynomial in z (coefficients lowest
/// first), a quotient of two such, the adjoint `conj(f)(1/z)` of an inner
/// entry, or a reference to a named scalar-valued object.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum EntryDecl {
    Constant(String),
    Poly(Vec<String>),
    Rational(RationalEntry),
    Conj(ConjEntry),
    Ref(RefEntry),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalEntry {
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjEntry {
    pub conj: Box<EntryDecl>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RefEntry {
    #[serde(rename = "ref")]
    pub name: String,
}

/// One formal term `coeff * atom` at a symbol position.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeTermDecl {
    pub atom: String,
    pub row: usize,
    pub col: usize,
    pub coeff: EntryDecl,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskDecl {
    pub id: String,
    pub op: OpDecl,
    #[serde(default)]
    pub inputs: BTreeMap<String, InputRef>,
    #[serde(default)]
    pub expect: Option<ExpectDecl>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OpDecl {
    Kernel,
    Independency,
    Gcd,
    Lcm,
    InnerOuter,
    Sstar,
    Cyclic,
    Audit,
}

impl OpDecl {
    pub fn name(self) -> &'static str {
        match self {
            OpDecl::Kernel => "kernel",
            OpDecl::Independency => "independency",
            OpDecl::Gcd => "gcd",
            OpDecl::Lcm => "lcm",
            OpDecl::InnerOuter => "inner-outer",
            OpDecl::Sstar => "sstar",
            OpDecl::Cyclic => "cyclic",
            OpDecl::Audit => "audit",
        }
    }
}

/// A task input: one object name or a list of them.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum InputRef {
    One(String),
    Many(Vec<String>),
}

impl InputRef {
    pub fn names(&self) -> &[String] {
        match self {
            InputRef::One(n) => std::slice::from_ref(n),
            InputRef::Many(v) => v,
        }
    }
}

/// Declared outcomes checked bit-exactly against computed results; each
/// mismatch fails the task, never aborts the run.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectDecl {
    /// Name of a declared inner function the result must match up to a
    /// constant right unitary.
    pub inner: Option<String>,
    pub columns: Option<usize>,
    pub independency: Option<usize>,
    pub dimension: Option<usize>,
    pub rank: Option<usize>,
    pub cyclic: Option<bool>,
}
