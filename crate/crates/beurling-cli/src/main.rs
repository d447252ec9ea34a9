//! Command-line front end: loads a JSON symbol document, runs verification
//! tasks, and emits deterministic reports as plain text or JSON. Exit codes:
//! 0 every task passed, 2 document or invocation problem, 3 mathematically
//! rejected input, 4 failed verification or internal certificate.

mod checks;
mod fault;
mod report;
mod resolve;
mod schema;
mod selftest;
mod tasks;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beurling::hankel::HankelSymbol;
use beurling::inner::MatrixInner;
use beurling::nspan::NSpanMatrix;
use beurling::polymat::RatMat;
use clap::{Parser, Subcommand};

use checks::Harness;
use fault::{CliResult, Fault};
use report::{Report, TaskReport};
use resolve::Resolved;
use schema::{ExpectDecl, InputRef, OpDecl, SymbolDocument, TaskDecl};
use tasks::Expectations;

#[derive(Parser)]
#[command(
    name = "beurling",
    version,
    about = "Exact Hankel operator kernels, independency, inner-outer factorization, \
             and the inner function lattice, with numeric cross-checks"
)]
struct Cli {
    /// Residual threshold for numeric cross-checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tolerance: f64,

    /// Circle sample count for the numeric harness.
    #[arg(long, global = true, default_value_t = 256)]
    samples: usize,

    /// Seed for cross-check sampling; exact results never depend on it.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,

    /// Emit the report as JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every task in a document.
    Run { document: PathBuf },
    /// Kernel of the Hankel operator of a named symbol or matrix.
    Kernel { document: PathBuf, name: String },
    /// Independency of a named symbol's columns modulo the Nevanlinna class.
    Independency { document: PathBuf, name: String },
    /// Greatest common inner divisor of named inner functions.
    Gcd {
        document: PathBuf,
        #[arg(required = true, num_args = 1..)]
        names: Vec<String>,
    },
    /// Least common inner multiple of named inner functions.
    Lcm {
        document: PathBuf,
        #[arg(required = true, num_args = 1..)]
        names: Vec<String>,
    },
    /// Inner-outer factorization of a named analytic matrix.
    InnerOuter { document: PathBuf, name: String },
    /// Smallest backward-shift invariant subspace containing named columns.
    Sstar {
        document: PathBuf,
        #[arg(required = true, num_args = 1..)]
        names: Vec<String>,
    },
    /// Cyclicity of a named rational column for the backward shift.
    Cyclic { document: PathBuf, name: String },
    /// Column-count bounds for the meet and join of named inner functions.
    Audit {
        document: PathBuf,
        #[arg(required = true, num_args = 1..)]
        names: Vec<String>,
    },
    /// Built-in worked-example suite.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut harness = Harness::new(cli.tolerance, cli.samples, cli.seed);
    match execute(&cli.command, &mut harness) {
        Ok(tasks) => {
            let report = Report::new(cli.seed, cli.samples, cli.tolerance, tasks);
            print!("{}", if cli.json { report.to_json() } else { report.to_text() });
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(fault) => {
            eprintln!("{fault}");
            ExitCode::from(fault.code())
        }
    }
}

fn execute(command: &Command, h: &mut Harness) -> CliResult<Vec<TaskReport>> {
    match command {
        Command::Selftest => selftest::run(h),
        Command::Run { document } => {
            let doc = SymbolDocument::load(document)?;
            let objects = resolve::resolve(&doc)?;
            let mut sorted: Vec<&TaskDecl> = doc.tasks.iter().collect();
            sorted.sort_by(|a, b| a.id.cmp(&b.id));
            sorted.into_iter().map(|t| run_task(t, &objects, h)).collect()
        }
        Command::Kernel { document, name } => {
            adhoc(document, OpDecl::Kernel, "symbol", std::slice::from_ref(name), h)
        }
        Command::Independency { document, name } => {
            adhoc(document, OpDecl::Independency, "symbol", std::slice::from_ref(name), h)
        }
        Command::Gcd { document, names } => adhoc(document, OpDecl::Gcd, "of", names, h),
        Command::Lcm { document, names } => adhoc(document, OpDecl::Lcm, "of", names, h),
        Command::InnerOuter { document, name } => {
            adhoc(document, OpDecl::InnerOuter, "matrix", std::slice::from_ref(name), h)
        }
        Command::Sstar { document, names } => {
            adhoc(document, OpDecl::Sstar, "generators", names, h)
        }
        Command::Cyclic { document, name } => {
            adhoc(document, OpDecl::Cyclic, "vector", std::slice::from_ref(name), h)
        }
        Command::Audit { document, names } => adhoc(document, OpDecl::Audit, "of", names, h),
    }
}

/// One synthetic task over a loaded document, sharing the `run` machinery.
fn adhoc(
    document: &Path,
    op: OpDecl,
    role: &str,
    names: &[String],
    h: &mut Harness,
) -> CliResult<Vec<TaskReport>> {
    let doc = SymbolDocument::load(document)?;
    let objects = resolve::resolve(&doc)?;
    let decl = TaskDecl {
        id: op.name().to_string(),
        op,
        inputs: BTreeMap::from([(role.to_string(), InputRef::Many(names.to_vec()))]),
        expect: None,
    };
    Ok(vec![run_task(&decl, &objects, h)?])
}

fn run_task(decl: &TaskDecl, objects: &Resolved, h: &mut Harness) -> CliResult<TaskReport> {
    let expect_decl = decl.expect.clone().unwrap_or_default();
    check_expect_fields(decl, &expect_decl)?;
    let expect = Expectations {
        inner: match &expect_decl.inner {
            Some(n) => Some(objects.inners.get(n).ok_or_else(|| {
                Fault::Schema(format!("task {:?}: no inner function named {n:?}", decl.id))
            })?),
            None => None,
        },
        columns: expect_decl.columns,
        independency: expect_decl.independency,
        dimension: expect_decl.dimension,
        rank: expect_decl.rank,
        cyclic: expect_decl.cyclic,
    };
    let id = decl.id.as_str();
    match decl.op {
        OpDecl::Kernel => {
            let name = one_input(decl, "symbol")?;
            if let Some(phi) = objects.symbols.get(name) {
                tasks::kernel_symbolic_task(id, phi, &expect, h)
            } else if let Some(m) = objects.matrices.get(name) {
                let sym = HankelSymbol::new(m.clone())?;
                tasks::kernel_rational_task(id, &sym, &expect, h)
            } else {
                Err(no_object(decl, "symbol or matrix", name))
            }
        }
        OpDecl::Independency => {
            let name = one_input(decl, "symbol")?;
            let phi = if let Some(p) = objects.symbols.get(name) {
                p.clone()
            } else if let Some(m) = objects.matrices.get(name) {
                NSpanMatrix::from_rational(m)
            } else {
                return Err(no_object(decl, "symbol or matrix", name));
            };
            tasks::independency_task(id, &phi, &expect, h)
        }
        OpDecl::Gcd => tasks::gcd_task(id, &inner_inputs(decl, "of", objects)?, &expect, h),
        OpDecl::Lcm => tasks::lcm_task(id, &inner_inputs(decl, "of", objects)?, &expect, h),
        OpDecl::InnerOuter => {
            let name = one_input(decl, "matrix")?;
            let m = objects
                .matrices
                .get(name)
                .ok_or_else(|| no_object(decl, "matrix", name))?;
            tasks::inner_outer_task(id, m, &expect, h)
        }
        OpDecl::Sstar => {
            tasks::sstar_task(id, &matrix_inputs(decl, "generators", objects)?, &expect, h)
        }
        OpDecl::Cyclic => {
            let name = one_input(decl, "vector")?;
            let m = objects
                .matrices
                .get(name)
                .ok_or_else(|| no_object(decl, "matrix", name))?;
            tasks::cyclic_task(id, m, &expect, h)
        }
        OpDecl::Audit => tasks::audit_task(id, &inner_inputs(decl, "of", objects)?, &expect, h),
    }
}

/// Rejects expectation fields the operation cannot check.
fn check_expect_fields(decl: &TaskDecl, e: &ExpectDecl) -> CliResult<()> {
    let set: Vec<&str> = [
        ("inner", e.inner.is_some()),
        ("columns", e.columns.is_some()),
        ("independency", e.independency.is_some()),
        ("dimension", e.dimension.is_some()),
        ("rank", e.rank.is_some()),
        ("cyclic", e.cyclic.is_some()),
    ]
    .into_iter()
    .filter_map(|(name, present)| present.then_some(name))
    .collect();
    for field in set {
        let ok = match decl.op {
            OpDecl::Kernel => {
                matches!(field, "inner" | "columns" | "independency" | "dimension")
            }
            OpDecl::Independency => matches!(field, "independency"),
            OpDecl::Gcd | OpDecl::Lcm => matches!(field, "inner" | "columns"),
            OpDecl::InnerOuter => matches!(field, "inner" | "columns" | "rank"),
            OpDecl::Sstar => matches!(field, "inner" | "columns" | "dimension"),
            OpDecl::Cyclic => matches!(field, "cyclic" | "dimension" | "independency"),
            OpDecl::Audit => false,
        };
        if !ok {
            return Err(Fault::Schema(format!(
                "task {:?}: expectation {field:?} does not apply to op {:?}",
                decl.id,
                decl.op.name()
            )));
        }
    }
    Ok(())
}

fn one_input<'a>(decl: &'a TaskDecl, role: &str) -> CliResult<&'a str> {
    only_roles(decl, role)?;
    let input = decl
        .inputs
        .get(role)
        .ok_or_else(|| Fault::Schema(format!("task {:?}: missing input {role:?}", decl.id)))?;
    match input.names() {
        [n] => Ok(n),
        names => Err(Fault::Schema(format!(
            "task {:?}: input {role:?} takes exactly one name, got {}",
            decl.id,
            names.len()
        ))),
    }
}

fn many_inputs<'a>(decl: &'a TaskDecl, role: &str) -> CliResult<&'a [String]> {
    only_roles(decl, role)?;
    let input = decl
        .inputs
        .get(role)
        .ok_or_else(|| Fault::Schema(format!("task {:?}: missing input {role:?}", decl.id)))?;
    match input.names() {
        [] => Err(Fault::Schema(format!("task {:?}: input {role:?} is empty", decl.id))),
        names => Ok(names),
    }
}

fn only_roles(decl: &TaskDecl, role: &str) -> CliResult<()> {
    for key in decl.inputs.keys() {
        if key != role {
            return Err(Fault::Schema(format!(
                "task {:?}: op {:?} does not take input {key:?}",
                decl.id,
                decl.op.name()
            )));
        }
    }
    Ok(())
}

fn inner_inputs(
    decl: &TaskDecl,
    role: &str,
    objects: &Resolved,
) -> CliResult<Vec<MatrixInner>> {
    many_inputs(decl, role)?
        .iter()
        .map(|n| {
            objects
                .inners
                .get(n)
                .cloned()
                .ok_or_else(|| no_object(decl, "inner function", n))
        })
        .collect()
}

fn matrix_inputs(decl: &TaskDecl, role: &str, objects: &Resolved) -> CliResult<Vec<RatMat>> {
    many_inputs(decl, role)?
        .iter()
        .map(|n| {
            objects
                .matrices
                .get(n)
                .cloned()
                .ok_or_else(|| no_object(decl, "matrix", n))
        })
        .collect()
}

fn no_object(decl: &TaskDecl, kind: &str, name: &str) -> Fault {
    Fault::Schema(format!("task {:?}: no {kind} named {name:?}", decl.id))
}
