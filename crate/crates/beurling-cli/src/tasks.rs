//! Task execution: each operation computes its exact result, attaches
//! numeric cross-checks and declared expectations, and yields one task
//! report. Library rejections abort the run with the fault taxonomy; a
//! failed comparison only fails the task.

use beurling::hankel::HankelSymbol;
use beurling::inner::{equal_up_to_right_unitary, inner_outer, MatrixInner};
use beurling::lattice::{
    cyclic_test, gcd_inner, lcm_inner, size_bound_audit, sstar_invariant_from_generators,
};
use beurling::nspan::{kernel_symbolic, NSpanMatrix};
use beurling::polymat::RatMat;
use beurling::ratfun::RatFun;
use serde_json::json;

use crate::checks::Harness;
use crate::fault::CliResult;
use crate::report::{json_inner, json_polymat, json_ratmat, CheckReport, TaskReport};

/// Declared outcomes, resolved to live objects.
#[derive(Default)]
pub struct Expectations<'a> {
    pub inner: Option<&'a MatrixInner>,
    pub columns: Option<usize>,
    pub independency: Option<usize>,
    pub dimension: Option<usize>,
    pub rank: Option<usize>,
    pub cyclic: Option<bool>,
}

/// Kernel of the Hankel operator with a conjugate-rational symbol.
pub fn kernel_rational_task(
    id: &str,
    sym: &HankelSymbol,
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let kernel = sym.kernel_rational()?;
    let mut checks = Vec::new();
    let rows: Vec<usize> = (0..kernel.theta.rows()).collect();
    let mut member = true;
    for j in 0..kernel.theta.cols() {
        member &= sym.kernel_membership(&kernel.theta.mat().submatrix(&rows, &[j]))?;
    }
    checks.push(CheckReport::exact("inner columns annihilated by the operator", member));
    checks.push(h.gram_check(&kernel.theta));
    if let Some((label, f)) = first_nonzero(sym.symbol()) {
        checks.push(h.fourier_check(&label, &f));
    }
    checks.push(h.finite_section_check(sym, &kernel));
    push_inner_expectations(&mut checks, &kernel.theta, expect)?;
    if let Some(d) = expect.dimension {
        checks.push(CheckReport::expectation(
            &format!("kernel codimension is {d} (computed {})", kernel.defect_dim),
            kernel.defect_dim == d,
        ));
    }
    if let Some(r) = expect.independency {
        let computed = sym.cols() - kernel.theta.cols();
        checks.push(CheckReport::expectation(
            &format!("independency is {r} (computed {computed})"),
            computed == r,
        ));
    }
    let exact = json!({
        "symbol_rows": sym.rows(),
        "symbol_cols": sym.cols(),
        "kernel_inner": json_inner(&kernel.theta),
        "codimension": kernel.defect_dim,
        "module_basis": json_polymat(&kernel.module_basis),
        "column_degrees": kernel.column_degrees,
    });
    Ok(TaskReport::new(id, "kernel", exact, checks))
}

/// Kernel of a symbol mixing rational entries with formal atoms.
pub fn kernel_symbolic_task(
    id: &str,
    phi: &NSpanMatrix,
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let kernel = kernel_symbolic(phi)?;
    let mut checks = Vec::new();
    checks.push(CheckReport::exact(
        &format!(
            "kernel columns and independency fill the symbol width ({} + {} = {})",
            kernel.theta.cols(),
            kernel.independency,
            phi.cols()
        ),
        kernel.theta.cols() + kernel.independency == phi.cols(),
    ));
    checks.push(h.gram_check(&kernel.theta));
    push_inner_expectations(&mut checks, &kernel.theta, expect)?;
    if let Some(r) = expect.independency {
        checks.push(CheckReport::expectation(
            &format!("independency is {r} (computed {})", kernel.independency),
            kernel.independency == r,
        ));
    }
    if let Some(d) = expect.dimension {
        checks.push(CheckReport::expectation(
            &format!("stage two defect is {d} (computed {})", kernel.stage_two_defect),
            kernel.stage_two_defect == d,
        ));
    }
    let exact = json!({
        "symbol_rows": phi.rows(),
        "symbol_cols": phi.cols(),
        "independency": kernel.independency,
        "kernel_inner": json_inner(&kernel.theta),
        "stage_two_defect": kernel.stage_two_defect,
        "polynomial_kernel": json_polymat(&kernel.polynomial_kernel),
    });
    Ok(TaskReport::new(id, "kernel", exact, checks))
}

/// Independency of the columns modulo the Nevanlinna class.
pub fn independency_task(
    id: &str,
    phi: &NSpanMatrix,
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let r = phi.independency();
    let subset = phi.maximal_independent_subset();
    let kernel = kernel_symbolic(phi)?;
    let mut checks = Vec::new();
    checks.push(CheckReport::exact(
        "a maximal independent subset has the independency size",
        subset.len() == r,
    ));
    checks.push(CheckReport::exact(
        &format!(
            "kernel columns and independency fill the symbol width ({} + {} = {})",
            kernel.theta.cols(),
            r,
            phi.cols()
        ),
        kernel.theta.cols() + r == phi.cols(),
    ));
    checks.push(h.gram_check(&kernel.theta));
    if let Some(want) = expect.independency {
        checks.push(CheckReport::expectation(
            &format!("independency is {want} (computed {r})"),
            r == want,
        ));
    }
    let exact = json!({
        "symbol_rows": phi.rows(),
        "symbol_cols": phi.cols(),
        "independency": r,
        "maximal_independent_subset": subset,
    });
    Ok(TaskReport::new(id, "independency", exact, checks))
}

/// Greatest common inner divisor of the inputs.
pub fn gcd_task(
    id: &str,
    thetas: &[MatrixInner],
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let g = gcd_inner(thetas)?;
    let mut checks = Vec::new();
    let mut factors = true;
    for (t, w) in thetas.iter().zip(&g.witnesses) {
        factors &= t.mat().sub(&g.gcd.mat().mul(w)).is_zero();
    }
    checks.push(CheckReport::exact(
        "every input factors through the common divisor times an analytic witness",
        factors,
    ));
    checks.push(h.gram_check(&g.gcd));
    push_inner_expectations(&mut checks, &g.gcd, expect)?;
    let exact = json!({
        "inputs": thetas.len(),
        "gcd_inner": json_inner(&g.gcd),
        "witnesses": g.witnesses.iter().map(json_ratmat).collect::<Vec<_>>(),
    });
    Ok(TaskReport::new(id, "gcd", exact, checks))
}

/// Least common inner multiple of the inputs.
pub fn lcm_task(
    id: &str,
    thetas: &[MatrixInner],
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let l = lcm_inner(thetas)?;
    let mut checks = Vec::new();
    let mut factors = true;
    for (t, w) in thetas.iter().zip(&l.witnesses) {
        factors &= l.lcm.mat().sub(&t.mat().mul(w)).is_zero();
    }
    checks.push(CheckReport::exact(
        "the common multiple factors through every input times an analytic witness",
        factors,
    ));
    checks.push(h.gram_check(&l.lcm));
    push_inner_expectations(&mut checks, &l.lcm, expect)?;
    let exact = json!({
        "inputs": thetas.len(),
        "lcm_inner": json_inner(&l.lcm),
        "witnesses": l.witnesses.iter().map(json_ratmat).collect::<Vec<_>>(),
    });
    Ok(TaskReport::new(id, "lcm", exact, checks))
}

/// Inner-outer factorization of an analytic rational matrix.
pub fn inner_outer_task(
    id: &str,
    f: &RatMat,
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let io = inner_outer(f)?;
    let mut checks = Vec::new();
    checks.push(CheckReport::exact(
        "inner times outer reassembles the input",
        io.theta.mat().mul(&io.outer).sub(f).is_zero(),
    ));
    checks.push(h.gram_check(&io.theta));
    checks.push(h.svd_rank_check(f, io.rank));
    push_inner_expectations(&mut checks, &io.theta, expect)?;
    if let Some(r) = expect.rank {
        checks.push(CheckReport::expectation(
            &format!("rank is {r} (computed {})", io.rank),
            io.rank == r,
        ));
    }
    let exact = json!({
        "rows": f.rows(),
        "cols": f.cols(),
        "rank": io.rank,
        "inner": json_inner(&io.theta),
        "outer": json_ratmat(&io.outer),
    });
    Ok(TaskReport::new(id, "inner-outer", exact, checks))
}

/// Smallest backward-shift invariant subspace containing the generators.
pub fn sstar_task(
    id: &str,
    gens: &[RatMat],
    expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let model = sstar_invariant_from_generators(gens)?;
    let mut checks = Vec::new();
    let degree = model.theta.blaschke_degree()?;
    checks.push(CheckReport::exact(
        &format!(
            "subspace dimension equals the inner determinant degree ({} = {degree})",
            model.dim
        ),
        model.dim == degree,
    ));
    checks.push(h.gram_check(&model.theta));
    push_inner_expectations(&mut checks, &model.theta, expect)?;
    if let Some(d) = expect.dimension {
        checks.push(CheckReport::expectation(
            &format!("dimension is {d} (computed {})", model.dim),
            model.dim == d,
        ));
    }
    let exact = json!({
        "generators": gens.len(),
        "dim": model.dim,
        "complement_inner": json_inner(&model.theta),
    });
    Ok(TaskReport::new(id, "sstar", exact, checks))
}

/// Cyclicity of a rational column for the backward shift, decided twice.
pub fn cyclic_task(
    id: &str,
    f: &RatMat,
    expect: &Expectations,
    _h: &mut Harness,
) -> CliResult<TaskReport> {
    let c = cyclic_test(f)?;
    let mut checks = Vec::new();
    checks.push(CheckReport::exact(
        "the subspace criterion and the independency criterion agree",
        c.criteria_agree,
    ));
    if let Some(want) = expect.cyclic {
        checks.push(CheckReport::expectation(
            &format!("cyclic is {want} (computed {})", c.cyclic),
            c.cyclic == want,
        ));
    }
    if let Some(d) = expect.dimension {
        checks.push(CheckReport::expectation(
            &format!("generated subspace dimension is {d} (computed {})", c.model_dim),
            c.model_dim == d,
        ));
    }
    if let Some(r) = expect.independency {
        checks.push(CheckReport::expectation(
            &format!("independency is {r} (computed {})", c.independency),
            c.independency == r,
        ));
    }
    let exact = json!({
        "cyclic": c.cyclic,
        "model_dim": c.model_dim,
        "independency": c.independency,
        "criteria_agree": c.criteria_agree,
    });
    Ok(TaskReport::new(id, "cyclic", exact, checks))
}

/// Column-count bounds for the meet and join of the inputs, re-derived in
/// the uniform and the per-input reading.
pub fn audit_task(
    id: &str,
    thetas: &[MatrixInner],
    _expect: &Expectations,
    h: &mut Harness,
) -> CliResult<TaskReport> {
    let g = gcd_inner(thetas)?;
    let l = lcm_inner(thetas)?;
    let audit = size_bound_audit(thetas, &l.lcm, &g.gcd, None)?;
    let mut checks = Vec::new();
    checks.push(CheckReport::exact(
        &format!(
            "meet column count {} within [max(0, {}), {}]",
            audit.lcm_columns, audit.lcm_lower_derived, audit.lcm_upper
        ),
        audit.lcm_within_bounds,
    ));
    checks.push(CheckReport::exact(
        &format!(
            "join column count {} within [{}, {}]",
            audit.gcd_columns, audit.gcd_lower, audit.gcd_upper
        ),
        audit.gcd_within_bounds,
    ));
    checks.push(h.gram_check(&g.gcd));
    checks.push(h.gram_check(&l.lcm));
    let exact = json!({
        "rows": audit.rows,
        "column_counts": audit.column_counts,
        "lcm_columns": audit.lcm_columns,
        "lcm_lower_uniform": audit.lcm_lower_uniform,
        "lcm_lower_derived": audit.lcm_lower_derived,
        "lcm_upper": audit.lcm_upper,
        "uniform_matches_derived": audit.uniform_matches_derived,
        "gcd_columns": audit.gcd_columns,
        "gcd_lower": audit.gcd_lower,
        "gcd_upper": audit.gcd_upper,
    });
    Ok(TaskReport::new(id, "audit", exact, checks))
}

fn push_inner_expectations(
    checks: &mut Vec<CheckReport>,
    computed: &MatrixInner,
    expect: &Expectations,
) -> CliResult<()> {
    if let Some(want) = expect.inner {
        let pass = computed.rows() == want.rows()
            && computed.cols() == want.cols()
            && equal_up_to_right_unitary(computed, want)?;
        checks.push(CheckReport::expectation(
            "matches the declared inner up to a constant right unitary",
            pass,
        ));
    }
    if let Some(c) = expect.columns {
        checks.push(CheckReport::expectation(
            &format!("inner has {c} columns (computed {})", computed.cols()),
            computed.cols() == c,
        ));
    }
    Ok(())
}

fn first_nonzero(m: &RatMat) -> Option<(String, RatFun)> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m.at(i, j).is_zero() {
                return Some((format!("symbol entry ({i}, {j})"), m.at(i, j).clone()));
            }
        }
    }
    None
}
