//! Built-in acceptance suite over the worked-example corpus: closed-form
//! kernels, the coupled pair with its meet and join, the wide
//! factorization, shifted-conjugate defects, backward-shift subspaces, and
//! a Fourier coefficient shadow.

use beurling::corpus;
use beurling::nspan::iz_counterexample_check;
use beurling::poly::Poly;
use beurling::polymat::RatMat;
use beurling::ratfun::RatFun;
use serde_json::json;

use crate::checks::Harness;
use crate::fault::CliResult;
use crate::report::{CheckReport, TaskReport};
use crate::tasks;
use crate::tasks::Expectations;

pub fn run(h: &mut Harness) -> CliResult<Vec<TaskReport>> {
    let mut reports = Vec::new();

    let shift_pair = corpus::conjugate_shift_pair()?;
    let shift_kernel = corpus::conjugate_shift_pair_kernel()?;
    reports.push(tasks::kernel_rational_task(
        "selftest-01-shift-pair-kernel",
        &shift_pair,
        &Expectations {
            inner: Some(&shift_kernel),
            columns: Some(2),
            dimension: Some(1),
            ..Expectations::default()
        },
        h,
    )?);

    for (case, letter) in corpus::conjugate_pair_cases()?.iter().zip("abcde".chars()) {
        let expected = case.kernel()?;
        reports.push(tasks::kernel_rational_task(
            &format!("selftest-02-closed-form-{letter}"),
            &case.symbol()?,
            &Expectations {
                inner: Some(&expected),
                columns: Some(2),
                ..Expectations::default()
            },
            h,
        )?);
    }

    let cp = corpus::coupled_pair()?;
    reports.push(tasks::kernel_symbolic_task(
        "selftest-03-coupled-first",
        &cp.phi,
        &Expectations {
            inner: Some(&cp.kernel_phi),
            independency: Some(1),
            ..Expectations::default()
        },
        h,
    )?);
    reports.push(tasks::kernel_symbolic_task(
        "selftest-04-coupled-second",
        &cp.psi,
        &Expectations {
            inner: Some(&cp.kernel_psi),
            independency: Some(1),
            ..Expectations::default()
        },
        h,
    )?);
    reports.push(tasks::kernel_symbolic_task(
        "selftest-05-coupled-stack",
        &cp.stack,
        &Expectations {
            inner: Some(&cp.meet),
            independency: Some(2),
            ..Expectations::default()
        },
        h,
    )?);
    let pair = [cp.kernel_phi.clone(), cp.kernel_psi.clone()];
    reports.push(tasks::lcm_task(
        "selftest-06-coupled-meet",
        &pair,
        &Expectations { inner: Some(&cp.meet), columns: Some(1), ..Expectations::default() },
        h,
    )?);
    reports.push(tasks::gcd_task(
        "selftest-07-coupled-join",
        &pair,
        &Expectations { columns: Some(3), ..Expectations::default() },
        h,
    )?);

    reports.push(tasks::inner_outer_task(
        "selftest-08-wide-factorization",
        &corpus::rank_two_wide(),
        &Expectations { rank: Some(2), ..Expectations::default() },
        h,
    )?);

    reports.push(shifted_conjugates()?);

    let ones = RatMat::from_fn(2, 1, |_, _| RatFun::one());
    reports.push(tasks::sstar_task(
        "selftest-10-single-generator",
        &[ones],
        &Expectations { dimension: Some(1), ..Expectations::default() },
        h,
    )?);

    let pinned = RatMat::from_fn(2, 1, |i, _| if i == 0 { RatFun::one() } else { RatFun::z() });
    reports.push(tasks::sstar_task(
        "selftest-11-coordinate-generator",
        &[pinned.clone()],
        &Expectations { dimension: Some(2), ..Expectations::default() },
        h,
    )?);

    reports.push(tasks::cyclic_task(
        "selftest-12-noncyclic-vector",
        &pinned,
        &Expectations {
            cyclic: Some(false),
            dimension: Some(2),
            ..Expectations::default()
        },
        h,
    )?);

    reports.push(geometric_fourier(h));

    Ok(reports)
}

/// Five shifted-conjugate rows whose kernels strictly exceed the shifted
/// subspace in both coordinates.
fn shifted_conjugates() -> CliResult<TaskReport> {
    let mut checks = Vec::new();
    let mut cases = Vec::new();
    for (k, (a1, a2, h1, h2)) in corpus::shifted_conjugate_cases().iter().enumerate() {
        let iz = iz_counterexample_check(a1, a2, h1, h2)?;
        checks.push(CheckReport::exact(
            &format!(
                "case {k}: kernel defect {} against shifted defect {}, strictly larger",
                iz.kernel_defect, iz.shift_defect
            ),
            iz.kernel_defect == 1
                && iz.shift_defect == 2
                && iz.contains_shift
                && iz.strictly_larger,
        ));
        cases.push(json!({
            "kernel_defect": iz.kernel_defect,
            "shift_defect": iz.shift_defect,
            "contains_shift": iz.contains_shift,
            "strictly_larger": iz.strictly_larger,
        }));
    }
    Ok(TaskReport::new(
        "selftest-09-shifted-conjugates",
        "kernel",
        json!({ "cases": cases }),
        checks,
    ))
}

/// Fourier coefficients of the geometric series `1/(1 - z/2)`.
fn geometric_fourier(h: &mut Harness) -> TaskReport {
    let f = RatFun::new(
        Poly::one(),
        Poly::new(vec![
            beurling::scalar::Scalar::one(),
            -beurling::scalar::Scalar::from_ratio(1, 2),
        ]),
    );
    let coeffs: Vec<String> = (0..=4)
        .map(|k| f.fourier(k).expect("analytic rational has coefficients").to_string())
        .collect();
    let checks = vec![h.fourier_check("1/(1 - z/2)", &f)];
    TaskReport::new(
        "selftest-13-geometric-fourier",
        "fourier",
        json!({ "function": f.to_string(), "coefficients": coeffs }),
        checks,
    )
}
