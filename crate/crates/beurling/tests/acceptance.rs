//! End-to-end acceptance checks. Each test covers one numbered criterion
//! and prints exactly one pass/fail line.

use beurling::corpus;
use beurling::hankel::HankelSymbol;
use beurling::inner::{equal_up_to_right_unitary, inner_outer};
use beurling::lattice::{cyclic_test, gcd_inner, lcm_inner, sstar_invariant_from_generators};
use beurling::nspan::{
    iz_counterexample_check, kernel_symbolic, mul_left_checked, mul_right_checked, AtomGen,
};
use beurling::polymat::RatMat;
use beurling::ratfun::RatFun;
use rand::Rng;

fn report(n: u32, what: &str, ok: bool) {
    println!("criterion {:02} {}: {}", n, if ok { "PASS" } else { "FAIL" }, what);
    assert!(ok, "criterion {:02} failed: {}", n, what);
}

#[test]
fn criterion_01_conjugate_shift_pair() {
    let symbol = corpus::conjugate_shift_pair().unwrap();
    let kernel = symbol.kernel_rational().unwrap();
    let expected = corpus::conjugate_shift_pair_kernel().unwrap();
    let ok = kernel.defect_dim == 1
        && equal_up_to_right_unitary(&kernel.theta, &expected).unwrap();
    report(1, "kernel of [conj(z), conj(z)] equals the mixing matrix", ok);
}

#[test]
fn criterion_02_two_column_closed_form() {
    let mut ok = true;
    for case in corpus::conjugate_pair_cases().unwrap() {
        let kernel = case.symbol().unwrap().kernel_rational().unwrap();
        let expected = case.kernel().unwrap();
        ok &= equal_up_to_right_unitary(&kernel.theta, &expected).unwrap();
    }
    report(2, "five conjugate pairs match the closed-form kernel", ok);
}

#[test]
fn criterion_03_adjoint_round_trip() {
    let mut rng = corpus::seeded(101);
    let mut ok = true;
    for k in 0..10usize {
        let theta = corpus::random_inner(&mut rng, 1 + k % 3, 1 + k % 4).unwrap();
        let symbol = HankelSymbol::new(theta.mat().adjoint()).unwrap();
        let kernel = symbol.kernel_rational().unwrap();
        ok &= equal_up_to_right_unitary(&kernel.theta, &theta).unwrap();
    }
    report(3, "ten random inner adjoint symbols return their inner", ok);
}

#[test]
fn criterion_04_kernel_size_law() {
    let mut ok = true;
    for (phi, ind) in corpus::known_independency_cases(5).unwrap() {
        let kernel = kernel_symbolic(&phi).unwrap();
        ok &= kernel.independency == ind;
        ok &= kernel.theta.cols() == phi.cols() - ind;
        ok &= kernel.theta.is_empty() == (ind == phi.cols());
    }
    report(4, "twenty seeded symbols obey columns = m - independency", ok);
}

#[test]
fn criterion_05_independency_preservation() {
    let mut rng = corpus::seeded(202);
    let mut gen = AtomGen::new();
    let mut ok = true;
    for _ in 0..20 {
        let phi = corpus::random_free_symbol(&mut rng, &mut gen);
        let a = corpus::random_nonsingular_rational(&mut rng, phi.rows());
        let left = mul_left_checked(&a, &phi).unwrap();
        ok &= left.consistent && left.after == left.before;
        let b = corpus::random_nonsingular_rational(&mut rng, phi.cols());
        let right = mul_right_checked(&phi, &b).unwrap();
        ok &= right.consistent && right.after == right.before;
        // sandwich: s columns folded down to l by a full-rank tall matrix
        let s = phi.cols();
        let l = rng.gen_range(1..=s);
        let tall = corpus::random_full_rank_tall(&mut rng, s, l, 1);
        let fold = mul_right_checked(&phi, &tall).unwrap();
        ok &= fold.consistent;
        ok &= fold.after <= fold.before && fold.after + (s - l) >= fold.before;
    }
    report(5, "multiplication preserves or sandwiches independency", ok);
}

#[test]
fn criterion_06_coupled_pair_end_to_end() {
    let pair = corpus::coupled_pair().unwrap();
    let mut ok = true;

    let kphi = kernel_symbolic(&pair.phi).unwrap();
    ok &= kphi.independency == 1;
    ok &= equal_up_to_right_unitary(&kphi.theta, &pair.kernel_phi).unwrap();

    let kpsi = kernel_symbolic(&pair.psi).unwrap();
    ok &= kpsi.independency == 1;
    ok &= equal_up_to_right_unitary(&kpsi.theta, &pair.kernel_psi).unwrap();

    let kstack = kernel_symbolic(&pair.stack).unwrap();
    ok &= kstack.independency == 2;
    ok &= equal_up_to_right_unitary(&kstack.theta, &pair.meet).unwrap();

    let join = gcd_inner(&[pair.kernel_phi.clone(), pair.kernel_psi.clone()]).unwrap();
    ok &= join.gcd.rows() == 3 && join.gcd.cols() == 3;

    let meet = lcm_inner(&[pair.kernel_phi, pair.kernel_psi]).unwrap();
    ok &= equal_up_to_right_unitary(&meet.lcm, &pair.meet).unwrap();

    report(6, "coupled pair: kernels, stack, meet column, square join", ok);
}

#[test]
fn criterion_07_wide_factorization() {
    let f = corpus::rank_two_wide();
    let io = inner_outer(&f).unwrap();
    let mut ok = io.rank == 2;
    ok &= io.theta.rows() == 3 && io.theta.cols() == 2;
    ok &= io.outer.rows() == 2 && io.outer.cols() == 4;
    ok &= io.theta.mat().mul(&io.outer) == f;
    report(7, "3x4 rank-two matrix splits as (3x2)(2x4) exactly", ok);
}

#[test]
fn criterion_08_finite_section_agreement() {
    let mut ok = true;
    for symbol in corpus::rational_symbol_corpus().unwrap() {
        let kernel = symbol.kernel_rational().unwrap();
        for d in 0..=6 {
            let numeric = symbol.finite_section_kernel_dim(d, 1e-8).unwrap();
            ok &= numeric == kernel.polynomial_kernel_dim(d);
        }
    }
    report(8, "finite sections match predicted dimensions for d = 0..6", ok);
}

#[test]
fn criterion_09_shifted_conjugate_defects() {
    let mut ok = true;
    for (a1, a2, h1, h2) in corpus::shifted_conjugate_cases() {
        let check = iz_counterexample_check(&a1, &a2, &h1, &h2).unwrap();
        ok &= check.kernel_defect == 1;
        ok &= check.shift_defect == 2;
        ok &= check.contains_shift && check.strictly_larger;
    }
    report(9, "five shifted-conjugate kernels exceed the shift candidate", ok);
}

#[test]
fn criterion_10_backward_shift_machinery() {
    let mut ok = true;

    let gen_col = RatMat::from_fn(2, 1, |i, _| {
        if i == 0 {
            RatFun::one()
        } else {
            RatFun::z()
        }
    });
    let model = sstar_invariant_from_generators(&[gen_col]).unwrap();
    ok &= model.dim == 2;

    let one_col = RatMat::from_fn(2, 1, |_, _| RatFun::one());
    let single = sstar_invariant_from_generators(&[one_col]).unwrap();
    let expected = corpus::conjugate_shift_pair_kernel().unwrap();
    ok &= single.dim == 1;
    ok &= equal_up_to_right_unitary(&single.theta, &expected).unwrap();

    let mut rng = corpus::seeded(303);
    for _ in 0..20 {
        let rows = rng.gen_range(1usize..=3);
        let f = corpus::random_analytic_column(&mut rng, rows, 3);
        let check = cyclic_test(&f).unwrap();
        ok &= !check.cyclic && check.criteria_agree;
    }

    report(10, "model dimensions, single generator, and cyclicity checks", ok);
}
