//! Worked examples and seeded generators shared by the test suite and the
//! command line self test.
//!
//! Everything here is deterministic: the fixed cases are frozen matrices
//! with closed-form kernels that the library must reproduce, the random
//! generators draw from a seeded stream so a report can be replayed
//! byte for byte.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hankel::HankelSymbol;
use crate::inner::{mobius, BPFactor, MatrixInner};
use crate::nspan::{AtomGen, NSpanMatrix};
use crate::poly::Poly;
use crate::polymat::RatMat;
use crate::ratfun::RatFun;
use crate::scalar::{Quad, Scalar};
use crate::{Error, Result};

/// Seeded stream for the random families; the same seed replays the same
/// matrices on every platform.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Finite Blaschke product with the given zeros, all strictly inside the
/// disk.
pub fn blaschke_product(zeros: &[Scalar]) -> Result<RatFun> {
    let mut b = RatFun::one();
    for alpha in zeros {
        if alpha.norm_sqr().cmp_real(&Quad::one()) != std::cmp::Ordering::Less {
            return Err(Error::NotInner(format!(
                "Blaschke zero {} is not inside the open disk",
                alpha
            )));
        }
        b = &b * &mobius(alpha);
    }
    Ok(b)
}

fn ratmat(entries: &[&[RatFun]]) -> RatMat {
    RatMat::from_fn(entries.len(), entries[0].len(), |i, j| {
        entries[i][j].clone()
    })
}

/// Row symbol `[conj(theta t1), conj(theta t2)]` for inner `theta`, `t1`,
/// `t2`.
pub fn conjugate_pair_symbol(
    theta: &RatFun,
    t1: &RatFun,
    t2: &RatFun,
) -> Result<HankelSymbol> {
    let e1 = (theta * t1).adjoint();
    let e2 = (theta * t2).adjoint();
    HankelSymbol::new(ratmat(&[&[e1, e2]]))
}

/// Closed-form kernel of `conjugate_pair_symbol` when `t1` and `t2` have no
/// common inner divisor:
/// `diag(t1, t2) * [[(theta-1)/2, (theta+1)/2], [(theta+1)/2, (theta-1)/2]]`.
pub fn conjugate_pair_kernel(
    theta: &RatFun,
    t1: &RatFun,
    t2: &RatFun,
) -> Result<MatrixInner> {
    let half = RatFun::constant(Scalar::from_ratio(1, 2));
    let one = RatFun::one();
    let minus = &(theta - &one) * &half;
    let plus = &(theta + &one) * &half;
    let mat = RatMat::from_fn(2, 2, |i, j| {
        let core = if i == j { minus.clone() } else { plus.clone() };
        if i == 0 {
            t1 * &core
        } else {
            t2 * &core
        }
    });
    MatrixInner::from_plain(mat)
}

/// The row symbol `[conj(z), conj(z)]`, the smallest symbol whose kernel
/// mixes the two coordinates.
pub fn conjugate_shift_pair() -> Result<HankelSymbol> {
    let one = RatFun::one();
    conjugate_pair_symbol(&RatFun::z(), &one, &one)
}

/// Its closed-form kernel `[[(z-1)/2, (z+1)/2], [(z+1)/2, (z-1)/2]]`.
pub fn conjugate_shift_pair_kernel() -> Result<MatrixInner> {
    let one = RatFun::one();
    conjugate_pair_kernel(&RatFun::z(), &one, &one)
}

/// A frozen symbol/kernel pair for the conjugate-pair family.
pub struct ConjugatePair {
    pub theta: RatFun,
    pub t1: RatFun,
    pub t2: RatFun,
}

impl ConjugatePair {
    pub fn symbol(&self) -> Result<HankelSymbol> {
        conjugate_pair_symbol(&self.theta, &self.t1, &self.t2)
    }

    pub fn kernel(&self) -> Result<MatrixInner> {
        conjugate_pair_kernel(&self.theta, &self.t1, &self.t2)
    }
}

/// Five frozen cases with coprime cofactors, mixing monomials, real and
/// imaginary Blaschke zeros.
pub fn conjugate_pair_cases() -> Result<Vec<ConjugatePair>> {
    let z = RatFun::z();
    let z2 = &z * &z;
    let one = RatFun::one();
    let b_half = blaschke_product(&[Scalar::from_ratio(1, 2)])?;
    let b_third = blaschke_product(&[Scalar::from_ratio(-1, 3)])?;
    let b_imag = blaschke_product(&[Scalar::from_parts(0, 1, 2)])?;
    Ok(vec![
        ConjugatePair {
            theta: z.clone(),
            t1: one,
            t2: z.clone(),
        },
        ConjugatePair {
            theta: z2.clone(),
            t1: z.clone(),
            t2: b_half.clone(),
        },
        ConjugatePair {
            theta: b_half.clone(),
            t1: z2.clone(),
            t2: b_third,
        },
        ConjugatePair {
            theta: &z * &b_half,
            t1: b_imag.clone(),
            t2: z.clone(),
        },
        ConjugatePair {
            theta: b_imag,
            t1: z,
            t2: b_half,
        },
    ])
}

/// Symbol `[[a conj(t1), -a conj(t2)], [conj(t1), 0]]` with one free entry
/// `a`; its kernel is the single scaled column `(t1, t2)^t / sqrt(2)`.
pub fn single_column_symbol(
    t1: &RatFun,
    t2: &RatFun,
    gen: &mut AtomGen,
) -> NSpanMatrix {
    let mut phi = NSpanMatrix::zero(2, 2);
    let a = gen.fresh();
    phi.set_atom(0, 0, a, t1.adjoint());
    phi.set_atom(0, 1, a, -&t2.adjoint());
    phi.set_rational(1, 0, t1.adjoint());
    phi
}

/// The kernel of `single_column_symbol`: the column `(t1, t2)^t` with
/// squared norm tag 2.
pub fn single_column_kernel(t1: &RatFun, t2: &RatFun) -> Result<MatrixInner> {
    let mat = RatMat::from_fn(2, 1, |i, _| if i == 0 { t1.clone() } else { t2.clone() });
    MatrixInner::new(mat, vec![Quad::from_int(2)])
}

/// Row symbol `[a, conj(tc) (1 - a tb)]` with one free entry `a`; its
/// kernel is the single scaled column `(tb, tc)^t / sqrt(2)`.
pub fn balanced_row_symbol(
    tb: &RatFun,
    tc: &RatFun,
    gen: &mut AtomGen,
) -> NSpanMatrix {
    let mut phi = NSpanMatrix::zero(1, 2);
    let a = gen.fresh();
    phi.set_atom(0, 0, a, RatFun::one());
    phi.set_rational(0, 1, tc.adjoint());
    phi.set_atom(0, 1, a, -&(&tc.adjoint() * tb));
    phi
}

/// A coupled pair of three-row symbols, each with one free entry, whose
/// kernels meet in a single column.
pub struct CoupledPair {
    pub phi: NSpanMatrix,
    pub psi: NSpanMatrix,
    pub stack: NSpanMatrix,
    pub kernel_phi: MatrixInner,
    pub kernel_psi: MatrixInner,
    pub meet: MatrixInner,
}

/// The frozen coupled pair: `phi = [[a1,0,0],[0,conj t1,0],[0,0,conj t2]]`
/// and `psi = [[a2,a2,0],[0,conj t3,0],[0,0,conj t4]]` with `t1 = z`,
/// `t2 = z^2`, `t3 = b`, `t4 = z b` for the Blaschke factor `b` at `1/2`.
/// The kernels are `[[0,0],[t1,0],[0,t2]]` and `[[-t3,0],[t3,0],[0,t4]]`
/// (tags `[2,1]`), and they meet in the single column
/// `(0, 0, lcm(t2, t4))^t` with `lcm(t2, t4) = z^2 b`.
pub fn coupled_pair() -> Result<CoupledPair> {
    let z = RatFun::z();
    let zero = RatFun::zero();
    let t1 = z.clone();
    let t2 = &z * &z;
    let t3 = blaschke_product(&[Scalar::from_ratio(1, 2)])?;
    let t4 = &z * &t3;
    let lcm24 = &t2 * &t3;

    let mut gen = AtomGen::new();
    let mut phi = NSpanMatrix::zero(3, 3);
    let a1 = gen.fresh();
    phi.set_atom(0, 0, a1, RatFun::one());
    phi.set_rational(1, 1, t1.adjoint());
    phi.set_rational(2, 2, t2.adjoint());

    let mut psi = NSpanMatrix::zero(3, 3);
    let a2 = gen.fresh();
    psi.set_atom(0, 0, a2, RatFun::one());
    psi.set_atom(0, 1, a2, RatFun::one());
    psi.set_rational(1, 1, t3.adjoint());
    psi.set_rational(2, 2, t4.adjoint());

    let stack = phi.vstack(&psi)?;

    let kernel_phi = MatrixInner::from_plain(ratmat(&[
        &[zero.clone(), zero.clone()],
        &[t1.clone(), zero.clone()],
        &[zero.clone(), t2.clone()],
    ]))?;
    let kernel_psi = MatrixInner::new(
        ratmat(&[
            &[-&t3, zero.clone()],
            &[t3.clone(), zero.clone()],
            &[zero.clone(), t4.clone()],
        ]),
        vec![Quad::from_int(2), Quad::one()],
    )?;
    let meet = MatrixInner::from_plain(ratmat(&[&[zero.clone()], &[zero], &[lcm24]]))?;

    Ok(CoupledPair {
        phi,
        psi,
        stack,
        kernel_phi,
        kernel_psi,
        meet,
    })
}

/// A wide polynomial matrix of rank two: its inner factor is 3x2 and its
/// outer factor 2x4.
pub fn rank_two_wide() -> RatMat {
    let f = |c: &[i64]| RatFun::from_poly(Poly::from_ints(c));
    ratmat(&[
        &[f(&[1]), f(&[1]), f(&[0, 1]), f(&[0, 0, 1])],
        &[f(&[1]), f(&[0, 1]), f(&[0, 0, 1]), f(&[0, 0, 0, 1])],
        &[f(&[1]), f(&[0]), f(&[0]), f(&[0])],
    ])
}

/// Five row symbols `[a1 conj(z) + h1, a2 conj(z) + h2]` with constants
/// `a_i`, analytic rational `h_i`: each kernel is one interpolation
/// condition, strictly larger than the shifted candidate `z H^2 x z H^2`.
pub fn shifted_conjugate_cases() -> Vec<(Scalar, Scalar, RatFun, RatFun)> {
    let f = |c: &[i64]| RatFun::from_poly(Poly::from_ints(c));
    vec![
        (Scalar::one(), Scalar::one(), RatFun::zero(), RatFun::zero()),
        (Scalar::one(), Scalar::from_int(-1), f(&[0, 1]), f(&[0, 0, 1])),
        (Scalar::one(), Scalar::from_int(2), f(&[1, 1]), RatFun::zero()),
        (Scalar::one(), Scalar::i(), f(&[0, 1]), f(&[1])),
        (Scalar::from_int(2), Scalar::from_int(3), f(&[0, 0, 1]), f(&[1, 1])),
    ]
}

/// Rational symbols with known module structure, used for the
/// finite-section dimension sweep.
pub fn rational_symbol_corpus() -> Result<Vec<HankelSymbol>> {
    let z = RatFun::z();
    let zero = RatFun::zero();
    let zb = RatFun::z_bar();
    let zb2 = &zb * &zb;
    let zb3 = &zb2 * &zb;
    let b_half = blaschke_product(&[Scalar::from_ratio(1, 2)])?;
    let bb = b_half.adjoint();
    let mut out = Vec::new();
    out.push(conjugate_shift_pair()?);
    out.push(HankelSymbol::new(ratmat(&[&[zb2.clone()]]))?);
    out.push(HankelSymbol::new(ratmat(&[
        &[zb.clone(), zero.clone()],
        &[zero.clone(), zb3],
    ]))?);
    out.push(conjugate_pair_symbol(&z, &RatFun::one(), &z)?);
    out.push(HankelSymbol::new(ratmat(&[&[bb.clone(), zb.clone()]]))?);
    out.push(HankelSymbol::new(ratmat(&[
        &[-&bb, bb, zero.clone()],
        &[zero.clone(), zero, (&z * &b_half).adjoint()],
    ]))?);
    Ok(out)
}

fn small_alpha(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let re = rng.gen_range(-2i64..=2);
        let im = rng.gen_range(-2i64..=2);
        let den = rng.gen_range(3i64..=5);
        if re * re + im * im < den * den {
            return Scalar::from_parts(re, im, den);
        }
    }
}

fn small_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..len)
            .map(|_| Scalar::from_int(rng.gen_range(-2i64..=2)))
            .collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

/// Random square inner function: a product of `factors` rank-one Blaschke
/// factors at small Gaussian-rational zeros.
pub fn random_inner(
    rng: &mut ChaCha8Rng,
    size: usize,
    factors: usize,
) -> Result<MatrixInner> {
    let mut m = RatMat::identity(size);
    for _ in 0..factors {
        let alpha = small_alpha(rng);
        let v = small_vector(rng, size);
        let factor = BPFactor::new(alpha, v, vec![Quad::one(); size])?;
        m = m.mul(&factor.matrix());
    }
    MatrixInner::from_plain(m)
}

/// Random polynomial matrix with small integer coefficients.
pub fn random_polynomial_matrix(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    max_degree: usize,
) -> RatMat {
    RatMat::from_fn(rows, cols, |_, _| {
        let deg = rng.gen_range(0..=max_degree);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2i64..=2)).collect();
        RatFun::from_poly(Poly::from_ints(&coeffs))
    })
}

/// Random analytic rational column with at least one nonzero entry;
/// denominators come from a fixed outer list so every entry stays analytic
/// on the closed disk.
pub fn random_analytic_column(
    rng: &mut ChaCha8Rng,
    rows: usize,
    max_degree: usize,
) -> RatMat {
    let dens = [
        Poly::from_ints(&[1]),
        Poly::from_ints(&[2, -1]),
        Poly::from_ints(&[3, 1]),
    ];
    loop {
        let m = RatMat::from_fn(rows, 1, |_, _| {
            let deg = rng.gen_range(0..=max_degree);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2i64..=2)).collect();
            let den = dens[rng.gen_range(0..dens.len())].clone();
            RatFun::new(Poly::from_ints(&coeffs), den)
        });
        if !m.is_zero() {
            return m;
        }
    }
}

/// Random tall matrix of full column rank: an identity block stacked over
/// random polynomial rows.
pub fn random_full_rank_tall(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    max_degree: usize,
) -> RatMat {
    assert!(rows >= cols);
    let tail = random_polynomial_matrix(rng, rows - cols, cols, max_degree);
    RatMat::from_fn(rows, cols, |i, j| {
        if i < cols {
            if i == j {
                RatFun::one()
            } else {
                RatFun::zero()
            }
        } else {
            tail.at(i - cols, j).clone()
        }
    })
}

/// Random symbol with free entries: constant coefficient rows for the free
/// part, antianalytic monomial dust for the rational part.
pub fn random_free_symbol(
    rng: &mut ChaCha8Rng,
    gen: &mut AtomGen,
) -> NSpanMatrix {
    let rows = rng.gen_range(1usize..=3);
    let cols = rng.gen_range(1usize..=3);
    let mut phi = NSpanMatrix::zero(rows, cols);
    let atoms = rng.gen_range(0usize..=2);
    for _ in 0..atoms {
        let a = gen.fresh();
        let i = rng.gen_range(0..rows);
        let coeffs = small_vector(rng, cols);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                phi.set_atom(i, j, a, RatFun::constant(c.clone()));
            }
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.4) {
                let c = rng.gen_range(-2i64..=2);
                if c != 0 {
                    let k = rng.gen_range(1usize..=2);
                    let mut den = vec![0i64; k + 1];
                    den[k] = 1;
                    phi.set_rational(
                        i,
                        j,
                        RatFun::new(Poly::from_ints(&[c]), Poly::from_ints(&den)),
                    );
                }
            }
        }
    }
    phi
}

fn antianalytic_dust(rng: &mut ChaCha8Rng) -> Option<RatFun> {
    let c = rng.gen_range(-2i64..=2);
    if c == 0 {
        return None;
    }
    let k = rng.gen_range(1usize..=2);
    let mut den = vec![0i64; k + 1];
    den[k] = 1;
    Some(RatFun::new(Poly::from_ints(&[c]), Poly::from_ints(&den)))
}

/// Random square nonsingular matrix; entries where `keep_constant` holds
/// stay constant, the rest are small polynomials.
fn random_nonsingular(
    rng: &mut ChaCha8Rng,
    n: usize,
    keep_constant: impl Fn(usize, usize) -> bool,
) -> RatMat {
    loop {
        let mut draws: Vec<RatFun> = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if keep_constant(i, j) {
                    draws.push(RatFun::constant(Scalar::from_int(rng.gen_range(-2i64..=2))));
                } else {
                    let deg = rng.gen_range(0usize..=1);
                    let coeffs: Vec<i64> =
                        (0..=deg).map(|_| rng.gen_range(-2i64..=2)).collect();
                    draws.push(RatFun::from_poly(Poly::from_ints(&coeffs)));
                }
            }
        }
        let m = RatMat::from_fn(n, n, |i, j| draws[i * n + j].clone());
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random square nonsingular matrix with genuine denominators from a fixed
/// outer list.
pub fn random_nonsingular_rational(rng: &mut ChaCha8Rng, n: usize) -> RatMat {
    let dens = [
        Poly::from_ints(&[1]),
        Poly::from_ints(&[2, -1]),
        Poly::from_ints(&[3, 1]),
    ];
    loop {
        let mut draws: Vec<RatFun> = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            let deg = rng.gen_range(0usize..=1);
            let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-2i64..=2)).collect();
            let den = dens[rng.gen_range(0..dens.len())].clone();
            draws.push(RatFun::new(Poly::from_ints(&coeffs), den));
        }
        let m = RatMat::from_fn(n, n, |i, j| draws[i * n + j].clone());
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Symbol with known independency: a diagonal seed of free entries plus
/// antianalytic dust, moved by nonsingular multipliers on both sides.
/// The multiplier columns and rows touching the seed atoms stay constant,
/// so the pointwise stage of the kernel computation stays constant too.
pub fn known_independency_case(
    rng: &mut ChaCha8Rng,
    gen: &mut AtomGen,
) -> Result<(NSpanMatrix, usize)> {
    let rows = rng.gen_range(1usize..=3);
    let cols = rng.gen_range(1usize..=3);
    let ind = rng.gen_range(0..=rows.min(cols));
    let mut seed = NSpanMatrix::zero(rows, cols);
    for k in 0..ind {
        seed.set_atom(k, k, gen.fresh(), RatFun::one());
    }
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(0.3) {
                if let Some(dust) = antianalytic_dust(rng) {
                    seed.set_rational(i, j, dust);
                }
            }
        }
    }
    let a = random_nonsingular(rng, rows, |_, j| j < ind);
    let b = random_nonsingular(rng, cols, |i, _| i < ind);
    let phi = NSpanMatrix::from_rational(&a)
        .mul(&seed)?
        .mul(&NSpanMatrix::from_rational(&b))?;
    Ok((phi, ind))
}

/// Twenty symbols with independency known by construction.
pub fn known_independency_cases(seed: u64) -> Result<Vec<(NSpanMatrix, usize)>> {
    let mut rng = seeded(seed);
    let mut gen = AtomGen::new();
    (0..20)
        .map(|_| known_independency_case(&mut rng, &mut gen))
        .collect()
}

/// Twenty symbols with free entries: fourteen random draws plus six frozen
/// shapes whose kernels are known in closed form.
pub fn free_symbol_cases(seed: u64) -> Result<Vec<NSpanMatrix>> {
    let mut rng = seeded(seed);
    let mut gen = AtomGen::new();
    let z = RatFun::z();
    let z2 = &z * &z;
    let b_half = blaschke_product(&[Scalar::from_ratio(1, 2)])?;
    let pair = coupled_pair()?;
    let mut out = vec![
        single_column_symbol(&z, &z2, &mut gen),
        single_column_symbol(&z2, &b_half, &mut gen),
        balanced_row_symbol(&z, &z2, &mut gen),
        balanced_row_symbol(&b_half, &b_half, &mut gen),
        pair.phi.clone(),
        pair.psi.clone(),
    ];
    while out.len() < 20 {
        out.push(random_free_symbol(&mut rng, &mut gen));
    }
    Ok(out)
}
