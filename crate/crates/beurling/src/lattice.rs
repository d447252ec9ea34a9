//! The lattice of shift-invariant subspaces: joins (greatest common inner
//! divisors), meets (least common inner multiples), backward-shift
//! invariant subspaces, and cyclicity.
//!
//! Every operation returns certified data: a join comes with exact
//! divisibility witnesses for each input, a meet is computed twice by
//! independent constructions that must agree up to a constant unitary, and
//! the published size bounds are re-derived and checked against the
//! computed column counts.

use crate::hankel::HankelSymbol;
use crate::inner::{equal_up_to_right_unitary, inner_outer, InnerOuter, MatrixInner};
use crate::nspan::{self, AtomGen, NSpanMatrix};
use crate::polymat::RatMat;
use crate::ratfun::RatFun;
use crate::scalar::Scalar;
use crate::{Error, Result};

fn inverse_tag_diag(theta: &MatrixInner) -> RatMat {
    let tags = theta.tags();
    RatMat::from_fn(tags.len(), tags.len(), |i, j| {
        if i == j {
            RatFun::constant(Scalar::new(tags[i].inverse(), crate::scalar::Quad::zero()))
        } else {
            RatFun::zero()
        }
    })
}

/// Smallest closed shift-invariant subspace containing the given rational
/// columns: the inner factor of the stacked generator matrix. The returned
/// rank equals the pointwise rank of the generators.
pub fn shift_invariant_from_generators(gens: &[RatMat]) -> Result<InnerOuter> {
    let mut stack: Option<RatMat> = None;
    for g in gens {
        stack = Some(match stack {
            None => g.clone(),
            Some(prev) => {
                if prev.rows() != g.rows() {
                    return Err(Error::DimensionMismatch(format!(
                        "generator with {} rows next to {}",
                        g.rows(),
                        prev.rows()
                    )));
                }
                prev.hstack(g)
            }
        });
    }
    let f = stack.ok_or_else(|| Error::ZeroInput("no generators".into()))?;
    inner_outer(&f)
}

/// Does `g` divide `m` on the left, i.e. is `m H^2` contained in `g H^2`?
/// Returns the exact analytic quotient when it does. Tags stay in stored
/// coordinates: `m.mat() == g.mat() * quotient`.
pub fn divides(g: &MatrixInner, m: &MatrixInner) -> Result<Option<RatMat>> {
    if g.rows() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "divisor has {} rows, multiple {}",
            g.rows(),
            m.rows()
        )));
    }
    if m.cols() == 0 {
        return Ok(Some(RatMat::zero(g.cols(), 0)));
    }
    if g.cols() == 0 {
        return Ok(None);
    }
    let quotient = inverse_tag_diag(g).mul(&g.mat().adjoint()).mul(m.mat());
    if g.mat().mul(&quotient) != *m.mat() {
        return Ok(None);
    }
    match quotient.analytic_in_disk() {
        Ok(true) => Ok(Some(quotient)),
        Ok(false) | Err(Error::PoleOnCircle(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Greatest common inner divisor with its divisibility witnesses.
#[derive(Debug, Clone)]
pub struct GcdInner {
    pub gcd: MatrixInner,
    /// `thetas[i].mat() == gcd.mat() * witnesses[i]`, each analytic.
    pub witnesses: Vec<RatMat>,
}

/// Greatest common inner divisor: the inner function of the span of all the
/// input subspaces. Its column count is the pointwise rank of the stacked
/// inputs; each input is certified divisible by the result.
pub fn gcd_inner(thetas: &[MatrixInner]) -> Result<GcdInner> {
    if thetas.is_empty() {
        return Err(Error::ZeroInput("no inner functions".into()));
    }
    let n = thetas[0].rows();
    for t in thetas {
        if t.rows() != n {
            return Err(Error::DimensionMismatch("row counts differ".into()));
        }
    }
    let nonempty: Vec<&MatrixInner> = thetas.iter().filter(|t| !t.is_empty()).collect();
    if nonempty.is_empty() {
        return Ok(GcdInner {
            gcd: MatrixInner::empty(n),
            witnesses: thetas.iter().map(|_| RatMat::zero(0, 0)).collect(),
        });
    }
    let mut stack = nonempty[0].mat().clone();
    for t in &nonempty[1..] {
        stack = stack.hstack(t.mat());
    }
    let gcd = inner_outer(&stack)?.theta;
    let l = gcd.cols();
    let max_m = thetas.iter().map(MatrixInner::cols).max().unwrap();
    let sum_m: usize = thetas.iter().map(MatrixInner::cols).sum();
    if l < max_m || l > sum_m.min(n) {
        return Err(Error::Certificate(format!(
            "common divisor has {l} columns, outside [{max_m}, {}]",
            sum_m.min(n)
        )));
    }
    let mut witnesses = Vec::with_capacity(thetas.len());
    for t in thetas {
        let w = divides(&gcd, t)?.ok_or_else(|| {
            Error::Certificate("computed divisor fails to divide an input".into())
        })?;
        witnesses.push(w);
    }
    Ok(GcdInner { gcd, witnesses })
}

/// Least common inner multiple with its divisibility witnesses.
#[derive(Debug, Clone)]
pub struct LcmInner {
    pub lcm: MatrixInner,
    /// `lcm.mat() == thetas[i].mat() * witnesses[i]`, each analytic.
    pub witnesses: Vec<RatMat>,
}

/// Intersection of a pair of subspaces through the polynomial syzygy
/// module of `[N_a | -N_b]`.
fn lcm_pair_syzygy(a: &MatrixInner, b: &MatrixInner) -> Result<MatrixInner> {
    let n = a.rows();
    if a.is_empty() || b.is_empty() {
        return Ok(MatrixInner::empty(n));
    }
    let (na, _) = a.mat().clear_denominators();
    let (nb, _) = b.mat().clear_denominators();
    let stacked = na.hstack(&nb.scale(&-Scalar::one()));
    let k = stacked.kernel_basis();
    if k.cols() == 0 {
        return Ok(MatrixInner::empty(n));
    }
    let top_rows: Vec<usize> = (0..a.cols()).collect();
    let all_cols: Vec<usize> = (0..k.cols()).collect();
    let k_top = k.submatrix(&top_rows, &all_cols);
    let prod = na.mul(&k_top);
    if prod.is_zero() {
        return Ok(MatrixInner::empty(n));
    }
    Ok(inner_outer(&prod.to_ratmat())?.theta)
}

/// Least common inner multiple: the inner function of the intersection of
/// all the input subspaces. Computed from the kernel of the stacked
/// annihilating symbols and cross-checked against a pairwise syzygy fold;
/// the two independent constructions must agree up to a constant unitary,
/// and each input is certified to divide the result. An intersection can
/// be the zero subspace, returned as an inner function with no columns.
pub fn lcm_inner(thetas: &[MatrixInner]) -> Result<LcmInner> {
    if thetas.is_empty() {
        return Err(Error::ZeroInput("no inner functions".into()));
    }
    let n = thetas[0].rows();
    for t in thetas {
        if t.rows() != n {
            return Err(Error::DimensionMismatch("row counts differ".into()));
        }
    }
    let lcm = if thetas.iter().any(|t| t.is_empty()) {
        MatrixInner::empty(n)
    } else {
        let mut gen = AtomGen::new();
        let mut stacked: Option<NSpanMatrix> = None;
        for t in thetas {
            let sym = nspan::symbol_for_inner(t, &mut gen)?;
            stacked = Some(match stacked {
                None => sym,
                Some(prev) => prev.vstack(&sym)?,
            });
        }
        nspan::kernel_symbolic(&stacked.expect("at least one symbol"))?.theta
    };
    let mut folded = thetas[0].clone();
    for t in &thetas[1..] {
        folded = lcm_pair_syzygy(&folded, t)?;
    }
    if !equal_up_to_right_unitary(&lcm, &folded)? {
        return Err(Error::Certificate(
            "independent intersection constructions disagree".into(),
        ));
    }
    let min_m = thetas.iter().map(MatrixInner::cols).min().unwrap();
    let lower: i64 = n as i64
        - thetas
            .iter()
            .map(|t| (n - t.cols()) as i64)
            .sum::<i64>();
    let l = lcm.cols() as i64;
    if l < lower.max(0) || lcm.cols() > min_m {
        return Err(Error::Certificate(format!(
            "common multiple has {l} columns, outside [{}, {min_m}]",
            lower.max(0)
        )));
    }
    let mut witnesses = Vec::with_capacity(thetas.len());
    for t in thetas {
        let w = divides(t, &lcm)?.ok_or_else(|| {
            Error::Certificate("an input fails to divide the computed multiple".into())
        })?;
        witnesses.push(w);
    }
    Ok(LcmInner { lcm, witnesses })
}

/// Smallest backward-shift invariant subspace containing the generators,
/// described by its orthogonal complement `theta H^2`.
#[derive(Debug, Clone)]
pub struct ModelSubspace {
    /// Square inner function with `subspace = H^2 (-) theta H^2`.
    pub theta: MatrixInner,
    /// Dimension of the subspace; finite for rational generators.
    pub dim: usize,
}

/// Smallest closed backward-shift invariant subspace containing the given
/// rational columns. A column `g` is orthogonal to every backward-shift
/// iterate of the generators exactly when the Hankel operator of
/// `conj(z) F^*` kills it, so the complement is that operator's kernel.
pub fn sstar_invariant_from_generators(gens: &[RatMat]) -> Result<ModelSubspace> {
    let mut stack: Option<RatMat> = None;
    for g in gens {
        stack = Some(match stack {
            None => g.clone(),
            Some(prev) => {
                if prev.rows() != g.rows() {
                    return Err(Error::DimensionMismatch(format!(
                        "generator with {} rows next to {}",
                        g.rows(),
                        prev.rows()
                    )));
                }
                prev.hstack(g)
            }
        });
    }
    let f = stack.ok_or_else(|| Error::ZeroInput("no generators".into()))?;
    match f.analytic_in_disk()? {
        true => {}
        false => {
            return Err(Error::NotAnalytic(
                "generators must be analytic in the closed disk".into(),
            ))
        }
    }
    let psi = f.adjoint().scale(&RatFun::z_bar());
    let sym = HankelSymbol::new(psi)?;
    let kernel = sym.kernel_rational()?;
    Ok(ModelSubspace { theta: kernel.theta, dim: kernel.defect_dim })
}

/// Verdict of the backward-shift cyclicity test, with both criteria.
#[derive(Debug, Clone)]
pub struct CyclicCheck {
    pub cyclic: bool,
    /// Dimension of the generated backward-shift invariant subspace.
    pub model_dim: usize,
    /// Independency of the conjugated components modulo the Nevanlinna
    /// class; cyclicity needs the full row count.
    pub independency: usize,
    /// The two criteria must reach the same verdict.
    pub criteria_agree: bool,
}

/// Is the rational column cyclic for the backward shift? Checked twice: the
/// generated subspace must be everything (it is finite-dimensional for a
/// rational column, so it never is), and the conjugated components must be
/// fully independent modulo the Nevanlinna class (conjugates of rationals
/// never are). Both verdicts are computed and compared.
pub fn cyclic_test(f: &RatMat) -> Result<CyclicCheck> {
    if f.cols() != 1 {
        return Err(Error::UnsupportedShape(format!(
            "cyclicity test for a {}x{} matrix",
            f.rows(),
            f.cols()
        )));
    }
    let model = sstar_invariant_from_generators(&[f.clone()])?;
    let cyclic_by_model = model.theta.cols() == 0;
    let conj = NSpanMatrix::from_rational(&f.adjoint());
    let independency = conj.independency();
    let cyclic_by_independency = independency == f.rows();
    Ok(CyclicCheck {
        cyclic: cyclic_by_model && cyclic_by_independency,
        model_dim: model.dim,
        independency,
        criteria_agree: cyclic_by_model == cyclic_by_independency,
    })
}

/// Cyclicity for a column given symbolically by the row of its conjugated
/// components: cyclic exactly when they are fully independent modulo the
/// Nevanlinna class.
pub fn cyclic_test_symbolic(conjugates: &NSpanMatrix) -> Result<bool> {
    if conjugates.rows() != 1 {
        return Err(Error::UnsupportedShape(format!(
            "conjugate data must be a single row, got {} rows",
            conjugates.rows()
        )));
    }
    Ok(conjugates.independency() == conjugates.cols())
}

/// Re-derivation of the published size bounds for meets and joins against
/// the computed column counts.
#[derive(Debug, Clone)]
pub struct SizeBoundAudit {
    pub rows: usize,
    pub column_counts: Vec<usize>,
    pub lcm_columns: usize,
    /// Lower bound with every term using the first column count.
    pub lcm_lower_uniform: i64,
    /// Lower bound with each input contributing its own column count.
    pub lcm_lower_derived: i64,
    pub lcm_upper: usize,
    /// False when the two lower-bound readings disagree on this input.
    pub uniform_matches_derived: bool,
    pub lcm_within_bounds: bool,
    pub gcd_columns: usize,
    pub gcd_lower: usize,
    pub gcd_upper: usize,
    pub gcd_within_bounds: bool,
    /// Independency of an optional stacked symbol for the same inputs.
    pub stack_independency: Option<usize>,
}

/// Checks the computed meet and join column counts against the size bounds,
/// re-derived in two readings: one replicates the first input's column
/// count across the sum (as the bound is usually quoted), one lets each
/// input contribute its own. The two differ for inputs of unequal sizes;
/// the derived reading is the binding one.
pub fn size_bound_audit(
    thetas: &[MatrixInner],
    lcm: &MatrixInner,
    gcd: &MatrixInner,
    stack: Option<&NSpanMatrix>,
) -> Result<SizeBoundAudit> {
    if thetas.is_empty() {
        return Err(Error::ZeroInput("no inner functions".into()));
    }
    let n = thetas[0].rows();
    let counts: Vec<usize> = thetas.iter().map(MatrixInner::cols).collect();
    let r = counts.len() as i64;
    let m1 = counts[0] as i64;
    let lcm_lower_uniform = n as i64 - r * (n as i64 - m1);
    let lcm_lower_derived =
        n as i64 - counts.iter().map(|&m| (n - m) as i64).sum::<i64>();
    let lcm_upper = *counts.iter().min().unwrap();
    let gcd_lower = *counts.iter().max().unwrap();
    let gcd_upper = counts.iter().sum::<usize>().min(n);
    let l = lcm.cols() as i64;
    Ok(SizeBoundAudit {
        rows: n,
        column_counts: counts,
        lcm_columns: lcm.cols(),
        lcm_lower_uniform,
        lcm_lower_derived,
        lcm_upper,
        uniform_matches_derived: lcm_lower_uniform == lcm_lower_derived,
        lcm_within_bounds: l >= lcm_lower_derived.max(0) && lcm.cols() <= lcm_upper,
        gcd_columns: gcd.cols(),
        gcd_lower,
        gcd_upper,
        gcd_within_bounds: gcd.cols() >= gcd_lower && gcd.cols() <= gcd_upper,
        stack_independency: stack.map(NSpanMatrix::independency),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::Quad;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(p(num), p(den))
    }

    fn rm(entries: &[&[RatFun]]) -> RatMat {
        let rows = entries.len();
        let cols = entries[0].len();
        RatMat::from_fn(rows, cols, |i, j| entries[i][j].clone())
    }

    fn diag_powers(a: usize, b: usize) -> MatrixInner {
        let mut za = vec![0i64; a + 1];
        za[a] = 1;
        let mut zb = vec![0i64; b + 1];
        zb[b] = 1;
        MatrixInner::from_plain(rm(&[
            &[RatFun::from_poly(p(&za)), rf(&[0], &[1])],
            &[rf(&[0], &[1]), RatFun::from_poly(p(&zb))],
        ]))
        .unwrap()
    }

    fn pair_column() -> MatrixInner {
        MatrixInner::new(
            rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0, 1], &[1])]]),
            vec![Quad::from_int(2)],
        )
        .unwrap()
    }

    #[test]
    fn generated_subspace_of_shifted_columns() {
        let gens = [
            rm(&[&[rf(&[0, 0, 1], &[1])], &[rf(&[0], &[1])]]),
            rm(&[&[rf(&[0], &[1])], &[rf(&[0, 1], &[1])]]),
            rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0], &[1])]]),
        ];
        let io = shift_invariant_from_generators(&gens).unwrap();
        assert_eq!(io.rank, 2);
        assert!(equal_up_to_right_unitary(&io.theta, &diag_powers(1, 1)).unwrap());
    }

    #[test]
    fn divisibility_witnesses() {
        let z1 = diag_powers(1, 1);
        let z2 = diag_powers(2, 2);
        let w = divides(&z1, &z2).unwrap().unwrap();
        assert_eq!(z1.mat().mul(&w), *z2.mat());
        assert!(w.analytic_in_disk().unwrap());
        assert!(divides(&z2, &z1).unwrap().is_none());
        // a column divides the square multiple of its own subspace
        let col = pair_column();
        assert!(divides(&col, &z1).unwrap().is_none());
        let doubled = MatrixInner::new(
            rm(&[&[rf(&[0, 0, 1], &[1])], &[rf(&[0, 0, 1], &[1])]]),
            vec![Quad::from_int(2)],
        )
        .unwrap();
        assert!(divides(&col, &doubled).unwrap().is_some());
    }

    #[test]
    fn gcd_of_crossed_diagonals() {
        let a = diag_powers(2, 1);
        let b = diag_powers(1, 2);
        let g = gcd_inner(&[a.clone(), b.clone()]).unwrap();
        assert!(equal_up_to_right_unitary(&g.gcd, &diag_powers(1, 1)).unwrap());
        for (t, w) in [a, b].iter().zip(&g.witnesses) {
            assert_eq!(g.gcd.mat().mul(w), *t.mat());
        }
    }

    #[test]
    fn gcd_with_a_column() {
        let col = pair_column();
        let square = diag_powers(1, 1);
        let g = gcd_inner(&[col, square]).unwrap();
        assert!(equal_up_to_right_unitary(&g.gcd, &diag_powers(1, 1)).unwrap());
    }

    #[test]
    fn lcm_of_crossed_diagonals() {
        let a = diag_powers(2, 1);
        let b = diag_powers(1, 2);
        let l = lcm_inner(&[a.clone(), b.clone()]).unwrap();
        assert!(equal_up_to_right_unitary(&l.lcm, &diag_powers(2, 2)).unwrap());
        for (t, w) in [a, b].iter().zip(&l.witnesses) {
            assert_eq!(t.mat().mul(w), *l.lcm.mat());
            assert!(w.analytic_in_disk().unwrap());
        }
    }

    #[test]
    fn lcm_of_column_and_square() {
        let col = pair_column();
        let square = diag_powers(1, 1);
        let l = lcm_inner(&[col.clone(), square]).unwrap();
        assert!(equal_up_to_right_unitary(&l.lcm, &col).unwrap());
    }

    #[test]
    fn lcm_can_vanish() {
        let e1 = MatrixInner::from_plain(rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0], &[1])]]))
            .unwrap();
        let e2 = MatrixInner::from_plain(rm(&[&[rf(&[0], &[1])], &[rf(&[0, 1], &[1])]]))
            .unwrap();
        let l = lcm_inner(&[e1, e2]).unwrap();
        assert!(l.lcm.is_empty());
        let with_empty = lcm_inner(&[diag_powers(1, 1), MatrixInner::empty(2)]).unwrap();
        assert!(with_empty.lcm.is_empty());
    }

    #[test]
    fn model_space_of_a_polynomial_column() {
        let f = rm(&[&[rf(&[1], &[1])], &[rf(&[0, 1], &[1])]]);
        let ms = sstar_invariant_from_generators(&[f.clone()]).unwrap();
        assert_eq!(ms.dim, 2);
        // the generator is orthogonal to theta H^2: the analytic projection
        // of theta^* f vanishes
        let prod = ms.theta.mat().adjoint().mul(&f);
        for i in 0..prod.rows() {
            assert!(prod.at(i, 0).riesz_analytic().unwrap().is_zero());
        }
        // and membership: f itself lies outside theta H^2
        assert!(!ms.theta.contains(&f).unwrap());
    }

    #[test]
    fn model_space_dimension_counts_iterates() {
        // backward iterates of (z^2, 0) span (z^2, 0), (z, 0), (1, 0)
        let f = rm(&[&[rf(&[0, 0, 1], &[1])], &[rf(&[0], &[1])]]);
        let ms = sstar_invariant_from_generators(&[f]).unwrap();
        assert_eq!(ms.dim, 3);
    }

    #[test]
    fn rational_columns_are_never_cyclic() {
        let f = rm(&[&[rf(&[1], &[1])], &[rf(&[0, 1], &[1])]]);
        let check = cyclic_test(&f).unwrap();
        assert!(!check.cyclic);
        assert_eq!(check.model_dim, 2);
        assert_eq!(check.independency, 0);
        assert!(check.criteria_agree);
    }

    #[test]
    fn symbolic_cyclicity_needs_full_independency() {
        let mut gen = AtomGen::new();
        let mut free = NSpanMatrix::zero(1, 2);
        free.set_atom(0, 0, gen.fresh(), RatFun::one());
        free.set_atom(0, 1, gen.fresh(), RatFun::one());
        assert!(cyclic_test_symbolic(&free).unwrap());

        let a = gen.fresh();
        let mut tied = NSpanMatrix::zero(1, 2);
        tied.set_atom(0, 0, a, RatFun::one());
        tied.set_atom(0, 1, a, rf(&[0, 1], &[1]));
        assert!(!cyclic_test_symbolic(&tied).unwrap());
    }

    #[test]
    fn bounds_audit_readings() {
        let a = diag_powers(2, 1);
        let b = diag_powers(1, 2);
        let l = lcm_inner(&[a.clone(), b.clone()]).unwrap();
        let g = gcd_inner(&[a.clone(), b.clone()]).unwrap();
        let audit = size_bound_audit(&[a, b], &l.lcm, &g.gcd, None).unwrap();
        assert!(audit.lcm_within_bounds);
        assert!(audit.gcd_within_bounds);
        assert!(audit.uniform_matches_derived);
        assert_eq!((audit.lcm_columns, audit.gcd_columns), (2, 2));

        // unequal column counts split the two lower-bound readings
        let col = pair_column();
        let square = diag_powers(1, 1);
        let l = lcm_inner(&[col.clone(), square.clone()]).unwrap();
        let g = gcd_inner(&[col.clone(), square.clone()]).unwrap();
        let audit = size_bound_audit(&[col, square], &l.lcm, &g.gcd, None).unwrap();
        assert!(!audit.uniform_matches_derived);
        assert_eq!(audit.lcm_lower_uniform, 0);
        assert_eq!(audit.lcm_lower_derived, 1);
        assert!(audit.lcm_within_bounds);
    }
}
