//! Block Hankel operators with rational matrix symbols.
//!
//! The Hankel operator of a symbol keeps only the strictly antianalytic
//! part of the symbol, so a rational symbol is stored as an exact split
//! `phi = analytic + c / p`: `p` is a monic polynomial with all zeros
//! strictly inside the disk and `c` a polynomial matrix with
//! `deg c < deg p` entry-wise. A vector lies in the kernel exactly when
//! `(c / p) f` stays analytic, i.e. when `c f == 0` modulo `p`, which turns
//! the kernel into an interpolation module. Its basis is a polynomial
//! matrix whose determinant divides a power of `p`, so the full inner part
//! comes out of a plain Blaschke-Potapov chain at known points and the
//! computation never leaves the coefficient field.

use crate::inner::{self, MatrixInner};
use crate::numeric::{self, C64};
use crate::poly::Poly;
use crate::polymat::{interpolation_module_basis, PolyMat, RatMat};
use crate::roots::{self, CirclePolicy};
use crate::{Error, Result};

/// A rational matrix symbol together with its exact Riesz split. The
/// analytic part never influences the Hankel operator; everything below
/// works with the numerator stack `c` and the modulus `p`.
#[derive(Debug, Clone)]
pub struct HankelSymbol {
    phi: RatMat,
    analytic: RatMat,
    anti: RatMat,
    c: PolyMat,
    p: Poly,
}

impl HankelSymbol {
    /// Splits every entry. Fails on circle poles (the symbol would be
    /// unbounded) and on interior poles that are not exact Gaussian
    /// rationals.
    pub fn new(phi: RatMat) -> Result<Self> {
        if phi.rows() == 0 || phi.cols() == 0 {
            return Err(Error::DimensionMismatch("empty symbol".into()));
        }
        let mut analytic = RatMat::zero(phi.rows(), phi.cols());
        let mut anti = RatMat::zero(phi.rows(), phi.cols());
        for i in 0..phi.rows() {
            for j in 0..phi.cols() {
                let split = phi.at(i, j).pole_split()?;
                analytic.set(i, j, split.analytic);
                anti.set(i, j, split.antianalytic);
            }
        }
        let mut p = Poly::one();
        for i in 0..phi.rows() {
            for j in 0..phi.cols() {
                let den = anti.at(i, j).den();
                let g = p.gcd(den);
                p = (&p * den).div_exact(&g).expect("gcd divides both factors");
            }
        }
        p = p.monic();
        let c = PolyMat::from_fn(phi.rows(), phi.cols(), |i, j| {
            let f = anti.at(i, j);
            if f.is_zero() {
                Poly::zero()
            } else {
                let cof = p.div_exact(f.den()).expect("modulus is the denominator lcm");
                f.num() * &cof
            }
        });
        Ok(HankelSymbol { phi, analytic, anti, c, p })
    }

    pub fn rows(&self) -> usize {
        self.phi.rows()
    }

    pub fn cols(&self) -> usize {
        self.phi.cols()
    }

    pub fn symbol(&self) -> &RatMat {
        &self.phi
    }

    pub fn analytic_part(&self) -> &RatMat {
        &self.analytic
    }

    /// The strictly antianalytic part; the Hankel operator of `phi` and of
    /// this matrix coincide.
    pub fn antianalytic_part(&self) -> &RatMat {
        &self.anti
    }

    /// Numerator stack of the antianalytic part over the common modulus.
    pub fn numerator_stack(&self) -> &PolyMat {
        &self.c
    }

    /// Monic common denominator; all zeros strictly inside the disk.
    pub fn modulus(&self) -> &Poly {
        &self.p
    }

    /// Exact kernel of the Hankel operator as a full shift-invariant
    /// subspace: the kernel of a rational symbol always contains
    /// `p H^2` for the modulus `p`, so its inner function is square.
    pub fn kernel_rational(&self) -> Result<KernelResult> {
        let m = self.cols();
        if self.c.is_zero() {
            return Ok(KernelResult {
                theta: MatrixInner::identity(m),
                defect_dim: 0,
                module_basis: PolyMat::identity(m),
                column_degrees: vec![0; m],
            });
        }
        let g = interpolation_module_basis(&self.c, &self.p)?;
        let (g_red, column_degrees) = g.column_reduce();
        let det = g_red.det();
        let split = roots::split_inner_zeros_with(&det, CirclePolicy::Reject)?;
        if !split.remainder.is_constant() || split.remainder.is_zero() {
            return Err(Error::Certificate(
                "module determinant kept zeros away from the modulus".into(),
            ));
        }
        let mut rest = g_red.clone();
        let mut chain = Vec::new();
        for (alpha, mult) in &split.inside {
            for _ in 0..*mult {
                let (e, next) = inner::left_extract_poly(&rest, alpha)?;
                rest = next;
                chain.push(e);
            }
        }
        // Each extraction at alpha trades the determinant zero at alpha for
        // a factor vanishing at the reflected point 1/conj(alpha), so the
        // core is outer exactly when its determinant has no zeros left in
        // the closed disk.
        let rest_det = rest.det();
        if rest_det.is_zero() {
            return Err(Error::Certificate("module basis core lost rank".into()));
        }
        let rest_split = roots::split_inner_zeros_with(&rest_det, CirclePolicy::Reject)?;
        if !rest_split.inside.is_empty() {
            return Err(Error::Certificate(
                "outer core of the module basis kept interior zeros".into(),
            ));
        }
        let theta_mat = chain
            .iter()
            .fold(RatMat::identity(m), |acc, e| acc.mul(&e.matrix()));
        let theta = MatrixInner::from_plain(theta_mat)?;
        let defect_dim = chain.len();
        if Some(defect_dim) != det.degree() {
            return Err(Error::Certificate(
                "chain length disagrees with the determinant degree".into(),
            ));
        }
        match self.anti.mul(theta.mat()).analytic_in_disk()? {
            true => {}
            false => {
                return Err(Error::Certificate(
                    "kernel columns fail to annihilate the Hankel operator".into(),
                ))
            }
        }
        Ok(KernelResult { theta, defect_dim, module_basis: g_red, column_degrees })
    }

    /// Is the column `f` (rational, analytic in the closed disk) mapped to
    /// zero by the Hankel operator? Decided exactly: `f` must be analytic
    /// and `(c/p) f` must stay analytic.
    pub fn kernel_membership(&self, f: &RatMat) -> Result<bool> {
        if f.rows() != self.cols() || f.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "membership vector is {}x{}, need {}x1",
                f.rows(),
                f.cols(),
                self.cols()
            )));
        }
        let analytic = |m: &RatMat| -> Result<bool> {
            match m.analytic_in_disk() {
                Ok(b) => Ok(b),
                Err(Error::PoleOnCircle(_)) => Ok(false),
                Err(e) => Err(e),
            }
        };
        if !analytic(f)? {
            return Ok(false);
        }
        analytic(&self.anti.mul(f))
    }

    /// Kernel dimension of the finite section: domain restricted to
    /// polynomial vectors of entry degree at most `d`, range truncated far
    /// enough (`deg p + d` negative coefficients) to capture every
    /// principal part. Exact Fourier coefficients feed a numeric rank.
    pub fn finite_section_kernel_dim(&self, d: usize, tol: f64) -> Result<usize> {
        let n = self.rows();
        let m = self.cols();
        let depth = self.p.degree().unwrap_or(0) + d + 1;
        let mut coeffs = vec![vec![Vec::with_capacity(depth + d); m]; n];
        for i in 0..n {
            for j in 0..m {
                for t in 1..=(depth + d) {
                    coeffs[i][j].push(self.anti.at(i, j).fourier(-(t as i64))?.to_c64());
                }
            }
        }
        let mut rows_mat = Vec::with_capacity(n * depth);
        for i in 0..n {
            for l in 1..=depth {
                let mut row = Vec::with_capacity(m * (d + 1));
                for j in 0..m {
                    for k in 0..=d {
                        let (re, im) = coeffs[i][j][l + k - 1];
                        row.push(C64::new(re, im));
                    }
                }
                rows_mat.push(row);
            }
        }
        let svals = numeric::singular_values(&rows_mat);
        let rank = numeric::numeric_rank(&svals, tol);
        Ok(m * (d + 1) - rank)
    }

    /// Structural cross-check on independently computed Fourier
    /// coefficients: the section matrix must depend on `l + k` only, and
    /// the negative coefficients of the full symbol must agree with those
    /// of the stored antianalytic part.
    pub fn intertwine_check(&self, depth: usize) -> Result<bool> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for t in 1..=(depth as i64) {
                    if self.phi.at(i, j).fourier(-t)? != self.anti.at(i, j).fourier(-t)? {
                        return Ok(false);
                    }
                }
                for l in 1..=(depth as i64) {
                    for k in 0..(depth as i64) {
                        let shifted_domain = self.phi.at(i, j).fourier(-(l + 1) - k)?;
                        let shifted_range = self.phi.at(i, j).fourier(-l - (k + 1))?;
                        if shifted_domain != shifted_range {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Kernel of a block Hankel operator with rational symbol, as the square
/// inner function of a full-range shift-invariant subspace.
#[derive(Debug, Clone)]
pub struct KernelResult {
    /// Square inner function with `ker = theta H^2`.
    pub theta: MatrixInner,
    /// Codimension of the kernel: number of Blaschke-Potapov factors,
    /// equal to the determinant degree of the module basis.
    pub defect_dim: usize,
    /// Column-reduced polynomial basis of the polynomial part of the
    /// kernel.
    pub module_basis: PolyMat,
    /// Column degrees of `module_basis`; minimal by column reduction.
    pub column_degrees: Vec<usize>,
}

impl KernelResult {
    /// Dimension of the kernel's polynomial slice of entry degree at most
    /// `d`, read off the minimal column degrees.
    pub fn polynomial_kernel_dim(&self, d: usize) -> usize {
        self.column_degrees
            .iter()
            .map(|&delta| (d + 1).saturating_sub(delta))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::equal_up_to_right_unitary;
    use crate::ratfun::RatFun;
    use crate::scalar::Scalar;

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

    fn conj_shift_pair() -> HankelSymbol {
        // [conj(z), conj(z)] as a boundary function: [1/z, 1/z]
        HankelSymbol::new(rm(&[&[rf(&[1], &[0, 1]), rf(&[1], &[0, 1])]])).unwrap()
    }

    #[test]
    fn split_caches_reference_values() {
        let sym = HankelSymbol::new(rm(&[&[rf(&[1, 0, 1], &[0, -3, 1])]])).unwrap();
        assert_eq!(*sym.modulus(), p(&[0, 1]));
        assert_eq!(*sym.numerator_stack().at(0, 0), Poly::new(vec![Scalar::from_ratio(-1, 3)]));
        let resum = sym.analytic_part().add(sym.antianalytic_part());
        assert_eq!(resum, *sym.symbol());
        assert!(sym.intertwine_check(4).unwrap());
    }

    #[test]
    fn construction_rejects_bad_poles() {
        let circle = rm(&[&[rf(&[1], &[-1, 1])]]);
        assert!(matches!(HankelSymbol::new(circle), Err(Error::PoleOnCircle(_))));
        let irrational = rm(&[&[rf(&[1], &[-1, 0, 2])]]);
        assert!(matches!(HankelSymbol::new(irrational), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn analytic_symbol_has_trivial_operator() {
        let sym = HankelSymbol::new(rm(&[
            &[rf(&[0], &[1]), rf(&[1], &[1])],
            &[rf(&[0, 1], &[1]), rf(&[0, 0, 1], &[1])],
        ]))
        .unwrap();
        let k = sym.kernel_rational().unwrap();
        assert_eq!(k.defect_dim, 0);
        assert_eq!(*k.theta.mat(), RatMat::identity(2));
        assert_eq!(sym.finite_section_kernel_dim(3, 1e-8).unwrap(), 8);
    }

    #[test]
    fn conjugate_shift_pair_kernel() {
        let sym = conj_shift_pair();
        let k = sym.kernel_rational().unwrap();
        assert_eq!(k.defect_dim, 1);
        let mut degs = k.column_degrees.clone();
        degs.sort();
        assert_eq!(degs, vec![0, 1]);
        let closed_form = MatrixInner::from_plain(rm(&[
            &[rf(&[-1, 1], &[2]), rf(&[1, 1], &[2])],
            &[rf(&[1, 1], &[2]), rf(&[-1, 1], &[2])],
        ]))
        .unwrap();
        assert!(equal_up_to_right_unitary(&k.theta, &closed_form).unwrap());
    }

    #[test]
    fn scalar_power_kernel_is_the_power() {
        let sym = HankelSymbol::new(rm(&[&[rf(&[1], &[0, 0, 1])]])).unwrap();
        let k = sym.kernel_rational().unwrap();
        assert_eq!(k.defect_dim, 2);
        assert_eq!(*k.theta.mat(), rm(&[&[rf(&[0, 0, 1], &[1])]]));
        assert_eq!(k.column_degrees, vec![2]);
    }

    #[test]
    fn membership_agrees_with_the_inner_function() {
        let sym = conj_shift_pair();
        let theta = sym.kernel_rational().unwrap().theta;
        let cases = [
            (rm(&[&[rf(&[1], &[1])], &[rf(&[-1], &[1])]]), true),
            (rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0], &[1])]]), true),
            (rm(&[&[rf(&[1], &[1])], &[rf(&[0], &[1])]]), false),
            (rm(&[&[rf(&[1], &[0, 1])], &[rf(&[0], &[1])]]), false),
        ];
        for (f, expect) in cases {
            assert_eq!(sym.kernel_membership(&f).unwrap(), expect);
            assert_eq!(theta.contains(&f).unwrap(), expect);
        }
    }

    #[test]
    fn finite_sections_match_the_degree_count() {
        let sym = conj_shift_pair();
        let k = sym.kernel_rational().unwrap();
        for d in 0..=4 {
            assert_eq!(k.polynomial_kernel_dim(d), 2 * d + 1);
            assert_eq!(sym.finite_section_kernel_dim(d, 1e-8).unwrap(), 2 * d + 1);
        }
        let sym = HankelSymbol::new(rm(&[&[rf(&[1], &[0, 0, 1])]])).unwrap();
        let k = sym.kernel_rational().unwrap();
        for d in 0..=4 {
            assert_eq!(
                sym.finite_section_kernel_dim(d, 1e-8).unwrap(),
                k.polynomial_kernel_dim(d)
            );
        }
    }

    #[test]
    fn mixed_pole_symbol_full_pipeline() {
        // analytic content plus two interior poles of different orders
        let sym = HankelSymbol::new(rm(&[
            &[rf(&[1, 0, 1], &[0, -3, 1]), rf(&[1], &[0, 0, 1])],
            &[rf(&[0, 1], &[1]), rf(&[1], &[-1, 2])],
        ]))
        .unwrap();
        assert_eq!(sym.modulus(), &(&p(&[0, 0, 1]) * &p(&[-1, 2]).monic()));
        let k = sym.kernel_rational().unwrap();
        assert_eq!(Some(k.defect_dim), k.module_basis.det().degree());
        assert!(sym.intertwine_check(3).unwrap());
        for d in 0..=3 {
            assert_eq!(
                sym.finite_section_kernel_dim(d, 1e-8).unwrap(),
                k.polynomial_kernel_dim(d)
            );
        }
    }
}
