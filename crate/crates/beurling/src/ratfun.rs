//! Rational functions of one variable over the exact scalar field.
//!
//! A [`RatFun`] is kept reduced (numerator and denominator coprime) with a
//! monic denominator. The operations that matter for Hankel kernels live
//! here: the circle adjoint `f*(z) = conj(f(1/conj(z)))`, the exact split of
//! a function into its analytic and strictly antianalytic parts relative to
//! the unit circle, and exact Fourier (Laurent) coefficients on the circle.

use crate::poly::Poly;
use crate::roots::{split_inner_zeros, CIRCLE_MARGIN};
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Reduces to lowest terms with a monic denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFun { num: Poly::zero(), den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lead_inv = den.leading().unwrap().inverse();
        RatFun { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFun::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn z() -> Self {
        RatFun::from_poly(Poly::z())
    }

    /// `1/z`, the conjugate coordinate on the circle.
    pub fn z_bar() -> Self {
        RatFun { num: Poly::one(), den: Poly::z() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_constant() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn eval(&self, z: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(z);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(z) * d.inverse())
        }
    }

    pub fn eval_c64(&self, z: (f64, f64)) -> (f64, f64) {
        let n = self.num.eval_c64(z);
        let d = self.den.eval_c64(z);
        let norm = d.0 * d.0 + d.1 * d.1;
        ((n.0 * d.0 + n.1 * d.1) / norm, (n.1 * d.0 - n.0 * d.1) / norm)
    }

    pub fn inverse(&self) -> RatFun {
        assert!(!self.is_zero(), "inverse of the zero function");
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Scalar) -> RatFun {
        RatFun::new(self.num.scale(c), self.den.clone())
    }

    /// Circle adjoint `f*(z) = conj(f(1/conj(z)))`; on `|z| = 1` this is the
    /// pointwise complex conjugate of `f`.
    pub fn adjoint(&self) -> RatFun {
        if self.is_zero() {
            return RatFun::zero();
        }
        let dp = self.num.degree().unwrap();
        let dq = self.den.degree().unwrap();
        let rn = self.num.reflect();
        let rd = self.den.reflect();
        if dq >= dp {
            RatFun::new(rn.shift_up(dq - dp), rd)
        } else {
            RatFun::new(rn, rd.shift_up(dp - dq))
        }
    }

    /// True when the function, in lowest terms, has no pole in the closed
    /// unit disk. A pole exactly on the circle is `PoleOnCircle`; a zero of
    /// the denominator not classifiable within the numeric margin is
    /// `CircleDegenerate`.
    pub fn analytic_in_disk(&self) -> Result<bool> {
        if self.den.is_constant() {
            return Ok(true);
        }
        let coeffs: Vec<crate::numeric::C64> =
            self.den.coeffs().iter().map(crate::numeric::C64::from_scalar).collect();
        for (z, _m) in crate::numeric::poly_roots_numeric(&coeffs) {
            let dist = z.abs();
            if (dist - 1.0).abs() < CIRCLE_MARGIN {
                match crate::roots::verified_zero_near(&self.den, z) {
                    Some(alpha) if crate::roots::unit_modulus(&alpha) => {
                        return Err(Error::PoleOnCircle(format!("{alpha}")));
                    }
                    Some(alpha) => {
                        let inside =
                            (crate::scalar::Quad::one() - alpha.norm_sqr()).is_positive();
                        if inside {
                            return Ok(false);
                        }
                    }
                    None => {
                        return Err(Error::CircleDegenerate(format!(
                            "denominator zero within {CIRCLE_MARGIN:e} of the circle near \
                             {:+.12}{:+.12}i",
                            z.re, z.im
                        )));
                    }
                }
            } else if dist < 1.0 {
                // The pole's exact value is irrelevant; its location decides.
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Splits `f = analytic + antianalytic` exactly: the analytic part keeps
    /// the polynomial part and all poles outside the closed disk, the
    /// antianalytic part is strictly proper with all poles strictly inside
    /// (so on the circle it is a sum of strictly negative powers of `z`).
    /// Poles inside the disk must be exact Gaussian rationals.
    pub fn pole_split(&self) -> Result<PoleSplit> {
        if self.is_zero() {
            return Ok(PoleSplit { analytic: RatFun::zero(), antianalytic: RatFun::zero() });
        }
        let zeros = split_inner_zeros(&self.den).map_err(|e| match e {
            Error::CircleDegenerate(msg) if msg.contains("exactly") => {
                Error::PoleOnCircle(msg)
            }
            other => other,
        })?;
        let mut d_in = Poly::one();
        for (alpha, k) in &zeros.inside {
            d_in = &d_in * &Poly::linear(alpha).pow(*k as u32);
        }
        if d_in.is_constant() {
            return Ok(PoleSplit { analytic: self.clone(), antianalytic: RatFun::zero() });
        }
        let d_out = zeros.remainder.clone();
        // 1 = u*d_out + v*d_in, so f = num*u/d_in + num*v/d_out.
        let (g, u, v) = d_out.ext_gcd(&d_in);
        debug_assert!(g.is_constant() && !g.is_zero());
        let ginv = g.coeff(0).inverse();
        let raw_in = self.num.scale(&ginv);
        // Reduce mod d_in: the quotient is analytic (polynomial), only the
        // strictly proper residue stays antianalytic.
        let (_, a) = (&raw_in * &u).divmod(&d_in);
        let anti = RatFun::new(a, d_in);
        let analytic = self - &anti;
        debug_assert!(analytic.analytic_in_disk().unwrap_or(false));
        let _ = v;
        Ok(PoleSplit { analytic, antianalytic: anti })
    }

    /// Exact Fourier coefficient `c_k` of the Laurent expansion on the unit
    /// circle (equivalently of the boundary function).
    pub fn fourier(&self, k: i64) -> Result<Scalar> {
        let split = self.pole_split()?;
        if k >= 0 {
            let f = &split.analytic;
            if f.is_zero() {
                return Ok(Scalar::zero());
            }
            Ok(taylor_at_zero(f.num(), f.den(), k as usize + 1)
                .pop()
                .unwrap())
        } else {
            let f = &split.antianalytic;
            if f.is_zero() {
                return Ok(Scalar::zero());
            }
            // Substitute w = 1/z: coefficients of w^{|k|} of a function
            // analytic at w = 0. Reversal here is plain, not conjugated.
            let dn = f.num().degree().unwrap();
            let dd = f.den().degree().unwrap();
            let rev = |p: &Poly| Poly::new(p.coeffs().iter().rev().cloned().collect());
            let num_w = rev(f.num()).shift_up(dd - dn); // dd > dn: strictly proper
            let den_w = rev(f.den());
            Ok(taylor_at_zero(&num_w, &den_w, (-k) as usize + 1).pop().unwrap())
        }
    }

    /// The analytic projection `P+ f` (Riesz projection of the boundary
    /// function), as a rational function.
    pub fn riesz_analytic(&self) -> Result<RatFun> {
        Ok(self.pole_split()?.analytic)
    }

    /// The strictly antianalytic projection `(I - P+) f`.
    pub fn riesz_antianalytic(&self) -> Result<RatFun> {
        Ok(self.pole_split()?.antianalytic)
    }
}

/// Analytic plus strictly antianalytic decomposition of a rational function.
#[derive(Clone, Debug)]
pub struct PoleSplit {
    pub analytic: RatFun,
    pub antianalytic: RatFun,
}

/// First `n` Taylor coefficients of `num/den` at the origin; `den(0)` must
/// be nonzero.
pub fn taylor_at_zero(num: &Poly, den: &Poly, n: usize) -> Vec<Scalar> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "Taylor expansion at a pole");
    let d0_inv = d0.inverse();
    let mut out: Vec<Scalar> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for i in 1..=k {
            acc = acc - den.coeff(i) * out[k - i].clone();
        }
        out.push(acc * d0_inv.clone());
    }
    out
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        RatFun::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        // operands are reduced, so only cross pairs share factors
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1).expect("gcd divides")
            * &rhs.num.div_exact(&g2).expect("gcd divides");
        let den = &self.den.div_exact(&g2).expect("gcd divides")
            * &rhs.den.div_exact(&g1).expect("gcd divides");
        RatFun::new(num, den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        assert!(!rhs.is_zero(), "division by the zero function");
        RatFun::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Sub for RatFun {
    type Output = RatFun;
    fn sub(self, rhs: RatFun) -> RatFun {
        &self - &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl Div for RatFun {
    type Output = RatFun;
    fn div(self, rhs: RatFun) -> RatFun {
        &self / &rhs
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_of(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    #[test]
    fn reduction_to_lowest_terms() {
        // (z^2 - 1)/(z - 1) = z + 1
        let f = f_of(&[-1, 0, 1], &[-1, 1]);
        assert_eq!(f.as_poly().unwrap(), &Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn adjoint_conjugates_on_the_circle() {
        // exact circle point (3 + 4i)/5
        let omega = Scalar::from_parts(3, 4, 5);
        let f = RatFun::new(
            Poly::new(vec![Scalar::from_parts(1, -2, 3), Scalar::one()]),
            Poly::from_ints(&[-3, 0, 1]),
        );
        let lhs = f.adjoint().eval(&omega).unwrap();
        let rhs = f.eval(&omega).unwrap().conj();
        assert_eq!(lhs, rhs);
        assert_eq!(f.adjoint().adjoint(), f);
    }

    #[test]
    fn pole_split_of_reference_example() {
        // (z^2 + 1)/(z(z - 3)): residue at 0 is -1/3.
        let f = f_of(&[1, 0, 1], &[0, -3, 1]);
        let split = f.pole_split().unwrap();
        let expected_anti = RatFun::new(
            Poly::constant(Scalar::from_ratio(-1, 3)),
            Poly::z(),
        );
        assert_eq!(split.antianalytic, expected_anti);
        assert_eq!(&split.analytic + &split.antianalytic, f);
        assert!(split.analytic.analytic_in_disk().unwrap());
    }

    #[test]
    fn fourier_coefficients_frozen_values() {
        let f = f_of(&[1, 0, 1], &[0, -3, 1]);
        assert_eq!(f.fourier(-1).unwrap(), Scalar::from_ratio(-1, 3));
        assert_eq!(f.fourier(-2).unwrap(), Scalar::zero());
        assert_eq!(f.fourier(0).unwrap(), Scalar::from_ratio(-1, 9));
        assert_eq!(f.fourier(1).unwrap(), Scalar::from_ratio(-10, 27));
    }

    #[test]
    fn fourier_matches_circle_samples() {
        // Cross-check: partial Laurent sums approach the function on the
        // circle; the tail decays like 3^{-k} since the outer pole sits at 3.
        let f = f_of(&[1, 0, 1], &[0, -3, 1]);
        let n = 24i64;
        for point in crate::numeric::circle_samples(8) {
            let z = (point.re, point.im);
            let direct = f.eval_c64(z);
            let mut sum = (0.0, 0.0);
            for k in -2..=n {
                let c = f.fourier(k).unwrap().to_c64();
                // z^k numerically
                let mut zp = (1.0, 0.0);
                let (zr, zi) = z;
                for _ in 0..k.unsigned_abs() {
                    zp = (zp.0 * zr - zp.1 * zi, zp.0 * zi + zp.1 * zr);
                }
                if k < 0 {
                    let nrm = zp.0 * zp.0 + zp.1 * zp.1;
                    zp = (zp.0 / nrm, -zp.1 / nrm);
                }
                sum = (sum.0 + c.0 * zp.0 - c.1 * zp.1, sum.1 + c.0 * zp.1 + c.1 * zp.0);
            }
            let err = ((direct.0 - sum.0).powi(2) + (direct.1 - sum.1).powi(2)).sqrt();
            assert!(err < 1e-9, "Laurent tail too large: {err}");
        }
    }

    #[test]
    fn pole_on_circle_is_rejected() {
        let f = f_of(&[1], &[-1, 1]); // 1/(z-1)
        match f.pole_split() {
            Err(Error::PoleOnCircle(_)) => {}
            other => panic!("expected PoleOnCircle, got {other:?}"),
        }
    }

    #[test]
    fn analytic_detection() {
        assert!(f_of(&[1], &[-3, 1]).analytic_in_disk().unwrap()); // 1/(z-3)
        assert!(!f_of(&[1], &[-1, 2]).analytic_in_disk().unwrap()); // 1/(2z-1)
        assert!(f_of(&[1, 2, 3], &[1]).analytic_in_disk().unwrap());
        // irrational inside pole: location suffices, no snap required
        let den = Poly::from_ints(&[1, -3, 1]); // zeros 2 +- sqrt(3)
        assert!(!RatFun::new(Poly::one(), den).analytic_in_disk().unwrap());
    }

    #[test]
    fn taylor_recurrence() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let c = taylor_at_zero(&Poly::one(), &Poly::from_ints(&[1, -1]), 5);
        assert!(c.iter().all(Scalar::is_one));
    }
}
