//! Finite Blaschke products, the inner rational functions of the disk.
//!
//! A finite Blaschke product is a unimodular constant times factors
//! `(alpha - z)/(1 - conj(alpha) z)` with `|alpha| < 1`. Every rational
//! function of modulus one on the circle and analytic in the disk has this
//! form, so this type is the exact carrier for scalar inner functions.
//! Divisibility, greatest common divisor, and least common multiple are
//! multiset operations on zeros.

use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::roots::{split_inner_zeros_with, unit_modulus, CirclePolicy};
use crate::scalar::{Quad, Scalar};
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct BlaschkeProduct {
    constant: Scalar,
    zeros: Vec<(Scalar, usize)>,
}

impl BlaschkeProduct {
    pub fn one() -> Self {
        BlaschkeProduct { constant: Scalar::one(), zeros: Vec::new() }
    }

    /// A unimodular constant, verified exactly.
    pub fn unimodular(c: Scalar) -> Result<Self> {
        if !unit_modulus(&c) {
            return Err(Error::NotInner(format!("constant {c} has |c| != 1")));
        }
        Ok(BlaschkeProduct { constant: c, zeros: Vec::new() })
    }

    /// The elementary factor with one zero at `alpha`, `|alpha| < 1` exact.
    pub fn factor(alpha: Scalar) -> Result<Self> {
        Self::with_zeros(Scalar::one(), vec![(alpha, 1)])
    }

    pub fn with_zeros(constant: Scalar, zeros: Vec<(Scalar, usize)>) -> Result<Self> {
        if !unit_modulus(&constant) {
            return Err(Error::NotInner(format!("constant {constant} has |c| != 1")));
        }
        let mut merged: Vec<(Scalar, usize)> = Vec::new();
        for (alpha, k) in zeros {
            if k == 0 {
                continue;
            }
            if !(Quad::one() - alpha.norm_sqr()).is_positive() {
                return Err(Error::NotInner(format!(
                    "zero {alpha} is not strictly inside the disk"
                )));
            }
            match merged.iter_mut().find(|(a, _)| *a == alpha) {
                Some((_, m)) => *m += k,
                None => merged.push((alpha, k)),
            }
        }
        merged.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        Ok(BlaschkeProduct { constant, zeros: merged })
    }

    pub fn constant(&self) -> &Scalar {
        &self.constant
    }

    pub fn zeros(&self) -> &[(Scalar, usize)] {
        &self.zeros
    }

    pub fn degree(&self) -> usize {
        self.zeros.iter().map(|(_, k)| k).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.zeros.is_empty() && self.constant.is_one()
    }

    pub fn multiplicity_at(&self, alpha: &Scalar) -> usize {
        self.zeros
            .iter()
            .find(|(a, _)| a == alpha)
            .map_or(0, |(_, k)| *k)
    }

    pub fn mul(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        for (alpha, k) in &other.zeros {
            match zeros.iter_mut().find(|(a, _)| a == alpha) {
                Some((_, m)) => *m += k,
                None => zeros.push((alpha.clone(), *k)),
            }
        }
        zeros.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        BlaschkeProduct {
            constant: self.constant.clone() * other.constant.clone(),
            zeros,
        }
    }

    /// Exact quotient when `other` divides `self` as an inner function.
    pub fn div_exact(&self, other: &BlaschkeProduct) -> Option<BlaschkeProduct> {
        let mut zeros: Vec<(Scalar, usize)> = Vec::new();
        for (alpha, k) in &self.zeros {
            let m = other.multiplicity_at(alpha);
            if m > *k {
                return None;
            }
            if m < *k {
                zeros.push((alpha.clone(), k - m));
            }
        }
        // every zero of other must be matched
        for (alpha, k) in &other.zeros {
            if self.multiplicity_at(alpha) < *k {
                return None;
            }
        }
        Some(BlaschkeProduct {
            constant: self.constant.clone() * other.constant.inverse(),
            zeros,
        })
    }

    pub fn divides(&self, other: &BlaschkeProduct) -> bool {
        other.div_exact(self).is_some()
    }

    /// Greatest common inner divisor: zero multisets intersect.
    pub fn gcd(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = Vec::new();
        for (alpha, k) in &self.zeros {
            let m = other.multiplicity_at(alpha).min(*k);
            if m > 0 {
                zeros.push((alpha.clone(), m));
            }
        }
        BlaschkeProduct { constant: Scalar::one(), zeros }
    }

    /// Least common inner multiple: zero multisets unite.
    pub fn lcm(&self, other: &BlaschkeProduct) -> BlaschkeProduct {
        let mut zeros = self.zeros.clone();
        for (alpha, k) in &other.zeros {
            match zeros.iter_mut().find(|(a, _)| a == alpha) {
                Some((_, m)) => *m = (*m).max(*k),
                None => zeros.push((alpha.clone(), *k)),
            }
        }
        zeros.sort_by(|(a, _), (b, _)| a.canonical_cmp(b));
        BlaschkeProduct { constant: Scalar::one(), zeros }
    }

    pub fn pow(&self, e: usize) -> BlaschkeProduct {
        let mut acc = BlaschkeProduct::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, z: &Scalar) -> Option<Scalar> {
        let mut acc = self.constant.clone();
        for (alpha, k) in &self.zeros {
            let den = Scalar::one() - alpha.conj() * z.clone();
            if den.is_zero() {
                return None;
            }
            let factor = (alpha.clone() - z.clone()) * den.inverse();
            for _ in 0..*k {
                acc = acc * factor.clone();
            }
        }
        Some(acc)
    }

    pub fn as_ratfun(&self) -> RatFun {
        let mut num = Poly::constant(self.constant.clone());
        let mut den = Poly::one();
        for (alpha, k) in &self.zeros {
            // (alpha - z) / (1 - conj(alpha) z)
            let up = Poly::new(vec![alpha.clone(), -Scalar::one()]);
            let down = Poly::new(vec![Scalar::one(), -alpha.conj()]);
            num = &num * &up.pow(*k as u32);
            den = &den * &down.pow(*k as u32);
        }
        RatFun::new(num, den)
    }

    /// Recognizes a rational function as a Blaschke product, exactly.
    pub fn from_ratfun(f: &RatFun) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroInput("zero is not inner".into()));
        }
        let zeros = split_inner_zeros_with(f.num(), CirclePolicy::ToRemainder)?;
        let bare = BlaschkeProduct::with_zeros(Scalar::one(), zeros.inside)?;
        let quotient = f / &bare.as_ratfun();
        match quotient.as_poly() {
            Some(p) if p.is_constant() => {
                let c = p.coeff(0);
                if unit_modulus(&c) {
                    Ok(BlaschkeProduct { constant: c, zeros: bare.zeros })
                } else {
                    Err(Error::NotInner(format!(
                        "after removing disk zeros the remaining constant is {c}, |c| != 1"
                    )))
                }
            }
            _ => Err(Error::NotInner(format!(
                "residual factor {quotient} is not a unimodular constant"
            ))),
        }
    }
}

impl fmt::Display for BlaschkeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        if !self.constant.is_one() || self.zeros.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (alpha, k) in &self.zeros {
            if !first {
                write!(f, " * ")?;
            }
            first = false;
            if alpha.is_zero() {
                if *k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{k}")?;
                }
                continue;
            }
            write!(f, "(({alpha} - z)/(1 - ({})z))", alpha.conj())?;
            if *k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BlaschkeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Inner-outer factorization of a scalar rational function analytic in the
/// closed disk: `f = B * outer` with `B` the Blaschke product of the zeros
/// of `f` inside the disk.
pub fn scalar_inner_outer(f: &RatFun) -> Result<(BlaschkeProduct, RatFun)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("inner-outer factorization of 0".into()));
    }
    if !f.analytic_in_disk()? {
        return Err(Error::NotAnalytic(format!("{f} has a pole in the disk")));
    }
    let zeros = split_inner_zeros_with(f.num(), CirclePolicy::ToRemainder)?;
    let inner = BlaschkeProduct::with_zeros(Scalar::one(), zeros.inside)?;
    let outer = f / &inner.as_ratfun();
    Ok((inner, outer))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_requires_disk_interior() {
        assert!(BlaschkeProduct::factor(Scalar::from_ratio(1, 2)).is_ok());
        assert!(BlaschkeProduct::factor(Scalar::from_int(1)).is_err());
        // |(3+4i)/5| = 1: boundary is rejected too
        assert!(BlaschkeProduct::factor(Scalar::from_parts(3, 4, 5)).is_err());
    }

    #[test]
    fn product_with_adjoint_is_one() {
        let b = BlaschkeProduct::with_zeros(
            Scalar::one(),
            vec![(Scalar::from_ratio(1, 2), 1), (Scalar::from_parts(1, 1, 3), 2)],
        )
        .unwrap();
        let f = b.as_ratfun();
        let product = &f * &f.adjoint();
        assert_eq!(product, RatFun::one());
    }

    #[test]
    fn ratfun_roundtrip_with_constant() {
        let c = Scalar::from_parts(3, 4, 5);
        let b = BlaschkeProduct::with_zeros(
            c,
            vec![(Scalar::zero(), 2), (Scalar::from_ratio(-1, 3), 1)],
        )
        .unwrap();
        let back = BlaschkeProduct::from_ratfun(&b.as_ratfun()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn non_inner_functions_are_rejected() {
        // outer factor
        let outer = RatFun::new(Poly::from_ints(&[3, -1]), Poly::from_ints(&[3]));
        assert!(matches!(
            BlaschkeProduct::from_ratfun(&outer),
            Err(Error::NotInner(_))
        ));
        // unimodular on the circle but with a pole inside the disk
        let swapped = RatFun::new(Poly::from_ints(&[2, -1]), Poly::from_ints(&[1, -2]));
        assert!(BlaschkeProduct::from_ratfun(&swapped).is_err());
    }

    #[test]
    fn inner_outer_splits_disk_zeros() {
        // f = (z - 1/2)(1 - z)/(1 - z/4)
        let f = RatFun::new(
            &Poly::linear(&Scalar::from_ratio(1, 2)) * &Poly::from_ints(&[1, -1]),
            Poly::new(vec![Scalar::one(), Scalar::from_ratio(-1, 4)]),
        );
        let (inner, outer) = scalar_inner_outer(&f).unwrap();
        assert_eq!(inner.zeros(), &[(Scalar::from_ratio(1, 2), 1)]);
        assert_eq!(&inner.as_ratfun() * &outer, f);
        // the outer part keeps the boundary zero at 1
        assert!(outer.num().eval(&Scalar::one()).is_zero());
    }

    #[test]
    fn gcd_lcm_are_multiset_operations() {
        let half = Scalar::from_ratio(1, 2);
        let third = Scalar::from_ratio(1, 3);
        let a = BlaschkeProduct::with_zeros(Scalar::one(), vec![(half.clone(), 2), (third.clone(), 1)])
            .unwrap();
        let b = BlaschkeProduct::with_zeros(Scalar::one(), vec![(half.clone(), 1), (Scalar::zero(), 3)])
            .unwrap();
        let g = a.gcd(&b);
        assert_eq!(g.zeros(), &[(half.clone(), 1)]);
        let l = a.lcm(&b);
        assert_eq!(l.multiplicity_at(&half), 2);
        assert_eq!(l.multiplicity_at(&third), 1);
        assert_eq!(l.multiplicity_at(&Scalar::zero()), 3);
        assert_eq!(g.mul(&l).degree(), a.degree() + b.degree());
        assert!(g.divides(&a) && g.divides(&b));
        assert!(a.divides(&l) && b.divides(&l));
    }

    #[test]
    fn unimodular_on_circle_samples() {
        let b = BlaschkeProduct::with_zeros(
            Scalar::from_parts(0, 1, 1),
            vec![(Scalar::from_ratio(1, 2), 1), (Scalar::from_parts(-1, 2, 4), 1)],
        )
        .unwrap();
        let f = b.as_ratfun();
        for p in crate::numeric::circle_samples(16) {
            let (re, im) = f.eval_c64((p.re, p.im));
            assert!((re.hypot(im) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn division_tracks_multiplicity() {
        let half = Scalar::from_ratio(1, 2);
        let a = BlaschkeProduct::with_zeros(Scalar::one(), vec![(half.clone(), 3)]).unwrap();
        let b = BlaschkeProduct::with_zeros(Scalar::one(), vec![(half.clone(), 2)]).unwrap();
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.zeros(), &[(half, 1)]);
        assert!(b.div_exact(&a).is_none());
    }
}
