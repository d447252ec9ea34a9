//! Exact localization of polynomial zeros relative to the unit circle.
//!
//! Numeric roots are only candidates. A zero counts as found when an exact
//! rational (or Gaussian rational) value verifies `p(alpha) == 0` by exact
//! arithmetic; multiplicity comes from iterated exact division. A candidate
//! inside the disk that fails every snap is reported as not representable
//! rather than approximated, and anything unresolvably close to the circle
//! is rejected as degenerate rather than silently classified.

use crate::numeric::{poly_roots_numeric, C64};
use crate::poly::Poly;
use crate::scalar::{Quad, Scalar};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Numeric no-go band around the unit circle: a root this close that does
/// not verify exactly is a degenerate input.
pub const CIRCLE_MARGIN: f64 = 1e-9;

/// Loose gate for snap candidates; exact verification does the real work.
const SNAP_GATE: f64 = 1e-4;
const MAX_DENOMINATOR: u64 = 1_000_000;

/// Continued-fraction convergents of `x` with small denominators, nearest
/// first. Pure candidate generation; callers must verify exactly.
pub fn rational_candidates(x: f64) -> Vec<BigRational> {
    if !x.is_finite() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut push = |r: BigRational| {
        if (x - crate::scalar::ratio_to_f64(&r)).abs() < SNAP_GATE && !out.contains(&r) {
            out.push(r);
        }
    };
    let rounded = x.round();
    if rounded.abs() < 9.0e15 {
        push(BigRational::from_integer(BigInt::from(rounded as i64)));
    }
    // Convergents h_k / q_k of the continued fraction of x.
    let (mut h0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut h1, mut q1) = (BigInt::from(x.floor() as i64), BigInt::one());
    let mut frac = x - x.floor();
    push(BigRational::new(h1.clone(), q1.clone()));
    for _ in 0..40 {
        if frac.abs() < 1e-13 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if a >= 9.0e15 {
            break;
        }
        frac = inv - a;
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let q2 = &ai * &q1 + &q0;
        if q2 > BigInt::from(MAX_DENOMINATOR) {
            break;
        }
        push(BigRational::new(h2.clone(), q2.clone()));
        h0 = h1;
        q0 = q1;
        h1 = h2;
        q1 = q2;
    }
    out.sort_by(|a, b| {
        let da = (x - crate::scalar::ratio_to_f64(a)).abs();
        let db = (x - crate::scalar::ratio_to_f64(b)).abs();
        da.partial_cmp(&db).unwrap()
    });
    out
}

/// Gaussian-rational snap candidates for a complex point, best first.
pub fn gaussian_candidates(z: C64) -> Vec<Scalar> {
    let res = rational_candidates(z.re);
    let ims = if z.im.abs() < 1e-12 {
        vec![BigRational::zero()]
    } else {
        rational_candidates(z.im)
    };
    let mut out = Vec::new();
    for (i, re) in res.iter().enumerate().take(4) {
        for (j, im) in ims.iter().enumerate().take(4) {
            if i + j <= 4 {
                out.push(Scalar::from_rationals(re.clone(), im.clone()));
            }
        }
    }
    out
}

/// First snap candidate that verifies `p(alpha) == 0` exactly.
pub fn verified_zero_near(p: &Poly, z: C64) -> Option<Scalar> {
    gaussian_candidates(z)
        .into_iter()
        .find(|alpha| p.eval(alpha).is_zero())
}

/// `|s| == 1` as an exact statement.
pub fn unit_modulus(s: &Scalar) -> bool {
    s.norm_sqr() == Quad::one()
}

/// Zeros of a polynomial split at the unit circle.
#[derive(Clone, Debug)]
pub struct DiskZeros {
    /// Exact zeros strictly inside the disk, with multiplicities.
    pub inside: Vec<(Scalar, usize)>,
    /// Deflated factor carrying every zero outside the closed disk.
    pub remainder: Poly,
}

/// What to do with a zero that verifies exactly on the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CirclePolicy {
    /// Reject the input; right for denominators, where a circle zero is a
    /// boundary pole.
    Reject,
    /// Leave the zero in the remainder; right for numerators, where a
    /// boundary zero belongs to the outer part.
    ToRemainder,
}

/// Extracts all zeros strictly inside the unit disk as exact Gaussian
/// rationals. A zero within the numeric circle margin that fails exact
/// classification is `CircleDegenerate`; an exact circle zero follows
/// `policy`; an inside zero that fails every exact snap is
/// `NotRepresentable`.
pub fn split_inner_zeros_with(p: &Poly, policy: CirclePolicy) -> Result<DiskZeros> {
    if p.is_zero() {
        return Err(Error::ZeroInput("cannot localize zeros of 0".into()));
    }
    let mut inside: Vec<(Scalar, usize)> = Vec::new();
    let val = p.valuation().unwrap();
    let mut rem = p.shift_down(val);
    if val > 0 {
        inside.push((Scalar::zero(), val));
    }
    if rem.is_constant() {
        return Ok(DiskZeros { inside, remainder: rem });
    }
    let coeffs: Vec<C64> = rem.coeffs().iter().map(C64::from_scalar).collect();
    let clusters = poly_roots_numeric(&coeffs);
    for (z, _count) in clusters {
        let dist = z.abs();
        if (dist - 1.0).abs() < CIRCLE_MARGIN {
            match verified_zero_near(&rem, z) {
                Some(alpha) if unit_modulus(&alpha) => match policy {
                    CirclePolicy::Reject => {
                        return Err(Error::CircleDegenerate(format!(
                            "zero exactly on the unit circle at {alpha}"
                        )));
                    }
                    CirclePolicy::ToRemainder => {}
                },
                Some(alpha) => {
                    // Exact but hugging the circle; classify exactly.
                    let inside_disk = (Quad::one() - alpha.norm_sqr()).is_positive();
                    if inside_disk {
                        let (k, deflated) = rem.root_multiplicity(&alpha);
                        inside.push((alpha, k));
                        rem = deflated;
                    }
                }
                None => {
                    return Err(Error::CircleDegenerate(format!(
                        "zero within {CIRCLE_MARGIN:e} of the unit circle near \
                         {:+.12}{:+.12}i, not exactly classifiable",
                        z.re, z.im
                    )));
                }
            }
        } else if dist < 1.0 {
            match verified_zero_near(&rem, z) {
                Some(alpha) => {
                    let (k, deflated) = rem.root_multiplicity(&alpha);
                    debug_assert!(k >= 1);
                    inside.push((alpha, k));
                    rem = deflated;
                }
                None => {
                    return Err(Error::NotRepresentable(format!(
                        "zero inside the disk near {:+.12}{:+.12}i is not Gaussian rational",
                        z.re, z.im
                    )));
                }
            }
        }
        // dist > 1: stays in the remainder.
    }
    Ok(DiskZeros { inside, remainder: rem })
}

/// [`split_inner_zeros_with`] under the strict circle policy.
pub fn split_inner_zeros(p: &Poly) -> Result<DiskZeros> {
    split_inner_zeros_with(p, CirclePolicy::Reject)
}

/// Extracts every Gaussian-rational zero that verifies exactly, anywhere in
/// the plane; unverified zeros stay in the remainder without error.
pub fn verified_rational_zeros(p: &Poly) -> (Vec<(Scalar, usize)>, Poly) {
    let mut found: Vec<(Scalar, usize)> = Vec::new();
    if p.is_zero() {
        return (found, p.clone());
    }
    let val = p.valuation().unwrap();
    let mut rem = p.shift_down(val);
    if val > 0 {
        found.push((Scalar::zero(), val));
    }
    if rem.is_constant() {
        return (found, rem);
    }
    let coeffs: Vec<C64> = rem.coeffs().iter().map(C64::from_scalar).collect();
    for (z, _count) in poly_roots_numeric(&coeffs) {
        if let Some(alpha) = verified_zero_near(&rem, z) {
            let (k, deflated) = rem.root_multiplicity(&alpha);
            if k > 0 {
                found.push((alpha, k));
                rem = deflated;
            }
        }
    }
    (found, rem)
}

/// Certifies that `p` has no zeros on the unit circle.
///
/// Fast path: `gcd(p, p.reflect())` constant is an exact certificate, since
/// any circle zero of `p` is also a zero of the reflection. Otherwise each
/// numeric root must clear the circle margin or verify exactly off-circle.
pub fn certify_no_circle_zeros(p: &Poly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroInput("zero polynomial vanishes on the circle".into()));
    }
    if p.is_constant() {
        return Ok(());
    }
    let g = p.gcd(&p.reflect());
    if g.is_constant() {
        return Ok(());
    }
    let coeffs: Vec<C64> = p.coeffs().iter().map(C64::from_scalar).collect();
    for (z, _count) in poly_roots_numeric(&coeffs) {
        if (z.abs() - 1.0).abs() < CIRCLE_MARGIN {
            match verified_zero_near(p, z) {
                Some(alpha) if !unit_modulus(&alpha) => {}
                Some(alpha) => {
                    return Err(Error::CircleDegenerate(format!(
                        "zero exactly on the unit circle at {alpha}"
                    )));
                }
                None => {
                    return Err(Error::CircleDegenerate(format!(
                        "zero within {CIRCLE_MARGIN:e} of the unit circle near \
                         {:+.12}{:+.12}i",
                        z.re, z.im
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Exact real roots of `z^2 + b z + c` with rational `b, c`, as elements of
/// a real quadratic extension. `None` when the discriminant is negative.
pub fn real_quad_roots(b: &BigRational, c: &BigRational) -> Option<(Quad, Quad)> {
    let four: BigRational = BigRational::from_integer(BigInt::from(4));
    let disc = b * b - four * c;
    if disc.is_negative() {
        return None;
    }
    let root = Quad::sqrt_of_rational(&disc)?;
    let half = Quad::new(BigRational::new(BigInt::one(), BigInt::from(2)));
    let minus_b = Quad::new(-b.clone());
    let plus = (minus_b.clone() + root.clone()) * half.clone();
    let minus = (minus_b - root) * half;
    Some((plus, minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn candidates_recover_noisy_rationals() {
        let c = rational_candidates(0.333333341);
        assert_eq!(c[0], q(1, 3));
        let c = rational_candidates(0.4999998874);
        assert_eq!(c[0], q(1, 2));
        let c = rational_candidates(-3.0000000001);
        assert_eq!(c[0], q(-3, 1));
    }

    #[test]
    fn split_classifies_mixed_zeros() {
        // z^2 (z - 1/2) (z - 3)
        let p = (&Poly::linear(&Scalar::from_ratio(1, 2)) * &Poly::linear(&Scalar::from_int(3)))
            .shift_up(2);
        let split = split_inner_zeros(&p).unwrap();
        assert!(split.inside.contains(&(Scalar::zero(), 2)));
        assert!(split.inside.contains(&(Scalar::from_ratio(1, 2), 1)));
        assert_eq!(split.remainder.degree(), Some(1));
        assert!(split.remainder.eval(&Scalar::from_int(3)).is_zero());
    }

    #[test]
    fn circle_zero_is_degenerate() {
        let p = Poly::linear(&Scalar::from_int(1)); // z - 1
        match split_inner_zeros(&p) {
            Err(Error::CircleDegenerate(_)) => {}
            other => panic!("expected CircleDegenerate, got {other:?}"),
        }
        // complex circle zero 3/5 + 4/5 i
        let alpha = Scalar::from_parts(3, 4, 5);
        match split_inner_zeros(&Poly::linear(&alpha)) {
            Err(Error::CircleDegenerate(msg)) => assert!(msg.contains("exactly")),
            other => panic!("expected CircleDegenerate, got {other:?}"),
        }
    }

    #[test]
    fn irrational_inside_zero_is_not_representable() {
        // z^2 - 3z + 1 has zeros 2 +- sqrt(3); one is inside the disk.
        let p = Poly::from_ints(&[1, -3, 1]);
        match split_inner_zeros(&p) {
            Err(Error::NotRepresentable(_)) => {}
            other => panic!("expected NotRepresentable, got {other:?}"),
        }
    }

    #[test]
    fn no_circle_zero_certificate() {
        let p = Poly::from_ints(&[1, -3, 1]); // zeros 2 +- sqrt(3), off circle
        certify_no_circle_zeros(&p).unwrap();
        let on = Poly::from_ints(&[1, 0, 1]); // zeros +-i
        assert!(certify_no_circle_zeros(&on).is_err());
    }

    #[test]
    fn quad_roots_of_reciprocal_pair() {
        // z^2 - 4z + 1: roots 2 +- sqrt(3)
        let (plus, minus) = real_quad_roots(&q(-4, 1), &q(1, 1)).unwrap();
        assert_eq!(plus.radicand(), 3);
        let prod = plus.clone() * minus.clone();
        assert_eq!(prod, Quad::one());
        assert!((plus.to_f64() - 3.732050807568877).abs() < 1e-12);
        assert!(real_quad_roots(&q(0, 1), &q(1, 1)).is_none());
    }

    #[test]
    fn verified_zero_extraction_leaves_irrationals() {
        // (z - 2/3)(z^2 - 3z + 1)
        let p = &Poly::linear(&Scalar::from_ratio(2, 3)) * &Poly::from_ints(&[1, -3, 1]);
        let (found, rem) = verified_rational_zeros(&p);
        assert_eq!(found, vec![(Scalar::from_ratio(2, 3), 1)]);
        assert_eq!(rem.monic(), Poly::from_ints(&[1, -3, 1]));
    }
}
