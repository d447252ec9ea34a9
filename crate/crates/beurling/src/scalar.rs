//! Exact complex scalars.
//!
//! The coefficient field is `Q(i)` optionally extended by one real square
//! root: every value is `(a + b*sqrt(d)) + (c + e*sqrt(d))*i` with rational
//! `a, b, c, e` and a shared nonnegative integer radicand `d`. Purely
//! Gaussian-rational values have `d = 0` and `b = e = 0`. The extension layer
//! exists because inner factors of tall matrices can force constants such as
//! `2 - sqrt(3)` even when every input is rational; values from different
//! nontrivial radicands never meet in one computation, and arithmetic panics
//! if they would.
//!
//! All arithmetic is exact. Floating point appears only through the explicit
//! shadow accessors ([`Scalar::to_c64`], [`Quad::to_f64`]).

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Real element `a + b*sqrt(d)` of a quadratic extension of the rationals.
///
/// Invariant: `d == 0` exactly when `b == 0`; `d` is never a perfect square.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    a: BigRational,
    b: BigRational,
    d: u64,
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Strips square factors below a fixed trial bound; canonicalizes radicands.
fn squarefree_split(n: u64) -> (u64, u64) {
    let mut square = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest && p < 1000 {
        while rest % (p * p) == 0 {
            rest /= p * p;
            square *= p;
        }
        p += 1;
    }
    let r = (rest as f64).sqrt().round() as u64;
    if r > 0 && r * r == rest {
        square *= r;
        rest = 1;
    }
    (square, rest)
}

impl Quad {
    pub fn new(a: BigRational) -> Self {
        Quad { a, b: BigRational::zero(), d: 0 }
    }

    /// Builds `a + b*sqrt(d)`, normalizing `b == 0` to the rational form.
    pub fn with_root(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            return Quad::new(a);
        }
        let (sq, rest) = squarefree_split(d);
        if rest == 1 {
            return Quad::new(a + &b * big(sq as i64));
        }
        Quad { a, b: b * big(sq as i64), d: rest }
    }

    pub fn zero() -> Self {
        Quad::new(BigRational::zero())
    }

    pub fn one() -> Self {
        Quad::new(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Quad::new(big(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Quad::new(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Exact square root of a nonnegative rational, as `s*sqrt(d)`.
    pub fn sqrt_of_rational(r: &BigRational) -> Option<Quad> {
        if r.is_negative() {
            return None;
        }
        if r.is_zero() {
            return Some(Quad::zero());
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let p = r.numer().clone();
        let q = r.denom().clone();
        let pq = &p * &q;
        let n: u64 = match u64::try_from(&pq) {
            Ok(v) => v,
            Err(_) => return None,
        };
        let (sq, rest) = squarefree_split(n);
        let coeff = BigRational::new(BigInt::from(sq), q);
        if rest == 1 {
            Some(Quad::new(coeff))
        } else {
            Some(Quad { a: BigRational::zero(), b: coeff, d: rest })
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn root_part(&self) -> &BigRational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn join_radicand(&self, other: &Quad) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (d1, d2) => {
                assert!(d1 == d2, "mixed quadratic radicands sqrt({d1}) and sqrt({d2})");
                d1
            }
        }
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn galois_conj(&self) -> Quad {
        Quad { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// Sign as a real number: -1, 0, or 1. Exact.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        if self.a.is_zero() {
            return sign_of(&self.b);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb {
            return sa;
        }
        // a and b*sqrt(d) disagree; the norm a^2 - b^2 d carries the answer.
        let norm = &self.a * &self.a - &self.b * &self.b * big(self.d as i64);
        sa * sign_of(&norm)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn inverse(&self) -> Quad {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Quad::new(self.a.recip());
        }
        // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
        let norm = &self.a * &self.a - &self.b * &self.b * big(self.d as i64);
        Quad { a: &self.a / &norm, b: -(&self.b / &norm), d: self.d }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    /// Exact comparison whenever both values live in one extension field.
    pub fn cmp_real(&self, other: &Quad) -> Ordering {
        if self.d == 0 || other.d == 0 || self.d == other.d {
            let diff = self.clone() - other.clone();
            match diff.signum() {
                x if x < 0 => Ordering::Less,
                0 => Ordering::Equal,
                _ => Ordering::Greater,
            }
        } else {
            self.to_f64().partial_cmp(&other.to_f64()).unwrap_or(Ordering::Equal)
        }
    }
}

fn sign_of(r: &BigRational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    // Manual conversion keeps precision for large magnitudes.
    let (sign, digits) = n.to_u64_digits();
    let mut value = 0.0f64;
    for d in digits.iter().rev() {
        value = value * 1.8446744073709552e19 + *d as f64;
    }
    if sign == Sign::Minus {
        -value
    } else {
        value
    }
}

impl Add for Quad {
    type Output = Quad;
    fn add(self, rhs: Quad) -> Quad {
        let d = self.join_radicand(&rhs);
        Quad::with_root(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Quad {
    type Output = Quad;
    fn sub(self, rhs: Quad) -> Quad {
        let d = self.join_radicand(&rhs);
        Quad::with_root(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for Quad {
    type Output = Quad;
    fn mul(self, rhs: Quad) -> Quad {
        let d = self.join_radicand(&rhs);
        if d == 0 {
            return Quad::new(self.a * rhs.a);
        }
        let dd = big(d as i64);
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Quad::with_root(a, b, d)
    }
}

impl Div for Quad {
    type Output = Quad;
    fn div(self, rhs: Quad) -> Quad {
        self * rhs.inverse()
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b, d: self.d }
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let root = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if (-self.b.clone()).is_one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        if self.a.is_zero() {
            write!(f, "{root}")
        } else if root.starts_with('-') {
            write!(f, "{}{root}", self.a)
        } else {
            write!(f, "{}+{root}", self.a)
        }
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact complex scalar over the (optionally extended) rational field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: Quad,
    im: Quad,
}

impl Scalar {
    pub fn new(re: Quad, im: Quad) -> Self {
        // Touching both parts unifies their radicands early.
        let _ = re.join_radicand(&im);
        Scalar { re, im }
    }

    pub fn from_rationals(re: BigRational, im: BigRational) -> Self {
        Scalar { re: Quad::new(re), im: Quad::new(im) }
    }

    pub fn zero() -> Self {
        Scalar { re: Quad::zero(), im: Quad::zero() }
    }

    pub fn one() -> Self {
        Scalar { re: Quad::one(), im: Quad::zero() }
    }

    pub fn i() -> Self {
        Scalar { re: Quad::zero(), im: Quad::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar { re: Quad::from_int(n), im: Quad::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar { re: Quad::from_ratio(num, den), im: Quad::zero() }
    }

    /// `(a + b i)/den` from integers, a convenient exact literal.
    pub fn from_parts(re_num: i64, im_num: i64, den: i64) -> Self {
        Scalar {
            re: Quad::from_ratio(re_num, den),
            im: Quad::from_ratio(im_num, den),
        }
    }

    pub fn re(&self) -> &Quad {
        &self.re
    }

    pub fn im(&self) -> &Quad {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re == Quad::one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True when the value needs no quadratic extension.
    pub fn is_gaussian_rational(&self) -> bool {
        self.re.is_rational() && self.im.is_rational()
    }

    pub fn as_real_rational(&self) -> Option<&BigRational> {
        if self.im.is_zero() {
            self.re.as_rational()
        } else {
            None
        }
    }

    pub fn conj(&self) -> Scalar {
        Scalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2`, a nonnegative real element of the same field.
    pub fn norm_sqr(&self) -> Quad {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn inverse(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm_sqr().inverse();
        Scalar {
            re: self.re.clone() * n.clone(),
            im: -self.im.clone() * n,
        }
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_c64();
        re.hypot(im)
    }

    /// Canonical ordering used to sort zero lists deterministically.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        self.re
            .cmp_real(&other.re)
            .then_with(|| self.im.cmp_real(&other.im))
    }

    /// Parses `"3/4"`, `"-1/2+2/3i"`, `"i"`, `"2-i"`, ... (Gaussian rationals only).
    pub fn parse(text: &str) -> Result<Scalar, String> {
        parse_scalar(text)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        Scalar { re, im }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self * rhs.inverse()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: -self.re, im: -self.im }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.clone() * rhs.clone()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_str = {
            let one = Quad::one();
            let minus_one = -Quad::one();
            if self.im == one {
                "i".to_string()
            } else if self.im == minus_one {
                "-i".to_string()
            } else {
                let s = format!("{}", self.im);
                if s.contains('+') || (s.matches('-').count() > 0 && !s.starts_with('-')) {
                    format!("({s})i")
                } else {
                    format!("{s}i")
                }
            }
        };
        if self.re.is_zero() {
            write!(f, "{im_str}")
        } else if im_str.starts_with('-') {
            write!(f, "{}{im_str}", self.re)
        } else {
            write!(f, "{}+{im_str}", self.re)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(text: &str) -> Result<BigRational, String> {
    let t = text.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((n, d)) = t.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| format!("bad numerator {n:?}"))?;
        let den: BigInt = d.trim().parse().map_err(|_| format!("bad denominator {d:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = t.parse().map_err(|_| format!("bad integer {t:?}"))?;
        Ok(BigRational::from_integer(num))
    }
}

fn parse_scalar(text: &str) -> Result<Scalar, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty scalar".into());
    }
    // Split at the last top-level +/- that is not the leading sign and not
    // inside a fraction; formats never nest, so a simple scan serves.
    let chars: Vec<char> = compact.chars().collect();
    let mut split = None;
    for (idx, c) in chars.iter().enumerate().skip(1) {
        if *c == '+' || *c == '-' {
            split = Some(idx);
        }
    }
    let (head, tail) = match split {
        Some(idx) => (&compact[..idx], &compact[idx..]),
        None => (compact.as_str(), ""),
    };
    let imaginary = |part: &str| -> Result<BigRational, String> {
        let body = &part[..part.len() - 1];
        match body {
            "" | "+" => Ok(BigRational::one()),
            "-" => Ok(-BigRational::one()),
            _ => parse_rational(body),
        }
    };
    if tail.is_empty() {
        if head.ends_with('i') {
            Ok(Scalar::from_rationals(BigRational::zero(), imaginary(head)?))
        } else {
            Ok(Scalar::from_rationals(parse_rational(head)?, BigRational::zero()))
        }
    } else if tail.ends_with('i') {
        Ok(Scalar::from_rationals(parse_rational(head)?, imaginary(tail)?))
    } else if head.ends_with('i') {
        // unusual order "bi+a"
        Ok(Scalar::from_rationals(parse_rational(tail)?, imaginary(head)?))
    } else {
        Err(format!("cannot parse scalar {text:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn quad_arithmetic_stays_exact() {
        // (1 + sqrt(3))(2 - sqrt(3)) = 2 - sqrt3 + 2 sqrt3 - 3 = -1 + sqrt(3)
        let x = Quad::with_root(q(1, 1), q(1, 1), 3);
        let y = Quad::with_root(q(2, 1), q(-1, 1), 3);
        let p = x.clone() * y.clone();
        assert_eq!(p, Quad::with_root(q(-1, 1), q(1, 1), 3));
        let r = p / y;
        assert_eq!(r, x);
    }

    #[test]
    fn quad_sign_uses_norm_when_parts_disagree() {
        // 2 - sqrt(3) > 0, 1 - sqrt(3) < 0
        assert_eq!(Quad::with_root(q(2, 1), q(-1, 1), 3).signum(), 1);
        assert_eq!(Quad::with_root(q(1, 1), q(-1, 1), 3).signum(), -1);
        assert_eq!(Quad::with_root(q(0, 1), q(0, 1), 3).signum(), 0);
    }

    #[test]
    fn radicand_is_normalized_squarefree() {
        let x = Quad::with_root(q(0, 1), q(1, 1), 12);
        assert_eq!(x.radicand(), 3);
        assert_eq!(x.root_part(), &q(2, 1));
        let y = Quad::with_root(q(0, 1), q(1, 1), 9);
        assert!(y.is_rational());
        assert_eq!(y.as_rational().unwrap(), &q(3, 1));
    }

    #[test]
    fn sqrt_of_rational_finds_exact_roots() {
        let r = Quad::sqrt_of_rational(&q(9, 4)).unwrap();
        assert_eq!(r, Quad::new(q(3, 2)));
        let s = Quad::sqrt_of_rational(&q(3, 4)).unwrap();
        assert_eq!(s.clone() * s, Quad::new(q(3, 4)));
        assert!(Quad::sqrt_of_rational(&q(-1, 1)).is_none());
    }

    #[test]
    fn scalar_field_ops_roundtrip() {
        let z = Scalar::from_parts(1, 2, 3); // (1+2i)/3
        let w = Scalar::from_parts(-2, 5, 7);
        let prod = z.clone() * w.clone();
        assert_eq!(prod / w, z);
        let inv = z.inverse();
        assert!((z * inv).is_one());
    }

    #[test]
    fn norm_sqr_is_real_nonnegative() {
        let z = Scalar::from_parts(3, -4, 5);
        assert_eq!(z.norm_sqr(), Quad::new(q(25, 25)));
        assert_eq!(z.clone() * z.conj(), Scalar::from_rationals(q(1, 1), q(0, 1)));
    }

    #[test]
    fn parse_display_roundtrip() {
        for text in ["3/4", "-1/2+2/3i", "i", "-i", "2-i", "0", "-7", "5i", "1/2-1/3i"] {
            let z = Scalar::parse(text).unwrap();
            let back = Scalar::parse(&format!("{z}")).unwrap();
            assert_eq!(z, back, "roundtrip failed for {text}");
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = Scalar::from_parts(1, 2, 4);
        let b = Scalar::from_parts(1, 3, 4);
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
    }
}
