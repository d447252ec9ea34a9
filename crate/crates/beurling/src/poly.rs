//! Polynomials in one variable over the exact scalar field.
//!
//! Coefficients are stored in ascending order with no trailing zeros; the
//! zero polynomial is the empty list and has degree `None`.

use crate::scalar::Scalar;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn z() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(k: usize, c: Scalar) -> Self {
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// `z - alpha`, the ubiquitous linear factor.
    pub fn linear(alpha: &Scalar) -> Self {
        Poly::new(vec![-alpha.clone(), Scalar::one()])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&n| Scalar::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn eval_c64(&self, z: (f64, f64)) -> (f64, f64) {
        let mut acc = (0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            let (re, im) = c.to_c64();
            acc = (acc.0 * z.0 - acc.1 * z.1 + re, acc.0 * z.1 + acc.1 * z.0 + im);
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Multiplies by `z^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Scalar::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `z^k`; requires the low coefficients to vanish.
    pub fn shift_down(&self, k: usize) -> Poly {
        assert!(
            self.coeffs.iter().take(k).all(Scalar::is_zero),
            "shift_down would truncate nonzero coefficients"
        );
        if self.coeffs.len() <= k {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Order of vanishing at the origin; zero polynomial reports `None`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * Scalar::from_int(k as i64))
                .collect(),
        )
    }

    /// Coefficient-wise complex conjugate, i.e. `conj(p(conj(z)))`.
    pub fn conj_coeffs(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    /// `z^deg * conj(p)(1/z)`: conjugated, reversed coefficients. On the unit
    /// circle this equals `z^deg * conj(p(z))`, so `p` and `p.reflect()` share
    /// circle zeros and swap inside/outside zeros.
    pub fn reflect(&self) -> Poly {
        let mut coeffs: Vec<Scalar> = self.coeffs.iter().map(Scalar::conj).collect();
        coeffs.reverse();
        Poly::new(coeffs)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inverse()),
        }
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let sd = match self.degree() {
            None => return (Poly::zero(), Poly::zero()),
            Some(d) if d < dd => return (Poly::zero(), self.clone()),
            Some(d) => d,
        };
        let lead_inv = divisor.leading().unwrap().inverse();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); sd - dd + 1];
        for shift in (0..=sd - dd).rev() {
            let factor = rem[shift + dd].clone() * lead_inv.clone();
            if factor.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] = rem[shift + j].clone() - factor.clone() * c.clone();
            }
            quot[shift] = factor;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divmod(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Extended Euclid: returns monic `g` and `(u, v)` with
    /// `u*self + v*other = g`.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = &u0 - &(&q * &u1);
            let v = &v0 - &(&q * &v1);
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        match r0.leading() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(l) => {
                let inv = l.inverse();
                (r0.scale(&inv), u0.scale(&inv), v0.scale(&inv))
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            b = b.monic();
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest `k` with `(z - alpha)^k` dividing `self`, together with the
    /// deflated quotient.
    pub fn root_multiplicity(&self, alpha: &Scalar) -> (usize, Poly) {
        let lin = Poly::linear(alpha);
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            match cur.div_exact(&lin) {
                Some(q) => {
                    k += 1;
                    cur = q;
                }
                None => break,
            }
        }
        (k, cur)
    }

    /// True when every coefficient is Gaussian-rational.
    pub fn is_gaussian_rational(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_gaussian_rational)
    }

    /// True when every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = format!("{c}");
            let needs_parens = cs.contains('+') || cs[1..].contains('-');
            let term = match k {
                0 => cs.clone(),
                _ => {
                    let var = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if c.is_one() {
                        var
                    } else if cs == "-1" {
                        format!("-{var}")
                    } else if needs_parens {
                        format!("({cs})*{var}")
                    } else {
                        format!("{cs}*{var}")
                    }
                }
            };
            if first {
                write!(f, "{term}")?;
                first = false;
            } else if term.starts_with('-') {
                write!(f, " - {}", &term[1..])?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(Poly::from_ints(&[5]).degree(), Some(0));
    }

    #[test]
    fn divmod_reconstructs() {
        let a = Poly::from_ints(&[1, -3, 0, 2, 7]);
        let b = Poly::from_ints(&[2, 1, 1]);
        let (q, r) = a.divmod(&b);
        let back = &(&q * &b) + &r;
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn divmod_smaller_degree_is_identity_remainder() {
        let a = Poly::from_ints(&[1, 2]);
        let b = Poly::from_ints(&[1, 1, 1]);
        let (q, r) = a.divmod(&b);
        assert!(q.is_zero());
        assert_eq!(r, a);
    }

    #[test]
    fn gcd_of_products() {
        let p = Poly::from_ints(&[-1, 1]); // z - 1
        let q = Poly::from_ints(&[2, 1]); // z + 2
        let r = Poly::from_ints(&[-3, 1]); // z - 3
        let a = &p * &q;
        let b = &p * &r;
        assert_eq!(a.gcd(&b), p.monic());
        assert_eq!(q.gcd(&r), Poly::one());
    }

    #[test]
    fn reflect_is_an_involution_up_to_origin_zeros() {
        let p = Poly::new(vec![
            Scalar::from_parts(1, 2, 1),
            Scalar::from_int(0),
            Scalar::from_parts(0, -1, 3),
        ]);
        assert_eq!(p.reflect().reflect(), p);
        // reflect swaps a zero alpha for 1/conj(alpha)
        let alpha = Scalar::from_ratio(1, 2);
        let lin = Poly::linear(&alpha);
        let refl = lin.reflect();
        assert!(refl.eval(&Scalar::from_int(2)).is_zero());
    }

    #[test]
    fn multiplicity_counts_repeated_roots() {
        let alpha = Scalar::from_parts(1, 1, 3); // (1+i)/3
        let lin = Poly::linear(&alpha);
        let p = &lin.pow(3) * &Poly::from_ints(&[1, 1]);
        let (k, rest) = p.root_multiplicity(&alpha);
        assert_eq!(k, 3);
        assert_eq!(rest, Poly::from_ints(&[1, 1]));
    }

    #[test]
    fn valuation_and_shifts() {
        let p = Poly::from_ints(&[0, 0, 3, 1]);
        assert_eq!(p.valuation(), Some(2));
        assert_eq!(p.shift_down(2), Poly::from_ints(&[3, 1]));
        assert_eq!(p.shift_down(2).shift_up(2), p);
    }

    #[test]
    fn eval_matches_expansion() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let z = Scalar::from_parts(1, 1, 2); // (1+i)/2
        let direct = Scalar::from_int(1)
            + Scalar::from_int(2) * z.clone()
            + Scalar::from_int(3) * z.clone() * z.clone();
        assert_eq!(p.eval(&z), direct);
    }
}
