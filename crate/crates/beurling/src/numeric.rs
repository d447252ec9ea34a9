//! Floating-point shadow arithmetic.
//!
//! Nothing in this module decides an exact result. Numeric roots are only
//! candidates that later pass or fail exact verification; singular values and
//! circle samples serve as cross-checks on exact computations. Everything
//! here is deterministic: fixed starting configurations, fixed sweep orders,
//! no randomness.

use crate::scalar::Scalar;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Complex double, kept separate from the exact [`Scalar`] on purpose.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    pub fn from_scalar(s: &Scalar) -> Self {
        let (re, im) = s.to_c64();
        C64 { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(self) -> C64 {
        C64 { re: self.re, im: -self.im }
    }

    pub fn unit_circle(theta: f64) -> C64 {
        C64 { re: theta.cos(), im: theta.sin() }
    }

    pub fn inv(self) -> C64 {
        let n = self.re * self.re + self.im * self.im;
        C64 { re: self.re / n, im: -self.im / n }
    }

    pub fn scale(self, t: f64) -> C64 {
        C64 { re: self.re * t, im: self.im * t }
    }
}

impl Add for C64 {
    type Output = C64;
    fn add(self, rhs: C64) -> C64 {
        C64 { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for C64 {
    type Output = C64;
    fn sub(self, rhs: C64) -> C64 {
        C64 { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for C64 {
    type Output = C64;
    fn mul(self, rhs: C64) -> C64 {
        C64 {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}

impl Div for C64 {
    type Output = C64;
    fn div(self, rhs: C64) -> C64 {
        self * rhs.inv()
    }
}

impl Neg for C64 {
    type Output = C64;
    fn neg(self) -> C64 {
        C64 { re: -self.re, im: -self.im }
    }
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    let mut acc = C64::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc * z + *c;
    }
    acc
}

/// Numeric roots with clustered multiplicities, by the Aberth-Ehrlich
/// simultaneous iteration. Returns `(centroid, count)` pairs; cluster
/// centroids are far more accurate than the individual smeared roots of a
/// multiple zero, which is what makes exact snapping viable.
pub fn poly_roots_numeric(coeffs: &[C64]) -> Vec<(C64, usize)> {
    let mut c: Vec<C64> = coeffs.to_vec();
    while c.last().is_some_and(|t| t.abs() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    // Strip exact zeros at the origin first.
    let val = c.iter().position(|t| t.abs() != 0.0).unwrap_or(0);
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    if val > 0 {
        clusters.push((C64::ZERO, val));
        c.drain(..val);
    }
    let n = c.len() - 1;
    if n == 0 {
        return clusters;
    }
    let lead = *c.last().unwrap();
    let norm: Vec<C64> = c.iter().map(|t| *t / lead).collect();
    let deriv: Vec<C64> = norm
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, t)| t.scale(k as f64))
        .collect();

    // Cauchy bound on root magnitudes.
    let bound = 1.0 + norm[..n].iter().map(|t| t.abs()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|j| {
            let r = bound * (0.35 + 0.55 * ((j as f64 * 0.6180339887498949) % 1.0));
            let theta = std::f64::consts::TAU * (j as f64 + 0.3819660112501051) / n as f64;
            C64::unit_circle(theta).scale(r)
        })
        .collect();

    for _ in 0..600 {
        let mut worst = 0.0f64;
        for j in 0..n {
            let pj = horner(&norm, z[j]);
            let dj = horner(&deriv, z[j]);
            let w = if dj.abs() == 0.0 {
                C64::new(1e-12, 1e-12)
            } else {
                pj / dj
            };
            let mut s = C64::ZERO;
            for k in 0..n {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.abs() > 1e-300 {
                        s = s + diff.inv();
                    }
                }
            }
            let denom = C64::ONE - w * s;
            let corr = if denom.abs() < 1e-300 { w } else { w / denom };
            z[j] = z[j] - corr;
            let rel = corr.abs() / (1.0 + z[j].abs());
            worst = worst.max(rel);
        }
        if worst < 1e-14 {
            break;
        }
    }

    // Cluster smeared multiple roots and report centroids.
    let mut used = vec![false; n];
    for j in 0..n {
        if used[j] {
            continue;
        }
        let mut members = vec![j];
        used[j] = true;
        for k in j + 1..n {
            if !used[k] && (z[k] - z[j]).abs() < 2e-4 * (1.0 + z[j].abs()) {
                members.push(k);
                used[k] = true;
            }
        }
        let mut centroid = C64::ZERO;
        for &m in &members {
            centroid = centroid + z[m];
        }
        clusters.push((centroid.scale(1.0 / members.len() as f64), members.len()));
    }
    clusters
}

/// In-place radix-2 FFT; `values.len()` must be a power of two.
/// `inverse` includes the `1/n` normalization.
pub fn fft(values: &mut [C64], inverse: bool) {
    let n = values.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            values.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * std::f64::consts::TAU / len as f64;
        let w_len = C64::unit_circle(ang);
        for start in (0..n).step_by(len) {
            let mut w = C64::ONE;
            for k in 0..len / 2 {
                let u = values[start + k];
                let v = values[start + k + len / 2] * w;
                values[start + k] = u + v;
                values[start + k + len / 2] = u - v;
                w = w * w_len;
            }
        }
        len <<= 1;
    }
    if inverse {
        let scale = 1.0 / n as f64;
        for v in values.iter_mut() {
            *v = v.scale(scale);
        }
    }
}

/// Singular values of a complex matrix by one-sided Jacobi, descending.
pub fn singular_values(rows: &[Vec<C64>]) -> Vec<f64> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    if n == 0 {
        return Vec::new();
    }
    // Work on columns; transpose if wider than tall so columns are the short side.
    let transpose = n > m;
    let (rows_w, cols_w) = if transpose { (n, m) } else { (m, n) };
    let mut a = vec![vec![C64::ZERO; cols_w]; rows_w];
    for i in 0..m {
        for j in 0..n {
            if transpose {
                a[j][i] = rows[i][j].conj();
            } else {
                a[i][j] = rows[i][j];
            }
        }
    }
    let dot = |a: &Vec<Vec<C64>>, p: usize, q: usize| -> C64 {
        let mut s = C64::ZERO;
        for row in a.iter() {
            s = s + row[p].conj() * row[q];
        }
        s
    };
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..cols_w {
            for q in p + 1..cols_w {
                let app = dot(&a, p, p).re;
                let aqq = dot(&a, q, q).re;
                let apq = dot(&a, p, q);
                if apq.abs() <= 1e-15 * (app * aqq).sqrt().max(1e-300) {
                    continue;
                }
                off = off.max(apq.abs());
                // Complex Jacobi rotation diagonalizing the 2x2 Gram block.
                let phase = apq.scale(1.0 / apq.abs());
                let tau = (aqq - app) / (2.0 * apq.abs());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = cth * t;
                for row in a.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = vp.scale(cth) - vq * phase.conj().scale(sth);
                    row[q] = vp * phase.scale(sth) + vq.scale(cth);
                }
            }
        }
        if off < 1e-14 {
            break;
        }
    }
    let mut svals: Vec<f64> = (0..cols_w).map(|j| dot(&a, j, j).re.max(0.0).sqrt()).collect();
    svals.sort_by(|x, y| y.partial_cmp(x).unwrap());
    svals
}

/// Count of singular values above `tol` times the largest.
pub fn numeric_rank(svals: &[f64], tol: f64) -> usize {
    match svals.first() {
        None => 0,
        Some(&s0) if s0 <= 0.0 => 0,
        Some(&s0) => svals.iter().filter(|&&s| s > tol * s0).count(),
    }
}

/// `n` equally spaced points on the unit circle, starting at 1.
pub fn circle_samples(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| C64::unit_circle(std::f64::consts::TAU * k as f64 / n as f64))
        .collect()
}
