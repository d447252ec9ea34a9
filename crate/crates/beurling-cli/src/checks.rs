//! Floating-point shadows of exact results: Gram residuals on circle
//! samples, FFT Fourier coefficients against exact ones, SVD ranks at
//! seeded circle points, and finite Hankel sections. A failed comparison
//! is recorded in the report, never thrown; seeds move only the sampling,
//! never an exact value.

use beurling::hankel::{HankelSymbol, KernelResult};
use beurling::inner::MatrixInner;
use beurling::numeric::{fft, numeric_rank, singular_values, C64};
use beurling::polymat::RatMat;
use beurling::ratfun::RatFun;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::CheckReport;

pub struct Harness {
    pub tolerance: f64,
    pub samples: usize,
    rng: ChaCha8Rng,
}

impl Harness {
    pub fn new(tolerance: f64, samples: usize, seed: u64) -> Harness {
        Harness { tolerance, samples, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Max deviation of the normalized Gram matrix from the identity over
    /// uniform circle samples.
    pub fn gram_check(&mut self, theta: &MatrixInner) -> CheckReport {
        let residual = theta.unitary_defect(self.samples.max(8));
        CheckReport::numeric(
            "inner gram identity on circle samples",
            "circle-gram",
            residual,
            self.tolerance,
        )
    }

    /// Fourier coefficients for degrees -4..=4: FFT of circle samples
    /// against the exact values.
    pub fn fourier_check(&mut self, label: &str, f: &RatFun) -> CheckReport {
        let n = self.samples.next_power_of_two().max(1024);
        let mut v: Vec<C64> = (0..n)
            .map(|j| {
                let z = C64::unit_circle(std::f64::consts::TAU * j as f64 / n as f64);
                let (re, im) = f.eval_c64((z.re, z.im));
                C64::new(re, im)
            })
            .collect();
        fft(&mut v, false);
        let mut worst = 0.0f64;
        for k in -4i64..=4 {
            let exact = match f.fourier(k) {
                Ok(c) => c,
                Err(e) => {
                    return CheckReport {
                        name: format!("fourier coefficients of {label}: {e}"),
                        provenance: "numeric:fft-fourier".into(),
                        residual: None,
                        tolerance: None,
                        pass: false,
                    }
                }
            };
            let idx = k.rem_euclid(n as i64) as usize;
            let approx = v[idx].scale(1.0 / n as f64);
            worst = worst.max((approx - C64::from_scalar(&exact)).abs());
        }
        CheckReport::numeric(
            &format!("fourier coefficients of {label}, degrees -4..=4 (fft vs exact)"),
            "fft-fourier",
            worst,
            self.tolerance,
        )
    }

    /// Largest numeric rank over singular value decompositions at five
    /// seeded circle points, against the exact generic rank.
    pub fn svd_rank_check(&mut self, m: &RatMat, exact: usize) -> CheckReport {
        let mut best = 0usize;
        for _ in 0..5 {
            let angle = self.rng.gen_range(0.0..std::f64::consts::TAU);
            let z = (angle.cos(), angle.sin());
            let rows: Vec<Vec<C64>> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            let (re, im) = m.at(i, j).eval_c64(z);
                            C64::new(re, im)
                        })
                        .collect()
                })
                .collect();
            best = best.max(numeric_rank(&singular_values(&rows), self.tolerance));
        }
        CheckReport::numeric_count(
            "rank by singular values at 5 circle points",
            "svd-rank",
            best,
            exact,
        )
    }

    /// Kernel dimensions of finite sections, entry degrees 0..=2, against
    /// the exact dimensions read off the minimal module basis.
    pub fn finite_section_check(
        &mut self,
        sym: &HankelSymbol,
        kernel: &KernelResult,
    ) -> CheckReport {
        let mut numeric = Vec::new();
        let mut exact = Vec::new();
        for d in 0..=2usize {
            match sym.finite_section_kernel_dim(d, self.tolerance) {
                Ok(dim) => numeric.push(dim),
                Err(e) => {
                    return CheckReport {
                        name: format!("finite section kernels: {e}"),
                        provenance: "numeric:finite-section".into(),
                        residual: None,
                        tolerance: None,
                        pass: false,
                    }
                }
            }
            exact.push(kernel.polynomial_kernel_dim(d));
        }
        let residual =
            numeric.iter().zip(&exact).map(|(n, e)| n.abs_diff(*e)).max().unwrap_or(0);
        CheckReport {
            name: format!(
                "finite section kernel dimensions, degrees 0..=2 (numeric {numeric:?}, exact {exact:?})"
            ),
            provenance: "numeric:finite-section".into(),
            residual: Some(residual.to_string()),
            tolerance: None,
            pass: residual == 0,
        }
    }
}
