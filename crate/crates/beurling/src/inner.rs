//! Matrix inner functions, Blaschke-Potapov extraction, and the inner-outer
//! factorization of rational matrix functions analytic in the closed disk.
//!
//! An inner function is stored in scaled-column form: a rational matrix
//! `mat` together with positive tags `t` such that `mat^* mat == diag(t)`
//! holds exactly as rational functions. The true inner function is
//! `mat * diag(1/sqrt(t))`; keeping the square roots out of the entries
//! keeps every entry inside the coefficient field, and every certificate
//! stays an exact identity.
//!
//! The factorization pipeline is constructive throughout: inner content is
//! peeled off one Blaschke-Potapov factor at a time, the outer core comes
//! from an exact `L* D L` diagonalization of the Gram matrix followed by a
//! scalar spectral factorization of each pivot, and every step ends with an
//! exact reassembly check.

use crate::poly::Poly;
use crate::polymat::{scalar_kernel_basis, PolyMat, RatMat};
use crate::ratfun::RatFun;
use crate::roots::{self, CirclePolicy};
use crate::scalar::{Quad, Scalar};
use crate::{Error, Result};

use num::rational::BigRational;
use num::{BigInt, One, Signed};

fn quad_scalar(q: &Quad) -> Scalar {
    Scalar::new(q.clone(), Quad::zero())
}

fn strictly_inside(s: &Scalar) -> bool {
    (Quad::one() - s.norm_sqr()).is_positive()
}

/// Tracks the single real quadratic extension the computation is allowed to
/// use. `0` means none has been committed yet.
fn merge_radicand(seen: &mut u64, d: u64) -> Result<()> {
    if d == 0 {
        return Ok(());
    }
    if *seen == 0 {
        *seen = d;
        return Ok(());
    }
    if *seen == d {
        Ok(())
    } else {
        Err(Error::NotRepresentable(format!(
            "needs both sqrt({seen}) and sqrt({d}), but only one real quadratic extension is \
             supported"
        )))
    }
}

fn scan_poly_radicand(p: &Poly, seen: &mut u64) -> Result<()> {
    for c in p.coeffs() {
        merge_radicand(seen, c.re().radicand())?;
        merge_radicand(seen, c.im().radicand())?;
    }
    Ok(())
}

/// The Blaschke factor `(z - alpha) / (1 - conj(alpha) z)`, the unique (up
/// to unimodular constant) scalar inner function vanishing exactly at
/// `alpha`.
pub fn mobius(alpha: &Scalar) -> RatFun {
    let den = Poly::new(vec![Scalar::one(), -alpha.conj()]);
    RatFun::new(Poly::linear(alpha), den)
}

/// `b_alpha - 1` as a single reduced fraction.
fn mobius_minus_one(alpha: &Scalar) -> RatFun {
    let one = Scalar::one();
    let num = Poly::new(vec![-(&one + alpha), &one + &alpha.conj()]);
    let den = Poly::new(vec![one, -alpha.conj()]);
    RatFun::new(num, den)
}

/// `1/b_alpha - 1`; its only pole is at `alpha` itself.
fn inverse_mobius_minus_one(alpha: &Scalar) -> RatFun {
    let one = Scalar::one();
    let num = Poly::new(vec![&one + alpha, -(&one + &alpha.conj())]);
    RatFun::new(num, Poly::linear(alpha))
}

/// One Blaschke-Potapov factor `E = I + (b_alpha - 1) P`, where `P`
/// projects onto `span(vector)` orthogonally for the weighted inner product
/// `<x, y> = y^* diag(weights) x`.
///
/// Exact identities: `E^* diag(w) E == diag(w)`, `det E == b_alpha`, and
/// `E^{-1} = I + (1/b_alpha - 1) P` with its only pole at `alpha`.
#[derive(Debug, Clone)]
pub struct BPFactor {
    alpha: Scalar,
    vector: Vec<Scalar>,
    weights: Vec<Quad>,
}

impl BPFactor {
    pub fn new(alpha: Scalar, vector: Vec<Scalar>, weights: Vec<Quad>) -> Result<Self> {
        if vector.is_empty() || vector.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "factor vector has {} entries, weights {}",
                vector.len(),
                weights.len()
            )));
        }
        if !strictly_inside(&alpha) {
            return Err(Error::NotInner(format!(
                "factor zero {alpha} does not lie inside the open disk"
            )));
        }
        if vector.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroInput("factor direction is the zero vector".into()));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Certificate("factor weights must be positive".into()));
        }
        Ok(BPFactor { alpha, vector, weights })
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    pub fn vector(&self) -> &[Scalar] {
        &self.vector
    }

    pub fn size(&self) -> usize {
        self.vector.len()
    }

    /// `u^* diag(w) u`, a positive constant.
    fn norm(&self) -> Scalar {
        let mut nu = Quad::zero();
        for (u, w) in self.vector.iter().zip(&self.weights) {
            nu = nu + u.norm_sqr() * w.clone();
        }
        quad_scalar(&nu)
    }

    /// The constant weighted projection `P = u u^* diag(w) / (u^* diag(w) u)`.
    pub fn projection(&self) -> RatMat {
        let n = self.size();
        let nu = self.norm();
        RatMat::from_fn(n, n, |i, j| {
            let e = self.vector[i].clone() * self.vector[j].conj() * quad_scalar(&self.weights[j])
                / nu.clone();
            RatFun::constant(e)
        })
    }

    pub fn matrix(&self) -> RatMat {
        let p = self.projection().scale(&mobius_minus_one(&self.alpha));
        RatMat::identity(self.size()).add(&p)
    }

    pub fn inverse_matrix(&self) -> RatMat {
        let p = self.projection().scale(&inverse_mobius_minus_one(&self.alpha));
        RatMat::identity(self.size()).add(&p)
    }
}

/// First vector `u` with `M(alpha)^* diag(w) u == 0`, i.e. the direction a
/// left factor must project onto so that `E^{-1} M` stays analytic at
/// `alpha`. `at` is `M(alpha)` row-major.
fn weighted_left_null(at: &[Vec<Scalar>], weights: &[Quad]) -> Option<Vec<Scalar>> {
    let n = at.len();
    if n == 0 {
        return None;
    }
    let k = at[0].len();
    let sys: Vec<Vec<Scalar>> = (0..k)
        .map(|i| (0..n).map(|j| at[j][i].conj() * quad_scalar(&weights[j])).collect())
        .collect();
    scalar_kernel_basis(&sys).into_iter().next()
}

/// First vector `w` with `M(alpha) w == 0`.
fn right_null(at: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
    scalar_kernel_basis(at).into_iter().next()
}

/// Splits one left Blaschke-Potapov factor vanishing at `alpha` off `m`:
/// returns `(e, rest)` with `m == e.matrix() * rest` exactly and `rest`
/// analytic wherever `m` is. Requires `m(alpha)` to drop rank.
pub fn bp_extract(m: &RatMat, alpha: &Scalar) -> Result<(BPFactor, RatMat)> {
    let at = m
        .eval(alpha)
        .ok_or_else(|| Error::NotAnalytic(format!("pole at {alpha}")))?;
    let weights = vec![Quad::one(); m.rows()];
    let u = weighted_left_null(&at, &weights).ok_or_else(|| {
        Error::Certificate(format!("no rank drop at {alpha}: nothing to extract"))
    })?;
    let e = BPFactor::new(alpha.clone(), u, weights)?;
    let rest = e.inverse_matrix().mul(m);
    Ok((e, rest))
}

/// Left chain at a known list of interior zeros with multiplicities:
/// `m == E_1 E_2 ... E_k * rest` with every factor weighted by `weights`.
pub(crate) fn weighted_left_chain_known(
    m: &RatMat,
    weights: &[Quad],
    zeros: &[(Scalar, usize)],
) -> Result<(Vec<BPFactor>, RatMat)> {
    let mut rest = m.clone();
    let mut chain = Vec::new();
    for (alpha, mult) in zeros {
        for _ in 0..*mult {
            let at = rest
                .eval(alpha)
                .ok_or_else(|| Error::NotAnalytic(format!("pole at {alpha}")))?;
            let u = weighted_left_null(&at, weights).ok_or_else(|| {
                Error::Certificate(format!("expected rank drop at {alpha} did not occur"))
            })?;
            let e = BPFactor::new(alpha.clone(), u, weights.to_vec())?;
            rest = e.inverse_matrix().mul(&rest);
            chain.push(e);
        }
    }
    Ok((chain, rest))
}

/// Left extraction specialized to polynomial matrices. Writing
/// `u^* N = (z - alpha) q` (exact division), the update
/// `N + u ((1+alpha) - (1+conj alpha) z) q / (u^* u)` equals `E^{-1} N`
/// entry for entry, so the result stays polynomial.
pub(crate) fn left_extract_poly(n: &PolyMat, alpha: &Scalar) -> Result<(BPFactor, PolyMat)> {
    let at = n.eval(alpha);
    let weights = vec![Quad::one(); n.rows()];
    let u = weighted_left_null(&at, &weights).ok_or_else(|| {
        Error::Certificate(format!("no rank drop at {alpha}: nothing to extract"))
    })?;
    let nu: Scalar = u.iter().map(|c| quad_scalar(&c.norm_sqr())).fold(Scalar::zero(), |a, b| a + b);
    let lin = Poly::linear(alpha);
    let one = Scalar::one();
    let kappa = Poly::new(vec![&one + alpha, -(&one + &alpha.conj())]);
    let mut next = n.clone();
    for j in 0..n.cols() {
        let mut row_j = Poly::zero();
        for i in 0..n.rows() {
            row_j = row_j + n.at(i, j).scale(&u[i].conj());
        }
        let q_j = row_j.div_exact(&lin).ok_or_else(|| {
            Error::Certificate(format!("null direction fails to vanish at {alpha}"))
        })?;
        let term = &q_j * &kappa;
        for i in 0..n.rows() {
            let c = u[i].clone() / nu.clone();
            next.set(i, j, n.at(i, j) + &term.scale(&c));
        }
    }
    Ok((BPFactor::new(alpha.clone(), u, weights)?, next))
}

/// Right extraction specialized to polynomial matrices: `h == next * E`.
fn right_extract_poly(h: &PolyMat, alpha: &Scalar) -> Result<(PolyMat, BPFactor)> {
    let at = h.eval(alpha);
    let w = right_null(&at).ok_or_else(|| {
        Error::Certificate(format!("no right null direction at {alpha}"))
    })?;
    let nu: Scalar = w.iter().map(|c| quad_scalar(&c.norm_sqr())).fold(Scalar::zero(), |a, b| a + b);
    let lin = Poly::linear(alpha);
    let one = Scalar::one();
    let kappa = Poly::new(vec![&one + alpha, -(&one + &alpha.conj())]);
    let mut next = h.clone();
    for i in 0..h.rows() {
        let mut col_i = Poly::zero();
        for j in 0..h.cols() {
            col_i = col_i + h.at(i, j).scale(&w[j]);
        }
        let q_i = col_i.div_exact(&lin).ok_or_else(|| {
            Error::Certificate(format!("null direction fails to vanish at {alpha}"))
        })?;
        let term = &q_i * &kappa;
        for j in 0..h.cols() {
            let c = w[j].conj() / nu.clone();
            next.set(i, j, h.at(i, j) + &term.scale(&c));
        }
    }
    let weights = vec![Quad::one(); h.cols()];
    Ok((next, BPFactor::new(alpha.clone(), w, weights)?))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + (k - i) < n {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Gcd of all maximal square minors; its interior zeros are exactly the
/// points where the matrix drops below full rank.
fn maximal_minor_gcd(m: &PolyMat) -> Poly {
    let r = m.rows().min(m.cols());
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let all_cols: Vec<usize> = (0..m.cols()).collect();
    let mut g = Poly::zero();
    if m.rows() >= m.cols() {
        for rows in combinations(m.rows(), r) {
            g = g.gcd(&m.submatrix(&rows, &all_cols).det());
            if !g.is_zero() && g.is_constant() {
                break;
            }
        }
    } else {
        for cols in combinations(m.cols(), r) {
            g = g.gcd(&m.submatrix(&all_rows, &cols).det());
            if !g.is_zero() && g.is_constant() {
                break;
            }
        }
    }
    g
}

/// A matrix inner function in scaled-column coordinates: `mat` is analytic
/// in the closed disk and `mat^* mat == diag(tags)` exactly, with every tag
/// a positive real. The true inner function is `mat * diag(1/sqrt(tags))`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixInner {
    mat: RatMat,
    tags: Vec<Quad>,
}

impl MatrixInner {
    /// Builds and certifies a scaled inner matrix; rejects anything that
    /// fails the exact isometry or analyticity checks.
    pub fn new(mat: RatMat, tags: Vec<Quad>) -> Result<Self> {
        if tags.len() != mat.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} tags for {} columns",
                tags.len(),
                mat.cols()
            )));
        }
        let inner = MatrixInner { mat, tags };
        inner.verify()?;
        Ok(inner)
    }

    /// A plain inner matrix: all tags 1, `mat^* mat == I`.
    pub fn from_plain(mat: RatMat) -> Result<Self> {
        let tags = vec![Quad::one(); mat.cols()];
        MatrixInner::new(mat, tags)
    }

    pub fn identity(n: usize) -> Self {
        MatrixInner { mat: RatMat::identity(n), tags: vec![Quad::one(); n] }
    }

    /// The inner function of the zero subspace: `n` rows, no columns.
    pub fn empty(n: usize) -> Self {
        MatrixInner { mat: RatMat::zero(n, 0), tags: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.mat.rows()
    }

    pub fn cols(&self) -> usize {
        self.mat.cols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.cols() == 0
    }

    pub fn mat(&self) -> &RatMat {
        &self.mat
    }

    pub fn tags(&self) -> &[Quad] {
        &self.tags
    }

    fn tag_diag(&self) -> RatMat {
        RatMat::from_fn(self.cols(), self.cols(), |i, j| {
            if i == j {
                RatFun::constant(quad_scalar(&self.tags[i]))
            } else {
                RatFun::zero()
            }
        })
    }

    fn tag_inverse_diag(&self) -> RatMat {
        RatMat::from_fn(self.cols(), self.cols(), |i, j| {
            if i == j {
                RatFun::constant(quad_scalar(&self.tags[i].inverse()))
            } else {
                RatFun::zero()
            }
        })
    }

    /// Re-runs the full certificate: positive tags, closed-disk analyticity,
    /// and the exact Gram identity `mat^* mat == diag(tags)`.
    pub fn verify(&self) -> Result<()> {
        for t in &self.tags {
            if !t.is_positive() {
                return Err(Error::Certificate("tag must be positive".into()));
            }
        }
        if self.cols() == 0 {
            return Ok(());
        }
        match self.mat.analytic_in_disk()? {
            true => {}
            false => {
                return Err(Error::NotAnalytic(
                    "inner candidate has a pole in the open disk".into(),
                ))
            }
        }
        let gram = self.mat.adjoint().mul(&self.mat);
        if gram != self.tag_diag() {
            return Err(Error::NotInner(
                "columns are not orthogonal with constant norms".into(),
            ));
        }
        Ok(())
    }

    /// Number of zeros of the determinant inside the disk (square only).
    pub fn blaschke_degree(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::UnsupportedShape(
                "determinant degree needs a square inner function".into(),
            ));
        }
        Ok(self.mat.det().num().degree().unwrap_or(0))
    }

    /// Exact membership test for the shift-invariant subspace generated by
    /// the columns: each column of `f` must equal `mat * q` for an analytic
    /// `q`, and the candidate `q = diag(1/t) mat^* f` is the only one.
    pub fn contains(&self, f: &RatMat) -> Result<bool> {
        if f.rows() != self.rows() {
            return Err(Error::DimensionMismatch(format!(
                "vector has {} rows, subspace {}",
                f.rows(),
                self.rows()
            )));
        }
        if self.cols() == 0 {
            return Ok(f.is_zero());
        }
        let q = self.tag_inverse_diag().mul(&self.mat.adjoint()).mul(f);
        if self.mat.mul(&q) != *f {
            return Ok(false);
        }
        for i in 0..q.rows() {
            for j in 0..q.cols() {
                match q.at(i, j).analytic_in_disk() {
                    Ok(true) => {}
                    Ok(false) | Err(Error::PoleOnCircle(_)) => return Ok(false),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(true)
    }

    /// Largest deviation of `Theta(zeta)^* Theta(zeta)` from the identity
    /// over circle samples. A floating-point shadow of the exact
    /// certificate, for cross-checking reports only.
    pub fn unitary_defect(&self, samples: usize) -> f64 {
        if self.cols() == 0 {
            return 0.0;
        }
        let sqrt_tags: Vec<f64> = self.tags.iter().map(|t| t.to_f64().sqrt()).collect();
        let mut worst = 0.0f64;
        for zeta in crate::numeric::circle_samples(samples) {
            let a: Vec<Vec<(f64, f64)>> = (0..self.rows())
                .map(|i| {
                    (0..self.cols())
                        .map(|j| self.mat.at(i, j).eval_c64((zeta.re, zeta.im)))
                        .collect()
                })
                .collect();
            for p in 0..self.cols() {
                for q in 0..self.cols() {
                    let mut re = 0.0;
                    let mut im = 0.0;
                    for row in &a {
                        let (xr, xi) = row[p];
                        let (yr, yi) = row[q];
                        // conj(x) * y
                        re += xr * yr + xi * yi;
                        im += xr * yi - xi * yr;
                    }
                    re /= sqrt_tags[p] * sqrt_tags[q];
                    im /= sqrt_tags[p] * sqrt_tags[q];
                    if p == q {
                        re -= 1.0;
                    }
                    worst = worst.max(re.hypot(im));
                }
            }
        }
        worst
    }
}

/// Outcome of the strict plain-inner test.
#[derive(Debug, Clone)]
pub struct InnerCheck {
    pub is_inner: bool,
    /// Human-readable reason when the check fails.
    pub witness: Option<String>,
}

/// Strict test: is `m` analytic in the closed disk with `m^* m == I`
/// exactly? Degenerate circle behavior that cannot be classified is an
/// error, not a verdict.
pub fn is_inner(m: &RatMat) -> Result<InnerCheck> {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            match m.at(i, j).analytic_in_disk() {
                Ok(true) => {}
                Ok(false) => {
                    return Ok(InnerCheck {
                        is_inner: false,
                        witness: Some(format!("entry ({i}, {j}) has a pole in the open disk")),
                    })
                }
                Err(Error::PoleOnCircle(w)) => {
                    return Ok(InnerCheck {
                        is_inner: false,
                        witness: Some(format!("entry ({i}, {j}) has a pole on the circle at {w}")),
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    let gram = m.adjoint().mul(m);
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            let expect = if i == j { RatFun::one() } else { RatFun::zero() };
            if *gram.at(i, j) != expect {
                return Ok(InnerCheck {
                    is_inner: false,
                    witness: Some(format!(
                        "Gram entry ({i}, {j}) is {}, expected {}",
                        gram.at(i, j),
                        expect
                    )),
                });
            }
        }
    }
    Ok(InnerCheck { is_inner: true, witness: None })
}

/// Do two scaled inner matrices span the same shift-invariant subspace?
/// Equivalent to the true inner functions differing by a constant unitary
/// on the right, which in stored coordinates means
/// `C := diag(1/t_b) b^* a` is constant with `a == b C` and
/// `C^* diag(t_b) C == diag(t_a)`, all exactly.
pub fn equal_up_to_right_unitary(a: &MatrixInner, b: &MatrixInner) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Ok(false);
    }
    if a.cols() == 0 {
        return Ok(true);
    }
    let c = b.tag_inverse_diag().mul(&b.mat().adjoint()).mul(a.mat());
    for i in 0..c.rows() {
        for j in 0..c.cols() {
            if !c.at(i, j).is_constant() {
                return Ok(false);
            }
        }
    }
    if b.mat().mul(&c) != *a.mat() {
        return Ok(false);
    }
    let lhs = c.adjoint().mul(&b.tag_diag()).mul(&c);
    Ok(lhs == a.tag_diag())
}

/// `L^* diag(sigma) L` decomposition of the leading principal structure of
/// a Hermitian rational matrix under a fixed pivot order. `None` when a
/// pivot vanishes identically.
fn field_ldl(q: &RatMat, perm: &[usize]) -> Option<(Vec<RatFun>, RatMat)> {
    let r = q.rows();
    let mut a: Vec<Vec<RatFun>> = (0..r)
        .map(|i| (0..r).map(|j| q.at(perm[i], perm[j]).clone()).collect())
        .collect();
    let mut l: Vec<Vec<RatFun>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect())
        .collect();
    let mut sigma = Vec::with_capacity(r);
    for k in 0..r {
        let pivot = a[k][k].clone();
        if pivot.is_zero() {
            return None;
        }
        let inv = pivot.inverse();
        for j in k + 1..r {
            l[k][j] = &a[k][j] * &inv;
        }
        for i in k + 1..r {
            for j in k + 1..r {
                let upd = &(&a[k][i].adjoint() * &a[k][j]) * &inv;
                a[i][j] = &a[i][j] - &upd;
            }
        }
        sigma.push(pivot);
    }
    Some((sigma, RatMat::from_fn(r, r, |i, j| l[i][j].clone())))
}

/// Outer half of the zero set of a polynomial: a factor `s` whose zeros are
/// the reflections into `|z| >= 1` of the zero classes of `p`, so that
/// `p / (s^* s)` has unimodular absolute value times a constant on the
/// circle. Interior zeros are skipped (the mirror partner supplies them);
/// boundary zeros need even multiplicity. Zero classes with no square-root
/// representation in the field are rejected.
fn outer_half(p: &Poly, rad: &mut u64) -> Result<Poly> {
    if p.is_zero() {
        return Err(Error::ZeroInput("outer half of the zero polynomial".into()));
    }
    let v = p.valuation().unwrap_or(0);
    let work = p.shift_down(v);
    let (found, rem) = roots::verified_rational_zeros(&work);
    let mut s = Poly::one();
    let one = Quad::one();
    for (alpha, mult) in &found {
        let n2 = alpha.norm_sqr();
        match n2.cmp_real(&one) {
            std::cmp::Ordering::Greater => {
                s = &s * &Poly::linear(alpha).pow(*mult as u32);
            }
            std::cmp::Ordering::Equal => {
                if mult % 2 == 1 {
                    return Err(Error::Certificate(format!(
                        "boundary zero at {alpha} has odd multiplicity {mult}"
                    )));
                }
                s = &s * &Poly::linear(alpha).pow((mult / 2) as u32);
            }
            std::cmp::Ordering::Less => {}
        }
    }
    if rem.is_constant() {
        return Ok(s);
    }
    // Remaining zero classes are irrational. The substitution w = z + 1/z
    // rationalizes mirror pairs, but needs a real palindromic factor.
    if !rem.is_real() {
        return Err(Error::NotRepresentable(
            "irrational zero classes with complex coefficients".into(),
        ));
    }
    let d = rem.degree().expect("nonconstant remainder has a degree");
    for i in 0..=d {
        if rem.coeff(i) != rem.coeff(d - i) {
            return Err(Error::NotRepresentable(
                "irrational zero classes without mirror symmetry".into(),
            ));
        }
    }
    if d % 2 == 1 {
        // A real palindromic factor of odd degree vanishes at -1, which the
        // rational phase would have found.
        return Err(Error::Certificate("palindromic remainder of odd degree".into()));
    }
    let u = d / 2;
    // Fold p / z^u into a polynomial in w via c_j = z^j + z^{-j}:
    // c_0 = 2, c_1 = w, c_{j+1} = w c_j - c_{j-1}.
    let mut qhat = Poly::constant(rem.coeff(u));
    let mut c_prev = Poly::constant(Scalar::from_int(2));
    let mut c_cur = Poly::z();
    for j in 1..=u {
        qhat = qhat + c_cur.scale(&rem.coeff(u + j));
        let c_next = &(&Poly::z() * &c_cur) - &c_prev;
        c_prev = c_cur;
        c_cur = c_next;
    }
    let (wzeros, wrem) = roots::verified_rational_zeros(&qhat);
    if !wrem.is_constant() {
        return Err(Error::NotRepresentable(
            "spectral zeros outside every supported quadratic extension".into(),
        ));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    for (e, mu) in &wzeros {
        if e.is_real() {
            let er = e
                .re()
                .as_rational()
                .ok_or_else(|| {
                    Error::NotRepresentable("irrational folded zero".into())
                })?
                .clone();
            if er.abs() > two {
                let (r1, r2) = roots::real_quad_roots(&-er, &BigRational::one())
                    .ok_or_else(|| {
                        Error::NotRepresentable(
                            "square-free part of the discriminant is out of range".into(),
                        )
                    })?;
                let inside_first = (one.clone() - r1.clone() * r1.clone()).is_positive();
                let beta = if inside_first { r1 } else { r2 };
                if !(one.clone() - beta.clone() * beta.clone()).is_positive() {
                    return Err(Error::Certificate(
                        "mirror pair without an interior member".into(),
                    ));
                }
                merge_radicand(rad, beta.radicand())?;
                let fac = Poly::new(vec![Scalar::one(), -quad_scalar(&beta)]);
                s = &s * &fac.pow(*mu as u32);
            } else if er.abs() < two {
                if mu % 2 == 1 {
                    return Err(Error::Certificate(format!(
                        "boundary zero pair (folded value {er}) has odd multiplicity {mu}"
                    )));
                }
                let fac = Poly::new(vec![Scalar::one(), -e.clone(), Scalar::one()]);
                s = &s * &fac.pow((mu / 2) as u32);
            } else {
                // |e| == 2 means a zero at +-1, which the rational phase owns.
                return Err(Error::Certificate("unexpected boundary configuration".into()));
            }
        } else {
            // Complex folded value: the pair quadratic must factor over the
            // Gaussian rationals.
            let quad = Poly::new(vec![Scalar::one(), -e.clone(), Scalar::one()]);
            let (pair, prem) = roots::verified_rational_zeros(&quad);
            if !prem.is_constant() {
                return Err(Error::NotRepresentable(
                    "complex zero pair outside the Gaussian rationals".into(),
                ));
            }
            let beta = pair
                .iter()
                .map(|(b, _)| b)
                .find(|b| strictly_inside(b))
                .cloned()
                .ok_or_else(|| {
                    Error::Certificate("mirror pair without an interior member".into())
                })?;
            let fac = Poly::new(vec![Scalar::one(), -beta]);
            s = &s * &fac.pow(*mu as u32);
        }
    }
    Ok(s)
}

/// Exact scalar spectral factorization `sigma == t * s^* s` with `t` a
/// positive real constant and `s` a rational function with no zeros or
/// poles in the open disk. Requires `sigma` self-adjoint; the residue check
/// at the end is the certificate.
pub fn scalar_spectral(sigma: &RatFun) -> Result<(Quad, RatFun)> {
    if sigma.is_zero() {
        return Err(Error::ZeroInput("spectral factorization of zero".into()));
    }
    if sigma.adjoint() != *sigma {
        return Err(Error::Certificate("spectral density is not self-adjoint".into()));
    }
    let mut rad = 0u64;
    scan_poly_radicand(sigma.num(), &mut rad)?;
    scan_poly_radicand(sigma.den(), &mut rad)?;
    let s_num = outer_half(sigma.num(), &mut rad)?;
    let s_den = outer_half(sigma.den(), &mut rad)?;
    let s = RatFun::new(s_num, s_den);
    let residue = sigma / &(&s.adjoint() * &s);
    if !residue.is_constant() {
        return Err(Error::Certificate(format!(
            "spectral residue {residue} is not constant"
        )));
    }
    let value = residue.num().coeff(0) / residue.den().coeff(0);
    if !value.is_real() || !value.re().is_positive() {
        return Err(Error::Certificate(format!(
            "spectral residue {value} is not a positive real"
        )));
    }
    Ok((value.re().clone(), s))
}

/// Interior poles of the entries, with maximal orders. Rejects circle
/// poles: they abort the pivot order that produced them.
fn interior_poles(g: &RatMat) -> Result<Vec<(Scalar, usize)>> {
    let mut lcm = Poly::one();
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            let d = g.at(i, j).den();
            let common = lcm.gcd(d);
            lcm = (&lcm * d).div_exact(&common).expect("gcd divides");
        }
    }
    if lcm.is_constant() {
        return Ok(Vec::new());
    }
    let split = roots::split_inner_zeros_with(&lcm, CirclePolicy::Reject)?;
    Ok(split.inside)
}

/// Left-multiplies Blaschke-Potapov factors (weighted by `tags`) until no
/// entry has a pole inside the disk. Each factor projects away the leading
/// Laurent coefficient column by column, so the (order, rank) pair strictly
/// descends. Returns the analytic result and the list of zeros the factors
/// introduced into the determinant.
fn kill_interior_poles(g0: RatMat, tags: &[Quad]) -> Result<(RatMat, Vec<Scalar>)> {
    let mut g = g0;
    let mut kills = Vec::new();
    for _ in 0..256 {
        let poles = interior_poles(&g)?;
        let Some((alpha, order)) = poles
            .iter()
            .max_by(|a, b| a.1.cmp(&b.1))
            .cloned()
        else {
            return Ok((g, kills));
        };
        let lift = Poly::linear(&alpha).pow(order as u32);
        let lead: Vec<Vec<Scalar>> = (0..g.rows())
            .map(|i| {
                (0..g.cols())
                    .map(|j| {
                        let f = g.at(i, j);
                        RatFun::new(f.num() * &lift, f.den().clone())
                            .eval(&alpha)
                            .expect("order bound makes the product analytic")
                    })
                    .collect()
            })
            .collect();
        let mut u = None;
        'cols: for j in 0..g.cols() {
            for i in 0..g.rows() {
                if !lead[i][j].is_zero() {
                    u = Some((0..g.rows()).map(|r| lead[r][j].clone()).collect::<Vec<_>>());
                    break 'cols;
                }
            }
        }
        let u = u.ok_or_else(|| {
            Error::Certificate("pole of positive order with zero leading coefficient".into())
        })?;
        let e = BPFactor::new(alpha.clone(), u, tags.to_vec())?;
        g = e.matrix().mul(&g);
        kills.push(alpha);
    }
    Err(Error::Certificate("pole removal did not terminate".into()))
}

fn aggregate_zeros(kills: &[Scalar]) -> Vec<(Scalar, usize)> {
    let mut agg: Vec<(Scalar, usize)> = Vec::new();
    for alpha in kills {
        if let Some(entry) = agg.iter_mut().find(|(a, _)| a == alpha) {
            entry.1 += 1;
        } else {
            agg.push((alpha.clone(), 1));
        }
    }
    agg
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n > 5 {
        // Factorial blowup guard; the pivot search below only matters at
        // desk scale anyway.
        return vec![(0..n).collect()];
    }
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

pub(crate) fn diag_of_tags(tags: &[Quad]) -> RatMat {
    RatMat::from_fn(tags.len(), tags.len(), |i, j| {
        if i == j {
            RatFun::constant(quad_scalar(&tags[i]))
        } else {
            RatFun::zero()
        }
    })
}

/// Spectral factorization of a Hermitian rational matrix that is positive
/// semidefinite on the circle: returns `(g, tags)` with
/// `g^* diag(tags) g == q` exactly, `g` analytic in the closed disk, and
/// `det g` free of interior zeros (so `diag(sqrt(tags)) g` is outer).
pub(crate) fn spectral_outer(q: &RatMat) -> Result<(RatMat, Vec<Quad>)> {
    let r = q.rows();
    if r != q.cols() {
        return Err(Error::DimensionMismatch(format!(
            "spectral factorization of a {}x{} matrix",
            q.rows(),
            q.cols()
        )));
    }
    if q.adjoint() != *q {
        return Err(Error::Certificate("Gram matrix is not self-adjoint".into()));
    }
    if r == 0 {
        return Ok((RatMat::identity(0), Vec::new()));
    }
    let mut last = None;
    for perm in permutations(r) {
        match spectral_outer_order(q, &perm) {
            Ok(pair) => return Ok(pair),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one pivot order was tried"))
}

fn spectral_outer_order(q: &RatMat, perm: &[usize]) -> Result<(RatMat, Vec<Quad>)> {
    let r = q.rows();
    let (sigma, l) = field_ldl(q, perm)
        .ok_or_else(|| Error::Certificate("pivot vanished during diagonalization".into()))?;
    let mut tags = Vec::with_capacity(r);
    let mut s_prod = RatFun::one();
    let mut diag_s_entries = Vec::with_capacity(r);
    for pivot in &sigma {
        let (t, s) = scalar_spectral(pivot)?;
        tags.push(t);
        s_prod = &s_prod * &s;
        diag_s_entries.push(s);
    }
    let p_mat = RatMat::from_fn(r, r, |i, j| {
        if perm[i] == j {
            RatFun::one()
        } else {
            RatFun::zero()
        }
    });
    let diag_s = RatMat::from_fn(r, r, |i, j| {
        if i == j {
            diag_s_entries[i].clone()
        } else {
            RatFun::zero()
        }
    });
    let g0 = diag_s.mul(&l).mul(&p_mat);
    let (g1, kills) = kill_interior_poles(g0, &tags)?;
    let agg = aggregate_zeros(&kills);
    let (_chain, g) = weighted_left_chain_known(&g1, &tags, &agg)?;
    match g.analytic_in_disk()? {
        true => {}
        false => {
            return Err(Error::Certificate(
                "spectral factor kept a pole inside the disk".into(),
            ))
        }
    }
    if g.adjoint().mul(&diag_of_tags(&tags)).mul(&g) != *q {
        return Err(Error::Certificate("spectral factor fails the Gram identity".into()));
    }
    let ratio = &g.det() / &s_prod;
    if ratio.is_zero() || !ratio.is_constant() {
        return Err(Error::Certificate(
            "spectral factor determinant picked up extra zeros".into(),
        ));
    }
    Ok((g, tags))
}

/// Inner-outer factorization `f == theta.mat() * outer` (exactly, in stored
/// coordinates). The true factorization is
/// `f == [theta.mat() diag(1/sqrt(t))] * [diag(sqrt(t)) outer]`: the first
/// factor is inner with `rank` columns, the second is outer with full row
/// rank. The outer factor is therefore stored in row-tag coordinates, with
/// the same tags as `theta`.
#[derive(Debug, Clone)]
pub struct InnerOuter {
    pub theta: MatrixInner,
    pub outer: RatMat,
    pub rank: usize,
}

/// Factors a rational matrix function analytic in the closed disk into
/// inner times outer. Rejects the zero matrix, matrices with poles in the
/// closed disk, and inner content whose exact description leaves the
/// coefficient field.
pub fn inner_outer(f: &RatMat) -> Result<InnerOuter> {
    if f.rows() == 0 || f.cols() == 0 {
        return Err(Error::DimensionMismatch("factorization of an empty matrix".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroInput("factorization of the zero matrix".into()));
    }
    match f.analytic_in_disk()? {
        true => {}
        false => {
            return Err(Error::NotAnalytic(
                "input has a pole in the open disk".into(),
            ))
        }
    }
    let (n_mat, delta) = f.clear_denominators();
    let hnf = n_mat.hermite();
    let r = hnf.pivots.len();
    let inv_delta = RatFun::new(Poly::one(), delta);

    if r == f.rows() && f.rows() == f.cols() {
        // Square, full rank: the determinant carries the whole inner part,
        // and the polynomial left chain keeps every step exact.
        let det = n_mat.det();
        let split = roots::split_inner_zeros_with(&det, CirclePolicy::ToRemainder)?;
        let mut rest = n_mat;
        let mut chain = Vec::new();
        for (alpha, mult) in &split.inside {
            for _ in 0..*mult {
                let (e, next) = left_extract_poly(&rest, alpha)?;
                rest = next;
                chain.push(e);
            }
        }
        let n = f.rows();
        let m_mat = chain
            .iter()
            .fold(RatMat::identity(n), |acc, e| acc.mul(&e.matrix()));
        let outer = rest.to_ratmat().scale(&inv_delta);
        let theta = MatrixInner::new(m_mat, vec![Quad::one(); n])?;
        if theta.mat().mul(&outer) != *f {
            return Err(Error::Certificate("reassembly mismatch".into()));
        }
        return Ok(InnerOuter { theta, outer, rank: r });
    }

    // General case: write N = H V with H a polynomial full-column-rank core
    // and V a full-row-rank slice of a unimodular matrix, whose maximal
    // minors are coprime; all inner content lives in H.
    let all_rows: Vec<usize> = (0..n_mat.rows()).collect();
    let first_r: Vec<usize> = (0..r).collect();
    let all_cols: Vec<usize> = (0..n_mat.cols()).collect();
    let h0 = hnf.h.submatrix(&all_rows, &first_r);
    let v = hnf.u_inv.submatrix(&first_r, &all_cols);

    // Right chain: pull out the interior zeros of the minor gcd, where H
    // drops rank, so the remaining core has a clean Gram matrix.
    let minor_g = maximal_minor_gcd(&h0);
    let split = roots::split_inner_zeros_with(&minor_g, CirclePolicy::ToRemainder)?;
    let mut k_mat = h0;
    let mut w_chain: Vec<BPFactor> = Vec::new();
    for (alpha, mult) in &split.inside {
        for _ in 0..*mult {
            let (next, e) = right_extract_poly(&k_mat, alpha)?;
            k_mat = next;
            w_chain.push(e);
        }
    }
    let k_rat = k_mat.to_ratmat();
    let q = k_rat.adjoint().mul(&k_rat);
    let (g_hat, tags) = spectral_outer(&q)?;
    let m_hat = k_rat.mul(&g_hat.inverse()?);
    match m_hat.analytic_in_disk() {
        Ok(true) => {}
        Ok(false) => {
            return Err(Error::Certificate(
                "inner factor kept a pole inside the disk".into(),
            ))
        }
        Err(e) => return Err(e),
    }
    // Push the right chain through the outer core: W's interior zeros move
    // into a weighted left chain that joins the inner factor.
    let w_mat = w_chain
        .iter()
        .rev()
        .fold(RatMat::identity(r), |acc, e| acc.mul(&e.matrix()));
    let r_mat = g_hat.mul(&w_mat);
    let w_zeros =
        aggregate_zeros(&w_chain.iter().map(|e| e.alpha().clone()).collect::<Vec<_>>());
    let (m_w_chain, r_out) = weighted_left_chain_known(&r_mat, &tags, &w_zeros)?;
    let ratio = &r_out.det() / &g_hat.det();
    if ratio.is_zero() || !ratio.is_constant() {
        return Err(Error::Certificate(
            "inner content left behind in the outer core".into(),
        ));
    }
    let m_w = m_w_chain
        .iter()
        .fold(RatMat::identity(r), |acc, e| acc.mul(&e.matrix()));
    let m_mat = m_hat.mul(&m_w);
    let outer = r_out.mul(&v.to_ratmat()).scale(&inv_delta);
    let theta = MatrixInner::new(m_mat, tags)?;
    if theta.mat().mul(&outer) != *f {
        return Err(Error::Certificate("reassembly mismatch".into()));
    }
    if outer.rank() != r {
        return Err(Error::Certificate("outer factor lost rank".into()));
    }
    let v_gcd = maximal_minor_gcd(&v);
    if !v_gcd.is_constant() {
        return Err(Error::Certificate(
            "column-space slice has a nonconstant minor gcd".into(),
        ));
    }
    Ok(InnerOuter { theta, outer, rank: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn si(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sr(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

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

    fn root3(a: i64, an: i64, b: i64, bn: i64) -> Quad {
        // a/an + (b/bn) sqrt(3)
        Quad::with_root(
            BigRational::new(BigInt::from(a), BigInt::from(an)),
            BigRational::new(BigInt::from(b), BigInt::from(bn)),
            3,
        )
    }

    #[test]
    fn mobius_is_inner() {
        let alpha = sr(1, 2);
        let b = mobius(&alpha);
        assert_eq!(&b.adjoint() * &b, RatFun::one());
        assert!(b.eval(&alpha).unwrap().is_zero());
    }

    #[test]
    fn factor_identities_with_weights() {
        let alpha = sr(1, 2);
        let weights = vec![Quad::from_int(2), root3(1, 1, 1, 2)];
        let u = vec![si(1), Scalar::new(root3(-4, 1, 2, 1), Quad::zero())];
        let e = BPFactor::new(alpha.clone(), u, weights.clone()).unwrap();
        let d = diag_of_tags(&weights);
        let m = e.matrix();
        assert_eq!(m.adjoint().mul(&d).mul(&m), d);
        assert_eq!(m.det(), mobius(&alpha));
        assert_eq!(e.inverse_matrix().mul(&m), RatMat::identity(2));
    }

    #[test]
    fn factor_rejects_boundary_zero() {
        let err = BPFactor::new(si(1), vec![si(1)], vec![Quad::one()]).unwrap_err();
        assert!(matches!(err, Error::NotInner(_)));
    }

    #[test]
    fn bp_extract_peels_the_frozen_chain() {
        let m = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let zero = si(0);
        let (e1, rest1) = bp_extract(&m, &zero).unwrap();
        assert_eq!(
            e1.matrix(),
            rm(&[&[rf(&[1], &[1]), rf(&[0], &[1])], &[rf(&[0], &[1]), rf(&[0, 1], &[1])]])
        );
        assert_eq!(
            rest1,
            rm(&[&[rf(&[1], &[1]), rf(&[0], &[1])], &[rf(&[-1], &[1]), rf(&[0, 1], &[1])]])
        );
        let (e2, rest2) = bp_extract(&rest1, &zero).unwrap();
        assert_eq!(
            e2.matrix(),
            rm(&[
                &[rf(&[1, 1], &[2]), rf(&[-1, 1], &[2])],
                &[rf(&[-1, 1], &[2]), rf(&[1, 1], &[2])],
            ])
        );
        assert_eq!(
            rest2,
            rm(&[
                &[rf(&[1], &[1]), rf(&[1, -1], &[2])],
                &[rf(&[-1], &[1]), rf(&[1, 1], &[2])],
            ])
        );
        assert_eq!(e1.matrix().mul(&e2.matrix()).mul(&rest2), m);
    }

    #[test]
    fn left_chain_adds_up_exactly() {
        let m = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let weights = vec![Quad::one(); 2];
        let (chain, rest) = weighted_left_chain_known(&m, &weights, &[(si(0), 2)]).unwrap();
        assert_eq!(chain.len(), 2);
        let acc = chain
            .iter()
            .fold(RatMat::identity(2), |a, e| a.mul(&e.matrix()));
        assert_eq!(
            acc,
            rm(&[
                &[rf(&[1, 1], &[2]), rf(&[-1, 1], &[2])],
                &[rf(&[0, -1, 1], &[2]), rf(&[0, 1, 1], &[2])],
            ])
        );
        assert_eq!(
            rest,
            rm(&[
                &[rf(&[1], &[1]), rf(&[1, -1], &[2])],
                &[rf(&[-1], &[1]), rf(&[1, 1], &[2])],
            ])
        );
        assert_eq!(acc.mul(&rest), m);
    }

    fn frozen_gram() -> RatMat {
        // [[2, (1-z)/z], [z-1, (3z - 1 - z^2)/z]]
        rm(&[
            &[rf(&[2], &[1]), rf(&[1, -1], &[0, 1])],
            &[rf(&[-1, 1], &[1]), rf(&[-1, 3, -1], &[0, 1])],
        ])
    }

    #[test]
    fn ldl_frozen_pivots() {
        let q = frozen_gram();
        let (sigma, l) = field_ldl(&q, &[0, 1]).unwrap();
        assert_eq!(sigma[0], rf(&[2], &[1]));
        assert_eq!(sigma[1], rf(&[-1, 4, -1], &[0, 2]));
        assert_eq!(*l.at(0, 1), rf(&[1, -1], &[0, 2]));
        let diag = RatMat::from_fn(2, 2, |i, j| {
            if i == j {
                sigma[i].clone()
            } else {
                RatFun::zero()
            }
        });
        assert_eq!(l.adjoint().mul(&diag).mul(&l), q);
    }

    #[test]
    fn scalar_spectral_frozen_values() {
        // (4 - z - 1/z)/2 = t * s^* s with t = (2 + sqrt 3)/2, s = 1 - (2 - sqrt 3) z
        let (t, s) = scalar_spectral(&rf(&[-1, 4, -1], &[0, 2])).unwrap();
        assert_eq!(t, root3(1, 1, 1, 2));
        let beta = Scalar::new(root3(2, 1, -1, 1), Quad::zero());
        let expect = RatFun::from_poly(Poly::new(vec![Scalar::one(), -beta]));
        assert_eq!(s, expect);

        // 2 - z - 1/z: boundary zero pair at 1, s = z - 1, t = 1
        let (t, s) = scalar_spectral(&rf(&[-1, 2, -1], &[0, 1])).unwrap();
        assert_eq!(t, Quad::one());
        assert_eq!(s, rf(&[-1, 1], &[1]));

        // constants pass through
        let (t, s) = scalar_spectral(&rf(&[2], &[1])).unwrap();
        assert_eq!(t, Quad::from_int(2));
        assert_eq!(s, RatFun::one());

        // not self-adjoint
        assert!(scalar_spectral(&rf(&[0, 1], &[1])).is_err());
        // negative on the circle
        assert!(scalar_spectral(&rf(&[-1], &[1])).is_err());
    }

    #[test]
    fn spectral_outer_certificates() {
        let q = frozen_gram();
        let (g, tags) = spectral_outer(&q).unwrap();
        assert_eq!(tags, vec![Quad::from_int(2), root3(1, 1, 1, 2)]);
        assert_eq!(g.adjoint().mul(&diag_of_tags(&tags)).mul(&g), q);
        assert!(g.analytic_in_disk().unwrap());
        // the determinant keeps exactly the outer zero at 1/(2 - sqrt 3)
        assert_eq!(g.det().num().degree(), Some(1));
    }

    #[test]
    fn spectral_outer_rejects_singular_gram() {
        let q = rm(&[
            &[rf(&[1], &[1]), rf(&[1], &[1])],
            &[rf(&[1], &[1]), rf(&[1], &[1])],
        ]);
        assert!(spectral_outer(&q).is_err());
    }

    #[test]
    fn inner_outer_shift_matrix() {
        let f = rm(&[
            &[rf(&[0, 1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[0, 1], &[1])],
        ]);
        let io = inner_outer(&f).unwrap();
        assert_eq!(io.rank, 2);
        assert_eq!(*io.theta.mat(), f);
        assert_eq!(io.theta.tags(), &[Quad::one(), Quad::one()]);
        assert_eq!(io.outer, RatMat::identity(2));
    }

    #[test]
    fn inner_outer_square_frozen() {
        let f = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let io = inner_outer(&f).unwrap();
        assert_eq!(io.rank, 2);
        assert_eq!(
            *io.theta.mat(),
            rm(&[
                &[rf(&[1, 1], &[2]), rf(&[-1, 1], &[2])],
                &[rf(&[0, -1, 1], &[2]), rf(&[0, 1, 1], &[2])],
            ])
        );
        assert_eq!(
            io.outer,
            rm(&[
                &[rf(&[1], &[1]), rf(&[1, -1], &[2])],
                &[rf(&[-1], &[1]), rf(&[1, 1], &[2])],
            ])
        );
        assert_eq!(io.theta.blaschke_degree().unwrap(), 2);
    }

    #[test]
    fn inner_outer_tall_column_with_content() {
        let f = rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0, 1], &[1])]]);
        let io = inner_outer(&f).unwrap();
        assert_eq!(io.rank, 1);
        assert_eq!(*io.theta.mat(), f);
        assert_eq!(io.theta.tags(), &[Quad::from_int(2)]);
        assert_eq!(io.outer, RatMat::identity(1));
    }

    #[test]
    fn inner_outer_tall_column_no_content() {
        let f = rm(&[&[rf(&[1], &[1])], &[rf(&[0, 1], &[1])]]);
        let io = inner_outer(&f).unwrap();
        assert_eq!(io.rank, 1);
        assert_eq!(*io.theta.mat(), f);
        assert_eq!(io.theta.tags(), &[Quad::from_int(2)]);
        assert_eq!(io.outer, RatMat::identity(1));
    }

    #[test]
    fn inner_outer_rejections() {
        let zero = RatMat::zero(2, 2);
        assert!(matches!(inner_outer(&zero), Err(Error::ZeroInput(_))));

        let inside_pole = rm(&[&[RatFun::new(p(&[1]), p(&[-1, 2]))]]);
        assert!(matches!(inner_outer(&inside_pole), Err(Error::NotAnalytic(_))));

        let circle_pole = rm(&[&[RatFun::new(p(&[1]), p(&[-1, 1]))]]);
        assert!(matches!(inner_outer(&circle_pole), Err(Error::PoleOnCircle(_))));
    }

    #[test]
    fn matrix_inner_certificate() {
        let col = rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0, 1], &[1])]]);
        assert!(MatrixInner::new(col.clone(), vec![Quad::from_int(2)]).is_ok());
        assert!(matches!(
            MatrixInner::new(col.clone(), vec![Quad::from_int(3)]),
            Err(Error::NotInner(_))
        ));
        assert!(MatrixInner::from_plain(col).is_err());
        let diag = rm(&[
            &[rf(&[0, 1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
        ]);
        assert!(MatrixInner::from_plain(diag).is_ok());
    }

    #[test]
    fn is_inner_witnesses() {
        let good = rm(&[
            &[rf(&[0, 1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
        ]);
        let check = is_inner(&good).unwrap();
        assert!(check.is_inner);
        assert!(check.witness.is_none());

        let not_isometric = rm(&[&[rf(&[-1, 1], &[1])]]);
        let check = is_inner(&not_isometric).unwrap();
        assert!(!check.is_inner);
        assert!(check.witness.unwrap().contains("Gram"));

        let circle_pole = rm(&[&[RatFun::new(p(&[1]), p(&[-1, 1]))]]);
        let check = is_inner(&circle_pole).unwrap();
        assert!(!check.is_inner);
        assert!(check.witness.unwrap().contains("circle"));
    }

    #[test]
    fn membership_in_the_generated_subspace() {
        let f = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let theta = inner_outer(&f).unwrap().theta;
        let member = theta.mat().mul(&rm(&[&[rf(&[1], &[1])], &[rf(&[0, 1], &[1])]]));
        assert!(theta.contains(&member).unwrap());
        let shifted = member.scale(&rf(&[0, 1], &[1]));
        assert!(theta.contains(&shifted).unwrap());
        let outside = rm(&[&[rf(&[1], &[1])], &[rf(&[0], &[1])]]);
        assert!(!theta.contains(&outside).unwrap());
    }

    #[test]
    fn right_unitary_equivalence() {
        let f = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let a = inner_outer(&f).unwrap().theta;
        assert!(equal_up_to_right_unitary(&a, &a).unwrap());

        // rotate by a rational orthogonal matrix
        let u = rm(&[
            &[rf(&[3], &[5]), rf(&[-4], &[5])],
            &[rf(&[4], &[5]), rf(&[3], &[5])],
        ]);
        let b = MatrixInner::from_plain(a.mat().mul(&u)).unwrap();
        assert!(equal_up_to_right_unitary(&a, &b).unwrap());
        assert!(equal_up_to_right_unitary(&b, &a).unwrap());

        // different subspaces
        let za = MatrixInner::from_plain(rm(&[
            &[rf(&[0, 1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
        ]))
        .unwrap();
        let zb = MatrixInner::from_plain(rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[0, 1], &[1])],
        ]))
        .unwrap();
        assert!(!equal_up_to_right_unitary(&za, &zb).unwrap());

        // same subspace under different tag scalings
        let c1 = MatrixInner::new(
            rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0, 1], &[1])]]),
            vec![Quad::from_int(2)],
        )
        .unwrap();
        let c2 = MatrixInner::new(
            rm(&[&[rf(&[0, 2], &[1])], &[rf(&[0, 2], &[1])]]),
            vec![Quad::from_int(8)],
        )
        .unwrap();
        assert!(equal_up_to_right_unitary(&c1, &c2).unwrap());
    }

    #[test]
    fn empty_inner_function() {
        let e = MatrixInner::empty(3);
        assert!(e.verify().is_ok());
        assert!(equal_up_to_right_unitary(&e, &MatrixInner::empty(3)).unwrap());
        assert!(e.contains(&RatMat::zero(3, 1)).unwrap());
        let e1 = rm(&[&[rf(&[1], &[1])], &[rf(&[0], &[1])], &[rf(&[0], &[1])]]);
        assert!(!e.contains(&e1).unwrap());
    }

    #[test]
    fn unitary_defect_is_small_for_true_inners() {
        let f = rm(&[&[rf(&[0, 1], &[1])], &[rf(&[0, 1], &[1])]]);
        let theta = inner_outer(&f).unwrap().theta;
        assert!(theta.unitary_defect(32) < 1e-12);
    }
}
