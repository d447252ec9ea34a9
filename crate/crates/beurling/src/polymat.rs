//! Matrices over the polynomial ring and over the rational-function field.
//!
//! The workhorse is the column Hermite normal form with full unimodular
//! transform tracking: it yields pure (direct-summand) kernel bases of
//! polynomial matrices, bases of interpolation modules, and full-rank
//! factorizations. Determinants of polynomial matrices are computed
//! fraction-free; everything is exact.

use crate::poly::Poly;
use crate::ratfun::RatFun;
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::fmt;

/// Dense matrix of polynomials, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

/// Dense matrix of rational functions, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<RatFun>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Poly>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        PolyMat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        PolyMat::from_fn(rows, cols, |_, _| Poly::zero())
    }

    pub fn identity(n: usize) -> Self {
        PolyMat::from_fn(n, n, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn transpose(&self) -> PolyMat {
        PolyMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        PolyMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Poly::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * other.at(k, j));
            }
            acc
        })
    }

    pub fn add(&self, other: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyMat {
        PolyMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * p)
    }

    pub fn scale(&self, c: &Scalar) -> PolyMat {
        PolyMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).scale(c))
    }

    /// Entrywise exact division; `None` if any entry is not divisible.
    pub fn div_exact_poly(&self, p: &Poly) -> Option<PolyMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for entry in &self.data {
            data.push(entry.div_exact(p)?);
        }
        Some(PolyMat { rows: self.rows, cols: self.cols, data })
    }

    pub fn eval(&self, z: &Scalar) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).eval(z)).collect())
            .collect()
    }

    pub fn to_ratmat(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| {
            RatFun::from_poly(self.at(i, j).clone())
        })
    }

    pub fn hstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.rows, other.rows);
        PolyMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, other.cols);
        PolyMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, row_keep: &[usize], col_keep: &[usize]) -> PolyMat {
        PolyMat::from_fn(row_keep.len(), col_keep.len(), |i, j| {
            self.at(row_keep[i], col_keep[j]).clone()
        })
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(Poly::degree).max()
    }

    /// Determinant by fraction-free Bareiss elimination; every intermediate
    /// division is exact in the polynomial ring.
    pub fn det(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "determinant of a nonsquare matrix");
        let n = self.rows;
        if n == 0 {
            return Poly::one();
        }
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut sign = false;
        let mut prev = Poly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = !sign;
                    }
                    None => return Poly::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t
                        .div_exact(&prev)
                        .expect("Bareiss division must be exact");
                }
                m[i][k] = Poly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign {
            -&d
        } else {
            d
        }
    }

    /// Classical adjugate: `self * adjugate = det * identity`.
    pub fn adjugate(&self) -> PolyMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return PolyMat::identity(0);
        }
        if n == 1 {
            return PolyMat::identity(1);
        }
        let indices: Vec<usize> = (0..n).collect();
        PolyMat::from_fn(n, n, |i, j| {
            // adj[i][j] = (-1)^{i+j} * minor with row j and column i removed
            let rows_kept: Vec<usize> = indices.iter().copied().filter(|&r| r != j).collect();
            let cols_kept: Vec<usize> = indices.iter().copied().filter(|&c| c != i).collect();
            let minor = self.submatrix(&rows_kept, &cols_kept).det();
            if (i + j) % 2 == 0 {
                minor
            } else {
                -&minor
            }
        })
    }

    /// Column degrees (`None` for zero columns).
    pub fn column_degrees(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).filter_map(|i| self.at(i, j).degree()).max())
            .collect()
    }

    /// Column Hermite normal form `self * u = h` with both `u` and its
    /// inverse tracked; `u` is unimodular.
    pub fn hermite(&self) -> Hnf {
        let mut h = self.clone();
        let mut u = PolyMat::identity(self.cols);
        let mut u_inv = PolyMat::identity(self.cols);
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;

        // elementary column operations, mirrored into u and u_inv
        fn col_swap(h: &mut PolyMat, u: &mut PolyMat, u_inv: &mut PolyMat, a: usize, b: usize) {
            for i in 0..h.rows {
                h.data.swap(i * h.cols + a, i * h.cols + b);
            }
            for i in 0..u.rows {
                u.data.swap(i * u.cols + a, i * u.cols + b);
            }
            let n = u_inv.cols;
            for j in 0..n {
                u_inv.data.swap(a * n + j, b * n + j);
            }
        }
        // col[dst] += q * col[src]; inverse: row[src] -= q * row[dst] in u_inv
        fn col_addmul(
            h: &mut PolyMat,
            u: &mut PolyMat,
            u_inv: &mut PolyMat,
            dst: usize,
            src: usize,
            q: &Poly,
        ) {
            for i in 0..h.rows {
                let t = &(h.at(i, src) * q) + h.at(i, dst);
                h.set(i, dst, t);
            }
            for i in 0..u.rows {
                let t = &(u.at(i, src) * q) + u.at(i, dst);
                u.set(i, dst, t);
            }
            let n = u_inv.cols;
            for j in 0..n {
                let t = &u_inv.data[src * n + j] - &(&u_inv.data[dst * n + j] * q);
                u_inv.data[src * n + j] = t;
            }
        }
        fn col_scale(h: &mut PolyMat, u: &mut PolyMat, u_inv: &mut PolyMat, j: usize, c: &Scalar) {
            for i in 0..h.rows {
                let t = h.at(i, j).scale(c);
                h.set(i, j, t);
            }
            for i in 0..u.rows {
                let t = u.at(i, j).scale(c);
                u.set(i, j, t);
            }
            let inv = c.inverse();
            let n = u_inv.cols;
            for k in 0..n {
                let t = u_inv.data[j * n + k].scale(&inv);
                u_inv.data[j * n + k] = t;
            }
        }

        for i in 0..self.rows {
            if r == self.cols {
                break;
            }
            // Euclidean reduction of row i across columns r..cols.
            loop {
                let mut best: Option<usize> = None;
                for j in r..self.cols {
                    if h.at(i, j).is_zero() {
                        continue;
                    }
                    best = match best {
                        None => Some(j),
                        Some(b) if h.at(i, j).degree() < h.at(i, b).degree() => Some(j),
                        keep => keep,
                    };
                }
                let Some(jmin) = best else { break };
                if jmin != r {
                    col_swap(&mut h, &mut u, &mut u_inv, jmin, r);
                }
                let mut dirty = false;
                for j in r + 1..self.cols {
                    if h.at(i, j).is_zero() {
                        continue;
                    }
                    let (q, rem) = h.at(i, j).divmod(h.at(i, r));
                    if !q.is_zero() {
                        col_addmul(&mut h, &mut u, &mut u_inv, j, r, &(-&q));
                    }
                    if !rem.is_zero() {
                        dirty = true;
                    }
                }
                if !dirty {
                    break;
                }
            }
            if h.at(i, r).is_zero() {
                continue;
            }
            // Normalize the pivot monic and reduce earlier columns at row i.
            let lead_inv = h.at(i, r).leading().unwrap().inverse();
            if !lead_inv.is_one() {
                col_scale(&mut h, &mut u, &mut u_inv, r, &lead_inv);
            }
            for k in 0..r {
                let (q, _) = h.at(i, k).divmod(h.at(i, r));
                if !q.is_zero() {
                    col_addmul(&mut h, &mut u, &mut u_inv, k, r, &(-&q));
                }
            }
            pivots.push((i, r));
            r += 1;
        }
        Hnf { h, u, u_inv, pivots }
    }

    /// Rank over the rational-function field.
    pub fn rank(&self) -> usize {
        self.hermite().pivots.len()
    }

    /// Pure polynomial basis of the right kernel: columns `k` with
    /// `self * k = 0`, extendable to a unimodular matrix. Columns are
    /// normalized so their first nonzero entry is monic.
    pub fn kernel_basis(&self) -> PolyMat {
        let hnf = self.hermite();
        let rank = hnf.pivots.len();
        let cols: Vec<usize> = (rank..self.cols).collect();
        let all_rows: Vec<usize> = (0..self.cols).collect();
        let mut k = hnf.u.submatrix(&all_rows, &cols);
        for j in 0..k.cols {
            if let Some(lead) = (0..k.rows).find_map(|i| {
                let p = k.at(i, j);
                if p.is_zero() {
                    None
                } else {
                    Some(p.leading().unwrap().clone())
                }
            }) {
                let inv = lead.inverse();
                for i in 0..k.rows {
                    let t = k.at(i, j).scale(&inv);
                    k.set(i, j, t);
                }
            }
        }
        k
    }

    /// Column-reduces a full-column-rank matrix so its column degrees are
    /// minimal among all right-unimodular transforms. Returns the reduced
    /// matrix and its column degrees.
    pub fn column_reduce(&self) -> (PolyMat, Vec<usize>) {
        let mut m = self.clone();
        loop {
            let degs = m.column_degrees();
            assert!(
                degs.iter().all(Option::is_some),
                "column_reduce requires full column rank"
            );
            // leading-coefficient matrix at per-column degrees
            let lead: Vec<Vec<Scalar>> = (0..m.rows)
                .map(|i| {
                    (0..m.cols)
                        .map(|j| m.at(i, j).coeff(degs[j].unwrap()))
                        .collect()
                })
                .collect();
            let ker = scalar_kernel_basis(&lead);
            let Some(c) = ker.first() else {
                let out_degs = degs.into_iter().map(Option::unwrap).collect();
                return (m, out_degs);
            };
            // cancel the top coefficient of the highest-degree participating column
            let jstar = (0..m.cols)
                .filter(|&j| !c[j].is_zero())
                .max_by_key(|&j| degs[j].unwrap())
                .unwrap();
            let dstar = degs[jstar].unwrap();
            let cstar_inv = c[jstar].inverse();
            for j in 0..m.cols {
                if j == jstar || c[j].is_zero() {
                    continue;
                }
                let shift = dstar - degs[j].unwrap();
                let factor = Poly::monomial(shift, c[j].clone() * cstar_inv.clone());
                for i in 0..m.rows {
                    let t = m.at(i, jstar) + &(m.at(i, j) * &factor);
                    m.set(i, jstar, t);
                }
            }
            debug_assert!(m.column_degrees()[jstar].map_or(true, |d| d < dstar));
        }
    }
}

/// Result of the column Hermite reduction: `a * u = h`, `u * u_inv = I`.
pub struct Hnf {
    pub h: PolyMat,
    pub u: PolyMat,
    pub u_inv: PolyMat,
    /// `(row, col)` positions of the staircase pivots in `h`.
    pub pivots: Vec<(usize, usize)>,
}

/// Basis of the interpolation module `{u : b * u == 0 mod p}` as the columns
/// of a square nonsingular polynomial matrix.
///
/// The module always has full rank: it contains `p * I`. The basis comes
/// from a pure kernel basis of `[b | -p*I]`, so it generates the whole
/// module; `det` divides `p^cols` up to a constant.
pub fn interpolation_module_basis(b: &PolyMat, p: &Poly) -> Result<PolyMat> {
    if p.is_zero() {
        return Err(Error::ZeroInput("interpolation modulus is zero".into()));
    }
    let k = b.rows();
    let m = b.cols();
    let minus_p_i = PolyMat::from_fn(k, k, |i, j| {
        if i == j {
            -p
        } else {
            Poly::zero()
        }
    });
    let stacked = b.hstack(&minus_p_i);
    let kernel = stacked.kernel_basis();
    if kernel.cols() != m {
        return Err(Error::Certificate(format!(
            "interpolation kernel has dimension {} instead of {m}",
            kernel.cols()
        )));
    }
    let top_rows: Vec<usize> = (0..m).collect();
    let all_cols: Vec<usize> = (0..m).collect();
    let g = kernel.submatrix(&top_rows, &all_cols);
    if g.det().is_zero() {
        return Err(Error::Certificate(
            "interpolation basis is singular".into(),
        ));
    }
    // certificate: b*g vanishes mod p
    let bg = b.mul(&g);
    for i in 0..bg.rows() {
        for j in 0..bg.cols() {
            if bg.at(i, j).div_exact(p).is_none() {
                return Err(Error::Certificate(
                    "interpolation basis does not satisfy the congruence".into(),
                ));
            }
        }
    }
    Ok(g)
}

impl fmt::Display for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl RatMat {
    pub fn new(rows: usize, cols: usize, data: Vec<RatFun>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length mismatch");
        RatMat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatFun) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMat { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat::from_fn(rows, cols, |_, _| RatFun::zero())
    }

    pub fn identity(n: usize) -> Self {
        RatMat::from_fn(n, n, |i, j| if i == j { RatFun::one() } else { RatFun::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &RatFun {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: RatFun) {
        self.data[i * self.cols + j] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(RatFun::is_zero)
    }

    pub fn transpose(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Circle adjoint: conjugate transpose with the coordinate inverted,
    /// `A*(z) = conj(A(1/conj(z)))^T`; on the circle it is the pointwise
    /// conjugate transpose.
    pub fn adjoint(&self) -> RatMat {
        RatMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).adjoint())
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        RatMat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = RatFun::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * other.at(k, j));
            }
            acc
        })
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    pub fn scale(&self, f: &RatFun) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * f)
    }

    pub fn hstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.rows, other.rows);
        RatMat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.cols);
        RatMat::from_fn(self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn submatrix(&self, row_keep: &[usize], col_keep: &[usize]) -> RatMat {
        RatMat::from_fn(row_keep.len(), col_keep.len(), |i, j| {
            self.at(row_keep[i], col_keep[j]).clone()
        })
    }

    pub fn eval(&self, z: &Scalar) -> Option<Vec<Vec<Scalar>>> {
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                row.push(self.at(i, j).eval(z)?);
            }
            out.push(row);
        }
        Some(out)
    }

    /// Common denominator split: returns `(n, d)` with `self = n / d`,
    /// `d` the monic least common multiple of the entry denominators.
    pub fn clear_denominators(&self) -> (PolyMat, Poly) {
        let mut den = Poly::one();
        for f in &self.data {
            let g = den.gcd(f.den());
            den = &den * &f.den().div_exact(&g).unwrap();
        }
        let num = PolyMat::from_fn(self.rows, self.cols, |i, j| {
            let f = self.at(i, j);
            let cof = den.div_exact(f.den()).unwrap();
            f.num() * &cof
        });
        (num, den)
    }

    /// Rank over the rational-function field, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<RatFun>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = m[rank][col].inverse();
            for j in col..self.cols {
                m[rank][j] = &m[rank][j] * &inv;
            }
            for i in 0..self.rows {
                if i != rank && !m[i][col].is_zero() {
                    let factor = m[i][col].clone();
                    for j in col..self.cols {
                        m[i][j] = &m[i][j] - &(&factor * &m[rank][j]);
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> RatFun {
        assert_eq!(self.rows, self.cols, "determinant of a nonsquare matrix");
        let (n, d) = self.clear_denominators();
        let det_n = n.det();
        let dd = d.pow(self.rows as u32);
        RatFun::new(det_n, dd)
    }

    /// Inverse of a square nonsingular matrix.
    pub fn inverse(&self) -> Result<RatMat> {
        assert_eq!(self.rows, self.cols);
        let (n, d) = self.clear_denominators();
        let det_n = n.det();
        if det_n.is_zero() {
            return Err(Error::ZeroInput("inverse of a singular matrix".into()));
        }
        let adj = n.adjugate();
        // self = n/d, so self^{-1} = d * adj(n) / det(n)
        let factor = RatFun::new(d, det_n);
        Ok(adj.to_ratmat().scale(&factor))
    }

    /// True when every entry is analytic in the closed unit disk.
    pub fn analytic_in_disk(&self) -> Result<bool> {
        for f in &self.data {
            if !f.analytic_in_disk()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Entrywise Riesz projection onto analytic parts.
    pub fn riesz_analytic(&self) -> Result<RatMat> {
        let mut data = Vec::with_capacity(self.data.len());
        for f in &self.data {
            data.push(f.riesz_analytic()?);
        }
        Ok(RatMat { rows: self.rows, cols: self.cols, data })
    }
}

impl fmt::Display for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn scalar_rref(m: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].inverse();
        for j in col..cols {
            m[rank][j] = m[rank][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != rank && !m[i][col].is_zero() {
                let factor = m[i][col].clone();
                for j in col..cols {
                    m[i][j] = m[i][j].clone() - factor.clone() * m[rank][j].clone();
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel of a scalar matrix, in the reduced-echelon
/// order: one vector per free column, free columns ascending.
pub fn scalar_kernel_basis(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut work: Vec<Vec<Scalar>> = m.to_vec();
    let pivots = scalar_rref(&mut work);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Scalar::zero(); cols];
            v[fc] = Scalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -work[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Rank of a scalar matrix.
pub fn scalar_rank(m: &[Vec<Scalar>]) -> usize {
    let mut work: Vec<Vec<Scalar>> = m.to_vec();
    scalar_rref(&mut work).len()
}

/// Solves `a x = b` exactly; `None` when inconsistent. When the system is
/// underdetermined the reduced-echelon particular solution (free variables
/// zero) is returned.
pub fn scalar_solve(a: &[Vec<Scalar>], b: &[Scalar]) -> Option<Vec<Scalar>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut work: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = scalar_rref(&mut work);
    if pivots.contains(&cols) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Scalar::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = work[r][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(rows: usize, cols: usize, entries: &[&[i64]]) -> PolyMat {
        PolyMat::from_fn(rows, cols, |i, j| {
            Poly::from_ints(entries[i * cols + j])
        })
    }

    #[test]
    fn bareiss_det_matches_cofactor_expansion() {
        // 3x3 with polynomial entries
        let m = pm(
            3,
            3,
            &[
                &[1, 1],
                &[0, 0, 1],
                &[2],
                &[1],
                &[0, 1],
                &[1, 1, 1],
                &[0, 2],
                &[3],
                &[1, 0, 0, 1],
            ],
        );
        let det = m.det();
        // cofactor expansion along the first row
        let minor = |r: usize, c: usize| {
            let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
            m.submatrix(&rows, &cols).det()
        };
        let expect = &(&(m.at(0, 0) * &minor(0, 0)) - &(m.at(0, 1) * &minor(0, 1)))
            + &(m.at(0, 2) * &minor(0, 2));
        assert_eq!(det, expect);
    }

    #[test]
    fn adjugate_certificate() {
        let m = pm(2, 2, &[&[1, 1], &[2], &[0, 1], &[3, 0, 1]]);
        let adj = m.adjugate();
        let prod = m.mul(&adj);
        let det = m.det();
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { det.clone() } else { Poly::zero() };
                assert_eq!(prod.at(i, j), &expect);
            }
        }
    }

    #[test]
    fn hermite_certificates() {
        let a = pm(
            2,
            3,
            &[&[0, 1], &[1, 1], &[2], &[0, 0, 1], &[1], &[0, 1]],
        );
        let hnf = a.hermite();
        assert_eq!(a.mul(&hnf.u), hnf.h);
        assert_eq!(hnf.u.mul(&hnf.u_inv), PolyMat::identity(3));
        assert_eq!(hnf.u_inv.mul(&hnf.u), PolyMat::identity(3));
        assert!(hnf.u.det().is_constant());
        assert!(!hnf.u.det().is_zero());
    }

    #[test]
    fn kernel_basis_is_pure() {
        // D = [z(z-1), z]: kernel generated by (1, -(z-1)) primitively
        let d = PolyMat::new(
            1,
            2,
            vec![
                &Poly::z() * &Poly::from_ints(&[-1, 1]),
                Poly::z(),
            ],
        );
        let k = d.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(d.mul(&k).is_zero());
        // primitive: the two entries are coprime
        let g = k.at(0, 0).gcd(k.at(1, 0));
        assert!(g.is_constant());
    }

    #[test]
    fn interpolation_module_smallest_example() {
        // {u in C[z]^2 : u1 + u2 == 0 mod z}
        let b = PolyMat::new(1, 2, vec![Poly::one(), Poly::one()]);
        let g = interpolation_module_basis(&b, &Poly::z()).unwrap();
        // det must be a constant multiple of z: the module has index 1 over p*C^2
        let det = g.det();
        assert_eq!(det.degree(), Some(1));
        // both columns satisfy the congruence
        let bg = b.mul(&g);
        for j in 0..2 {
            assert!(bg.at(0, j).div_exact(&Poly::z()).is_some());
        }
        // p * I lies in the column module: adj(g) * p / det integral
        let adj = g.adjugate();
        let scaled = adj.scale_poly(&Poly::z());
        assert!(scaled.div_exact_poly(&det.monic()).is_some());
    }

    #[test]
    fn column_reduction_minimizes_degrees() {
        // columns [z^2, z^3+z] and [z, z^2]: second column times z matches the
        // first column's top term, so reduction must drop a degree.
        let m = PolyMat::new(
            2,
            2,
            vec![
                Poly::from_ints(&[0, 0, 1]),
                Poly::from_ints(&[0, 1]),
                Poly::from_ints(&[0, 1, 0, 1]),
                Poly::from_ints(&[0, 0, 1]),
            ],
        );
        let (reduced, degs) = m.column_reduce();
        // the column span is preserved: ranks agree and reduced degrees are minimal
        assert_eq!(reduced.rank(), 2);
        let mut sorted = degs.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 1]);
    }

    #[test]
    fn ratmat_rank_and_inverse() {
        let m = RatMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => RatFun::z(),
            (0, 1) => RatFun::one(),
            (1, 0) => RatFun::from_poly(Poly::from_ints(&[0, 0, 1])),
            (1, 1) => RatFun::z(),
            _ => unreachable!(),
        });
        // rows are dependent: (z, 1) * z = (z^2, z)
        assert_eq!(m.rank(), 1);
        let n = RatMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => RatFun::z(),
            (0, 1) => RatFun::one(),
            (1, 0) => RatFun::one(),
            (1, 1) => RatFun::z(),
            _ => unreachable!(),
        });
        let inv = n.inverse().unwrap();
        assert_eq!(n.mul(&inv), RatMat::identity(2));
    }

    #[test]
    fn adjoint_is_conjugate_transpose_on_circle() {
        let m = RatMat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => RatFun::z(),
            (0, 1) => RatFun::constant(Scalar::from_parts(1, 2, 3)),
            (1, 0) => RatFun::z_bar(),
            (1, 1) => RatFun::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[-3, 1])),
            _ => unreachable!(),
        });
        let omega = Scalar::from_parts(3, 4, 5); // on the circle
        let a = m.adjoint().eval(&omega).unwrap();
        let b = m.eval(&omega).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(a[i][j], b[j][i].conj());
            }
        }
    }

    #[test]
    fn scalar_kernel_first_vector_convention() {
        // x + y + z = 0 over the field: free columns 1, 2
        let m = vec![vec![Scalar::one(), Scalar::one(), Scalar::one()]];
        let k = scalar_kernel_basis(&m);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![-Scalar::one(), Scalar::one(), Scalar::zero()]);
        assert_eq!(k[1], vec![-Scalar::one(), Scalar::zero(), Scalar::one()]);
    }

    #[test]
    fn scalar_solve_roundtrip() {
        let a = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(-1)],
        ];
        let b = vec![Scalar::from_int(5), Scalar::from_int(1)];
        let x = scalar_solve(&a, &b).unwrap();
        assert_eq!(x, vec![Scalar::from_int(2), Scalar::from_int(1)]);
        let inconsistent = scalar_solve(
            &[vec![Scalar::one()], vec![Scalar::one()]],
            &[Scalar::zero(), Scalar::one()],
        );
        assert!(inconsistent.is_none());
    }

    #[test]
    fn clear_denominators_roundtrip() {
        let m = RatMat::from_fn(1, 2, |_, j| {
            if j == 0 {
                RatFun::new(Poly::one(), Poly::from_ints(&[-2, 1]))
            } else {
                RatFun::new(Poly::z(), Poly::from_ints(&[-3, 1]))
            }
        });
        let (n, d) = m.clear_denominators();
        assert_eq!(d.degree(), Some(2));
        for j in 0..2 {
            let back = RatFun::new(n.at(0, j).clone(), d.clone());
            assert_eq!(&back, m.at(0, j));
        }
    }
}
