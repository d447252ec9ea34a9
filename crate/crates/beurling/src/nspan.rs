//! Symbols with free function entries, and independency modulo the
//! Nevanlinna class.
//!
//! Every rational function on the circle is a quotient of bounded analytic
//! functions, so rational entries carry no information modulo that class.
//! What does carry information are the free entries: opaque atoms that
//! stand for arbitrary bounded functions chosen independent of everything
//! rational. An entry is stored as `rational + sum_k coeff_k * atom_k` with
//! rational-function coefficients; the independency of a family of columns
//! is then the rank of the stacked atom-coefficient matrix over the
//! rational-function field.
//!
//! The kernel of the Hankel operator of such a symbol splits into two exact
//! stages: the atom part forces `C f == 0` pointwise (an exact syzygy
//! computation), the rational part forces the product to stay analytic (an
//! interpolation module, as for plain rational symbols).

use std::collections::BTreeMap;

use crate::hankel::HankelSymbol;
use crate::inner::{self, MatrixInner};
use crate::polymat::{PolyMat, RatMat};
use crate::ratfun::RatFun;
use crate::roots::{self, CirclePolicy};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Opaque name for one free function entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(u64);

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// Monotone source of fresh atoms; two different calls never collide.
#[derive(Debug, Default)]
pub struct AtomGen {
    next: u64,
}

impl AtomGen {
    pub fn new() -> Self {
        AtomGen { next: 0 }
    }

    pub fn fresh(&mut self) -> Atom {
        let a = Atom(self.next);
        self.next += 1;
        a
    }
}

/// One symbol entry: a rational function plus a rational-coefficient
/// combination of atoms. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct NSpanEntry {
    rational: RatFun,
    atoms: BTreeMap<Atom, RatFun>,
}

impl NSpanEntry {
    pub fn zero() -> Self {
        NSpanEntry { rational: RatFun::zero(), atoms: BTreeMap::new() }
    }

    pub fn from_rational(rational: RatFun) -> Self {
        NSpanEntry { rational, atoms: BTreeMap::new() }
    }

    pub fn from_atom(atom: Atom) -> Self {
        let mut atoms = BTreeMap::new();
        atoms.insert(atom, RatFun::one());
        NSpanEntry { rational: RatFun::zero(), atoms }
    }

    pub fn rational(&self) -> &RatFun {
        &self.rational
    }

    pub fn atom_coeff(&self, atom: Atom) -> RatFun {
        self.atoms.get(&atom).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn set_atom(&mut self, atom: Atom, coeff: RatFun) {
        if coeff.is_zero() {
            self.atoms.remove(&atom);
        } else {
            self.atoms.insert(atom, coeff);
        }
    }

    pub fn is_rational(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.atoms.is_empty()
    }

    pub fn add(&self, other: &NSpanEntry) -> NSpanEntry {
        let mut out = self.clone();
        out.rational = &out.rational + &other.rational;
        for (a, c) in &other.atoms {
            let next = &out.atom_coeff(*a) + c;
            out.set_atom(*a, next);
        }
        out
    }

    pub fn neg(&self) -> NSpanEntry {
        let mut out = self.clone();
        out.rational = -out.rational.clone();
        for c in out.atoms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, f: &RatFun) -> NSpanEntry {
        if f.is_zero() {
            return NSpanEntry::zero();
        }
        let mut out = NSpanEntry::from_rational(&self.rational * f);
        for (a, c) in &self.atoms {
            out.set_atom(*a, c * f);
        }
        out
    }

    /// Bilinear product. Atoms are opaque: a product of two entries that
    /// both carry atoms has no representation here.
    pub fn mul(&self, other: &NSpanEntry) -> Result<NSpanEntry> {
        if !self.atoms.is_empty() && !other.atoms.is_empty() {
            return Err(Error::AtomProduct(
                "product of two free entries leaves the representable class".into(),
            ));
        }
        if self.atoms.is_empty() {
            Ok(other.scale(&self.rational))
        } else {
            Ok(self.scale(&other.rational))
        }
    }
}

impl std::fmt::Display for NSpanEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        if !self.rational.is_zero() {
            write!(f, "{}", self.rational)?;
            first = false;
        }
        for (a, c) in &self.atoms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{a}")?;
            first = false;
        }
        Ok(())
    }
}

/// Matrix of symbol entries.
#[derive(Debug, Clone, PartialEq)]
pub struct NSpanMatrix {
    rows: usize,
    cols: usize,
    data: Vec<NSpanEntry>,
}

impl NSpanMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        NSpanMatrix { rows, cols, data: vec![NSpanEntry::zero(); rows * cols] }
    }

    pub fn from_rational(m: &RatMat) -> Self {
        let mut out = NSpanMatrix::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, NSpanEntry::from_rational(m.at(i, j).clone()));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &NSpanEntry {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: NSpanEntry) {
        self.data[i * self.cols + j] = e;
    }

    pub fn set_atom(&mut self, i: usize, j: usize, atom: Atom, coeff: RatFun) {
        self.data[i * self.cols + j].set_atom(atom, coeff);
    }

    pub fn set_rational(&mut self, i: usize, j: usize, f: RatFun) {
        let e = &mut self.data[i * self.cols + j];
        e.rational = f;
    }

    /// All atoms appearing with a nonzero coefficient, sorted.
    pub fn atom_set(&self) -> Vec<Atom> {
        let mut set = std::collections::BTreeSet::new();
        for e in &self.data {
            for a in e.atoms.keys() {
                set.insert(*a);
            }
        }
        set.into_iter().collect()
    }

    pub fn rational_part(&self) -> RatMat {
        RatMat::from_fn(self.rows, self.cols, |i, j| self.at(i, j).rational.clone())
    }

    /// Atom-coefficient blocks stacked vertically in sorted atom order:
    /// a `(#atoms * rows) x cols` rational matrix. Everything modulo the
    /// Nevanlinna class is read off this stack.
    pub fn coefficient_stack(&self) -> RatMat {
        let atoms = self.atom_set();
        RatMat::from_fn(atoms.len() * self.rows, self.cols, |i, j| {
            let (a, r) = (atoms[i / self.rows], i % self.rows);
            self.at(r, j).atom_coeff(a)
        })
    }

    pub fn vstack(&self, other: &NSpanMatrix) -> Result<NSpanMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "stacking {} columns over {}",
                self.cols, other.cols
            )));
        }
        let mut out = NSpanMatrix::zero(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out.set(self.rows + i, j, other.at(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Bilinear matrix product; fails if any scalar product would multiply
    /// two atoms.
    pub fn mul(&self, other: &NSpanMatrix) -> Result<NSpanMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = NSpanMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NSpanEntry::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Independency of the columns modulo the Nevanlinna class: the rank of
    /// the atom-coefficient stack over the rational-function field.
    pub fn independency(&self) -> usize {
        if self.atom_set().is_empty() {
            return 0;
        }
        self.coefficient_stack().rank()
    }

    /// Greedy maximal independent subset of column indices, lexicographic.
    pub fn maximal_independent_subset(&self) -> Vec<usize> {
        self.extend_independent(&[]).expect("empty set is independent")
    }

    /// Extends an independent set of column indices to a maximal one.
    pub fn extend_independent(&self, start: &[usize]) -> Result<Vec<usize>> {
        let stack = self.coefficient_stack();
        let sub_rank = |cols: &[usize]| -> usize {
            if cols.is_empty() || stack.rows() == 0 {
                return 0;
            }
            let rows: Vec<usize> = (0..stack.rows()).collect();
            stack.submatrix(&rows, cols).rank()
        };
        for &j in start {
            if j >= self.cols {
                return Err(Error::DimensionMismatch(format!(
                    "column index {j} out of range for {} columns",
                    self.cols
                )));
            }
        }
        let mut chosen: Vec<usize> = start.to_vec();
        if sub_rank(&chosen) != chosen.len() {
            return Err(Error::Certificate(
                "starting columns are already dependent".into(),
            ));
        }
        for j in 0..self.cols {
            if chosen.contains(&j) {
                continue;
            }
            let mut with = chosen.clone();
            with.push(j);
            if sub_rank(&with) == with.len() {
                chosen = with;
            }
        }
        chosen.sort();
        Ok(chosen)
    }
}

/// Independency bookkeeping around a one-sided multiplication: the observed
/// value must land inside the predicted window.
#[derive(Debug, Clone)]
pub struct IndComparison {
    pub before: usize,
    pub after: usize,
    /// Sharpest lower bound the shape and rank of the factor guarantee.
    pub lower: usize,
    /// Sharpest upper bound.
    pub upper: usize,
    pub consistent: bool,
    pub product: NSpanMatrix,
}

/// Right multiplication by a rational matrix, with the predicted
/// independency window: a full-rank wide-or-square factor preserves the
/// independency, a full-rank narrow factor can lose at most the column
/// deficit, and nothing can raise it above the factor rank.
pub fn mul_right_checked(phi: &NSpanMatrix, b: &RatMat) -> Result<IndComparison> {
    let product = phi.mul(&NSpanMatrix::from_rational(b))?;
    let before = phi.independency();
    let after = product.independency();
    let rank_b = b.rank();
    let (m, l) = (b.rows(), b.cols());
    let upper = before.min(rank_b);
    let lower = if m <= l && rank_b == m {
        before
    } else if m > l && rank_b == l {
        before.saturating_sub(m - l)
    } else {
        0
    };
    let consistent = lower <= after && after <= upper;
    Ok(IndComparison { before, after, lower, upper, consistent, product })
}

/// Left multiplication by a rational matrix: an injective factor (full
/// column rank) preserves the independency, and no factor can raise it.
pub fn mul_left_checked(a: &RatMat, phi: &NSpanMatrix) -> Result<IndComparison> {
    let product = NSpanMatrix::from_rational(a).mul(phi)?;
    let before = phi.independency();
    let after = product.independency();
    let injective = a.rows() >= a.cols() && a.rank() == a.cols();
    let upper = before;
    let lower = if injective { before } else { 0 };
    let consistent = lower <= after && after <= upper;
    Ok(IndComparison { before, after, lower, upper, consistent, product })
}

/// Kernel of the Hankel operator of a symbol with free entries, as an inner
/// function with `cols - independency` columns.
#[derive(Debug, Clone)]
pub struct SymbolicKernel {
    pub theta: MatrixInner,
    /// Independency of the symbol columns; the kernel has
    /// `cols - independency` columns.
    pub independency: usize,
    /// Blaschke-Potapov factors contributed by the rational part on top of
    /// the pointwise stage.
    pub stage_two_defect: usize,
    /// Polynomial basis of the pointwise kernel `C f == 0`.
    pub polynomial_kernel: PolyMat,
}

/// Two-stage kernel computation. Stage one solves `C f == 0` exactly over
/// the polynomials and takes the inner factor of the solution module; stage
/// two pushes the rational part through and peels the interpolation
/// conditions as a weighted Blaschke-Potapov chain. Both stages end with
/// exact certificates.
pub fn kernel_symbolic(phi: &NSpanMatrix) -> Result<SymbolicKernel> {
    let m = phi.cols();
    if m == 0 || phi.rows() == 0 {
        return Err(Error::DimensionMismatch("empty symbol".into()));
    }
    let atoms = phi.atom_set();
    let independency = phi.independency();
    if independency == m {
        return Ok(SymbolicKernel {
            theta: MatrixInner::empty(m),
            independency,
            stage_two_defect: 0,
            polynomial_kernel: PolyMat::zero(m, 0),
        });
    }
    let (m0, v) = if atoms.is_empty() {
        (MatrixInner::identity(m), PolyMat::identity(m))
    } else {
        let stack = phi.coefficient_stack();
        let (stack_poly, _) = stack.clear_denominators();
        let v = stack_poly.kernel_basis();
        if v.cols() != m - independency {
            return Err(Error::Certificate(
                "pointwise kernel dimension disagrees with the independency".into(),
            ));
        }
        let io = inner::inner_outer(&v.to_ratmat())?;
        if io.rank != v.cols() {
            return Err(Error::Certificate("pointwise kernel basis lost rank".into()));
        }
        (io.theta, v)
    };

    let psi = HankelSymbol::new(phi.rational_part().mul(m0.mat()))?;
    let (theta, stage_two_defect) = if psi.numerator_stack().is_zero() {
        (m0, 0)
    } else {
        let g = crate::polymat::interpolation_module_basis(
            psi.numerator_stack(),
            psi.modulus(),
        )?;
        let (g_red, _) = g.column_reduce();
        let det = g_red.det();
        let split = roots::split_inner_zeros_with(&det, CirclePolicy::Reject)?;
        if !split.remainder.is_constant() || split.remainder.is_zero() {
            return Err(Error::Certificate(
                "interpolation determinant kept zeros away from the modulus".into(),
            ));
        }
        let (chain, rest) =
            inner::weighted_left_chain_known(&g_red.to_ratmat(), m0.tags(), &split.inside)?;
        let rest_det = rest.det();
        if rest_det.is_zero() {
            return Err(Error::Certificate("interpolation core lost rank".into()));
        }
        let rest_split =
            roots::split_inner_zeros_with(&rest_det.num().clone(), CirclePolicy::Reject)?;
        if !rest_split.inside.is_empty() {
            return Err(Error::Certificate(
                "interpolation core kept interior zeros".into(),
            ));
        }
        let k = m0.cols();
        let m1 = chain
            .iter()
            .fold(RatMat::identity(k), |acc, e| acc.mul(&e.matrix()));
        let theta = MatrixInner::new(m0.mat().mul(&m1), m0.tags().to_vec())?;
        (theta, chain.len())
    };

    // Certificates: the columns annihilate both stages exactly.
    if !phi.coefficient_stack().mul(theta.mat()).is_zero() {
        return Err(Error::Certificate(
            "kernel columns fail the pointwise equations".into(),
        ));
    }
    if theta.cols() > 0 {
        match phi.rational_part().mul(theta.mat()).analytic_in_disk()? {
            true => {}
            false => {
                return Err(Error::Certificate(
                    "kernel columns fail to annihilate the rational part".into(),
                ))
            }
        }
    }
    Ok(SymbolicKernel { theta, independency, stage_two_defect, polynomial_kernel: v })
}

/// Symbol whose Hankel kernel is exactly the space generated by one inner
/// column: free entries everywhere except the last nonzero coordinate,
/// which balances them so the column itself is annihilated.
pub fn symbol_for_column_inner(
    theta: &MatrixInner,
    gen: &mut AtomGen,
) -> Result<NSpanMatrix> {
    if theta.cols() != 1 {
        return Err(Error::UnsupportedShape(format!(
            "column symbol for a {}x{} inner function",
            theta.rows(),
            theta.cols()
        )));
    }
    let n = theta.rows();
    let pivot = (0..n)
        .rev()
        .find(|&i| !theta.mat().at(i, 0).is_zero())
        .expect("an inner column is nonzero");
    let k_pivot = theta.mat().at(pivot, 0).clone();
    let mut phi = NSpanMatrix::zero(1, n);
    phi.set_rational(0, pivot, k_pivot.inverse());
    for i in 0..n {
        if i == pivot {
            continue;
        }
        let a = gen.fresh();
        phi.set_atom(0, i, a, RatFun::one());
        let k_i = theta.mat().at(i, 0);
        phi.set_atom(0, pivot, a, -(&(k_i / &k_pivot)));
    }
    Ok(phi)
}

/// Symbol whose Hankel kernel is the space generated by `theta`: the
/// adjoint for a square inner function, the balanced free-entry row for a
/// single column, and for a general tall inner function the adjoint rows
/// stacked over fresh-atom rows carrying a left null basis of the columns.
/// The atom rows force a kernel vector into the pointwise column span, the
/// adjoint rows force the resulting coordinate vector to be analytic.
pub fn symbol_for_inner(theta: &MatrixInner, gen: &mut AtomGen) -> Result<NSpanMatrix> {
    if theta.is_square() {
        return Ok(NSpanMatrix::from_rational(&theta.mat().adjoint()));
    }
    if theta.cols() == 1 {
        return symbol_for_column_inner(theta, gen);
    }
    let n = theta.rows();
    let m = theta.cols();
    let left_null = if m == 0 {
        PolyMat::identity(n)
    } else {
        let (cleared, _) = theta.mat().clear_denominators();
        cleared.transpose().kernel_basis()
    };
    if left_null.cols() != n - m {
        return Err(Error::Certificate(format!(
            "left null space of a {}x{} inner function has dimension {}",
            n,
            m,
            left_null.cols()
        )));
    }
    let adj = theta.mat().adjoint();
    let mut phi = NSpanMatrix::zero(n, n);
    for i in 0..m {
        for j in 0..n {
            phi.set_rational(i, j, adj.at(i, j).clone());
        }
    }
    for k in 0..n - m {
        let a = gen.fresh();
        for j in 0..n {
            let w = left_null.at(j, k).clone();
            if !w.is_zero() {
                phi.set_atom(m + k, j, a, RatFun::from_poly(w));
            }
        }
    }
    Ok(phi)
}

/// Comparison of the kernel of `[a1 conj(z) + h1, a2 conj(z) + h2]` with
/// the naive candidate `z H^2`: the kernel is one interpolation condition,
/// hence strictly larger than the two conditions the candidate satisfies.
#[derive(Debug, Clone)]
pub struct IzCheck {
    pub kernel_defect: usize,
    pub shift_defect: usize,
    pub contains_shift: bool,
    pub strictly_larger: bool,
}

/// Exact check that the kernel of the symbol `[a1 conj(z) + h1,
/// a2 conj(z) + h2]` (constants `a`, analytic rational `h`) strictly
/// contains `z H^2` in both components.
pub fn iz_counterexample_check(
    a1: &Scalar,
    a2: &Scalar,
    h1: &RatFun,
    h2: &RatFun,
) -> Result<IzCheck> {
    if a1.is_zero() && a2.is_zero() {
        return Err(Error::ZeroInput("both leading coefficients vanish".into()));
    }
    for h in [h1, h2] {
        match h.analytic_in_disk()? {
            true => {}
            false => {
                return Err(Error::NotAnalytic(
                    "perturbation must be analytic in the closed disk".into(),
                ))
            }
        }
    }
    let z_bar = RatFun::z_bar();
    let mut phi = NSpanMatrix::zero(1, 2);
    phi.set_rational(0, 0, &z_bar.scale(a1) + h1);
    phi.set_rational(0, 1, &z_bar.scale(a2) + h2);
    let kernel = kernel_symbolic(&phi)?;
    let shift = RatMat::from_fn(2, 2, |i, j| {
        if i == j {
            RatFun::z()
        } else {
            RatFun::zero()
        }
    });
    let contains_shift = kernel.theta.contains(&shift)?;
    let shift_defect = 2;
    let kernel_defect = kernel.stage_two_defect;
    Ok(IzCheck {
        kernel_defect,
        shift_defect,
        contains_shift,
        strictly_larger: contains_shift && kernel_defect < shift_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::equal_up_to_right_unitary;
    use crate::poly::Poly;

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

    fn column_inner(entries: &[&[i64]], tag: i64) -> MatrixInner {
        let mat = RatMat::from_fn(entries.len(), 1, |i, _| {
            RatFun::from_poly(p(entries[i]))
        });
        MatrixInner::new(mat, vec![crate::scalar::Quad::from_int(tag)]).unwrap()
    }

    /// Symbol with one free entry `a`: `[[a conj(t1), -a conj(t2)], [conj(t1), 0]]`
    /// for the concrete inner pair `t1 = z`, `t2 = z^2`.
    fn two_by_two_symbol(gen: &mut AtomGen) -> NSpanMatrix {
        let a = gen.fresh();
        let mut phi = NSpanMatrix::zero(2, 2);
        phi.set_atom(0, 0, a, rf(&[1], &[0, 1]));
        phi.set_atom(0, 1, a, rf(&[-1], &[0, 0, 1]));
        phi.set_rational(1, 0, rf(&[1], &[0, 1]));
        phi
    }

    #[test]
    fn entry_products_guard_atoms() {
        let mut gen = AtomGen::new();
        let a = NSpanEntry::from_atom(gen.fresh());
        let b = NSpanEntry::from_atom(gen.fresh());
        let r = NSpanEntry::from_rational(rf(&[0, 1], &[1]));
        assert!(a.mul(&r).is_ok());
        assert!(r.mul(&a).is_ok());
        assert!(matches!(a.mul(&b), Err(Error::AtomProduct(_))));
        let scaled = a.mul(&r).unwrap();
        assert_eq!(scaled.atom_coeff(Atom(0)), rf(&[0, 1], &[1]));
    }

    #[test]
    fn independency_counts_only_free_entries() {
        let mut gen = AtomGen::new();
        let phi = two_by_two_symbol(&mut gen);
        assert_eq!(phi.independency(), 1);
        // purely rational symbols carry nothing modulo the class
        let rational = NSpanMatrix::from_rational(&rm(&[&[
            rf(&[1], &[0, 1]),
            rf(&[3, 1], &[0, 0, 1]),
        ]]));
        assert_eq!(rational.independency(), 0);
        // two free entries in separate columns are fully independent
        let mut free = NSpanMatrix::zero(1, 2);
        free.set_atom(0, 0, gen.fresh(), RatFun::one());
        free.set_atom(0, 1, gen.fresh(), RatFun::one());
        assert_eq!(free.independency(), 2);
    }

    #[test]
    fn kernel_of_the_two_by_two_symbol() {
        let mut gen = AtomGen::new();
        let phi = two_by_two_symbol(&mut gen);
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.independency, 1);
        assert_eq!(k.theta.cols(), 1);
        let expected = column_inner(&[&[0, 1], &[0, 0, 1]], 2);
        assert!(equal_up_to_right_unitary(&k.theta, &expected).unwrap());
    }

    #[test]
    fn row_symbol_pins_its_honest_kernel() {
        // [a, conj(t2) (1 - a t2)] with t2 = z^2 annihilates (t2, t2), not
        // (t1, t2); swapping the inner balance term changes the kernel.
        let mut gen = AtomGen::new();
        let a = gen.fresh();
        let mut literal = NSpanMatrix::zero(1, 2);
        literal.set_atom(0, 0, a, RatFun::one());
        literal.set_rational(0, 1, rf(&[1], &[0, 0, 1]));
        literal.set_atom(0, 1, a, rf(&[-1], &[1]));
        let k = kernel_symbolic(&literal).unwrap();
        let expected = column_inner(&[&[0, 0, 1], &[0, 0, 1]], 2);
        assert!(equal_up_to_right_unitary(&k.theta, &expected).unwrap());

        let b = gen.fresh();
        let mut balanced = NSpanMatrix::zero(1, 2);
        balanced.set_atom(0, 0, b, RatFun::one());
        balanced.set_rational(0, 1, rf(&[1], &[0, 0, 1]));
        balanced.set_atom(0, 1, b, rf(&[-1], &[0, 1]));
        let k = kernel_symbolic(&balanced).unwrap();
        let expected = column_inner(&[&[0, 1], &[0, 0, 1]], 2);
        assert!(equal_up_to_right_unitary(&k.theta, &expected).unwrap());
    }

    #[test]
    fn column_symbol_roundtrip() {
        let mut gen = AtomGen::new();
        let theta = column_inner(&[&[0, 1], &[0, 1]], 2);
        let phi = symbol_for_column_inner(&theta, &mut gen).unwrap();
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.independency, 1);
        assert!(equal_up_to_right_unitary(&k.theta, &theta).unwrap());

        let theta = column_inner(&[&[0], &[0, 1], &[0, 0, 1]], 2);
        let phi = symbol_for_column_inner(&theta, &mut gen).unwrap();
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.independency, 2);
        assert!(equal_up_to_right_unitary(&k.theta, &theta).unwrap());
    }

    #[test]
    fn square_symbol_roundtrip() {
        let mut gen = AtomGen::new();
        let f = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0, -1], &[1]), rf(&[0, 0, 1], &[1])],
        ]);
        let theta = inner::inner_outer(&f).unwrap().theta;
        let phi = symbol_for_inner(&theta, &mut gen).unwrap();
        assert_eq!(phi.independency(), 0);
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.theta.cols(), 2);
        assert!(equal_up_to_right_unitary(&k.theta, &theta).unwrap());

        // non-square, multi-column shapes get one atom row per missing column
        let tall = MatrixInner::from_plain(rm(&[
            &[rf(&[0, 1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
            &[rf(&[0], &[1]), rf(&[0], &[1])],
        ]))
        .unwrap();
        let phi = symbol_for_inner(&tall, &mut gen).unwrap();
        assert_eq!(phi.independency(), 1);
        let k = kernel_symbolic(&phi).unwrap();
        assert!(equal_up_to_right_unitary(&k.theta, &tall).unwrap());
    }

    #[test]
    fn full_independency_means_trivial_kernel() {
        let mut gen = AtomGen::new();
        let mut phi = NSpanMatrix::zero(1, 2);
        phi.set_atom(0, 0, gen.fresh(), RatFun::one());
        phi.set_atom(0, 1, gen.fresh(), RatFun::one());
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.independency, 2);
        assert!(k.theta.is_empty());
        assert_eq!(k.theta.rows(), 2);
    }

    #[test]
    fn zero_symbol_has_full_kernel() {
        let phi = NSpanMatrix::zero(2, 3);
        let k = kernel_symbolic(&phi).unwrap();
        assert_eq!(k.independency, 0);
        assert_eq!(*k.theta.mat(), RatMat::identity(3));
    }

    #[test]
    fn multiplication_windows_hold() {
        let mut gen = AtomGen::new();
        let phi = two_by_two_symbol(&mut gen);

        let invertible = rm(&[
            &[rf(&[1], &[1]), rf(&[1], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
        ]);
        let c = mul_right_checked(&phi, &invertible).unwrap();
        assert!(c.consistent);
        assert_eq!((c.lower, c.after, c.upper), (1, 1, 1));

        let rank_one = rm(&[
            &[rf(&[1], &[1]), rf(&[1], &[1])],
            &[rf(&[1], &[1]), rf(&[1], &[1])],
        ]);
        let c = mul_right_checked(&phi, &rank_one).unwrap();
        assert!(c.consistent);
        assert_eq!(c.upper, 1);

        let narrow = rm(&[&[rf(&[1], &[1])], &[rf(&[1], &[1])]]);
        let c = mul_right_checked(&phi, &narrow).unwrap();
        assert!(c.consistent);
        assert_eq!((c.lower, c.upper), (0, 1));

        let wide = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1]), rf(&[1], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1]), rf(&[0, 1], &[1])],
        ]);
        let c = mul_right_checked(&phi, &wide).unwrap();
        assert!(c.consistent);
        assert_eq!((c.lower, c.after, c.upper), (1, 1, 1));

        let tall_injective = rm(&[
            &[rf(&[1], &[1]), rf(&[0], &[1])],
            &[rf(&[0], &[1]), rf(&[1], &[1])],
            &[rf(&[1], &[1]), rf(&[1], &[1])],
        ]);
        let c = mul_left_checked(&tall_injective, &phi).unwrap();
        assert!(c.consistent);
        assert_eq!((c.lower, c.after, c.upper), (1, 1, 1));

        let collapse = rm(&[&[rf(&[1], &[1]), rf(&[0], &[1])]]);
        let c = mul_left_checked(&collapse, &phi).unwrap();
        assert!(c.consistent);
        assert_eq!((c.lower, c.upper), (0, 1));
    }

    #[test]
    fn independent_subsets() {
        let mut gen = AtomGen::new();
        let phi = two_by_two_symbol(&mut gen);
        assert_eq!(phi.maximal_independent_subset(), vec![0]);
        assert_eq!(phi.extend_independent(&[1]).unwrap(), vec![1]);
        assert!(matches!(
            phi.extend_independent(&[0, 1]),
            Err(Error::Certificate(_))
        ));
        assert!(matches!(
            phi.extend_independent(&[7]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn shift_candidate_is_strictly_contained() {
        let one = Scalar::one();
        let check =
            iz_counterexample_check(&one, &one, &RatFun::zero(), &RatFun::zero()).unwrap();
        assert_eq!(check.kernel_defect, 1);
        assert_eq!(check.shift_defect, 2);
        assert!(check.contains_shift);
        assert!(check.strictly_larger);

        // analytic perturbations change nothing modulo the class
        let check = iz_counterexample_check(
            &one,
            &Scalar::from_ratio(2, 3),
            &rf(&[1, 1], &[1]),
            &rf(&[2], &[1]),
        )
        .unwrap();
        assert!(check.strictly_larger);
    }

    #[test]
    fn tall_inner_symbol_roundtrip() {
        // plain polynomial columns: [[0,0],[z,0],[0,z^2]]
        let zero = RatFun::zero();
        let mat = rm(&[
            &[zero.clone(), zero.clone()],
            &[rf(&[0, 1], &[1]), zero.clone()],
            &[zero.clone(), rf(&[0, 0, 1], &[1])],
        ]);
        let theta = MatrixInner::from_plain(mat).unwrap();
        let mut gen = AtomGen::new();
        let phi = symbol_for_inner(&theta, &mut gen).unwrap();
        assert_eq!((phi.rows(), phi.cols()), (3, 3));
        let kernel = kernel_symbolic(&phi).unwrap();
        assert_eq!(kernel.independency, 1);
        assert!(equal_up_to_right_unitary(&kernel.theta, &theta).unwrap());
    }

    #[test]
    fn tall_inner_symbol_roundtrip_with_tags() {
        // scaled column plus a Blaschke factor: [[-b,0],[b,0],[0,z b]],
        // tags [2, 1] with b = (z - 1/2)/(1 - z/2)
        let b = rf(&[-1, 2], &[2, -1]);
        let zero = RatFun::zero();
        let mat = rm(&[
            &[-(&b), zero.clone()],
            &[b.clone(), zero.clone()],
            &[zero.clone(), &rf(&[0, 1], &[1]) * &b],
        ]);
        let theta = MatrixInner::new(
            mat,
            vec![crate::scalar::Quad::from_int(2), crate::scalar::Quad::one()],
        )
        .unwrap();
        let mut gen = AtomGen::new();
        let phi = symbol_for_inner(&theta, &mut gen).unwrap();
        let kernel = kernel_symbolic(&phi).unwrap();
        assert_eq!(kernel.theta.cols(), 2);
        assert!(equal_up_to_right_unitary(&kernel.theta, &theta).unwrap());
    }
}
