//! Resolution of document declarations into exact library objects.
//! Structural problems (unknown names, ragged matrices, unparseable number
//! strings) are document faults; value-level mathematical rejections keep
//! the library's domain classification.

use std::collections::BTreeMap;

use beurling::inner::{mobius, MatrixInner};
use beurling::nspan::{AtomGen, NSpanMatrix};
use beurling::poly::Poly;
use beurling::polymat::RatMat;
use beurling::ratfun::RatFun;
use beurling::scalar::{Quad, Scalar};
use num::{BigInt, BigRational, Zero};

use crate::fault::{CliResult, Fault};
use crate::schema::{EntryDecl, ObjectDecl, SymbolDocument};

/// Every declared object a task can name, materialized. Scalar-valued
/// kinds (polynomials, rationals, Blaschke products) and atoms are
/// resolved on the way and live only inside matrices and symbols.
pub struct Resolved {
    pub matrices: BTreeMap<String, RatMat>,
    pub symbols: BTreeMap<String, NSpanMatrix>,
    pub inners: BTreeMap<String, MatrixInner>,
}

pub fn resolve(doc: &SymbolDocument) -> CliResult<Resolved> {
    let mut values = BTreeMap::new();
    for (name, decl) in &doc.objects {
        let value = match decl {
            ObjectDecl::Polynomial { coeffs } => RatFun::from_poly(parse_poly(coeffs, name)?),
            ObjectDecl::Rational { num, den } => {
                let den = parse_poly(den, name)?;
                if den.is_zero() {
                    return Err(Fault::Schema(format!("{name:?}: zero denominator")));
                }
                RatFun::new(parse_poly(num, name)?, den)
            }
            ObjectDecl::Blaschke { zeros } => blaschke(zeros, name)?,
            _ => continue,
        };
        values.insert(name.clone(), value);
    }

    let mut gen = AtomGen::new();
    let mut atoms = BTreeMap::new();
    for (name, decl) in &doc.objects {
        if matches!(decl, ObjectDecl::Atom) {
            atoms.insert(name.clone(), gen.fresh());
        }
    }

    let mut matrices = BTreeMap::new();
    let mut symbols = BTreeMap::new();
    for (name, decl) in &doc.objects {
        match decl {
            ObjectDecl::Matrix { entries } => {
                let (rows, cols, data) = entry_grid(entries, &values, name)?;
                matrices.insert(name.clone(), RatMat::new(rows, cols, data));
            }
            ObjectDecl::Symbol { entries, free } => {
                let (rows, cols, data) = entry_grid(entries, &values, name)?;
                let mut phi = NSpanMatrix::zero(rows, cols);
                for (k, f) in data.into_iter().enumerate() {
                    phi.set_rational(k / cols, k % cols, f);
                }
                for term in free {
                    let atom = *atoms.get(&term.atom).ok_or_else(|| {
                        Fault::Schema(format!("{name:?}: no atom named {:?}", term.atom))
                    })?;
                    if term.row >= rows || term.col >= cols {
                        return Err(Fault::Schema(format!(
                            "{name:?}: free term at ({}, {}) outside a {rows}x{cols} symbol",
                            term.row, term.col
                        )));
                    }
                    let coeff = entry_to_ratfun(&term.coeff, &values, name)?;
                    phi.set_atom(term.row, term.col, atom, coeff);
                }
                symbols.insert(name.clone(), phi);
            }
            _ => {}
        }
    }

    let mut inners = BTreeMap::new();
    for (name, decl) in &doc.objects {
        if let ObjectDecl::Inner { matrix, tags } = decl {
            let mat = matrices.get(matrix).cloned().ok_or_else(|| {
                Fault::Schema(format!("{name:?}: no matrix named {matrix:?}"))
            })?;
            let inner = if tags.is_empty() {
                MatrixInner::from_plain(mat)?
            } else {
                let tags = tags
                    .iter()
                    .map(|t| Ok(Quad::new(parse_rational_string(t, name)?)))
                    .collect::<CliResult<Vec<Quad>>>()?;
                MatrixInner::new(mat, tags)?
            };
            inners.insert(name.clone(), inner);
        }
    }

    Ok(Resolved { matrices, symbols, inners })
}

fn blaschke(zeros: &[String], name: &str) -> CliResult<RatFun> {
    let mut product = RatFun::one();
    for z in zeros {
        let alpha = parse_scalar(z).map_err(|f| prefix(f, name))?;
        if alpha.norm_sqr().cmp_real(&Quad::one()) != std::cmp::Ordering::Less {
            return Err(Fault::Domain(format!(
                "blaschke zero {z} of {name:?} does not lie in the open unit disk"
            )));
        }
        product = &product * &mobius(&alpha);
    }
    Ok(product)
}

/// Rectangular grid of resolved entries in row-major order.
fn entry_grid(
    entries: &[Vec<EntryDecl>],
    values: &BTreeMap<String, RatFun>,
    name: &str,
) -> CliResult<(usize, usize, Vec<RatFun>)> {
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Fault::Schema(format!("{name:?}: empty matrix")));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in entries {
        if row.len() != cols {
            return Err(Fault::Schema(format!(
                "{name:?}: ragged rows ({} entries next to {cols})",
                row.len()
            )));
        }
        for e in row {
            data.push(entry_to_ratfun(e, values, name)?);
        }
    }
    Ok((rows, cols, data))
}

fn entry_to_ratfun(
    e: &EntryDecl,
    values: &BTreeMap<String, RatFun>,
    name: &str,
) -> CliResult<RatFun> {
    match e {
        EntryDecl::Constant(s) => {
            Ok(RatFun::from_poly(Poly::constant(parse_scalar(s).map_err(|f| prefix(f, name))?)))
        }
        EntryDecl::Poly(coeffs) => Ok(RatFun::from_poly(parse_poly(coeffs, name)?)),
        EntryDecl::Rational(r) => {
            let den = parse_poly(&r.den, name)?;
            if den.is_zero() {
                return Err(Fault::Schema(format!("{name:?}: zero denominator")));
            }
            Ok(RatFun::new(parse_poly(&r.num, name)?, den))
        }
        EntryDecl::Conj(c) => Ok(entry_to_ratfun(&c.conj, values, name)?.adjoint()),
        EntryDecl::Ref(r) => values.get(&r.name).cloned().ok_or_else(|| {
            Fault::Schema(format!("{name:?}: no scalar-valued object named {:?}", r.name))
        }),
    }
}

fn parse_poly(coeffs: &[String], name: &str) -> CliResult<Poly> {
    let parsed = coeffs
        .iter()
        .map(|s| parse_scalar(s).map_err(|f| prefix(f, name)))
        .collect::<CliResult<Vec<Scalar>>>()?;
    Ok(Poly::new(parsed))
}

fn prefix(f: Fault, name: &str) -> Fault {
    match f {
        Fault::Schema(m) => Fault::Schema(format!("{name:?}: {m}")),
        other => other,
    }
}

/// Gaussian rational from "a/b", "a/b+c/di", "i", "-2i", and friends.
/// Whitespace is ignored; anything else, floats included, is rejected.
pub fn parse_scalar(s: &str) -> CliResult<Scalar> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Fault::Schema(format!("cannot parse {s:?} as a Gaussian rational"));
    if compact.is_empty() {
        return Err(bad());
    }
    let separators: Vec<usize> = compact
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .collect();
    let (re_token, im_token) = match separators.as_slice() {
        [] if compact.ends_with('i') => ("", compact.as_str()),
        [] => (compact.as_str(), ""),
        [i] => (&compact[..*i], &compact[*i..]),
        _ => return Err(bad()),
    };
    if !im_token.is_empty() && !im_token.ends_with('i') {
        return Err(bad());
    }
    let re = match re_token {
        "" => BigRational::zero(),
        t => parse_rational_token(t).ok_or_else(bad)?,
    };
    let im = match im_token.strip_suffix('i') {
        None => BigRational::zero(),
        Some("" | "+") => BigRational::from(BigInt::from(1)),
        Some("-") => BigRational::from(BigInt::from(-1)),
        Some(t) => parse_rational_token(t).ok_or_else(bad)?,
    };
    Ok(Scalar::from_rationals(re, im))
}

pub fn parse_rational_string(s: &str, name: &str) -> CliResult<BigRational> {
    parse_rational_token(s.trim())
        .ok_or_else(|| Fault::Schema(format!("{name:?}: cannot parse {s:?} as a rational")))
}

fn parse_rational_token(t: &str) -> Option<BigRational> {
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_strings_round_trip() {
        for (text, re, im) in [
            ("3/4", (3, 4), (0, 1)),
            ("-2", (-2, 1), (0, 1)),
            ("1/2+1/3i", (1, 2), (1, 3)),
            ("1/2-1/3i", (1, 2), (-1, 3)),
            ("i", (0, 1), (1, 1)),
            ("-i", (0, 1), (-1, 1)),
            ("2i", (0, 1), (2, 1)),
            (" -3/5 i", (0, 1), (-3, 5)),
            ("0", (0, 1), (0, 1)),
        ] {
            let got = parse_scalar(text).unwrap();
            let want = Scalar::from_rationals(
                BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
                BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
            );
            assert_eq!(got, want, "{text}");
        }
    }

    #[test]
    fn scalar_rejects_floats_and_junk() {
        for text in ["0.5", "1e-3", "", "1+2", "1i+2i", "1+2+3i", "3/0"] {
            assert!(parse_scalar(text).is_err(), "{text}");
        }
    }
}
