//! Z[x]-lattices: submodules of Z[x]^n.
//!
//! Vectors are compared through the position-over-term order on monomials
//! `a x^k e_i`: coordinate index first, then the power of `x`, then `|a|`.
//! Reduction uses Euclidean remainders in `[0, |b|)`, so a Gröbner basis
//! gives every vector a unique normal form. Coordinates are 0-based in
//! code and 1-based (`e_1, e_2, ...`) in anything printed.

mod groebner;
mod rank;
mod reduce;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

pub use groebner::{
    buchberger, buchberger_traced, buchberger_with, is_ghnf, Block, GhnfBasis, GhnfCheck, GroebnerOptions,
    TracedBasis, DEFAULT_MAX_REDUCTIONS,
};
pub use rank::rank_of;
pub use reduce::{grem, grem_traced, s_polynomial};

/// An element of Z[x]^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    entries: Vec<IntPoly>,
}

impl LatticeVector {
    pub fn new(entries: Vec<IntPoly>) -> Self {
        LatticeVector { entries }
    }

    pub fn zero(dim: usize) -> Self {
        LatticeVector { entries: vec![IntPoly::zero(); dim] }
    }

    /// The standard basis vector `e_i` (0-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.entries[i] = IntPoly::one();
        v
    }

    pub fn from_i64_rows(entries: &[&[i64]]) -> Self {
        LatticeVector { entries: entries.iter().map(|c| IntPoly::from_i64s(c)).collect() }
    }

    /// Parses each entry with the polynomial grammar.
    pub fn parse<S: AsRef<str>>(entries: &[S]) -> Result<Self> {
        Ok(LatticeVector { entries: entries.iter().map(|s| IntPoly::parse(s.as_ref())).collect::<Result<_>>()? })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[IntPoly] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [IntPoly] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<IntPoly> {
        self.entries
    }

    pub fn entry(&self, i: usize) -> &IntPoly {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(IntPoly::is_zero)
    }

    /// Row of the leading term: the highest index with a nonzero entry.
    pub fn leading_row(&self) -> Option<usize> {
        self.entries.iter().rposition(|e| !e.is_zero())
    }

    /// The order-maximal monomial.
    pub fn leading_term(&self) -> Option<Monomial> {
        let row = self.leading_row()?;
        let e = &self.entries[row];
        Some(Monomial { coeff: e.leading_coeff()?.clone(), xdeg: e.degree()?, index: row })
    }

    /// Fallible variant of [`Self::leading_term`] for operations whose
    /// contract rejects the zero vector.
    pub fn try_leading_term(&self) -> Result<Monomial> {
        self.leading_term().ok_or_else(|| Error::ZeroInput("leading term of the zero vector".into()))
    }

    pub fn scale(&self, c: &BigInt) -> LatticeVector {
        LatticeVector { entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn mul_poly(&self, p: &IntPoly) -> LatticeVector {
        LatticeVector { entries: self.entries.iter().map(|e| e * p).collect() }
    }

    /// `self -= c * x^k * other`.
    pub fn sub_scaled_shifted(&mut self, c: &BigInt, k: usize, other: &LatticeVector) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.sub_scaled_shifted(c, k, b);
        }
    }

    /// Z[x]-valued dot product.
    pub fn dot(&self, other: &LatticeVector) -> IntPoly {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(IntPoly::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    /// Negates if needed so the leading coefficient is positive; returns
    /// whether a negation happened.
    pub fn normalize_sign(&mut self) -> bool {
        let neg = self.leading_term().is_some_and(|m| m.coeff.is_negative());
        if neg {
            for e in &mut self.entries {
                *e = -&*e;
            }
        }
        neg
    }

    /// Gcd of all coefficients of all entries.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.entries.iter().fold(BigInt::zero(), |g, e| g.gcd(&e.content()))
    }

    /// Every monomial with its position, largest first.
    pub fn monomials_desc(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.entries.iter().enumerate().rev().flat_map(|(i, e)| {
            e.terms_desc().map(move |(k, c)| Monomial { coeff: c.clone(), xdeg: k, index: i })
        })
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(IntPoly::degree).max()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl<'a> Add<&'a LatticeVector> for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &'a LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        LatticeVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a LatticeVector> for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &'a LatticeVector) -> LatticeVector {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        LatticeVector { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector { entries: self.entries.iter().map(|e| -e).collect() }
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(LatticeVector { entries: Vec::<IntPoly>::deserialize(d)? })
    }
}

/// A monomial `coeff * x^xdeg * e_index`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigInt,
    pub xdeg: usize,
    pub index: usize,
}

impl Monomial {
    pub fn new(coeff: impl Into<BigInt>, xdeg: usize, index: usize) -> Self {
        Monomial { coeff: coeff.into(), xdeg, index }
    }

    /// Whether this monomial is a Z[x]-multiple of `other`.
    pub fn is_multiple_of(&self, other: &Monomial) -> bool {
        self.index == other.index
            && self.xdeg >= other.xdeg
            && !other.coeff.is_zero()
            && (&self.coeff % &other.coeff).is_zero()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.xdeg {
            0 => write!(f, "{}*e_{}", self.coeff, self.index + 1),
            1 => write!(f, "{}*x*e_{}", self.coeff, self.index + 1),
            k => write!(f, "{}*x^{k}*e_{}", self.coeff, self.index + 1),
        }
    }
}

/// The monomial order: index, then power of `x`, then absolute value of the
/// coefficient. Opposite-sign coefficients of equal size compare equal.
pub fn cmp_monomials(a: &Monomial, b: &Monomial) -> Ordering {
    a.index
        .cmp(&b.index)
        .then(a.xdeg.cmp(&b.xdeg))
        .then_with(|| a.coeff.magnitude().cmp(b.coeff.magnitude()))
}

/// Order on vectors through their leading terms; zero is smallest.
pub fn cmp_vectors(a: &LatticeVector, b: &LatticeVector) -> Ordering {
    match (a.leading_term(), b.leading_term()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => cmp_monomials(&x, &y),
    }
}

/// Whether `m` is reduced with respect to the nonzero monomial `w`:
/// different index, lower power, or a coefficient in `[0, |b|)`.
pub fn is_reduced_monomial(m: &Monomial, w: &Monomial) -> bool {
    m.index != w.index
        || m.xdeg < w.xdeg
        || (!m.coeff.is_negative() && m.coeff.magnitude() < w.coeff.magnitude())
}

/// A matrix over Z[x] stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nrows: usize,
    columns: Vec<LatticeVector>,
}

impl PolyMatrix {
    pub fn from_columns(nrows: usize, columns: Vec<LatticeVector>) -> Result<Self> {
        for c in &columns {
            if c.dim() != nrows {
                return Err(Error::DimensionMismatch { expected: nrows, found: c.dim() });
            }
        }
        Ok(PolyMatrix { nrows, columns })
    }

    pub fn from_rows(rows: Vec<Vec<IntPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: r.len() });
            }
        }
        let columns = (0..ncols)
            .map(|j| LatticeVector::new(rows.iter().map(|r| r[j].clone()).collect()))
            .collect();
        Ok(PolyMatrix { nrows, columns })
    }

    /// Parses rows of polynomial strings.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| IntPoly::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<LatticeVector> {
        self.columns
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        self.columns[j].entry(i)
    }

    pub fn row(&self, i: usize) -> LatticeVector {
        LatticeVector::new(self.columns.iter().map(|c| c.entry(i).clone()).collect())
    }

    pub fn rows(&self) -> Vec<LatticeVector> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix { nrows: self.ncols(), columns: self.rows() }
    }

    /// `A * f` for `f` in Z[x]^ncols.
    pub fn mul_vec(&self, f: &LatticeVector) -> Result<LatticeVector> {
        if f.dim() != self.ncols() {
            return Err(Error::DimensionMismatch { expected: self.ncols(), found: f.dim() });
        }
        let mut out = LatticeVector::zero(self.nrows);
        for (c, fj) in self.columns.iter().zip(f.entries()) {
            if fj.is_zero() {
                continue;
            }
            out = &out + &c.mul_poly(fj);
        }
        Ok(out)
    }
}

/// A finitely generated submodule of Z[x]^n with a lazily computed,
/// write-once GHNF.
#[derive(Debug)]
pub struct ZxLattice {
    dim: usize,
    generators: Vec<LatticeVector>,
    ghnf: OnceLock<GhnfBasis>,
}

impl Clone for ZxLattice {
    fn clone(&self) -> Self {
        let ghnf = OnceLock::new();
        if let Some(g) = self.ghnf.get() {
            let _ = ghnf.set(g.clone());
        }
        ZxLattice { dim: self.dim, generators: self.generators.clone(), ghnf }
    }
}

impl ZxLattice {
    pub fn new(dim: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
            }
        }
        Ok(ZxLattice { dim, generators, ghnf: OnceLock::new() })
    }

    /// Infers the dimension from the first generator.
    pub fn from_generators(generators: Vec<LatticeVector>) -> Result<Self> {
        let dim = generators
            .first()
            .map(LatticeVector::dim)
            .ok_or_else(|| Error::ZeroInput("lattice needs at least one generator to fix its dimension".into()))?;
        Self::new(dim, generators)
    }

    pub fn from_ghnf(basis: GhnfBasis) -> Self {
        let lat = ZxLattice { dim: basis.dim(), generators: basis.columns().to_vec(), ghnf: OnceLock::new() };
        let _ = lat.ghnf.set(basis);
        lat
    }

    pub fn zero(dim: usize) -> Self {
        ZxLattice { dim, generators: Vec::new(), ghnf: OnceLock::new() }
    }

    pub fn full(dim: usize) -> Self {
        ZxLattice::from_ghnf(GhnfBasis::from_sorted_columns(dim, (0..dim).map(|i| LatticeVector::unit(dim, i)).collect()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    pub fn ghnf(&self) -> Result<&GhnfBasis> {
        if let Some(g) = self.ghnf.get() {
            return Ok(g);
        }
        let g = groebner::buchberger_in_dim(self.dim, &self.generators, &GroebnerOptions::default())?;
        let _ = self.ghnf.set(g);
        Ok(self.ghnf.get().expect("just set"))
    }

    pub fn member(&self, f: &LatticeVector) -> Result<bool> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: f.dim() });
        }
        Ok(self.ghnf()?.contains(f))
    }

    /// Whether every generator of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &ZxLattice) -> Result<bool> {
        for g in other.generators() {
            if !self.member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Module equality by mutual membership.
    pub fn same_as(&self, other: &ZxLattice) -> Result<bool> {
        Ok(self.dim == other.dim && self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Rank over Q(x) of the generator matrix.
    pub fn rank(&self) -> usize {
        rank_of(&self.generators)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(LatticeVector::is_zero)
    }
}

/// Membership of `f` in `L` through its GHNF.
pub fn member(f: &LatticeVector, lattice: &ZxLattice) -> Result<bool> {
    lattice.member(f)
}

/// Rank over Q(x).
pub fn rank(lattice: &ZxLattice) -> usize {
    lattice.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[&str]) -> LatticeVector {
        LatticeVector::parse(entries).unwrap()
    }

    #[test]
    fn monomial_order() {
        // index dominates
        assert_eq!(cmp_monomials(&Monomial::new(3, 0, 1), &Monomial::new(100, 5, 0)), Ordering::Greater);
        // then the power of x
        assert_eq!(cmp_monomials(&Monomial::new(2, 1, 0), &Monomial::new(5, 0, 0)), Ordering::Greater);
        // then |a|
        assert_eq!(cmp_monomials(&Monomial::new(-4, 0, 0), &Monomial::new(3, 0, 0)), Ordering::Greater);
        assert_eq!(cmp_monomials(&Monomial::new(-3, 0, 0), &Monomial::new(3, 0, 0)), Ordering::Equal);
    }

    #[test]
    fn leading_terms() {
        assert_eq!(v(&["1-x", "2", "0", "0"]).leading_term(), Some(Monomial::new(2, 0, 1)));
        assert_eq!(v(&["x^3", "0"]).leading_term(), Some(Monomial::new(1, 3, 0)));
        assert_eq!(v(&["0", "0", "2*x^2+1"]).leading_term(), Some(Monomial::new(2, 2, 2)));
        assert!(LatticeVector::zero(3).try_leading_term().is_err());
    }

    #[test]
    fn leading_term_is_max_of_all_monomials() {
        let f = v(&["1-x", "2", "0", "0"]);
        let max = f.monomials_desc().max_by(cmp_monomials).unwrap();
        assert_eq!(Some(max), f.leading_term());
    }

    #[test]
    fn reduced_monomial_predicate() {
        assert!(is_reduced_monomial(&Monomial::new(3, 0, 0), &Monomial::new(2, 0, 1)));
        assert!(!is_reduced_monomial(&Monomial::new(3, 0, 0), &Monomial::new(2, 0, 0)));
        assert!(is_reduced_monomial(&Monomial::new(1, 1, 0), &Monomial::new(1, 2, 0)));
        assert!(is_reduced_monomial(&Monomial::new(1, 0, 0), &Monomial::new(2, 0, 0)));
        assert!(!is_reduced_monomial(&Monomial::new(-1, 0, 0), &Monomial::new(2, 0, 0)));
    }

    #[test]
    fn rank_examples() {
        let f1 = v(&["1-x", "2", "0", "0"]);
        let f2 = v(&["0", "0", "1-x", "2"]);
        assert_eq!(ZxLattice::new(4, vec![f1, f2]).unwrap().rank(), 2);
        assert_eq!(ZxLattice::zero(3).rank(), 0);
        assert_eq!(ZxLattice::new(1, vec![v(&["1"]), v(&["x"])]).unwrap().rank(), 1);
    }

    #[test]
    fn matrix_views() {
        let a = PolyMatrix::parse_rows(&[&["1", "x", "0"], &["1", "x", "1"]]).unwrap();
        assert_eq!(a.nrows(), 2);
        assert_eq!(a.ncols(), 3);
        assert_eq!(a.columns()[1], v(&["x", "x"]));
        assert_eq!(a.transpose().columns()[0], v(&["1", "x", "0"]));
        assert_eq!(a.mul_vec(&v(&["x", "-1", "0"])).unwrap(), LatticeVector::zero(2));
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            ZxLattice::new(2, vec![v(&["1", "0", "0"])]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        let lat = ZxLattice::new(2, vec![v(&["1", "0"])]).unwrap();
        assert!(lat.member(&v(&["1"])).is_err());
    }
}
