//! Syzygy modules, orthogonal complements and intersections of Z[x]-lattices,
//! and the two directions between a monomial parametrization `T^{u_i}` and
//! the binomial equations of its image.
//!
//! Syzygies are read off a Gröbner basis of the columns of `[I; A]`: each
//! column `e_j` carries its own input index in the low coordinates, and
//! because the order compares coordinate indices first, the basis elements
//! whose `A`-part vanishes form a reduced Gröbner basis of `Syz(A)`.

use std::fmt;

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{buchberger_with, GhnfBasis, GroebnerOptions, LatticeVector, PolyMatrix, ZxLattice};
use crate::poly::IntPoly;
use crate::saturation::{self, ToricVerdict};

/// Reduced Gröbner basis of `{f in Z[x]^m : A f = 0}` for an `n x m` matrix.
pub fn syzygy_ghnf(a: &PolyMatrix) -> Result<GhnfBasis> {
    syzygy_ghnf_with(a, &GroebnerOptions::default())
}

pub fn syzygy_ghnf_with(a: &PolyMatrix, opts: &GroebnerOptions) -> Result<GhnfBasis> {
    let (n, m) = (a.nrows(), a.ncols());
    let stacked: Vec<LatticeVector> = a
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut entries = LatticeVector::unit(m, j).into_entries();
            entries.extend(col.entries().iter().cloned());
            LatticeVector::new(entries)
        })
        .collect();
    if stacked.is_empty() {
        return Ok(GhnfBasis::from_sorted_columns(0, Vec::new()));
    }
    let gb = buchberger_with(&stacked, opts)?;
    let syz: Vec<LatticeVector> = gb
        .columns()
        .iter()
        .filter(|c| c.entries()[m..m + n].iter().all(IntPoly::is_zero))
        .map(|c| LatticeVector::new(c.entries()[..m].to_vec()))
        .collect();
    Ok(GhnfBasis::from_sorted_columns(m, syz))
}

/// Generators of `Syz(A)`; each satisfies `A f = 0` exactly.
pub fn syzygy_basis(a: &PolyMatrix) -> Result<Vec<LatticeVector>> {
    Ok(syzygy_ghnf(a)?.columns().to_vec())
}

fn generator_matrix(l: &ZxLattice) -> PolyMatrix {
    PolyMatrix::from_columns(l.dim(), l.generators().to_vec()).expect("lattice generators share its dimension")
}

/// `L^C = {f : <f, g> = 0 for all g in L}`, the syzygies of the transposed
/// generator matrix.
pub fn orth_complement(l: &ZxLattice) -> Result<ZxLattice> {
    let m = l.dim();
    let gens: Vec<LatticeVector> = l.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(ZxLattice::full(m));
    }
    let gt = PolyMatrix::from_columns(m, gens)?.transpose();
    Ok(ZxLattice::from_ghnf(syzygy_ghnf(&gt)?))
}

/// `L1 ∩ L2`, from the syzygies of `[G1 | -G2]` mapped through `G1`.
pub fn lattice_intersection(l1: &ZxLattice, l2: &ZxLattice) -> Result<ZxLattice> {
    if l1.dim() != l2.dim() {
        return Err(Error::DimensionMismatch { expected: l1.dim(), found: l2.dim() });
    }
    let n = l1.dim();
    let g1 = l1.generators();
    if g1.is_empty() || l2.generators().is_empty() {
        return Ok(ZxLattice::zero(n));
    }
    let mut cols = g1.to_vec();
    cols.extend(l2.generators().iter().map(|g| -g));
    let block = PolyMatrix::from_columns(n, cols)?;
    let s1 = g1.len();
    let g1m = generator_matrix(l1);
    let mut images = Vec::new();
    for syz in syzygy_ghnf(&block)?.columns() {
        let a = LatticeVector::new(syz.entries()[..s1].to_vec());
        let img = g1m.mul_vec(&a)?;
        if !img.is_zero() {
            images.push(img);
        }
    }
    if images.is_empty() {
        return Ok(ZxLattice::zero(n));
    }
    Ok(ZxLattice::from_ghnf(buchberger_with(&images, &GroebnerOptions::default())?))
}

/// A difference binomial `Y^plus - Y^minus` with `plus - minus = source`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomialGen {
    pub plus: LatticeVector,
    pub minus: LatticeVector,
    pub source: LatticeVector,
}

impl BinomialGen {
    pub fn display(&self) -> String {
        format!("{} - {}", monomial_string(&self.plus), monomial_string(&self.minus))
    }
}

impl fmt::Display for BinomialGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

fn exponent_string(p: &IntPoly) -> String {
    let s = p.to_string();
    if s.chars().all(|c| c.is_ascii_alphanumeric()) {
        s
    } else {
        format!("{{{s}}}")
    }
}

/// `y1*y2^2`, `y1^x`, `y3^{x^2+1}`; the empty product prints as `1`.
pub fn monomial_string(exps: &LatticeVector) -> String {
    let parts: Vec<String> = exps
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(i, e)| if e.is_one() { format!("y{}", i + 1) } else { format!("y{}^{}", i + 1, exponent_string(e)) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Splits `f` into coefficientwise positive and negative parts.
pub fn split_pos_neg(f: &LatticeVector) -> BinomialGen {
    let mut plus = Vec::with_capacity(f.dim());
    let mut minus = Vec::with_capacity(f.dim());
    for e in f.entries() {
        let pos: Vec<_> = e.coeffs().iter().map(|c| if c.is_positive() { c.clone() } else { Default::default() }).collect();
        let neg: Vec<_> = e.coeffs().iter().map(|c| if c.is_negative() { -c } else { Default::default() }).collect();
        plus.push(IntPoly::new(pos));
        minus.push(IntPoly::new(neg));
    }
    BinomialGen { plus: LatticeVector::new(plus), minus: LatticeVector::new(minus), source: f.clone() }
}

/// The binomial of a lattice generator, oriented so that the smallest
/// monomial of its exponent vector (lowest coordinate, lowest power) has a
/// positive coefficient.
pub fn lattice_binomial(f: &LatticeVector) -> BinomialGen {
    let negate = f.monomials_desc().last().is_some_and(|m| m.coeff.is_negative());
    if negate {
        split_pos_neg(&-f)
    } else {
        split_pos_neg(f)
    }
}

/// Exponent vectors `u_1, ..., u_m` in Z[x]^n of the Laurent monomials
/// `T^{u_i}`; as a matrix, `u_i` is the i-th column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialMap {
    dim: usize,
    exponents: Vec<LatticeVector>,
}

impl MonomialMap {
    pub fn new(dim: usize, exponents: Vec<LatticeVector>) -> Result<Self> {
        for u in &exponents {
            if u.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
            }
        }
        Ok(MonomialMap { dim, exponents })
    }

    pub fn from_matrix(m: &PolyMatrix) -> Self {
        MonomialMap { dim: m.nrows(), exponents: m.columns().to_vec() }
    }

    /// Number `n` of torus coordinates `t_i`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponents(&self) -> &[LatticeVector] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The `n x m` matrix with `u_i` as columns.
    pub fn matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.dim, self.exponents.clone()).expect("validated on construction")
    }
}

/// Support lattice, binomial generators and dimension of a toric
/// difference variety given by a monomial map.
#[derive(Clone, Debug)]
pub struct Implicitization {
    pub lattice: ZxLattice,
    pub binomials: Vec<BinomialGen>,
    pub dimension: usize,
}

pub fn implicitize(u: &MonomialMap) -> Result<Implicitization> {
    if u.is_empty() {
        return Err(Error::ZeroInput("monomial map without exponent vectors".into()));
    }
    let a = u.matrix();
    let basis = syzygy_ghnf(&a)?;
    let binomials = basis.columns().iter().map(lattice_binomial).collect();
    Ok(Implicitization { lattice: ZxLattice::from_ghnf(basis), binomials, dimension: crate::lattice::rank_of(u.exponents()) })
}

/// Result of [`parametrize`]: the monomial map, plus the saturation verdict
/// when the input had to be saturated first.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub map: MonomialMap,
    /// The generators of `L^C` whose rows are the exponent vectors.
    pub complement: GhnfBasis,
    pub saturated_from: Option<Box<ToricVerdict>>,
}

/// Monomial map whose syzygy lattice is `(F)`, for a toric lattice `(F)`:
/// the rows of a generator matrix of `L^C`.
///
/// Non-toric input is rejected with [`Error::NotToric`] unless
/// `saturate_first` is set, in which case the Z[x]-saturation is used.
pub fn parametrize(f: &[LatticeVector], saturate_first: bool) -> Result<Parametrization> {
    let first = f.first().ok_or_else(|| Error::ZeroInput("parametrize needs at least one generator".into()))?;
    let m = first.dim();
    let lat = ZxLattice::new(m, f.to_vec())?;
    let verdict = saturation::is_toric_lattice(&lat)?;
    let (lat, saturated_from) = if verdict.is_toric {
        (lat, None)
    } else if saturate_first {
        (verdict.saturated_lattice.clone(), Some(Box::new(verdict)))
    } else {
        return Err(Error::NotToric(Box::new(verdict)));
    };
    let comp = orth_complement(&lat)?;
    let v = comp.ghnf()?.clone();
    let vm = PolyMatrix::from_columns(m, v.columns().to_vec())?;
    let map = MonomialMap::new(v.len(), vm.rows())?;
    Ok(Parametrization { map, complement: v, saturated_from })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[&str]) -> LatticeVector {
        LatticeVector::parse(entries).unwrap()
    }

    fn lat(gens: Vec<LatticeVector>) -> ZxLattice {
        ZxLattice::from_generators(gens).unwrap()
    }

    #[test]
    fn syzygies_of_example_matrices() {
        let a = PolyMatrix::parse_rows(&[&["1", "x", "0"], &["1", "x", "1"]]).unwrap();
        let syz = syzygy_basis(&a).unwrap();
        assert!(lat(syz.clone()).same_as(&lat(vec![v(&["x", "-1", "0"])])).unwrap());
        for s in &syz {
            assert!(a.mul_vec(s).unwrap().is_zero());
        }

        let a = PolyMatrix::parse_rows(&[&["2", "x-1", "0", "0"], &["0", "0", "2", "x-1"]]).unwrap();
        let syz = syzygy_basis(&a).unwrap();
        assert_eq!(syz, vec![v(&["1-x", "2", "0", "0"]), v(&["0", "0", "1-x", "2"])]);

        let id = PolyMatrix::parse_rows(&[&["1", "0"], &["0", "1"]]).unwrap();
        assert!(syzygy_basis(&id).unwrap().is_empty());
    }

    #[test]
    fn complements() {
        let l = lat(vec![v(&["1-x", "2", "0", "0"]), v(&["0", "0", "1-x", "2"])]);
        let c = orth_complement(&l).unwrap();
        assert_eq!(c.ghnf().unwrap().columns(), &[v(&["2", "x-1", "0", "0"]), v(&["0", "0", "2", "x-1"])]);

        let c = orth_complement(&ZxLattice::zero(2)).unwrap();
        assert!(c.same_as(&ZxLattice::full(2)).unwrap());

        let g = v(&["x", "-1", "0"]);
        let c = orth_complement(&lat(vec![g.clone()])).unwrap();
        assert_eq!(c.rank(), 2);
        for h in c.generators() {
            assert!(h.dot(&g).is_zero());
        }
    }

    #[test]
    fn intersections() {
        let i = lattice_intersection(&lat(vec![v(&["2"])]), &lat(vec![v(&["3"])])).unwrap();
        assert_eq!(i.ghnf().unwrap().columns(), &[v(&["6"])]);

        let l = lat(vec![v(&["x", "1"]), v(&["2", "x^2"])]);
        assert!(lattice_intersection(&l, &l).unwrap().same_as(&l).unwrap());

        let i = lattice_intersection(&lat(vec![v(&["1", "0"])]), &lat(vec![v(&["0", "1"])])).unwrap();
        assert!(i.is_zero());

        assert!(lattice_intersection(&lat(vec![v(&["1"])]), &lat(vec![v(&["1", "0"])])).is_err());
    }

    #[test]
    fn positive_negative_parts() {
        let b = split_pos_neg(&v(&["1-x", "2", "0", "0"]));
        assert_eq!(b.plus, v(&["1", "2", "0", "0"]));
        assert_eq!(b.minus, v(&["x", "0", "0", "0"]));
        assert_eq!(b.display(), "y1*y2^2 - y1^x");

        let b = split_pos_neg(&v(&["x", "-1", "0"]));
        assert_eq!(b.display(), "y1^x - y2");

        let b = split_pos_neg(&LatticeVector::zero(2));
        assert!(b.plus.is_zero() && b.minus.is_zero());
        assert_eq!(&b.plus - &b.minus, b.source);
    }

    #[test]
    fn symbolic_exponents_are_braced() {
        assert_eq!(monomial_string(&v(&["x^2+1", "3", "0", "1"])), "y1^{x^2+1}*y2^3*y4");
    }

    #[test]
    fn implicitize_identity_map() {
        let u = MonomialMap::new(3, (0..3).map(|i| LatticeVector::unit(3, i)).collect()).unwrap();
        let imp = implicitize(&u).unwrap();
        assert!(imp.lattice.is_zero());
        assert!(imp.binomials.is_empty());
        assert_eq!(imp.dimension, 3);
    }

    #[test]
    fn parametrize_rejects_empty_and_handles_zero_lattice() {
        assert!(matches!(parametrize(&[], false), Err(Error::ZeroInput(_))));
        let p = parametrize(&[LatticeVector::zero(3)], false).unwrap();
        assert_eq!(p.map.exponents(), &(0..3).map(|i| LatticeVector::unit(3, i)).collect::<Vec<_>>()[..]);
    }
}
