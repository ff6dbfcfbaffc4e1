//! Z[x]-saturation of lattices and the toric test.
//!
//! `L` is Z[x]-saturated when `p f in L` for a nonzero `p in Z[x]` forces
//! `f in L`. Saturation proceeds in two stages on the GHNF of `L`: integer
//! primes dividing the pivot leading coefficients (`z_factor`), then
//! irreducible factors of the corner entries (`zx_factor`).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{buchberger_with, cmp_vectors, GhnfBasis, GroebnerOptions, LatticeVector, PolyMatrix, ZxLattice};
use crate::poly::{factor_int, factor_poly, IntPoly, RatPoly, ResidueField};
use crate::syzygy::syzygy_ghnf;

pub const DEFAULT_MAX_ROUNDS: usize = 1000;

/// `h` is not in `L` but `multiplier * h` is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationWitness {
    pub h: LatticeVector,
    #[serde(rename = "p")]
    pub multiplier: IntPoly,
}

impl SaturationWitness {
    /// Checks both defining conditions against `basis`.
    pub fn verify(&self, basis: &GhnfBasis) -> bool {
        !basis.contains(&self.h) && basis.contains(&self.h.mul_poly(&self.multiplier))
    }
}

fn checked(h: LatticeVector, multiplier: IntPoly, basis: &GhnfBasis) -> Result<SaturationWitness> {
    let w = SaturationWitness { h, multiplier };
    if !basis.contains(&w.h.mul_poly(&w.multiplier)) {
        return Err(Error::Verification(format!("{} * {} is not in the lattice", w.multiplier, w.h)));
    }
    Ok(w)
}

/// Keeps one witness per normal form, in the vector order.
fn dedup(basis: &GhnfBasis, mut ws: Vec<SaturationWitness>) -> Vec<SaturationWitness> {
    ws.sort_by(|a, b| cmp_vectors(&a.h, &b.h).then_with(|| a.multiplier.degree().cmp(&b.multiplier.degree())));
    let mut seen = BTreeSet::new();
    ws.into_iter().filter(|w| seen.insert(basis.grem(&w.h).to_string())).collect()
}

/// Primes dividing some pivot leading coefficient.
fn candidate_primes(basis: &GhnfBasis) -> Result<Vec<BigInt>> {
    let mut primes = BTreeSet::new();
    for c in basis.pivot_leading_coeffs() {
        primes.extend(factor_int(&c)?);
    }
    Ok(primes.into_iter().collect())
}

/// Generators of `(L : q) = {f : q f in L}` for an integer `q`, read off the
/// syzygies of `[G | q I]`.
fn colon_by_integer(basis: &GhnfBasis, q: &BigInt) -> Result<Vec<LatticeVector>> {
    let n = basis.dim();
    let s = basis.len();
    let mut cols = basis.columns().to_vec();
    cols.extend((0..n).map(|i| LatticeVector::unit(n, i).scale(q)));
    let m = PolyMatrix::from_columns(n, cols)?;
    Ok(syzygy_ghnf(&m)?
        .columns()
        .iter()
        .map(|syz| -&LatticeVector::new(syz.entries()[s..].to_vec()))
        .filter(|f| !f.is_zero())
        .collect())
}

/// Integer saturation witnesses of a GHNF basis: `(h, q)` with `q` prime,
/// `q h in L`, `h not in L`. Empty iff `L` is Z-saturated; only primes that
/// divide a pivot leading coefficient can contribute.
pub fn z_factor(basis: &GhnfBasis) -> Result<Vec<SaturationWitness>> {
    let mut out = Vec::new();
    for q in candidate_primes(basis)? {
        for mut h in colon_by_integer(basis, &q)? {
            h.normalize_sign();
            if !basis.contains(&h) {
                out.push(checked(h, IntPoly::constant(q.clone()), basis)?);
            }
        }
    }
    Ok(dedup(basis, out))
}

/// Distinct irreducible nonconstant factors of the corner entries, sorted.
fn corner_factors(basis: &GhnfBasis) -> Result<Vec<IntPoly>> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<IntPoly> = Vec::new();
    for c in basis.corner_entries() {
        for p in factor_poly(c)?.nonconstant_factors() {
            if seen.insert(p.to_string()) {
                out.push(p.clone());
            }
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Kernel of an `n x t` matrix over `Q[x]/(p)`, given by residue
/// representatives. Pivots are taken from the rightmost column first, so
/// the free variables are the leftmost ones; each basis vector sets one
/// free variable to 1.
fn kernel_mod(field: &ResidueField, cols: &[Vec<RatPoly>]) -> Result<Vec<Vec<RatPoly>>> {
    let t = cols.len();
    if t == 0 {
        return Ok(Vec::new());
    }
    let n = cols[0].len();
    // rows of the matrix with columns reversed
    let mut a: Vec<Vec<RatPoly>> = (0..n).map(|i| (0..t).rev().map(|j| field.reduce(&cols[j][i])).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..t {
        let Some(pr) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pr);
        let inv = field.inv(&a[r][c])?;
        a[r] = a[r].iter().map(|e| field.mul(e, &inv)).collect();
        for i in 0..n {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row_r = a[r].clone();
                a[i] = a[i].iter().zip(&row_r).map(|(e, p)| field.reduce(&(e - &field.mul(&f, p)))).collect();
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..t).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatPoly::zero(); t];
        v[free] = RatPoly::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&a[row][free];
        }
        v.reverse();
        out.push(v);
    }
    Ok(out)
}

fn block_leader_columns(basis: &GhnfBasis) -> Vec<Vec<RatPoly>> {
    basis
        .block_leaders()
        .iter()
        .map(|c| c.entries().iter().map(IntPoly::to_rat).collect())
        .collect()
}

/// Kernel vectors of the block leaders modulo each corner factor `p`.
fn dependencies(basis: &GhnfBasis) -> Result<Vec<(IntPoly, Vec<Vec<RatPoly>>)>> {
    let cols = block_leader_columns(basis);
    let mut out = Vec::new();
    for p in corner_factors(basis)? {
        let field = ResidueField::new_unchecked(&p);
        let ker = kernel_mod(&field, &cols)?;
        if !ker.is_empty() {
            out.push((p, ker));
        }
    }
    Ok(out)
}

/// Whether `L` is Q[x]-saturated: the block leaders stay independent
/// modulo every irreducible factor of every corner entry.
pub fn is_qx_saturated(basis: &GhnfBasis) -> Result<bool> {
    Ok(dependencies(basis)?.is_empty())
}

/// Saturation witnesses of a GHNF basis. Returns the integer witnesses when
/// there are any; otherwise lifts each dependency of the block leaders
/// modulo an irreducible corner factor `p` to a witness with multiplier `p`.
/// Empty iff `L` is Z[x]-saturated.
pub fn zx_factor(basis: &GhnfBasis) -> Result<Vec<SaturationWitness>> {
    let zw = z_factor(basis)?;
    if !zw.is_empty() {
        return Ok(zw);
    }
    let leaders: Vec<LatticeVector> = basis.block_leaders().into_iter().cloned().collect();
    let mut out = Vec::new();
    for (p, ker) in dependencies(basis)? {
        for b in ker {
            let d = b.iter().fold(BigInt::one(), |acc, e| num_integer::Integer::lcm(&acc, &e.denom_lcm()));
            let scale = BigRational::from_integer(d);
            let mut h = LatticeVector::zero(basis.dim());
            for (coef, col) in b.iter().zip(&leaders) {
                let (one, ci) = coef.scale(&scale).to_int_scaled();
                debug_assert!(one.is_one());
                h = &h + &col.mul_poly(&ci);
            }
            let entries = h
                .entries()
                .iter()
                .map(|e| e.div_exact(&p))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Verification(format!("dependency modulo {p} does not lift")))?;
            let g = LatticeVector::new(entries);
            if g.is_zero() {
                continue;
            }
            let c = g.content();
            let mut g = LatticeVector::new(g.entries().iter().map(|e| e.div_exact_int(&c)).collect());
            g.normalize_sign();
            if !basis.contains(&g) {
                out.push(checked(g, p.clone(), basis)?);
            }
        }
    }
    Ok(dedup(basis, out))
}

/// One growth step of [`sat_zx`].
#[derive(Clone, Debug, Serialize)]
pub struct SaturationRound {
    pub basis: GhnfBasis,
    pub witnesses: Vec<SaturationWitness>,
    /// Product of the distinct multipliers of this round.
    pub multiplier: IntPoly,
}

#[derive(Clone, Debug)]
pub struct Saturation {
    pub lattice: ZxLattice,
    pub rounds: Vec<SaturationRound>,
}

impl Saturation {
    /// `Q` with `Q g in (U)` for every generator `g` of the saturation.
    pub fn certificate_multiplier(&self) -> IntPoly {
        self.rounds.iter().fold(IntPoly::one(), |acc, r| &acc * &r.multiplier)
    }

    pub fn growth_rounds(&self) -> usize {
        self.rounds.len()
    }
}

#[derive(Clone, Debug)]
pub struct SaturationOptions {
    pub max_rounds: usize,
    pub groebner: GroebnerOptions,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions { max_rounds: DEFAULT_MAX_ROUNDS, groebner: GroebnerOptions::default() }
    }
}

pub fn sat_zx(l: &ZxLattice) -> Result<Saturation> {
    sat_zx_with(l, &SaturationOptions::default())
}

/// The Z[x]-saturation of `l`: adjoin witnesses and recompute the GHNF
/// until [`zx_factor`] finds none.
pub fn sat_zx_with(l: &ZxLattice, opts: &SaturationOptions) -> Result<Saturation> {
    let mut basis = l.ghnf()?.clone();
    let mut rounds = Vec::new();
    loop {
        let ws = zx_factor(&basis)?;
        if ws.is_empty() {
            return Ok(Saturation { lattice: ZxLattice::from_ghnf(basis), rounds });
        }
        if rounds.len() >= opts.max_rounds {
            return Err(Error::ResourceExhausted { what: "saturation rounds".into(), limit: opts.max_rounds as u64 });
        }
        let mut seen = BTreeSet::new();
        let multiplier = ws
            .iter()
            .filter(|w| seen.insert(w.multiplier.to_string()))
            .fold(IntPoly::one(), |acc, w| &acc * &w.multiplier);
        let mut gens = basis.columns().to_vec();
        gens.extend(ws.iter().map(|w| w.h.clone()));
        let next = if gens.is_empty() {
            basis.clone()
        } else {
            buchberger_with(&gens, &opts.groebner)?
        };
        rounds.push(SaturationRound { basis, witnesses: ws, multiplier });
        basis = next;
    }
}

/// Outcome of the toric test, with the evidence for a negative answer.
#[derive(Clone, Debug)]
pub struct ToricVerdict {
    pub is_toric: bool,
    pub witnesses: Vec<SaturationWitness>,
    pub saturated_lattice: ZxLattice,
    pub growth_rounds: usize,
}

impl Serialize for ToricVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let gens: &[LatticeVector] = self.saturated_lattice.generators();
        let mut st = s.serialize_struct("ToricVerdict", 4)?;
        st.serialize_field("is_toric", &self.is_toric)?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("saturated_generators", gens)?;
        st.serialize_field("growth_rounds", &self.growth_rounds)?;
        st.end()
    }
}

/// A lattice is toric (it is the support lattice of a toric difference
/// ideal) iff it is Z[x]-saturated.
pub fn is_toric_lattice(l: &ZxLattice) -> Result<ToricVerdict> {
    let sat = sat_zx(l)?;
    let witnesses = sat.rounds.first().map(|r| r.witnesses.clone()).unwrap_or_default();
    Ok(ToricVerdict {
        is_toric: witnesses.is_empty(),
        witnesses,
        growth_rounds: sat.growth_rounds(),
        saturated_lattice: sat.lattice,
    })
}

pub fn is_toric(generators: &[LatticeVector]) -> Result<ToricVerdict> {
    let l = ZxLattice::from_generators(generators.to_vec())?;
    is_toric_lattice(&l)
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

    fn example_c() -> ZxLattice {
        lat(vec![v(&["x", "2*x^2+1", "0"]), v(&["x^2+1", "0", "4*x^2+2"])])
    }

    #[test]
    fn z_factor_finds_integer_witness() {
        let l = lat(vec![v(&["2", "2*x"])]);
        let ws = z_factor(l.ghnf().unwrap()).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].h, v(&["1", "x"]));
        assert_eq!(ws[0].multiplier, IntPoly::from(2));
        assert!(ws[0].verify(l.ghnf().unwrap()));

        let l = lat(vec![v(&["1", "x"])]);
        assert!(z_factor(l.ghnf().unwrap()).unwrap().is_empty());
    }

    #[test]
    fn example_c_is_z_saturated_but_not_toric() {
        let c = example_c();
        let b = c.ghnf().unwrap();
        assert!(z_factor(b).unwrap().is_empty());
        assert!(!is_qx_saturated(b).unwrap());
        let ws = zx_factor(b).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].h, v(&["x", "-1", "4*x"]));
        assert_eq!(ws[0].multiplier, IntPoly::parse("2*x^2+1").unwrap());
        assert!(ws[0].verify(b));
    }

    #[test]
    fn example_c_saturates_in_one_round() {
        let sat = sat_zx(&example_c()).unwrap();
        assert_eq!(sat.growth_rounds(), 1);
        assert_eq!(sat.lattice.ghnf().unwrap().columns(), &[v(&["x", "2*x^2+1", "0"]), v(&["1", "x", "2"])]);
        let q = sat.certificate_multiplier();
        for g in sat.lattice.generators() {
            assert!(example_c().member(&g.mul_poly(&q)).unwrap());
        }
        let verdict = is_toric_lattice(&example_c()).unwrap();
        assert!(!verdict.is_toric);
    }

    #[test]
    fn two_x_minus_two_needs_two_rounds() {
        let sat = sat_zx(&lat(vec![v(&["2*x-2"])])).unwrap();
        assert_eq!(sat.growth_rounds(), 2);
        assert_eq!(sat.lattice.ghnf().unwrap().columns(), &[v(&["1"])]);
    }

    #[test]
    fn toric_examples() {
        assert!(is_toric(&[v(&["1-x", "2", "0", "0"]), v(&["0", "0", "1-x", "2"])]).unwrap().is_toric);
        assert!(is_toric(&[v(&["x", "-1", "0"])]).unwrap().is_toric);
        assert!(is_toric(&[LatticeVector::zero(2)]).unwrap().is_toric);
        assert!(!is_toric(&[v(&["x^2-1"])]).unwrap().is_toric);
    }

    #[test]
    fn kernel_prefers_right_pivots() {
        let field = ResidueField::new_unchecked(&IntPoly::parse("x^2+1").unwrap());
        let cols = vec![vec![RatPoly::from_ints(&[0, 1])], vec![RatPoly::from_ints(&[1])]];
        let ker = kernel_mod(&field, &cols).unwrap();
        assert_eq!(ker, vec![vec![RatPoly::one(), RatPoly::from_ints(&[0, -1])]]);
    }
}
