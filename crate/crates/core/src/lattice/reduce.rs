use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{LatticeVector, Monomial};
use crate::error::{Error, Result};
use crate::poly::{cmp_abs, euclid_divmod, gcd_bezout_int, IntPoly};

/// Leading-term data of the reducers, indexed by row.
pub(crate) struct ReducerTable {
    /// For each row: `(x-degree, leading coefficient, reducer index)`.
    rows: Vec<Vec<(usize, BigInt, usize)>>,
}

impl ReducerTable {
    pub(crate) fn new<'a>(dim: usize, basis: impl IntoIterator<Item = (usize, &'a LatticeVector)>) -> Self {
        let mut rows = vec![Vec::new(); dim];
        for (idx, g) in basis {
            if let Some(lt) = g.leading_term() {
                rows[lt.index].push((lt.xdeg, lt.coeff, idx));
            }
        }
        for r in &mut rows {
            r.sort_by(|a, b| a.0.cmp(&b.0).then(cmp_abs(&a.1, &b.1)).then(a.2.cmp(&b.2)));
        }
        ReducerTable { rows }
    }

    /// The reducer for a monomial at `(row, xdeg)`: among leading terms of
    /// power at most `xdeg`, the one with the smallest `|coeff|` (ties go to
    /// the higher power, then the lower index).
    fn pick(&self, row: usize, xdeg: usize) -> Option<&(usize, BigInt, usize)> {
        let mut best: Option<&(usize, BigInt, usize)> = None;
        for cand in self.rows[row].iter().take_while(|c| c.0 <= xdeg) {
            best = match best {
                None => Some(cand),
                Some(b) => match cmp_abs(&cand.1, &b.1) {
                    std::cmp::Ordering::Less => Some(cand),
                    std::cmp::Ordering::Equal if cand.0 > b.0 => Some(cand),
                    _ => Some(b),
                },
            };
        }
        best
    }
}

/// Counts reduction steps against a cap.
pub(crate) struct Budget {
    pub(crate) used: u64,
    pub(crate) limit: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { used: 0, limit }
    }

    fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::ResourceExhausted { what: "Gröbner reduction".into(), limit: self.limit });
        }
        Ok(())
    }
}

/// One reduction step applied to a vector and, optionally, to its trace.
pub(crate) struct Step {
    pub(crate) reducer: usize,
    pub(crate) quotient: BigInt,
    pub(crate) shift: usize,
}

/// Reduces `f` in place, always cancelling the largest reducible monomial
/// first. With `skip_leading`, the leading term of `f` is left alone (used
/// for interreducing basis elements). Every step is passed to `on_step`.
pub(crate) fn reduce_in_place(
    f: &mut LatticeVector,
    basis: &[LatticeVector],
    table: &ReducerTable,
    skip_leading: bool,
    budget: &mut Budget,
    mut on_step: impl FnMut(&Step),
) -> Result<()> {
    let lead = if skip_leading { f.leading_term().map(|m| (m.index, m.xdeg)) } else { None };
    for row in (0..f.dim()).rev() {
        if table.rows[row].is_empty() {
            continue;
        }
        let mut next = f.entry(row).degree();
        while let Some(k) = next {
            next = k.checked_sub(1);
            if lead == Some((row, k)) {
                continue;
            }
            let Some(c) = f.entry(row).coeff_ref(k).filter(|c| !c.is_zero()).cloned() else {
                continue;
            };
            let Some((deg, lc, idx)) = table.pick(row, k) else {
                continue;
            };
            let (q, _) = euclid_divmod(&c, lc);
            if q.is_zero() {
                continue;
            }
            budget.spend()?;
            let step = Step { reducer: *idx, quotient: q, shift: k - deg };
            f.sub_scaled_shifted(&step.quotient, step.shift, &basis[step.reducer]);
            on_step(&step);
        }
    }
    Ok(())
}

/// Normal form of `f` with respect to `basis`.
///
/// The result is reduced: none of its monomials is reducible by a leading
/// term of `basis`, and `f - grem(f, basis)` lies in the module spanned by
/// `basis`. Against a Gröbner basis the result is the unique normal form.
pub fn grem(f: &LatticeVector, basis: &[LatticeVector]) -> LatticeVector {
    grem_traced(f, basis).0
}

/// [`grem`] together with cofactors `c_j` such that
/// `f = grem(f) + sum_j c_j * basis[j]`.
pub fn grem_traced(f: &LatticeVector, basis: &[LatticeVector]) -> (LatticeVector, Vec<IntPoly>) {
    let mut out = f.clone();
    let mut cof = vec![IntPoly::zero(); basis.len()];
    if basis.is_empty() {
        return (out, cof);
    }
    let table = ReducerTable::new(f.dim(), basis.iter().enumerate());
    // grem has no failure mode of its own; the cap only guards completion
    let mut budget = Budget::new(u64::MAX);
    reduce_in_place(&mut out, basis, &table, false, &mut budget, |s| {
        cof[s.reducer] = &cof[s.reducer] + &IntPoly::monomial(s.quotient.clone(), s.shift);
    })
    .expect("unbounded budget");
    (out, cof)
}

/// Multipliers `(cf, cg)` with `S(f, g) = cf * f + cg * g`, per the
/// divisibility and Bézout cases on the leading coefficients. `None` when
/// the leading terms sit in different rows.
pub(crate) fn s_coefficients(lf: &Monomial, lg: &Monomial) -> Option<(IntPoly, IntPoly)> {
    if lf.index != lg.index {
        return None;
    }
    // orient so that the first argument has the larger power
    if lf.xdeg < lg.xdeg {
        let (cg, cf) = s_coefficients(lg, lf)?;
        return Some((cf, cg));
    }
    let (a, k) = (&lf.coeff, lf.xdeg);
    let (b, s) = (&lg.coeff, lg.xdeg);
    let shift = k - s;
    let pair = if (a % b).is_zero() {
        (IntPoly::one(), IntPoly::monomial(-(a / b), shift))
    } else if (b % a).is_zero() {
        (IntPoly::constant(b / a), IntPoly::monomial(-BigInt::one(), shift))
    } else {
        let (_, u, v) = gcd_bezout_int(a, b).expect("nonzero leading coefficients");
        (IntPoly::constant(u), IntPoly::monomial(v, shift))
    };
    Some(pair)
}

/// Multipliers of the lcm S-polynomial `(l/a) f - (l/b) x^(k-s) g`, which
/// completion processes alongside the Bézout combination when neither
/// leading coefficient divides the other.
pub(crate) fn lcm_coefficients(lf: &Monomial, lg: &Monomial) -> Option<(IntPoly, IntPoly)> {
    if lf.index != lg.index {
        return None;
    }
    if lf.xdeg < lg.xdeg {
        let (cg, cf) = lcm_coefficients(lg, lf)?;
        return Some((cf, cg));
    }
    let (a, b) = (&lf.coeff, &lg.coeff);
    if (a % b).is_zero() || (b % a).is_zero() {
        return None;
    }
    let l = a.lcm(b).abs();
    Some((IntPoly::constant(&l / a), IntPoly::monomial(-(&l / b), lf.xdeg - lg.xdeg)))
}

/// The S-polynomial of two nonzero vectors.
pub fn s_polynomial(f: &LatticeVector, g: &LatticeVector) -> Result<LatticeVector> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let lf = f.try_leading_term()?;
    let lg = g.try_leading_term()?;
    Ok(match s_coefficients(&lf, &lg) {
        None => LatticeVector::zero(f.dim()),
        Some((cf, cg)) => &f.mul_poly(&cf) + &g.mul_poly(&cg),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[&str]) -> LatticeVector {
        LatticeVector::parse(entries).unwrap()
    }

    #[test]
    fn s_polynomial_cases() {
        // gcd case: u*2 + v*3 = 1 with (u, v) = (-1, 1)
        let s = s_polynomial(&v(&["2"]), &v(&["3"])).unwrap();
        assert_eq!(s, v(&["1"]));
        // b | a with a power shift cancels exactly
        let s = s_polynomial(&v(&["0", "4*x"]), &v(&["0", "2"])).unwrap();
        assert!(s.is_zero());
        // different rows
        let s = s_polynomial(&v(&["2*x", "0"]), &v(&["0", "2"])).unwrap();
        assert!(s.is_zero());
        assert!(s_polynomial(&LatticeVector::zero(1), &v(&["1"])).is_err());
    }

    #[test]
    fn s_polynomial_cancels_leading_terms() {
        let f = v(&["x+1", "3*x^2+x"]);
        let g = v(&["2", "5*x"]);
        let s = s_polynomial(&f, &g).unwrap();
        let lt = s.leading_term().unwrap();
        // Bézout case: leading coefficient is gcd(3, 5) at the higher power
        assert_eq!((lt.index, lt.xdeg, lt.coeff), (1, 2, BigInt::one()));
    }

    #[test]
    fn grem_examples() {
        let f1 = v(&["1-x", "2", "0", "0"]);
        let f2 = v(&["0", "0", "1-x", "2"]);
        let comb = &f1 + &f2.mul_poly(&IntPoly::x());
        assert!(grem(&comb, &[f1.clone(), f2.clone()]).is_zero());
        assert!(grem(&LatticeVector::zero(4), &[f1, f2]).is_zero());
    }

    #[test]
    fn remainders_are_nonnegative() {
        let r = grem(&v(&["-7*x+5"]), &[v(&["3"])]);
        assert_eq!(r, v(&["2*x+2"]));
        let r = grem(&v(&["-1"]), &[v(&["-2"])]);
        assert_eq!(r, v(&["1"]));
    }

    #[test]
    fn traced_cofactors_reconstruct() {
        let basis = vec![v(&["x", "2*x^2+1", "0"]), v(&["x^2+1", "0", "4*x^2+2"])];
        let f = v(&["x^3", "5*x^3-x", "7*x^2"]);
        let (r, cof) = grem_traced(&f, &basis);
        let mut back = r.clone();
        for (c, b) in cof.iter().zip(&basis) {
            back = &back + &b.mul_poly(c);
        }
        assert_eq!(back, f);
    }
}
