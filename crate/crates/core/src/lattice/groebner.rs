//! Buchberger completion to reduced Gröbner bases of Z[x]-lattices, and the
//! structural check for generalized Hermite normal forms.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::reduce::{lcm_coefficients, reduce_in_place, s_coefficients, Budget, ReducerTable};
use super::{cmp_vectors, grem, is_reduced_monomial, s_polynomial, LatticeVector, Monomial};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Default cap on reduction steps in one completion.
pub const DEFAULT_MAX_REDUCTIONS: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct GroebnerOptions {
    pub max_reductions: u64,
}

impl Default for GroebnerOptions {
    fn default() -> Self {
        GroebnerOptions { max_reductions: DEFAULT_MAX_REDUCTIONS }
    }
}

/// A reduced Gröbner basis, columns sorted ascending by leading term, every
/// leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhnfBasis {
    dim: usize,
    columns: Vec<LatticeVector>,
}

/// The columns of a GHNF whose leading terms share a row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub row: usize,
    /// Column positions, ascending (so ascending pivot degree).
    pub columns: Vec<usize>,
}

impl GhnfBasis {
    /// Wraps columns already known to form a reduced basis in ascending order.
    pub(crate) fn from_sorted_columns(dim: usize, columns: Vec<LatticeVector>) -> Self {
        GhnfBasis { dim, columns }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn grem(&self, f: &LatticeVector) -> LatticeVector {
        grem(f, &self.columns)
    }

    pub fn contains(&self, f: &LatticeVector) -> bool {
        self.grem(f).is_zero()
    }

    pub fn blocks(&self) -> Vec<Block> {
        let mut out: Vec<Block> = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            let row = c.leading_row().expect("basis columns are nonzero");
            match out.last_mut() {
                Some(b) if b.row == row => b.columns.push(j),
                _ => out.push(Block { row, columns: vec![j] }),
            }
        }
        out
    }

    /// The first column of every block (lowest pivot degree).
    pub fn block_leaders(&self) -> Vec<&LatticeVector> {
        self.blocks().iter().map(|b| &self.columns[b.columns[0]]).collect()
    }

    /// Pivot entries `c_{r_i,1}` of the block leaders.
    pub fn corner_entries(&self) -> Vec<&IntPoly> {
        self.blocks().iter().map(|b| self.columns[b.columns[0]].entry(b.row)).collect()
    }

    /// Leading integer coefficients of every pivot entry.
    pub fn pivot_leading_coeffs(&self) -> Vec<BigInt> {
        self.columns.iter().filter_map(|c| c.leading_term().map(|m| m.coeff)).collect()
    }
}

/// A basis together with, for each column, its expression in the input
/// generators: `column_j = sum_i trace[j][i] * input_i`.
#[derive(Clone, Debug)]
pub struct TracedBasis {
    pub basis: GhnfBasis,
    pub trace: Vec<Vec<IntPoly>>,
}

struct Completion {
    dim: usize,
    vecs: Vec<LatticeVector>,
    traces: Vec<Option<Vec<IntPoly>>>,
    lts: Vec<Monomial>,
    pairs: BTreeSet<(usize, usize, usize, usize)>,
    budget: Budget,
}

fn apply_step(trace: &mut Option<Vec<IntPoly>>, reducer: Option<&Vec<IntPoly>>, quotient: &BigInt, shift: usize) {
    if let (Some(t), Some(rt)) = (trace.as_mut(), reducer) {
        let m = IntPoly::monomial(quotient.clone(), shift);
        for (ti, ri) in t.iter_mut().zip(rt) {
            *ti = &*ti - &(ri * &m);
        }
    }
}

impl Completion {
    fn combine(&self, i: usize, ci: &IntPoly, j: usize, cj: &IntPoly) -> (LatticeVector, Option<Vec<IntPoly>>) {
        let v = &self.vecs[i].mul_poly(ci) + &self.vecs[j].mul_poly(cj);
        let trace = match (&self.traces[i], &self.traces[j]) {
            (Some(ta), Some(tb)) => Some(ta.iter().zip(tb).map(|(x, y)| &(x * ci) + &(y * cj)).collect()),
            _ => None,
        };
        (v, trace)
    }

    fn reduce(&mut self, mut v: LatticeVector, mut trace: Option<Vec<IntPoly>>) -> Result<(LatticeVector, Option<Vec<IntPoly>>)> {
        let table = ReducerTable::new(self.dim, self.vecs.iter().enumerate());
        let traces = &self.traces;
        reduce_in_place(&mut v, &self.vecs, &table, false, &mut self.budget, |s| {
            apply_step(&mut trace, traces[s.reducer].as_ref(), &s.quotient, s.shift)
        })?;
        Ok((v, trace))
    }

    fn push(&mut self, mut v: LatticeVector, mut trace: Option<Vec<IntPoly>>) {
        if v.normalize_sign() {
            if let Some(t) = trace.as_mut() {
                for ti in t.iter_mut() {
                    *ti = -&*ti;
                }
            }
        }
        let lt = v.leading_term().expect("pushed vectors are nonzero");
        let new = self.vecs.len();
        for (i, e) in self.lts.iter().enumerate() {
            if e.index == lt.index {
                self.pairs.insert((lt.index, lt.xdeg.max(e.xdeg), i, new));
            }
        }
        self.vecs.push(v);
        self.traces.push(trace);
        self.lts.push(lt);
    }

    fn run(&mut self) -> Result<()> {
        while let Some((_, _, i, j)) = self.pairs.pop_first() {
            let mut combos = Vec::with_capacity(2);
            let (li, lj) = (&self.lts[i], &self.lts[j]);
            if let Some(c) = s_coefficients(li, lj) {
                combos.push(c);
            }
            if let Some(c) = lcm_coefficients(li, lj) {
                combos.push(c);
            }
            for (ci, cj) in combos {
                let (v, t) = self.combine(i, &ci, j, &cj);
                let (v, t) = self.reduce(v, t)?;
                if !v.is_zero() {
                    self.push(v, t);
                }
            }
        }
        Ok(())
    }

    /// Drops elements whose leading term is a multiple of another's, then
    /// reduces the tails of the rest.
    fn finish(mut self) -> Result<(GhnfBasis, Option<Vec<Vec<IntPoly>>>)> {
        let mut order: Vec<usize> = (0..self.vecs.len()).collect();
        order.sort_by(|&a, &b| cmp_vectors(&self.vecs[a], &self.vecs[b]).then(a.cmp(&b)));
        let mut kept: Vec<usize> = Vec::new();
        for i in order {
            if kept.iter().any(|&k| self.lts[i].is_multiple_of(&self.lts[k])) {
                continue;
            }
            kept.push(i);
        }
        let vecs: Vec<LatticeVector> = kept.iter().map(|&k| self.vecs[k].clone()).collect();
        let kept_traces: Vec<Option<Vec<IntPoly>>> = kept.iter().map(|&k| self.traces[k].clone()).collect();
        let mut out_cols = Vec::with_capacity(kept.len());
        let mut out_traces = Vec::with_capacity(kept.len());
        for pos in 0..kept.len() {
            let table = ReducerTable::new(self.dim, vecs.iter().enumerate().filter(|(p, _)| *p != pos));
            let mut v = vecs[pos].clone();
            let mut trace = kept_traces[pos].clone();
            reduce_in_place(&mut v, &vecs, &table, true, &mut self.budget, |s| {
                apply_step(&mut trace, kept_traces[s.reducer].as_ref(), &s.quotient, s.shift)
            })?;
            out_cols.push(v);
            out_traces.push(trace);
        }
        let traces = out_traces.into_iter().collect::<Option<Vec<_>>>();
        Ok((GhnfBasis { dim: self.dim, columns: out_cols }, traces))
    }
}

fn complete(dim: usize, input: &[LatticeVector], opts: &GroebnerOptions, traced: bool) -> Result<(GhnfBasis, Option<Vec<Vec<IntPoly>>>)> {
    for u in input {
        if u.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: u.dim() });
        }
    }
    let mut c = Completion {
        dim,
        vecs: Vec::new(),
        traces: Vec::new(),
        lts: Vec::new(),
        pairs: BTreeSet::new(),
        budget: Budget::new(opts.max_reductions),
    };
    let mut seen: Vec<&LatticeVector> = Vec::new();
    for (i, u) in input.iter().enumerate() {
        if u.is_zero() || seen.contains(&u) {
            continue;
        }
        seen.push(u);
        let trace = traced.then(|| {
            let mut t = vec![IntPoly::zero(); input.len()];
            t[i] = IntPoly::one();
            t
        });
        let (v, t) = c.reduce(u.clone(), trace)?;
        if !v.is_zero() {
            c.push(v, t);
        }
    }
    c.run()?;
    c.finish()
}

pub(crate) fn buchberger_in_dim(dim: usize, input: &[LatticeVector], opts: &GroebnerOptions) -> Result<GhnfBasis> {
    Ok(complete(dim, input, opts, false)?.0)
}

/// Reduced Gröbner basis (GHNF) of the lattice spanned by `input`.
///
/// Zero and duplicate generators are dropped; an all-zero input yields the
/// empty basis of the zero lattice.
pub fn buchberger(input: &[LatticeVector]) -> Result<GhnfBasis> {
    buchberger_with(input, &GroebnerOptions::default())
}

pub fn buchberger_with(input: &[LatticeVector], opts: &GroebnerOptions) -> Result<GhnfBasis> {
    let dim = input
        .first()
        .map(LatticeVector::dim)
        .ok_or_else(|| Error::ZeroInput("no generators".into()))?;
    buchberger_in_dim(dim, input, opts)
}

/// [`buchberger`] that also records every basis column as a combination of
/// the inputs.
pub fn buchberger_traced(input: &[LatticeVector], opts: &GroebnerOptions) -> Result<TracedBasis> {
    let dim = input
        .first()
        .map(LatticeVector::dim)
        .ok_or_else(|| Error::ZeroInput("no generators".into()))?;
    let (basis, trace) = complete(dim, input, opts, true)?;
    Ok(TracedBasis { basis, trace: trace.expect("traces requested") })
}

/// Outcome of checking the four GHNF conditions on a matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GhnfCheck {
    /// Conditions 1-4 in order.
    pub conditions: [bool; 4],
    pub violations: Vec<String>,
}

impl GhnfCheck {
    pub fn is_ghnf(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    fn fail(&mut self, cond: usize, msg: String) {
        self.conditions[cond - 1] = false;
        self.violations.push(format!("condition {cond}: {msg}"));
    }
}

/// Checks the GHNF conditions on the columns of a matrix:
///
/// 1. columns are grouped into blocks by pivot row, blocks ascend, and the
///    pivot degrees strictly increase inside a block;
/// 2. pivot leading coefficients divide along each block, last into first;
/// 3. every in-block S-polynomial reduces to zero by the columns;
/// 4. every column is reduced with respect to all other columns.
pub fn is_ghnf(columns: &[LatticeVector]) -> GhnfCheck {
    let mut check = GhnfCheck { conditions: [true; 4], violations: Vec::new() };
    let lts: Vec<Option<Monomial>> = columns.iter().map(LatticeVector::leading_term).collect();
    for (j, lt) in lts.iter().enumerate() {
        if lt.is_none() {
            check.fail(1, format!("column {} is zero", j + 1));
        }
    }
    if !check.conditions[0] {
        return check;
    }
    let lts: Vec<Monomial> = lts.into_iter().map(|m| m.expect("checked nonzero")).collect();

    for j in 1..lts.len() {
        let (p, c) = (&lts[j - 1], &lts[j]);
        if c.index < p.index {
            check.fail(1, format!("pivot row of column {} is above that of column {}", j + 1, j));
        } else if c.index == p.index && c.xdeg <= p.xdeg {
            check.fail(1, format!("pivot degrees of columns {} and {} do not increase", j, j + 1));
        }
    }

    for j in 1..lts.len() {
        let (p, c) = (&lts[j - 1], &lts[j]);
        if c.index == p.index && (c.coeff.is_zero() || !(&p.coeff % &c.coeff).is_zero()) {
            check.fail(2, format!("pivot coefficient {} of column {} does not divide {} of column {}", c.coeff, j + 1, p.coeff, j));
        }
    }

    for a in 0..columns.len() {
        for b in a + 1..columns.len() {
            if lts[a].index != lts[b].index {
                continue;
            }
            let s = s_polynomial(&columns[a], &columns[b]).expect("nonzero columns");
            if !grem(&s, columns).is_zero() {
                check.fail(3, format!("S-polynomial of columns {} and {} does not reduce to zero", a + 1, b + 1));
            }
        }
    }

    for (j, col) in columns.iter().enumerate() {
        'mono: for m in col.monomials_desc() {
            for (o, lt) in lts.iter().enumerate() {
                if o != j && !is_reduced_monomial(&m, lt) {
                    check.fail(4, format!("column {} is not reduced w.r.t. column {} at {}", j + 1, o + 1, m));
                    break 'mono;
                }
            }
        }
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[&str]) -> LatticeVector {
        LatticeVector::parse(entries).unwrap()
    }

    fn non_toric_c() -> Vec<LatticeVector> {
        vec![v(&["x", "2*x^2+1", "0"]), v(&["x^2+1", "0", "4*x^2+2"])]
    }

    #[test]
    fn gcd_of_constants() {
        let b = buchberger(&[v(&["2"]), v(&["3"])]).unwrap();
        assert_eq!(b.columns(), &[v(&["1"])]);
    }

    #[test]
    fn example_generators_are_already_a_basis() {
        let f1 = v(&["1-x", "2", "0", "0"]);
        let f2 = v(&["0", "0", "1-x", "2"]);
        let b = buchberger(&[f2.clone(), f1.clone()]).unwrap();
        assert_eq!(b.columns(), &[f1, f2]);
        let blocks = b.blocks();
        assert_eq!(blocks.iter().map(|b| b.row).collect::<Vec<_>>(), vec![1, 3]);
        assert!(is_ghnf(b.columns()).is_ghnf());
    }

    #[test]
    fn completion_with_witness_gives_c1() {
        let mut u = non_toric_c();
        u.push(v(&["x", "-1", "4*x"]));
        let b = buchberger(&u).unwrap();
        assert_eq!(b.columns(), &[v(&["x", "2*x^2+1", "0"]), v(&["1", "x", "2"])]);
    }

    #[test]
    fn ghnf_checks() {
        assert!(is_ghnf(&non_toric_c()).is_ghnf());
        let bad = is_ghnf(&[v(&["2", "0"]), v(&["1", "0"])]);
        assert!(!bad.is_ghnf());
        assert!(!bad.conditions[3]);
        assert!(is_ghnf(&[v(&["x"])]).is_ghnf());
    }

    #[test]
    fn zero_input_gives_empty_basis() {
        let b = buchberger(&[LatticeVector::zero(3)]).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn reduction_cap_is_reported() {
        let u = vec![v(&["x^3+2", "3*x^2-1"]), v(&["5*x", "7*x^3+x"]), v(&["2*x^2", "x+4"])];
        let err = buchberger_with(&u, &GroebnerOptions { max_reductions: 3 }).unwrap_err();
        assert!(matches!(err, Error::ResourceExhausted { .. }));
    }

    #[test]
    fn traces_reconstruct_columns() {
        let u = vec![v(&["x+1", "2*x"]), v(&["3", "x^2"]), v(&["x", "1"])];
        let t = buchberger_traced(&u, &GroebnerOptions::default()).unwrap();
        for (col, tr) in t.basis.columns().iter().zip(&t.trace) {
            let mut acc = LatticeVector::zero(2);
            for (c, g) in tr.iter().zip(&u) {
                acc = &acc + &g.mul_poly(c);
            }
            assert_eq!(&acc, col);
        }
    }
}
