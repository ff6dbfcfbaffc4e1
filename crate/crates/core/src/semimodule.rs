//! Affine N[x]-semimodules `S = N[x](u_1, ..., u_m)` in Z[x]^n.
//!
//! Membership is a bounded search for the coefficients `g_i in N[x]`. A
//! "no" is only reported when a weight vector `w` makes every `<w, u_i>` a
//! nonzero polynomial with nonnegative coefficients: then any certificate
//! has `sum_i g_i(1) <= <w, v>(1)` and bounded degrees, so the search is
//! exhaustive. Everything else that the search misses is "unknown".

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{LatticeVector, ZxLattice};
use crate::poly::IntPoly;
use crate::saturation::sat_zx;

pub const DEFAULT_DEGREE_SLACK: usize = 2;
pub const DEFAULT_TEST_DEGREE: usize = 3;
pub const DEFAULT_SUBSET_CAP: usize = 12;
pub const DEFAULT_NODE_BUDGET: u64 = 200_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Semimodule {
    dim: usize,
    generators: Vec<LatticeVector>,
}

impl Semimodule {
    pub fn new(dim: usize, generators: Vec<LatticeVector>) -> Result<Self> {
        for g in &generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.dim() });
            }
        }
        Ok(Semimodule { dim, generators })
    }

    pub fn from_generators(generators: Vec<LatticeVector>) -> Result<Self> {
        let dim = generators
            .first()
            .map(LatticeVector::dim)
            .ok_or_else(|| Error::ZeroInput("semimodule needs a generator to fix its dimension".into()))?;
        Self::new(dim, generators)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.generators
    }

    /// The subsemimodule generated by the given positions.
    pub fn sub(&self, indices: &[usize]) -> Result<Semimodule> {
        let gens = indices
            .iter()
            .map(|&i| {
                self.generators
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::InvalidInput(format!("generator index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Semimodule::new(self.dim, gens)
    }

    /// `(S)_{Z[x]}`, the lattice spanned by the generators.
    pub fn lattice(&self) -> ZxLattice {
        ZxLattice::new(self.dim, self.generators.clone()).expect("dimension checked")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SemimoduleBounds {
    /// Extra certificate degree beyond `deg v + max deg u_i`.
    pub degree_slack: usize,
    /// Overrides the certificate degree bound.
    pub degree_bound: Option<usize>,
    /// Cap on each certificate coefficient; defaults to `max(2, height(v))`.
    pub coeff_bound: Option<u64>,
    /// Largest power `k` of the test elements `x^k u_i` used for faces.
    pub test_degree: usize,
    pub subset_cap: usize,
    /// Search nodes per membership query before giving up.
    pub node_budget: u64,
}

impl Default for SemimoduleBounds {
    fn default() -> Self {
        SemimoduleBounds {
            degree_slack: DEFAULT_DEGREE_SLACK,
            degree_bound: None,
            coeff_bound: None,
            test_degree: DEFAULT_TEST_DEGREE,
            subset_cap: DEFAULT_SUBSET_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipAnswer {
    pub status: Status,
    /// `g_i` with `sum_i g_i u_i = v`, when the answer is yes.
    pub certificate: Option<Vec<IntPoly>>,
    /// Certificate degree searched.
    pub degree_bound: usize,
    /// Coefficient cap searched (for a proved answer: the total coefficient sum).
    pub coeff_bound: u64,
    /// Weight vector proving the search exhaustive, if one was found.
    pub functional: Option<Vec<i64>>,
}

impl MembershipAnswer {
    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }
}

/// `sum_i g_i u_i`.
pub fn expand(gens: &[LatticeVector], g: &[IntPoly], dim: usize) -> LatticeVector {
    gens.iter().zip(g).fold(LatticeVector::zero(dim), |acc, (u, c)| &acc + &u.mul_poly(c))
}

fn weighted(w: &[i64], u: &LatticeVector) -> IntPoly {
    w.iter()
        .zip(u.entries())
        .fold(IntPoly::zero(), |acc, (&wi, e)| &acc + &e.scale(&BigInt::from(wi)))
}

fn nonneg(p: &IntPoly) -> bool {
    p.coeffs().iter().all(|c| !c.is_negative())
}

/// A weight vector with `<w, u_i>` nonzero and coefficientwise nonnegative
/// for every generator, searched over small boxes.
pub fn positive_functional(dim: usize, gens: &[LatticeVector]) -> Option<Vec<i64>> {
    let range: i64 = match dim {
        0 => return gens.is_empty().then(Vec::new),
        1..=3 => 3,
        4..=5 => 2,
        6..=8 => 1,
        _ => return None,
    };
    let mut w = vec![-range; dim];
    loop {
        if gens.iter().all(|u| {
            let p = weighted(&w, u);
            !p.is_zero() && nonneg(&p)
        }) {
            return Some(w);
        }
        let mut i = 0;
        loop {
            if i == dim {
                return None;
            }
            if w[i] < range {
                w[i] += 1;
                break;
            }
            w[i] = -range;
            i += 1;
        }
    }
}

struct Search<'a> {
    gens: &'a [LatticeVector],
    dim: usize,
    /// Constant terms `u_i(0)`.
    consts: Vec<Vec<BigInt>>,
    deg_cap: Vec<Option<usize>>,
    coeff_cap: u64,
    sum_cap: Option<u64>,
    top: usize,
    budget: u64,
    exhausted: bool,
    chosen: Vec<Vec<u64>>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        if self.budget == 0 {
            self.exhausted = true;
            return false;
        }
        self.budget -= 1;
        true
    }

    fn active(&self, i: usize, k: usize) -> bool {
        self.deg_cap[i].is_some_and(|d| k <= d)
    }

    /// Levels `k..=top`; `res` is `v` minus the contributions chosen so far.
    fn level(&mut self, k: usize, res: &LatticeVector, used: u64) -> bool {
        if k > self.top {
            return res.is_zero();
        }
        let target: Vec<BigInt> = res.entries().iter().map(|e| e.coeff(k)).collect();
        let mut counts = vec![0u64; self.gens.len()];
        self.choose(k, 0, &target, &mut counts, res, used)
    }

    fn choose(&mut self, k: usize, i: usize, target: &[BigInt], counts: &mut Vec<u64>, res: &LatticeVector, used: u64) -> bool {
        if !self.tick() {
            return false;
        }
        let m = self.gens.len();
        if i == m {
            if target.iter().any(|t| !t.is_zero()) {
                return false;
            }
            let mut next = res.clone();
            for (j, &c) in counts.iter().enumerate() {
                if c > 0 {
                    next.sub_scaled_shifted(&BigInt::from(c), k, &self.gens[j]);
                }
            }
            self.chosen.push(counts.clone());
            let ok = self.level(k + 1, &next, used);
            if !ok {
                self.chosen.pop();
            }
            return ok;
        }
        let cap = if self.active(i, k) {
            self.sum_cap.map_or(self.coeff_cap, |s| self.coeff_cap.min(s - used))
        } else {
            0
        };
        for c in 0..=cap {
            let cb = BigInt::from(c);
            let rest: Vec<BigInt> = target.iter().zip(&self.consts[i]).map(|(t, u)| t - &cb * u).collect();
            if !self.reachable(k, i + 1, &rest, used + c) {
                continue;
            }
            counts[i] = c;
            if self.choose(k, i + 1, &rest, counts, res, used + c) {
                return true;
            }
            if self.exhausted {
                return false;
            }
        }
        counts[i] = 0;
        false
    }

    /// Interval check: can generators `from..` still hit `rest` coordinatewise?
    fn reachable(&self, k: usize, from: usize, rest: &[BigInt], used: u64) -> bool {
        let left = self.sum_cap.map_or(self.coeff_cap, |s| self.coeff_cap.min(s.saturating_sub(used)));
        let left = BigInt::from(left);
        (0..self.dim).all(|r| {
            let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
            for j in from..self.gens.len() {
                if !self.active(j, k) {
                    continue;
                }
                let a = &self.consts[j][r] * &left;
                if a.is_negative() {
                    lo += a;
                } else {
                    hi += a;
                }
            }
            lo <= rest[r] && rest[r] <= hi
        })
    }
}

/// Bounded membership of `v` in `S`. Never a false yes: certificates are
/// re-expanded before being returned.
pub fn ss_member(v: &LatticeVector, s: &Semimodule, bounds: &SemimoduleBounds) -> Result<MembershipAnswer> {
    if v.dim() != s.dim {
        return Err(Error::DimensionMismatch { expected: s.dim, found: v.dim() });
    }
    let m = s.generators.len();
    let gdeg = s.generators.iter().filter_map(LatticeVector::max_degree).max().unwrap_or(0);
    let vdeg = v.max_degree().unwrap_or(0);
    let mut degree_bound = bounds.degree_bound.unwrap_or(vdeg + gdeg + bounds.degree_slack);
    let height = v.entries().iter().map(|e| e.height()).max().unwrap_or_default();
    let mut coeff_bound = bounds.coeff_bound.unwrap_or_else(|| height.to_u64().unwrap_or(u64::MAX).max(2));
    let answer = |status, certificate, degree_bound, coeff_bound, functional| MembershipAnswer {
        status,
        certificate,
        degree_bound,
        coeff_bound,
        functional,
    };
    if v.is_zero() {
        return Ok(answer(Status::Yes, Some(vec![IntPoly::zero(); m]), 0, 0, None));
    }
    let functional = positive_functional(s.dim, &s.generators);
    let mut deg_cap = vec![Some(degree_bound); m];
    let mut sum_cap = None;
    if let Some(w) = &functional {
        let wv = weighted(w, v);
        if wv.is_zero() || !nonneg(&wv) {
            return Ok(answer(Status::No, None, 0, 0, functional));
        }
        let top = wv.degree().expect("nonzero");
        let total = wv.eval(&BigInt::from(1));
        let Some(total) = total.to_u64() else {
            return Ok(answer(Status::Unknown, None, degree_bound, coeff_bound, functional));
        };
        for (i, u) in s.generators.iter().enumerate() {
            let du = weighted(w, u).degree().expect("nonzero by choice of w");
            deg_cap[i] = top.checked_sub(du);
        }
        degree_bound = deg_cap.iter().flatten().copied().max().unwrap_or(0);
        coeff_bound = total;
        sum_cap = Some(total);
    }
    let mut search = Search {
        gens: &s.generators,
        dim: s.dim,
        consts: s.generators.iter().map(|u| u.entries().iter().map(|e| e.coeff(0)).collect()).collect(),
        deg_cap,
        coeff_cap: coeff_bound,
        sum_cap,
        top: degree_bound + gdeg,
        budget: bounds.node_budget,
        exhausted: false,
        chosen: Vec::new(),
    };
    let found = search.level(0, v, 0);
    if found {
        let cert: Vec<IntPoly> = (0..m)
            .map(|i| IntPoly::new(search.chosen.iter().map(|lvl| BigInt::from(lvl[i])).collect()))
            .collect();
        if expand(&s.generators, &cert, s.dim) != *v {
            return Err(Error::Verification("membership certificate failed to verify".into()));
        }
        return Ok(answer(Status::Yes, Some(cert), degree_bound, coeff_bound, functional));
    }
    let status = if sum_cap.is_some() && !search.exhausted { Status::No } else { Status::Unknown };
    Ok(answer(status, None, degree_bound, coeff_bound, functional))
}

/// A face, given by generator positions; `{0}` is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub indices: Vec<usize>,
    pub generators: Vec<LatticeVector>,
    /// False when some membership query on the test set came back unknown.
    pub confirmed: bool,
}

/// Elements `x^k u_i` with `k <= K`.
pub fn test_elements(s: &Semimodule, k: usize) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    for u in &s.generators {
        for e in 0..=k {
            out.push(u.mul_poly(&IntPoly::monomial(BigInt::from(1), e)));
        }
    }
    out
}

enum Check {
    Pass,
    Fail,
    Unsure,
}

struct FaceTester<'a> {
    face: Semimodule,
    bounds: &'a SemimoduleBounds,
    unsure: bool,
}

impl FaceTester<'_> {
    fn member(&mut self, v: &LatticeVector) -> Result<Status> {
        if self.face.generators.is_empty() {
            return Ok(if v.is_zero() { Status::Yes } else { Status::No });
        }
        Ok(ss_member(v, &self.face, self.bounds)?.status)
    }

    /// `premise in F` must imply every `parts in F`.
    fn implication(&mut self, premise: &LatticeVector, parts: &[&LatticeVector]) -> Result<bool> {
        match self.member(premise)? {
            Status::No => return Ok(true),
            Status::Unknown => {
                self.unsure = true;
                return Ok(true);
            }
            Status::Yes => {}
        }
        for p in parts {
            match self.member(p)? {
                Status::Yes => {}
                Status::No => return Ok(false),
                Status::Unknown => self.unsure = true,
            }
        }
        Ok(true)
    }
}

fn check_face(s: &Semimodule, indices: &[usize], tests: &[LatticeVector], bounds: &SemimoduleBounds) -> Result<Check> {
    let mut t = FaceTester { face: s.sub(indices)?, bounds, unsure: false };
    let mut sums = Vec::new();
    for (i, a) in tests.iter().enumerate() {
        for b in &tests[i..] {
            let ab = a + b;
            if !t.implication(&ab, &[a, b])? {
                return Ok(Check::Fail);
            }
            sums.push(ab);
        }
    }
    let x = IntPoly::x();
    for a in tests.iter().chain(&sums) {
        if !t.implication(&a.mul_poly(&x), &[a])? {
            return Ok(Check::Fail);
        }
    }
    Ok(if t.unsure { Check::Unsure } else { Check::Pass })
}

/// All generator subsets passing both face axioms on the test set, ordered
/// by size and then positions. `S` itself is always included.
pub fn enumerate_faces(s: &Semimodule, bounds: &SemimoduleBounds) -> Result<Vec<Face>> {
    let m = s.generators.len();
    if m > bounds.subset_cap {
        return Err(Error::ResourceExhausted { what: "face enumeration generator subsets".into(), limit: bounds.subset_cap as u64 });
    }
    let tests = test_elements(s, bounds.test_degree);
    let mut subsets: Vec<Vec<usize>> = (0u64..1 << m).map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut faces = Vec::new();
    for idx in subsets {
        let confirmed = if idx.len() == m {
            true
        } else {
            match check_face(s, &idx, &tests, bounds)? {
                Check::Pass => true,
                Check::Unsure => false,
                Check::Fail => continue,
            }
        };
        let generators = idx.iter().map(|&i| s.generators[i].clone()).collect();
        faces.push(Face { indices: idx, generators, confirmed });
    }
    Ok(faces)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pointedness {
    /// `None` when neither a proof nor a counterexample was found.
    pub pointed: Option<bool>,
    /// Weight vector proving pointedness.
    pub functional: Option<Vec<i64>>,
    /// Nonzero `v` with `v` and `-v` in `S`.
    pub witness: Option<LatticeVector>,
}

/// Whether `S ∩ (-S) = {0}`.
pub fn is_pointed(s: &Semimodule, bounds: &SemimoduleBounds) -> Result<Pointedness> {
    if let Some(w) = positive_functional(s.dim, &s.generators) {
        return Ok(Pointedness { pointed: Some(true), functional: Some(w), witness: None });
    }
    let tests = test_elements(s, bounds.test_degree);
    let mut cands: Vec<LatticeVector> = tests.clone();
    for (i, a) in tests.iter().enumerate() {
        for b in &tests[i..] {
            cands.push(a + b);
        }
    }
    for v in cands.into_iter().filter(|v| !v.is_zero()) {
        if ss_member(&-&v, s, bounds)?.is_yes() {
            return Ok(Pointedness { pointed: Some(false), functional: None, witness: Some(v) });
        }
    }
    Ok(Pointedness { pointed: None, functional: None, witness: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceSaturation {
    pub holds: bool,
    /// An element of `sat((F)) ∩ (S)` outside `(F)`.
    pub witness: Option<LatticeVector>,
}

/// Whether `sat_{Z[x]}((F)) ∩ (S) ⊆ (F)`, the lattice-level necessary
/// condition for face-saturation. `face` lists generator positions of `S`.
pub fn face_saturated_necessary(s: &Semimodule, face: &[usize]) -> Result<FaceSaturation> {
    let f = s.sub(face)?.lattice();
    let sat = sat_zx(&f)?.lattice;
    let inter = crate::syzygy::lattice_intersection(&sat, &s.lattice())?;
    for g in inter.ghnf()?.columns() {
        if !f.member(g)? {
            return Ok(FaceSaturation { holds: false, witness: Some(g.clone()) });
        }
    }
    Ok(FaceSaturation { holds: true, witness: None })
}
