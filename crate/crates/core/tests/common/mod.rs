//! Oracles independent of the Gröbner machinery, and random generators.
//!
//! A degree-truncated piece of a Z[x]-module is a finitely generated
//! Z-module of coefficient vectors, so membership and kernels can be decided
//! with plain integer column echelon forms.

#![allow(dead_code)]

use difftoric::order_bound::ExtNatMatrix;
use difftoric::{ExtNat, IntPoly, LatticeVector, PolyMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn rand_poly(rng: &mut ChaCha8Rng, max_deg: usize, max_coeff: i64) -> IntPoly {
    let d = rng.gen_range(0..=max_deg);
    IntPoly::new((0..=d).map(|_| BigInt::from(rng.gen_range(-max_coeff..=max_coeff))).collect())
}

pub fn rand_vector(rng: &mut ChaCha8Rng, dim: usize, max_deg: usize, max_coeff: i64) -> LatticeVector {
    LatticeVector::new((0..dim).map(|_| rand_poly(rng, max_deg, max_coeff)).collect())
}

/// Random nonzero vectors.
pub fn rand_generators(rng: &mut ChaCha8Rng, dim: usize, count: usize, max_deg: usize, max_coeff: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    while out.len() < count {
        let v = rand_vector(rng, dim, max_deg, max_coeff);
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

pub fn rand_ext_matrix(rng: &mut ChaCha8Rng, n: usize) -> ExtNatMatrix {
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(0.25) { ExtNat::NegInf } else { ExtNat::Fin(rng.gen_range(0..20)) })
                .collect()
        })
        .collect();
    ExtNatMatrix::new(rows).unwrap()
}

/// Coefficients of `f` laid out as `entry * (width) + power`.
pub fn flatten(f: &LatticeVector, width: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.dim() * width];
    for (r, e) in f.entries().iter().enumerate() {
        for (k, c) in e.coeffs().iter().enumerate() {
            assert!(k < width, "degree exceeds flattening width");
            out[r * width + k] = c.clone();
        }
    }
    out
}

pub fn unflatten(v: &[BigInt], dim: usize, width: usize) -> LatticeVector {
    LatticeVector::new((0..dim).map(|r| IntPoly::new(v[r * width..(r + 1) * width].to_vec())).collect())
}

/// Lower-triangular integer column echelon form of the span of `cols`,
/// each column carrying a tag vector transformed alongside it.
pub struct Echelon {
    /// `(pivot coordinate, column, tag)`, pivots ascending.
    pub pivots: Vec<(usize, Vec<BigInt>, Vec<BigInt>)>,
    /// Tags of the columns reduced to zero: a Z-basis of the relations.
    pub kernel: Vec<Vec<BigInt>>,
}

fn combine(a: &[BigInt], b: &[BigInt], s: &BigInt, t: &BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| s * x + t * y).collect()
}

pub fn echelon(cols: Vec<Vec<BigInt>>) -> Echelon {
    let m = cols.len();
    let len = cols.first().map_or(0, Vec::len);
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = cols
        .into_iter()
        .enumerate()
        .map(|(j, c)| {
            let mut tag = vec![BigInt::zero(); m];
            tag[j] = BigInt::one();
            (c, tag)
        })
        .collect();
    let mut pivots = Vec::new();
    for p in 0..len {
        let mut active: Vec<usize> = (0..work.len()).filter(|&j| !work[j].0[p].is_zero()).collect();
        if active.is_empty() {
            continue;
        }
        // fold every active column into the first with unimodular 2x2 steps
        let first = active.remove(0);
        for j in active {
            let (a, b) = (work[first].0[p].clone(), work[j].0[p].clone());
            let e = a.extended_gcd(&b);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let (u, v) = (&b / &g, &a / &g);
            let (c1, t1) = (&work[first].0, &work[first].1);
            let (c2, t2) = (&work[j].0, &work[j].1);
            let new_first = (combine(c1, c2, &s, &t), combine(t1, t2, &s, &t));
            let new_j = (combine(c1, c2, &-&u, &v), combine(t1, t2, &-&u, &v));
            work[first] = new_first;
            work[j] = new_j;
        }
        let (c, tag) = work.remove(first);
        pivots.push((p, c, tag));
    }
    let kernel = work.into_iter().map(|(c, tag)| {
        debug_assert!(c.iter().all(Zero::is_zero));
        tag
    });
    Echelon { pivots, kernel: kernel.collect() }
}

impl Echelon {
    /// Whether `b` lies in the Z-span of the columns.
    pub fn contains(&self, b: &[BigInt]) -> bool {
        let mut b = b.to_vec();
        let mut next = 0;
        for p in 0..b.len() {
            if next < self.pivots.len() && self.pivots[next].0 == p {
                let (_, col, _) = &self.pivots[next];
                let (q, r) = b[p].div_rem(&col[p]);
                if !r.is_zero() {
                    return false;
                }
                for (bi, ci) in b.iter_mut().zip(col) {
                    *bi -= &q * ci;
                }
                next += 1;
            } else if !b[p].is_zero() {
                return false;
            }
        }
        true
    }
}

/// Columns `x^k g` for `k <= cof_deg`, flattened to `width` powers.
fn shifted_columns(gens: &[LatticeVector], cof_deg: usize, width: usize) -> Vec<Vec<BigInt>> {
    let mut cols = Vec::new();
    for g in gens {
        for k in 0..=cof_deg {
            cols.push(flatten(&g.mul_poly(&IntPoly::monomial(BigInt::one(), k)), width));
        }
    }
    cols
}

/// Whether `f = sum_j c_j g_j` with every `deg c_j <= cof_deg`.
pub fn bounded_member(f: &LatticeVector, gens: &[LatticeVector], cof_deg: usize) -> bool {
    let gdeg = gens.iter().filter_map(LatticeVector::max_degree).max().unwrap_or(0);
    let fdeg = f.max_degree().unwrap_or(0);
    let width = (gdeg + cof_deg).max(fdeg) + 1;
    if gens.is_empty() {
        return f.is_zero();
    }
    echelon(shifted_columns(gens, cof_deg, width)).contains(&flatten(f, width))
}

/// A Z-basis of `{f : A f = 0, deg f <= deg_bound}`.
pub fn bounded_kernel(a: &PolyMatrix, deg_bound: usize) -> Vec<LatticeVector> {
    let m = a.ncols();
    let adeg = a.columns().iter().filter_map(LatticeVector::max_degree).max().unwrap_or(0);
    let width = adeg + deg_bound + 1;
    let cols = shifted_columns(a.columns(), deg_bound, width);
    echelon(cols)
        .kernel
        .into_iter()
        .map(|tag| {
            // tag index j * (deg_bound + 1) + k is the coefficient of x^k in f_j
            unflatten(&tag, m, deg_bound + 1)
        })
        .collect()
}

/// Maximum diagonal sum over all permutations.
pub fn brute_jacobi(m: &ExtNatMatrix) -> ExtNat {
    fn go(m: &ExtNatMatrix, row: usize, used: &mut [bool], acc: ExtNat, best: &mut ExtNat) {
        if row == m.size() {
            *best = (*best).max(acc);
            return;
        }
        for j in 0..m.size() {
            if !used[j] {
                used[j] = true;
                go(m, row + 1, used, acc + m.get(row, j), best);
                used[j] = false;
            }
        }
    }
    let mut best = ExtNat::NegInf;
    go(m, 0, &mut vec![false; m.size()], ExtNat::Fin(0), &mut best);
    best
}

/// Irreducibility over Q by exhaustive search for a factor with small
/// coefficients; only meant for tiny inputs.
pub fn has_small_factor(p: &IntPoly, max_coeff: i64) -> bool {
    let d = p.degree().unwrap_or(0);
    for fd in 1..=d / 2 {
        let mut coeffs = vec![-max_coeff; fd + 1];
        loop {
            let q = IntPoly::from_i64s(&coeffs);
            if q.degree() == Some(fd) && q.leading_coeff().is_some_and(|c| c.is_positive()) && p.div_exact(&q).is_some() {
                return true;
            }
            let mut i = 0;
            loop {
                if i > fd {
                    break;
                }
                if coeffs[i] < max_coeff {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -max_coeff;
                i += 1;
            }
            if i > fd {
                break;
            }
        }
    }
    false
}
