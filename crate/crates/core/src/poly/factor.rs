//! Integer and Z[x] factorization at desk scale.
//!
//! Integers are factored by trial division up to a bound. Polynomials go
//! through content extraction, Yun's squarefree decomposition, rational
//! root extraction and finally Kronecker's interpolation search for
//! factors of degree two and up.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{gcd_qx, IntPoly, RatPoly};
use crate::error::{Error, Result};

/// Default trial-division bound for [`factor_int`].
pub const DEFAULT_TRIAL_BOUND: u64 = 10_000_000;

/// Cap on the number of interpolation candidates tried per factor degree.
const KRONECKER_CANDIDATE_CAP: u128 = 4_000_000;

/// Prime factors of `|n|` with multiplicity, ascending.
pub fn factor_int(n: &BigInt) -> Result<Vec<BigInt>> {
    factor_int_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// Trial division by every `d <= bound`. A cofactor that might still be
/// composite once `d` passes the bound is reported as an error.
pub fn factor_int_with_bound(n: &BigInt, bound: u64) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::ZeroInput("cannot factor 0".into()));
    }
    let mut m = n.abs();
    let mut primes = Vec::new();
    let two = BigInt::from(2u32);
    while m.is_even() {
        primes.push(two.clone());
        m /= &two;
    }
    let mut d: u64 = 3;
    loop {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        if d > bound {
            return Err(Error::FactorBoundExceeded { value: n.to_string(), bound });
        }
        while (&m % &db).is_zero() {
            primes.push(db.clone());
            m /= &db;
        }
        d += 2;
    }
    if !m.is_one() {
        primes.push(m);
    }
    Ok(primes)
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut counts: BTreeMap<BigInt, u32> = BTreeMap::new();
    for p in factor_int(n)? {
        *counts.entry(p).or_default() += 1;
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in counts {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Factorization `p = content * prod(f_i ^ e_i)` over Z.
///
/// Factors are irreducible over Q, primitive, with positive leading
/// coefficient, sorted by degree and then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFactorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl PolyFactorization {
    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// Distinct irreducible factors of positive degree.
    pub fn nonconstant_factors(&self) -> impl Iterator<Item = &IntPoly> {
        self.factors.iter().map(|(f, _)| f).filter(|f| !f.is_constant())
    }
}

/// Factors a nonzero polynomial into irreducibles over Q.
pub fn factor_poly(p: &IntPoly) -> Result<PolyFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput("cannot factor the zero polynomial".into()));
    }
    let (content, prim) = p.primitive_part();
    let mut factors: BTreeMap<(usize, Vec<BigInt>), (IntPoly, u32)> = BTreeMap::new();
    for (sqf, mult) in squarefree_decomposition(&prim)? {
        for f in split_squarefree(&sqf)? {
            let key = (f.degree().unwrap_or(0), f.coeffs().to_vec());
            factors.entry(key).or_insert_with(|| (f, 0)).1 += mult;
        }
    }
    Ok(PolyFactorization { content, factors: factors.into_values().collect() })
}

fn to_primitive_int(q: &RatPoly) -> IntPoly {
    q.to_int_scaled().1.primitive_part().1
}

/// Yun's algorithm on a primitive polynomial with positive leading
/// coefficient; returns primitive squarefree parts with multiplicities.
fn squarefree_decomposition(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let fq = f.to_rat();
    let df = f.derivative().to_rat();
    let a0 = gcd_qx(&fq, &df)?;
    let mut b = fq.divrem(&a0)?.0;
    let c = df.divrem(&a0)?.0;
    let mut d = &c - &derivative_q(&b);
    let mut out = Vec::new();
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd_qx(&b, &d)?;
        if a.degree().unwrap_or(0) > 0 {
            out.push((to_primitive_int(&a), i));
        }
        b = b.divrem(&a)?.0;
        let c = d.divrem(&a)?.0;
        d = &c - &derivative_q(&b);
        i += 1;
    }
    Ok(out)
}

fn derivative_q(p: &RatPoly) -> RatPoly {
    RatPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Splits a primitive squarefree polynomial into irreducible factors.
fn split_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let deg = f.degree().unwrap_or(0);
    if deg <= 1 {
        return Ok(vec![f.primitive_part().1]);
    }
    if let Some(root) = linear_factor(f)? {
        let rest = f.div_exact(&root).expect("root factor divides");
        let mut out = vec![root];
        out.extend(split_squarefree(&rest.primitive_part().1)?);
        return Ok(out);
    }
    for d in 2..=deg / 2 {
        if let Some(h) = kronecker_factor(f, d)? {
            let rest = f.div_exact(&h).expect("candidate was checked to divide");
            let mut out = split_squarefree(&h)?;
            out.extend(split_squarefree(&rest.primitive_part().1)?);
            return Ok(out);
        }
    }
    Ok(vec![f.clone()])
}

/// A primitive linear factor `q*x - p` from a rational root `p/q`.
fn linear_factor(f: &IntPoly) -> Result<Option<IntPoly>> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Ok(Some(IntPoly::x()));
    }
    let lc = f.leading_coeff().expect("nonzero").abs();
    let ps = positive_divisors(&a0)?;
    let qs = positive_divisors(&lc)?;
    for q in &qs {
        for p in &ps {
            if !p.gcd(q).is_one() {
                continue;
            }
            for num in [p.clone(), -p] {
                let r = BigRational::new(num.clone(), q.clone());
                if f.to_rat().eval(&r).is_zero() {
                    return Ok(Some(IntPoly::new(vec![-num, q.clone()])));
                }
            }
        }
    }
    Ok(None)
}

/// Searches for a factor of exact degree `d` by interpolating through
/// divisors of `f` at `d + 1` integer points.
fn kronecker_factor(f: &IntPoly, d: usize) -> Result<Option<IntPoly>> {
    let npts = d + 1;
    let mut pool: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let radius = (2 * npts + 4) as i64;
    for a in -radius..=radius {
        let a = BigInt::from(a);
        let v = f.eval(&a);
        if v.is_zero() {
            continue;
        }
        pool.push((a, positive_divisors(&v)?));
    }
    pool.sort_by(|x, y| x.1.len().cmp(&y.1.len()).then(x.0.abs().cmp(&y.0.abs())).then(x.0.cmp(&y.0)));
    pool.truncate(npts);
    if pool.len() < npts {
        return Ok(None);
    }
    let total: u128 = pool
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| ds.len() as u128 * if i == 0 { 1 } else { 2 })
        .product();
    if total > KRONECKER_CANDIDATE_CAP {
        return Err(Error::ResourceExhausted {
            what: format!("Kronecker factor search for degree {d} factor of {f}"),
            limit: KRONECKER_CANDIDATE_CAP as u64,
        });
    }
    let points: Vec<BigRational> = pool.iter().map(|(a, _)| BigRational::from_integer(a.clone())).collect();
    let lc = f.leading_coeff().expect("nonzero").clone();
    let mut choice = vec![0usize; npts];
    let sizes: Vec<usize> = pool
        .iter()
        .enumerate()
        .map(|(i, (_, ds))| ds.len() * if i == 0 { 1 } else { 2 })
        .collect();
    loop {
        let values: Vec<BigRational> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let ds = &pool[i].1;
                let v = if i == 0 || c < ds.len() { ds[c % ds.len()].clone() } else { -ds[c - ds.len()].clone() };
                BigRational::from_integer(v)
            })
            .collect();
        if let Some(h) = interpolate_integral(&points, &values) {
            if h.degree() == Some(d) && (&lc % h.leading_coeff().expect("deg d")).is_zero() && f.div_exact(&h).is_some() {
                return Ok(Some(h.primitive_part().1));
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == npts {
                return Ok(None);
            }
            choice[i] += 1;
            if choice[i] < sizes[i] {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Newton interpolation; `None` unless the interpolant has integer
/// coefficients.
fn interpolate_integral(xs: &[BigRational], ys: &[BigRational]) -> Option<IntPoly> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = RatPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = RatPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        acc = &(&acc * &lin) + &RatPoly::constant(dd[i].clone());
    }
    if acc.coeffs().iter().all(|c| c.is_integer()) {
        Some(IntPoly::new(acc.coeffs().iter().map(|c| c.to_integer()).collect()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn integer_factorization() {
        assert_eq!(factor_int(&BigInt::from(12)).unwrap(), ints(&[2, 2, 3]));
        assert_eq!(factor_int(&BigInt::from(1)).unwrap(), ints(&[]));
        assert_eq!(factor_int(&BigInt::from(42)).unwrap(), ints(&[2, 3, 7]));
        assert_eq!(factor_int(&BigInt::from(-9)).unwrap(), ints(&[3, 3]));
        assert!(matches!(factor_int(&BigInt::zero()), Err(Error::ZeroInput(_))));
    }

    #[test]
    fn trial_bound_is_reported() {
        // 1000003 * 1000033, both prime
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert!(matches!(factor_int_with_bound(&n, 1000), Err(Error::FactorBoundExceeded { .. })));
        assert_eq!(factor_int(&n).unwrap(), ints(&[1_000_003, 1_000_033]));
    }

    #[test]
    fn named_polynomial_factorizations() {
        let f = factor_poly(&p("4*x^2+2")).unwrap();
        assert_eq!(f.content, BigInt::from(2));
        assert_eq!(f.factors, vec![(p("2*x^2+1"), 1)]);

        let f = factor_poly(&p("x^2-1")).unwrap();
        assert_eq!(f.factors, vec![(p("x-1"), 1), (p("x+1"), 1)]);

        let f = factor_poly(&p("x^4+2*x^2+1")).unwrap();
        assert_eq!(f.factors, vec![(p("x^2+1"), 2)]);
        assert!(factor_poly(&IntPoly::zero()).is_err());
    }

    #[test]
    fn quartic_without_rational_roots() {
        // (x^2+x+1)(x^2-3) has no rational roots
        let g = &p("x^2+x+1") * &p("x^2-3");
        let f = factor_poly(&g).unwrap();
        assert_eq!(f.factors, vec![(p("x^2-3"), 1), (p("x^2+x+1"), 1)]);
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn negative_content_and_constants() {
        let f = factor_poly(&p("-6*x+3")).unwrap();
        assert_eq!(f.content, BigInt::from(-3));
        assert_eq!(f.factors, vec![(p("2*x-1"), 1)]);
        let f = factor_poly(&p("-5")).unwrap();
        assert_eq!(f.content, BigInt::from(-5));
        assert!(f.factors.is_empty());
    }
}
