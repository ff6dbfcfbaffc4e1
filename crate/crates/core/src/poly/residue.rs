use std::fmt;
use std::sync::Arc;

use super::{bezout_qx, factor_poly, IntPoly, RatPoly};
use crate::error::{Error, Result};

/// The field Q[x]/(p) for an irreducible `p` of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    modulus: IntPoly,
    modulus_q: RatPoly,
}

impl ResidueField {
    /// Builds the field, checking that `p` is irreducible over Q.
    pub fn new(p: &IntPoly) -> Result<Arc<Self>> {
        let fac = factor_poly(p)?;
        let irreducible = fac.factors.len() == 1 && fac.factors[0].1 == 1;
        if p.is_constant() || !irreducible {
            return Err(Error::InvalidInput(format!("residue modulus {p} is not irreducible of positive degree")));
        }
        Ok(Self::new_unchecked(p))
    }

    /// Builds the field without an irreducibility check; the caller vouches
    /// for `p` (e.g. it came out of [`factor_poly`]).
    pub fn new_unchecked(p: &IntPoly) -> Arc<Self> {
        Arc::new(ResidueField { modulus: p.clone(), modulus_q: p.to_rat() })
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    pub fn reduce(&self, a: &RatPoly) -> RatPoly {
        a.divrem(&self.modulus_q).expect("modulus is nonzero").1
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &RatPoly) -> Result<RatPoly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, u, _) = bezout_qx(&a, &self.modulus_q)?;
        if g.degree() != Some(0) {
            return Err(Error::InvalidInput(format!("{a} is a zero divisor modulo {}", self.modulus)));
        }
        Ok(self.reduce(&u))
    }

    pub fn elem(self: &Arc<Self>, rep: &RatPoly) -> ResidueElem {
        ResidueElem { rep: self.reduce(rep), field: Arc::clone(self) }
    }
}

/// An element of Q[x]/(p), held by its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueElem {
    rep: RatPoly,
    field: Arc<ResidueField>,
}

impl ResidueElem {
    pub fn rep(&self) -> &RatPoly {
        &self.rep
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rep == RatPoly::one()
    }

    fn same_field(&self, other: &ResidueElem) {
        assert_eq!(self.field.modulus, other.field.modulus, "residue elements from different fields");
    }

    pub fn add(&self, other: &ResidueElem) -> ResidueElem {
        self.same_field(other);
        ResidueElem { rep: &self.rep + &other.rep, field: Arc::clone(&self.field) }
    }

    pub fn sub(&self, other: &ResidueElem) -> ResidueElem {
        self.same_field(other);
        ResidueElem { rep: &self.rep - &other.rep, field: Arc::clone(&self.field) }
    }

    pub fn mul(&self, other: &ResidueElem) -> ResidueElem {
        self.same_field(other);
        ResidueElem { rep: self.field.mul(&self.rep, &other.rep), field: Arc::clone(&self.field) }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inverse(&self) -> Result<ResidueElem> {
        Ok(ResidueElem { rep: self.field.inv(&self.rep)?, field: Arc::clone(&self.field) })
    }
}

impl fmt::Display for ResidueElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod ({})", self.rep, self.field.modulus)
    }
}

/// Inverse of a nonzero residue class.
pub fn residue_inverse(e: &ResidueElem) -> Result<ResidueElem> {
    e.inverse()
}
