//! Exact computations for toric difference varieties.
//!
//! Exponent vectors of difference monomials live in Z[x]^n, where `x`
//! stands for the difference operator. This crate works with submodules of
//! Z[x]^n (Z[x]-lattices) and the objects built from them:
//!
//! * [`poly`]: arithmetic in Z[x], Q[x] and Q[x]/(p), plus factorization;
//! * [`lattice`]: the monomial order, reduction, S-polynomials and reduced
//!   Gröbner bases in generalized Hermite normal form;
//! * [`saturation`]: Z-, Q[x]- and Z[x]-saturation, deciding whether a
//!   lattice (and so its binomial difference ideal) is toric;
//! * [`syzygy`]: kernels, orthogonal complements, intersections and the
//!   conversion between monomial parametrizations and binomial equations;
//! * [`semimodule`]: affine N[x]-semimodules, their faces and pointedness;
//! * [`order_bound`]: Jacobi numbers and the order bound of a toric
//!   difference variety.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod order_bound;
pub mod poly;
pub mod saturation;
pub mod semimodule;
pub mod syzygy;

pub use error::{Error, Result};
pub use lattice::{GhnfBasis, LatticeVector, Monomial, PolyMatrix, ZxLattice};
pub use poly::{ExtNat, IntPoly, RatPoly};
