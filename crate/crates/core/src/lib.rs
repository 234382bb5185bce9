//! Exact symbolic toolkit for generalized Casimir invariants of solvable Lie
//! algebras with triangular nilradicals and diagonal nilindependent elements.

pub mod algebra;
pub mod closedform;
pub mod coadjoint;
pub mod error;
pub mod grammar;
pub mod invariant;
pub mod matrix;
pub mod normalize;
pub mod poly;
pub mod ratfun;
pub mod rng;
pub mod scalar;
pub mod uea;
pub mod vars;
pub mod verify;

pub use error::{Error, Result};

/// Exact arbitrary-precision rational scalar.
pub type Rat = num_rational::BigRational;
/// Sparse multivariate polynomial over [`Rat`].
pub type Poly = poly::Polynomial<Rat>;
/// Rational function over [`Rat`].
pub type RatFn = ratfun::RationalFunction<Rat>;
/// Matrix of rational functions over [`Rat`].
pub type Mat = matrix::SymMatrix<Rat>;

/// Shorthand for an exact integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
