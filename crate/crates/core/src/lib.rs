//! Exact SO(3) TQFT spaces of conformal blocks and quantum representations
//! of mapping class groups over cyclotomic fields, together with their
//! reductions modulo primes.
//!
//! The linear algebra is generic over a [`scalar::Field`]; the concrete
//! instances used across the crate are exposed as type aliases below.

pub mod blocks;
pub mod cyclo;
pub mod error;
pub mod linalg;
pub mod primes;
pub mod quotients;
pub mod rep;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Exact element of the cyclotomic field `Q(zeta_p)`.
pub type CycNum = cyclo::CycNum;
/// Dense matrix over `Q(zeta_p)`.
pub type CycMatrix = linalg::Matrix<cyclo::CycNum>;
/// Dense matrix over the rationals.
pub type RationalMatrix = linalg::Matrix<Rational>;
/// Dense matrix of double precision complex numbers.
pub type ComplexMatrix = linalg::Matrix<num_complex::Complex64>;
/// Dense matrix of single precision complex numbers.
pub type ComplexMatrix32 = linalg::Matrix<num_complex::Complex32>;
/// Polynomial over `Q(zeta_p)`, coefficients in increasing degree.
pub type CycPoly = linalg::Poly<cyclo::CycNum>;
/// Polynomial over the rationals, coefficients in increasing degree.
pub type RationalPoly = linalg::Poly<Rational>;
