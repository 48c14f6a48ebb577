//! Scalar traits shared by the generic matrix and polynomial code.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

/// An involutive ring automorphism (complex conjugation or its analogue).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Ring for BigRational {}
impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}
impl Conjugate for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Ring for f32 {}
impl Ring for f64 {}
impl Field for f32 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| self.recip())
    }
}
impl Field for f64 {
    fn inv(&self) -> Option<Self> {
        (*self != 0.0).then(|| self.recip())
    }
}
impl Conjugate for f32 {
    fn conj(&self) -> Self {
        *self
    }
}
impl Conjugate for f64 {
    fn conj(&self) -> Self {
        *self
    }
}

impl<F: Float + Debug> Ring for Complex<F> {}
impl<F: Float + Debug> Field for Complex<F> {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Complex::new(F::one(), F::zero()) / *self)
    }
}
impl<F: Float> Conjugate for Complex<F> {
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
}

/// Approximate comparisons for floating point scalars.
pub trait Approx {
    fn distance(&self, other: &Self) -> f64;
}

impl<F: Float> Approx for Complex<F> {
    fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Approx for f64 {
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}
