//! Exact arithmetic over Q and multiquadratic fields.

pub mod eigen;
pub mod field;
pub mod matrix;

use alloc::vec::Vec;
use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use eigen::{charpoly, eigen_decompose, Eigenspace};
pub use field::{apply_galois, field_name, square_free_part, FieldElement, GaloisElement, MultiQuadField};
pub use matrix::{ExactMatrix, Matrix, QMatrix, Solution};

pub type Rational = num_rational::BigRational;

/// `n/d` as a rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {0} is not a square-free integer other than 0 and 1")]
    NotSquareFree(i64),
    #[error("generators {0:?} multiply to a perfect square")]
    DependentGenerators(Vec<i64>),
    #[error("too many generators ({0})")]
    TooManyGenerators(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("characteristic polynomial does not split over the field")]
    DoesNotSplit,
    #[error("element is not real under the chosen embedding")]
    NotReal,
    #[error("sign could not be certified")]
    SignUndecided,
    #[error("matrix is singular")]
    Singular,
}

/// Coefficient ring interface used by the generic matrix routines.
pub trait Scalar: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_rational_like(&self, q: &Rational) -> Self;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&int(n))
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for FieldElement {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        FieldElement::inv(self).ok()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        self.field().from_rational(q.clone())
    }
}
