//! Exact arithmetic over Q, prime fields, and extension rings presented by
//! monic defining polynomials over either base.
//!
//! Two traits carry the arithmetic. [`Field`] is what the curve and scan code
//! is generic over; [`Scalar`] adds what a *base* domain needs on top of that
//! (a context value, parsing, and a linear solver) so that [`Element`] can be
//! built over it.

mod ext;
mod fp;
mod linalg;
mod poly;
mod rational;
mod text;

use std::fmt;

use num_bigint::BigUint;

pub use ext::{Element, FieldDescriptor, Generator};
pub use fp::{is_prime_u64, Fp};
pub use poly::{
    certify_irreducible_over_q, is_irreducible_mod_p, poly_gcd, powmod, Poly,
    DEFAULT_CERTIFICATION_PRIMES,
};
pub use rational::Rational;
pub use text::Nested;

/// Errors raised by field and polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor: the descriptor does not define a field")]
    ZeroDivisor,
    #[error("operands belong to different fields")]
    DescriptorMismatch,
    #[error("{0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Commutative ring arithmetic with (possibly failing) inversion.
///
/// Constants are produced from an existing value (`zero_like`, `one_like`)
/// because some domains carry a context such as a modulus or a descriptor.
///
/// The binary methods assume both operands come from the same domain; use
/// [`Field::compatible`] to check first where that is not already known.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_i64_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// True when `self` and `other` live in the same ring.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Result<Self, FieldError>;

    fn square(&self) -> Self {
        self.times(self)
    }

    fn divide(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.times(&rhs.inverse()?))
    }

    fn pow(&self, e: &BigUint) -> Self {
        let mut acc = self.one_like();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = acc.times(self);
            }
        }
        acc
    }

    fn pow_u64(&self, e: u64) -> Self {
        self.pow(&BigUint::from(e))
    }
}

/// A base coefficient domain: Q or F_p.
pub trait Scalar: Field + fmt::Display {
    /// Data needed to create constants: `()` for Q, the modulus for F_p.
    type Ctx: Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    fn ctx(&self) -> Self::Ctx;
    fn parse(ctx: &Self::Ctx, s: &str) -> Result<Self, FieldError>;

    /// Solve `matrix · x = rhs`; `None` when the matrix is singular.
    fn solve(matrix: Vec<Vec<Self>>, rhs: Vec<Self>) -> Option<Vec<Self>> {
        linalg::gauss_solve(matrix, rhs)
    }
}

/// A finite field whose elements can be enumerated.
pub trait FiniteField: Field {
    fn characteristic(&self) -> u64;
    /// Number of elements `q = p^d`.
    fn cardinality(&self) -> u64;
    /// The p-th power map.
    fn frobenius(&self) -> Self {
        self.pow_u64(self.characteristic())
    }
    /// All elements of the ambient field, in lexicographic coordinate order.
    fn all_elements(&self) -> Vec<Self>;
    /// Coordinates over the prime field, constant term first.
    fn coords_u64(&self) -> Vec<u64>;
}
