//! Exact coefficient rings for Farey polynomials.
//!
//! Everything in the crate that recurses over the Farey graph is generic over
//! [`Ring`], so the same engine runs over integer polynomials (parabolic
//! case), bivariate Laurent polynomials in `α, β` (generic case), complex
//! polynomials (numeric elliptic case), or plain numbers when a polynomial is
//! only needed at a single point.

mod laurent;
mod poly;
mod specialize;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use laurent::Laurent;
pub use poly::{Poly, PolyC, PolyL, PolyZ};
pub use specialize::{
    eval_complex, specialize_numeric, specialize_parabolic, to_complex_poly, EvalComplex,
    GeneratorParams, Order,
};

/// Commutative ring with unity, closed under owned and borrowed arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + num_traits::One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + num_traits::One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// Division that succeeds only when the quotient exists in the ring.
pub trait TryDiv: Sized {
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl TryDiv for BigInt {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

impl TryDiv for BigRational {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl TryDiv for Complex64 {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        (rhs.norm() != 0.0).then(|| self / rhs)
    }
}

impl TryDiv for PolyZ {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.div_exact(rhs)
    }
}

/// Integer square root of `n` if `n` is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
