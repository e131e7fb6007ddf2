use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use super::{PolyC, PolyL, PolyZ};

/// Order of a generator: a finite cone order `n ≥ 2`, or `∞` for a parabolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// `exp(iπ/n)`, or `1` for `∞`.
    pub fn root_of_unity(self) -> Complex64 {
        match self {
            Order::Finite(n) => Complex64::from_polar(1.0, PI / f64::from(n)),
            Order::Infinite => Complex64::new(1.0, 0.0),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Order {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Order::Infinite),
            t => match t.parse::<u32>() {
                Ok(n) if n >= 2 => Ok(Order::Finite(n)),
                _ => Err(format!(
                    "generator order must be an integer >= 2 or inf, got {s:?}"
                )),
            },
        }
    }
}

/// Cone orders `(a, b)` of `X` and `Y`; `(∞, ∞)` is the parabolic slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorParams {
    pub a: Order,
    pub b: Order,
}

impl GeneratorParams {
    pub const PARABOLIC: GeneratorParams = GeneratorParams {
        a: Order::Infinite,
        b: Order::Infinite,
    };

    pub fn new(a: Order, b: Order) -> Self {
        Self { a, b }
    }

    pub fn finite(a: u32, b: u32) -> Self {
        Self {
            a: Order::Finite(a),
            b: Order::Finite(b),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.a.root_of_unity()
    }

    pub fn beta(&self) -> Complex64 {
        self.b.root_of_unity()
    }

    pub fn is_parabolic(&self) -> bool {
        *self == Self::PARABOLIC
    }
}

impl Default for GeneratorParams {
    fn default() -> Self {
        Self::PARABOLIC
    }
}

/// Substitutes `α = β = 1`.
pub fn specialize_parabolic(p: &PolyL) -> PolyZ {
    p.map(|c| c.sum_coeffs())
}

/// Evaluates every Laurent coefficient at `α = exp(iπ/a)`, `β = exp(iπ/b)`.
pub fn specialize_numeric(p: &PolyL, params: GeneratorParams) -> PolyC {
    let (alpha, beta) = (params.alpha(), params.beta());
    p.map(|c| c.eval(alpha, beta))
}

const EXACT_DOUBLE_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

/// Nearest double, saturating at `±f64::MAX`.
pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    let v = c.to_f64().unwrap_or(f64::NAN);
    if v.is_finite() {
        v
    } else if c.is_negative() {
        -f64::MAX
    } else {
        f64::MAX
    }
}

/// Converts integer coefficients to complex doubles (round to nearest).
///
/// Coefficients beyond `2^53` lose exactness and trigger a warning; those
/// beyond the double range saturate at `±f64::MAX`.
pub fn to_complex_poly(p: &PolyZ) -> PolyC {
    let mut lossy = false;
    let out = p.map(|c| {
        let v = bigint_to_f64(c);
        lossy |= v.abs() > EXACT_DOUBLE_LIMIT;
        Complex64::new(v, 0.0)
    });
    if lossy {
        log::warn!(
            "degree {:?} polynomial has coefficients above 2^53; double evaluation is inexact",
            p.degree()
        );
    }
    out
}

/// Polynomials that can be evaluated at a complex point in double precision.
pub trait EvalComplex {
    fn eval_complex(&self, z: Complex64) -> Complex64;
}

impl EvalComplex for PolyC {
    fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.eval(&z)
    }
}

impl EvalComplex for PolyZ {
    fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + bigint_to_f64(c)
            })
    }
}

/// Horner evaluation at `z` in complex double precision.
pub fn eval_complex<P: EvalComplex + ?Sized>(p: &P, z: Complex64) -> Complex64 {
    p.eval_complex(z)
}
