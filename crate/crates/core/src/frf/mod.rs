//! Farey recursive functions: `F(β⊕α) = −d₁(α) F(β⊖α) + d₂(α) F(β) + d₃(α)`.
//!
//! At each triangle `α` is the parent with the smaller denominator (the
//! smaller slope on a tie), and `β` the other parent. This fixes which
//! parent the coefficient maps are evaluated at when they are not constant.

mod chebyshev;
mod closed;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::recursion::Seeds;
use crate::ring::{PolyZ, Ring, TryDiv};
use crate::slope::{boundary_sequence, ominus, parents, Slope, SlopeError};

pub use chebyshev::{chebyshev_match, chebyshev_t, chebyshev_w, detect_cycle};
pub use closed::{
    closed_form_homog_left, closed_form_left, closed_form_left_or_recurrence, closed_form_triangle,
    closed_form_triangle_or_recurrence, triangle_slope, ClosedFormLeft, ClosedValue, Method,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrfError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("d({0}) has no inverse in the coefficient ring")]
    ZeroDivisor(Slope),
    #[error("d is not multiplicative at {0}: d({0}) != d({1}) d({2})")]
    NotMultiplicative(Slope, Slope, Slope),
    #[error("closed form is singular at z = {0}")]
    SingularParameter(String),
    #[error("{1} is not {0} ⊕ ({1} ⊖ {0}); the second slope needs the larger denominator")]
    Orientation(Slope, Slope),
    #[error("eigenvalues coincide (Φ^h(α) = ±2) at z = {0}")]
    DegenerateEigenvalues(String),
}

/// A coefficient map `Slope → R`.
#[derive(Clone)]
pub enum Coeff<R> {
    Const(R),
    /// `c · F(α)`, the self-referential case.
    SelfScaled(R),
    Map(Arc<dyn Fn(Slope) -> R + Send + Sync>),
}

impl<R: Ring> Coeff<R> {
    fn at(&self, alpha: Slope, f_alpha: &R) -> R {
        match self {
            Coeff::Const(c) => c.clone(),
            Coeff::SelfScaled(c) => c.clone() * f_alpha,
            Coeff::Map(f) => f(alpha),
        }
    }
}

impl<R: fmt::Debug> fmt::Debug for Coeff<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Const(c) => write!(f, "Const({c:?})"),
            Coeff::SelfScaled(c) => write!(f, "SelfScaled({c:?})"),
            Coeff::Map(_) => write!(f, "Map(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FrfSpec<R> {
    pub d1: Coeff<R>,
    pub d2: Coeff<R>,
    pub d3: Coeff<R>,
    pub seeds: Seeds<R>,
}

impl<R: Ring> FrfSpec<R> {
    /// Anti-determinant `d`: `F(β⊕α) = −d(α) F(β⊖α) − F(α) F(β)`.
    pub fn anti_determinant(d: Coeff<R>, seeds: Seeds<R>) -> Self {
        Self {
            d1: d,
            d2: Coeff::SelfScaled(-R::one()),
            d3: Coeff::Const(R::zero()),
            seeds,
        }
    }
}

impl FrfSpec<PolyZ> {
    fn phi_seeds() -> Seeds<PolyZ> {
        Seeds {
            infinity: PolyZ::from_i64s(&[2]),
            zero: PolyZ::from_i64s(&[2, -1]),
            one: PolyZ::from_i64s(&[2, 1]),
        }
    }

    /// `d₁ = 1`, `d₂ = −Φ`, `d₃ = 8`.
    pub fn parabolic_phi() -> Self {
        Self {
            d1: Coeff::Const(PolyZ::from_i64s(&[1])),
            d2: Coeff::SelfScaled(PolyZ::from_i64s(&[-1])),
            d3: Coeff::Const(PolyZ::from_i64s(&[8])),
            seeds: Self::phi_seeds(),
        }
    }

    /// `d₁ = 1`, `d₂ = −Φ^h`, `d₃ = 0`.
    pub fn homogeneous_phi() -> Self {
        Self::anti_determinant(Coeff::Const(PolyZ::from_i64s(&[1])), Self::phi_seeds())
    }
}

/// The `(α, β)` roles at the triangle below `t`, plus the third vertex `β⊖α`.
pub fn triangle_roles(t: Slope) -> Result<(Slope, Slope, Slope), SlopeError> {
    let (l, r) = parents(t)?;
    let (alpha, beta) = if (l.q(), l) <= (r.q(), r) {
        (l, r)
    } else {
        (r, l)
    };
    Ok((alpha, beta, ominus(l, r)?))
}

/// Memoised evaluator for one [`FrfSpec`].
#[derive(Debug, Clone)]
pub struct Frf<R> {
    spec: FrfSpec<R>,
    cache: HashMap<Slope, R>,
}

impl<R: Ring> Frf<R> {
    pub fn new(spec: FrfSpec<R>) -> Self {
        let s = &spec.seeds;
        let cache = HashMap::from([
            (Slope::INFINITY, s.infinity.clone()),
            (Slope::ZERO, s.zero.clone()),
            (Slope::ONE, s.one.clone()),
        ]);
        Self { spec, cache }
    }

    pub fn eval(&mut self, s: Slope) -> R {
        let mut stack = vec![s];
        while let Some(&t) = stack.last() {
            if self.cache.contains_key(&t) {
                stack.pop();
                continue;
            }
            let (alpha, beta, third) = triangle_roles(t).expect("uncached slopes have parents");
            let missing: Vec<Slope> = [alpha, beta, third]
                .into_iter()
                .filter(|x| !self.cache.contains_key(x))
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let (fa, fb, fd) = (&self.cache[&alpha], &self.cache[&beta], &self.cache[&third]);
            let value = self.spec.d2.at(alpha, fa) * fb - &(self.spec.d1.at(alpha, fa) * fd)
                + &self.spec.d3.at(alpha, fa);
            self.cache.insert(t, value);
            stack.pop();
        }
        self.cache[&s].clone()
    }
}

pub fn frf_eval<R: Ring>(spec: &FrfSpec<R>, s: Slope) -> R {
    Frf::new(spec.clone()).eval(s)
}

/// `M_αⁿ (F(β₀), F(β₁))` for an anti-determinant-`d` function `f`, with
/// `M_α = [[0, 1], [−d(α), −F(α)]]` and
/// `M_α⁻¹ (u, v) = ((−F(α) u − v)/d(α), u)`.
pub fn boundary_matrix_power<R, F, D>(
    f: &mut F,
    d: &D,
    alpha: Slope,
    n: i64,
) -> Result<(R, R), FrfError>
where
    R: Ring + TryDiv,
    F: FnMut(Slope) -> R,
    D: Fn(Slope) -> R,
{
    let (b_left, b_right) = (boundary_sequence(alpha, -1)?, boundary_sequence(alpha, 0)?);
    let d_alpha = d(alpha);
    if d_alpha != d(b_left) * &d(b_right) {
        return Err(FrfError::NotMultiplicative(alpha, b_left, b_right));
    }
    let f_alpha = f(alpha);
    let mut u = f(b_right);
    let mut v = f(boundary_sequence(alpha, 1)?);
    if n >= 0 {
        for _ in 0..n {
            let next = -(d_alpha.clone() * &u) - &(f_alpha.clone() * &v);
            u = std::mem::replace(&mut v, next);
        }
    } else {
        for _ in 0..n.unsigned_abs() {
            let num = -(f_alpha.clone() * &u) - &v;
            let prev = num.try_div(&d_alpha).ok_or(FrfError::ZeroDivisor(alpha))?;
            v = std::mem::replace(&mut u, prev);
        }
    }
    Ok((u, v))
}

/// Right-hand side of the matrix-power identity: `(F(βₙ), F(βₙ₊₁))` for
/// `n ≥ 0`, scaled by `1/d(β₋₁)` and powers of `1/d(α)` for `n < 0`.
pub fn boundary_values<R, F, D>(f: &mut F, d: &D, alpha: Slope, n: i64) -> Result<(R, R), FrfError>
where
    R: Ring + TryDiv,
    F: FnMut(Slope) -> R,
    D: Fn(Slope) -> R,
{
    let fb = |f: &mut F, k: i64| -> Result<R, FrfError> { Ok(f(boundary_sequence(alpha, k)?)) };
    if n >= 0 {
        return Ok((fb(f, n)?, fb(f, n + 1)?));
    }
    let d_left = d(boundary_sequence(alpha, -1)?);
    let d_alpha = d(alpha);
    let scale = |k: i64| -> R {
        // 1/(d(β₋₁) d(α)^{-k-1}) for k ≤ -1
        let mut s = d_left.clone();
        for _ in 0..(-k - 1) {
            s = s * &d_alpha;
        }
        s
    };
    let div = |x: R, s: R| x.try_div(&s).ok_or(FrfError::ZeroDivisor(alpha));
    let first = div(fb(f, n)?, scale(n))?;
    let second = if n == -1 {
        fb(f, 0)?
    } else {
        div(fb(f, n + 1)?, scale(n + 1))?
    };
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursion::PhiEngine;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn specs_reproduce_engines() {
        let mut frf = Frf::new(FrfSpec::parabolic_phi());
        let mut hom = Frf::new(FrfSpec::homogeneous_phi());
        let mut e = PhiEngine::parabolic();
        let mut h = PhiEngine::homogeneous();
        for t in ["1/2", "2/5", "5/8", "4/11"] {
            assert_eq!(frf.eval(s(t)), e.phi(s(t)));
            assert_eq!(hom.eval(s(t)), h.phi(s(t)));
        }
    }

    #[test]
    fn constant_two_is_a_solution() {
        let two = PolyZ::from_i64s(&[2]);
        let spec = FrfSpec {
            seeds: Seeds {
                infinity: two.clone(),
                zero: two.clone(),
                one: two.clone(),
            },
            ..FrfSpec::parabolic_phi()
        };
        assert_eq!(frf_eval(&spec, s("7/12")), two);
    }

    #[test]
    fn homogeneous_boundary_power() {
        let mut h = PhiEngine::homogeneous();
        let one = |_: Slope| PolyZ::from_i64s(&[1]);
        let mut f = |t: Slope| h.phi(t);
        let got = boundary_matrix_power(&mut f, &one, s("1/2"), 1).unwrap();
        assert_eq!(got, (f(s("2/3")), f(s("3/5"))));
        let got = boundary_matrix_power(&mut f, &one, s("1/2"), 0).unwrap();
        assert_eq!(got, (f(s("1/1")), f(s("2/3"))));
        let got = boundary_matrix_power(&mut f, &one, s("1/2"), -1).unwrap();
        assert_eq!(got, (f(s("0/1")), f(s("1/1"))));
    }

    #[test]
    fn multiplicative_d_over_rationals() {
        let c = BigRational::new(BigInt::from(3), BigInt::from(2));
        let d = {
            let c = c.clone();
            move |t: Slope| num_traits::pow(c.clone(), t.q() as usize)
        };
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let spec = FrfSpec::anti_determinant(
            Coeff::Map(Arc::new(d.clone())),
            Seeds {
                infinity: r(2),
                zero: r(5),
                one: r(-3),
            },
        );
        let mut frf = Frf::new(spec);
        let mut f = |t: Slope| frf.eval(t);
        for alpha in ["1/2", "2/5", "3/7"] {
            for n in -4..=4 {
                let lhs = boundary_matrix_power(&mut f, &d, s(alpha), n).unwrap();
                let rhs = boundary_values(&mut f, &d, s(alpha), n).unwrap();
                assert_eq!(lhs, rhs, "alpha {alpha}, n {n}");
            }
        }
    }

    #[test]
    fn zero_divisor_and_multiplicativity_errors() {
        let mut h = PhiEngine::homogeneous();
        let mut f = |t: Slope| h.phi(t);
        let two = |_: Slope| PolyZ::from_i64s(&[2]);
        assert!(matches!(
            boundary_matrix_power(&mut f, &two, s("1/2"), -1),
            Err(FrfError::NotMultiplicative(..))
        ));
        // 2^q is multiplicative but not a unit in ℤ[z]
        let dz = |t: Slope| PolyZ::from_i64s(&[1 << t.q()]);
        assert!(matches!(
            boundary_matrix_power(&mut f, &dz, s("1/2"), -1),
            Err(FrfError::ZeroDivisor(_))
        ));
    }
}
