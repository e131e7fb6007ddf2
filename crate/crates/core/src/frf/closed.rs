//! Diagonalised closed forms for second-order recurrences along Farey paths.
//!
//! Both the left family `Φ_{1/q}` and a boundary sequence about `α` satisfy
//! `u_{n+1} = x u_n − u_{n−1}`, so everything reduces to the eigenvalues
//! `λ± = (x ± κ)/2`, `κ² = x² − 4`, `λ₊λ₋ = 1`. `λ₋` is taken as `1/λ₊` with
//! `|λ₊| ≥ 1` to avoid cancellation.

use num_complex::Complex64;

use super::FrfError;
use crate::recursion::PhiEngine;
use crate::slope::{is_neighbor, mediant, ominus, Slope, SlopeError};

const SINGULAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    RecurrenceFallback,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::RecurrenceFallback => "recurrence-fallback",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedValue {
    pub value: Complex64,
    pub method: Method,
}

#[derive(Debug, Clone, Copy)]
struct Eigen {
    plus: Complex64,
    minus: Complex64,
    kappa: Complex64,
}

impl Eigen {
    /// `None` when the eigenvalues coincide.
    fn new(x: Complex64) -> Option<Self> {
        let root = (x * x - 4.0).sqrt();
        let kappa = if (x + root).norm() >= (x - root).norm() {
            root
        } else {
            -root
        };
        if kappa.norm() <= SINGULAR_TOL * (1.0 + x.norm()) {
            return None;
        }
        let plus = (x + kappa) / 2.0;
        Some(Self {
            plus,
            minus: 1.0 / plus,
            kappa,
        })
    }

    fn power(z: Complex64, n: i64) -> Complex64 {
        match i32::try_from(n) {
            Ok(k) => z.powi(k),
            Err(_) => z.powf(n as f64),
        }
    }

    /// `u_n` from `u_0`, `u_1`, valid for negative `n` too.
    fn term(&self, n: i64, u0: Complex64, u1: Complex64) -> Complex64 {
        let a = (u1 - u0 * self.minus) * Self::power(self.plus, n);
        let b = (u1 - u0 * self.plus) * Self::power(self.minus, n);
        (a - b) / self.kappa
    }
}

/// Eigen-data of the left transition matrix `[[0, 1], [−1, z − 2]]`.
#[derive(Debug, Clone, Copy)]
pub struct ClosedFormLeft {
    pub z: Complex64,
    /// `√(z² − 4z)`, with the branch making `|λ₊| ≥ 1`.
    pub radical: Complex64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
    eigen: Eigen,
}

impl ClosedFormLeft {
    pub fn new(z: Complex64) -> Result<Self, FrfError> {
        if z.norm() <= SINGULAR_TOL || (z - 4.0).norm() <= SINGULAR_TOL {
            return Err(FrfError::SingularParameter(z.to_string()));
        }
        let eigen =
            Eigen::new(z - 2.0).ok_or_else(|| FrfError::SingularParameter(z.to_string()))?;
        Ok(Self {
            z,
            radical: eigen.kappa,
            lambda_plus: eigen.plus,
            lambda_minus: eigen.minus,
            eigen,
        })
    }

    /// Homogeneous part's initial values `(λ, μ) = (2z/(z−4), z(z−2)/(z−4))`.
    pub fn particular_coefficients(&self) -> (Complex64, Complex64) {
        let z = self.z;
        (2.0 * z / (z - 4.0), z * (z - 2.0) / (z - 4.0))
    }

    /// `a_q = (z−2) a_{q−1} − a_{q−2}` from `a_0`, `a_1`.
    pub fn homogeneous(&self, q: i64, a0: Complex64, a1: Complex64) -> Complex64 {
        self.eigen.term(q, a0, a1)
    }

    /// `Φ_{1/q}(z) = 8/(4 − z) + z/(z − 4) (λ₊^q + λ₋^q)`.
    pub fn nonhomogeneous(&self, q: i64) -> Complex64 {
        let z = self.z;
        let pw = |l: Complex64| Eigen::power(l, q);
        8.0 / (4.0 - z) + z / (z - 4.0) * (pw(self.lambda_plus) + pw(self.lambda_minus))
    }
}

/// Parabolic `Φ_{1/q}(z)` in closed form.
pub fn closed_form_left(z: Complex64, q: u32) -> Result<Complex64, FrfError> {
    Ok(ClosedFormLeft::new(z)?.nonhomogeneous(i64::from(q)))
}

/// Homogeneous left sequence with arbitrary seeds `a_0`, `a_1`.
pub fn closed_form_homog_left(
    z: Complex64,
    q: u32,
    a0: Complex64,
    a1: Complex64,
) -> Result<Complex64, FrfError> {
    Ok(ClosedFormLeft::new(z)?.homogeneous(i64::from(q), a0, a1))
}

pub fn closed_form_left_or_recurrence(z: Complex64, q: u32) -> ClosedValue {
    match closed_form_left(z, q) {
        Ok(value) => ClosedValue {
            value,
            method: Method::Closed,
        },
        Err(_) => {
            let slope = Slope::new(1, u64::from(q)).expect("1/q is reduced");
            let value = PhiEngine::parabolic_at(z).phi(slope);
            ClosedValue {
                value,
                method: Method::RecurrenceFallback,
            }
        }
    }
}

/// `α = β₁ ⊖ β₀`, checked so that `β₀ ⊕ α = β₁`.
fn step_of(beta0: Slope, beta1: Slope) -> Result<Slope, FrfError> {
    if !is_neighbor(beta0, beta1) {
        return Err(SlopeError::NotNeighbours(beta0, beta1).into());
    }
    let alpha = ominus(beta1, beta0)?;
    if mediant(beta0, alpha)? != beta1 {
        return Err(FrfError::Orientation(beta0, beta1));
    }
    Ok(alpha)
}

fn triangle_setup(
    beta0: Slope,
    beta1: Slope,
    z: Complex64,
) -> Result<(Slope, [Complex64; 3]), FrfError> {
    let alpha = step_of(beta0, beta1)?;
    let mut h = PhiEngine::homogeneous_at(z);
    Ok((alpha, [h.phi(alpha), h.phi(beta0), h.phi(beta1)]))
}

/// `Φ^h(βₙ)(z)` along `β_{n+1} = βₙ ⊕ α`, `α = β₁ ⊖ β₀`.
///
/// The boundary recurrence is `u_{n+1} = −Φ^h(α) u_n − u_{n−1}`, so the
/// eigenvalues are built from `x = −Φ^h_α(z)`.
pub fn closed_form_triangle(
    beta0: Slope,
    beta1: Slope,
    n: i64,
    z: Complex64,
) -> Result<Complex64, FrfError> {
    let (_, [h_alpha, u0, u1]) = triangle_setup(beta0, beta1, z)?;
    let eigen =
        Eigen::new(-h_alpha).ok_or_else(|| FrfError::DegenerateEigenvalues(z.to_string()))?;
    Ok(eigen.term(n, u0, u1))
}

/// Closed form when possible, otherwise direct iteration of the recurrence.
pub fn closed_form_triangle_or_recurrence(
    beta0: Slope,
    beta1: Slope,
    n: i64,
    z: Complex64,
) -> Result<ClosedValue, FrfError> {
    match closed_form_triangle(beta0, beta1, n, z) {
        Ok(value) => Ok(ClosedValue {
            value,
            method: Method::Closed,
        }),
        Err(FrfError::DegenerateEigenvalues(_)) => {
            let (_, [h_alpha, mut u, mut v]) = triangle_setup(beta0, beta1, z)?;
            if n >= 0 {
                for _ in 0..n {
                    let next = -h_alpha * v - u;
                    u = std::mem::replace(&mut v, next);
                }
            } else {
                for _ in 0..n.unsigned_abs() {
                    let prev = -h_alpha * u - v;
                    v = std::mem::replace(&mut u, prev);
                }
            }
            Ok(ClosedValue {
                value: u,
                method: Method::RecurrenceFallback,
            })
        }
        Err(e) => Err(e),
    }
}

/// `β_n` for the triangle walk, for callers that want the slope as well.
pub fn triangle_slope(beta0: Slope, beta1: Slope, n: u32) -> Result<Slope, FrfError> {
    let alpha = step_of(beta0, beta1)?;
    let mut cur = beta0;
    for _ in 0..n {
        cur = mediant(cur, alpha)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9 * b.norm().max(1.0)
    }

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn left_small_cases() {
        let z = c(1.0, 1.0);
        assert!(close(closed_form_left(z, 0).unwrap(), c(2.0, 0.0)));
        assert!(close(closed_form_left(z, 1).unwrap(), z + 2.0));
        let mut e = PhiEngine::parabolic_at(z);
        assert!(close(closed_form_left(z, 5).unwrap(), e.phi(s("1/5"))));
        assert!(matches!(
            closed_form_left(c(4.0, 0.0), 3),
            Err(FrfError::SingularParameter(_))
        ));
        assert_eq!(
            closed_form_left_or_recurrence(c(0.0, 0.0), 3).method,
            Method::RecurrenceFallback
        );
    }

    #[test]
    fn eigenvalue_product_is_one() {
        for z in [c(1.0, 1.0), c(-7.0, 2.0), c(3.0, 0.0), c(9.5, -4.0)] {
            let cf = ClosedFormLeft::new(z).unwrap();
            assert!(close(cf.lambda_plus * cf.lambda_minus, c(1.0, 0.0)));
            let naive = ((z - 2.0) * (z - 2.0) - cf.radical * cf.radical) / 4.0;
            assert!(close(naive, c(1.0, 0.0)));
        }
    }

    #[test]
    fn particular_coefficients_are_the_homogeneous_seeds() {
        let z = c(1.0, 0.0);
        let cf = ClosedFormLeft::new(z).unwrap();
        let f = 8.0 / (4.0 - z);
        let (lam, mu) = cf.particular_coefficients();
        assert!(close(lam, 2.0 - f));
        assert!(close(mu, z + 2.0 - f));
    }

    #[test]
    fn homogeneous_left_values() {
        let z = c(5.0, 0.0);
        let v = closed_form_homog_left(z, 2, c(2.0, 0.0), z + 2.0).unwrap();
        assert!(close(v, c(19.0, 0.0)));
        let z = c(1.0, 0.0);
        let seq: Vec<_> = (1..=4)
            .map(|q| {
                closed_form_homog_left(z, q, c(2.0, 0.0), z + 2.0)
                    .unwrap()
                    .re
                    .round()
            })
            .collect();
        assert_eq!(seq, [3.0, -5.0, 2.0, 3.0]);
        assert!(closed_form_homog_left(c(4.0, 0.0), 2, c(2.0, 0.0), c(6.0, 0.0)).is_err());
    }

    #[test]
    fn triangle_matches_recursion() {
        let z = c(2.0, 1.0);
        let mut h = PhiEngine::homogeneous_at(z);
        for n in 0..6 {
            let target = triangle_slope(s("1/1"), s("2/3"), n).unwrap();
            let v = closed_form_triangle(s("1/1"), s("2/3"), i64::from(n), z).unwrap();
            assert!(close(v, h.phi(target)), "n = {n}");
        }
        let back = closed_form_triangle(s("1/1"), s("2/3"), -1, z).unwrap();
        assert!(close(back, h.phi(s("0/1"))));
    }

    #[test]
    fn triangle_orientation() {
        let z = c(0.5, 0.5);
        assert!(matches!(
            closed_form_triangle(s("2/3"), s("1/1"), 1, z),
            Err(FrfError::Orientation(..))
        ));
        assert!(matches!(
            triangle_slope(s("1/2"), s("1/1"), 1),
            Err(FrfError::Orientation(..))
        ));
        assert!(matches!(
            triangle_slope(s("1/2"), s("3/4"), 1),
            Err(FrfError::Slope(_))
        ));
    }

    #[test]
    fn triangle_needs_the_negated_trace() {
        // at z = 0, Φ^h(1/2) = −6 and Φ^h(3/5) = 58
        let z = c(0.0, 0.0);
        assert!(close(
            closed_form_triangle(s("1/1"), s("2/3"), 2, z).unwrap(),
            c(58.0, 0.0)
        ));
        let printed = Eigen::new(c(-6.0, 0.0))
            .unwrap()
            .term(2, c(2.0, 0.0), c(10.0, 0.0));
        assert!(!close(printed, c(58.0, 0.0)));
    }

    #[test]
    fn degenerate_triangle_falls_back() {
        // Φ^h(1/2)(z) = z² − 6 = −2 at z = 2, so x = 2
        let z = c(2.0, 0.0);
        assert!(matches!(
            closed_form_triangle(s("1/1"), s("2/3"), 2, z),
            Err(FrfError::DegenerateEigenvalues(_))
        ));
        let v = closed_form_triangle_or_recurrence(s("1/1"), s("2/3"), 2, z).unwrap();
        assert_eq!(v.method, Method::RecurrenceFallback);
        assert!(close(v.value, PhiEngine::homogeneous_at(z).phi(s("3/5"))));
    }
}
