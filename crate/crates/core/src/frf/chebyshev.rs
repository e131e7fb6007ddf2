//! Chebyshev form of the homogeneous left family.

use num_complex::Complex64;

use crate::recursion::PhiEngine;
use crate::ring::PolyZ;
use crate::slope::Slope;

/// `T_n(x)`: `T₀ = 1`, `T₁ = x`, `T_{n+1} = 2x T_n − T_{n−1}`.
pub fn chebyshev_t(n: u32) -> PolyZ {
    let two_x = PolyZ::from_i64s(&[0, 2]);
    let (mut a, mut b) = (PolyZ::from_i64s(&[1]), PolyZ::from_i64s(&[0, 1]));
    if n == 0 {
        return a;
    }
    for _ in 1..n {
        let next = two_x.clone() * &b - &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// `W_q(z)`: `W₀ = 2`, `W₁ = z + 2`, `W_{n+1} = (z − 2) W_n − W_{n−1}`.
///
/// Equal to `Φ^h_{1/q}` for `q ≥ 1`.
pub fn chebyshev_w(q: u32) -> PolyZ {
    let step = PolyZ::from_i64s(&[-2, 1]);
    let (mut a, mut b) = (PolyZ::from_i64s(&[2]), PolyZ::from_i64s(&[2, 1]));
    if q == 0 {
        return a;
    }
    for _ in 1..q {
        let next = step.clone() * &b - &a;
        a = std::mem::replace(&mut b, next);
    }
    b
}

/// Compares `W_q(z)` with the homogeneous recursion at `1/q`.
pub fn chebyshev_match(q: u32, z: Complex64) -> bool {
    if q == 0 {
        return true;
    }
    let w = crate::ring::eval_complex(&chebyshev_w(q), z);
    let phi =
        PhiEngine::homogeneous_at(z).phi(Slope::new(1, u64::from(q)).expect("1/q is reduced"));
    (w - phi).norm() <= 1e-9 * phi.norm().max(1.0)
}

/// Smallest `p ≥ 1` with `(a_p, a_{p+1}) = (a_0, a_1)` for `a_q = Φ_{1/q}(z)`.
pub fn detect_cycle(z: Complex64, max_period: usize) -> Option<usize> {
    let eight = Complex64::new(8.0, 0.0);
    let (a0, a1) = (Complex64::new(2.0, 0.0), z + 2.0);
    let tol = 1e-9 * (1.0 + a0.norm() + a1.norm());
    let (mut u, mut v) = (a0, a1);
    for p in 1..=max_period {
        let next = (z - 2.0) * v - u + eight;
        u = std::mem::replace(&mut v, next);
        if (u - a0).norm() <= tol && (v - a1).norm() <= tol {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::eval_complex;

    #[test]
    fn first_t() {
        assert_eq!(chebyshev_t(0), PolyZ::from_i64s(&[1]));
        assert_eq!(chebyshev_t(2), PolyZ::from_i64s(&[-1, 0, 2]));
        assert_eq!(chebyshev_t(3), PolyZ::from_i64s(&[0, -3, 0, 4]));
    }

    #[test]
    fn w_is_the_homogeneous_left_family() {
        let mut h = PhiEngine::homogeneous();
        for q in 1..12u32 {
            assert_eq!(
                chebyshev_w(q),
                h.phi(Slope::new(1, u64::from(q)).unwrap()),
                "q = {q}"
            );
        }
        assert!(chebyshev_match(7, Complex64::new(0.3, -1.2)));
    }

    #[test]
    fn w_in_terms_of_t_and_u() {
        // W_n = 2T_n(x) + 4U_{n−1}(x) with x = (z − 2)/2
        let z = Complex64::new(1.7, 0.4);
        let x = (z - 2.0) / 2.0;
        let (mut u_prev, mut u) = (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
        for n in 1..10u32 {
            let t = eval_complex(&chebyshev_t(n), x);
            let w = eval_complex(&chebyshev_w(n), z);
            assert!((w - (2.0 * t + 4.0 * u)).norm() < 1e-9, "n = {n}");
            let next = 2.0 * x * u - u_prev;
            u_prev = std::mem::replace(&mut u, next);
        }
    }

    #[test]
    fn cycles_at_roots_of_unity() {
        let c = |re: f64| Complex64::new(re, 0.0);
        assert_eq!(detect_cycle(c(1.0), 50), Some(3));
        assert_eq!(detect_cycle(c(2.0), 50), Some(4));
        assert_eq!(detect_cycle(c(3.0), 50), Some(6));
        assert_eq!(detect_cycle(c(5.0), 50), None);
    }
}
