//! Aberth–Ehrlich simultaneous root finding in double precision.

use std::f64::consts::TAU;

use num_complex::Complex64;
use thiserror::Error;

use crate::ring::{GeneratorParams, PolyC};
use crate::slope::Slope;

/// Default bound on the per-root backward error.
pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("cannot extract roots of a constant polynomial")]
    Constant,
    #[error("coefficient {0} is not a finite double")]
    DegreeOverflow(usize),
    #[error("{} of {} roots did not converge", .unconverged.iter().filter(|&&u| u).count(), .partial.roots.len())]
    NonConvergence {
        partial: Box<RootSet>,
        unconverged: Vec<bool>,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            max_iter: 1000,
            tol: DEFAULT_TOL,
        }
    }
}

/// All complex roots of one polynomial, with backward-error residuals.
///
/// `residuals[i]` is `|P(r)| / Σ|a_k||r|^k`, the relative backward error of
/// `roots[i]`; absolute values of `P` are meaningless once coefficients
/// reach `10⁹` and roots sit near `|z| = 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub slope: Option<Slope>,
    pub params: GeneratorParams,
    pub poly: PolyC,
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
}

impl RootSet {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.poly.coeffs().iter().all(|c| c.im == 0.0)
    }

    /// Every root has a root within `tol · max(1, |r|)` of its conjugate.
    pub fn is_conjugation_closed(&self, tol: f64) -> bool {
        self.roots.iter().all(|r| {
            let target = r.conj();
            self.roots
                .iter()
                .any(|s| (s - target).norm() <= tol * r.norm().max(1.0))
        })
    }

    /// `|Σr + a_{n−1}/a_n|` and the scale `max(1, Σ|r|)` it is measured against.
    pub fn vieta_sum_error(&self) -> (f64, f64) {
        let c = self.poly.coeffs();
        let n = c.len() - 1;
        let expected = -c[n - 1] / c[n];
        let sum: Complex64 = self.roots.iter().sum();
        let scale = self.roots.iter().map(|r| r.norm()).sum::<f64>().max(1.0);
        ((sum - expected).norm(), scale)
    }

    /// The count, residual, conjugation and Vieta checks.
    pub fn check(&self, tol: f64) -> RootCheck {
        let (vieta_err, scale) = self.vieta_sum_error();
        RootCheck {
            count: self.roots.len() == self.poly.degree().unwrap_or(0),
            residual: self.max_residual() < tol,
            conjugation: !self.has_real_coefficients() || self.is_conjugation_closed(tol),
            vieta: vieta_err <= tol * scale,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootCheck {
    pub count: bool,
    pub residual: bool,
    pub conjugation: bool,
    pub vieta: bool,
}

impl RootCheck {
    pub fn all(&self) -> bool {
        self.count && self.residual && self.conjugation && self.vieta
    }
}

/// `(P(z), P'(z))` by Horner.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = p;
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// `|P(z)| / Σ|a_k||z|^k` with Horner's value of `P(z)`.
pub fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    residual_scaled(c, horner(c, z).0, z)
}

fn residual_scaled(c: &[Complex64], value: Complex64, z: Complex64) -> f64 {
    let r = z.norm();
    let scale = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

fn initial_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let centre = -c[n - 1] / (c[n] * n as f64);
    // geometric mean of root moduli about the centroid
    let shifted = (0..=n)
        .map(|k| horner_shift_coeff(c, centre, k))
        .collect::<Vec<_>>();
    let radius = match shifted[0].norm() {
        a0 if a0 > 0.0 => (a0 / shifted[n].norm()).powf(1.0 / n as f64),
        _ => 1.0,
    };
    (0..n)
        .map(|k| centre + Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect()
}

/// Coefficient `k` of `P(z + centre)` via the Taylor expansion.
fn horner_shift_coeff(c: &[Complex64], centre: Complex64, k: usize) -> Complex64 {
    let mut binom = 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &a) in c.iter().enumerate().skip(k) {
        if j > k {
            binom = binom * j as f64 / (j - k) as f64;
        }
        acc += a * binom * centre.powu((j - k) as u32);
    }
    acc
}

/// All roots of `p` with multiplicity.
pub fn roots(p: &PolyC) -> Result<RootSet, RootError> {
    roots_with(p, RootOptions::default())
}

pub fn roots_with(p: &PolyC, opts: RootOptions) -> Result<RootSet, RootError> {
    let c = p.coeffs().to_vec();
    roots_by(p, move |z| horner(&c, z), opts)
}

/// Roots of `p` where `eval` returns `(P(z), P'(z))` more accurately than
/// Horner on the monomial coefficients can; the coefficients only supply
/// starting points and the residual scale.
pub fn roots_by<E>(p: &PolyC, eval: E, opts: RootOptions) -> Result<RootSet, RootError>
where
    E: Fn(Complex64) -> (Complex64, Complex64),
{
    let c = p.coeffs();
    if let Some(i) = c
        .iter()
        .position(|a| !(a.re.is_finite() && a.im.is_finite()) || a.norm() >= f64::MAX)
    {
        return Err(RootError::DegreeOverflow(i));
    }
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(RootError::Constant),
    };
    // exact zero roots first; the rest are roots of P(z)/z^v
    let v = p.valuation().unwrap_or(0);
    let deflated = |z: Complex64| {
        let (f, df) = eval(z);
        if v == 0 {
            return (f, df);
        }
        let zv = z.powu(v as u32);
        (f / zv, (df - f * v as f64 / z) / zv)
    };
    let core = &c[v..];
    let mut z = if core.len() > 1 {
        initial_guesses(core)
    } else {
        Vec::new()
    };
    let m = z.len();
    let mut done = vec![false; m];
    for _ in 0..opts.max_iter {
        if done.iter().all(|&d| d) {
            break;
        }
        for i in 0..m {
            if done[i] {
                continue;
            }
            let (pv, dp) = deflated(z[i]);
            if pv.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = pv / dp;
            let repulsion: Complex64 = (0..m)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * repulsion);
            if !(w.re.is_finite() && w.im.is_finite()) {
                continue;
            }
            z[i] -= w;
            // a small backward error alone can freeze a root inside the wrong cluster
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
    }
    let residual = |r: Complex64| residual_scaled(c, eval(r).0, r);
    for zi in z.iter_mut() {
        polish(&deflated, &residual, zi);
    }
    let mut all = vec![Complex64::new(0.0, 0.0); v];
    all.extend(z);
    let residuals: Vec<f64> = all.iter().map(|&r| residual(r)).collect();
    let set = RootSet {
        slope: None,
        params: GeneratorParams::default(),
        poly: p.clone(),
        roots: all,
        residuals,
    };
    let unconverged: Vec<bool> = set
        .residuals
        .iter()
        .map(|&r| r.is_nan() || r >= opts.tol)
        .collect();
    debug_assert_eq!(set.roots.len(), n);
    if unconverged.iter().any(|&u| u) {
        return Err(RootError::NonConvergence {
            partial: Box::new(set),
            unconverged,
        });
    }
    Ok(set)
}

/// A few Newton steps, kept only while the residual improves.
fn polish(
    eval: &impl Fn(Complex64) -> (Complex64, Complex64),
    residual: &impl Fn(Complex64) -> f64,
    z: &mut Complex64,
) {
    let mut best = residual(*z);
    for _ in 0..3 {
        let (p, dp) = eval(*z);
        if dp.norm() == 0.0 {
            return;
        }
        let cand = *z - p / dp;
        let err = residual(cand);
        if err < best {
            *z = cand;
            best = err;
        } else {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> PolyC {
        PolyC::new(c.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        v
    }

    #[test]
    fn quadratic_and_linear() {
        let rs = roots(&poly(&[4.0, 0.0, 1.0])).unwrap();
        let r = sorted(rs.roots.clone());
        assert!((r[0] - Complex64::new(0.0, -2.0)).norm() < 1e-12);
        assert!((r[1] - Complex64::new(0.0, 2.0)).norm() < 1e-12);
        let rs = roots(&poly(&[4.0, -1.0])).unwrap();
        assert!((rs.roots[0] - 4.0).norm() < 1e-12);
    }

    #[test]
    fn cubic_vieta() {
        let rs = roots(&poly(&[4.0, -1.0, -2.0, -1.0])).unwrap();
        assert_eq!(rs.roots.len(), 3);
        assert!(rs.max_residual() < 1e-10);
        let prod: Complex64 = rs.roots.iter().product();
        assert!((prod - Complex64::new(4.0, 0.0)).norm() < 1e-10);
        assert!(rs.check(1e-8).all());
    }

    #[test]
    fn zero_roots_and_repeated_roots() {
        let rs = roots(&poly(&[0.0, 0.0, -1.0, 1.0])).unwrap();
        let r = sorted(rs.roots);
        assert_eq!(r[0], Complex64::new(0.0, 0.0));
        assert!((r[2] - 1.0).norm() < 1e-12);
        // (z − 1)²: roots converge only to √ε, but the backward error is tiny
        let rs = roots(&poly(&[1.0, -2.0, 1.0])).unwrap();
        assert!(rs.roots.iter().all(|r| (r - 1.0).norm() < 1e-6));
    }

    #[test]
    fn errors() {
        assert_eq!(roots(&poly(&[3.0])), Err(RootError::Constant));
        assert_eq!(
            roots(&poly(&[1.0, f64::INFINITY])),
            Err(RootError::DegreeOverflow(1))
        );
        let opts = RootOptions {
            max_iter: 0,
            tol: 1e-30,
        };
        assert!(matches!(
            roots_with(&poly(&[1.0, 0.0, 0.0, 1.0]), opts),
            Err(RootError::NonConvergence { .. })
        ));
    }

    #[test]
    fn wilkinson_like_degree_twenty() {
        let mut p = poly(&[1.0]);
        for k in 1..=20 {
            p = p * poly(&[-(k as f64) / 10.0, 1.0]);
        }
        let rs = roots(&p).unwrap();
        let c = rs.check(1e-8);
        // ill-conditioned: each root is off by ~1e-4, so the Vieta sum is too
        assert!(c.count && c.residual && c.conjugation, "{c:?}");
        assert!(rs
            .roots
            .iter()
            .all(|r| (1..=20).any(|k| (r - k as f64 / 10.0).norm() < 5e-3)));
    }
}
