use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{is_perfect_square, Laurent, Ring};

/// Dense univariate polynomial in `z` with ascending coefficients.
///
/// Leading zero coefficients are trimmed on construction, so the zero
/// polynomial has no coefficients and `degree()` is `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

/// Integer polynomials; the parabolic Farey polynomials live here.
pub type PolyZ = Poly<BigInt>;
/// Polynomials over `ℤ[α^±1, β^±1]`; the generic Farey polynomials.
pub type PolyL = Poly<Laurent>;
/// Complex double polynomials; numeric specialisations.
pub type PolyC = Poly<Complex64>;

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c z^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Coefficient of `z^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Exponent of the lowest nonzero term; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c)
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `z^k`; `None` if the low `k` coefficients are not all zero.
    pub fn unshift(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Horner evaluation in the coefficient ring.
    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x + c)
    }

    /// Evaluates at a polynomial argument (composition `self ∘ x`).
    pub fn compose(&self, x: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc * x + &Self::constant(c.clone()))
    }
}

impl PolyZ {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Exact quotient `self / d` if `d` divides `self` in `ℤ[z]`.
    pub fn div_exact(&self, d: &PolyZ) -> Option<PolyZ> {
        let dd = d.degree()?;
        let lead = d.leading()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Some(PolyZ::zero());
        };
        if nd < dd {
            return None;
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| PolyZ::new(quot))
    }

    /// The square root with positive leading coefficient, if `self` is a
    /// perfect square in `ℤ[z]`.
    ///
    /// Coefficients of the root are extracted from the top down; every
    /// division must be exact and the final square is compared in full.
    pub fn sqrt_exact(&self) -> Option<PolyZ> {
        let Some(n) = self.degree() else {
            return Some(PolyZ::zero());
        };
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let top = is_perfect_square(self.leading()?)?;
        let two_top = &top * 2u32;
        let mut root = vec![BigInt::zero(); m + 1];
        root[m] = top;
        for k in (0..m).rev() {
            // coefficient of z^(m+k) in R² is 2 r_m r_k + Σ_{i+j=m+k, k<i,j<m} r_i r_j
            let mut acc = self.coeffs[m + k].clone();
            for i in (k + 1)..m {
                let j = m + k - i;
                if j > k && j < m {
                    acc -= &root[i] * &root[j];
                }
            }
            let (q, r) = acc.div_rem(&two_top);
            if !r.is_zero() {
                return None;
            }
            root[k] = q;
        }
        let root = PolyZ::new(root);
        (&root * &root == *self).then_some(root)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Sign of the leading coefficient: `1`, `-1`, or `0` for the zero polynomial.
    pub fn leading_sign(&self) -> i32 {
        match self.leading() {
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;

    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(Neg::neg).collect(),
        }
    }
}

impl<'a, R: Ring> Add<&'a Poly<R>> for Poly<R> {
    type Output = Poly<R>;

    fn add(mut self, rhs: &'a Poly<R>) -> Self {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, R::zero()) + b;
        }
        Self::new(self.coeffs)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;

    fn add(self, rhs: Self) -> Self {
        self + &rhs
    }
}

impl<'a, R: Ring> Sub<&'a Poly<R>> for Poly<R> {
    type Output = Poly<R>;

    fn sub(mut self, rhs: &'a Poly<R>) -> Self {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), R::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = std::mem::replace(a, R::zero()) - b;
        }
        Self::new(self.coeffs)
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;

    fn sub(self, rhs: Self) -> Self {
        self - &rhs
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for &'a Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &'a Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let slot = &mut out[i + j];
                *slot = std::mem::replace(slot, R::zero()) + &(a.clone() * b);
            }
        }
        Poly::new(out)
    }
}

impl<'a, R: Ring> Mul<&'a Poly<R>> for Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: &'a Poly<R>) -> Self {
        &self * rhs
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let s = c.to_string();
            let s = if s.contains(' ') { format!("({s})") } else { s };
            match k {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s}*z")?,
                _ => write!(f, "{s}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poly").field(&self.coeffs).finish()
    }
}
