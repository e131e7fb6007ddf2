use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Bivariate Laurent polynomial `Σ c_ij α^i β^j` over the integers.
///
/// Terms are kept in a sorted map keyed by `(i, j)`; zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<(i32, i32), BigInt>,
}

impl Laurent {
    pub fn monomial(c: impl Into<BigInt>, i: i32, j: i32) -> Self {
        let mut out = Self::default();
        out.add_term(i, j, c.into());
        out
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// Builds from `(c, i, j)` triples; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, i32, i32)>,
        C: Into<BigInt>,
    {
        let mut out = Self::default();
        for (c, i, j) in terms {
            out.add_term(i, j, c.into());
        }
        out
    }

    fn add_term(&mut self, i: i32, j: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i32, j: i32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Value at `α = β = 1`.
    pub fn sum_coeffs(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn eval(&self, alpha: Complex64, beta: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                alpha.powi(i) * beta.powi(j) * c
            })
            .sum()
    }

    fn scaled_shift(&self, c: &BigInt, di: i32, dj: i32, out: &mut Self) {
        for (&(i, j), v) in &self.terms {
            out.add_term(i + di, j + dj, v * c);
        }
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Neg for Laurent {
    type Output = Laurent;

    fn neg(mut self) -> Laurent {
        for v in self.terms.values_mut() {
            *v = -std::mem::take(v);
        }
        self
    }
}

impl<'a> Add<&'a Laurent> for Laurent {
    type Output = Laurent;

    fn add(mut self, rhs: &'a Laurent) -> Laurent {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, c.clone());
        }
        self
    }
}

impl Add for Laurent {
    type Output = Laurent;

    fn add(self, rhs: Laurent) -> Laurent {
        self + &rhs
    }
}

impl<'a> Sub<&'a Laurent> for Laurent {
    type Output = Laurent;

    fn sub(mut self, rhs: &'a Laurent) -> Laurent {
        for (&(i, j), c) in &rhs.terms {
            self.add_term(i, j, -c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;

    fn sub(self, rhs: Laurent) -> Laurent {
        self - &rhs
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &'a Laurent) -> Laurent {
        let mut out = Laurent::default();
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (&(i, j), c) in &small.terms {
            large.scaled_shift(c, i, j, &mut out);
        }
        out
    }
}

impl<'a> Mul<&'a Laurent> for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &'a Laurent) -> Laurent {
        &self * rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;

    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, var: &str, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for Laurent {
    /// Prints with `a` for `α` and `b` for `β`, e.g. `a*b^-1 + -1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let unit = c.abs().is_one() && (i != 0 || j != 0);
            if unit {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{c}")?;
                if i != 0 || j != 0 {
                    write!(f, "*")?;
                }
            }
            fmt_power(f, "a", i)?;
            if i != 0 && j != 0 {
                write!(f, "*")?;
            }
            fmt_power(f, "b", j)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Laurent {
        Laurent::from_terms([(1, 1, -1), (1, -1, 1)])
    }

    #[test]
    fn identity_and_cancellation() {
        assert_eq!(sym() * Laurent::one(), sym());
        assert!((sym() - sym()).is_zero());
        assert_eq!(
            Laurent::from_terms([(2, 0, 0), (-2, 0, 0)]),
            Laurent::zero()
        );
    }

    #[test]
    fn product_of_inverse_monomials_is_constant() {
        let p = Laurent::monomial(3, 2, -1) * Laurent::monomial(-2, -2, 1);
        assert_eq!(p, Laurent::constant(-6));
    }

    #[test]
    fn square_of_symmetric_sum() {
        // (α/β + β/α)^2 = α²/β² + 2 + β²/α²
        let s = sym();
        let sq = &s * &s;
        assert_eq!(sq, Laurent::from_terms([(1, 2, -2), (2, 0, 0), (1, -2, 2)]));
        assert_eq!(sq.sum_coeffs(), BigInt::from(4));
    }

    #[test]
    fn display() {
        assert_eq!(sym().to_string(), "a^-1*b + a*b^-1");
        assert_eq!(
            Laurent::from_terms([(-3, 0, 0), (2, 0, 2)]).to_string(),
            "-3 + 2*b^2"
        );
    }
}
