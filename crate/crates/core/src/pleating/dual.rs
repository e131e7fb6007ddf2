//! `a + bε` with `ε² = 0`, carrying a value and its `z`-derivative through
//! the recursion.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual {
    pub v: Complex64,
    pub d: Complex64,
}

impl Dual {
    pub fn new(v: Complex64, d: Complex64) -> Self {
        Self { v, d }
    }

    pub fn constant(v: Complex64) -> Self {
        Self {
            v,
            d: Complex64::zero(),
        }
    }
}

impl Zero for Dual {
    fn zero() -> Self {
        Self::constant(Complex64::zero())
    }

    fn is_zero(&self) -> bool {
        self.v.is_zero() && self.d.is_zero()
    }
}

impl One for Dual {
    fn one() -> Self {
        Self::constant(Complex64::one())
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual::new(self.v * o.v, self.v * o.d + self.d * o.v)
    }
}

impl Add<&Dual> for Dual {
    type Output = Dual;
    fn add(self, o: &Dual) -> Dual {
        self + *o
    }
}

impl Sub<&Dual> for Dual {
    type Output = Dual;
    fn sub(self, o: &Dual) -> Dual {
        self - *o
    }
}

impl Mul<&Dual> for Dual {
    type Output = Dual;
    fn mul(self, o: &Dual) -> Dual {
        self * *o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_rule() {
        let z = Dual::new(Complex64::new(3.0, 0.0), Complex64::one());
        let cube = z * z * z;
        assert_eq!(cube.v, Complex64::new(27.0, 0.0));
        assert_eq!(cube.d, Complex64::new(27.0, 0.0));
    }
}
