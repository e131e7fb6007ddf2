//! Farey polynomials from the triangle recursion
//! `Φ_{a⊕b} = C − Φ_a Φ_b − Φ_{a⊖b}`, memoised over the ancestor set.
//!
//! The engine is generic over the coefficient ring, so the same code
//! produces generic (`ℤ[α^±, β^±][z]`), parabolic (`ℤ[z]`), numeric elliptic
//! (`ℂ[z]`) and pointwise values (an integer or complex number at fixed `z`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;

use crate::cf::CfExpansion;
use crate::ring::{specialize_numeric, GeneratorParams, Laurent, PolyC, PolyL, PolyZ, Ring};
use crate::slope::{ominus, parents, semiconvergent_path, Slope, SlopeError};

/// The two right-hand sides of the triangle identity, chosen by the parity
/// of the new denominator.
#[derive(Debug, Clone, PartialEq)]
pub struct RecursionConstants<R> {
    pub even: R,
    pub odd: R,
}

/// Values at `1/0`, `0/1` and `1/1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Seeds<R> {
    pub infinity: R,
    pub zero: R,
    pub one: R,
}

#[derive(Debug, Clone)]
pub struct PhiEngine<R> {
    constants: RecursionConstants<R>,
    cache: HashMap<Slope, R>,
    multiplications: u64,
}

impl<R: Ring> PhiEngine<R> {
    pub fn new(constants: RecursionConstants<R>, seeds: Seeds<R>) -> Self {
        let cache = HashMap::from([
            (Slope::INFINITY, seeds.infinity),
            (Slope::ZERO, seeds.zero),
            (Slope::ONE, seeds.one),
        ]);
        Self {
            constants,
            cache,
            multiplications: 0,
        }
    }

    /// Pointwise parabolic engine: the recursion evaluated at a fixed `z`.
    pub fn parabolic_at(z: R) -> Self {
        let two = R::one() + &R::one();
        let eight = two.clone() * &two * &two;
        Self::new(
            RecursionConstants {
                even: eight.clone(),
                odd: eight,
            },
            Seeds {
                infinity: two.clone(),
                zero: two.clone() - &z,
                one: two + &z,
            },
        )
    }

    /// Pointwise homogeneous engine at a fixed `z`.
    pub fn homogeneous_at(z: R) -> Self {
        let two = R::one() + &R::one();
        Self::new(
            RecursionConstants {
                even: R::zero(),
                odd: R::zero(),
            },
            Seeds {
                infinity: two.clone(),
                zero: two.clone() - &z,
                one: two + &z,
            },
        )
    }

    pub fn constants(&self) -> &RecursionConstants<R> {
        &self.constants
    }

    pub fn seeds(&self) -> Seeds<R> {
        let at = |s: Slope| self.cache[&s].clone();
        Seeds {
            infinity: at(Slope::INFINITY),
            zero: at(Slope::ZERO),
            one: at(Slope::ONE),
        }
    }

    pub fn constant_for(&self, s: Slope) -> &R {
        if s.q().is_multiple_of(2) {
            &self.constants.even
        } else {
            &self.constants.odd
        }
    }

    /// Ring multiplications performed by the recursion so far.
    pub fn multiplications(&self) -> u64 {
        self.multiplications
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn cached(&self, s: Slope) -> Option<&R> {
        self.cache.get(&s)
    }

    /// `Φ_s`, descending iteratively through uncached ancestors.
    pub fn phi_ref(&mut self, s: Slope) -> &R {
        let mut stack = vec![s];
        while let Some(&t) = stack.last() {
            if self.cache.contains_key(&t) {
                stack.pop();
                continue;
            }
            let (l, r) = parents(t).expect("every uncached slope in the domain has parents");
            let d = ominus(l, r).expect("parents are neighbours");
            let missing: Vec<Slope> = [l, r, d]
                .into_iter()
                .filter(|x| !self.cache.contains_key(x))
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let value = {
                let (pl, pr, pd) = (&self.cache[&l], &self.cache[&r], &self.cache[&d]);
                self.constant_for(t).clone() - pl.clone() * pr - pd
            };
            self.multiplications += 1;
            self.cache.insert(t, value);
            stack.pop();
        }
        &self.cache[&s]
    }

    pub fn phi(&mut self, s: Slope) -> R {
        self.phi_ref(s).clone()
    }

    /// `Φ` along the unit-mediant path of `cf`, one recursion step per element
    /// once the path's predecessors are cached.
    pub fn fan_walk(&mut self, cf: &CfExpansion, n: usize) -> Result<Vec<(Slope, R)>, SlopeError> {
        let path = semiconvergent_path(cf, n)?;
        Ok(path.into_iter().map(|s| (s, self.phi(s))).collect())
    }
}

/// The recursion for one slope flattened into a straight-line program over
/// its ancestors, for repeated evaluation at many points.
#[derive(Debug, Clone)]
pub struct PhiProgram {
    slope: Slope,
    /// `(left, right, difference, even)`; node `3 + i` is produced by step `i`
    /// and nodes `0, 1, 2` are the seeds `1/0, 0/1, 1/1`.
    steps: Vec<(usize, usize, usize, bool)>,
    target: usize,
}

impl PhiProgram {
    pub fn new(s: Slope) -> Self {
        let mut index = HashMap::from([(Slope::INFINITY, 0), (Slope::ZERO, 1), (Slope::ONE, 2)]);
        let mut steps = Vec::new();
        let mut stack = vec![s];
        while let Some(&t) = stack.last() {
            if index.contains_key(&t) {
                stack.pop();
                continue;
            }
            let (l, r) = parents(t).expect("every slope outside the seeds has parents");
            let d = ominus(l, r).expect("parents are neighbours");
            let missing: Vec<Slope> = [l, r, d]
                .into_iter()
                .filter(|x| !index.contains_key(x))
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            steps.push((index[&l], index[&r], index[&d], t.q() % 2 == 0));
            index.insert(t, index.len());
            stack.pop();
        }
        Self {
            slope: s,
            steps,
            target: index[&s],
        }
    }

    pub fn slope(&self) -> Slope {
        self.slope
    }

    /// Ring multiplications per evaluation.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn eval<R: Ring>(&self, constants: &RecursionConstants<R>, seeds: &Seeds<R>) -> R {
        let mut nodes = Vec::with_capacity(3 + self.steps.len());
        nodes.extend([
            seeds.infinity.clone(),
            seeds.zero.clone(),
            seeds.one.clone(),
        ]);
        for &(l, r, d, even) in &self.steps {
            let c = if even {
                &constants.even
            } else {
                &constants.odd
            };
            let v = c.clone() - nodes[l].clone() * &nodes[r] - &nodes[d];
            nodes.push(v);
        }
        nodes.swap_remove(self.target)
    }
}

fn lz(c: Laurent) -> PolyL {
    PolyL::constant(c)
}

/// `C_even = 4 + α² + α⁻² + β² + β⁻²`, `C_odd = 2(αβ + α/β + β/α + 1/(αβ))`.
pub fn generic_constants() -> RecursionConstants<PolyL> {
    RecursionConstants {
        even: lz(Laurent::from_terms([
            (4, 0, 0),
            (1, 2, 0),
            (1, -2, 0),
            (1, 0, 2),
            (1, 0, -2),
        ])),
        odd: lz(Laurent::from_terms([
            (2, 1, 1),
            (2, 1, -1),
            (2, -1, 1),
            (2, -1, -1),
        ])),
    }
}

/// `Φ_{1/0} = 2`, `Φ_{0/1} = α/β + β/α − z`, `Φ_{1/1} = αβ + 1/(αβ) + z`.
pub fn generic_seeds() -> Seeds<PolyL> {
    let z = PolyL::monomial(Laurent::one(), 1);
    Seeds {
        infinity: lz(Laurent::constant(2)),
        zero: lz(Laurent::from_terms([(1, 1, -1), (1, -1, 1)])) - &z,
        one: lz(Laurent::from_terms([(1, 1, 1), (1, -1, -1)])) + &z,
    }
}

impl PhiEngine<PolyL> {
    pub fn generic() -> Self {
        Self::new(generic_constants(), generic_seeds())
    }
}

impl PhiEngine<PolyZ> {
    /// `α = β = 1`: both constants are 8.
    pub fn parabolic() -> Self {
        Self::parabolic_at(PolyZ::z())
    }

    /// `Φ^h(β⊕α) = −Φ^h(β⊖α) − Φ^h(α)Φ^h(β)` with seeds `2, 2 − z, 2 + z`.
    pub fn homogeneous() -> Self {
        Self::homogeneous_at(PolyZ::z())
    }

    /// `φ_s = Φ_s − 2`.
    pub fn phi_reduced(&mut self, s: Slope) -> PolyZ {
        self.phi(s) - PolyZ::from_i64s(&[2])
    }
}

impl PhiEngine<PolyC> {
    /// Generic constants and seeds evaluated at `α = e^{iπ/a}`, `β = e^{iπ/b}`.
    pub fn numeric(params: GeneratorParams) -> Self {
        let c = generic_constants();
        let s = generic_seeds();
        let sp = |p: &PolyL| specialize_numeric(p, params);
        Self::new(
            RecursionConstants {
                even: sp(&c.even),
                odd: sp(&c.odd),
            },
            Seeds {
                infinity: sp(&s.infinity),
                zero: sp(&s.zero),
                one: sp(&s.one),
            },
        )
    }
}

impl PhiEngine<Complex64> {
    /// Numeric elliptic engine at a single complex `z`.
    pub fn numeric_at(params: GeneratorParams, z: Complex64) -> Self {
        let c = PhiEngine::<PolyC>::numeric(params);
        let at = |p: &PolyC| p.eval(&z);
        let seeds = Seeds {
            infinity: at(&c.cache[&Slope::INFINITY]),
            zero: at(&c.cache[&Slope::ZERO]),
            one: at(&c.cache[&Slope::ONE]),
        };
        let constants = RecursionConstants {
            even: at(&c.constants.even),
            odd: at(&c.constants.odd),
        };
        Self::new(constants, seeds)
    }
}

impl PhiEngine<BigInt> {
    /// Exact parabolic values at an integer `z`.
    pub fn parabolic_at_int(z: i64) -> Self {
        Self::parabolic_at(BigInt::from(z))
    }
}

/// `x_n = 8 − x_{n−3} − x_{n−2} x_{n−1}`.
pub fn cubic_step<R: Ring>(x1: &R, x2: &R, x3: &R) -> R {
    let eight = (0..8).fold(R::zero(), |acc, _| acc + &R::one());
    eight - x1 - &(x2.clone() * x3)
}

/// `y_n = −y_{n−3} − y_{n−2} y_{n−1} − 2(y_{n−2} + y_{n−1})`.
pub fn cubic_step_homog<R: Ring>(y1: &R, y2: &R, y3: &R) -> R {
    let s = y2.clone() + y3;
    -y1.clone() - &(y2.clone() * y3) - &(s.clone() + &s)
}
