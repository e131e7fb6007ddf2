//! Square decompositions `φ_s = s · z^k · R²` of reduced Farey polynomials
//! and the rules relating `s`, `k` and `R` across Farey triangles.
//!
//! Observed behaviour, checked by [`epsilon_k_check`] and [`bad_points`]:
//! the sign is anti-multiplicative (`s(α⊕β) = −s(α)s(β)`), `k` is additive
//! mod 2, and `R` obeys `R(α⊕β) = z^{k(α)k(β)} R(α)R(β) ± R(α⊖β)`. Without
//! the `z^{k(α)k(β)}` factor the `R` rule fails on degree grounds whenever
//! both parents have `k = 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use thiserror::Error;

use crate::recursion::PhiEngine;
use crate::ring::{is_perfect_square, PolyZ};
use crate::slope::{enumerate_farey, ominus, parents, Slope, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConjectureError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("q must be between 1 and 92, got {0}")]
    Domain(u32),
    #[error("|φ_{slope}(-1)| = {value} is not a perfect square")]
    NotASquare { slope: Slope, value: BigInt },
    #[error("φ_{0} is not of the form ±z^k R²")]
    NoDecomposition(Slope),
}

/// `φ = sign · z^k · r²` with `r` normalised to a positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDecomposition {
    pub sign: i8,
    pub k: u8,
    pub r: PolyZ,
}

impl SquareDecomposition {
    pub fn expand(&self) -> PolyZ {
        let sq = &self.r * &self.r;
        let sq = sq.shift(usize::from(self.k));
        if self.sign < 0 {
            -sq
        } else {
            sq
        }
    }
}

/// Decomposes a reduced polynomial; `None` is a counterexample candidate.
pub fn decompose_reduced(phi: &PolyZ) -> Option<SquareDecomposition> {
    let Some(v) = phi.valuation() else {
        return Some(SquareDecomposition {
            sign: 1,
            k: 0,
            r: PolyZ::from_i64s(&[]),
        });
    };
    let k = v % 2;
    let core = phi.unshift(k)?;
    let sign: i8 = if core.leading_sign() < 0 { -1 } else { 1 };
    let r = if sign < 0 { -core } else { core }.sqrt_exact()?;
    let r = if r.leading_sign() < 0 { -r } else { r };
    let d = SquareDecomposition {
        sign,
        k: k as u8,
        r,
    };
    (d.expand() == *phi).then_some(d)
}

/// `φ_s = Φ_s − 2` as `±z^k R²`, parabolic case.
pub fn decompose_square(s: Slope) -> Option<SquareDecomposition> {
    let d = decompose_reduced(&PhiEngine::parabolic().phi_reduced(s));
    if d.is_none() {
        log::error!("φ_{s} has no square decomposition: counterexample candidate");
    }
    d
}

/// `fib(0) = 0`, `fib(1) = fib(2) = 1`.
pub fn fib(n: u32) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `fib(q−1)/fib(q)`.
pub fn fibonacci_slope(q: u32) -> Result<Slope, ConjectureError> {
    if q == 0 || q > 92 {
        return Err(ConjectureError::Domain(q));
    }
    Ok(Slope::new(fib(q - 1), fib(q))?)
}

/// `√|φ_{fib(q−1)/fib(q)}(−1)|`, exactly.
pub fn table6_value(q: u32) -> Result<BigInt, ConjectureError> {
    let slope = fibonacci_slope(q)?;
    let value = PhiEngine::parabolic_at_int(-1).phi(slope) - BigInt::from(2);
    is_perfect_square(&value.abs()).ok_or(ConjectureError::NotASquare { slope, value })
}

/// Cached decompositions over the parabolic engine.
#[derive(Debug)]
pub struct Decompositions {
    engine: PhiEngine<PolyZ>,
    cache: HashMap<Slope, SquareDecomposition>,
}

impl Default for Decompositions {
    fn default() -> Self {
        Self::new()
    }
}

impl Decompositions {
    pub fn new() -> Self {
        Self {
            engine: PhiEngine::parabolic(),
            cache: HashMap::new(),
        }
    }

    /// Decomposes every slope with `q ≤ q_max`, in parallel; failures are returned.
    pub fn fill(&mut self, q_max: u64) -> Vec<Slope> {
        let todo: Vec<(Slope, PolyZ)> = enumerate_farey(q_max)
            .into_iter()
            .filter(|s| !self.cache.contains_key(s))
            .map(|s| (s, self.engine.phi_reduced(s)))
            .collect();
        let done: Vec<(Slope, Option<SquareDecomposition>)> = todo
            .par_iter()
            .map(|(s, phi)| (*s, decompose_reduced(phi)))
            .collect();
        let mut failures = Vec::new();
        for (s, d) in done {
            match d {
                Some(d) => {
                    self.cache.insert(s, d);
                }
                None => {
                    log::error!("φ_{s} has no square decomposition: counterexample candidate");
                    failures.push(s);
                }
            }
        }
        failures
    }

    pub fn get(&mut self, s: Slope) -> Result<&SquareDecomposition, ConjectureError> {
        if !self.cache.contains_key(&s) {
            let d = decompose_reduced(&self.engine.phi_reduced(s))
                .ok_or(ConjectureError::NoDecomposition(s))?;
            self.cache.insert(s, d);
        }
        Ok(&self.cache[&s])
    }
}

/// Result of scanning every slope up to some denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub q_max: u64,
    pub checked: usize,
    pub failures: Vec<Slope>,
}

pub fn conjecture_scan(q_max: u64) -> ScanReport {
    let failures = Decompositions::new().fill(q_max);
    ScanReport {
        q_max,
        checked: enumerate_farey(q_max).len(),
        failures,
    }
}

/// `0/1`, `1/1`, `1/2` are given by the seed table, not by a triangle rule.
pub fn is_seed(s: Slope) -> bool {
    s.q() <= 2
}

/// Non-seed slopes with `q ≤ q_max` and their triangle `(α, β, α⊖β)`.
fn triangles(q_max: u64) -> Vec<(Slope, Slope, Slope, Slope)> {
    enumerate_farey(q_max)
        .into_iter()
        .filter(|&t| !is_seed(t))
        .map(|t| {
            let (a, b) = parents(t).expect("non-seed slopes have parents");
            (t, a, b, ominus(a, b).expect("parents are neighbours"))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProductRule {
    /// `R(α)R(β) ± R(α⊖β)`.
    Literal,
    /// `z^{k(α)k(β)} R(α)R(β) ± R(α⊖β)`.
    ZCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Plus,
    Minus,
    Both,
    Neither,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::Plus => "plus",
            Rule::Minus => "minus",
            Rule::Both => "both",
            Rule::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadPointMap {
    pub rule: ProductRule,
    pub points: BTreeMap<Slope, Rule>,
}

impl BadPointMap {
    pub fn count(&self, r: Rule) -> usize {
        self.points.values().filter(|&&v| v == r).count()
    }
}

/// Which `±` rule each non-seed slope with `q ≤ q_max` follows.
pub fn bad_points(q_max: u64, rule: ProductRule) -> Result<BadPointMap, ConjectureError> {
    let mut dec = Decompositions::new();
    if let Some(&s) = dec.fill(q_max).first() {
        return Err(ConjectureError::NoDecomposition(s));
    }
    let mut points = BTreeMap::new();
    for (t, a, b, d) in triangles(q_max) {
        let (da, db) = (dec.get(a)?.clone(), dec.get(b)?.clone());
        let rd = dec.get(d)?.r.clone();
        let rt = &dec.get(t)?.r;
        let mut prod = &da.r * &db.r;
        if rule == ProductRule::ZCorrected && da.k == 1 && db.k == 1 {
            prod = prod.shift(1);
        }
        let plus = *rt == prod.clone() + &rd;
        let minus = *rt == prod - &rd;
        let class = match (plus, minus) {
            (true, true) => Rule::Both,
            (true, false) => Rule::Plus,
            (false, true) => Rule::Minus,
            (false, false) => Rule::Neither,
        };
        points.insert(t, class);
    }
    Ok(BadPointMap { rule, points })
}

/// Observed signs and `k` against the triangle rules and the seed table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonKReport {
    pub q_max: u64,
    pub triangles: usize,
    /// `s(α⊕β) ≠ s(α)s(β)`.
    pub multiplicative_failures: Vec<Slope>,
    /// `s(α⊕β) ≠ −s(α)s(β)`.
    pub anti_multiplicative_failures: Vec<Slope>,
    /// `k(α⊕β) ≠ k(α) + k(β) mod 2`.
    pub k_failures: Vec<Slope>,
    /// `(slope, observed sign, printed ε, observed k, printed k)`.
    pub seeds: Vec<(Slope, i8, i8, u8, u8)>,
}

pub const SEED_TABLE: [(Slope, i8, u8); 3] = [
    (Slope::ZERO, -1, 1),
    (Slope::ONE, 1, 1),
    (Slope::HALF, 1, 0),
];

pub fn epsilon_k_check(q_max: u64) -> Result<EpsilonKReport, ConjectureError> {
    let mut dec = Decompositions::new();
    if let Some(&s) = dec.fill(q_max.max(2)).first() {
        return Err(ConjectureError::NoDecomposition(s));
    }
    let tri = triangles(q_max);
    let mut report = EpsilonKReport {
        q_max,
        triangles: tri.len(),
        multiplicative_failures: Vec::new(),
        anti_multiplicative_failures: Vec::new(),
        k_failures: Vec::new(),
        seeds: Vec::new(),
    };
    for (t, a, b, _) in tri {
        let (st, kt) = dec.get(t).map(|d| (d.sign, d.k))?;
        let (sa, ka) = dec.get(a).map(|d| (d.sign, d.k))?;
        let (sb, kb) = dec.get(b).map(|d| (d.sign, d.k))?;
        if st != sa * sb {
            report.multiplicative_failures.push(t);
        }
        if st != -sa * sb {
            report.anti_multiplicative_failures.push(t);
        }
        if kt != (ka + kb) % 2 {
            report.k_failures.push(t);
        }
    }
    for (s, eps, k) in SEED_TABLE {
        let d = dec.get(s)?;
        report.seeds.push((s, d.sign, eps, d.k, k));
    }
    Ok(report)
}

impl fmt::Display for EpsilonKReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triangles with q <= {}: {}", self.q_max, self.triangles)?;
        writeln!(
            f,
            "sign multiplicative failures: {}",
            self.multiplicative_failures.len()
        )?;
        writeln!(
            f,
            "sign anti-multiplicative failures: {}",
            self.anti_multiplicative_failures.len()
        )?;
        writeln!(f, "k additivity failures: {}", self.k_failures.len())?;
        for (s, sign, eps, k, kp) in &self.seeds {
            writeln!(
                f,
                "seed {s}: observed sign {sign:+} (table {eps:+}), observed k {k} (table {kp})"
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    fn z(c: &[i64]) -> PolyZ {
        PolyZ::from_i64s(c)
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(
            decompose_square(s("1/2")),
            Some(SquareDecomposition {
                sign: 1,
                k: 0,
                r: z(&[0, 1])
            })
        );
        assert_eq!(
            decompose_square(s("0/1")),
            Some(SquareDecomposition {
                sign: -1,
                k: 1,
                r: z(&[1])
            })
        );
        assert_eq!(
            decompose_square(s("1/3")),
            Some(SquareDecomposition {
                sign: 1,
                k: 1,
                r: z(&[-1, 1])
            })
        );
        assert_eq!(
            decompose_square(s("2/3")),
            Some(SquareDecomposition {
                sign: -1,
                k: 1,
                r: z(&[1, 1])
            })
        );
        assert_eq!(decompose_reduced(&z(&[0, 2])), None);
    }

    #[test]
    fn table6_rows() {
        let rows = [(1, 1u64), (4, 0), (8, 2), (11, 17), (13, 1491)];
        for (q, v) in rows {
            assert_eq!(table6_value(q).unwrap(), BigInt::from(v), "q = {q}");
        }
        assert_eq!(table6_value(0), Err(ConjectureError::Domain(0)));
    }

    #[test]
    fn rules_on_small_triangles() {
        let lit = bad_points(6, ProductRule::Literal).unwrap();
        assert_eq!(lit.points[&s("1/3")], Rule::Minus);
        assert_eq!(lit.points[&s("1/4")], Rule::Neither);
        let cor = bad_points(6, ProductRule::ZCorrected).unwrap();
        assert_eq!(cor.points[&s("1/4")], Rule::Minus);
        assert_eq!(cor.count(Rule::Neither), 0);
        assert!(!cor.points.contains_key(&s("1/2")));
    }

    #[test]
    fn signs_and_k() {
        let r = epsilon_k_check(12).unwrap();
        assert!(r.anti_multiplicative_failures.is_empty());
        assert!(r.k_failures.is_empty());
        assert_eq!(r.multiplicative_failures.len(), r.triangles);
        assert_eq!(r.seeds[0], (s("0/1"), -1, -1, 1, 1));
    }

    #[test]
    fn fibonacci_numbers() {
        assert_eq!((fib(1), fib(2), fib(10)), (1, 1, 55));
        assert_eq!(fibonacci_slope(10).unwrap(), s("34/55"));
    }
}
