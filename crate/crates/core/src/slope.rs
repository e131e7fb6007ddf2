//! Slopes on the Farey graph and the neighbour arithmetic on them.
//!
//! The working domain is `[0, 1]` together with the formal vertex `1/0`.
//! Every [`Slope`] value is in lowest terms and inside that domain, so the
//! operations below only ever have to check neighbourliness.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::cf::CfExpansion;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    ZeroOverZero,
    #[error("{p}/{q} is not in lowest terms")]
    NotReduced { p: u64, q: u64 },
    #[error("{p}/{q} lies outside [0,1] and is not 1/0")]
    OutOfDomain { p: i128, q: i128 },
    #[error("{0} and {1} are not Farey neighbours")]
    NotNeighbours(Slope, Slope),
    #[error("{0} has no Farey parents")]
    NoParents(Slope),
    #[error("{0} has a single continued fraction expansion")]
    SingleExpansion(Slope),
    #[error("continued fraction is empty or has a zero term after the first")]
    InvalidExpansion,
    #[error("continued fraction convergent overflows 64-bit integers")]
    Overflow,
    #[error("cannot parse slope from {0:?}")]
    Parse(String),
}

/// A reduced fraction `p/q` in `[0, 1]`, or the formal vertex `1/0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    p: u64,
    q: u64,
}

impl Slope {
    pub const ZERO: Slope = Slope { p: 0, q: 1 };
    pub const ONE: Slope = Slope { p: 1, q: 1 };
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const HALF: Slope = Slope { p: 1, q: 2 };

    pub fn new(p: u64, q: u64) -> Result<Self, SlopeError> {
        if p == 0 && q == 0 {
            return Err(SlopeError::ZeroOverZero);
        }
        if p.gcd(&q) != 1 {
            return Err(SlopeError::NotReduced { p, q });
        }
        if q != 0 && p > q {
            return Err(SlopeError::OutOfDomain {
                p: p.into(),
                q: q.into(),
            });
        }
        Ok(Slope { p, q })
    }

    /// Builds a slope from a signed pair, normalising the overall sign.
    fn from_signed(p: i128, q: i128) -> Result<Self, SlopeError> {
        let (p, q) = if q < 0 || (q == 0 && p < 0) {
            (-p, -q)
        } else {
            (p, q)
        };
        if p < 0 {
            return Err(SlopeError::OutOfDomain { p, q });
        }
        let p = u64::try_from(p).map_err(|_| SlopeError::Overflow)?;
        let q = u64::try_from(q).map_err(|_| SlopeError::Overflow)?;
        Slope::new(p, q)
    }

    pub fn p(self) -> u64 {
        self.p
    }

    pub fn q(self) -> u64 {
        self.q
    }

    pub fn is_infinity(self) -> bool {
        self.q == 0
    }

    /// `true` for the three vertices of the base triangle `0/1, 1/1, 1/0`.
    pub fn is_base(self) -> bool {
        self == Slope::ZERO || self == Slope::ONE || self == Slope::INFINITY
    }

    pub fn to_f64(self) -> f64 {
        self.p as f64 / self.q as f64
    }

    fn det(self, other: Slope) -> i128 {
        i128::from(self.p) * i128::from(other.q) - i128::from(self.q) * i128::from(other.p)
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.p) * u128::from(other.q);
        let rhs = u128::from(other.p) * u128::from(self.q);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SlopeError::Parse(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse::<u64>().map_err(|_| bad())?;
        let q = q.trim().parse::<u64>().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

/// `|p_a q_b − q_a p_b| = 1`.
pub fn is_neighbor(a: Slope, b: Slope) -> bool {
    a.det(b).abs() == 1
}

fn require_neighbors(a: Slope, b: Slope) -> Result<(), SlopeError> {
    if is_neighbor(a, b) {
        Ok(())
    } else {
        Err(SlopeError::NotNeighbours(a, b))
    }
}

/// Farey addition `a ⊕ b = (p_a + p_b)/(q_a + q_b)` of two neighbours.
pub fn mediant(a: Slope, b: Slope) -> Result<Slope, SlopeError> {
    require_neighbors(a, b)?;
    let p = a.p.checked_add(b.p).ok_or(SlopeError::Overflow)?;
    let q = a.q.checked_add(b.q).ok_or(SlopeError::Overflow)?;
    Slope::new(p, q)
}

/// `a ⊖ b = (p_a − p_b)/(q_a − q_b)` with signs normalised, the third
/// vertex of the Farey triangle on the edge `a b`.
pub fn ominus(a: Slope, b: Slope) -> Result<Slope, SlopeError> {
    require_neighbors(a, b)?;
    Slope::from_signed(
        i128::from(a.p) - i128::from(b.p),
        i128::from(a.q) - i128::from(b.q),
    )
}

/// The unique neighbour pair `(γ_L, γ_R)`, `γ_L < γ_R`, whose mediant is `s`.
pub fn parents(s: Slope) -> Result<(Slope, Slope), SlopeError> {
    if s == Slope::ZERO || s == Slope::INFINITY {
        return Err(SlopeError::NoParents(s));
    }
    let (a, b) = farey_expansion(s)?;
    Ok(if a < b { (a, b) } else { (b, a) })
}

/// Euclidean-algorithm terms of `p/q`, `q ≥ 1`.
fn euclid_terms(s: Slope) -> Vec<u64> {
    let (mut p, mut q) = (s.p, s.q);
    let mut terms = Vec::new();
    while q != 0 {
        terms.push(p / q);
        (p, q) = (q, p % q);
    }
    terms
}

/// Both finite expansions of `s`: `[a₁,…,a_N,1]` first, then `[a₁,…,a_N+1]`.
pub fn continued_fraction(s: Slope) -> Result<(CfExpansion, CfExpansion), SlopeError> {
    if s.is_infinity() {
        return Err(SlopeError::NoParents(s));
    }
    let euclid = euclid_terms(s);
    let last = *euclid.last().expect("q >= 1 gives at least one term");
    if last == 0 {
        return Err(SlopeError::SingleExpansion(s));
    }
    let mut odd_tail = euclid.clone();
    *odd_tail.last_mut().expect("non-empty") = last - 1;
    odd_tail.push(1);
    Ok((CfExpansion::finite(odd_tail)?, CfExpansion::finite(euclid)?))
}

/// Value of a finite continued fraction, with the empty expansion read as `1/0`.
pub(crate) fn evaluate_terms(terms: &[u64]) -> Result<Slope, SlopeError> {
    let (mut h, mut h_prev) = (1u64, 0u64);
    let (mut k, mut k_prev) = (0u64, 1u64);
    for &a in terms {
        let h_next = a.checked_mul(h).and_then(|x| x.checked_add(h_prev));
        let k_next = a.checked_mul(k).and_then(|x| x.checked_add(k_prev));
        (h_prev, k_prev) = (h, k);
        h = h_next.ok_or(SlopeError::Overflow)?;
        k = k_next.ok_or(SlopeError::Overflow)?;
    }
    Slope::new(h, k)
}

/// For `s = [a₁,…,a_N,1]`, returns `([a₁,…,a_N], [a₁,…,a_{N−1}])`:
/// two neighbours whose mediant is `s`.
pub fn farey_expansion(s: Slope) -> Result<(Slope, Slope), SlopeError> {
    let (odd_tail, _) = continued_fraction(s)?;
    let terms = odd_tail.prefix();
    let n = terms.len();
    Ok((
        evaluate_terms(&terms[..n - 1])?,
        evaluate_terms(&terms[..n - 2])?,
    ))
}

/// The first `n` convergents `[a₁], [a₁,a₂], …` (fewer if the expansion ends).
pub fn convergents(cf: &CfExpansion, n: usize) -> Result<Vec<Slope>, SlopeError> {
    let mut out = Vec::with_capacity(n);
    let mut walk = ConvergentWalk::new();
    for a in cf.terms().take(n) {
        out.push(walk.push(a)?);
    }
    Ok(out)
}

/// The first `n` slopes of the unit-mediant path through the convergents.
///
/// Each element is the mediant of the previous one with the currently active
/// convergent, so consecutive elements always span a Farey triangle and
/// every convergent after `[a₁]` appears on the path.
pub fn semiconvergent_path(cf: &CfExpansion, n: usize) -> Result<Vec<Slope>, SlopeError> {
    let mut out = Vec::with_capacity(n);
    let mut walk = ConvergentWalk::new();
    'terms: for a in cf.terms() {
        let (older, active) = (walk.older(), walk.current());
        let mut cur = older;
        for _ in 0..a {
            if out.len() == n {
                break 'terms;
            }
            cur = mediant(cur, active)?;
            out.push(cur);
        }
        walk.push(a)?;
        if out.len() == n {
            break;
        }
    }
    Ok(out)
}

/// Running convergent recurrence `h_n = a_n h_{n−1} + h_{n−2}` seeded with
/// `h_{−1}/k_{−1} = 1/0` and `h_{−2}/k_{−2} = 0/1`.
struct ConvergentWalk {
    cur: (u64, u64),
    prev: (u64, u64),
}

impl ConvergentWalk {
    fn new() -> Self {
        Self {
            cur: (1, 0),
            prev: (0, 1),
        }
    }

    fn current(&self) -> Slope {
        Slope {
            p: self.cur.0,
            q: self.cur.1,
        }
    }

    fn older(&self) -> Slope {
        Slope {
            p: self.prev.0,
            q: self.prev.1,
        }
    }

    fn push(&mut self, a: u64) -> Result<Slope, SlopeError> {
        let step = |x: u64, y: u64| a.checked_mul(x).and_then(|v| v.checked_add(y));
        let h = step(self.cur.0, self.prev.0).ok_or(SlopeError::Overflow)?;
        let k = step(self.cur.1, self.prev.1).ok_or(SlopeError::Overflow)?;
        let next = Slope::new(h, k)?;
        self.prev = self.cur;
        self.cur = (h, k);
        Ok(next)
    }
}

/// `β_k` of the boundary sequence about `alpha`:
/// `γ_L ⊕^{−k−1} α` for `k < −1`, `γ_L` for `k = −1`, `γ_R` for `k = 0`,
/// and `γ_R ⊕^k α` for `k > 0`.
pub fn boundary_sequence(alpha: Slope, k: i64) -> Result<Slope, SlopeError> {
    let (left, right) = parents(alpha)?;
    let (mut cur, steps) = match k {
        -1 => return Ok(left),
        0 => return Ok(right),
        k if k > 0 => (right, k),
        k => (left, -k - 1),
    };
    for _ in 0..steps {
        cur = mediant(cur, alpha)?;
    }
    Ok(cur)
}

/// All slopes in `[0, 1]` with denominator at most `q_max`, ordered by `q`
/// then `p`.
pub fn enumerate_farey(q_max: u64) -> Vec<Slope> {
    let mut out = vec![Slope::ZERO];
    for q in 1..=q_max {
        for p in 1..=q {
            if p.gcd(&q) == 1 {
                out.push(Slope { p, q });
            }
        }
    }
    out
}

/// Neighbour pairs `(a, b)`, `a < b`, with `q_a + q_b ≤ max_sum`, both
/// finite and inside `[0, 1]`.
pub fn neighbor_pairs(max_sum: u64) -> Vec<(Slope, Slope)> {
    let slopes = enumerate_farey(max_sum);
    let mut out = Vec::new();
    for (i, &a) in slopes.iter().enumerate() {
        for &b in &slopes[i + 1..] {
            if a.q + b.q <= max_sum && is_neighbor(a, b) {
                out.push(if a < b { (a, b) } else { (b, a) });
            }
        }
    }
    out
}
