//! Farey polynomials by brute force: multiply out the word, take the trace.
//!
//! This path shares nothing with the recursion engine except the word
//! generator, so it serves as the reference the engine is checked against.

use num_traits::One;

use crate::ring::{Laurent, PolyL, PolyZ, Ring};
use crate::slope::{is_neighbor, Slope, SlopeError};
use crate::word::{farey_word, Generator, Letter, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
}

impl<R: Ring> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(R::one(), R::zero(), R::zero(), R::one())
    }

    pub fn trace(&self) -> R {
        self.a.clone() + &self.d
    }

    pub fn det(&self) -> R {
        self.a.clone() * &self.d - self.b.clone() * &self.c
    }

    /// Matrix product; always eight ring multiplications.
    pub fn mul(&self, rhs: &Self) -> Self {
        let e = |x: &R, y: &R, u: &R, v: &R| x.clone() * y + &(u.clone() * v);
        Self::new(
            e(&self.a, &rhs.a, &self.b, &rhs.c),
            e(&self.a, &rhs.b, &self.b, &rhs.d),
            e(&self.c, &rhs.a, &self.d, &rhs.c),
            e(&self.c, &rhs.b, &self.d, &rhs.d),
        )
    }
}

/// `X`, `X⁻¹`, `Y`, `Y⁻¹` over some coefficient ring.
#[derive(Debug, Clone)]
pub struct Generators<R> {
    x: Mat2<R>,
    x_inv: Mat2<R>,
    y: Mat2<R>,
    y_inv: Mat2<R>,
}

impl<R: Ring> Generators<R> {
    /// `X = [[α, 1], [0, α⁻¹]]`, `Y = [[β, 0], [z, β⁻¹]]` from the five entries.
    pub fn from_entries(alpha: R, alpha_inv: R, beta: R, beta_inv: R, z: R) -> Self {
        let (zero, one) = (R::zero(), R::one());
        Self {
            x: Mat2::new(alpha.clone(), one.clone(), zero.clone(), alpha_inv.clone()),
            x_inv: Mat2::new(alpha_inv, -one.clone(), zero.clone(), alpha),
            y: Mat2::new(beta.clone(), zero.clone(), z.clone(), beta_inv.clone()),
            y_inv: Mat2::new(beta_inv, zero, -z, beta),
        }
    }

    pub fn get(&self, l: Letter) -> &Mat2<R> {
        match (l.generator, l.inverse) {
            (Generator::X, false) => &self.x,
            (Generator::X, true) => &self.x_inv,
            (Generator::Y, false) => &self.y,
            (Generator::Y, true) => &self.y_inv,
        }
    }

    /// Left-to-right product; the identity for the empty word.
    pub fn word_matrix(&self, w: &Word) -> Mat2<R> {
        let mut letters = w.letters().iter();
        let Some(&first) = letters.next() else {
            return Mat2::identity();
        };
        letters.fold(self.get(first).clone(), |m, &l| m.mul(self.get(l)))
    }

    /// `tr W_s` together with the number of 2×2 products performed.
    pub fn phi_counted(&self, s: Slope) -> Result<(R, u64), WordError> {
        let w = farey_word(s)?;
        let products = w.len().saturating_sub(1) as u64;
        Ok((self.word_matrix(&w).trace(), products))
    }

    pub fn phi(&self, s: Slope) -> Result<R, WordError> {
        Ok(self.phi_counted(s)?.0)
    }
}

fn z_l() -> PolyL {
    PolyL::monomial(Laurent::one(), 1)
}

fn const_l(c: Laurent) -> PolyL {
    PolyL::constant(c)
}

impl Generators<PolyL> {
    /// Entries in `ℤ[α^±, β^±][z]`.
    pub fn generic() -> Self {
        Self::from_entries(
            const_l(Laurent::monomial(1, 1, 0)),
            const_l(Laurent::monomial(1, -1, 0)),
            const_l(Laurent::monomial(1, 0, 1)),
            const_l(Laurent::monomial(1, 0, -1)),
            z_l(),
        )
    }
}

impl Generators<PolyZ> {
    /// `α = β = 1`.
    pub fn parabolic() -> Self {
        let one = PolyZ::one();
        Self::from_entries(one.clone(), one.clone(), one.clone(), one, PolyZ::z())
    }
}

/// Generic generator matrix for a single letter.
pub fn gen_matrix(l: Letter) -> Mat2<PolyL> {
    Generators::generic().get(l).clone()
}

pub fn word_matrix(w: &Word) -> Mat2<PolyL> {
    Generators::generic().word_matrix(w)
}

/// `Φ_s = tr W_s` in the generic ring.
pub fn oracle_phi(s: Slope) -> Result<PolyL, WordError> {
    Generators::generic().phi(s)
}

/// `Φ_s` at `α = β = 1`, multiplied out over `ℤ[z]`.
pub fn oracle_phi_parabolic(s: Slope) -> Result<PolyZ, WordError> {
    Generators::parabolic().phi(s)
}

fn neighbour_words(a: Slope, b: Slope) -> Result<(Word, Word), WordError> {
    if !is_neighbor(a, b) {
        return Err(SlopeError::NotNeighbours(a, b).into());
    }
    Ok((farey_word(a)?, farey_word(b)?))
}

/// `tr(W_a W_b)`.
pub fn oracle_trace_product(a: Slope, b: Slope) -> Result<PolyL, WordError> {
    let (wa, wb) = neighbour_words(a, b)?;
    Ok(word_matrix(&wa.concat(&wb)).trace())
}

/// `tr(W_a W_b⁻¹)`.
pub fn oracle_trace_quotient(a: Slope, b: Slope) -> Result<PolyL, WordError> {
    let (wa, wb) = neighbour_words(a, b)?;
    Ok(word_matrix(&wa.concat(&wb.inverse())).trace())
}

/// Right-hand sides of the product and quotient trace identities for the
/// neighbours `a < b`: `tr(W_aW_b) + Φ_{a⊕b}` and `tr(W_aW_b⁻¹) + Φ_{a⊖b}`.
pub fn trace_identity_constants(a: Slope, b: Slope) -> (PolyL, PolyL) {
    let odd = const_l(Laurent::from_terms([
        (1, 1, 1),
        (1, 1, -1),
        (1, -1, 1),
        (1, -1, -1),
    ]));
    let sq = |i: i32, j: i32| const_l(Laurent::from_terms([(2, 0, 0), (1, i, j), (1, -i, -j)]));
    let sum = a.q() + b.q();
    let diff = a.q().abs_diff(b.q());
    let product = if sum.is_multiple_of(2) {
        sq(2, 0)
    } else {
        odd.clone()
    };
    let quotient = if diff.is_multiple_of(2) {
        sq(0, 2)
    } else {
        odd
    };
    (product, quotient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::specialize_parabolic;
    use crate::slope::ominus;

    fn s(text: &str) -> Slope {
        text.parse().unwrap()
    }

    #[test]
    fn generator_identities() {
        let x = gen_matrix(Letter::X);
        assert_eq!(x.mul(&gen_matrix(Letter::X_INV)), Mat2::identity());
        assert_eq!(gen_matrix(Letter::Y).det(), PolyL::one());
        assert_eq!(
            x.trace(),
            const_l(Laurent::from_terms([(1, 1, 0), (1, -1, 0)]))
        );
    }

    #[test]
    fn small_products() {
        let m = Generators::parabolic().word_matrix(&"yX".parse().unwrap());
        let p = |v: &[i64]| PolyZ::from_i64s(v);
        assert_eq!(m, Mat2::new(p(&[1]), p(&[1]), p(&[0, -1]), p(&[1, -1])));
        assert_eq!(word_matrix(&"xX".parse().unwrap()), Mat2::identity());
        assert_eq!(
            word_matrix(&farey_word(s("1/2")).unwrap()).det(),
            PolyL::one()
        );
    }

    #[test]
    fn base_traces() {
        let row01 = PolyL::new(vec![
            Laurent::from_terms([(1, 1, -1), (1, -1, 1)]),
            Laurent::constant(-1),
        ]);
        assert_eq!(oracle_phi(s("0/1")).unwrap(), row01);
        let row11 = PolyL::new(vec![
            Laurent::from_terms([(1, 1, 1), (1, -1, -1)]),
            Laurent::constant(1),
        ]);
        assert_eq!(oracle_phi(s("1/1")).unwrap(), row11);
        assert_eq!(
            oracle_phi_parabolic(s("1/2")).unwrap(),
            PolyZ::from_i64s(&[2, 0, 1])
        );
        assert_eq!(
            specialize_parabolic(&oracle_phi(s("2/3")).unwrap()),
            PolyZ::from_i64s(&[2, -1, -2, -1])
        );
    }

    #[test]
    fn trace_identities_on_small_pairs() {
        for (a, b) in [("0/1", "1/1"), ("1/2", "1/1"), ("1/3", "1/2")] {
            let (a, b) = (s(a), s(b));
            let (cp, cq) = trace_identity_constants(a, b);
            let sum = crate::slope::mediant(a, b).unwrap();
            let diff = ominus(a, b).unwrap();
            let lhs = oracle_trace_product(a, b).unwrap() + &oracle_phi(sum).unwrap();
            assert_eq!(lhs, cp);
            let phi_diff = if diff.is_infinity() {
                PolyL::constant(Laurent::constant(2))
            } else {
                oracle_phi(diff).unwrap()
            };
            assert_eq!(oracle_trace_quotient(a, b).unwrap() + &phi_diff, cq);
        }
    }
}
