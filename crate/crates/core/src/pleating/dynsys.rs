//! Fixed points and linearisation of `f(x¹, x², x³) = (x², x³, 8 − x¹ − x²x³)`.

use std::fmt;

use num_complex::Complex64;

use crate::ring::PolyZ;

type C = Complex64;

pub const EIGEN_TOL: f64 = 1e-12;

pub fn transition(x: [i64; 3]) -> [i64; 3] {
    [x[1], x[2], 8 - x[0] - x[1] * x[2]]
}

/// Jacobian of `f` at `x`; the last row is `(−1, −x³, −x²)`.
pub fn jacobian(x: [i64; 3]) -> [[i64; 3]; 3] {
    [[0, 1, 0], [0, 0, 1], [-1, -x[2], -x[1]]]
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// `det(λI − M) = λ³ − tr(M) λ² + m₂ λ − det(M)`, `m₂` the sum of principal 2-minors.
pub fn char_poly(m: &[[i64; 3]; 3]) -> PolyZ {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minor = |i: usize, j: usize| m[i][i] * m[j][j] - m[i][j] * m[j][i];
    let m2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    PolyZ::from_i64s(&[-det3(m), m2, -tr, 1])
}

/// Table of eigenpairs `(λ, v)` at the two fixed points.
pub fn stated_eigenpairs(fixed: i64) -> Vec<(C, [C; 3])> {
    let r = |x: f64| C::new(x, 0.0);
    let one = r(1.0);
    let minus_one = (r(-1.0), [one, r(-1.0), one]);
    if fixed == -4 {
        let s = 21f64.sqrt();
        vec![
            (
                r((5.0 + s) / 2.0),
                [r(-(-5.0 + s) / (5.0 + s)), r(2.0 / (5.0 + s)), one],
            ),
            minus_one,
            (
                r((5.0 - s) / 2.0),
                [r(-(5.0 + s) / (-5.0 + s)), r(-2.0 / (-5.0 + s)), one],
            ),
        ]
    } else {
        let s3 = 3f64.sqrt();
        let w = C::new(-0.5, s3 / 2.0);
        vec![
            (w, [w, w.conj(), one]),
            minus_one,
            (w.conj(), [w.conj(), w, one]),
        ]
    }
}

fn eig_residual(m: &[[i64; 3]; 3], lambda: C, v: &[C; 3]) -> f64 {
    (0..3)
        .map(|i| {
            let mv: C = (0..3).map(|j| v[j] * m[i][j] as f64).sum();
            (mv - lambda * v[i]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynsysCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynsysReport {
    pub checks: Vec<DynsysCheck>,
}

impl DynsysReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl fmt::Display for DynsysReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}

pub fn dynsys_check() -> DynsysReport {
    let mut checks = Vec::new();
    let mut push =
        |name: String, pass: bool, detail: String| checks.push(DynsysCheck { name, pass, detail });

    // diagonal fixed points solve c² + 2c − 8 = (c − 2)(c + 4) = 0
    let quad = PolyZ::from_i64s(&[-8, 2, 1]);
    let split = PolyZ::from_i64s(&[-2, 1]) * PolyZ::from_i64s(&[4, 1]);
    push(
        "fixed points".into(),
        quad == split,
        "c^2 + 2c - 8 = (c - 2)(c + 4)".into(),
    );

    let factors = [
        (
            2,
            PolyZ::from_i64s(&[1, 1]) * PolyZ::from_i64s(&[1, 1, 1]),
            "(l+1)(l^2+l+1)",
        ),
        (
            -4,
            PolyZ::from_i64s(&[1, 1]) * PolyZ::from_i64s(&[1, -5, 1]),
            "(l+1)(l^2-5l+1)",
        ),
    ];
    for (c, factored, label) in factors {
        let x = [c; 3];
        let image = transition(x);
        push(
            format!("f(x) = x at ({c},{c},{c})"),
            image == x,
            format!("{image:?}"),
        );
        let m = jacobian(x);
        let d = det3(&m);
        push(format!("det J at {c}"), d == -1, format!("{d}"));
        let cp = char_poly(&m);
        let exact = cp
            .div_exact(&factored)
            .is_some_and(|q| q == PolyZ::from_i64s(&[1]));
        push(
            format!("char poly at {c}"),
            exact,
            format!("{cp} = {label}"),
        );
        for (lambda, v) in stated_eigenpairs(c) {
            let res = eig_residual(&m, lambda, &v);
            push(
                format!(
                    "eigenpair at {c}, lambda = {:.6}{:+.6}i",
                    lambda.re, lambda.im
                ),
                res < EIGEN_TOL,
                format!("residual {res:.3e}"),
            );
        }
    }
    DynsysReport { checks }
}
