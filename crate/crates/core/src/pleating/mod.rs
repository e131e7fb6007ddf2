//! Roots of `Φ_s + 2`: point clouds approximating the Riley slice boundary,
//! cusp sequences along continued-fraction paths, and the cubic map's
//! fixed-point data.

mod dual;
mod dynsys;
mod roots;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cf::CfExpansion;
use crate::recursion::{PhiEngine, PhiProgram, RecursionConstants, Seeds};
use crate::ring::{to_complex_poly, GeneratorParams, PolyC, PolyZ};
use crate::slope::{convergents, enumerate_farey, Slope, SlopeError};

pub use dual::Dual;
pub use dynsys::{
    char_poly, dynsys_check, jacobian, stated_eigenpairs, transition, DynsysCheck, DynsysReport,
    EIGEN_TOL,
};
pub use roots::{
    backward_error, roots, roots_by, roots_with, RootCheck, RootError, RootOptions, RootSet,
    DEFAULT_TOL,
};

/// Past this denominator double-precision roots of `Φ + 2` degrade.
pub const DEGREE_WARNING: u64 = 60;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CuspError {
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error("{slope}: {source}")]
    Roots { slope: Slope, source: RootError },
}

/// One slope's roots, or why they are missing.
pub type SlopeRoots = (Slope, Result<RootSet, CuspError>);

/// `Φ_s` for one slice, exact when the slice is parabolic.
#[derive(Debug, Clone)]
pub enum SliceEngine {
    Parabolic(PhiEngine<PolyZ>),
    Numeric(PhiEngine<PolyC>, GeneratorParams),
}

impl SliceEngine {
    pub fn new(params: GeneratorParams) -> Self {
        if params.is_parabolic() {
            SliceEngine::Parabolic(PhiEngine::parabolic())
        } else {
            SliceEngine::Numeric(PhiEngine::numeric(params), params)
        }
    }

    pub fn params(&self) -> GeneratorParams {
        match self {
            SliceEngine::Parabolic(_) => GeneratorParams::PARABOLIC,
            SliceEngine::Numeric(_, p) => *p,
        }
    }

    pub fn multiplications(&self) -> u64 {
        match self {
            SliceEngine::Parabolic(e) => e.multiplications(),
            SliceEngine::Numeric(e, _) => e.multiplications(),
        }
    }

    /// `Φ_s + 2` with complex double coefficients.
    pub fn shifted(&mut self, s: Slope) -> Result<PolyC, SlopeError> {
        if s.is_infinity() {
            return Err(SlopeError::OutOfDomain { p: 1, q: 0 });
        }
        if s.q() > DEGREE_WARNING {
            log::warn!(
                "{s}: degree {} exceeds {DEGREE_WARNING}; roots are low accuracy",
                s.q()
            );
        }
        Ok(match self {
            SliceEngine::Parabolic(e) => to_complex_poly(&(e.phi(s) + PolyZ::from_i64s(&[2]))),
            SliceEngine::Numeric(e, _) => e.phi(s) + PolyC::constant(Complex64::new(2.0, 0.0)),
        })
    }

    /// Warms the cache along the unit-mediant path so later lookups are free.
    pub fn walk(&mut self, cf: &CfExpansion, n: usize) -> Result<(), SlopeError> {
        match self {
            SliceEngine::Parabolic(e) => e.fan_walk(cf, n).map(drop),
            SliceEngine::Numeric(e, _) => e.fan_walk(cf, n).map(drop),
        }
    }
}

/// Pointwise `(Φ_s + 2, Φ_s')` through the recursion itself.
///
/// Expanding `Φ_s` into monomials loses most of its digits to cancellation
/// near the slice boundary; evaluating the recursion at `z` does not.
#[derive(Debug, Clone)]
pub struct PointEvaluator {
    program: PhiProgram,
    constants: RecursionConstants<Dual>,
    seeds: Seeds<PolyC>,
}

impl PointEvaluator {
    pub fn new(s: Slope, params: GeneratorParams) -> Self {
        let (c, seeds) = match SliceEngine::new(params) {
            SliceEngine::Parabolic(e) => {
                let sd = e.seeds();
                let c = e.constants();
                let cz = |p: &PolyZ| to_complex_poly(p).coeff(0);
                let seeds = Seeds {
                    infinity: to_complex_poly(&sd.infinity),
                    zero: to_complex_poly(&sd.zero),
                    one: to_complex_poly(&sd.one),
                };
                ((cz(&c.even), cz(&c.odd)), seeds)
            }
            SliceEngine::Numeric(e, _) => {
                let c = e.constants();
                ((c.even.coeff(0), c.odd.coeff(0)), e.seeds())
            }
        };
        Self {
            program: PhiProgram::new(s),
            constants: RecursionConstants {
                even: Dual::constant(c.0),
                odd: Dual::constant(c.1),
            },
            seeds,
        }
    }

    pub fn eval(&self, z: Complex64) -> (Complex64, Complex64) {
        let at = |p: &PolyC| {
            let d = p
                .coeffs()
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, (k, a)| {
                    acc * z + a * k as f64
                });
            Dual::new(p.eval(&z), d)
        };
        let seeds = Seeds {
            infinity: at(&self.seeds.infinity),
            zero: at(&self.seeds.zero),
            one: at(&self.seeds.one),
        };
        let v = self.program.eval(&self.constants, &seeds);
        (v.v + 2.0, v.d)
    }
}

fn label(slope: Slope, params: GeneratorParams, p: &PolyC) -> Result<RootSet, CuspError> {
    let tag = |mut rs: RootSet| {
        rs.slope = Some(slope);
        rs.params = params;
        rs
    };
    let point = PointEvaluator::new(slope, params);
    match roots_by(p, |z| point.eval(z), RootOptions::default()) {
        Ok(rs) => Ok(tag(rs)),
        Err(RootError::NonConvergence {
            partial,
            unconverged,
        }) => Err(CuspError::Roots {
            slope,
            source: RootError::NonConvergence {
                partial: Box::new(tag(*partial)),
                unconverged,
            },
        }),
        Err(source) => Err(CuspError::Roots { slope, source }),
    }
}

/// Roots of `Φ_s + 2` in the slice given by `params`.
pub fn cusp_candidates(s: Slope, params: GeneratorParams) -> Result<RootSet, CuspError> {
    let p = SliceEngine::new(params).shifted(s)?;
    label(s, params, &p)
}

/// Polynomials first, serially through the shared cache; roots in parallel.
fn roots_for(engine: &mut SliceEngine, slopes: &[Slope]) -> Vec<SlopeRoots> {
    let params = engine.params();
    let polys: Vec<(Slope, PolyC)> = slopes
        .iter()
        .map(|&s| (s, engine.shifted(s).expect("slopes are finite")))
        .collect();
    polys
        .par_iter()
        .map(|(s, p)| (*s, label(*s, params, p)))
        .collect()
}

/// Cusp candidates for every slope in `enumerate_farey(q_max)`, in that order.
pub fn slice_cloud(q_max: u64, params: GeneratorParams) -> Vec<SlopeRoots> {
    roots_for(&mut SliceEngine::new(params), &enumerate_farey(q_max))
}

/// Cusp candidates at the first `depth` convergents `[a₀; a₁, …, a_k]`,
/// `k ≥ 1`; the integer-part convergent is skipped.
pub fn irrational_cusp_path(
    cf: &CfExpansion,
    depth: usize,
    params: GeneratorParams,
) -> Result<Vec<SlopeRoots>, SlopeError> {
    let targets: Vec<Slope> = convergents(cf, depth + 1)?.into_iter().skip(1).collect();
    let mut engine = SliceEngine::new(params);
    let path_len: u64 = cf.terms().skip(1).take(depth).sum();
    engine.walk(cf, path_len as usize)?;
    Ok(roots_for(&mut engine, &targets))
}

/// The root farthest from the centroid; ties go to the larger imaginary part.
///
/// Exploratory only: nothing guarantees this root is a cusp.
pub fn extremal_root_heuristic(rs: &RootSet) -> Option<Complex64> {
    let n = rs.roots.len();
    if n == 0 {
        return None;
    }
    let centroid: Complex64 = rs.roots.iter().sum::<Complex64>() / n as f64;
    let tie = 1e-12 * rs.roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    rs.roots.iter().copied().reduce(|best, r| {
        let (db, dr) = ((best - centroid).norm(), (r - centroid).norm());
        if dr > db + tie || ((dr - db).abs() <= tie && r.im > best.im) {
            r
        } else {
            best
        }
    })
}
