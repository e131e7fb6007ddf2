//! Matrix products against the recursion: operation counts and wall time.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::conjecture::fibonacci_slope;
use crate::oracle::Generators;
use crate::recursion::PhiEngine;
use crate::ring::PolyZ;
use crate::slope::Slope;

/// Polynomial multiplications in one 2×2 matrix product.
pub const MULS_PER_MATRIX_PRODUCT: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Left,
    Fibonacci,
}

impl FromStr for PathKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(PathKind::Left),
            "fibonacci" | "fib" => Ok(PathKind::Fibonacci),
            _ => Err(format!(
                "unknown path kind {s:?}; expected left or fibonacci"
            )),
        }
    }
}

impl PathKind {
    /// `1/size` or `fib(size−1)/fib(size)`.
    pub fn slope(self, size: u32) -> Result<Slope, String> {
        match self {
            PathKind::Left if size >= 1 => {
                Slope::new(1, u64::from(size)).map_err(|e| e.to_string())
            }
            PathKind::Left => Err("size must be at least 1".into()),
            PathKind::Fibonacci => fibonacci_slope(size).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub kind: PathKind,
    pub size: u32,
    pub slope: Slope,
    pub agree: bool,
    pub oracle_mults: u64,
    pub recursion_mults: u64,
    pub oracle_time: Duration,
    pub recursion_time: Duration,
}

impl BenchReport {
    pub fn count_ratio(&self) -> f64 {
        self.oracle_mults as f64 / self.recursion_mults.max(1) as f64
    }

    pub fn speedup(&self) -> f64 {
        self.oracle_time.as_secs_f64() / self.recursion_time.as_secs_f64().max(1e-9)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "slope {} (size {})", self.slope, self.size)?;
        writeln!(f, "results agree: {}", self.agree)?;
        writeln!(
            f,
            "oracle: {} polynomial multiplications, {:.3?}",
            self.oracle_mults, self.oracle_time
        )?;
        writeln!(
            f,
            "recursion: {} polynomial multiplications, {:.3?}",
            self.recursion_mults, self.recursion_time
        )?;
        writeln!(f, "multiplication ratio: {:.1}", self.count_ratio())?;
        writeln!(f, "wall-clock speedup: {:.1}", self.speedup())
    }
}

/// Parabolic `Φ_s` both ways; `agree` compares the two results exactly.
pub fn bench(kind: PathKind, size: u32) -> Result<BenchReport, String> {
    let slope = kind.slope(size)?;

    let t = Instant::now();
    let (oracle, products) = Generators::<PolyZ>::parabolic()
        .phi_counted(slope)
        .map_err(|e| e.to_string())?;
    let oracle_time = t.elapsed();

    let t = Instant::now();
    let mut engine = PhiEngine::parabolic();
    let fast = engine.phi(slope);
    let recursion_time = t.elapsed();

    Ok(BenchReport {
        kind,
        size,
        slope,
        agree: oracle == fast,
        oracle_mults: products * MULS_PER_MATRIX_PRODUCT,
        recursion_mults: engine.multiplications(),
        oracle_time,
        recursion_time,
    })
}
