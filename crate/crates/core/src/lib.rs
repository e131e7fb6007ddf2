//! Farey words, Farey trace polynomials and the recursion that produces them.

pub mod bench;
pub mod cf;
pub mod conjecture;
pub mod format;
pub mod frf;
pub mod oracle;
pub mod pleating;
pub mod recursion;
pub mod ring;
pub mod slope;
pub mod word;

pub use cf::CfExpansion;
pub use slope::{Slope, SlopeError};
