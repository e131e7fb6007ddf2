//! Simple continued fractions, finite or eventually periodic.

use std::fmt;

use crate::slope::{evaluate_terms, Slope, SlopeError};

/// `[a₁, a₂, …]` given as a finite prefix followed by an optional block that
/// repeats forever. Only the first term may be zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    prefix: Vec<u64>,
    period: Vec<u64>,
}

impl CfExpansion {
    pub fn finite(terms: Vec<u64>) -> Result<Self, SlopeError> {
        Self::periodic(terms, Vec::new())
    }

    pub fn periodic(prefix: Vec<u64>, period: Vec<u64>) -> Result<Self, SlopeError> {
        if prefix.is_empty() && period.is_empty() {
            return Err(SlopeError::InvalidExpansion);
        }
        let zero_after_first = prefix.iter().chain(&period).skip(1).any(|&a| a == 0);
        let zero_period = prefix.is_empty() && period.contains(&0);
        if zero_after_first || zero_period {
            return Err(SlopeError::InvalidExpansion);
        }
        Ok(Self { prefix, period })
    }

    /// Splits `terms` so that the last `repeat` of them form the period.
    pub fn with_repeating_tail(terms: Vec<u64>, repeat: usize) -> Result<Self, SlopeError> {
        if repeat > terms.len() {
            return Err(SlopeError::InvalidExpansion);
        }
        let mut prefix = terms;
        let period = prefix.split_off(prefix.len() - repeat);
        Self::periodic(prefix, period)
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// All terms in order; infinite when periodic.
    pub fn terms(&self) -> impl Iterator<Item = u64> + '_ {
        self.prefix
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    /// Exact value of a finite expansion.
    pub fn value(&self) -> Result<Slope, SlopeError> {
        if !self.is_finite() {
            return Err(SlopeError::InvalidExpansion);
        }
        evaluate_terms(&self.prefix)
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "[{}", join(&self.prefix))?;
        if !self.period.is_empty() {
            let sep = if self.prefix.is_empty() { "" } else { "," };
            write!(f, "{sep}({})…", join(&self.period))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CfExpansion::finite(vec![]).is_err());
        assert!(CfExpansion::finite(vec![0, 0]).is_err());
        assert!(CfExpansion::periodic(vec![], vec![0]).is_err());
        assert!(CfExpansion::finite(vec![0, 3]).is_ok());
    }

    #[test]
    fn repeating_tail() {
        let cf = CfExpansion::with_repeating_tail(vec![0, 1, 2], 1).unwrap();
        assert_eq!(cf.terms().take(6).collect::<Vec<_>>(), [0, 1, 2, 2, 2, 2]);
        assert_eq!(cf.to_string(), "[0,1,(2)…]");
        assert!(CfExpansion::with_repeating_tail(vec![1], 2).is_err());
    }

    #[test]
    fn evaluation() {
        let v = CfExpansion::finite(vec![0, 2, 1, 2])
            .unwrap()
            .value()
            .unwrap();
        assert_eq!(v.to_string(), "3/8");
        assert!(CfExpansion::periodic(vec![0], vec![1])
            .unwrap()
            .value()
            .is_err());
    }
}
