use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Exact rational value of a bound, always reduced with positive denominator.
/// Displays and serializes as `"p/q"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalBound(Ratio<i64>);

impl RationalBound {
    pub fn new(numer: i64, denom: i64) -> Self {
        RationalBound(Ratio::new(numer, denom))
    }

    pub fn from_integer(x: i64) -> Self {
        RationalBound(Ratio::from_integer(x))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn value(&self) -> Ratio<i64> {
        self.0
    }

    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    /// `size <= self`, exactly.
    pub fn admits(&self, size: usize) -> bool {
        Ratio::from_integer(size as i64) <= self.0
    }
}

impl From<Ratio<i64>> for RationalBound {
    fn from(r: Ratio<i64>) -> Self {
        RationalBound(r)
    }
}

impl fmt::Display for RationalBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational of the form p/q: {0:?}")]
pub struct ParseRationalError(pub String);

impl FromStr for RationalBound {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: i64 = p.parse().map_err(|_| err())?;
        let q: i64 = q.parse().map_err(|_| err())?;
        if q == 0 {
            return Err(err());
        }
        Ok(RationalBound::new(p, q))
    }
}

impl Serialize for RationalBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
