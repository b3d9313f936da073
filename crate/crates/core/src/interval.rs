use crate::error::{Error, Result};

/// A subinterval `(lo, hi)` of `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        // Written so that NaN endpoints fail.
        if lo >= 0.0 && hi <= 1.0 && lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::Interval { lo, hi })
        }
    }

    /// `(0, t)` for `t ∈ (0, 1]`.
    pub fn initial(t: f64) -> Result<Self> {
        Self::new(0.0, t)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    /// Maps `x ∈ (0, 1)` to `lo + x·|I|`.
    pub fn pull_back(&self, x: f64) -> f64 {
        self.lo + x * self.len()
    }
}
