//! Step and power-law weights on `(0, 1]` and their exact integral calculus.

use alloc::vec::Vec;

use crate::error::{Error, Result, WeightError};
use crate::interval::Interval;
use crate::math::{ln, pow_diff, powf};

/// Value of an Lᵖ integral, which may be infinite for power weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LpIntegral {
    Finite(f64),
    Diverges,
}

impl LpIntegral {
    pub fn finite(self) -> Option<f64> {
        match self {
            LpIntegral::Finite(v) => Some(v),
            LpIntegral::Diverges => None,
        }
    }

    pub fn is_diverges(self) -> bool {
        matches!(self, LpIntegral::Diverges)
    }
}

/// A positive step function on `(0, 1]`.
///
/// Cell `k` is the half-open interval `(t_k, t_{k+1}]` carrying `values[k]`, so the
/// function is left-continuous. Cells are indexed from zero; breakpoint `k` is the
/// left end of cell `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepWeight {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl StepWeight {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self, WeightError> {
        if values.is_empty() {
            return Err(WeightError::NoCells);
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(WeightError::LengthMismatch { breakpoints: breakpoints.len(), values: values.len() });
        }
        let (first, last) = (breakpoints[0], breakpoints[breakpoints.len() - 1]);
        if first != 0.0 || last != 1.0 {
            return Err(WeightError::Endpoints { first, last });
        }
        for (index, pair) in breakpoints.windows(2).enumerate() {
            if !(pair[1] > pair[0]) {
                return Err(WeightError::NotIncreasing { index: index + 1, value: pair[1] });
            }
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(WeightError::NonPositiveValue { index, value });
            }
        }
        Ok(StepWeight { breakpoints, values })
    }

    pub fn constant(value: f64) -> Result<Self, WeightError> {
        Self::new(alloc::vec![0.0, 1.0], alloc::vec![value])
    }

    /// `n` cells of equal length.
    pub fn uniform(values: Vec<f64>) -> Result<Self, WeightError> {
        let n = values.len();
        if n == 0 {
            return Err(WeightError::NoCells);
        }
        let mut breakpoints: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
        breakpoints[n] = 1.0;
        Self::new(breakpoints, values)
    }

    /// Lays cells with the given (relative) lengths end to end from 0 and rescales
    /// them to fill `(0, 1]`. Cells whose length vanishes after rounding are dropped.
    pub fn from_cells(lengths: &[f64], values: &[f64]) -> Result<Self, WeightError> {
        if lengths.len() != values.len() {
            return Err(WeightError::LengthMismatch { breakpoints: lengths.len() + 1, values: values.len() });
        }
        let total: f64 = lengths.iter().sum();
        let mut breakpoints = alloc::vec![0.0];
        let mut kept = Vec::with_capacity(values.len());
        let mut running = 0.0;
        for (&len, &value) in lengths.iter().zip(values) {
            running += len;
            let t = (running / total).min(1.0);
            if t > *breakpoints.last().unwrap() {
                breakpoints.push(t);
                kept.push(value);
            }
        }
        if kept.is_empty() {
            return Err(WeightError::NoCells);
        }
        *breakpoints.last_mut().unwrap() = 1.0;
        Self::new(breakpoints, kept)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    pub fn cell_len(&self, k: usize) -> f64 {
        self.breakpoints[k + 1] - self.breakpoints[k]
    }

    pub fn cell_lengths(&self) -> Vec<f64> {
        self.breakpoints.windows(2).map(|p| p[1] - p[0]).collect()
    }

    /// `(lo, hi, value)` for every cell.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints.windows(2).zip(&self.values).map(|(p, &v)| (p[0], p[1], v))
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::MIN, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::MAX, f64::min)
    }

    /// Index of the cell containing `t ∈ (0, 1]`.
    pub fn cell_of(&self, t: f64) -> usize {
        let k = self.breakpoints.partition_point(|&b| b < t);
        k.clamp(1, self.values.len()) - 1
    }

    /// Value at `t ∈ (0, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        self.values[self.cell_of(t)]
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.first_increase().is_none()
    }

    /// First cell whose value exceeds its predecessor.
    pub fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|v| v[1] > v[0]).map(|k| k + 1)
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// Equal function with adjacent equal-valued cells merged.
    pub fn canonical(&self) -> StepWeight {
        let mut breakpoints = alloc::vec![0.0];
        let mut values: Vec<f64> = Vec::with_capacity(self.values.len());
        for (_, hi, v) in self.cells() {
            if values.last() == Some(&v) {
                *breakpoints.last_mut().unwrap() = hi;
            } else {
                values.push(v);
                breakpoints.push(hi);
            }
        }
        StepWeight { breakpoints, values }
    }

    /// Same function up to `tol` on breakpoint positions: the canonical forms carry
    /// identical values and breakpoints within `tol` of each other.
    pub fn approx_eq(&self, other: &StepWeight, tol: f64) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.values == b.values && a.breakpoints.iter().zip(&b.breakpoints).all(|(x, y)| crate::math::abs(x - y) <= tol)
    }

    pub fn scaled(&self, factor: f64) -> Result<StepWeight, WeightError> {
        Self::new(self.breakpoints.clone(), self.values.iter().map(|v| v * factor).collect())
    }

    /// Positive-length overlaps `(cell, overlap)` of the cells with `i`.
    fn overlaps<'a>(&'a self, i: &Interval) -> impl Iterator<Item = (usize, f64)> + 'a {
        let (lo, hi) = (i.lo(), i.hi());
        let start = self.breakpoints.partition_point(|&b| b <= lo).max(1) - 1;
        (start..self.values.len())
            .take_while(move |&k| self.breakpoints[k] < hi)
            .map(move |k| (k, self.breakpoints[k + 1].min(hi) - self.breakpoints[k].max(lo)))
            .filter(|&(_, len)| len > 0.0)
    }

    pub fn integral(&self, i: &Interval) -> f64 {
        self.overlaps(i).map(|(k, len)| self.values[k] * len).sum()
    }

    pub fn average(&self, i: &Interval) -> f64 {
        self.integral(i) / i.len()
    }

    pub fn ess_inf(&self, i: &Interval) -> f64 {
        self.overlaps(i).map(|(k, _)| self.values[k]).fold(f64::INFINITY, f64::min)
    }

    pub fn lp_integral(&self, i: &Interval, p: f64) -> f64 {
        self.overlaps(i).map(|(k, len)| powf(self.values[k], p) * len).sum()
    }

    /// The restriction to `i`, pulled back to `(0, 1]` by `x ↦ lo + x·|i|`.
    pub fn renormalize(&self, i: &Interval) -> StepWeight {
        let (lengths, values): (Vec<f64>, Vec<f64>) = self.overlaps(i).map(|(k, len)| (len, self.values[k])).unzip();
        StepWeight::from_cells(&lengths, &values).expect("positive overlaps form a valid weight").canonical()
    }
}

/// `a·t^α` on `(0, 1]` with `a > 0` and `α ∈ (−1, 0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerWeight {
    a: f64,
    alpha: f64,
}

impl PowerWeight {
    pub fn new(a: f64, alpha: f64) -> Result<Self, WeightError> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(WeightError::Coefficient(a));
        }
        if !(alpha > -1.0 && alpha <= 0.0) {
            return Err(WeightError::Exponent(alpha));
        }
        Ok(PowerWeight { a, alpha })
    }

    pub fn coefficient(&self) -> f64 {
        self.a
    }

    pub fn exponent(&self) -> f64 {
        self.alpha
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.a * powf(t, self.alpha)
    }

    pub fn integral(&self, i: &Interval) -> f64 {
        let beta = self.alpha + 1.0;
        self.a * pow_diff(i.hi(), i.lo(), beta) / beta
    }

    pub fn average(&self, i: &Interval) -> f64 {
        self.integral(i) / i.len()
    }

    /// The weight is non-increasing, so the infimum sits at the right end.
    pub fn ess_inf(&self, i: &Interval) -> f64 {
        self.eval(i.hi())
    }

    pub fn lp_integral(&self, i: &Interval, p: f64) -> LpIntegral {
        let beta = p * self.alpha + 1.0;
        let scale = powf(self.a, p);
        if beta > 0.0 {
            LpIntegral::Finite(scale * pow_diff(i.hi(), i.lo(), beta) / beta)
        } else if i.lo() == 0.0 {
            LpIntegral::Diverges
        } else if beta == 0.0 {
            LpIntegral::Finite(scale * ln(i.hi() / i.lo()))
        } else {
            // Both powers are finite away from 0; hi^β − lo^β < 0 and β < 0.
            LpIntegral::Finite(scale * pow_diff(i.hi(), i.lo(), beta) / beta)
        }
    }

    /// Pullback of the restriction to `(0, hi)`: `x ↦ a·(hi·x)^α`.
    pub fn renormalize(&self, i: &Interval) -> Result<PowerWeight> {
        if i.lo() != 0.0 {
            return Err(Error::Unsupported("power weights renormalize only on intervals (0, hi)"));
        }
        Ok(PowerWeight { a: self.a * powf(i.hi(), self.alpha), alpha: self.alpha })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    Step(StepWeight),
    Power(PowerWeight),
}

impl From<StepWeight> for Weight {
    fn from(w: StepWeight) -> Self {
        Weight::Step(w)
    }
}

impl From<PowerWeight> for Weight {
    fn from(w: PowerWeight) -> Self {
        Weight::Power(w)
    }
}

impl Weight {
    pub fn integral(&self, i: &Interval) -> f64 {
        match self {
            Weight::Step(w) => w.integral(i),
            Weight::Power(w) => w.integral(i),
        }
    }

    pub fn average(&self, i: &Interval) -> f64 {
        self.integral(i) / i.len()
    }

    pub fn ess_inf(&self, i: &Interval) -> f64 {
        match self {
            Weight::Step(w) => w.ess_inf(i),
            Weight::Power(w) => w.ess_inf(i),
        }
    }

    pub fn lp_integral(&self, i: &Interval, p: f64) -> Result<LpIntegral> {
        if !(p >= 1.0) {
            return Err(Error::Parameter { name: "p", value: p });
        }
        Ok(match self {
            Weight::Step(w) => LpIntegral::Finite(w.lp_integral(i, p)),
            Weight::Power(w) => w.lp_integral(i, p),
        })
    }

    pub fn renormalize(&self, i: &Interval) -> Result<Weight> {
        match self {
            Weight::Step(w) => Ok(Weight::Step(w.renormalize(i))),
            Weight::Power(w) => w.renormalize(i).map(Weight::Power),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Weight::Step(w) => w.eval(t),
            Weight::Power(w) => w.eval(t),
        }
    }

    pub fn is_nonincreasing(&self) -> bool {
        match self {
            Weight::Step(w) => w.is_nonincreasing(),
            Weight::Power(_) => true,
        }
    }

    pub fn as_step(&self) -> Option<&StepWeight> {
        match self {
            Weight::Step(w) => Some(w),
            Weight::Power(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn halves() -> StepWeight {
        StepWeight::new(vec![0.0, 0.5, 1.0], vec![2.0, 1.0]).unwrap()
    }

    fn c2_extremal() -> PowerWeight {
        PowerWeight::new(0.5, -0.5).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        crate::math::relative_gap(a, b) <= tol
    }

    #[test]
    fn validation_names_offending_cell() {
        assert_eq!(
            StepWeight::new(vec![0.0, 0.5, 1.0], vec![2.0, -1.0]),
            Err(WeightError::NonPositiveValue { index: 1, value: -1.0 })
        );
        assert_eq!(
            StepWeight::new(vec![0.0, 0.5, 0.5, 1.0], vec![1.0, 1.0, 1.0]),
            Err(WeightError::NotIncreasing { index: 2, value: 0.5 })
        );
        assert!(matches!(StepWeight::new(vec![0.1, 1.0], vec![1.0]), Err(WeightError::Endpoints { .. })));
        assert!(matches!(StepWeight::new(vec![0.0, 1.0], vec![1.0, 2.0]), Err(WeightError::LengthMismatch { .. })));
        assert!(PowerWeight::new(1.0, -1.0).is_err());
        assert!(PowerWeight::new(1.0, 0.1).is_err());
        assert!(PowerWeight::new(0.0, -0.5).is_err());
    }

    #[test]
    fn integral_examples() {
        let five = StepWeight::constant(5.0).unwrap();
        assert!(close(five.integral(&iv(0.2, 0.7)), 2.5, 1e-12));
        assert!(close(c2_extremal().integral(&Interval::UNIT), 1.0, 1e-15));
        assert!(close(halves().integral(&iv(0.25, 0.75)), 0.75, 1e-15));
    }

    #[test]
    fn average_examples() {
        let five = StepWeight::constant(5.0).unwrap();
        assert!(close(five.average(&iv(0.31, 0.32)), 5.0, 1e-12));
        assert!(close(halves().average(&Interval::UNIT), 1.5, 1e-15));
        assert!(close(c2_extremal().average(&iv(0.0, 0.25)), 2.0, 1e-15));
    }

    #[test]
    fn ess_inf_ignores_zero_length_touching() {
        let w = halves();
        assert_eq!(w.ess_inf(&iv(0.0, 0.5)), 2.0);
        assert_eq!(w.ess_inf(&iv(0.0, 0.5 + 1e-9)), 1.0);
        assert_eq!(w.ess_inf(&iv(0.5, 1.0)), 1.0);
        assert!(close(c2_extremal().ess_inf(&iv(0.0, 0.25)), 1.0, 1e-15));
    }

    #[test]
    fn lp_integral_examples() {
        let one = Weight::Step(StepWeight::constant(1.0).unwrap());
        assert_eq!(one.lp_integral(&Interval::UNIT, 7.0), Ok(LpIntegral::Finite(1.0)));

        let g = Weight::Power(c2_extremal());
        let v = g.lp_integral(&Interval::UNIT, 1.5).unwrap().finite().unwrap();
        assert!(close(v, core::f64::consts::SQRT_2, 1e-15));
        // (1/c^p)/(pα+1) with c = 2, p = 1.5, α = −1/2
        assert!(close(v, powf(0.5, 1.5) / 0.25, 1e-15));

        assert_eq!(g.lp_integral(&Interval::UNIT, 2.0), Ok(LpIntegral::Diverges));
        assert_eq!(g.lp_integral(&iv(0.0, 0.3), 3.0), Ok(LpIntegral::Diverges));
        // Away from the singularity the p·α = −1 case is a logarithm.
        let log_case = g.lp_integral(&iv(0.25, 1.0), 2.0).unwrap().finite().unwrap();
        assert!(close(log_case, 0.25 * ln(4.0), 1e-15));
        assert!(one.lp_integral(&Interval::UNIT, 0.5).is_err());
    }

    #[test]
    fn renormalize_examples() {
        let five = Weight::Step(StepWeight::constant(5.0).unwrap());
        assert_eq!(five.renormalize(&iv(0.3, 0.4)).unwrap(), five);

        assert_eq!(halves().renormalize(&iv(0.5, 1.0)), StepWeight::constant(1.0).unwrap());

        let w = StepWeight::new(vec![0.0, 0.25, 1.0], vec![4.0, 1.0]).unwrap();
        let r = w.renormalize(&iv(0.0, 0.5));
        assert_eq!(r, StepWeight::new(vec![0.0, 0.5, 1.0], vec![4.0, 1.0]).unwrap());

        let g = c2_extremal();
        assert!(matches!(g.renormalize(&iv(0.1, 0.5)), Err(Error::Unsupported(_))));
        let r = g.renormalize(&iv(0.0, 0.25)).unwrap();
        assert!(close(r.coefficient(), 1.0, 1e-15));
        assert_eq!(r.exponent(), -0.5);
    }

    #[test]
    fn canonical_merges_equal_neighbours() {
        let w = StepWeight::uniform(vec![3.0, 3.0, 1.0, 1.0]).unwrap();
        let c = w.canonical();
        assert_eq!(c.values(), &[3.0, 1.0]);
        assert_eq!(c.breakpoints(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn eval_is_left_continuous() {
        let w = halves();
        assert_eq!(w.eval(0.5), 2.0);
        assert_eq!(w.eval(0.5000001), 1.0);
        assert_eq!(w.eval(1.0), 1.0);
        assert_eq!(w.eval(1e-300), 2.0);
    }

    #[test]
    fn from_cells_drops_empty_cells() {
        let w = StepWeight::from_cells(&[1.0, 0.0, 3.0], &[1.0, 9.0, 2.0]).unwrap();
        assert_eq!(w.values(), &[1.0, 2.0]);
        assert_eq!(w.breakpoints(), &[0.0, 0.25, 1.0]);
    }
}
