//! Decreasing rearrangement and distribution functions.
//!
//! For a step weight the rearrangement `φ*(t) = sup_{|e| ≥ t} inf_e φ` is obtained
//! by sorting cells by value, largest first, and laying them end to end from 0.
//! Outputs are canonical: adjacent cells with equal values are merged, so two
//! weights that agree almost everywhere compare equal.

use alloc::vec::Vec;

use crate::math::{abs, powf};
use crate::weight::{StepWeight, Weight};

/// Absolute tolerance on distribution values in [`is_equimeasurable`].
pub const EQUIMEASURABLE_TOL: f64 = 1e-12;

/// A sample `(λ, |{w > λ}|)` of the distribution function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionPoint {
    pub lambda: f64,
    pub measure: f64,
}

pub fn rearrange_step(w: &StepWeight) -> StepWeight {
    let mut cells: Vec<(f64, f64)> = w.cell_lengths().into_iter().zip(w.values().iter().copied()).collect();
    cells.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (lengths, values): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
    StepWeight::from_cells(&lengths, &values).expect("a permutation of valid cells is valid").canonical()
}

/// Power weights are already non-increasing and are returned unchanged.
pub fn decreasing_rearrangement(w: &Weight) -> Weight {
    match w {
        Weight::Step(s) => Weight::Step(rearrange_step(s)),
        Weight::Power(_) => w.clone(),
    }
}

/// `|{t ∈ (0, 1) : w(t) > λ}|`.
pub fn distribution(w: &Weight, lambda: f64) -> f64 {
    match w {
        Weight::Step(s) => s.cells().filter(|&(_, _, v)| v > lambda).map(|(lo, hi, _)| hi - lo).sum(),
        Weight::Power(g) => {
            let (a, alpha) = (g.coefficient(), g.exponent());
            if alpha == 0.0 {
                if a > lambda {
                    1.0
                } else {
                    0.0
                }
            } else {
                // a·t^α > λ  ⇔  t < (λ/a)^{1/α}
                powf(lambda / a, 1.0 / alpha).min(1.0)
            }
        }
    }
}

pub fn distribution_points(w: &Weight, levels: &[f64]) -> Vec<DistributionPoint> {
    levels.iter().map(|&lambda| DistributionPoint { lambda, measure: distribution(w, lambda) }).collect()
}

/// Sorted distinct cell values of both weights; power weights contribute nothing.
///
/// Distribution functions of step weights are constant between consecutive values,
/// so comparing them on this set decides equimeasurability exactly.
pub fn value_levels(a: &Weight, b: &Weight) -> Vec<f64> {
    let mut levels: Vec<f64> =
        [a, b].into_iter().filter_map(Weight::as_step).flat_map(|s| s.values().iter().copied()).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
}

pub fn is_equimeasurable(a: &Weight, b: &Weight, levels: &[f64]) -> bool {
    levels.iter().all(|&lambda| abs(distribution(a, lambda) - distribution(b, lambda)) <= EQUIMEASURABLE_TOL)
}
