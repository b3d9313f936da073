//! A₁ constants of step weights and the Hardy averaging operator.
//!
//! The A₁ constant is `sup_I avg_I(w) / ess inf_I(w)` over all subintervals `I`.
//! For a step weight, fixing the set of touched cells fixes the essential infimum,
//! and the average is monotone in each endpoint while that endpoint stays inside
//! its cell. Suprema therefore sit at aligned intervals `(t_i, t_j)`, possibly
//! extended by a vanishing sliver into a neighbouring cell: the sliver leaves the
//! average unchanged in the limit but brings the neighbour's value into the
//! infimum. The scan below evaluates every aligned interval with both neighbours
//! folded into the minimum.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rearrange::rearrange_step;
use crate::weight::{PowerWeight, StepWeight, Weight};

/// Relative slack for comparisons between independently computed constants.
pub const CONSTANT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct A1Report {
    /// `[w]₁ ≥ 1`.
    pub constant: f64,
    /// The supremum is approached on `(t_lo, t_hi)` of the breakpoint sequence.
    pub witness_lo_index: usize,
    pub witness_hi_index: usize,
    /// The supremum is only reached in the limit by touching the cell left of
    /// `t_lo` (resp. right of `t_hi`) on a vanishing set.
    pub sliver_left: bool,
    pub sliver_right: bool,
}

impl A1Report {
    pub fn witness(&self, w: &StepWeight) -> Interval {
        let t = w.breakpoints();
        Interval::new(t[self.witness_lo_index], t[self.witness_hi_index]).expect("breakpoint pairs are valid intervals")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyReport {
    /// `sup_t A(t)/g(t) ≥ 1` where `A(t) = (1/t)∫₀ᵗ g`.
    pub constant: f64,
    /// Point at which the supremum is attained or approached from the right.
    pub witness_t: f64,
}

/// Outcome of comparing `[w*]₁` and the Hardy constant of `w*` with `[w]₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Report {
    pub a1_original: f64,
    pub a1_rearranged: f64,
    pub hardy_rearranged: f64,
    pub holds: bool,
}

pub fn a1_constant(w: &StepWeight) -> A1Report {
    a1_constant_windowed(w, w.cell_count())
}

/// [`a1_constant`] restricted to aligned intervals spanning at most `max_span`
/// cells. A lower bound on the constant for `max_span < n`, in O(n·max_span).
pub fn a1_constant_windowed(w: &StepWeight, max_span: usize) -> A1Report {
    let values = w.values();
    let lengths = w.cell_lengths();
    let n = values.len();
    let mut best =
        A1Report { constant: 1.0, witness_lo_index: 0, witness_hi_index: n, sliver_left: false, sliver_right: false };
    for i in 0..n {
        let left = if i > 0 { values[i - 1] } else { f64::INFINITY };
        let (mut mass, mut length) = (0.0, 0.0);
        let (mut inner_min, mut inner_max) = (f64::INFINITY, 0.0f64);
        for j in i + 1..=n.min(i + max_span.max(1)) {
            let v = values[j - 1];
            mass += v * lengths[j - 1];
            length += lengths[j - 1];
            inner_min = inner_min.min(v);
            inner_max = inner_max.max(v);
            let right = if j < n { values[j] } else { f64::INFINITY };
            let floor = inner_min.min(left).min(right);
            // A flat run has ratio exactly 1; the rounded quotient may not.
            let ratio = if inner_max == floor { 1.0 } else { mass / length / floor };
            // Strict comparison: ties keep the smallest left index, then right index.
            if ratio > best.constant {
                best = A1Report {
                    constant: ratio,
                    witness_lo_index: i,
                    witness_hi_index: j,
                    sliver_left: left < inner_min && left == floor,
                    sliver_right: right < inner_min && right == floor,
                };
            }
        }
    }
    best
}

/// Largest `avg/min` over aligned intervals alone, without neighbour slivers.
/// Only a lower bound for the A₁ constant.
pub fn aligned_only_ratio(w: &StepWeight) -> f64 {
    let values = w.values();
    let lengths = w.cell_lengths();
    let mut best: f64 = 1.0;
    for i in 0..values.len() {
        let (mut mass, mut length) = (0.0, 0.0);
        let (mut inner_min, mut inner_max) = (f64::INFINITY, 0.0f64);
        for j in i..values.len() {
            mass += values[j] * lengths[j];
            length += lengths[j];
            inner_min = inner_min.min(values[j]);
            inner_max = inner_max.max(values[j]);
            if inner_max > inner_min {
                best = best.max(mass / length / inner_min);
            }
        }
    }
    best
}

/// Closed form for power weights: the supremum is `1/(1+α)`, attained on every `(0, b)`.
pub fn power_a1_constant(g: &PowerWeight) -> f64 {
    1.0 / (1.0 + g.exponent())
}

pub fn a1_constant_of(w: &Weight) -> f64 {
    match w {
        Weight::Step(s) => a1_constant(s).constant,
        Weight::Power(g) => power_a1_constant(g),
    }
}

/// Grid oracle for [`a1_constant`].
///
/// Maximises `avg/ess inf` over every interval whose endpoints lie in the uniform
/// grid `{k/grid}`, the breakpoints, and each breakpoint `t_k` shifted both ways
/// by `min(|cell_{k−1}|, |cell_k|)/grid`. Every candidate is a genuine interval, so
/// the value stays below the supremum. A sliver of that width is at most `1/grid`
/// of any interval containing a whole cell next to `t_k`, so the shortfall is at
/// most `([w]₁ − 1)/grid`.
///
/// For a fixed left endpoint the touched cells and the essential infimum do not
/// change while the right endpoint moves inside one cell, and the average is a
/// linear-fractional function of it there. The maximum over the candidates in
/// that cell is then attained at its first or last candidate, which keeps the
/// scan at O(candidates × cells) while returning the full pairwise maximum.
pub fn a1_constant_bruteforce(w: &StepWeight, grid: usize) -> Result<f64> {
    if grid < 2 {
        return Err(Error::Parameter { name: "grid", value: grid as f64 });
    }
    let t = w.breakpoints();
    let values = w.values();
    let n = values.len();

    let mut points: Vec<f64> = (0..=grid).map(|k| k as f64 / grid as f64).collect();
    points.extend_from_slice(t);
    for k in 1..n {
        let shift = (t[k] - t[k - 1]).min(t[k + 1] - t[k]) / grid as f64;
        points.push(t[k] - shift);
        points.push(t[k] + shift);
    }
    points.retain(|&x| (0.0..=1.0).contains(&x));
    points.sort_by(f64::total_cmp);
    points.dedup();

    // Cell touched by a left endpoint x: t_k ≤ x < t_{k+1}.
    let left_cell = |x: f64| t.partition_point(|&b| b <= x).clamp(1, n) - 1;
    // Cell touched by a right endpoint x: t_k < x ≤ t_{k+1}.
    let right_cell = |x: f64| t.partition_point(|&b| b < x).clamp(1, n) - 1;

    // Candidate index range of right endpoints inside each cell.
    let mut first_in = alloc::vec![usize::MAX; n];
    let mut last_in = alloc::vec![0usize; n];
    for (idx, &x) in points.iter().enumerate().skip(1) {
        let k = right_cell(x);
        first_in[k] = first_in[k].min(idx);
        last_in[k] = idx;
    }

    let mut best: f64 = 1.0;
    for &a in &points[..points.len() - 1] {
        let ca = left_cell(a);
        let head = values[ca] * (t[ca + 1] - a);
        let mut middle = 0.0;
        let mut floor = values[ca];
        for k in ca + 1..n {
            floor = floor.min(values[k]);
            if first_in[k] != usize::MAX {
                for idx in [first_in[k], last_in[k]] {
                    let b = points[idx];
                    let mass = head + middle + values[k] * (b - t[k]);
                    best = best.max(mass / (b - a) / floor);
                }
            }
            middle += values[k] * (t[k + 1] - t[k]);
        }
    }
    Ok(best)
}

/// `(1/t)∫₀ᵗ g` for `t ∈ (0, 1]`.
pub fn hardy_average(g: &Weight, t: f64) -> Result<f64> {
    Ok(g.average(&Interval::initial(t)?))
}

/// `sup_{t ∈ (0,1]} A(t)/g(t)` with `A(t) = (1/t)∫₀ᵗ g`.
///
/// On cell `k` the weight is a constant `v` and `A'(t) = (v − A(t))/t`, so `A` is
/// monotone on the cell and the ratio is extremal at one of its ends. For
/// non-increasing `g`, `A` is non-increasing and the supremum over cell `k` is the
/// right limit `A(t_k)/v_k` at its left end. Without that requirement both ends of
/// every cell are examined, which is equally exact.
pub fn hardy_constant(g: &StepWeight, require_nonincreasing: bool) -> Result<HardyReport> {
    if require_nonincreasing {
        if let Some(index) = g.first_increase() {
            return Err(Error::NotNonIncreasing { index });
        }
    }
    let t = g.breakpoints();
    let values = g.values();
    let lengths = g.cell_lengths();
    let mut best = HardyReport { constant: 1.0, witness_t: t[1] };
    let (mut mass, mut length) = (values[0] * lengths[0], lengths[0]);
    for k in 1..values.len() {
        let v = values[k];
        let at_left = mass / length / v;
        if at_left > best.constant {
            best = HardyReport { constant: at_left, witness_t: t[k] };
        }
        mass += v * lengths[k];
        length += lengths[k];
        if !require_nonincreasing {
            let at_right = mass / length / v;
            if at_right > best.constant {
                best = HardyReport { constant: at_right, witness_t: t[k + 1] };
            }
        }
    }
    Ok(best)
}

/// Rearranging does not increase the A₁ constant, and `w*` satisfies the Hardy
/// inequality `(1/t)∫₀ᵗ w* ≤ [w]₁·w*(t)`.
pub fn verify_theorem1(w: &StepWeight) -> Theorem1Report {
    let a1_original = a1_constant(w).constant;
    let star = rearrange_step(w);
    let a1_rearranged = a1_constant(&star).constant;
    let hardy_rearranged = hardy_constant(&star, true).expect("rearrangements are non-increasing").constant;
    let bound = a1_original * (1.0 + CONSTANT_SLACK);
    Theorem1Report {
        a1_original,
        a1_rearranged,
        hardy_rearranged,
        holds: a1_rearranged <= bound && hardy_rearranged <= bound,
    }
}
