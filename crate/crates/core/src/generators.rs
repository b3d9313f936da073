//! Seeded corpora of step weights.
//!
//! All randomness comes from xoshiro256++ seeded through SplitMix64
//! ([`Xoshiro256PlusPlus::seed_from_u64`]). Raw 64-bit outputs are turned into
//! numbers by fixed rules so that corpora reproduce on any platform:
//!
//! * unit float: `(x >> 11) · 2⁻⁵³`, in `[0, 1)`;
//! * open unit float: `((x >> 11) + ½) · 2⁻⁵³`, in `(0, 1)`;
//! * index below `m`: `(x · m) >> 64` on 128-bit integers.

use alloc::vec::Vec;

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::math::{exp, ln, pow_diff, powf};
use crate::weight::StepWeight;

/// Lower guard on sampled values in [`gen_nonincreasing_hardy`].
pub const VALUE_FLOOR: f64 = 1e-300;

/// Truncation point used by [`GenKind::ExtremalDiscretized`].
pub const DEFAULT_TRUNCATION: f64 = 1e-6;

const UNIT: f64 = 1.0 / (1u64 << 53) as f64;

#[derive(Debug, Clone)]
pub struct SeededRng(Xoshiro256PlusPlus);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * UNIT
    }

    /// Uniform in `(0, 1)`.
    pub fn open_unit(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * UNIT
    }

    pub fn below(&mut self, m: usize) -> usize {
        ((self.next_u64() as u128 * m as u128) >> 64) as usize
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Log-uniform in `[lo, hi]` for `0 < lo ≤ hi`.
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        (lo * exp(self.unit() * ln(hi / lo))).clamp(lo, hi)
    }

    /// Exponential(1) variates normalised to sum to one.
    fn dirichlet(&mut self, n: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..n).map(|_| -ln(self.open_unit())).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    BoundedRatio,
    NonincreasingHardy,
    Shuffle,
    ExtremalDiscretized,
}

impl GenKind {
    pub const ALL: [GenKind; 4] =
        [GenKind::BoundedRatio, GenKind::NonincreasingHardy, GenKind::Shuffle, GenKind::ExtremalDiscretized];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::BoundedRatio => "bounded_ratio",
            GenKind::NonincreasingHardy => "nonincreasing_hardy",
            GenKind::Shuffle => "shuffle",
            GenKind::ExtremalDiscretized => "extremal_discretized",
        }
    }

    pub fn from_name(name: &str) -> Option<GenKind> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Recipe for one generated weight.
///
/// `parameter` is the ratio bound `R` for `bounded_ratio`, the Hardy target `c`
/// for `nonincreasing_hardy` and `shuffle`, and the extremal `c` for
/// `extremal_discretized` (truncated at [`DEFAULT_TRUNCATION`]; `seed` unused).
/// `shuffle` permutes the cells of the matching `nonincreasing_hardy` weight, so
/// its rearrangement is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub parameter: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn generate(&self) -> Result<StepWeight> {
        match self.kind {
            GenKind::BoundedRatio => gen_bounded_ratio(self.n, self.parameter, self.seed),
            GenKind::NonincreasingHardy => gen_nonincreasing_hardy(self.n, self.parameter, self.seed),
            GenKind::Shuffle => {
                let g = gen_nonincreasing_hardy(self.n, self.parameter, self.seed)?;
                Ok(shuffle_cells(&g, self.seed.wrapping_add(1)))
            }
            GenKind::ExtremalDiscretized => discretize_extremal(self.parameter, self.n, DEFAULT_TRUNCATION),
        }
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter { name: "n", value: 0.0 });
    }
    Ok(())
}

fn check_at_least_one(name: &'static str, value: f64) -> Result<()> {
    if !(value >= 1.0 && value.is_finite()) {
        return Err(Error::Parameter { name, value });
    }
    Ok(())
}

/// `n` cells with Dirichlet lengths and log-uniform values in `[1, R]`.
///
/// Any average is at most the largest value and any essential infimum at least
/// the smallest, so the A₁ constant is at most `R`.
pub fn gen_bounded_ratio(n: usize, ratio: f64, seed: u64) -> Result<StepWeight> {
    check_count(n)?;
    check_at_least_one("R", ratio)?;
    let mut rng = SeededRng::new(seed);
    let lengths = rng.dirichlet(n);
    let values: Vec<f64> = (0..n).map(|_| rng.log_uniform(1.0, ratio)).collect();
    Ok(StepWeight::from_cells(&lengths, &values)?)
}

/// Non-increasing weight with Hardy constant at most `c`.
///
/// Cells are built left to right. With `A` the running average up to the current
/// cell, the next value is drawn log-uniformly from `[A/c, v_prev]`; that window
/// is non-empty because every earlier draw kept `A ≤ c·v_prev`.
pub fn gen_nonincreasing_hardy(n: usize, c: f64, seed: u64) -> Result<StepWeight> {
    check_count(n)?;
    check_at_least_one("c", c)?;
    let mut rng = SeededRng::new(seed);
    let lengths = rng.dirichlet(n);
    let first = rng.log_uniform(1.0, 10.0);
    if c == 1.0 {
        return Ok(StepWeight::from_cells(&lengths, &alloc::vec![first; n])?);
    }
    let mut values = Vec::with_capacity(n);
    values.push(first);
    let (mut mass, mut length) = (first * lengths[0], lengths[0]);
    for &len in &lengths[1..] {
        let previous = *values.last().unwrap();
        let lo = (mass / length / c).min(previous).max(VALUE_FLOOR);
        let v = rng.log_uniform(lo, previous.max(lo));
        values.push(v);
        mass += v * len;
        length += len;
    }
    Ok(StepWeight::from_cells(&lengths, &values)?)
}

/// Seeded Fisher–Yates permutation of the `(length, value)` cells, re-laid from 0.
pub fn shuffle_cells(w: &StepWeight, seed: u64) -> StepWeight {
    let mut cells: Vec<(f64, f64)> = w.cell_lengths().into_iter().zip(w.values().iter().copied()).collect();
    let mut rng = SeededRng::new(seed);
    for i in (1..cells.len()).rev() {
        let j = rng.below(i + 1);
        cells.swap(i, j);
    }
    let (lengths, values): (Vec<f64>, Vec<f64>) = cells.into_iter().unzip();
    StepWeight::from_cells(&lengths, &values).expect("a permutation of valid cells is valid")
}

/// Cell averages of `g(t) = (1/c)·t^{1/c − 1}` on `(0, t0]` followed by `n`
/// geometric cells `(t0^{1−(k−1)/n}, t0^{1−k/n}]`.
///
/// `∫₀ˢ g = s^{1/c}`, so every cell average is exact and the total mass is one.
pub fn discretize_extremal(c: f64, n: usize, t0: f64) -> Result<StepWeight> {
    check_count(n)?;
    check_at_least_one("c", c)?;
    if !(t0 > 0.0 && t0 < 1.0) {
        return Err(Error::Parameter { name: "t0", value: t0 });
    }
    let mut breakpoints = Vec::with_capacity(n + 2);
    breakpoints.push(0.0);
    breakpoints.extend((0..n).map(|k| exp((1.0 - k as f64 / n as f64) * ln(t0))));
    breakpoints.push(1.0);
    if c == 1.0 {
        return Ok(StepWeight::new(breakpoints, alloc::vec![1.0; n + 1])?);
    }
    let beta = 1.0 / c;
    let mut values = Vec::with_capacity(n + 1);
    values.push(powf(t0, beta) / t0);
    for pair in breakpoints[1..].windows(2) {
        let v: f64 = pow_diff(pair[1], pair[0], beta) / (pair[1] - pair[0]);
        // Rounding must not break monotonicity.
        values.push(v.min(*values.last().unwrap()));
    }
    Ok(StepWeight::new(breakpoints, values)?)
}

/// Ratios cycled through by [`bounded_ratio_corpus`].
pub const CORPUS_RATIOS: [f64; 3] = [1.5, 2.0, 8.0];

/// Weight `seed` of the standard corpus: `gen_bounded_ratio` with `n` in
/// `1..=max_cells` drawn from the seed and `R` cycling through [`CORPUS_RATIOS`].
pub fn corpus_weight(seed: u64, max_cells: usize) -> Result<StepWeight> {
    check_count(max_cells)?;
    let n = 1 + SeededRng::new(seed ^ 0xC0_4B05).below(max_cells);
    gen_bounded_ratio(n, CORPUS_RATIOS[(seed % 3) as usize], seed)
}

pub fn bounded_ratio_corpus(count: usize, max_cells: usize) -> Result<Vec<StepWeight>> {
    (0..count as u64).map(|seed| corpus_weight(seed, max_cells)).collect()
}
