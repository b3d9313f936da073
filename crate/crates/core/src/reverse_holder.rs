//! Sharp reverse Hölder inequality for A₁ weights.
//!
//! For `[w]₁ = c` and `1 ≤ p < c/(c−1)`, every subinterval `I` satisfies
//!
//! ```text
//! (1/|I|) ∫_I w^p  ≤  K(c, p) · ((1/|I|) ∫_I w)^p,    K(c, p) = 1 / (c^{p−1} (c + p − pc)),
//! ```
//!
//! with equality for `g(t) = (1/c)·t^{1/c − 1}`. The checks here evaluate both
//! sides exactly for step weights and in closed form for power weights. The
//! integral identity used on the way (Hardy average against its `p`-th power) is
//! verified by quadrature.

use alloc::vec::Vec;

use crate::a1::{a1_constant, a1_constant_of, hardy_constant, power_a1_constant};
use crate::error::{Error, Result};
use crate::generators::SeededRng;
use crate::interval::Interval;
use crate::math::{abs, powf, relative_gap};
use crate::quadrature::{integrate, REFINE_TOL};
use crate::rearrange::rearrange_step;
use crate::weight::{LpIntegral, PowerWeight, StepWeight, Weight};

/// Verification refuses exponents this close to the critical one; `K(c, p)` has
/// a pole there.
pub const POLE_MARGIN: f64 = 1e-9;

/// Random non-aligned intervals sampled by the interval checks.
pub const SPOT_CHECKS: usize = 1000;

const SPOT_SEED: u64 = 0xA1_5EED;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalExponent {
    Finite(f64),
    /// Constant weights (`c = 1`) lie in every Lᵖ.
    Infinite,
}

impl CriticalExponent {
    pub fn value(self) -> f64 {
        match self {
            CriticalExponent::Finite(p) => p,
            CriticalExponent::Infinite => f64::INFINITY,
        }
    }
}

/// `c/(c − 1)`.
pub fn p_critical(c: f64) -> Result<CriticalExponent> {
    if !(c >= 1.0) || c.is_infinite() {
        return Err(Error::Parameter { name: "c", value: c });
    }
    Ok(if c == 1.0 { CriticalExponent::Infinite } else { CriticalExponent::Finite(c / (c - 1.0)) })
}

/// `K(c, p) = 1/(c^{p−1}(c + p − pc))`.
///
/// The factor `c + p(1 − c)` vanishes at the critical exponent; values within
/// about 1e−12 of the pole carry no reliable digits.
pub fn sharp_constant(c: f64, p: f64) -> Result<f64> {
    let critical = p_critical(c)?.value();
    let factor = c + p * (1.0 - c);
    if !(p >= 1.0) || factor <= 0.0 {
        return Err(Error::ExponentRange { p, critical });
    }
    Ok(1.0 / (powf(c, p - 1.0) * factor))
}

/// `(1 + c/(c−1))/2`, the exponent used by corpus checks; 2 when `c = 1`.
pub fn midpoint_exponent(c: f64) -> Result<f64> {
    Ok(match p_critical(c)? {
        CriticalExponent::Finite(pc) => 0.5 * (1.0 + pc),
        CriticalExponent::Infinite => 2.0,
    })
}

fn check_exponent(c: f64, p: f64) -> Result<f64> {
    let critical = p_critical(c)?.value();
    if !(p >= 1.0) || !(p < critical - POLE_MARGIN) {
        return Err(Error::ExponentRange { p, critical });
    }
    sharp_constant(c, p)
}

/// Worst ratio of the two sides of the sharp inequality over a family of intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RHReport {
    pub p: f64,
    pub c: f64,
    pub worst_ratio: f64,
    pub witness: Interval,
    /// Both sides at the witness.
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub intervals_checked: usize,
}

struct Worst {
    ratio: f64,
    witness: Interval,
    lhs: f64,
    rhs: f64,
    count: usize,
}

impl Worst {
    fn new() -> Self {
        Worst { ratio: 0.0, witness: Interval::UNIT, lhs: 0.0, rhs: 0.0, count: 0 }
    }

    fn offer(&mut self, lhs: f64, rhs: f64, witness: Interval) {
        self.count += 1;
        let ratio = lhs / rhs;
        if ratio > self.ratio {
            *self = Worst { ratio, witness, lhs, rhs, count: self.count };
        }
    }

    fn report(self, p: f64, c: f64, tol: f64) -> RHReport {
        RHReport {
            p,
            c,
            worst_ratio: self.ratio,
            witness: self.witness,
            lhs: self.lhs,
            rhs: self.rhs,
            holds: self.ratio <= 1.0 + tol,
            intervals_checked: self.count,
        }
    }
}

/// Both sides over every aligned interval `(t_i, t_j)`.
fn scan_aligned(w: &StepWeight, p: f64, k: f64, worst: &mut Worst) {
    let t = w.breakpoints();
    let values = w.values();
    let lengths = w.cell_lengths();
    let powered: Vec<f64> = values.iter().map(|&v| powf(v, p)).collect();
    for i in 0..values.len() {
        let (mut mass, mut mass_p, mut length) = (0.0, 0.0, 0.0);
        for j in i + 1..=values.len() {
            mass += values[j - 1] * lengths[j - 1];
            mass_p += powered[j - 1] * lengths[j - 1];
            length += lengths[j - 1];
            let witness = Interval::new(t[i], t[j]).expect("breakpoints are increasing");
            worst.offer(mass_p / length, k * powf(mass / length, p), witness);
        }
    }
}

fn spot_intervals(count: usize) -> impl Iterator<Item = Interval> {
    let mut rng = SeededRng::new(SPOT_SEED);
    core::iter::repeat_with(move || {
        let (x, y) = (rng.unit(), rng.unit());
        Interval::new(x.min(y), x.max(y)).ok()
    })
    .take(count)
    .flatten()
}

/// Checks the sharp inequality with `c = [w]₁` on every aligned subinterval and
/// on [`SPOT_CHECKS`] random ones.
pub fn verify_theorem2(w: &StepWeight, p: f64, tol: f64) -> Result<RHReport> {
    let c = a1_constant(w).constant;
    let k = check_exponent(c, p)?;
    let mut worst = Worst::new();
    scan_aligned(w, p, k, &mut worst);
    for i in spot_intervals(SPOT_CHECKS) {
        worst.offer(w.lp_integral(&i, p) / i.len(), k * powf(w.average(&i), p), i);
    }
    Ok(worst.report(p, c, tol))
}

/// The same check routed through the restriction argument: restrict `w` to each
/// aligned interval, pull it back to `(0, 1]`, rearrange, and compare the two
/// sides of the inequality for the rearranged weight at `δ = 1`. Rearrangement
/// and pullback preserve both sides, so the ratios agree with [`verify_theorem2`].
pub fn verify_theorem2_rearranged(w: &StepWeight, p: f64, tol: f64) -> Result<RHReport> {
    let c = a1_constant(w).constant;
    let k = check_exponent(c, p)?;
    let t = w.breakpoints();
    let mut worst = Worst::new();
    for i in 0..w.cell_count() {
        for j in i + 1..=w.cell_count() {
            let interval = Interval::new(t[i], t[j]).expect("breakpoints are increasing");
            let g = rearrange_step(&w.renormalize(&interval));
            let lhs = g.lp_integral(&Interval::UNIT, p);
            let rhs = k * powf(g.integral(&Interval::UNIT), p);
            worst.offer(lhs, rhs, interval);
        }
    }
    Ok(worst.report(p, c, tol))
}

/// Power weights: `c = 1/(1+α)`; the ratio is the same on every `(0, b)`.
pub fn verify_theorem2_power(g: &PowerWeight, p: f64, tol: f64) -> Result<RHReport> {
    let c = power_a1_constant(g);
    let k = check_exponent(c, p)?;
    let weight = Weight::Power(*g);
    let mut worst = Worst::new();
    for i in core::iter::once(Interval::UNIT).chain(spot_intervals(SPOT_CHECKS)) {
        let lhs = match weight.lp_integral(&i, p)? {
            LpIntegral::Finite(v) => v / i.len(),
            LpIntegral::Diverges => return Err(Error::Diverges),
        };
        worst.offer(lhs, k * powf(weight.average(&i), p), i);
    }
    Ok(worst.report(p, c, tol))
}

/// The two sides of the integral identity
///
/// ```text
/// ∫₀^δ A^p = −(1/(p−1)) (∫₀^δ g)^p / δ^{p−1} + (p/(p−1)) ∫₀^δ A^{p−1} g,   A(t) = (1/t)∫₀ᵗ g,
/// ```
/// for a non-increasing `g`, with their relative residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma1Report {
    pub delta: f64,
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Quadrature subcells used over both sides; zero for closed forms.
    pub quadrature_cells: usize,
}

fn check_lemma1_args(g: &Weight, p: f64, delta: f64) -> Result<()> {
    if !(p > 1.0) || p.is_infinite() {
        return Err(Error::Parameter { name: "p", value: p });
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Parameter { name: "delta", value: delta });
    }
    if let Weight::Step(s) = g {
        if let Some(index) = s.first_increase() {
            return Err(Error::NotNonIncreasing { index });
        }
    }
    Ok(())
}

/// `∫₀^δ A(t)^{p−e} g(t)^e dt` for `e ∈ {0, 1}` by per-cell quadrature.
///
/// On cell `k` (`k ≥ 1`) the Hardy average is `(C_k + v_k (t − t_k))/t`, smooth
/// and bounded by `v₀`; on the first cell it is the constant `v₀`.
fn step_hardy_moment(g: &StepWeight, p: f64, delta: f64, with_weight: bool) -> (f64, usize) {
    let t = g.breakpoints();
    let values = g.values();
    let mut total = 0.0;
    let mut cells = 0;
    let mut prefix = 0.0;
    for (k, &v) in values.iter().enumerate() {
        if t[k] >= delta {
            break;
        }
        let (lo, hi) = (t[k], t[k + 1].min(delta));
        if k == 0 {
            total += powf(v, p) * hi;
        } else {
            let exponent = if with_weight { p - 1.0 } else { p };
            let factor = if with_weight { v } else { 1.0 };
            let q = integrate(|s| factor * powf((prefix + v * (s - lo)) / s, exponent), lo, hi, REFINE_TOL);
            total += q.value;
            cells += q.subcells;
        }
        prefix += v * (t[k + 1] - lo);
    }
    (total, cells)
}

fn lemma1_sides(g: &Weight, p: f64, delta: f64) -> Result<(LpIntegral, LpIntegral, usize)> {
    check_lemma1_args(g, p, delta)?;
    let mass = g.integral(&Interval::initial(delta)?);
    let boundary = -powf(mass, p) / powf(delta, p - 1.0) / (p - 1.0);
    match g {
        Weight::Step(s) => {
            let (lhs, lhs_cells) = step_hardy_moment(s, p, delta, false);
            let (moment, rhs_cells) = step_hardy_moment(s, p, delta, true);
            let rhs = boundary + p / (p - 1.0) * moment;
            Ok((LpIntegral::Finite(lhs), LpIntegral::Finite(rhs), lhs_cells + rhs_cells))
        }
        Weight::Power(w) => {
            // A(t) = m·t^α with m = a/(α+1).
            let (a, alpha) = (w.coefficient(), w.exponent());
            let m = a / (alpha + 1.0);
            let beta = p * alpha + 1.0;
            if beta <= 0.0 {
                return Ok((LpIntegral::Diverges, LpIntegral::Diverges, 0));
            }
            let lhs = powf(m, p) * powf(delta, beta) / beta;
            let moment = powf(m, p - 1.0) * a * powf(delta, beta) / beta;
            let rhs = boundary + p / (p - 1.0) * moment;
            Ok((LpIntegral::Finite(lhs), LpIntegral::Finite(rhs), 0))
        }
    }
}

/// `∫₀^δ ((1/t)∫₀ᵗ g)^p dt`.
pub fn lemma1_lhs(g: &Weight, p: f64, delta: f64) -> Result<LpIntegral> {
    lemma1_sides(g, p, delta).map(|s| s.0)
}

/// `−(1/(p−1)) (∫₀^δ g)^p δ^{1−p} + (p/(p−1)) ∫₀^δ ((1/t)∫₀ᵗ g)^{p−1} g(t) dt`.
pub fn lemma1_rhs(g: &Weight, p: f64, delta: f64) -> Result<LpIntegral> {
    lemma1_sides(g, p, delta).map(|s| s.1)
}

pub fn lemma1_residual(g: &Weight, p: f64, delta: f64) -> Result<Lemma1Report> {
    match lemma1_sides(g, p, delta)? {
        (LpIntegral::Finite(lhs), LpIntegral::Finite(rhs), quadrature_cells) => {
            Ok(Lemma1Report { delta, p, lhs, rhs, residual: relative_gap(lhs, rhs), quadrature_cells })
        }
        _ => Err(Error::Diverges),
    }
}

/// `h_y(x) = x^{p−1}·y − ((p−1)/p)·x^p`.
pub fn hy(x: f64, y: f64, p: f64) -> f64 {
    powf(x, p - 1.0) * y - (p - 1.0) / p * powf(x, p)
}

/// Checks that `h_y` decreases on `[y, c·y]` on a uniform grid of `samples` points,
/// both by successive differences and by the sign of `(p−1)x^{p−2}(y−x)`.
///
/// Near `x = y` the derivative vanishes, so successive values may tie up to
/// rounding; the difference check allows `1e−12` relative to `max(1, |h_y|)`.
pub fn verify_hy_monotone(y: f64, c: f64, p: f64, samples: usize) -> Result<bool> {
    if !(y > 0.0) {
        return Err(Error::Parameter { name: "y", value: y });
    }
    p_critical(c)?;
    if !(p > 1.0) {
        return Err(Error::Parameter { name: "p", value: p });
    }
    if samples < 2 {
        return Err(Error::Parameter { name: "samples", value: samples as f64 });
    }
    let span = c * y - y;
    let grid: Vec<f64> = (0..samples).map(|i| y + span * i as f64 / (samples - 1) as f64).collect();
    let derivative_ok = grid.iter().all(|&x| (p - 1.0) * powf(x, p - 2.0) * (y - x) <= 0.0);
    let differences_ok = grid.windows(2).all(|pair| {
        let (h0, h1) = (hy(pair[0], y, p), hy(pair[1], y, p));
        h1 <= h0 + 1e-12 * abs(h0).max(1.0)
    });
    Ok(derivative_ok && differences_ok)
}

/// The sharp inequality for a non-increasing `g` on the initial intervals `(0, δ)`,
/// with `c` the Hardy constant of `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Report {
    pub p: f64,
    pub c: f64,
    pub worst_ratio: f64,
    pub witness_delta: f64,
    pub holds: bool,
}

/// Evaluates both sides at every breakpoint and at `delta`.
pub fn verify_lemma2(g: &StepWeight, p: f64, delta: f64, tol: f64) -> Result<Lemma2Report> {
    let c = hardy_constant(g, true)?.constant;
    let k = check_exponent(c, p)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Parameter { name: "delta", value: delta });
    }
    let mut report = Lemma2Report { p, c, worst_ratio: 0.0, witness_delta: delta, holds: true };
    for &d in g.breakpoints()[1..].iter().chain(core::iter::once(&delta)) {
        let i = Interval::initial(d)?;
        let ratio = g.lp_integral(&i, p) / d / (k * powf(g.average(&i), p));
        if ratio > report.worst_ratio {
            report.worst_ratio = ratio;
            report.witness_delta = d;
        }
    }
    report.holds = report.worst_ratio <= 1.0 + tol;
    Ok(report)
}

/// `g(t) = (1/c)·t^{1/c − 1}`; the constant 1 when `c = 1`.
pub fn extremal_weight(c: f64) -> Result<PowerWeight> {
    p_critical(c)?;
    Ok(PowerWeight::new(1.0 / c, 1.0 / c - 1.0)?)
}

/// `(∫₀¹ g^p, K(c,p)·(∫₀¹ g)^p)` for the extremal weight.
pub fn sharpness_sides(c: f64, p: f64) -> Result<(f64, f64)> {
    let k = sharp_constant(c, p)?;
    let g = Weight::Power(extremal_weight(c)?);
    let lhs = g.lp_integral(&Interval::UNIT, p)?.finite().ok_or(Error::Diverges)?;
    Ok((lhs, k * powf(g.integral(&Interval::UNIT), p)))
}

/// `|lhs/rhs − 1|` for the extremal weight; zero up to rounding.
pub fn sharpness_gap(c: f64, p: f64) -> Result<f64> {
    let (lhs, rhs) = sharpness_sides(c, p)?;
    Ok(abs(lhs / rhs - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub holds: bool,
}

/// Worst-interval sides of the sharp inequality on `points` exponents evenly
/// spaced in `(1, min(p_c − margin, p_cap)]`. Step weights use the worst aligned
/// interval, power weights the whole interval.
pub fn exponent_sweep(w: &Weight, points: usize, margin: f64, p_cap: f64, tol: f64) -> Result<Vec<SweepRow>> {
    if points == 0 {
        return Err(Error::Parameter { name: "points", value: 0.0 });
    }
    let c = a1_constant_of(w);
    let upper = (p_critical(c)?.value() - margin).min(p_cap);
    if !(upper > 1.0) {
        return Err(Error::Parameter { name: "margin", value: margin });
    }
    (1..=points)
        .map(|step| {
            let p = 1.0 + (upper - 1.0) * step as f64 / points as f64;
            let k = sharp_constant(c, p)?;
            let (lhs, rhs) = match w {
                Weight::Step(s) => {
                    let mut worst = Worst::new();
                    scan_aligned(s, p, k, &mut worst);
                    (worst.lhs, worst.rhs)
                }
                Weight::Power(_) => {
                    let lhs = w.lp_integral(&Interval::UNIT, p)?.finite().ok_or(Error::Diverges)?;
                    (lhs, k * powf(w.integral(&Interval::UNIT), p))
                }
            };
            let ratio = lhs / rhs;
            Ok(SweepRow { p, lhs, rhs, ratio, holds: ratio <= 1.0 + tol })
        })
        .collect()
}
