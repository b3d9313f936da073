//! Computation with A₁ weights on the unit interval.
//!
//! Weights are either positive step functions on half-open cells `(t_{k-1}, t_k]`
//! ([`StepWeight`]) or power laws `a·t^α` with `α ∈ (−1, 0]` ([`PowerWeight`]).
//! Both admit exact integrals, averages and essential infima, which makes the
//! A₁ constant, the decreasing rearrangement and the sharp reverse Hölder
//! inequality computable without sampling error.
//!
//! The crate is `no_std` and only needs `alloc`; file formats and the command
//! line front end live in the `a1tk` crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is how NaN gets rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod a1;
pub mod error;
pub mod generators;
pub mod interval;
pub mod quadrature;
pub mod rearrange;
pub mod reverse_holder;
pub mod weight;

mod math;

pub use a1::{a1_constant, a1_constant_bruteforce, hardy_average, hardy_constant, A1Report, HardyReport};
pub use error::{Error, Result, WeightError};
pub use interval::Interval;
pub use rearrange::{decreasing_rearrangement, distribution, is_equimeasurable};
pub use reverse_holder::{p_critical, sharp_constant, CriticalExponent, RHReport};
pub use weight::{LpIntegral, PowerWeight, StepWeight, Weight};
