use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// A weight description that violates the representation invariants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("a step weight needs at least one cell")]
    NoCells,
    #[error("{breakpoints} breakpoints cannot carry {values} values")]
    LengthMismatch { breakpoints: usize, values: usize },
    #[error("breakpoints must run from 0 to 1, got {first} .. {last}")]
    Endpoints { first: f64, last: f64 },
    #[error("breakpoints[{index}] = {value} does not exceed its predecessor")]
    NotIncreasing { index: usize, value: f64 },
    #[error("values[{index}] = {value} is not a positive finite number")]
    NonPositiveValue { index: usize, value: f64 },
    #[error("power coefficient a = {0} is not a positive finite number")]
    Coefficient(f64),
    #[error("power exponent alpha = {0} is outside (-1, 0]")]
    Exponent(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("({lo}, {hi}) is not a subinterval of (0, 1)")]
    Interval { lo: f64, hi: f64 },
    #[error("parameter {name} = {value} is out of its domain")]
    Parameter { name: &'static str, value: f64 },
    #[error("exponent p = {p} is outside [1, {critical}) (with the pole margin)")]
    ExponentRange { p: f64, critical: f64 },
    #[error("weight is not non-increasing at cell {index}")]
    NotNonIncreasing { index: usize },
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),
    #[error("integral diverges")]
    Diverges,
}
