// f64 transcendental functions are not in `core`; route them through libm.

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn expm1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `hi^β − lo^β` for `0 ≤ lo < hi`, without cancellation when `lo ≈ hi`.
pub(crate) fn pow_diff(hi: f64, lo: f64, beta: f64) -> f64 {
    if lo == 0.0 {
        return powf(hi, beta);
    }
    -powf(hi, beta) * expm1(beta * ln(lo / hi))
}

/// Relative difference `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_gap(a: f64, b: f64) -> f64 {
    let scale = abs(a).max(abs(b));
    if scale == 0.0 {
        0.0
    } else {
        abs(a - b) / scale
    }
}

#[cfg(test)]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
