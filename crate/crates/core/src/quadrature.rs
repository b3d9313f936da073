//! Composite 16-point Gauss–Legendre quadrature.

use crate::math::abs;

/// Positive nodes and weights of the 16-point Gauss–Legendre rule on [−1, 1].
#[allow(clippy::excessive_precision)]
const NODES_16: [(f64, f64); 8] = [
    (0.095012509837637440185, 0.18945061045506849629),
    (0.28160355077925891323, 0.18260341504492358887),
    (0.45801677765722738634, 0.16915651939500253819),
    (0.61787624440264374845, 0.14959598881657673208),
    (0.7554044083550030339, 0.12462897125553387205),
    (0.86563120238783174388, 0.09515851168249278481),
    (0.94457502307323257608, 0.062253523938647892863),
    (0.9894009349916499326, 0.027152459411754094852),
];

/// Refinement stops once successive levels agree to this relative tolerance.
pub const REFINE_TOL: f64 = 1e-10;

/// Subcell cap per integrated cell.
pub const MAX_SUBCELLS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// Subcells used at the accepted refinement level.
    pub subcells: usize,
    /// Whether the tolerance was met before hitting [`MAX_SUBCELLS`].
    pub converged: bool,
}

pub fn gauss_legendre_16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let sum: f64 = NODES_16.iter().map(|&(x, w)| w * (f(mid - half * x) + f(mid + half * x))).sum();
    half * sum
}

fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, parts: usize) -> f64 {
    let h = (b - a) / parts as f64;
    (0..parts)
        .map(|k| {
            let lo = a + h * k as f64;
            let hi = if k + 1 == parts { b } else { lo + h };
            gauss_legendre_16(f, lo, hi)
        })
        .sum()
}

/// Integrates `f` over `[a, b]`, halving every subcell until two successive
/// levels agree to `tol` relative.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quadrature {
    let mut parts = 1;
    let mut previous = composite(&f, a, b, parts);
    while parts < MAX_SUBCELLS {
        parts *= 2;
        let current = composite(&f, a, b, parts);
        if abs(current - previous) <= tol * abs(current) {
            return Quadrature { value: current, subcells: parts, converged: true };
        }
        previous = current;
    }
    Quadrature { value: previous, subcells: parts, converged: false }
}
