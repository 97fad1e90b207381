//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! Nodes cluster doubly exponentially at both endpoints, which makes the rule
//! insensitive to integrable algebraic endpoint singularities. Node
//! positions near an endpoint are computed from their distance to it, so
//! the integrand is never evaluated on the endpoint itself. For an inverse
//! square-root endpoint singularity the attainable accuracy is about `1e-8`,
//! set by how close to the endpoint a node can be represented.

use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Half-width of the truncated `t` interval.
const T_MAX: f64 = 3.2;

/// Integrate `f` over `(a, b)` refining the step until successive levels agree
/// to `tol` (relative to `max(1, |I|)`) or `max_level` halvings are used.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: usize,
) -> QuadratureEstimate {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut evaluations = 0;

    // contribution of the node pair at +-t, weight included
    let mut pair = |t: f64| -> f64 {
        let s = FRAC_PI_2 * t.sinh();
        let c = FRAC_PI_2 * t.cosh();
        let e = (2.0 * s.abs()).exp();
        // 1 - tanh|s| without cancellation
        let gap = half * 2.0 / (e + 1.0);
        let cosh_s = s.cosh();
        let w = half * c / (cosh_s * cosh_s);
        if t == 0.0 {
            evaluations += 1;
            return w * f(mid);
        }
        let mut acc = 0.0;
        for x in [a + gap, b - gap] {
            if x > a && x < b && w > 0.0 {
                evaluations += 1;
                acc += w * f(x);
            }
        }
        acc
    };

    let mut h = 1.0;
    let mut sum = pair(0.0);
    let mut j = 1;
    while j as f64 * h <= T_MAX {
        sum += pair(j as f64 * h);
        j += 1;
    }
    let mut value = h * sum;
    let mut error = f64::INFINITY;
    let mut converged = false;
    for level in 1..=max_level {
        h *= 0.5;
        let mut j = 1;
        while j as f64 * h <= T_MAX {
            sum += pair(j as f64 * h);
            j += 2;
        }
        let next = h * sum;
        error = (next - value).abs();
        value = next;
        if level >= 3 && error <= tol * value.abs().max(1.0) {
            converged = true;
            break;
        }
    }
    QuadratureEstimate {
        value,
        error,
        evaluations,
        converged,
    }
}
