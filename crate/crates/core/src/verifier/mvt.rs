use serde::Serialize;

use super::{Result, VerifyError};
use crate::catalog::{CatalogFunction, CmClass};
use crate::divdiff::{dd_newton, NodeSet};
use crate::jet::factorial;

/// Maximum bisection steps; a monotone residual converges long before this.
pub const BISECTION_CAP: usize = 200;

const RESIDUAL_FACTOR: f64 = 1e-10;
const WIDTH_FACTOR: f64 = 1e-14;

/// Interior point where `f⁽ⁿ⁻¹⁾(x₀) / (n-1)!` equals the divided difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MvtWitness {
    pub x0: f64,
    /// `(n-1)! [x₁,…,xₙ; f]`, the value `f⁽ⁿ⁻¹⁾` must take at `x0`.
    pub target: f64,
    /// `|f⁽ⁿ⁻¹⁾(x0) − target|`.
    pub residual: f64,
    pub iterations: usize,
}

/// Locates the mean-value witness by bisection on
/// `g(x) = (-1)^(n-1) (f⁽ⁿ⁻¹⁾(x) − target)`, which is strictly monotone on
/// `[m, M]` for strictly completely monotone `f`.
pub fn find_mvt_witness(f: &CatalogFunction, nodes: &NodeSet) -> Result<MvtWitness> {
    if !f.is_strict() {
        return Err(VerifyError::NotStrict(f.to_string()));
    }
    let n = nodes.len();
    if n < 2 {
        return Err(VerifyError::TooFewNodes { need: 2, got: n });
    }
    nodes.require_positive()?;

    let k = n - 1;
    let values: Vec<f64> = nodes.as_slice().iter().map(|&x| f.value(x)).collect();
    let target = factorial(k) * dd_newton(nodes, &values)?.standard;
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let g = |x: f64| -> Result<f64> { Ok(sign * (f.derivative(x, k)? - target)) };
    // (-1)^(n-1) f⁽ⁿ⁻¹⁾ decreases for completely decreasing f and increases otherwise.
    let increasing = f.cm_class() == CmClass::CompletelyIncreasing;

    let (mut lo, mut hi) = (nodes.min(), nodes.max());
    let stop_width = WIDTH_FACTOR * (hi - lo);
    let mut iterations = 0;
    let mut x0 = 0.5 * (lo + hi);
    while iterations < BISECTION_CAP {
        iterations += 1;
        x0 = 0.5 * (lo + hi);
        let gx = g(x0)?;
        if gx == 0.0 {
            break;
        }
        // Root lies to the right when g is still on the "before" side.
        if (gx < 0.0) == increasing {
            lo = x0;
        } else {
            hi = x0;
        }
        if hi - lo <= stop_width {
            x0 = 0.5 * (lo + hi);
            break;
        }
    }

    let residual = (f.derivative(x0, k)? - target).abs();
    let tolerance = RESIDUAL_FACTOR * target.abs().max(1.0);
    if residual > tolerance || !(x0 > nodes.min() && x0 < nodes.max()) {
        return Err(VerifyError::WitnessUnreachable {
            residual,
            tolerance,
        });
    }
    Ok(MvtWitness {
        x0,
        target,
        residual,
        iterations,
    })
}
