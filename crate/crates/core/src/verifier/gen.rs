use serde::{Deserialize, Serialize};

use super::{Result, Verdict, VerifyError};
use crate::divdiff::{dd_lagrange, lagrange_terms, weights_a, NodeSet};

/// Violation threshold for the product inequality, in log space.
pub const GEN_TOLERANCE: f64 = 1e-10;
/// A zero node must reproduce equality to within this.
pub const EQUALITY_TOLERANCE: f64 = 1e-12;

/// Log-space evaluation of `∏(1+xᵢ)^{aᵢ} ≤ exp(∏xᵢ / n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenResult {
    pub nodes: Vec<f64>,
    /// `Σ aᵢ ln(1+xᵢ)`.
    pub lhs: f64,
    /// `∏xᵢ / n`.
    pub rhs: f64,
    /// `rhs − lhs`.
    pub margin: f64,
    pub equality_expected: bool,
    pub verdict: Verdict,
}

pub fn check_gen_inequality(nodes: &NodeSet) -> Result<GenResult> {
    check_gen_inequality_with(nodes, 0.0)
}

/// As [`check_gen_inequality`], with the right-hand side lowered by
/// `rhs_shift` for fault injection.
pub fn check_gen_inequality_with(nodes: &NodeSet, rhs_shift: f64) -> Result<GenResult> {
    let a = weights_a(nodes)?;
    let x = nodes.as_slice();
    let lhs: f64 = a.iter().zip(x).map(|(ai, xi)| ai * xi.ln_1p()).sum();
    let rhs = x.iter().product::<f64>() / x.len() as f64 - rhs_shift;
    let margin = rhs - lhs;
    let equality_expected = x.contains(&0.0);
    let verdict = if equality_expected {
        if margin.abs() <= EQUALITY_TOLERANCE {
            Verdict::Pass
        } else {
            Verdict::Violation
        }
    } else if margin < -GEN_TOLERANCE {
        Verdict::Violation
    } else if margin > 0.0 {
        Verdict::Pass
    } else {
        Verdict::PassNonstrict
    };
    Ok(GenResult {
        nodes: x.to_vec(),
        lhs,
        rhs,
        margin,
        equality_expected,
        verdict,
    })
}

/// Reversed-denominator sum of the constant function one, which vanishes for
/// every node set with at least two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullIdentity {
    pub residual: f64,
    /// Largest `|1 / ∏_{j≠i}(xⱼ − xᵢ)|`, the natural noise scale of `residual`.
    pub largest_summand: f64,
}

impl NullIdentity {
    /// Residual relative to the largest summand.
    pub fn relative(&self) -> f64 {
        self.residual.abs() / self.largest_summand
    }
}

pub fn check_null_identity(nodes: &NodeSet) -> Result<NullIdentity> {
    if nodes.len() < 2 {
        return Err(VerifyError::TooFewNodes {
            need: 2,
            got: nodes.len(),
        });
    }
    let ones = vec![1.0; nodes.len()];
    let residual = dd_lagrange(nodes, &ones)?.reversed;
    let largest_summand = lagrange_terms(nodes, &ones)?
        .into_iter()
        .fold(0.0f64, |acc, t| acc.max(t.abs()));
    Ok(NullIdentity {
        residual,
        largest_summand,
    })
}
