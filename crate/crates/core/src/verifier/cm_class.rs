use serde::Serialize;

use super::{Result, VerifyError};
use crate::catalog::{CatalogFunction, CmClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SignIssue {
    WrongSign,
    NotStrict,
}

/// A grid point and order at which `(-1)^n f⁽ⁿ⁾(x)` broke the class condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SignFailure {
    pub x: f64,
    pub n: usize,
    pub signed_derivative: f64,
    pub issue: SignIssue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CmClassReport {
    pub function: CatalogFunction,
    pub cm_class: CmClass,
    pub strict: bool,
    pub max_order: usize,
    pub checked: usize,
    pub failures: Vec<SignFailure>,
}

impl CmClassReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `count` log-spaced points over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let step = (hi / lo).ln() / (count - 1) as f64;
            (0..count).map(|i| lo * (step * i as f64).exp()).collect()
        }
    }
}

/// Evaluates `s = (-1)^n f⁽ⁿ⁾(x)` for every grid point and `n = 1..=max_order`.
///
/// Completely increasing functions need `s ≤ 0`, completely decreasing ones
/// `s ≥ 0`, and constants `s = 0`. Strict entries must also have `s ≠ 0`,
/// so derivatives that underflow to zero are reported as non-strict.
pub fn check_cm_class(
    f: &CatalogFunction,
    grid: &[f64],
    max_order: usize,
    order_cap: usize,
) -> Result<CmClassReport> {
    if grid.is_empty() {
        return Err(VerifyError::EmptyGrid);
    }
    if let Some(&x) = grid.iter().find(|&&x| !(x.is_finite() && x > 0.0)) {
        return Err(VerifyError::BadGridPoint(x));
    }
    if max_order == 0 || max_order > order_cap {
        return Err(VerifyError::OrderOutOfRange {
            order: max_order,
            cap: order_cap,
        });
    }

    let class = f.cm_class();
    let strict = f.is_strict();
    let mut failures = Vec::new();
    for &x in grid {
        let jet = f.eval_jet(x, max_order)?;
        for n in 1..=max_order {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let s = sign * jet.derivative(n)?;
            let sign_ok = match class {
                CmClass::CompletelyIncreasing => s <= 0.0,
                CmClass::CompletelyDecreasing => s >= 0.0,
                CmClass::Both => s == 0.0,
            };
            let issue = if !sign_ok {
                Some(SignIssue::WrongSign)
            } else if strict && s == 0.0 {
                Some(SignIssue::NotStrict)
            } else {
                None
            };
            if let Some(issue) = issue {
                failures.push(SignFailure {
                    x,
                    n,
                    signed_derivative: s,
                    issue,
                });
            }
        }
    }

    Ok(CmClassReport {
        function: *f,
        cm_class: class,
        strict,
        max_order,
        checked: grid.len() * max_order,
        failures,
    })
}
