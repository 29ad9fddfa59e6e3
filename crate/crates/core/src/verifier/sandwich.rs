use serde::{Deserialize, Serialize};

use super::{Result, VerifyError};
use crate::catalog::{CatalogFunction, CmClass};
use crate::divdiff::{dd_newton, lagrange_terms, NodeSet};
use crate::extended::ExtendedReal;
use crate::jet::factorial;

/// Outcome of one bound check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Both margins are clear of rounding noise.
    Pass,
    /// Within tolerance, but at least one margin is not clearly positive.
    PassNonstrict,
    Violation,
}

impl Verdict {
    pub fn worst(self, other: Verdict) -> Verdict {
        self.max(other)
    }
}

/// Knobs for [`check_sandwich_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SandwichOptions {
    /// Fault injection: lowers the upper bound by this amount. Zero in
    /// normal operation.
    pub upper_shift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichResult {
    pub function: CatalogFunction,
    pub nodes: NodeSet,
    pub n: usize,
    pub a: f64,
    pub b: ExtendedReal,
    /// `Σ f(xᵢ) / ∏_{j≠i}(xⱼ − xᵢ)`.
    pub s_value: f64,
    pub lower: ExtendedReal,
    pub upper: ExtendedReal,
    pub margin_lower: ExtendedReal,
    pub margin_upper: ExtendedReal,
    /// Magnitude of the largest summand of the symmetric formula; rounding
    /// noise in `s_value` is proportional to it.
    pub noise_scale: f64,
    pub strict_expected: bool,
    pub verdict: Verdict,
}

impl SandwichResult {
    /// Smaller of the two margins.
    pub fn min_margin(&self) -> ExtendedReal {
        self.margin_lower.min(self.margin_upper)
    }
}

/// `tol = 1e-9 * max(1, |bound|)`; infinite bounds get the unit tolerance.
pub fn violation_tolerance(bound: ExtendedReal) -> f64 {
    1e-9 * bound.finite().map_or(1.0, |v| v.abs().max(1.0))
}

const STRICT_FACTOR: f64 = 1e-12;

/// `(-1)^(n-1) f⁽ⁿ⁻¹⁾(x) / (n-1)!` at `x ∈ {0} ∪ (0, ∞) ∪ {∞}`, using the
/// closed-form limits at the two ends and a jet in between.
pub fn bound_at(f: &CatalogFunction, x: ExtendedReal, n: usize) -> Result<ExtendedReal> {
    let k = n - 1;
    let derivative = match x {
        ExtendedReal::PosInfinity => f.limit_deriv_inf(k),
        ExtendedReal::Finite(0.0) => f.limit_deriv_zero(k),
        ExtendedReal::Finite(v) => ExtendedReal::Finite(f.derivative(v, k)?),
        ExtendedReal::NegInfinity => {
            return Err(VerifyError::LowerEndpoint {
                a: f64::NEG_INFINITY,
                m: 0.0,
            })
        }
    };
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    // Adding zero turns a sign-flipped exact zero limit into +0.
    Ok(match derivative.scale(sign / factorial(k)) {
        ExtendedReal::Finite(v) => ExtendedReal::Finite(v + 0.0),
        other => other,
    })
}

pub fn check_sandwich(
    f: &CatalogFunction,
    nodes: &NodeSet,
    a: f64,
    b: ExtendedReal,
) -> Result<SandwichResult> {
    check_sandwich_with(f, nodes, a, b, SandwichOptions::default())
}

/// Checks `B(a) ≤ S ≤ B(b)` for completely increasing `f` (reversed for
/// completely decreasing `f`), where `B(x) = (-1)^(n-1) f⁽ⁿ⁻¹⁾(x)/(n-1)!` and
/// `S` is the reversed-denominator sum over `nodes`.
///
/// Constants belong to both classes and are checked under both orientations;
/// the worse of the two is reported.
pub fn check_sandwich_with(
    f: &CatalogFunction,
    nodes: &NodeSet,
    a: f64,
    b: ExtendedReal,
    opts: SandwichOptions,
) -> Result<SandwichResult> {
    nodes.require_positive()?;
    let (m, big_m) = (nodes.min(), nodes.max());
    if !(a.is_finite() && (0.0..=m).contains(&a)) {
        return Err(VerifyError::LowerEndpoint { a, m });
    }
    if b < big_m {
        return Err(VerifyError::UpperEndpoint {
            b: b.to_string(),
            max: big_m,
        });
    }

    let n = nodes.len();
    let values: Vec<f64> = nodes.as_slice().iter().map(|&x| f.value(x)).collect();
    let s = dd_newton(nodes, &values)?.reversed;
    let noise_scale = lagrange_terms(nodes, &values)?
        .into_iter()
        .fold(0.0f64, |acc, t| acc.max(t.abs()));

    let at_a = bound_at(f, ExtendedReal::Finite(a), n)?;
    let at_b = bound_at(f, b, n)?;
    let orientations: &[(ExtendedReal, ExtendedReal)] = match f.cm_class() {
        CmClass::CompletelyIncreasing => &[(at_a, at_b)],
        CmClass::CompletelyDecreasing => &[(at_b, at_a)],
        CmClass::Both => &[(at_a, at_b), (at_b, at_a)],
    };

    let strict_floor = STRICT_FACTOR * noise_scale;
    let judged = orientations.iter().map(|&(lower, upper)| {
        let upper = upper.minus(opts.upper_shift);
        let margin_lower = lower.subtracted_from(s);
        let margin_upper = upper.minus(s);
        let verdict = if margin_lower < -violation_tolerance(lower)
            || margin_upper < -violation_tolerance(upper)
        {
            Verdict::Violation
        } else if margin_lower > strict_floor && margin_upper > strict_floor {
            Verdict::Pass
        } else {
            Verdict::PassNonstrict
        };
        (verdict, lower, upper, margin_lower, margin_upper)
    });
    let (verdict, lower, upper, margin_lower, margin_upper) = judged
        .max_by(|x, y| x.0.cmp(&y.0).then(y.3.min(y.4).cmp(&x.3.min(x.4))))
        .expect("at least one orientation");

    Ok(SandwichResult {
        function: *f,
        nodes: nodes.clone(),
        n,
        a,
        b,
        s_value: s,
        lower,
        upper,
        margin_lower,
        margin_upper,
        noise_scale,
        strict_expected: f.is_strict(),
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Params;
    use ExtendedReal::{Finite, PosInfinity};

    fn ns(v: &[f64]) -> NodeSet {
        NodeSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn exp_decay_two_nodes() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        let r = check_sandwich(&f, &ns(&[1.0, 2.0]), 0.0, PosInfinity).unwrap();
        let e = |x: f64| (-x).exp();
        assert!((r.s_value - (e(1.0) - e(2.0))).abs() < 1e-16);
        assert_eq!(r.lower, Finite(0.0));
        assert_eq!(r.upper, Finite(1.0));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn log1p_bound_is_one_over_n() {
        let f = CatalogFunction::log1p_over_x();
        for nodes in [&[0.5, 3.0][..], &[0.2, 1.0, 7.0], &[0.3, 0.9, 2.0, 11.0]] {
            let r = check_sandwich(&f, &ns(nodes), 0.0, PosInfinity).unwrap();
            assert_eq!(r.lower, Finite(0.0));
            assert_eq!(r.upper, Finite(1.0 / nodes.len() as f64));
            assert_eq!(r.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn moebius_three_nodes() {
        let f = CatalogFunction::moebius_ratio(1.0).unwrap();
        let r = check_sandwich(&f, &ns(&[1.0, 2.0, 4.0]), 0.0, PosInfinity).unwrap();
        // x/(1+x) at 1, 2, 4 over ∏(xⱼ − xᵢ): (1/2)/3 + (2/3)/(-2) + (4/5)/6
        let s = 0.5 / 3.0 - (2.0 / 3.0) / 2.0 + 0.8 / 6.0;
        assert!((r.s_value - s).abs() < 1e-15);
        assert!(-r.s_value > 0.0 && -r.s_value < 1.0);
        assert_eq!(r.lower, Finite(-1.0));
        assert_eq!(r.upper, Finite(0.0));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn interior_endpoints_and_touching_nodes() {
        let nodes = ns(&[0.7, 1.3, 2.9]);
        for f in CatalogFunction::all(Params::default()).unwrap() {
            for (a, b) in [(0.3, Finite(5.0)), (0.7, Finite(2.9)), (0.0, Finite(2.9))] {
                let r = check_sandwich(&f, &nodes, a, b).unwrap();
                let expected = if f.is_strict() {
                    Verdict::Pass
                } else {
                    Verdict::PassNonstrict
                };
                assert_eq!(r.verdict, expected, "{f} a={a} b={b}");
            }
        }
    }

    #[test]
    fn const_one_is_nonstrict() {
        let f = CatalogFunction::const_one();
        let r = check_sandwich(&f, &ns(&[1.0, 2.0, 4.0]), 0.0, PosInfinity).unwrap();
        assert_eq!((r.lower, r.upper), (Finite(0.0), Finite(0.0)));
        assert!(r.s_value.abs() < 1e-15);
        assert_eq!(r.verdict, Verdict::PassNonstrict);
        let single = check_sandwich(&f, &ns(&[3.0]), 1.0, PosInfinity).unwrap();
        assert_eq!(single.margin_lower, Finite(0.0));
        assert_eq!(single.verdict, Verdict::PassNonstrict);
    }

    #[test]
    fn endpoint_validation() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        let nodes = ns(&[1.0, 2.0]);
        assert!(matches!(
            check_sandwich(&f, &nodes, 1.5, PosInfinity),
            Err(VerifyError::LowerEndpoint { .. })
        ));
        assert!(matches!(
            check_sandwich(&f, &nodes, -0.1, PosInfinity),
            Err(VerifyError::LowerEndpoint { .. })
        ));
        assert!(matches!(
            check_sandwich(&f, &nodes, 0.0, Finite(1.5)),
            Err(VerifyError::UpperEndpoint { .. })
        ));
        assert!(check_sandwich(&f, &ns(&[0.0, 1.0]), 0.0, PosInfinity).is_err());
    }

    #[test]
    fn injected_shift_forces_violation() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        let opts = SandwichOptions { upper_shift: 2.0 };
        let r = check_sandwich_with(&f, &ns(&[1.0, 2.0]), 0.0, PosInfinity, opts).unwrap();
        assert_eq!(r.verdict, Verdict::Violation);
        assert_eq!(r.upper, Finite(-1.0));
    }

    #[test]
    fn zero_limits_have_positive_sign() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        for n in 1..6 {
            let b = bound_at(&f, PosInfinity, n).unwrap();
            assert!(b.finite().unwrap().is_sign_positive(), "n={n}");
        }
    }

    #[test]
    fn tolerance_scale() {
        assert_eq!(violation_tolerance(Finite(0.5)), 1e-9);
        assert!((violation_tolerance(Finite(-300.0)) - 3e-7).abs() < 1e-22);
        assert_eq!(violation_tolerance(PosInfinity), 1e-9);
    }
}
