//! Catalog of parameterized completely monotone functions.
//!
//! Each entry knows its monotonicity class, evaluates plain values and Taylor
//! jets on `(0, ∞)`, and gives closed forms for the one-sided derivative
//! limits `lim_{x→0⁺} f⁽ᵏ⁾(x)` and `lim_{x→∞} f⁽ᵏ⁾(x)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extended::ExtendedReal;
use crate::jet::{factorial, Jet, JetError};

/// Below this point `ln(1+x)/x` is expanded from its power series around the
/// origin instead of dividing the `ln_1p` jet by `x`.
///
/// The quotient recurrence amplifies rounding by roughly `x^-(k+1)` at order
/// `k`, the recentered series by `((1+x)/(1-x))^(k+1)`; the two cross near
/// `√2 - 1`.
pub const LOG1P_SERIES_THRESHOLD: f64 = 0.4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("parameter {name} must be a positive finite number, got {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error("log-ratio requires alpha < beta (got alpha = {alpha}, beta = {beta})")]
    AlphaNotBelowBeta { alpha: f64, beta: f64 },
    #[error("point {0} is outside (0, ∞)")]
    OutsideDomain(f64),
    #[error(transparent)]
    Jet(#[from] JetError),
}

/// Family identifier, without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionId {
    ConstOne,
    Log1pOverX,
    MoebiusRatio,
    LogRatio,
    ExpDecay,
    PowerDecay,
}

impl FunctionId {
    pub const ALL: [FunctionId; 6] = [
        FunctionId::ConstOne,
        FunctionId::Log1pOverX,
        FunctionId::MoebiusRatio,
        FunctionId::LogRatio,
        FunctionId::ExpDecay,
        FunctionId::PowerDecay,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ConstOne => "const-one",
            Self::Log1pOverX => "log1p-over-x",
            Self::MoebiusRatio => "moebius-ratio",
            Self::LogRatio => "log-ratio",
            Self::ExpDecay => "exp-decay",
            Self::PowerDecay => "power-decay",
        }
    }

    pub fn formula(self) -> &'static str {
        match self {
            Self::ConstOne => "1",
            Self::Log1pOverX => "ln(1+x)/x",
            Self::MoebiusRatio => "x/(alpha+x)",
            Self::LogRatio => "ln(beta*(x+alpha)/(alpha*(x+beta)))",
            Self::ExpDecay => "exp(-alpha*x)",
            Self::PowerDecay => "(alpha+beta*x)^(-gamma)",
        }
    }

    /// Parameter names with their admissible ranges.
    pub fn params_schema(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Self::ConstOne | Self::Log1pOverX => &[],
            Self::MoebiusRatio | Self::ExpDecay => &[("alpha", "(0, inf)")],
            Self::LogRatio => &[("alpha", "(0, beta)"), ("beta", "(0, inf)")],
            Self::PowerDecay => &[
                ("alpha", "(0, inf)"),
                ("beta", "(0, inf)"),
                ("gamma", "(0, inf)"),
            ],
        }
    }

    pub fn cm_class(self) -> CmClass {
        match self {
            Self::ConstOne => CmClass::Both,
            Self::MoebiusRatio | Self::LogRatio => CmClass::CompletelyIncreasing,
            Self::Log1pOverX | Self::ExpDecay | Self::PowerDecay => CmClass::CompletelyDecreasing,
        }
    }

    pub fn is_strict(self) -> bool {
        self != Self::ConstOne
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FunctionId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.replace('_', "-");
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| CatalogError::UnknownFunction(s.to_string()))
    }
}

/// Direction of complete monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmClass {
    /// `(-1)^n f⁽ⁿ⁾ ≤ 0` for all `n ≥ 1` (Bernstein functions).
    CompletelyIncreasing,
    /// `(-1)^n f⁽ⁿ⁾ ≥ 0` for all `n ≥ 1`.
    CompletelyDecreasing,
    /// Both at once; only constants.
    Both,
}

/// Raw parameter bag used to instantiate any family. Unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            beta: 2.0,
            gamma: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Family {
    ConstOne,
    Log1pOverX,
    MoebiusRatio { alpha: f64 },
    LogRatio { alpha: f64, beta: f64 },
    ExpDecay { alpha: f64 },
    PowerDecay { alpha: f64, beta: f64, gamma: f64 },
}

/// A catalog entry with validated parameters. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogFunction(Family);

fn positive(name: &'static str, value: f64) -> Result<f64, CatalogError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CatalogError::BadParameter { name, value })
    }
}

impl CatalogFunction {
    pub fn const_one() -> Self {
        Self(Family::ConstOne)
    }

    pub fn log1p_over_x() -> Self {
        Self(Family::Log1pOverX)
    }

    pub fn moebius_ratio(alpha: f64) -> Result<Self, CatalogError> {
        Ok(Self(Family::MoebiusRatio {
            alpha: positive("alpha", alpha)?,
        }))
    }

    pub fn log_ratio(alpha: f64, beta: f64) -> Result<Self, CatalogError> {
        let alpha = positive("alpha", alpha)?;
        let beta = positive("beta", beta)?;
        if alpha >= beta {
            return Err(CatalogError::AlphaNotBelowBeta { alpha, beta });
        }
        Ok(Self(Family::LogRatio { alpha, beta }))
    }

    pub fn exp_decay(alpha: f64) -> Result<Self, CatalogError> {
        Ok(Self(Family::ExpDecay {
            alpha: positive("alpha", alpha)?,
        }))
    }

    pub fn power_decay(alpha: f64, beta: f64, gamma: f64) -> Result<Self, CatalogError> {
        Ok(Self(Family::PowerDecay {
            alpha: positive("alpha", alpha)?,
            beta: positive("beta", beta)?,
            gamma: positive("gamma", gamma)?,
        }))
    }

    pub fn new(id: FunctionId, p: Params) -> Result<Self, CatalogError> {
        match id {
            FunctionId::ConstOne => Ok(Self::const_one()),
            FunctionId::Log1pOverX => Ok(Self::log1p_over_x()),
            FunctionId::MoebiusRatio => Self::moebius_ratio(p.alpha),
            FunctionId::LogRatio => Self::log_ratio(p.alpha, p.beta),
            FunctionId::ExpDecay => Self::exp_decay(p.alpha),
            FunctionId::PowerDecay => Self::power_decay(p.alpha, p.beta, p.gamma),
        }
    }

    /// Every family instantiated with the same parameter bag.
    pub fn all(p: Params) -> Result<Vec<Self>, CatalogError> {
        FunctionId::ALL
            .into_iter()
            .map(|id| Self::new(id, p))
            .collect()
    }

    pub fn id(&self) -> FunctionId {
        match self.0 {
            Family::ConstOne => FunctionId::ConstOne,
            Family::Log1pOverX => FunctionId::Log1pOverX,
            Family::MoebiusRatio { .. } => FunctionId::MoebiusRatio,
            Family::LogRatio { .. } => FunctionId::LogRatio,
            Family::ExpDecay { .. } => FunctionId::ExpDecay,
            Family::PowerDecay { .. } => FunctionId::PowerDecay,
        }
    }

    /// Named parameter values in schema order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self.0 {
            Family::ConstOne | Family::Log1pOverX => vec![],
            Family::MoebiusRatio { alpha } | Family::ExpDecay { alpha } => vec![("alpha", alpha)],
            Family::LogRatio { alpha, beta } => vec![("alpha", alpha), ("beta", beta)],
            Family::PowerDecay { alpha, beta, gamma } => {
                vec![("alpha", alpha), ("beta", beta), ("gamma", gamma)]
            }
        }
    }

    pub fn cm_class(&self) -> CmClass {
        self.id().cm_class()
    }

    pub fn is_strict(&self) -> bool {
        self.id().is_strict()
    }

    /// Plain `f64` evaluation, independent of the jet machinery.
    pub fn value(&self, x: f64) -> f64 {
        match self.0 {
            Family::ConstOne => 1.0,
            Family::Log1pOverX => x.ln_1p() / x,
            Family::MoebiusRatio { alpha } => x / (alpha + x),
            Family::LogRatio { alpha, beta } => (x / alpha).ln_1p() - (x / beta).ln_1p(),
            Family::ExpDecay { alpha } => (-alpha * x).exp(),
            Family::PowerDecay { alpha, beta, gamma } => (alpha + beta * x).powf(-gamma),
        }
    }

    /// Taylor jet of the function at `x`.
    pub fn eval_jet(&self, x: f64, order: usize) -> Result<Jet, CatalogError> {
        if !(x.is_finite() && x > 0.0) {
            return Err(CatalogError::OutsideDomain(x));
        }
        let t = Jet::var(x, order)?;
        let jet = match self.0 {
            Family::ConstOne => Jet::constant(x, order, 1.0)?,
            Family::Log1pOverX if x < LOG1P_SERIES_THRESHOLD => {
                // Σ (-1)^m t^m / (m+1); at x < 0.4 the tail past `terms` is below 1e-30.
                let terms = 96 + 4 * order;
                let poly: Vec<f64> = (0..terms)
                    .map(|m| {
                        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                        sign / (m + 1) as f64
                    })
                    .collect();
                t.compose_poly(&poly)?
            }
            Family::Log1pOverX => t.ln_1p()?.div(&t)?,
            Family::MoebiusRatio { alpha } => t.div(&t.add_const(alpha)?)?,
            Family::LogRatio { alpha, beta } => {
                let up = t.scale(1.0 / alpha)?.ln_1p()?;
                let down = t.scale(1.0 / beta)?.ln_1p()?;
                up.sub(&down)?
            }
            Family::ExpDecay { alpha } => t.scale(-alpha)?.exp()?,
            Family::PowerDecay { alpha, beta, gamma } => {
                t.scale(beta)?.add_const(alpha)?.powf(-gamma)?
            }
        };
        Ok(jet)
    }

    /// `f⁽ᵏ⁾(x)` through a jet of order `k`.
    pub fn derivative(&self, x: f64, k: usize) -> Result<f64, CatalogError> {
        Ok(self.eval_jet(x, k)?.derivative(k)?)
    }

    /// Closed form of `lim_{x→0⁺} f⁽ᵏ⁾(x)`.
    pub fn limit_deriv_zero(&self, k: usize) -> ExtendedReal {
        let kf = k as f64;
        let v = match self.0 {
            Family::ConstOne => unit_at_zero(k),
            // f = Σ (-1)^m x^m/(m+1), so f⁽ᵏ⁾(0) = (-1)^k k!/(k+1).
            Family::Log1pOverX => alt_sign(k) * factorial(k) / (kf + 1.0),
            Family::MoebiusRatio { alpha } => {
                if k == 0 {
                    0.0
                } else {
                    alt_sign(k + 1) * factorial(k) / alpha.powi(k as i32)
                }
            }
            Family::LogRatio { alpha, beta } => {
                if k == 0 {
                    0.0
                } else {
                    let ki = k as i32;
                    alt_sign(k + 1) * factorial(k - 1) * (alpha.powi(-ki) - beta.powi(-ki))
                }
            }
            Family::ExpDecay { alpha } => (-alpha).powi(k as i32),
            Family::PowerDecay { alpha, beta, gamma } => {
                beta.powi(k as i32) * binom_neg(gamma, k) * factorial(k) * alpha.powf(-gamma - kf)
            }
        };
        ExtendedReal::Finite(v)
    }

    /// Closed form of `lim_{x→∞} f⁽ᵏ⁾(x)`.
    pub fn limit_deriv_inf(&self, k: usize) -> ExtendedReal {
        let v = match self.0 {
            Family::ConstOne | Family::MoebiusRatio { .. } => unit_at_zero(k),
            Family::LogRatio { alpha, beta } if k == 0 => (beta / alpha).ln(),
            Family::Log1pOverX
            | Family::LogRatio { .. }
            | Family::ExpDecay { .. }
            | Family::PowerDecay { .. } => 0.0,
        };
        ExtendedReal::Finite(v)
    }
}

fn unit_at_zero(k: usize) -> f64 {
    if k == 0 {
        1.0
    } else {
        0.0
    }
}

fn alt_sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `binom(-γ, k) = ∏_{j<k} (-γ - j)/(j + 1)`.
pub fn binom_neg(gamma: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (-gamma - j as f64) / (j as f64 + 1.0))
}

impl fmt::Display for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())?;
        let params = self.params();
        if !params.is_empty() {
            let inner: Vec<String> = params.iter().map(|(n, v)| format!("{n}={v}")).collect();
            write!(f, "({})", inner.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for CatalogFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let params = self.params();
        let mut map = s.serialize_map(Some(1 + params.len()))?;
        map.serialize_entry("id", &self.id())?;
        for (name, value) in params {
            map.serialize_entry(name, &value)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CatalogFunction {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            id: FunctionId,
            alpha: Option<f64>,
            beta: Option<f64>,
            gamma: Option<f64>,
        }
        let raw = Raw::deserialize(d)?;
        let def = Params::default();
        let p = Params {
            alpha: raw.alpha.unwrap_or(def.alpha),
            beta: raw.beta.unwrap_or(def.beta),
            gamma: raw.gamma.unwrap_or(def.gamma),
        };
        CatalogFunction::new(raw.id, p).map_err(serde::de::Error::custom)
    }
}

/// One row of the machine-readable catalog listing.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatalogEntry {
    pub id: FunctionId,
    pub formula: String,
    pub params_schema: Vec<ParamSpec>,
    pub cm_class: CmClass,
    pub strict: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ParamSpec {
    pub name: String,
    pub domain: String,
}

pub fn listing() -> Vec<CatalogEntry> {
    FunctionId::ALL
        .into_iter()
        .map(|id| CatalogEntry {
            id,
            formula: id.formula().to_string(),
            params_schema: id
                .params_schema()
                .iter()
                .map(|(name, domain)| ParamSpec {
                    name: name.to_string(),
                    domain: domain.to_string(),
                })
                .collect(),
            cm_class: id.cm_class(),
            strict: id.is_strict(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn parameter_validation() {
        assert!(CatalogFunction::exp_decay(0.0).is_err());
        assert!(CatalogFunction::moebius_ratio(-1.0).is_err());
        assert!(CatalogFunction::power_decay(1.0, f64::NAN, 1.0).is_err());
        assert_eq!(
            CatalogFunction::log_ratio(2.0, 2.0),
            Err(CatalogError::AlphaNotBelowBeta {
                alpha: 2.0,
                beta: 2.0
            })
        );
        assert!(CatalogFunction::log_ratio(1.0, 2.0).is_ok());
    }

    #[test]
    fn classes() {
        use CmClass::*;
        let classes: Vec<_> = FunctionId::ALL
            .iter()
            .map(|id| (id.cm_class(), id.is_strict()))
            .collect();
        assert_eq!(
            classes,
            vec![
                (Both, false),
                (CompletelyDecreasing, true),
                (CompletelyIncreasing, true),
                (CompletelyIncreasing, true),
                (CompletelyDecreasing, true),
                (CompletelyDecreasing, true),
            ]
        );
    }

    #[test]
    fn id_round_trip() {
        for id in FunctionId::ALL {
            assert_eq!(id.as_str().parse::<FunctionId>().unwrap(), id);
        }
        assert_eq!(
            "exp_decay".parse::<FunctionId>().unwrap(),
            FunctionId::ExpDecay
        );
        assert!("gamma".parse::<FunctionId>().is_err());
    }

    #[test]
    fn exp_decay_jet() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        let j = f.eval_jet(1.0, 2).unwrap();
        let e = (-1.0f64).exp();
        for (got, want) in j.coeffs().iter().zip([e, -e, e / 2.0]) {
            assert!((got - want).abs() < 1e-16);
        }
    }

    #[test]
    fn const_one_jet() {
        let j = CatalogFunction::const_one().eval_jet(3.7, 3).unwrap();
        assert_eq!(j.coeffs(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn log1p_over_x_near_zero() {
        let f = CatalogFunction::log1p_over_x();
        let j = f.eval_jet(1e-9, 1).unwrap();
        assert!((j.coeffs()[1] + 0.5).abs() < 1e-8);
        assert!((j.value() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn log1p_paths_agree_at_the_switch() {
        let f = CatalogFunction::log1p_over_x();
        let below = f
            .eval_jet(LOG1P_SERIES_THRESHOLD * (1.0 - 1e-12), 8)
            .unwrap();
        let above = f.eval_jet(LOG1P_SERIES_THRESHOLD, 8).unwrap();
        for (a, b) in below.coeffs().iter().zip(above.coeffs()) {
            assert!((a - b).abs() <= 1e-11 * b.abs(), "{a} vs {b}");
        }
    }

    // Reference derivatives computed with mpmath at 50 digits.
    #[test]
    fn jets_match_high_precision_reference() {
        let cases: &[(CatalogFunction, f64, usize, f64)] = &[
            (
                CatalogFunction::log1p_over_x(),
                1e-3,
                5,
                -19.897_457_111_985_446,
            ),
            (
                CatalogFunction::log1p_over_x(),
                0.1,
                4,
                3.225_328_617_489_390_6,
            ),
            (
                CatalogFunction::log1p_over_x(),
                2.0,
                3,
                -0.041_609_237_880_170_76,
            ),
            (
                CatalogFunction::log_ratio(1.0, 2.0).unwrap(),
                0.5,
                3,
                0.464_592_592_592_592_6,
            ),
            (
                CatalogFunction::power_decay(1.0, 2.0, 0.5).unwrap(),
                3.0,
                4,
                0.016_529_058_586_409_354,
            ),
            (
                CatalogFunction::moebius_ratio(2.0).unwrap(),
                1.0,
                5,
                0.329_218_106_995_884_8,
            ),
        ];
        for &(f, x, k, want) in cases {
            let got = f.derivative(x, k).unwrap();
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "{f} at {x}, k={k}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn values_match_jets() {
        for f in CatalogFunction::all(Params::default()).unwrap() {
            for x in [0.01, 0.3, 1.0, 7.5, 300.0] {
                let j = f.eval_jet(x, 0).unwrap();
                assert!(rel(j.value(), f.value(x)) < 1e-14, "{f} at {x}");
            }
        }
    }

    #[test]
    fn zero_limits() {
        let e2 = CatalogFunction::exp_decay(2.0).unwrap();
        assert_eq!(e2.limit_deriv_zero(3), ExtendedReal::Finite(-8.0));
        assert_eq!(
            CatalogFunction::const_one().limit_deriv_zero(1),
            ExtendedReal::ZERO
        );
        let p = CatalogFunction::power_decay(1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.limit_deriv_zero(2), ExtendedReal::Finite(2.0));
        let jet_near_zero = p.derivative(1e-8, 2).unwrap();
        assert!((jet_near_zero - 2.0).abs() < 1e-6);

        let l = CatalogFunction::log1p_over_x();
        assert_eq!(l.limit_deriv_zero(0), ExtendedReal::Finite(1.0));
        assert_eq!(l.limit_deriv_zero(1), ExtendedReal::Finite(-0.5));
        assert_eq!(l.limit_deriv_zero(2), ExtendedReal::Finite(2.0 / 3.0));

        let m = CatalogFunction::moebius_ratio(2.0).unwrap();
        assert_eq!(m.limit_deriv_zero(0), ExtendedReal::ZERO);
        assert_eq!(m.limit_deriv_zero(1), ExtendedReal::Finite(0.5));
        assert_eq!(m.limit_deriv_zero(2), ExtendedReal::Finite(-0.5));

        let r = CatalogFunction::log_ratio(1.0, 2.0).unwrap();
        assert_eq!(r.limit_deriv_zero(0), ExtendedReal::ZERO);
        assert_eq!(r.limit_deriv_zero(1), ExtendedReal::Finite(0.5));
        assert_eq!(r.limit_deriv_zero(2), ExtendedReal::Finite(-0.75));
    }

    #[test]
    fn infinity_limits() {
        let l = CatalogFunction::log1p_over_x();
        assert_eq!(l.limit_deriv_inf(0), ExtendedReal::ZERO);
        let m = CatalogFunction::moebius_ratio(3.0).unwrap();
        assert_eq!(m.limit_deriv_inf(0), ExtendedReal::Finite(1.0));
        assert_eq!(m.limit_deriv_inf(2), ExtendedReal::ZERO);
        let e = CatalogFunction::exp_decay(0.7).unwrap();
        for k in 0..6 {
            assert_eq!(e.limit_deriv_inf(k), ExtendedReal::ZERO);
        }
        let r = CatalogFunction::log_ratio(1.0, 4.0).unwrap();
        assert_eq!(r.limit_deriv_inf(0), ExtendedReal::Finite(4.0f64.ln()));
        assert_eq!(r.limit_deriv_inf(1), ExtendedReal::ZERO);
    }

    #[test]
    fn binomial_product() {
        assert_eq!(binom_neg(1.0, 3), -1.0);
        assert_eq!(binom_neg(2.0, 2), 3.0);
        assert!((binom_neg(0.5, 2) - 0.375).abs() < 1e-16);
        assert_eq!(binom_neg(0.3, 0), 1.0);
    }

    #[test]
    fn domain_errors() {
        let f = CatalogFunction::exp_decay(1.0).unwrap();
        assert_eq!(f.eval_jet(0.0, 2), Err(CatalogError::OutsideDomain(0.0)));
        assert_eq!(f.eval_jet(-1.0, 2), Err(CatalogError::OutsideDomain(-1.0)));
    }

    #[test]
    fn json_shape() {
        let f = CatalogFunction::power_decay(1.0, 2.0, 0.5).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"id":"power-decay","alpha":1.0,"beta":2.0,"gamma":0.5}"#
        );
        let back: CatalogFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let l = serde_json::to_string(&listing()).unwrap();
        assert!(l.contains(r#""id":"log-ratio""#));
        assert!(l.contains(r#""cm_class":"completely_increasing""#));
    }

    #[test]
    fn display() {
        assert_eq!(CatalogFunction::log1p_over_x().to_string(), "log1p-over-x");
        assert_eq!(
            CatalogFunction::log_ratio(1.0, 2.5).unwrap().to_string(),
            "log-ratio(alpha=1,beta=2.5)"
        );
    }
}
