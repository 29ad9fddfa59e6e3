//! Truncated Taylor series ("jets") of univariate functions.
//!
//! A [`Jet`] of order `N` at a center `x0` holds the normalized coefficients
//! `c[k] = f^(k)(x0) / k!` for `k = 0..=N`. Arithmetic and the elementary
//! transcendentals propagate these coefficients with the usual power-series
//! recurrences, so derivatives of any order come out of a single forward pass.
//!
//! Every recurrence accumulates in ascending index order, which makes results
//! bit-reproducible. Raw derivatives only appear in [`Jet::derivative`].

use thiserror::Error;

/// Default cap on the jet order used by the verifier and the CLI.
///
/// Past this order the `(n-1)!` scaling in the bounds outgrows the 53-bit
/// mantissa and comparisons stop meaning anything.
pub const DEFAULT_MAX_ORDER: usize = 16;

/// Largest order for which `k!` is still a finite `f64`.
pub const HARD_MAX_ORDER: usize = 170;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JetError {
    #[error("a jet needs at least one coefficient")]
    Empty,
    #[error("jet center must be a positive finite number, got {0}")]
    BadCenter(f64),
    #[error("jet order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("jet centers differ ({0} vs {1})")]
    CenterMismatch(f64, f64),
    #[error("jet orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("division by a jet with zero constant term")]
    ZeroDivisor,
    #[error("logarithm or real power of a jet with non-positive constant term {0}")]
    NonPositiveBase(f64),
    #[error("operation produced a non-finite coefficient at index {0}")]
    NonFinite(usize),
    #[error("derivative order {k} is outside 0..={order}")]
    DerivativeOutOfRange { k: usize, order: usize },
}

pub type Result<T> = std::result::Result<T, JetError>;

/// Truncated Taylor expansion of a function around a positive center.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    center: f64,
    coeffs: Vec<f64>,
}

impl Jet {
    /// Jet of the identity function `x ↦ x` at `x0`.
    pub fn var(x0: f64, order: usize) -> Result<Self> {
        let mut coeffs = Self::zeros_checked(x0, order)?;
        coeffs[0] = x0;
        if order >= 1 {
            coeffs[1] = 1.0;
        }
        Ok(Self { center: x0, coeffs })
    }

    /// Jet of the constant function `x ↦ value` at `x0`.
    pub fn constant(x0: f64, order: usize, value: f64) -> Result<Self> {
        let mut coeffs = Self::zeros_checked(x0, order)?;
        coeffs[0] = value;
        Self::from_parts(x0, coeffs)
    }

    /// Builds a jet from raw normalized coefficients, checking every invariant.
    pub fn from_coeffs(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(JetError::Empty);
        }
        Self::zeros_checked(center, coeffs.len() - 1)?;
        Self::from_parts(center, coeffs)
    }

    fn zeros_checked(x0: f64, order: usize) -> Result<Vec<f64>> {
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(JetError::BadCenter(x0));
        }
        if order > HARD_MAX_ORDER {
            return Err(JetError::OrderTooLarge {
                order,
                max: HARD_MAX_ORDER,
            });
        }
        Ok(vec![0.0; order + 1])
    }

    fn from_parts(center: f64, coeffs: Vec<f64>) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(JetError::NonFinite(k));
        }
        Ok(Self { center, coeffs })
    }

    fn same_shape(&self, other: &Jet) -> Result<()> {
        if self.center != other.center {
            return Err(JetError::CenterMismatch(self.center, other.center));
        }
        if self.order() != other.order() {
            return Err(JetError::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Vec<f64>) -> Result<Self> {
        Self::from_parts(self.center, coeffs)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Function value at the center.
    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// `f^(k)(x0) = k! * c[k]`.
    pub fn derivative(&self, k: usize) -> Result<f64> {
        let c = self.coeffs.get(k).ok_or(JetError::DerivativeOutOfRange {
            k,
            order: self.order(),
        })?;
        Ok(factorial(k) * c)
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        self.same_shape(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b);
        self.with_coeffs(c.collect())
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet> {
        self.same_shape(other)?;
        let c = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b);
        self.with_coeffs(c.collect())
    }

    pub fn neg(&self) -> Jet {
        Jet {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Result<Jet> {
        self.with_coeffs(self.coeffs.iter().map(|c| s * c).collect())
    }

    pub fn add_const(&self, s: f64) -> Result<Jet> {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += s;
        self.with_coeffs(coeffs)
    }

    /// Cauchy product.
    ///
    /// Mirrored terms `a[j]b[k-j]` and `a[k-j]b[j]` are added pairwise before
    /// accumulation, so `a.mul(b)` and `b.mul(a)` agree bit for bit.
    pub fn mul(&self, other: &Jet) -> Result<Jet> {
        self.same_shape(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = (0..a.len())
            .map(|k| {
                let mut sum = 0.0;
                for j in 0..=k / 2 {
                    let i = k - j;
                    if j < i {
                        sum += a[j] * b[i] + a[i] * b[j];
                    } else {
                        sum += a[j] * b[j];
                    }
                }
                sum
            })
            .collect();
        self.with_coeffs(coeffs)
    }

    /// Quotient by forward substitution:
    /// `q[k] = (a[k] - Σ_{j=1..k} b[j] q[k-j]) / b[0]`.
    pub fn div(&self, other: &Jet) -> Result<Jet> {
        self.same_shape(other)?;
        let (a, b) = (&self.coeffs, &other.coeffs);
        if b[0] == 0.0 {
            return Err(JetError::ZeroDivisor);
        }
        let mut q = vec![0.0; a.len()];
        for k in 0..a.len() {
            let mut sum = a[k];
            for j in 1..=k {
                sum -= b[j] * q[k - j];
            }
            q[k] = sum / b[0];
        }
        self.with_coeffs(q)
    }

    pub fn recip(&self) -> Result<Jet> {
        let one = Jet::constant(self.center, self.order(), 1.0)?;
        one.div(self)
    }

    /// `e_0 = exp(a_0)`, `e_k = (1/k) Σ_{j=1..k} j a_j e_{k-j}`.
    pub fn exp(&self) -> Result<Jet> {
        let a = &self.coeffs;
        let mut e = vec![0.0; a.len()];
        e[0] = a[0].exp();
        for k in 1..a.len() {
            let mut sum = 0.0;
            for j in 1..=k {
                sum += j as f64 * a[j] * e[k - j];
            }
            e[k] = sum / k as f64;
        }
        self.with_coeffs(e)
    }

    /// Natural logarithm; requires a positive constant term.
    pub fn ln(&self) -> Result<Jet> {
        let a0 = self.coeffs[0];
        if a0.is_nan() || a0 <= 0.0 {
            return Err(JetError::NonPositiveBase(a0));
        }
        self.log_tail(a0.ln(), a0)
    }

    /// `ln(1 + a)`, with the constant term evaluated by `f64::ln_1p` so that
    /// small arguments keep their digits.
    pub fn ln_1p(&self) -> Result<Jet> {
        let base = 1.0 + self.coeffs[0];
        if base.is_nan() || base <= 0.0 {
            return Err(JetError::NonPositiveBase(base));
        }
        self.log_tail(self.coeffs[0].ln_1p(), base)
    }

    // Shared logarithm recurrence for `ln(s + a)` where `base = s + a[0]`:
    // l_k = (a_k - (1/k) Σ_{j=1..k-1} j l_j a_{k-j}) / base.
    fn log_tail(&self, l0: f64, base: f64) -> Result<Jet> {
        let a = &self.coeffs;
        let mut l = vec![0.0; a.len()];
        l[0] = l0;
        for k in 1..a.len() {
            let mut sum = 0.0;
            for j in 1..k {
                sum += j as f64 * l[j] * a[k - j];
            }
            l[k] = (a[k] - sum / k as f64) / base;
        }
        self.with_coeffs(l)
    }

    /// `a^gamma` computed as `exp(gamma * ln(a))`.
    pub fn powf(&self, gamma: f64) -> Result<Jet> {
        self.ln()?.scale(gamma)?.exp()
    }

    /// Evaluates the polynomial `Σ p[m] a^m` by Horner's scheme on jets.
    pub fn compose_poly(&self, poly: &[f64]) -> Result<Jet> {
        let order = self.order();
        let Some((&last, rest)) = poly.split_last() else {
            return Jet::constant(self.center, order, 0.0);
        };
        let mut acc = Jet::constant(self.center, order, last)?;
        for &p in rest.iter().rev() {
            acc = acc.mul(self)?.add_const(p)?;
        }
        Ok(acc)
    }
}

/// `k!` as a float, exact for `k <= 22` and finite up to 170.
pub fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}
