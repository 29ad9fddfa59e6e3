//! Real numbers extended with `±∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A point of `ℝ ∪ {-∞, +∞}`.
///
/// Finite values are never NaN, so the ordering below is total.
#[derive(Debug, Clone, Copy)]
pub enum ExtendedReal {
    NegInfinity,
    Finite(f64),
    PosInfinity,
}

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal::Finite(0.0);

    /// Maps IEEE infinities onto the matching variant. Returns `None` for NaN.
    pub fn from_f64(v: f64) -> Option<Self> {
        if v.is_nan() {
            None
        } else if v == f64::INFINITY {
            Some(Self::PosInfinity)
        } else if v == f64::NEG_INFINITY {
            Some(Self::NegInfinity)
        } else {
            Some(Self::Finite(v))
        }
    }

    /// IEEE view; infinities map to `±f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            Self::NegInfinity => f64::NEG_INFINITY,
            Self::Finite(v) => v,
            Self::PosInfinity => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Self::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// Multiplication by a finite non-zero real.
    pub fn scale(self, s: f64) -> Self {
        debug_assert!(s.is_finite() && s != 0.0);
        match self {
            Self::Finite(v) => Self::Finite(v * s),
            inf if s > 0.0 => inf,
            inf => -inf,
        }
    }

    /// `self - other` where `other` is finite. Infinities stay put.
    pub fn minus(self, other: f64) -> Self {
        match self {
            Self::Finite(v) => Self::Finite(v - other),
            inf => inf,
        }
    }

    /// `value - self` for a finite `value`.
    pub fn subtracted_from(self, value: f64) -> Self {
        (-self).minus(-value)
    }
}

impl Neg for ExtendedReal {
    type Output = Self;

    fn neg(self) -> Self {
        match self {
            Self::NegInfinity => Self::PosInfinity,
            Self::Finite(v) => Self::Finite(-v),
            Self::PosInfinity => Self::NegInfinity,
        }
    }
}

impl From<f64> for ExtendedReal {
    /// # Panics
    /// On NaN input.
    fn from(v: f64) -> Self {
        Self::from_f64(v).expect("NaN is not an extended real")
    }
}

impl PartialEq for ExtendedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for ExtendedReal {}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedReal::*;
        match (self, other) {
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (PosInfinity, _) | (_, NegInfinity) => Ordering::Greater,
            // -0.0 and 0.0 compare equal, unlike `total_cmp`.
            (Finite(a), Finite(b)) => a.partial_cmp(b).unwrap_or_else(|| a.total_cmp(b)),
        }
    }
}

impl PartialEq<f64> for ExtendedReal {
    fn eq(&self, other: &f64) -> bool {
        matches!(self, Self::Finite(v) if v == other)
    }
}

impl PartialOrd<f64> for ExtendedReal {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        Some(self.cmp(&Self::from_f64(*other)?))
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NegInfinity => f.write_str("-inf"),
            Self::Finite(v) => write!(f, "{v}"),
            Self::PosInfinity => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as plain numbers, infinities as `"inf"` / `"-inf"`.
impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::NegInfinity => s.serialize_str("-inf"),
            Self::Finite(v) => s.serialize_f64(*v),
            Self::PosInfinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number, \"inf\" or \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtendedReal, E> {
                ExtendedReal::from_f64(v).ok_or_else(|| E::custom("NaN"))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtendedReal, E> {
                Ok(ExtendedReal::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtendedReal, E> {
                match v {
                    "inf" => Ok(ExtendedReal::PosInfinity),
                    "-inf" => Ok(ExtendedReal::NegInfinity),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        d.deserialize_any(ExtVisitor)
    }
}
