//! Values in `[0, +∞]` with total arithmetic.
//!
//! Conventions: `1/∞ = 0`, `1/0 = ∞`, `0·∞ = 0`. `∞` absorbs addition.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative real or `+∞`; never NaN, never negative.
#[derive(Clone, Copy, PartialEq, Default)]
pub struct ExtendedNonNegative(f64);

impl ExtendedNonNegative {
    pub const ZERO: Self = Self(0.0);
    pub const INFINITY: Self = Self(f64::INFINITY);

    /// Wraps `value`, returning `None` for NaN or negative input.
    pub fn new(value: f64) -> Option<Self> {
        if value.is_nan() || value < 0.0 {
            None
        } else {
            // normalizes -0.0
            Some(Self(value + 0.0))
        }
    }

    /// Clamps tiny negative round-off to zero. Panics on NaN.
    pub(crate) fn clamped(value: f64) -> Self {
        assert!(!value.is_nan(), "NaN in extended arithmetic");
        Self(value.max(0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    pub fn recip(self) -> Self {
        if self.0 == 0.0 {
            Self::INFINITY
        } else if self.0.is_infinite() {
            Self::ZERO
        } else {
            Self(1.0 / self.0)
        }
    }

    /// `(self + other) / 2`, with `∞` absorbing.
    pub fn mean(self, other: Self) -> Self {
        if self.is_infinite() || other.is_infinite() {
            Self::INFINITY
        } else {
            Self((self.0 + other.0) / 2.0)
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Scales by a nonnegative finite factor with `0·∞ = 0`.
    pub fn scale(self, factor: f64) -> Self {
        debug_assert!(factor >= 0.0 && factor.is_finite());
        if factor == 0.0 {
            Self::ZERO
        } else {
            Self(self.0 * factor)
        }
    }
}

impl Eq for ExtendedNonNegative {}

impl PartialOrd for ExtendedNonNegative {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedNonNegative {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for ExtendedNonNegative {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl Mul for ExtendedNonNegative {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.0 == 0.0 || rhs.0 == 0.0 {
            Self::ZERO
        } else {
            Self(self.0 * rhs.0)
        }
    }
}

impl From<ExtendedNonNegative> for f64 {
    fn from(v: ExtendedNonNegative) -> f64 {
        v.0
    }
}

impl fmt::Debug for ExtendedNonNegative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shortest round-trip representation; `inf` for `+∞`.
impl fmt::Display for ExtendedNonNegative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for ExtendedNonNegative {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNonNegative {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtendedNonNegative;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                ExtendedNonNegative::new(v).ok_or_else(|| E::custom("negative or NaN value"))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(ExtendedNonNegative(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                self.visit_f64(v as f64)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "inf" => Ok(ExtendedNonNegative::INFINITY),
                    _ => Err(E::custom(format!("unexpected string {v:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
