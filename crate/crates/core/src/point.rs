//! Points and direction vectors in `ℝⁿ`.

use std::ops::Neg;

use nalgebra::DVector;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{GeomError, Result};

/// A point of `ℝⁿ` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(DVector<f64>);

/// A (tangent) vector of `ℝⁿ` with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(DVector<f64>);

fn check_finite(coords: &[f64]) -> Result<()> {
    if coords.is_empty() {
        return Err(GeomError::InvalidArgument(
            "dimension must be at least 1".into(),
        ));
    }
    if coords.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_finite(&coords)?;
        Ok(Self(DVector::from_vec(coords)))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn origin(dim: usize) -> Self {
        Self(DVector::zeros(dim))
    }

    pub(crate) fn from_vector(v: DVector<f64>) -> Self {
        debug_assert!(v.iter().all(|c| c.is_finite()));
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    /// `self + t·dir`.
    pub fn offset(&self, dir: &Direction, t: f64) -> Point {
        Point(&self.0 + &dir.0 * t)
    }

    /// The vector `other − self`.
    pub fn to(&self, other: &Point) -> Direction {
        Direction(&other.0 - &self.0)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (&self.0 - &other.0).norm()
    }

    /// Affine combination `(1−t)·self + t·other`.
    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point(&self.0 * (1.0 - t) + &other.0 * t)
    }

    pub(crate) fn ensure_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(GeomError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl Direction {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        check_finite(&coords)?;
        Ok(Self(DVector::from_vec(coords)))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub(crate) fn from_vector(v: DVector<f64>) -> Self {
        Self(v)
    }

    /// Unit vector along coordinate axis `axis`.
    pub fn axis(dim: usize, axis: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[axis] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn as_slice(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        self.0.dot(&other.0)
    }

    /// Inner product with the position vector of a point.
    pub fn dot_point(&self, p: &Point) -> f64 {
        self.0.dot(&p.0)
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Direction {
        Direction(&self.0 * factor)
    }

    pub fn normalized(&self) -> Result<Direction> {
        let n = self.norm();
        if n == 0.0 {
            Err(GeomError::ZeroDirection)
        } else {
            Ok(self.scaled(1.0 / n))
        }
    }

    pub fn add(&self, other: &Direction) -> Direction {
        Direction(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Direction) -> Direction {
        Direction(&self.0 - &other.0)
    }

    pub(crate) fn ensure_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(GeomError::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl Neg for &Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-&self.0)
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

macro_rules! impl_serde_coords {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                self.as_slice().serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let coords = Vec::<f64>::deserialize(d)?;
                $ty::new(coords).map_err(serde::de::Error::custom)
            }
        }
    };
}

impl_serde_coords!(Point);
impl_serde_coords!(Direction);
