//! Points, datasets, and the validity domains they live in.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense point in ℝ^d with finite coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("point must have dimension >= 1".into()));
        }
        if let Some((i, v)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite coordinate {v} at index {i}"
            )));
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    /// Builds a point without validation. Callers guarantee finiteness.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        Point(coords)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Where the coordinates of a point are allowed to live.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    #[default]
    Unrestricted,
    StrictlyPositive,
    /// Every coordinate in `[lo, hi]`, with `0 < lo < hi`.
    Box {
        lo: f64,
        hi: f64,
    },
}

impl Domain {
    /// Default box used for μ-similarity checks of KL and Itakura-Saito.
    pub const DEFAULT_BOX: Domain = Domain::Box { lo: 0.1, hi: 0.9 };

    pub fn boxed(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return Err(Error::Config(format!("invalid domain box [{lo}, {hi}]")));
        }
        Ok(Domain::Box { lo, hi })
    }

    pub fn contains(&self, coords: &[f64]) -> bool {
        match *self {
            Domain::Unrestricted => coords.iter().all(|c| c.is_finite()),
            Domain::StrictlyPositive => coords.iter().all(|&c| c.is_finite() && c > 0.0),
            Domain::Box { lo, hi } => coords.iter().all(|&c| c >= lo && c <= hi),
        }
    }

    pub fn check(&self, coords: &[f64]) -> Result<()> {
        if self.contains(coords) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "point {coords:?} outside domain {self:?}"
            )))
        }
    }
}

/// A non-empty list of points sharing one dimension and one domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<Point>,
    domain: Domain,
}

impl Dataset {
    pub fn new(points: Vec<Point>, domain: Domain) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptySet)?;
        let d = first.dim();
        for p in &points {
            if p.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: p.dim(),
                });
            }
            domain.check(p)?;
        }
        Ok(Dataset { points, domain })
    }

    /// Convenience constructor from raw rows in the unrestricted domain.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows_in(rows, Domain::Unrestricted)
    }

    pub fn from_rows_in<R: AsRef<[f64]>>(rows: &[R], domain: Domain) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| Point::new(r.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points, domain)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// Dataset restricted to the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        let points = indices.iter().map(|&i| self.points[i].clone()).collect();
        Dataset::new(points, self.domain)
    }
}
