use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom2d::Point2;

/// Where a sample came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Provenance {
    Generated {
        shape: String,
        seed: u64,
        stream: u64,
    },
    Ingested {
        source: String,
    },
    Literal,
}

/// An ordered list of planar points with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    points: Vec<Point2>,
    provenance: Provenance,
}

impl Sample {
    pub fn new(points: Vec<Point2>, provenance: Provenance) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { points, provenance })
    }

    pub fn from_points(points: Vec<Point2>) -> Result<Self> {
        Self::new(points, Provenance::Literal)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }
}

impl AsRef<[Point2]> for Sample {
    fn as_ref(&self) -> &[Point2] {
        &self.points
    }
}
