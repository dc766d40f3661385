//! The Farey graph as the curve graph of the once-punctured torus and the
//! four-punctured sphere.
//!
//! Slopes `p/q` are primitive integer vectors up to sign. Two slopes are
//! adjacent when `|p q' - q p'| = 1`.
//!
//! Every Farey neighbour set is infinite, so balls are generated inside the
//! finite subgraph of slopes of height `max(|p|, |q|) <= H`. That subgraph is
//! geodesically convex: a slope of height at least 2 has at most two
//! neighbours of smaller height, these are adjacent to each other, and it has
//! no neighbour of equal height. A geodesic through a highest interior vertex
//! could therefore be shortened. Distances between slopes of height at most
//! `H` are thus exact inside the truncation.

mod ball;
mod mapclass;
mod regions;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

pub use ball::{farey_ball, farey_distance, neighbors_within, FareyBall, DEFAULT_HEIGHT_CAP, MAX_RADIUS};
pub use mapclass::{classify, Dynamics, FareyMapClass, Generator};
pub use regions::{
    classify_pair, complementary_regions, k_maximally_filling, nesting_check, Quadrant, RegionReport, Verdict,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("{0}/{1} is not a primitive vector")]
    NotPrimitive(i64, i64),
    #[error("cannot parse slope {0:?}")]
    Parse(String),
    #[error("determinant is {0}, not 1")]
    BadDeterminant(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("slopes are equal")]
    EqualSlopes,
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("arithmetic overflow acting on {0}")]
    Overflow(String),
}

/// The two surfaces whose curve graph is the Farey graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelSurface {
    S11,
    S04,
}

impl ModelSurface {
    pub fn punctures(self) -> u32 {
        match self {
            ModelSurface::S11 => 1,
            ModelSurface::S04 => 4,
        }
    }

    /// Euler characteristic with the punctures filled in.
    pub fn closed_euler(self) -> i64 {
        match self {
            ModelSurface::S11 => 0,
            ModelSurface::S04 => 2,
        }
    }
}

impl FromStr for ModelSurface {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace(['_', ','], "").as_str() {
            "s11" | "11" => Ok(ModelSurface::S11),
            "s04" | "04" => Ok(ModelSurface::S04),
            _ => Err(FareyError::Parse(s.to_string())),
        }
    }
}

impl fmt::Display for ModelSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSurface::S11 => write!(f, "S_1,1"),
            ModelSurface::S04 => write!(f, "S_0,4"),
        }
    }
}

/// A slope in canonical form: `q > 0`, or `1/0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { p: 1, q: 0 };
    pub const ZERO: Slope = Slope { p: 0, q: 1 };

    pub fn new(p: i64, q: i64) -> Result<Self, FareyError> {
        if p.gcd(&q) != 1 {
            return Err(FareyError::NotPrimitive(p, q));
        }
        Ok(Self::canonical(p, q))
    }

    /// Canonical form of a primitive vector.
    pub(crate) fn canonical(p: i64, q: i64) -> Self {
        if q < 0 || (q == 0 && p < 0) {
            Slope { p: -p, q: -q }
        } else {
            Slope { p, q }
        }
    }

    /// Canonical slope of any nonzero vector, dividing out the gcd.
    pub fn from_vector(p: i64, q: i64) -> Result<Self, FareyError> {
        let g = p.gcd(&q);
        if g == 0 {
            return Err(FareyError::NotPrimitive(p, q));
        }
        Ok(Self::canonical(p / g, q / g))
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }

    pub fn height(self) -> i64 {
        self.p.abs().max(self.q.abs())
    }

    pub fn det(self, other: Slope) -> i128 {
        i128::from(self.p) * i128::from(other.q) - i128::from(self.q) * i128::from(other.p)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FareyError::Parse(s.to_string());
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(Slope::INFINITY);
        }
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            ),
            None => (s.parse().map_err(|_| bad())?, 1),
        };
        Slope::new(p, q)
    }
}

/// `|det|` on the torus, twice that on the four-punctured sphere.
pub fn intersection_number(a: Slope, b: Slope, surface: ModelSurface) -> u128 {
    let d = a.det(b).unsigned_abs();
    match surface {
        ModelSurface::S11 => d,
        ModelSurface::S04 => 2 * d,
    }
}

pub fn farey_adjacent(a: Slope, b: Slope) -> bool {
    a.det(b).abs() == 1
}
