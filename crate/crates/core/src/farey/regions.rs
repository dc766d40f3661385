//! Complementary regions of two slopes, by cell enumeration on the torus.
//!
//! In coordinates `u = q_a x - p_a y`, `v = q_b x - p_b y` the curve of slope
//! `a` is a family of horizontal lines and `b` of vertical lines, and the
//! torus becomes the plane modulo the image lattice, of index `|det|`. Every
//! complementary cell is a square. For the once-punctured torus each curve
//! is one line, offset by a half so the puncture sits at a cell centre. For
//! the four-punctured sphere each curve lifts to two lines offset by a
//! quarter, the four fixed points of `-1` are cell centres, and cells, edges
//! and vertices are counted in the quotient. All coordinates are scaled to
//! be integers: lines at odd coordinates, cell centres at even ones.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;

use super::{farey_ball, FareyError, ModelSurface, Slope};
use crate::traintrack::RegionShape;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    NotFilling,
    Filling,
    MaximallyFilling,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotFilling => "not filling",
            Verdict::Filling => "filling",
            Verdict::MaximallyFilling => "maximally filling",
        })
    }
}

/// Region census for the complement of two curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionReport {
    pub surface: ModelSurface,
    /// (shape, marked points), sorted.
    pub regions: Vec<(RegionShape, u32)>,
    pub cells: usize,
    pub edges: usize,
    pub vertices: usize,
    pub verdict: Verdict,
}

impl RegionReport {
    pub fn euler(&self) -> i64 {
        self.cells as i64 - self.edges as i64 + self.vertices as i64
    }

    pub fn marked_points(&self) -> u32 {
        self.regions.iter().map(|r| r.1).sum()
    }

    pub fn count(&self, shape: RegionShape, marked: u32) -> usize {
        self.regions.iter().filter(|r| **r == (shape, marked)).count()
    }
}

/// A full-rank sublattice of `Z^2` with basis `(h1, 0)`, `(t, h2)`.
#[derive(Clone, Copy, Debug)]
struct Lattice {
    h1: i64,
    t: i64,
    h2: i64,
}

impl Lattice {
    fn from_generators(mut a: (i64, i64), mut b: (i64, i64)) -> Self {
        while b.1 != 0 {
            let k = Integer::div_floor(&a.1, &b.1);
            a = (a.0 - k * b.0, a.1 - k * b.1);
            std::mem::swap(&mut a, &mut b);
        }
        if a.1 < 0 {
            a = (-a.0, -a.1);
        }
        let h1 = b.0.abs();
        Lattice {
            h1,
            t: a.0.mod_floor(&h1),
            h2: a.1,
        }
    }

    fn reduce(&self, (x, y): (i64, i64)) -> (i64, i64) {
        let k = Integer::div_floor(&y, &self.h2);
        ((x - k * self.t).mod_floor(&self.h1), y - k * self.h2)
    }

    /// Canonical representatives with the given coordinate parities.
    fn classes(&self, px: i64, py: i64) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for y in 0..self.h2 {
            if y.mod_floor(&2) != py {
                continue;
            }
            for x in 0..self.h1 {
                if x.mod_floor(&2) == px {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

struct Model {
    lattice: Lattice,
    marked: Vec<(i64, i64)>,
    involution: bool,
}

fn model(a: Slope, b: Slope, surface: ModelSurface) -> Model {
    let s = match surface {
        ModelSurface::S11 => 2,
        ModelSurface::S04 => 4,
    };
    // image of the integer lattice under (x, y) -> (u, v), scaled by s
    let e1 = (s * a.q(), s * b.q());
    let e2 = (-s * a.p(), -s * b.p());
    let lattice = Lattice::from_generators(e1, e2);
    let marked = match surface {
        ModelSurface::S11 => vec![(0, 0)],
        ModelSurface::S04 => [(0, 0), (1, 0), (0, 1), (1, 1)]
            .iter()
            .map(|&(x, y)| lattice.reduce((2 * (a.q() * x - a.p() * y), 2 * (b.q() * x - b.p() * y))))
            .collect(),
    };
    Model {
        lattice,
        marked,
        involution: surface == ModelSurface::S04,
    }
}

impl Model {
    fn orbit_rep(&self, c: (i64, i64)) -> (i64, i64) {
        let c = self.lattice.reduce(c);
        if self.involution {
            c.min(self.lattice.reduce((-c.0, -c.1)))
        } else {
            c
        }
    }

    fn orbits(&self, px: i64, py: i64) -> Vec<(i64, i64)> {
        let set: HashSet<(i64, i64)> = self
            .lattice
            .classes(px, py)
            .into_iter()
            .map(|c| self.orbit_rep(c))
            .collect();
        let mut v: Vec<_> = set.into_iter().collect();
        v.sort();
        v
    }
}

/// Census of the complement of `a ∪ b`.
pub fn complementary_regions(a: Slope, b: Slope, surface: ModelSurface) -> Result<RegionReport, FareyError> {
    if a == b {
        return Err(FareyError::EqualSlopes);
    }
    let m = model(a, b, surface);
    let cells = m.orbits(0, 0);
    let vertices = m.orbits(1, 1).len();
    let edges = m.orbits(1, 0).len() + m.orbits(0, 1).len();
    let mut regions = Vec::with_capacity(cells.len());
    for &c in &cells {
        let fixed = m.involution && m.lattice.reduce((-c.0, -c.1)) == c;
        let corners = if fixed { 2 } else { 4 };
        let mut orbit = vec![c];
        if m.involution && !fixed {
            orbit.push(m.lattice.reduce((-c.0, -c.1)));
        }
        let marked = m.marked.iter().filter(|p| orbit.contains(p)).count() as u32;
        regions.push((RegionShape::from_counts(corners, marked), marked));
    }
    regions.sort();
    let allowed = |&(shape, marked): &(RegionShape, u32)| match shape {
        RegionShape::Square | RegionShape::Hexagon => marked == 0,
        RegionShape::Bigon => marked == 1,
        _ => false,
    };
    let disc_like = |&(shape, marked): &(RegionShape, u32)| !matches!(shape, RegionShape::Nullgon) && marked <= 1;
    let verdict = if !regions.iter().all(disc_like) {
        Verdict::NotFilling
    } else if regions.iter().all(allowed) {
        Verdict::MaximallyFilling
    } else {
        Verdict::Filling
    };
    Ok(RegionReport {
        surface,
        regions,
        cells: cells.len(),
        edges,
        vertices,
        verdict,
    })
}

/// The verdict alone; equal slopes do not fill.
pub fn classify_pair(a: Slope, b: Slope, surface: ModelSurface) -> Verdict {
    match complementary_regions(a, b, surface) {
        Ok(r) => r.verdict,
        Err(_) => Verdict::NotFilling,
    }
}

/// Whether every pair within distance `k` of `(a, b)`, among slopes of height
/// at most `height_cap`, is maximally filling.
pub fn k_maximally_filling(
    a: Slope,
    b: Slope,
    k: u32,
    surface: ModelSurface,
    height_cap: i64,
) -> Result<bool, FareyError> {
    let ba = farey_ball(a, k, height_cap)?;
    let bb = farey_ball(b, k, height_cap)?;
    for &x in ba.slopes() {
        for &y in bb.slopes() {
            if classify_pair(x, y, surface) != Verdict::MaximallyFilling {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which sign pattern the standard torus train track carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrant {
    /// `p q >= 0`.
    PlusPlus,
    /// `p q <= 0`.
    PlusMinus,
}

impl Quadrant {
    pub fn carries(self, s: Slope) -> bool {
        let pq = i128::from(s.p()) * i128::from(s.q());
        match self {
            Quadrant::PlusPlus => pq >= 0,
            Quadrant::PlusMinus => pq <= 0,
        }
    }

    /// Carried with positive weight on both branches.
    pub fn carries_interior(self, s: Slope) -> bool {
        s.p() != 0 && s.q() != 0 && self.carries(s)
    }
}

/// Whether every slope within distance `k` of `a` (height at most
/// `height_cap`) is carried, for `a` carried with positive weights.
pub fn nesting_check(quadrant: Quadrant, a: Slope, k: u32, height_cap: i64) -> Result<bool, FareyError> {
    if !quadrant.carries_interior(a) {
        return Err(FareyError::Rejected(format!(
            "{a} is not carried with positive weights"
        )));
    }
    if k == 0 {
        return Ok(true);
    }
    let ball = farey_ball(a, k, height_cap)?;
    Ok(ball.slopes().iter().all(|&s| quadrant.carries(s)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Slope {
        x.parse().unwrap()
    }

    #[test]
    fn lattice_reduction() {
        let l = Lattice::from_generators((2, 4), (-6, 2));
        assert_eq!(l.h1 * l.h2, 28);
        assert_eq!(l.reduce((2, 4)), (0, 0));
        assert_eq!(l.reduce((-6, 2)), (0, 0));
        assert_eq!(l.reduce((-4, 6)), (0, 0));
    }

    #[test]
    fn torus_marked_square() {
        let r = complementary_regions(s("0/1"), s("3/1"), ModelSurface::S11).unwrap();
        assert_eq!(r.cells, 3);
        assert_eq!(r.count(RegionShape::Square, 1), 1);
        assert_eq!(r.count(RegionShape::Square, 0), 2);
        assert_eq!(r.euler(), 0);
        assert_eq!(r.verdict, Verdict::Filling);
    }

    #[test]
    fn sphere_bigons() {
        let r = complementary_regions(s("0/1"), s("1/0"), ModelSurface::S04).unwrap();
        assert_eq!(r.regions, vec![(RegionShape::Bigon, 1); 4]);
        assert_eq!(r.euler(), 2);
        assert_eq!(r.verdict, Verdict::MaximallyFilling);
        let r = complementary_regions(s("0/1"), s("5/3"), ModelSurface::S04).unwrap();
        assert_eq!(r.count(RegionShape::Square, 0), 8);
        assert_eq!(r.count(RegionShape::Bigon, 1), 4);
        assert_eq!(r.vertices, 10);
        assert_eq!(r.euler(), 2);
    }

    #[test]
    fn equal_slopes() {
        assert_eq!(
            complementary_regions(s("2/3"), s("2/3"), ModelSurface::S04),
            Err(FareyError::EqualSlopes)
        );
        assert_eq!(
            classify_pair(s("2/3"), s("2/3"), ModelSurface::S11),
            Verdict::NotFilling
        );
    }

    #[test]
    fn k_filling_and_nesting() {
        assert!(k_maximally_filling(s("0/1"), s("1/0"), 0, ModelSurface::S04, 8).unwrap());
        assert!(!k_maximally_filling(s("0/1"), s("1/0"), 1, ModelSurface::S04, 8).unwrap());
        assert!(nesting_check(Quadrant::PlusPlus, s("1/1"), 1, 16).unwrap());
        assert!(!nesting_check(Quadrant::PlusPlus, s("1/1"), 2, 16).unwrap());
        assert!(nesting_check(Quadrant::PlusPlus, s("0/1"), 1, 16).is_err());
        assert!(nesting_check(Quadrant::PlusMinus, s("-1/2"), 0, 16).unwrap());
    }
}
