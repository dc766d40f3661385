//! Boundary walks of the ribbon structure.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{region_euler_sum, Ribbon, TrackError, TrainTrack};
use crate::scalar::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionShape {
    /// No cusps and no punctures.
    Nullgon,
    /// No cusps and exactly one puncture: a peripheral annulus.
    Annulus,
    /// No cusps and several punctures.
    Smooth,
    Monogon,
    Bigon,
    Triangle,
    Square,
    Pentagon,
    Hexagon,
    Polygon(u32),
}

impl RegionShape {
    pub fn from_counts(cusps: u32, punctures: u32) -> Self {
        match (cusps, punctures) {
            (0, 0) => RegionShape::Nullgon,
            (0, 1) => RegionShape::Annulus,
            (0, _) => RegionShape::Smooth,
            (1, _) => RegionShape::Monogon,
            (2, _) => RegionShape::Bigon,
            (3, _) => RegionShape::Triangle,
            (4, _) => RegionShape::Square,
            (5, _) => RegionShape::Pentagon,
            (6, _) => RegionShape::Hexagon,
            (k, _) => RegionShape::Polygon(k),
        }
    }
}

impl fmt::Display for RegionShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionShape::Nullgon => write!(f, "nullgon"),
            RegionShape::Annulus => write!(f, "annulus"),
            RegionShape::Smooth => write!(f, "smooth region"),
            RegionShape::Monogon => write!(f, "monogon"),
            RegionShape::Bigon => write!(f, "bigon"),
            RegionShape::Triangle => write!(f, "triangle"),
            RegionShape::Square => write!(f, "square"),
            RegionShape::Pentagon => write!(f, "pentagon"),
            RegionShape::Hexagon => write!(f, "hexagon"),
            RegionShape::Polygon(k) => write!(f, "{k}-gon"),
        }
    }
}

/// A complementary region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub index: usize,
    pub cusps: u32,
    pub punctures: u32,
    /// Slot ids departed from along the boundary walk.
    pub walk: Vec<usize>,
}

impl Region {
    pub fn shape(&self) -> RegionShape {
        RegionShape::from_counts(self.cusps, self.punctures)
    }

    /// Unpunctured nullgons, monogons and bigons, and annuli.
    pub fn is_forbidden(&self) -> bool {
        match self.cusps {
            0 => self.punctures <= 1,
            1 | 2 => self.punctures == 0,
            _ => false,
        }
    }

    pub fn index_contribution(&self) -> BigRational {
        BigRational::new(
            BigInt::from(2 - 2 * i64::from(self.punctures) - i64::from(self.cusps)),
            BigInt::from(2),
        )
    }
}

fn rotation(t: &TrainTrack, ribbon: &Ribbon, slot: usize) -> usize {
    let place = ribbon.places[&slot];
    let sw = &t.switches[place.switch];
    // counter-clockwise: reverse(B) ++ A
    let mut cyc: Vec<usize> = sw.side_b.iter().rev().copied().collect();
    cyc.extend(sw.side_a.iter().copied());
    let at = cyc.iter().position(|&s| s == slot).expect("slot sits in its switch");
    cyc[(at + 1) % cyc.len()]
}

fn partner(t: &TrainTrack, ribbon: &Ribbon, slot: usize) -> usize {
    let (s, u) = t.branches[ribbon.places[&slot].branch];
    if s == slot {
        u
    } else {
        s
    }
}

/// The boundary walks in canonical order, without punctures attached.
pub fn boundary_walks(t: &TrainTrack) -> Result<Vec<Region>, TrackError> {
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let ribbon = t.ribbon()?;
    let n = ribbon.half_edges.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cusps = 0;
        let mut h = start;
        loop {
            if seen[h] {
                if h == start {
                    break;
                }
                return Err(TrackError::RibbonInconsistent(format!(
                    "boundary walk from slot {} fails to close",
                    ribbon.half_edges[start]
                )));
            }
            seen[h] = true;
            let slot = ribbon.half_edges[h];
            walk.push(slot);
            let arrive = partner(t, &ribbon, slot);
            let leave = rotation(t, &ribbon, arrive);
            let (sa, sl) = (ribbon.places[&arrive].side, ribbon.places[&leave].side);
            if sa == sl {
                cusps += 1;
            }
            h = ribbon.half_index[&leave];
        }
        out.push(Region {
            index: out.len(),
            cusps,
            punctures: 0,
            walk,
        });
    }
    Ok(out)
}

/// Walks every region once, in canonical order, attaches punctures and
/// checks the Euler identity against the declared surface.
pub fn regions(t: &TrainTrack) -> Result<Vec<Region>, TrackError> {
    if t.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = boundary_walks(t)?;
    let mut total = 0u32;
    for (&r, &p) in &t.region_punctures {
        let reg = out
            .get_mut(r)
            .ok_or_else(|| TrackError::Punctures(format!("region {r} does not exist")))?;
        reg.punctures = p;
        total += p;
    }
    if total != t.surface.n {
        return Err(TrackError::Punctures(format!(
            "regions hold {total} punctures, surface has {}",
            t.surface.n
        )));
    }

    let computed = region_euler_sum(&out);
    let expected = BigRational::from_integer(BigInt::from(2 - 2 * i64::from(t.surface.g) - i64::from(t.surface.n)));
    if computed != expected {
        return Err(TrackError::EulerMismatch {
            computed: format_rational(&computed),
            expected: format_rational(&expected),
        });
    }
    Ok(out)
}

/// Every region a triangle or a once-punctured monogon.
pub fn is_maximal(t: &TrainTrack) -> Result<bool, TrackError> {
    let regs = regions(t)?;
    Ok(!regs.is_empty()
        && regs
            .iter()
            .all(|r| (r.cusps == 3 && r.punctures == 0) || (r.cusps == 1 && r.punctures == 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::fixtures;

    #[test]
    fn shapes_from_counts() {
        assert_eq!(RegionShape::from_counts(0, 0), RegionShape::Nullgon);
        assert_eq!(RegionShape::from_counts(0, 1), RegionShape::Annulus);
        assert_eq!(RegionShape::from_counts(3, 0), RegionShape::Triangle);
        assert_eq!(RegionShape::from_counts(8, 0), RegionShape::Polygon(8));
    }

    #[test]
    fn forbidden_list() {
        let r = |c, p| Region {
            index: 0,
            cusps: c,
            punctures: p,
            walk: vec![],
        };
        assert!(r(0, 0).is_forbidden());
        assert!(r(0, 1).is_forbidden());
        assert!(!r(0, 2).is_forbidden());
        assert!(r(1, 0).is_forbidden());
        assert!(!r(1, 1).is_forbidden());
        assert!(r(2, 0).is_forbidden());
        assert!(!r(2, 1).is_forbidden());
        assert!(!r(3, 0).is_forbidden());
    }

    #[test]
    fn torus_fixture_regions() {
        let regs = regions(&fixtures::punctured_torus_maximal()).unwrap();
        let shapes: Vec<_> = regs.iter().map(|r| (r.shape(), r.punctures)).collect();
        assert_eq!(shapes, vec![(RegionShape::Triangle, 0), (RegionShape::Monogon, 1)]);
        let regs = regions(&fixtures::punctured_torus_standard()).unwrap();
        assert_eq!(regs.len(), 1);
        assert_eq!((regs[0].cusps, regs[0].punctures), (2, 1));
    }

    #[test]
    fn wrong_genus_is_euler_mismatch() {
        let mut t = fixtures::punctured_torus_maximal();
        t.surface.g = 2;
        assert!(matches!(regions(&t), Err(TrackError::EulerMismatch { .. })));
        t.surface.g = 1;
        t.region_punctures.clear();
        assert!(matches!(regions(&t), Err(TrackError::Punctures(_))));
    }
}
