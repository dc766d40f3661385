//! Combinatorial train tracks with ribbon structure.
//!
//! A switch is a short transverse segment with two sides. Side A leaves to
//! the west and side B to the east; each side lists its half-branch slots
//! from top to bottom. Going counter-clockwise round the switch gives the
//! cyclic order `reverse(B) ++ A`; two consecutive slots on the same side
//! bound a cusp, the two passages top-to-top and bottom-to-bottom are smooth.
//!
//! Complementary regions are the boundary walks of this ribbon graph, and
//! are indexed in canonical order: by the smallest half-branch (in the order
//! switch, side A before side B, top to bottom) on their boundary.

mod io;
mod regions;
mod weights;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::orbifolds::SurfaceSig;

pub use io::TrackDoc;
pub use regions::{boundary_walks, is_maximal, regions, Region, RegionShape};
pub use weights::{
    carried_multicurves, decompose, switch_check, switch_matrix, vertex_cycles, vertex_cycles_capped, MultiCurve,
    WeightVector, DEFAULT_BRANCH_CAP, ENUMERATION_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrackError {
    #[error("ribbon data inconsistent: {0}")]
    RibbonInconsistent(String),
    #[error("weight vector has {got} entries, track has {expected} branches")]
    IndexMismatch { expected: usize, got: usize },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("region Euler sum {computed} differs from chi(surface) = {expected}")]
    EulerMismatch { computed: String, expected: String },
    #[error("puncture assignment: {0}")]
    Punctures(String),
    #[error("weights do not balance at switch {switch}")]
    Unbalanced { switch: usize },
    #[error("invalid track: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("schema: {0}")]
    Schema(String),
}

/// Switch side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    A,
    B,
}

/// A switch with its two ordered sides of slot ids (top to bottom).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Switch {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Switch {
    pub fn new(side_a: Vec<usize>, side_b: Vec<usize>) -> Self {
        Switch { side_a, side_b }
    }

    pub fn valence(&self) -> usize {
        self.side_a.len() + self.side_b.len()
    }
}

/// Where a slot sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotPlace {
    pub switch: usize,
    pub side: Side,
    pub position: usize,
    pub branch: usize,
}

/// One validation failure, with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    OneSided {
        switch: usize,
    },
    LowValence {
        switch: usize,
        valence: usize,
    },
    Ribbon(String),
    ForbiddenRegion {
        region: usize,
        shape: RegionShape,
        punctures: u32,
    },
    Punctures(String),
    Euler {
        computed: String,
        expected: String,
    },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OneSided { switch } => write!(f, "switch {switch} has an empty side"),
            Violation::LowValence { switch, valence } => write!(f, "switch {switch} has valence {valence} < 3"),
            Violation::Ribbon(m) => write!(f, "ribbon: {m}"),
            Violation::ForbiddenRegion {
                region,
                shape,
                punctures,
            } => {
                write!(f, "region {region} is a forbidden {shape} with {punctures} puncture(s)")
            }
            Violation::Punctures(m) => write!(f, "punctures: {m}"),
            Violation::Euler { computed, expected } => {
                write!(f, "Euler sum {computed} != chi(surface) {expected}")
            }
            Violation::Empty => write!(f, "track is empty: the whole surface is one region"),
        }
    }
}

/// A train track: switches, branches joining slots, the surface, and the
/// number of punctures in each complementary region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrainTrack {
    pub switches: Vec<Switch>,
    /// Each branch joins two slot ids.
    pub branches: Vec<(usize, usize)>,
    pub surface: SurfaceSig,
    /// Region index → punctures; missing regions hold none.
    pub region_punctures: BTreeMap<usize, u32>,
}

/// Slot bookkeeping derived from a track.
#[derive(Clone, Debug)]
pub(crate) struct Ribbon {
    /// Slot id → place.
    pub places: HashMap<usize, SlotPlace>,
    /// Half-edges in canonical order (switch, A then B, top to bottom).
    pub half_edges: Vec<usize>,
    pub half_index: HashMap<usize, usize>,
}

impl TrainTrack {
    pub fn new(switches: Vec<Switch>, branches: Vec<(usize, usize)>, surface: SurfaceSig) -> Self {
        TrainTrack {
            switches,
            branches,
            surface,
            region_punctures: BTreeMap::new(),
        }
    }

    pub fn with_punctures(mut self, punctures: &[(usize, u32)]) -> Self {
        self.region_punctures = punctures.iter().copied().filter(|&(_, p)| p > 0).collect();
        self
    }

    /// Punctures every region just enough to make it allowed (two in a
    /// cuspless region, one in a monogon or bigon) and sets the surface to
    /// match the ribbon genus.
    pub fn with_minimal_punctures(mut self) -> Result<Self, TrackError> {
        let walks = regions::boundary_walks(&self)?;
        if walks.is_empty() {
            return Err(TrackError::RibbonInconsistent("empty track".into()));
        }
        let chi_closed = self.switches.len() as i64 - self.branches.len() as i64 + walks.len() as i64;
        if chi_closed > 2 || (2 - chi_closed) % 2 != 0 {
            return Err(TrackError::RibbonInconsistent(format!(
                "closed Euler characteristic {chi_closed}"
            )));
        }
        let mut punctures = BTreeMap::new();
        for r in &walks {
            let p = match r.cusps {
                0 => 2,
                1 | 2 => 1,
                _ => 0,
            };
            if p > 0 {
                punctures.insert(r.index, p);
            }
        }
        self.surface = SurfaceSig::new(((2 - chi_closed) / 2) as u32, punctures.values().sum());
        self.region_punctures = punctures;
        Ok(self)
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.switches.is_empty() && self.branches.is_empty()
    }

    /// Checks that every slot sits in exactly one switch and one branch.
    pub(crate) fn ribbon(&self) -> Result<Ribbon, TrackError> {
        let mut places: HashMap<usize, SlotPlace> = HashMap::new();
        let mut half_edges = Vec::new();
        for (w, sw) in self.switches.iter().enumerate() {
            for (side, list) in [(Side::A, &sw.side_a), (Side::B, &sw.side_b)] {
                for (position, &slot) in list.iter().enumerate() {
                    let place = SlotPlace {
                        switch: w,
                        side,
                        position,
                        branch: usize::MAX,
                    };
                    if places.insert(slot, place).is_some() {
                        return Err(TrackError::RibbonInconsistent(format!(
                            "slot {slot} appears in two switch positions"
                        )));
                    }
                    half_edges.push(slot);
                }
            }
        }
        for (b, &(s, t)) in self.branches.iter().enumerate() {
            if s == t {
                return Err(TrackError::RibbonInconsistent(format!(
                    "branch {b} uses slot {s} at both ends"
                )));
            }
            for slot in [s, t] {
                let place = places
                    .get_mut(&slot)
                    .ok_or_else(|| TrackError::RibbonInconsistent(format!("branch {b} uses unknown slot {slot}")))?;
                if place.branch != usize::MAX {
                    return Err(TrackError::RibbonInconsistent(format!(
                        "slot {slot} used by branches {} and {b}",
                        place.branch
                    )));
                }
                place.branch = b;
            }
        }
        if let Some((slot, _)) = places.iter().find(|(_, p)| p.branch == usize::MAX) {
            return Err(TrackError::RibbonInconsistent(format!(
                "slot {slot} is not used by any branch"
            )));
        }
        let half_index = half_edges.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        Ok(Ribbon {
            places,
            half_edges,
            half_index,
        })
    }

    /// The switch-local checks: both sides nonempty, valence at least 3.
    fn switch_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for (w, sw) in self.switches.iter().enumerate() {
            if sw.side_a.is_empty() || sw.side_b.is_empty() {
                out.push(Violation::OneSided { switch: w });
            }
            if sw.valence() < 3 {
                out.push(Violation::LowValence {
                    switch: w,
                    valence: sw.valence(),
                });
            }
        }
        out
    }

    /// Every structural and region check; all violations are collected.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        if self.is_empty() {
            return Err(vec![Violation::Empty]);
        }
        let mut out = self.switch_violations();
        match regions(self) {
            Ok(regs) => {
                for r in &regs {
                    if r.is_forbidden() {
                        out.push(Violation::ForbiddenRegion {
                            region: r.index,
                            shape: r.shape(),
                            punctures: r.punctures,
                        });
                    }
                }
            }
            Err(TrackError::RibbonInconsistent(m)) => out.push(Violation::Ribbon(m)),
            Err(TrackError::Punctures(m)) => out.push(Violation::Punctures(m)),
            Err(TrackError::EulerMismatch { computed, expected }) => out.push(Violation::Euler { computed, expected }),
            Err(other) => out.push(Violation::Ribbon(other.to_string())),
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), TrackError> {
        self.validate().map_err(TrackError::Invalid)
    }

    /// Renames switches, slots and branches by the given permutations; every
    /// predicate is unchanged by this (region indices may move).
    pub fn relabeled(
        &self,
        switch_perm: &[usize],
        branch_perm: &[usize],
        slot_map: &HashMap<usize, usize>,
    ) -> TrainTrack {
        let mut switches = vec![Switch::new(vec![], vec![]); self.switches.len()];
        for (i, sw) in self.switches.iter().enumerate() {
            switches[switch_perm[i]] = Switch::new(
                sw.side_a.iter().map(|s| slot_map[s]).collect(),
                sw.side_b.iter().map(|s| slot_map[s]).collect(),
            );
        }
        let mut branches = vec![(0, 0); self.branches.len()];
        for (i, &(s, t)) in self.branches.iter().enumerate() {
            branches[branch_perm[i]] = (slot_map[&t], slot_map[&s]);
        }
        TrainTrack {
            switches,
            branches,
            surface: self.surface,
            region_punctures: BTreeMap::new(),
        }
    }
}

/// Σ over regions of `1 - punctures - cusps/2`.
pub fn region_euler_sum(regions: &[Region]) -> BigRational {
    regions.iter().map(Region::index_contribution).sum()
}


/// Hand-built tracks shared by unit tests, integration tests and examples.
pub mod fixtures {
    use super::*;

    /// Maximal track on the once-punctured torus: one switch of valence six,
    /// three branches; region 0 is a triangle, region 1 a once-punctured
    /// monogon.
    pub fn punctured_torus_maximal() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0, 1, 2], vec![3, 4, 5])],
            vec![(0, 4), (1, 2), (3, 5)],
            SurfaceSig::new(1, 1),
        )
        .with_punctures(&[(1, 1)])
    }

    /// The standard track on the once-punctured torus: two trivalent
    /// switches, three branches, complement a once-punctured bigon.
    pub fn punctured_torus_standard() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0], vec![1, 2]), Switch::new(vec![3], vec![4, 5])],
            vec![(0, 3), (1, 4), (2, 5)],
            SurfaceSig::new(1, 1),
        )
        .with_punctures(&[(0, 1)])
    }

    /// A smooth loop at one switch plus a same-side loop that stabilizes it,
    /// on the four-punctured sphere.
    pub fn loop_with_stabilizer() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0, 2, 3], vec![1])],
            vec![(0, 1), (2, 3)],
            SurfaceSig::new(0, 4),
        )
        .with_punctures(&[(0, 2), (1, 1), (2, 1)])
    }

    /// Two same-side loops feeding one branch, which is forced to carry an
    /// even weight.
    pub fn parity() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0, 1], vec![2]), Switch::new(vec![3], vec![4, 5])],
            vec![(0, 1), (2, 3), (4, 5)],
            SurfaceSig::new(0, 0),
        )
        .with_minimal_punctures()
        .expect("parity fixture has consistent ribbon data")
    }

    /// Two switches joined by two parallel branches plus a return branch:
    /// the parallel pair bounds an unpunctured bigon.
    pub fn bigon_pair() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0], vec![1, 2]), Switch::new(vec![3, 4], vec![5])],
            vec![(1, 3), (2, 4), (5, 0)],
            SurfaceSig::new(0, 0),
        )
    }

    /// A switch slot referenced by no branch.
    pub fn broken_ribbon() -> TrainTrack {
        TrainTrack::new(
            vec![Switch::new(vec![0], vec![1, 2])],
            vec![(0, 1)],
            SurfaceSig::new(0, 3),
        )
    }

    /// A random connected track with at most `max_switches` switches, each
    /// side holding one to three slots, punctured minimally. Deterministic in
    /// `seed`.
    pub fn random(seed: u64, max_switches: usize) -> TrainTrack {
        use rand::seq::SliceRandom;
        use rand::{Rng, SeedableRng};

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let k = rng.gen_range(1..=max_switches.max(1));
            let mut sides: Vec<(usize, usize)> = (0..k)
                .map(|_| loop {
                    let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                    if a + b >= 3 {
                        break (a, b);
                    }
                })
                .collect();
            let total: usize = sides.iter().map(|(a, b)| a + b).sum();
            if total % 2 == 1 {
                let w = rng.gen_range(0..k);
                sides[w].1 += 1;
            }
            let mut next = 0;
            let mut owner = Vec::new();
            let switches: Vec<Switch> = sides
                .iter()
                .enumerate()
                .map(|(w, &(a, b))| {
                    let mut take = |m: usize| {
                        let v: Vec<usize> = (next..next + m).collect();
                        next += m;
                        owner.extend(std::iter::repeat_n(w, m));
                        v
                    };
                    let side_a = take(a);
                    Switch::new(side_a, take(b))
                })
                .collect();
            let mut slots: Vec<usize> = (0..next).collect();
            slots.shuffle(&mut rng);
            let branches: Vec<(usize, usize)> = slots.chunks(2).map(|c| (c[0], c[1])).collect();

            let mut comp: Vec<usize> = (0..k).collect();
            fn root(c: &mut [usize], x: usize) -> usize {
                if c[x] == x {
                    x
                } else {
                    let r = root(c, c[x]);
                    c[x] = r;
                    r
                }
            }
            for &(s, t) in &branches {
                let (a, b) = (root(&mut comp, owner[s]), root(&mut comp, owner[t]));
                comp[a] = b;
            }
            let r0 = root(&mut comp, 0);
            if (0..k).any(|w| root(&mut comp, w) != r0) {
                continue;
            }
            let track = TrainTrack::new(switches, branches, SurfaceSig::new(0, 0));
            if let Ok(t) = track.with_minimal_punctures() {
                if t.validate().is_ok() {
                    return t;
                }
            }
        }
    }

    pub fn all_valid() -> Vec<(&'static str, TrainTrack)> {
        vec![
            ("punctured-torus-maximal", punctured_torus_maximal()),
            ("punctured-torus-standard", punctured_torus_standard()),
            ("loop-with-stabilizer", loop_with_stabilizer()),
            ("parity", parity()),
        ]
    }
}
