//! Non-classical interval exchanges with exact widths.
//!
//! The base interval `[0, δ]` has an upper side `+` and a lower side `-`.
//! Each band has a width and two attachments. A band with attachments on
//! opposite sides glues them by translation and preserves orientation; a band
//! with both attachments on one side glues them by a flip.

mod io;
mod rauzy;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::traintrack::{Switch, TrainTrack, WeightVector};

pub use io::{AttachmentDoc, BandDoc, NcieDoc};
pub use rauzy::{
    maximally_filling_certificate, passage_product, ratio_lower_bound, rauzy_step, rauzy_until, twice_cover_index,
    ElementaryUpdate, Halted, InductionTrace, PassageMatrix, StepRecord, Stop, DEFAULT_STEP_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Side::Upper => "+",
            Side::Lower => "-",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Preserving,
    Reversing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment<T> {
    pub side: Side,
    pub offset: T,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Band<T> {
    pub width: T,
    pub attachments: [Attachment<T>; 2],
    pub orientation: Orientation,
}

impl<T: Scalar> Band<T> {
    /// A band with its orientation read off its sides.
    pub fn new(width: T, first: (Side, T), second: (Side, T)) -> Self {
        let orientation = if first.0 == second.0 {
            Orientation::Reversing
        } else {
            Orientation::Preserving
        };
        Band {
            width,
            attachments: [
                Attachment {
                    side: first.0,
                    offset: first.1,
                },
                Attachment {
                    side: second.0,
                    offset: second.1,
                },
            ],
            orientation,
        }
    }

    fn expected_orientation(&self) -> Orientation {
        if self.attachments[0].side == self.attachments[1].side {
            Orientation::Reversing
        } else {
            Orientation::Preserving
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NonpositiveLength,
    NonpositiveWidth { band: usize },
    OutOfRange { band: usize, side: Side },
    OverlappingAttachments { side: Side, bands: (usize, usize) },
    CoverageGap { side: Side, at: String },
    WidthMismatch { side: Side, sum: String, base: String },
    OrientationInconsistent { band: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonpositiveLength => write!(f, "base length is not positive"),
            Violation::NonpositiveWidth { band } => write!(f, "band {band} has nonpositive width"),
            Violation::OutOfRange { band, side } => write!(f, "band {band} leaves the base on side {side}"),
            Violation::OverlappingAttachments { side, bands } => {
                write!(f, "bands {} and {} overlap on side {side}", bands.0, bands.1)
            }
            Violation::CoverageGap { side, at } => write!(f, "side {side} is uncovered at {at}"),
            Violation::WidthMismatch { side, sum, base } => {
                write!(f, "side {side} widths sum to {sum}, base length is {base}")
            }
            Violation::OrientationInconsistent { band } => {
                write!(f, "band {band} orientation flag disagrees with its sides")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcieError {
    #[error("invalid exchange: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("saddle connection: terminal bands {upper} and {lower} have equal width")]
    SaddleConnection { upper: usize, lower: usize },
    #[error("band {0} is terminal on both sides")]
    IllFormedInduction(usize),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("input must be positive: {0}")]
    NonpositiveInput(String),
    #[error("train track: {0}")]
    Track(String),
    #[error("schema: {0}")]
    Schema(String),
}

/// A non-classical interval exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ncie<T> {
    pub base_length: T,
    pub bands: Vec<Band<T>>,
}

impl<T: Scalar> Ncie<T> {
    pub fn new(base_length: T, bands: Vec<Band<T>>) -> Self {
        Ncie { base_length, bands }
    }

    /// The two-band rotation: upper side `[a, b]`, lower side `[b, a]`.
    pub fn rotation(a: T, b: T) -> Self {
        let base = a.clone() + b.clone();
        Ncie::new(
            base,
            vec![
                Band::new(a.clone(), (Side::Upper, T::zero()), (Side::Lower, b.clone())),
                Band::new(b, (Side::Upper, a), (Side::Lower, T::zero())),
            ],
        )
    }

    pub fn widths(&self) -> Vec<T> {
        self.bands.iter().map(|b| b.width.clone()).collect()
    }

    /// (band, attachment index) pairs on one side, left to right.
    pub fn side_order(&self, side: Side) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .bands
            .iter()
            .enumerate()
            .flat_map(|(i, b)| {
                b.attachments
                    .iter()
                    .enumerate()
                    .filter(move |(_, a)| a.side == side)
                    .map(move |(j, _)| (i, j))
            })
            .collect();
        v.sort_by(|x, y| {
            let ox = &self.bands[x.0].attachments[x.1].offset;
            let oy = &self.bands[y.0].attachments[y.1].offset;
            ox.partial_cmp(oy).unwrap_or(std::cmp::Ordering::Equal).then(x.cmp(y))
        });
        v
    }

    /// Every violated invariant.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        if !self.base_length.is_positive_strict() {
            out.push(Violation::NonpositiveLength);
        }
        for (i, b) in self.bands.iter().enumerate() {
            if !b.width.is_positive_strict() {
                out.push(Violation::NonpositiveWidth { band: i });
            }
            if b.orientation != b.expected_orientation() {
                out.push(Violation::OrientationInconsistent { band: i });
            }
            for a in &b.attachments {
                if !a.offset.is_nonnegative() || a.offset.clone() + b.width.clone() > self.base_length {
                    out.push(Violation::OutOfRange { band: i, side: a.side });
                }
            }
        }
        for side in [Side::Upper, Side::Lower] {
            let order = self.side_order(side);
            let mut sum = T::zero();
            let mut cursor = T::zero();
            let mut prev: Option<usize> = None;
            for &(i, j) in &order {
                let b = &self.bands[i];
                let start = b.attachments[j].offset.clone();
                if start < cursor {
                    out.push(Violation::OverlappingAttachments {
                        side,
                        bands: (prev.unwrap_or(i), i),
                    });
                } else if start > cursor {
                    out.push(Violation::CoverageGap {
                        side,
                        at: cursor.to_string(),
                    });
                }
                let end = start + b.width.clone();
                if end > cursor {
                    cursor = end;
                }
                sum = sum + b.width.clone();
                prev = Some(i);
            }
            if cursor < self.base_length {
                out.push(Violation::CoverageGap {
                    side,
                    at: cursor.to_string(),
                });
            }
            if sum != self.base_length {
                out.push(Violation::WidthMismatch {
                    side,
                    sum: sum.to_string(),
                    base: self.base_length.to_string(),
                });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), NcieError> {
        self.validate().map_err(NcieError::Invalid)
    }

    /// Collapses the base to one switch and each band to a branch. Side A
    /// lists the upper attachments left to right, side B the lower ones;
    /// band `i` joins slots `2i` and `2i + 1`. Regions are punctured just
    /// enough to be allowed. The widths come back as the weight system.
    pub fn to_train_track(&self) -> Result<(TrainTrack, WeightVector<T>), NcieError> {
        self.ensure_valid()?;
        let slots = |side| -> Vec<usize> { self.side_order(side).into_iter().map(|(i, j)| 2 * i + j).collect() };
        let t = TrainTrack::new(
            vec![Switch::new(slots(Side::Upper), slots(Side::Lower))],
            (0..self.bands.len()).map(|i| (2 * i, 2 * i + 1)).collect(),
            crate::orbifolds::SurfaceSig::new(0, 0),
        )
        .with_minimal_punctures()
        .map_err(|e| NcieError::Track(e.to_string()))?;
        Ok((t, WeightVector(self.widths())))
    }
}

impl Ncie<BigRational> {
    pub fn parse_json(text: &str) -> Result<Self, NcieError> {
        NcieDoc::parse(text)?.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::traintrack::switch_check;

    #[test]
    fn rotation_is_valid() {
        let x = Ncie::rotation(8i64, 5);
        assert_eq!(x.validate(), Ok(()));
        assert_eq!(x.side_order(Side::Upper), vec![(0, 0), (1, 0)]);
        assert_eq!(x.side_order(Side::Lower), vec![(1, 1), (0, 1)]);
    }

    #[test]
    fn width_mismatch_detected() {
        let mut x = Ncie::rotation(8i64, 5);
        x.bands[1].width = 4;
        x.bands[0].attachments[1].offset = 4;
        let errs = x.validate().unwrap_err();
        assert!(
            errs.iter().any(|e| matches!(e, Violation::WidthMismatch { .. })),
            "{errs:?}"
        );
    }

    #[test]
    fn orientation_flag_checked() {
        let mut b = Band::new(3i64, (Side::Upper, 0), (Side::Upper, 3));
        assert_eq!(b.orientation, Orientation::Reversing);
        b.orientation = Orientation::Preserving;
        let x = Ncie::new(6, vec![b, Band::new(6, (Side::Lower, 0), (Side::Lower, 0))]);
        let errs = x.validate().unwrap_err();
        assert!(errs.contains(&Violation::OrientationInconsistent { band: 0 }));
        assert!(errs
            .iter()
            .any(|e| matches!(e, Violation::OverlappingAttachments { .. })));
    }

    #[test]
    fn rotation_collapses_to_balanced_track() {
        let x = Ncie::rotation(8i64, 5);
        let (t, w) = x.to_train_track().unwrap();
        assert_eq!(t.switches.len(), 1);
        assert!(t.switches[0].valence() >= 3);
        assert!(switch_check(&t, &w).unwrap());
        assert_eq!(t.validate(), Ok(()));
    }
}
