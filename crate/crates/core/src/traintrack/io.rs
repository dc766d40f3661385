//! JSON track fixtures.
//!
//! ```json
//! {"switches": [{"sideA": [0, 1, 2], "sideB": [3, 4, 5]}],
//!  "branches": [[0, 3], [1, 4], [2, 5]],
//!  "surface": {"g": 1, "n": 1},
//!  "region_punctures": {"0": 1}}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Switch, TrackError, TrainTrack};
use crate::orbifolds::SurfaceSig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackDoc {
    pub switches: Vec<SwitchDoc>,
    pub branches: Vec<[usize; 2]>,
    pub surface: SurfaceDoc,
    #[serde(default)]
    pub region_punctures: BTreeMap<usize, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwitchDoc {
    #[serde(rename = "sideA")]
    pub side_a: Vec<usize>,
    #[serde(rename = "sideB")]
    pub side_b: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceDoc {
    pub g: u32,
    pub n: u32,
}

impl TrackDoc {
    pub fn parse(text: &str) -> Result<Self, TrackError> {
        serde_json::from_str(text).map_err(|e| TrackError::Schema(e.to_string()))
    }

    pub fn build(&self) -> TrainTrack {
        TrainTrack {
            switches: self
                .switches
                .iter()
                .map(|s| Switch::new(s.side_a.clone(), s.side_b.clone()))
                .collect(),
            branches: self.branches.iter().map(|&[a, b]| (a, b)).collect(),
            surface: SurfaceSig::new(self.surface.g, self.surface.n),
            region_punctures: self
                .region_punctures
                .iter()
                .filter(|(_, &p)| p > 0)
                .map(|(&r, &p)| (r, p))
                .collect(),
        }
    }

    pub fn from_track(t: &TrainTrack) -> Self {
        TrackDoc {
            switches: t
                .switches
                .iter()
                .map(|s| SwitchDoc {
                    side_a: s.side_a.clone(),
                    side_b: s.side_b.clone(),
                })
                .collect(),
            branches: t.branches.iter().map(|&(a, b)| [a, b]).collect(),
            surface: SurfaceDoc {
                g: t.surface.g,
                n: t.surface.n,
            },
            region_punctures: t.region_punctures.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("track document serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"switches":[{"sideA":[0,1,2],"sideB":[3,4,5]}],
            "branches":[[0,3],[1,4],[2,5]],"surface":{"g":1,"n":1},"region_punctures":{"0":1}}"#;
        let doc = TrackDoc::parse(text).unwrap();
        let t = doc.build();
        assert_eq!(t.branches.len(), 3);
        assert_eq!(TrackDoc::from_track(&t), doc);
        assert!(matches!(
            TrackDoc::parse(r#"{"switches":[]}"#),
            Err(TrackError::Schema(_))
        ));
    }
}
