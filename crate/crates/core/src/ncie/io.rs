//! JSON exchange fixtures.
//!
//! ```json
//! {"base_length": "13",
//!  "bands": [{"width": "8", "attachments": [{"side": "+", "offset": "0"}, {"side": "-", "offset": "5"}]},
//!            {"width": "5", "attachments": [{"side": "+", "offset": "8"}, {"side": "-", "offset": "0"}]}]}
//! ```

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Band, Ncie, NcieError, Orientation, Side};
use crate::scalar::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NcieDoc {
    pub base_length: String,
    pub bands: Vec<BandDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BandDoc {
    pub width: String,
    pub attachments: [AttachmentDoc; 2],
    /// "preserving" or "reversing"; read off the sides when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentDoc {
    pub side: String,
    pub offset: String,
}

fn rational(s: &str) -> Result<BigRational, NcieError> {
    parse_rational(s).ok_or_else(|| NcieError::Schema(format!("not a rational: {s:?}")))
}

fn side(s: &str) -> Result<Side, NcieError> {
    match s {
        "+" => Ok(Side::Upper),
        "-" => Ok(Side::Lower),
        other => Err(NcieError::Schema(format!("side must be \"+\" or \"-\", got {other:?}"))),
    }
}

impl NcieDoc {
    pub fn parse(text: &str) -> Result<Self, NcieError> {
        serde_json::from_str(text).map_err(|e| NcieError::Schema(e.to_string()))
    }

    /// Builds the exchange without validating it.
    pub fn build(&self) -> Result<Ncie<BigRational>, NcieError> {
        let mut bands = Vec::with_capacity(self.bands.len());
        for b in &self.bands {
            let [a0, a1] = &b.attachments;
            let mut band = Band::new(
                rational(&b.width)?,
                (side(&a0.side)?, rational(&a0.offset)?),
                (side(&a1.side)?, rational(&a1.offset)?),
            );
            match b.orientation.as_deref() {
                None => {}
                Some("preserving") => band.orientation = Orientation::Preserving,
                Some("reversing") => band.orientation = Orientation::Reversing,
                Some(other) => return Err(NcieError::Schema(format!("unknown orientation {other:?}"))),
            }
            bands.push(band);
        }
        Ok(Ncie::new(rational(&self.base_length)?, bands))
    }

    pub fn from_ncie(x: &Ncie<BigRational>) -> Self {
        NcieDoc {
            base_length: format_rational(&x.base_length),
            bands: x
                .bands
                .iter()
                .map(|b| BandDoc {
                    width: format_rational(&b.width),
                    attachments: b.attachments.clone().map(|a| AttachmentDoc {
                        side: a.side.tag().to_string(),
                        offset: format_rational(&a.offset),
                    }),
                    orientation: Some(
                        match b.orientation {
                            Orientation::Preserving => "preserving",
                            Orientation::Reversing => "reversing",
                        }
                        .to_string(),
                    ),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("exchange document serialises")
    }
}
