//! Finite graphs, electrification along subset families, and exact metric
//! diagnostics (four-point hyperbolicity, quasiconvexity, nearest-point
//! projections, WPD censuses, orbit growth).
//!
//! All lengths are integers counting half-units: graph edges have length 2,
//! cone edges length 1.

mod diagnostics;
mod electrify;
mod graph;
mod io;
mod metric;

use thiserror::Error;

pub use diagnostics::{
    count_parallel_translates, delta_four_point, diameter, four_point_defect, nearest_point_projection,
    projection_diameter, quasiconvexity_constant, translation_growth, wpd_census, wpd_census_prevalidated,
    FourPointDelta, Quadruples, WpdCensus, EXHAUSTIVE_THRESHOLD,
};
pub use electrify::{electrify, ElectrifiedGraph};
pub use graph::{Graph, HalfDistance, Member, Reach, Space, SubsetFamily, VertexId, VertexMap};
pub use io::{FamilyDoc, GraphDoc};
pub use metric::{distance, distance_field, DistanceField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("family member {0} is empty")]
    EmptyMember(usize),
    #[error("{0} is empty")]
    EmptyInput(&'static str),
    #[error("map {map} is not an automorphism: {reason}")]
    NotAutomorphism { map: String, reason: String },
    #[error("map {map} does not permute the family (member {member})")]
    NotEquivariant { map: String, member: String },
    #[error("input vertices lie in different components")]
    DisconnectedInput,
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("schema: {0}")]
    Schema(String),
}
