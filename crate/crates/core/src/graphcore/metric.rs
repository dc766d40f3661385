//! Exact shortest paths in half-units.
//!
//! Arc lengths are tiny positive integers (1 for cone spokes, 2 for graph
//! edges), so a bucket queue gives exact Dijkstra in linear time.

use std::collections::VecDeque;

use super::graph::{HalfDistance, Reach, Space, VertexId};
use super::GraphError;

/// Distances from a set of sources.
#[derive(Clone, Debug)]
pub struct DistanceField {
    dist: Vec<Option<u32>>,
    /// Set when the search stopped at the cap with unexplored vertices left.
    pub truncated: bool,
}

impl DistanceField {
    pub fn get(&self, v: VertexId) -> Option<u32> {
        self.dist[v.0]
    }

    /// Distance to `v`, telling an unreachable vertex from one past the cap.
    pub fn reach(&self, v: VertexId) -> Reach {
        match self.dist[v.0] {
            Some(d) => Reach::At(HalfDistance(d)),
            None if self.truncated => Reach::CapExceeded,
            None => Reach::Unreachable,
        }
    }

    pub fn as_slice(&self) -> &[Option<u32>] {
        &self.dist
    }
}

/// Multi-source shortest paths, exploring no further than `cap` half-units.
pub fn distance_field<S: Space + ?Sized>(space: &S, sources: &[VertexId], cap: Option<u32>) -> DistanceField {
    let n = space.vertex_count();
    let mut dist: Vec<Option<u32>> = vec![None; n];
    let mut done = vec![false; n];
    let mut buckets: VecDeque<Vec<VertexId>> = VecDeque::new();
    let mut base = 0u32;
    let mut truncated = false;

    let push = |buckets: &mut VecDeque<Vec<VertexId>>, base: u32, d: u32, v: VertexId| {
        let slot = (d - base) as usize;
        while buckets.len() <= slot {
            buckets.push_back(Vec::new());
        }
        buckets[slot].push(v);
    };

    for &s in sources {
        if dist[s.0].is_none() {
            dist[s.0] = Some(0);
            push(&mut buckets, base, 0, s);
        }
    }

    while let Some(bucket) = buckets.pop_front() {
        let here = base;
        base += 1;
        for v in bucket {
            if done[v.0] || dist[v.0] != Some(here) {
                continue;
            }
            done[v.0] = true;
            for &(w, len) in space.arcs(v) {
                let nd = here + len;
                if cap.is_some_and(|c| nd > c) {
                    if dist[w.0].is_none() {
                        truncated = true;
                    }
                    continue;
                }
                if dist[w.0].is_none_or(|old| nd < old) {
                    dist[w.0] = Some(nd);
                    push(&mut buckets, base, nd, w);
                }
            }
        }
    }
    DistanceField { dist, truncated }
}

/// Exact distance between two vertices, in half-units.
pub fn distance<S: Space + ?Sized>(
    space: &S,
    u: VertexId,
    v: VertexId,
    radius_cap: Option<u32>,
) -> Result<Reach, GraphError> {
    space.check(u)?;
    space.check(v)?;
    if u == v {
        return Ok(Reach::At(HalfDistance::ZERO));
    }
    Ok(distance_field(space, &[u], radius_cap).reach(v))
}

/// Distance that must exist: unreachable pairs become `DisconnectedInput`.
pub(crate) fn finite(field: &DistanceField, v: VertexId) -> Result<u32, GraphError> {
    match field.reach(v) {
        Reach::At(d) => Ok(d.0),
        Reach::Unreachable => Err(GraphError::DisconnectedInput),
        Reach::CapExceeded => Err(GraphError::CapExceeded("distance query".to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{electrify, Graph, SubsetFamily};

    #[test]
    fn path_and_self_distance() {
        let g = Graph::path(5);
        assert_eq!(
            distance(&g, VertexId(0), VertexId(0), None).unwrap(),
            Reach::At(HalfDistance(0))
        );
        assert_eq!(
            distance(&g, VertexId(0), VertexId(4), None).unwrap(),
            Reach::At(HalfDistance(8))
        );
    }

    #[test]
    fn cap_versus_unreachable() {
        let g = Graph::from_indices(4, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            distance(&g, VertexId(0), VertexId(2), Some(2)).unwrap(),
            Reach::CapExceeded
        );
        assert_eq!(
            distance(&g, VertexId(0), VertexId(3), None).unwrap(),
            Reach::Unreachable
        );
        assert_eq!(
            distance(&g, VertexId(0), VertexId(3), Some(100)).unwrap(),
            Reach::Unreachable
        );
        assert!(distance(&g, VertexId(0), VertexId(9), None).is_err());
    }

    #[test]
    fn coned_path_collapses() {
        let g = Graph::path(5);
        let fam = SubsetFamily::from_names(&g, &[vec!["v0", "v1", "v2", "v3", "v4"]]).unwrap();
        let z = electrify(&g, &fam).unwrap();
        assert_eq!(
            distance(&z, VertexId(0), VertexId(4), None).unwrap(),
            Reach::At(HalfDistance(2))
        );
    }
}
