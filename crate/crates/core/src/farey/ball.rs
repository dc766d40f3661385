//! Height-truncated Farey balls.

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use super::{FareyError, FareyMapClass, Slope};
use crate::graphcore::{Graph, GraphDoc, VertexId, VertexMap};

/// Largest radius `farey_ball` accepts.
pub const MAX_RADIUS: u32 = 8;
/// Default height bound for generated balls.
pub const DEFAULT_HEIGHT_CAP: i64 = 16;

/// `(r, s)` with `p s - q r = 1`.
fn unit_partner(a: Slope) -> (i64, i64) {
    let e = a.p().extended_gcd(&a.q());
    // p x + q y = g = ±1
    let (x, y) = if e.gcd < 0 { (-e.x, -e.y) } else { (e.x, e.y) };
    (-y, x)
}

/// Integers `k` with `|base + k step| <= h`.
fn k_range(base: i64, step: i64, h: i64) -> Option<(i64, i64)> {
    if step == 0 {
        return (base.abs() <= h).then_some((i64::MIN, i64::MAX));
    }
    let (lo, hi) = if step > 0 {
        (
            Integer::div_ceil(&(-h - base), &step),
            Integer::div_floor(&(h - base), &step),
        )
    } else {
        (
            Integer::div_ceil(&(h - base), &step),
            Integer::div_floor(&(-h - base), &step),
        )
    };
    (lo <= hi).then_some((lo, hi))
}

/// Every Farey neighbour of `a` of height at most `h`, sorted.
pub fn neighbors_within(a: Slope, h: i64) -> Vec<Slope> {
    let (r0, s0) = unit_partner(a);
    let (Some((l1, h1)), Some((l2, h2))) = (k_range(r0, a.p(), h), k_range(s0, a.q(), h)) else {
        return Vec::new();
    };
    let (lo, hi) = (l1.max(l2), h1.min(h2));
    let mut out: Vec<Slope> = (lo..=hi)
        .map(|k| Slope::canonical(r0 + k * a.p(), s0 + k * a.q()))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// The slopes within `radius` of a centre, among slopes of height at most
/// `height_cap`, as a graph whose vertices are named `p/q`.
#[derive(Clone, Debug)]
pub struct FareyBall {
    pub center: Slope,
    pub radius: u32,
    pub height_cap: i64,
    slopes: Vec<Slope>,
    depth: Vec<u32>,
    index: HashMap<Slope, VertexId>,
    graph: Graph,
}

/// Breadth-first generation; vertices are ordered by distance from the
/// centre, then height, then denominator, then numerator.
pub fn farey_ball(center: Slope, radius: u32, height_cap: i64) -> Result<FareyBall, FareyError> {
    if radius > MAX_RADIUS {
        return Err(FareyError::CapExceeded(format!("radius {radius} exceeds {MAX_RADIUS}")));
    }
    if center.height() > height_cap {
        return Err(FareyError::CapExceeded(format!(
            "centre {center} has height above {height_cap}"
        )));
    }
    let mut dist: HashMap<Slope, u32> = HashMap::from([(center, 0)]);
    let mut queue = VecDeque::from([center]);
    while let Some(a) = queue.pop_front() {
        let d = dist[&a];
        if d == radius {
            continue;
        }
        for b in neighbors_within(a, height_cap) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(b) {
                e.insert(d + 1);
                queue.push_back(b);
            }
        }
    }
    let mut slopes: Vec<Slope> = dist.keys().copied().collect();
    slopes.sort_by_key(|s| (dist[s], s.height(), s.q(), s.p()));
    let depth = slopes.iter().map(|s| dist[s]).collect();
    let index: HashMap<Slope, VertexId> = slopes.iter().enumerate().map(|(i, &s)| (s, VertexId(i))).collect();
    let mut graph = Graph::with_vertices(slopes.iter().map(|s| s.to_string())).expect("slopes are distinct");
    for (i, &a) in slopes.iter().enumerate() {
        for b in neighbors_within(a, height_cap) {
            if let Some(&j) = index.get(&b) {
                if i < j.0 {
                    graph.add_edge(VertexId(i), j).expect("simple Farey edge");
                }
            }
        }
    }
    Ok(FareyBall {
        center,
        radius,
        height_cap,
        slopes,
        depth,
        index,
        graph,
    })
}

impl FareyBall {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn slopes(&self) -> &[Slope] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn id(&self, s: Slope) -> Option<VertexId> {
        self.index.get(&s).copied()
    }

    pub fn slope(&self, v: VertexId) -> Slope {
        self.slopes[v.0]
    }

    pub fn contains(&self, s: Slope) -> bool {
        self.index.contains_key(&s)
    }

    /// Exact Farey distance from the centre, for members.
    pub fn depth(&self, s: Slope) -> Option<u32> {
        self.id(s).map(|v| self.depth[v.0])
    }

    /// Members at exactly distance `k` from the centre.
    pub fn sphere(&self, k: u32) -> impl Iterator<Item = Slope> + '_ {
        self.slopes
            .iter()
            .zip(&self.depth)
            .filter(move |(_, &d)| d == k)
            .map(|(&s, _)| s)
    }

    /// The action of a map class; slopes sent outside the ball have no image.
    pub fn vertex_map(&self, m: &FareyMapClass<i64>, label: impl Into<String>) -> VertexMap {
        let forward = self
            .slopes
            .iter()
            .map(|&s| m.act(s).ok().and_then(|t| self.id(t)))
            .collect();
        VertexMap::from_images(label, forward)
    }

    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc::from_graph(&self.graph, None)
    }
}

/// Exact Farey distance, by search among slopes no higher than the two ends.
pub fn farey_distance(a: Slope, b: Slope) -> u32 {
    let h = a.height().max(b.height());
    let mut dist: HashMap<Slope, u32> = HashMap::from([(a, 0)]);
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            return dist[&x];
        }
        let d = dist[&x];
        for y in neighbors_within(x, h) {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(d + 1);
                queue.push_back(y);
            }
        }
    }
    unreachable!("the truncated Farey graph is connected")
}
