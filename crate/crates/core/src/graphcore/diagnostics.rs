//! Hyperbolicity, quasiconvexity, projection and WPD measurements on finite
//! graphs. Every quantity is exact and reported in half-units.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::graph::{HalfDistance, Reach, Space, SubsetFamily, VertexId, VertexMap};
use super::metric::{distance_field, finite, DistanceField};
use super::GraphError;

/// Vertex-count threshold below which [`Quadruples::auto`] is exhaustive.
pub const EXHAUSTIVE_THRESHOLD: usize = 64;

/// Which quadruples the four-point defect is maximised over.
#[derive(Clone, Debug)]
pub enum Quadruples {
    /// Every 4-subset of the given vertices.
    Exhaustive(Vec<VertexId>),
    Explicit(Vec<[VertexId; 4]>),
    /// `count` quadruples drawn uniformly (with replacement) from `vertices`.
    Sampled {
        vertices: Vec<VertexId>,
        count: usize,
        seed: u64,
    },
}

impl Quadruples {
    /// Exhaustive when there are at most [`EXHAUSTIVE_THRESHOLD`] vertices,
    /// seeded sampling otherwise.
    pub fn auto(vertices: Vec<VertexId>, count: usize, seed: u64) -> Self {
        if vertices.len() <= EXHAUSTIVE_THRESHOLD {
            Quadruples::Exhaustive(vertices)
        } else {
            Quadruples::Sampled { vertices, count, seed }
        }
    }

    pub fn all<S: Space + ?Sized>(space: &S) -> Self {
        Quadruples::Exhaustive((0..space.vertex_count()).map(VertexId).collect())
    }
}

/// Result of a four-point measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourPointDelta {
    /// Largest defect found, in half-units (may be a half-integer).
    pub half_units: Ratio<u32>,
    pub witness: Option<[VertexId; 4]>,
    pub checked: usize,
    pub exhaustive: bool,
}

struct RowCache<'a, S: Space + ?Sized> {
    space: &'a S,
    rows: HashMap<VertexId, DistanceField>,
}

impl<'a, S: Space + ?Sized> RowCache<'a, S> {
    fn new(space: &'a S) -> Self {
        RowCache {
            space,
            rows: HashMap::new(),
        }
    }

    fn d(&mut self, a: VertexId, b: VertexId) -> Result<u32, GraphError> {
        if a == b {
            return Ok(0);
        }
        let (src, dst) = if self.rows.contains_key(&b) { (b, a) } else { (a, b) };
        let space = self.space;
        let row = self
            .rows
            .entry(src)
            .or_insert_with(|| distance_field(space, &[src], None));
        finite(row, dst)
    }
}

/// Four-point defect of one quadruple: largest pair-sum minus the median
/// pair-sum. Halving it gives the Gromov constant contribution.
pub fn four_point_defect(d: impl Fn(usize, usize) -> u32) -> u32 {
    let mut sums = [d(0, 1) + d(2, 3), d(0, 2) + d(1, 3), d(0, 3) + d(1, 2)];
    sums.sort_unstable();
    sums[2] - sums[1]
}

/// Maximum four-point defect over the requested quadruples.
pub fn delta_four_point<S: Space + ?Sized>(space: &S, quadruples: &Quadruples) -> Result<FourPointDelta, GraphError> {
    let mut cache = RowCache::new(space);
    let mut best: u32 = 0;
    let mut witness = None;
    let mut checked = 0usize;

    let mut visit = |q: [VertexId; 4], cache: &mut RowCache<'_, S>| -> Result<(), GraphError> {
        let mut table = [[0u32; 4]; 4];
        for i in 0..4 {
            for j in (i + 1)..4 {
                let v = cache.d(q[i], q[j])?;
                table[i][j] = v;
                table[j][i] = v;
            }
        }
        let defect = four_point_defect(|i, j| table[i][j]);
        checked += 1;
        if defect > best || witness.is_none() {
            best = best.max(defect);
            witness = Some(q);
        }
        Ok(())
    };

    let exhaustive = match quadruples {
        Quadruples::Exhaustive(vs) => {
            for v in vs {
                space.check(*v)?;
            }
            // Fill full rows first so the inner loop is table lookups only.
            for &v in vs {
                let _ = cache.d(v, vs[0])?;
            }
            let n = vs.len();
            for a in 0..n {
                for b in (a + 1)..n {
                    for c in (b + 1)..n {
                        for e in (c + 1)..n {
                            visit([vs[a], vs[b], vs[c], vs[e]], &mut cache)?;
                        }
                    }
                }
            }
            true
        }
        Quadruples::Explicit(list) => {
            for q in list {
                for v in q {
                    space.check(*v)?;
                }
                visit(*q, &mut cache)?;
            }
            false
        }
        Quadruples::Sampled { vertices, count, seed } => {
            if vertices.is_empty() {
                return Err(GraphError::EmptyInput("sampling vertex set"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*count {
                let mut q = [VertexId(0); 4];
                for slot in q.iter_mut() {
                    *slot = *vertices.choose(&mut rng).expect("nonempty");
                }
                visit(q, &mut cache)?;
            }
            false
        }
    };

    Ok(FourPointDelta {
        half_units: Ratio::new(best, 2),
        witness,
        checked,
        exhaustive,
    })
}

/// Smallest `K` (half-units) such that every vertex on every geodesic
/// between two members of `subset` lies within `K` of `subset`.
///
/// A vertex lies on some geodesic from `u` to `v` exactly when
/// `d(u,w) + d(w,v) = d(u,v)`, so the union of all geodesics is read off two
/// distance fields without listing paths.
pub fn quasiconvexity_constant<S: Space + ?Sized>(
    space: &S,
    subset: &[VertexId],
    radius_cap: u32,
) -> Result<HalfDistance, GraphError> {
    if subset.is_empty() {
        return Err(GraphError::EmptyInput("subset"));
    }
    for v in subset {
        space.check(*v)?;
    }
    let to_subset = distance_field(space, subset, None);
    let fields: Vec<DistanceField> = subset
        .iter()
        .map(|&u| distance_field(space, &[u], Some(radius_cap)))
        .collect();
    let n = space.vertex_count();
    let mut k = 0u32;
    for i in 0..subset.len() {
        for j in (i + 1)..subset.len() {
            let duv = match fields[i].reach(subset[j]) {
                Reach::At(d) => d.0,
                Reach::Unreachable => return Err(GraphError::DisconnectedInput),
                Reach::CapExceeded => {
                    return Err(GraphError::CapExceeded(format!(
                        "geodesics between {} and {} exceed radius cap {radius_cap}",
                        space.vertex_name(subset[i]),
                        space.vertex_name(subset[j])
                    )))
                }
            };
            for w in 0..n {
                let (Some(a), Some(b)) = (fields[i].as_slice()[w], fields[j].as_slice()[w]) else {
                    continue;
                };
                if a + b == duv {
                    let dw = to_subset.get(VertexId(w)).expect("geodesic vertex reaches subset");
                    k = k.max(dw);
                }
            }
        }
    }
    Ok(HalfDistance(k))
}

/// All target vertices realising the minimum distance to some source vertex
/// (union over sources of the per-source tie sets), sorted.
pub fn nearest_point_projection<S: Space + ?Sized>(
    space: &S,
    target: &[VertexId],
    source: &[VertexId],
) -> Result<Vec<VertexId>, GraphError> {
    if target.is_empty() || source.is_empty() {
        return Err(GraphError::EmptyInput("projection input"));
    }
    for v in target.iter().chain(source) {
        space.check(*v)?;
    }
    let mut out = BTreeSet::new();
    for &s in source {
        let field = distance_field(space, &[s], None);
        let mut best: Option<u32> = None;
        let mut ties = Vec::new();
        for &t in target {
            let Some(d) = field.get(t) else { continue };
            match best {
                Some(b) if d > b => {}
                Some(b) if d == b => ties.push(t),
                _ => {
                    best = Some(d);
                    ties.clear();
                    ties.push(t);
                }
            }
        }
        if best.is_none() {
            return Err(GraphError::DisconnectedInput);
        }
        out.extend(ties);
    }
    Ok(out.into_iter().collect())
}

/// Diameter of a vertex set, in half-units.
pub fn diameter<S: Space + ?Sized>(space: &S, set: &[VertexId]) -> Result<HalfDistance, GraphError> {
    let mut diam = 0u32;
    for (i, &a) in set.iter().enumerate() {
        let field = distance_field(space, &[a], None);
        for &b in &set[i + 1..] {
            diam = diam.max(finite(&field, b)?);
        }
    }
    Ok(HalfDistance(diam))
}

/// Diameter of the nearest-point projection of `subset` onto `axis`.
pub fn projection_diameter<S: Space + ?Sized>(
    space: &S,
    axis: &[VertexId],
    subset: &[VertexId],
) -> Result<HalfDistance, GraphError> {
    let proj = nearest_point_projection(space, axis, subset)?;
    diameter(space, &proj)
}

/// Outcome of [`wpd_census`] for one power `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpdCensus {
    pub power: usize,
    pub count: usize,
    /// Indices into the candidate list.
    pub witnesses: Vec<usize>,
}

/// Counts candidates `h` with `d(x, hx) < r` and `d(g^N x, h g^N x) < r`.
///
/// Every candidate and the mover are validated first. An image that leaves
/// the loaded graph is reported as `CapExceeded`.
pub fn wpd_census<S: Space + ?Sized>(
    space: &S,
    candidates: &[VertexMap],
    mover: &VertexMap,
    x: VertexId,
    r: u32,
    power: usize,
) -> Result<WpdCensus, GraphError> {
    space.check(x)?;
    mover.validate(space)?;
    for h in candidates {
        h.validate(space)?;
    }
    wpd_census_prevalidated(space, candidates, mover, x, r, power)
}

/// [`wpd_census`] for maps already validated against `space`.
pub fn wpd_census_prevalidated<S: Space + ?Sized>(
    space: &S,
    candidates: &[VertexMap],
    mover: &VertexMap,
    x: VertexId,
    r: u32,
    power: usize,
) -> Result<WpdCensus, GraphError> {
    let left = |what: String| GraphError::CapExceeded(format!("{what} leaves the loaded graph"));
    let gx = mover
        .iterate(x, power)
        .ok_or_else(|| left(format!("{}^{power} x", mover.label)))?;
    let from_x = distance_field(space, &[x], None);
    let from_gx = distance_field(space, &[gx], None);
    let mut witnesses = Vec::new();
    for (i, h) in candidates.iter().enumerate() {
        let hx = h.image(x).ok_or_else(|| left(format!("{} x", h.label)))?;
        let hgx = h.image(gx).ok_or_else(|| left(format!("{} g^N x", h.label)))?;
        let near = |field: &DistanceField, v: VertexId| -> Result<bool, GraphError> {
            match field.reach(v) {
                Reach::At(d) => Ok(d.0 < r),
                Reach::Unreachable => Ok(false),
                Reach::CapExceeded => unreachable!("uncapped search"),
            }
        };
        if near(&from_x, hx)? && near(&from_gx, hgx)? {
            witnesses.push(i);
        }
    }
    Ok(WpdCensus {
        power,
        count: witnesses.len(),
        witnesses,
    })
}

/// Number of distinct (as sets) family members at distance `< d0` from both
/// `a` and `b`.
pub fn count_parallel_translates<S: Space + ?Sized>(
    space: &S,
    fam: &SubsetFamily,
    a: VertexId,
    b: VertexId,
    d0: u32,
) -> Result<usize, GraphError> {
    space.check(a)?;
    space.check(b)?;
    let from_a = distance_field(space, &[a], None);
    let from_b = distance_field(space, &[b], None);
    let close = |field: &DistanceField, set: &[VertexId]| {
        set.iter().filter_map(|&v| field.get(v)).min().is_some_and(|d| d < d0)
    };
    let mut distinct: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for m in fam.members() {
        for v in &m.vertices {
            space.check(*v)?;
        }
        if close(&from_a, &m.vertices) && close(&from_b, &m.vertices) {
            distinct.insert(m.as_set());
        }
    }
    Ok(distinct.len())
}

/// `(n, d(x, g^n x))` for `n = 1..=n_max`.
pub fn translation_growth<S: Space + ?Sized>(
    space: &S,
    mover: &VertexMap,
    x: VertexId,
    n_max: usize,
) -> Result<Vec<(usize, HalfDistance)>, GraphError> {
    space.check(x)?;
    mover.validate(space)?;
    let field = distance_field(space, &[x], None);
    let mut out = Vec::with_capacity(n_max);
    let mut cur = x;
    for n in 1..=n_max {
        cur = mover.image(cur).ok_or_else(|| {
            GraphError::CapExceeded(format!("orbit point {n} of {} leaves the loaded graph", mover.label))
        })?;
        out.push((n, HalfDistance(finite(&field, cur)?)));
    }
    Ok(out)
}
