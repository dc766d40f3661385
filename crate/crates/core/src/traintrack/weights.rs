//! Weight systems, strand decomposition and vertex cycles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Side, TrackError, TrainTrack};
use crate::scalar::Scalar;

/// Most branches `vertex_cycles` will search.
pub const DEFAULT_BRANCH_CAP: usize = 20;
/// Most search nodes a weight enumeration may visit.
pub const ENUMERATION_CAP: u64 = 20_000_000;

/// One weight per branch.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector<T>(pub Vec<T>);

impl<T: Scalar> WeightVector<T> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(Scalar::is_nonnegative)
    }
}

impl<T> From<Vec<T>> for WeightVector<T> {
    fn from(v: Vec<T>) -> Self {
        WeightVector(v)
    }
}

/// A carried multicurve: the weights and one branch-traversal count vector
/// per component. Components are sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiCurve {
    pub weights: Vec<u64>,
    pub components: Vec<Vec<u64>>,
}

impl MultiCurve {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }
}

/// Rows are switches, columns branches: +1 per slot on side A, -1 per slot
/// on side B.
pub fn switch_matrix(t: &TrainTrack) -> Result<Vec<Vec<i64>>, TrackError> {
    let ribbon = t.ribbon()?;
    let mut m = vec![vec![0i64; t.branches.len()]; t.switches.len()];
    for place in ribbon.places.values() {
        m[place.switch][place.branch] += match place.side {
            Side::A => 1,
            Side::B => -1,
        };
    }
    Ok(m)
}

/// Whether every switch balances exactly.
pub fn switch_check<T: Scalar>(t: &TrainTrack, w: &WeightVector<T>) -> Result<bool, TrackError> {
    if w.len() != t.branches.len() {
        return Err(TrackError::IndexMismatch {
            expected: t.branches.len(),
            got: w.len(),
        });
    }
    let m = switch_matrix(t)?;
    Ok(m.iter().all(|row| {
        let mut sum = T::zero();
        for (c, x) in row.iter().zip(&w.0) {
            if *c != 0 {
                sum = sum + T::from_i64(*c).expect("small coefficient") * x.clone();
            }
        }
        sum.is_zero()
    }))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Splits an integral balanced weight system into its curve components.
///
/// Strand `i` of a branch is counted counter-clockwise at the branch's first
/// slot, and so sits at position `w - 1 - i` at the other end. At a switch the
/// i-th strand from the top on side A continues as the i-th from the top on
/// side B.
pub fn decompose(t: &TrainTrack, w: &[u64]) -> Result<MultiCurve, TrackError> {
    if w.len() != t.branches.len() {
        return Err(TrackError::IndexMismatch {
            expected: t.branches.len(),
            got: w.len(),
        });
    }
    let ribbon = t.ribbon()?;
    let mut offset = Vec::with_capacity(w.len() + 1);
    offset.push(0usize);
    for &x in w {
        offset.push(offset.last().unwrap() + x as usize);
    }
    let total = *offset.last().unwrap();
    let mut uf = UnionFind((0..total).collect());

    let strands = |slot: usize, side: Side| -> Vec<usize> {
        let b = ribbon.places[&slot].branch;
        let wb = w[b] as usize;
        let first = t.branches[b].0 == slot;
        (0..wb)
            .map(|j| {
                let ccw = if side == Side::A { j } else { wb - 1 - j };
                let i = if first { ccw } else { wb - 1 - ccw };
                offset[b] + i
            })
            .collect()
    };

    for (s, sw) in t.switches.iter().enumerate() {
        let top_a: Vec<usize> = sw.side_a.iter().flat_map(|&x| strands(x, Side::A)).collect();
        let top_b: Vec<usize> = sw.side_b.iter().flat_map(|&x| strands(x, Side::B)).collect();
        if top_a.len() != top_b.len() {
            return Err(TrackError::Unbalanced { switch: s });
        }
        for (x, y) in top_a.into_iter().zip(top_b) {
            uf.union(x, y);
        }
    }

    let mut roots: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<u64>> = Vec::new();
    for b in 0..w.len() {
        for s in offset[b]..offset[b + 1] {
            let r = uf.find(s);
            let k = match roots.iter().position(|&x| x == r) {
                Some(k) => k,
                None => {
                    roots.push(r);
                    components.push(vec![0; w.len()]);
                    roots.len() - 1
                }
            };
            components[k][b] += 1;
        }
    }
    components.sort();
    Ok(MultiCurve {
        weights: w.to_vec(),
        components,
    })
}

/// Every balanced integral system with entries in `0..=cap`, in
/// lexicographic order, zero included.
fn balanced_systems(t: &TrainTrack, cap: u64) -> Result<Vec<Vec<u64>>, TrackError> {
    let m = switch_matrix(t)?;
    let nb = t.branches.len();
    // switches to check once branch i is fixed
    let mut closes: Vec<Vec<usize>> = vec![Vec::new(); nb];
    for (s, row) in m.iter().enumerate() {
        if let Some(last) = (0..nb).rev().find(|&b| row[b] != 0) {
            closes[last].push(s);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; nb];
    let mut visited = 0u64;

    fn rec(
        i: usize,
        cap: u64,
        m: &[Vec<i64>],
        closes: &[Vec<usize>],
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        visited: &mut u64,
    ) -> Result<(), TrackError> {
        *visited += 1;
        if *visited > ENUMERATION_CAP {
            return Err(TrackError::TooLarge(format!(
                "more than {ENUMERATION_CAP} search nodes"
            )));
        }
        if i == cur.len() {
            out.push(cur.clone());
            return Ok(());
        }
        for x in 0..=cap {
            cur[i] = x;
            let ok = closes[i]
                .iter()
                .all(|&s| m[s].iter().zip(cur.iter()).map(|(&c, &v)| c * v as i64).sum::<i64>() == 0);
            if ok {
                rec(i + 1, cap, m, closes, cur, out, visited)?;
            }
        }
        cur[i] = 0;
        Ok(())
    }

    rec(0, cap, &m, &closes, &mut cur, &mut out, &mut visited)?;
    Ok(out)
}

/// Every carried multicurve with all weights at most `weight_cap`.
pub fn carried_multicurves(t: &TrainTrack, weight_cap: u64) -> Result<Vec<MultiCurve>, TrackError> {
    t.ensure_valid()?;
    if weight_cap == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for w in balanced_systems(t, weight_cap)? {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        out.push(decompose(t, &w)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Rank of the switch matrix restricted to the given columns.
fn column_rank(m: &[Vec<i64>], cols: &[usize]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            cols.iter()
                .map(|&c| BigRational::from_integer(BigInt::from(r[c])))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        let pivot: Vec<BigRational> = rows[rank].iter().map(|x| x * &inv).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Connected carried curves of weight at most two that are extreme: the
/// balanced systems supported inside their support form a single ray.
pub fn vertex_cycles(t: &TrainTrack) -> Result<Vec<WeightVector<i64>>, TrackError> {
    vertex_cycles_capped(t, DEFAULT_BRANCH_CAP)
}

pub fn vertex_cycles_capped(t: &TrainTrack, branch_cap: usize) -> Result<Vec<WeightVector<i64>>, TrackError> {
    if t.branches.len() > branch_cap {
        return Err(TrackError::TooLarge(format!(
            "{} branches exceed the cap of {branch_cap}",
            t.branches.len()
        )));
    }
    t.ensure_valid()?;
    let m = switch_matrix(t)?;
    let mut out = Vec::new();
    for w in balanced_systems(t, 2)? {
        let support: Vec<usize> = (0..w.len()).filter(|&b| w[b] > 0).collect();
        if support.is_empty() || support.len() - column_rank(&m, &support) != 1 {
            continue;
        }
        if decompose(t, &w)?.component_count() == 1 {
            out.push(WeightVector(w.iter().map(|&x| x as i64).collect()));
        }
    }
    out.sort();
    Ok(out)
}
