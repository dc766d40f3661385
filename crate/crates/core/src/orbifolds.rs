//! Euler characteristics of surfaces and 2-orbifolds, the exceptional
//! hyperelliptic covers, and the χ-equation search that rules out
//! dimension-preserving irregular orbifold covers.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::scalar::format_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbifoldError {
    #[error("{0} is not one of the exceptional surfaces")]
    NotExceptional(SurfaceSig),
    #[error("{0} is exceptional (2g+n <= 4)")]
    ExceptionalInput(SurfaceSig),
    #[error("orbifold {0} is not hyperbolic")]
    NotHyperbolic(OrbifoldSig),
    #[error("cover degree must be at least 2, got {0}")]
    BadDegree(u32),
    #[error("orbifold point order must be at least 2, got {0}")]
    BadOrder(u32),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Orientable surface of genus `g` with `n` punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SurfaceSig {
    pub g: u32,
    pub n: u32,
}

impl SurfaceSig {
    pub const fn new(g: u32, n: u32) -> Self {
        SurfaceSig { g, n }
    }

    /// `3g - 3 + n > 0`: the surface carries pseudo-Anosov maps.
    pub fn supports_pseudo_anosov(&self) -> bool {
        3 * self.g as i64 - 3 + self.n as i64 > 0
    }

    /// `2g + n > 4`.
    pub fn beyond_exceptional(&self) -> bool {
        2 * self.g + self.n > 4
    }

    pub fn as_orbifold(&self) -> OrbifoldSig {
        OrbifoldSig::new(self.g, vec![Order::Infinite; self.n as usize])
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.g, self.n)
    }
}

/// Order of an orbifold point; `Infinite` is a puncture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    /// Contribution `1 - 1/d` to the orbifold defect (1 for a puncture).
    pub fn defect(self) -> BigRational {
        match self {
            Order::Finite(d) => BigRational::one() - frac(1, d as i64),
            Order::Infinite => BigRational::one(),
        }
    }

    pub fn is_puncture(self) -> bool {
        matches!(self, Order::Infinite)
    }
}

impl Ord for Order {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Order::Finite(a), Order::Finite(b)) => a.cmp(b),
            (Order::Finite(_), Order::Infinite) => Ordering::Less,
            (Order::Infinite, Order::Finite(_)) => Ordering::Greater,
            (Order::Infinite, Order::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Order {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(d) => write!(f, "{d}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Orbifold `S'_{g'}(d_1, …, d_{n'})`. Orders are kept sorted, so equality is
/// multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbifoldSig {
    pub genus: u32,
    orders: Vec<Order>,
}

impl OrbifoldSig {
    pub fn new(genus: u32, mut orders: Vec<Order>) -> Self {
        orders.sort();
        OrbifoldSig { genus, orders }
    }

    /// Checked constructor rejecting finite orders below 2.
    pub fn try_new(genus: u32, orders: Vec<Order>) -> Result<Self, OrbifoldError> {
        for o in &orders {
            if let Order::Finite(d) = o {
                if *d < 2 {
                    return Err(OrbifoldError::BadOrder(*d));
                }
            }
        }
        Ok(OrbifoldSig::new(genus, orders))
    }

    /// Genus 0 with the given finite orders (0 meaning a puncture).
    pub fn sphere(orders: &[u32]) -> Self {
        OrbifoldSig::new(
            0,
            orders
                .iter()
                .map(|&d| if d == 0 { Order::Infinite } else { Order::Finite(d) })
                .collect(),
        )
    }

    pub fn orders(&self) -> &[Order] {
        &self.orders
    }

    /// Number of orbifold points, punctures included.
    pub fn points(&self) -> usize {
        self.orders.len()
    }

    pub fn punctures(&self) -> usize {
        self.orders.iter().filter(|o| o.is_puncture()).count()
    }

    /// `count` of points of each order.
    pub fn order_counts(&self) -> BTreeMap<Order, usize> {
        let mut m = BTreeMap::new();
        for &o in &self.orders {
            *m.entry(o).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for OrbifoldSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S'_{}(", self.genus)?;
        for (i, o) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, ")")
    }
}

/// `χ(S_{g,n}) = 2 - 2g - n`.
pub fn euler_char(s: SurfaceSig) -> BigRational {
    rat(2 - 2 * s.g as i64 - s.n as i64)
}

/// `χ(S') = 2 - 2g' - Σ (1 - 1/d_i)`, a puncture contributing 1.
pub fn orb_euler_char(o: &OrbifoldSig) -> BigRational {
    o.orders
        .iter()
        .fold(rat(2 - 2 * o.genus as i64), |acc, d| acc - d.defect())
}

/// True exactly for `S_{0,4}`, `S_{1,1}`, `S_{1,2}` and `S_{2,0}`.
pub fn is_exceptional(s: SurfaceSig) -> bool {
    s.supports_pseudo_anosov() && !s.beyond_exceptional()
}

/// A total surface, a base orbifold and a degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverCandidate {
    pub total: SurfaceSig,
    pub base: OrbifoldSig,
    pub degree: u32,
}

impl CoverCandidate {
    /// `χ(total) = degree · χ(base)`, exactly.
    pub fn is_multiplicative(&self) -> bool {
        euler_char(self.total) == rat(self.degree as i64) * orb_euler_char(&self.base)
    }
}

/// The hyperelliptic quotient of an exceptional surface.
pub fn exceptional_cover(s: SurfaceSig) -> Result<CoverCandidate, OrbifoldError> {
    let base = match (s.g, s.n) {
        (0, 4) => OrbifoldSig::sphere(&[2, 2, 0, 0]),
        (1, 1) => OrbifoldSig::sphere(&[2, 2, 2, 0]),
        (1, 2) => OrbifoldSig::sphere(&[2, 2, 2, 2, 0]),
        (2, 0) => OrbifoldSig::sphere(&[2, 2, 2, 2, 2, 2]),
        _ => return Err(OrbifoldError::NotExceptional(s)),
    };
    let cover = CoverCandidate {
        total: s,
        base,
        degree: 2,
    };
    debug_assert!(cover.is_multiplicative());
    Ok(cover)
}

/// Real dimension of Teichmüller space, `6g' - 6 + 2n'`, counting every
/// orbifold point (punctures included) in `n'`.
pub fn teich_dim(o: &OrbifoldSig) -> Result<u32, OrbifoldError> {
    if !orb_euler_char(o).is_negative() {
        return Err(OrbifoldError::NotHyperbolic(o.clone()));
    }
    let dim = 6 * o.genus as i64 - 6 + 2 * o.points() as i64;
    Ok(u32::try_from(dim).expect("hyperbolic orbifolds have nonnegative dimension"))
}

/// Constraints for [`enumerate_signatures`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignatureQuery {
    /// Fix the base genus; otherwise every feasible genus is tried.
    pub genus: Option<u32>,
    /// Fix the number of orbifold points (punctures included).
    pub points: Option<usize>,
}

/// All orbifold signatures over `menu` with `χ(s) = d · χ(S')`.
///
/// Only the Euler-characteristic equation is checked, not whether a cover is
/// realisable. Output is sorted and free of duplicates.
pub fn enumerate_signatures(
    s: SurfaceSig,
    degree: u32,
    menu: &[Order],
    query: &SignatureQuery,
) -> Result<Vec<OrbifoldSig>, OrbifoldError> {
    if degree < 2 {
        return Err(OrbifoldError::BadDegree(degree));
    }
    let mut menu: Vec<Order> = menu.to_vec();
    for o in &menu {
        if let Order::Finite(d) = o {
            if *d < 2 {
                return Err(OrbifoldError::BadOrder(*d));
            }
        }
    }
    menu.sort();
    menu.dedup();
    let target = euler_char(s) / rat(degree as i64);

    // χ(S') ≤ 2 - 2g', and every point costs at least 1/2.
    let max_genus = {
        let t = (rat(2) - target.clone()) / rat(2);
        t.floor().to_integer().try_into().unwrap_or(0u32)
    };
    let genera: Vec<u32> = match query.genus {
        Some(g) => vec![g],
        None => (0..=max_genus).collect(),
    };

    let mut out = Vec::new();
    for g in genera {
        // Required total defect Σ(1 - 1/d_i).
        let need = rat(2 - 2 * g as i64) - target.clone();
        if need.is_negative() {
            continue;
        }
        let max_points = (need.clone() * rat(2)).floor().to_integer();
        let max_points: usize = max_points.try_into().unwrap_or(0);
        let counts_cap = query.points.map_or(max_points, |p| p.min(max_points));
        let mut counts = vec![0usize; menu.len()];
        search(&menu, 0, &need, counts_cap, query.points, &mut counts, &mut |c| {
            let orders = c
                .iter()
                .zip(&menu)
                .flat_map(|(&k, &o)| std::iter::repeat_n(o, k))
                .collect();
            out.push(OrbifoldSig::new(g, orders));
        });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn search(
    menu: &[Order],
    idx: usize,
    remaining: &BigRational,
    budget: usize,
    exact_points: Option<usize>,
    counts: &mut Vec<usize>,
    emit: &mut impl FnMut(&[usize]),
) {
    if idx == menu.len() {
        let used: usize = counts.iter().sum();
        if remaining.is_zero() && exact_points.is_none_or(|p| p == used) {
            emit(counts);
        }
        return;
    }
    let used: usize = counts.iter().sum();
    let step = menu[idx].defect();
    let mut left = remaining.clone();
    let mut k = 0usize;
    loop {
        counts[idx] = k;
        search(menu, idx + 1, &left, budget, exact_points, counts, emit);
        if used + k >= budget {
            break;
        }
        left -= step.clone();
        if left.is_negative() {
            break;
        }
        k += 1;
    }
    counts[idx] = 0;
}

/// Orders a degree-`d` cover can create in the irregular-cover search: the
/// divisors of `d` that are at least 2, plus punctures.
pub fn divisor_menu(d: u32) -> Vec<Order> {
    let mut m: Vec<Order> = (2..=d).filter(|k| d.is_multiple_of(*k)).map(Order::Finite).collect();
    m.push(Order::Infinite);
    m
}

/// Hard cap on the degree examined by [`irregular_same_signature_search`].
pub const MAX_SEARCH_DEGREE: u32 = 12;

/// Why a case of the irregular-cover search fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// `(1 - 1/d)(2 - 2g) ≥ (1/2 - 1/d) n` fails, so no case is possible.
    DimensionBound,
    /// The χ equation has no nonnegative solution.
    NoSolution,
    /// The solution exists but has no punctures.
    NoPunctures,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rejection::DimensionBound => "violates (1-1/d)(2-2g) >= (1/2-1/d)n",
            Rejection::NoSolution => "no nonnegative solution",
            Rejection::NoPunctures => "solution has no punctures",
        })
    }
}

/// One row of the irregular-cover case analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseRow {
    pub surface: SurfaceSig,
    pub degree: u32,
    /// The χ equation in counts, e.g. `2a + b = 9`.
    pub equation: String,
    /// χ-solution considered (absent when there is none).
    pub solution: Option<OrbifoldSig>,
    pub chi_total: BigRational,
    pub chi_base: BigRational,
    pub feasible: bool,
    pub rejection: Option<Rejection>,
}

impl CaseRow {
    /// `order:count` pairs over the degree's menu, e.g. `2:4;4:1;inf:0`.
    pub fn order_counts(&self) -> String {
        let counts = self.solution.as_ref().map(|o| o.order_counts()).unwrap_or_default();
        divisor_menu(self.degree)
            .iter()
            .map(|o| format!("{o}:{}", counts.get(o).copied().unwrap_or(0)))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn chi_total_str(&self) -> String {
        format_rational(&self.chi_total)
    }

    pub fn chi_base_str(&self) -> String {
        format_rational(&self.chi_base)
    }
}

/// Report of [`irregular_same_signature_search`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub surface: SurfaceSig,
    pub rows: Vec<CaseRow>,
}

impl SearchReport {
    /// Signatures that survive every check; empty for every non-exceptional
    /// surface.
    pub fn feasible(&self) -> Vec<&OrbifoldSig> {
        self.rows
            .iter()
            .filter(|r| r.feasible)
            .filter_map(|r| r.solution.as_ref())
            .collect()
    }
}

/// `(1 - 1/d)(2 - 2g) ≥ (1/2 - 1/d) n`, the necessary condition for a
/// degree-`d` cover onto an orbifold of the same genus and point count.
pub fn dimension_bound_holds(s: SurfaceSig, d: u32) -> bool {
    let d = d as i64;
    let lhs = (rat(1) - frac(1, d)) * rat(2 - 2 * s.g as i64);
    let rhs = (frac(1, 2) - frac(1, d)) * rat(s.n as i64);
    lhs >= rhs
}

/// Renders `Σ (d/k) c_k = (d-1)(n + 2g - 2)` with letters `a, b, c, …` for
/// the finite orders in increasing order.
fn chi_equation(s: SurfaceSig, d: u32) -> String {
    let lhs: Vec<String> = divisor_menu(d)
        .iter()
        .filter_map(|o| match o {
            Order::Finite(k) => Some(d / k),
            Order::Infinite => None,
        })
        .enumerate()
        .map(|(i, coeff)| {
            let var = (b'a' + i as u8) as char;
            if coeff == 1 {
                var.to_string()
            } else {
                format!("{coeff}{var}")
            }
        })
        .collect();
    let rhs = (d as i64 - 1) * (s.n as i64 + 2 * s.g as i64 - 2);
    format!("{} = {}", lhs.join(" + "), rhs)
}

/// Runs the χ-equation case analysis for irregular covers `S → S'` with the
/// same genus and number of orbifold points, over degrees `3..=12`.
pub fn irregular_same_signature_search(s: SurfaceSig) -> Result<SearchReport, OrbifoldError> {
    if !s.beyond_exceptional() {
        return Err(OrbifoldError::ExceptionalInput(s));
    }
    let chi_total = euler_char(s);
    let mut rows = Vec::new();
    for d in 3..=MAX_SEARCH_DEGREE {
        let chi_base = chi_total.clone() / rat(d as i64);
        let equation = chi_equation(s, d);
        let row = |solution: Option<OrbifoldSig>, feasible: bool, rejection: Option<Rejection>| CaseRow {
            surface: s,
            degree: d,
            equation: equation.clone(),
            solution,
            chi_total: chi_total.clone(),
            chi_base: chi_base.clone(),
            feasible,
            rejection,
        };
        if !dimension_bound_holds(s, d) {
            rows.push(row(None, false, Some(Rejection::DimensionBound)));
            continue;
        }
        let query = SignatureQuery {
            genus: Some(s.g),
            points: Some(s.n as usize),
        };
        let sols = enumerate_signatures(s, d, &divisor_menu(d), &query)?;
        if sols.is_empty() {
            rows.push(row(None, false, Some(Rejection::NoSolution)));
        }
        for sol in sols {
            if sol.punctures() == 0 && s.n > 0 {
                rows.push(row(Some(sol), false, Some(Rejection::NoPunctures)));
            } else {
                rows.push(row(Some(sol), true, None));
            }
        }
    }
    Ok(SearchReport { surface: s, rows })
}
