//! Rauzy induction from the right end of the base.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{Attachment, Ncie, NcieError, Orientation, Side};
use crate::scalar::{format_rational, IntScalar, Scalar};

/// Default hard cap on induction steps.
pub const DEFAULT_STEP_CAP: usize = 100_000;

/// Identity plus the winner's row added into the loser's row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElementaryUpdate {
    pub winner: usize,
    pub loser: usize,
}

impl ElementaryUpdate {
    pub fn matrix<I: IntScalar>(&self, n: usize) -> PassageMatrix<I> {
        let mut m = PassageMatrix::<I>::identity(n);
        m.rows[self.loser][self.winner] = m.rows[self.loser][self.winner].clone() + I::one();
        m
    }
}

/// One induction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord<T> {
    pub loser: usize,
    pub winner: usize,
    /// Side on which the loser was terminal.
    pub loser_side: Side,
    pub subtracted: T,
    pub base_length: T,
    pub update: ElementaryUpdate,
}

/// Entries count how often a current band runs over an original band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PassageMatrix<I = BigInt> {
    pub rows: Vec<Vec<I>>,
}

impl<I: IntScalar> PassageMatrix<I> {
    pub fn identity(n: usize) -> Self {
        PassageMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| if i == j { I::one() } else { I::zero() }).collect())
                .collect(),
        }
    }

    pub fn from_rows(rows: Vec<Vec<I>>) -> Self {
        PassageMatrix { rows }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    /// Left multiplication by an elementary update.
    pub fn apply(&mut self, u: &ElementaryUpdate) {
        let add = self.rows[u.winner].clone();
        for (x, a) in self.rows[u.loser].iter_mut().zip(add) {
            *x = x.clone() + a;
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = other.rows.first().map_or(0, Vec::len);
        PassageMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    (0..n)
                        .map(|j| {
                            r.iter()
                                .zip(&other.rows)
                                .fold(I::zero(), |acc, (a, row)| acc + a.clone() * row[j].clone())
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn min_entry(&self) -> Option<I> {
        self.rows.iter().flatten().cloned().fold(None, |m, x| {
            Some(match m {
                Some(m) if m <= x => m,
                _ => x,
            })
        })
    }

    pub fn all_at_least(&self, k: &I) -> bool {
        !self.rows.is_empty() && self.rows.iter().flatten().all(|x| x >= k)
    }

    pub fn column_sums(&self) -> Vec<I> {
        let n = self.rows.first().map_or(0, Vec::len);
        (0..n)
            .map(|j| self.rows.iter().fold(I::zero(), |acc, r| acc + r[j].clone()))
            .collect()
    }
}

impl<I: IntScalar> fmt::Display for PassageMatrix<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// When to stop inducing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stop<T> {
    LengthBelow(T),
    AllPassagesAtLeast(u64),
    MaxSteps(usize),
}

/// Steps taken, with the exchange reached and the accumulated passages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionTrace<T> {
    pub initial: Ncie<T>,
    pub steps: Vec<StepRecord<T>>,
    pub last: Ncie<T>,
}

impl<T: Scalar> InductionTrace<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn band_count(&self) -> usize {
        self.initial.bands.len()
    }
}

impl InductionTrace<BigRational> {
    /// One JSON object per step.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let line = serde_json::json!({
                "step": k + 1,
                "loser": s.loser,
                "winner": s.winner,
                "loser_side": s.loser_side.tag(),
                "subtracted": format_rational(&s.subtracted),
                "base_length": format_rational(&s.base_length),
                "update": {"add_row": s.update.winner, "into_row": s.update.loser},
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

/// Induction interrupted by an error, with the steps taken before it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halted<T> {
    pub error: NcieError,
    pub partial: InductionTrace<T>,
}

impl<T> fmt::Display for Halted<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.error)
    }
}

impl<T: fmt::Debug> std::error::Error for Halted<T> {}

fn terminal<T: Scalar>(x: &Ncie<T>, side: Side) -> Option<(usize, usize)> {
    x.side_order(side).last().copied()
}

/// One step: the narrower terminal band loses, the base shrinks by its width,
/// and its terminal attachment is re-glued across the winner onto the
/// winner's far attachment (right end if the winner preserves orientation,
/// left end if it reverses).
pub fn rauzy_step<T: Scalar>(x: &Ncie<T>) -> Result<(Ncie<T>, ElementaryUpdate, StepRecord<T>), NcieError> {
    x.ensure_valid()?;
    let (up, up_j) = terminal(x, Side::Upper).ok_or_else(|| NcieError::Invalid(vec![]))?;
    let (lo, lo_j) = terminal(x, Side::Lower).ok_or_else(|| NcieError::Invalid(vec![]))?;
    if up == lo {
        return Err(NcieError::IllFormedInduction(up));
    }
    let (u, v) = (&x.bands[up].width, &x.bands[lo].width);
    if u == v {
        return Err(NcieError::SaddleConnection { upper: up, lower: lo });
    }
    // winner band, its terminal attachment; loser band, its terminal attachment
    let ((win, win_j), (lose, lose_j), loser_side) = if u > v {
        ((up, up_j), (lo, lo_j), Side::Lower)
    } else {
        ((lo, lo_j), (up, up_j), Side::Upper)
    };
    let d = x.bands[lose].width.clone();
    let mut y = x.clone();
    y.base_length = x.base_length.clone() - d.clone();

    let far_j = 1 - win_j;
    let far = x.bands[win].attachments[far_j].clone();
    let wide = x.bands[win].width.clone();
    let (new_offset, far_offset) = match x.bands[win].orientation {
        Orientation::Preserving => (far.offset.clone() + wide.clone() - d.clone(), far.offset.clone()),
        Orientation::Reversing => (far.offset.clone(), far.offset.clone() + d.clone()),
    };
    y.bands[win].width = wide - d.clone();
    y.bands[win].attachments[far_j].offset = far_offset;
    y.bands[lose].attachments[lose_j] = Attachment {
        side: far.side,
        offset: new_offset,
    };
    let other = &y.bands[lose].attachments[1 - lose_j];
    y.bands[lose].orientation = if other.side == far.side {
        Orientation::Reversing
    } else {
        Orientation::Preserving
    };
    let update = ElementaryUpdate {
        winner: win,
        loser: lose,
    };
    let record = StepRecord {
        loser: lose,
        winner: win,
        loser_side,
        subtracted: d,
        base_length: y.base_length.clone(),
        update,
    };
    Ok((y, update, record))
}

/// Steps until the rule fires, a saddle connection appears, or `cap` steps
/// have been taken without the rule firing.
pub fn rauzy_until<T: Scalar>(x: &Ncie<T>, stop: &Stop<T>, cap: usize) -> Result<InductionTrace<T>, Halted<T>> {
    let mut trace = InductionTrace {
        initial: x.clone(),
        steps: Vec::new(),
        last: x.clone(),
    };
    let mut passages: PassageMatrix<BigInt> = PassageMatrix::identity(x.bands.len());
    loop {
        let done = match stop {
            Stop::LengthBelow(eps) => trace.last.base_length < *eps,
            Stop::AllPassagesAtLeast(k) => passages.all_at_least(&BigInt::from(*k)),
            Stop::MaxSteps(m) => trace.steps.len() >= *m,
        };
        if done {
            return Ok(trace);
        }
        if trace.steps.len() >= cap {
            return Err(Halted {
                error: NcieError::CapExceeded(format!("{cap} induction steps")),
                partial: trace,
            });
        }
        match rauzy_step(&trace.last) {
            Ok((next, update, record)) => {
                passages.apply(&update);
                trace.steps.push(record);
                trace.last = next;
            }
            Err(error) => return Err(Halted { error, partial: trace }),
        }
    }
}

/// Ordered product of a trace's updates, each acting on the left.
pub fn passage_product<T: Scalar, I: IntScalar>(trace: &InductionTrace<T>) -> PassageMatrix<I> {
    let mut p = PassageMatrix::identity(trace.band_count());
    for s in &trace.steps {
        p.apply(&s.update);
    }
    p
}

/// Fewest steps after which every passage count is at least two.
pub fn twice_cover_index<T: Scalar>(x: &Ncie<T>, cap: usize) -> Result<usize, NcieError> {
    rauzy_until(x, &Stop::AllPassagesAtLeast(2), cap)
        .map(|t| t.len())
        .map_err(|h| h.error)
}

/// True iff both passage arrays are nonempty with every entry at least two.
pub fn maximally_filling_certificate<I: IntScalar>(vertical: &PassageMatrix<I>, horizontal: &PassageMatrix<I>) -> bool {
    let two = I::one() + I::one();
    vertical.all_at_least(&two) && horizontal.all_at_least(&two)
}

/// `2ε / δ`.
pub fn ratio_lower_bound(stage_base_length: &BigRational, eps: &BigRational) -> Result<BigRational, NcieError> {
    if !stage_base_length.is_positive() {
        return Err(NcieError::NonpositiveInput(format!(
            "base length {}",
            format_rational(stage_base_length)
        )));
    }
    if !eps.is_positive() {
        return Err(NcieError::NonpositiveInput(format!("epsilon {}", format_rational(eps))));
    }
    Ok(BigRational::from_integer(BigInt::from(2)) * eps / stage_base_length)
}
