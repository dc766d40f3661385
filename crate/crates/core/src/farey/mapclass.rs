//! SL(2, Z) acting on slopes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{FareyError, Slope};
use crate::scalar::IntScalar;

/// Trace trichotomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dynamics {
    Elliptic,
    Reducible,
    PseudoAnosov,
}

impl fmt::Display for Dynamics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dynamics::Elliptic => "elliptic",
            Dynamics::Reducible => "reducible",
            Dynamics::PseudoAnosov => "pseudo-anosov",
        })
    }
}

/// A determinant-one integer matrix up to sign, `[[a, b], [c, d]]`.
#[derive(Clone, Debug)]
pub struct FareyMapClass<I = i64> {
    m: [I; 4],
}

impl<I: IntScalar> PartialEq for FareyMapClass<I> {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m || self.m.iter().zip(&other.m).all(|(x, y)| *x == -y.clone())
    }
}

impl<I: IntScalar> Eq for FareyMapClass<I> {}

impl<I: IntScalar> FareyMapClass<I> {
    /// Row-major entries.
    pub fn new(a: I, b: I, c: I, d: I) -> Result<Self, FareyError> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if !det.is_one() {
            return Err(FareyError::BadDeterminant(det.to_string()));
        }
        Ok(FareyMapClass { m: [a, b, c, d] })
    }

    pub fn identity() -> Self {
        FareyMapClass {
            m: [I::one(), I::zero(), I::zero(), I::one()],
        }
    }

    pub fn entries(&self) -> &[I; 4] {
        &self.m
    }

    pub fn trace(&self) -> I {
        self.m[0].clone() + self.m[3].clone()
    }

    /// `self * other`: apply `other` first.
    pub fn mul(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        FareyMapClass {
            m: [
                a.clone() * e.clone() + b.clone() * g.clone(),
                a.clone() * f.clone() + b.clone() * h.clone(),
                c.clone() * e.clone() + d.clone() * g.clone(),
                c.clone() * f.clone() + d.clone() * h.clone(),
            ],
        }
    }

    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.m.clone();
        FareyMapClass { m: [d, -b, -c, a] }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc.mul(self))
    }
}

impl<I: IntScalar + ToPrimitive> FareyMapClass<I> {
    /// `(p, q) ↦ (a p + b q, c p + d q)`, canonicalised.
    pub fn act(&self, s: Slope) -> Result<Slope, FareyError> {
        let e = |x: &I| x.to_i128().ok_or_else(|| FareyError::Overflow(s.to_string()));
        let [a, b, c, d] = [e(&self.m[0])?, e(&self.m[1])?, e(&self.m[2])?, e(&self.m[3])?];
        let (p, q) = (i128::from(s.p()), i128::from(s.q()));
        let over = || FareyError::Overflow(s.to_string());
        let x = a
            .checked_mul(p)
            .and_then(|u| b.checked_mul(q).and_then(|v| u.checked_add(v)))
            .ok_or_else(over)?;
        let y = c
            .checked_mul(p)
            .and_then(|u| d.checked_mul(q).and_then(|v| u.checked_add(v)))
            .ok_or_else(over)?;
        let (x, y) = (
            i64::try_from(x).map_err(|_| over())?,
            i64::try_from(y).map_err(|_| over())?,
        );
        Ok(Slope::canonical(x, y))
    }
}

impl FareyMapClass<i64> {
    pub fn from_row_major(e: [i64; 4]) -> Result<Self, FareyError> {
        Self::new(e[0], e[1], e[2], e[3])
    }

    pub fn to_big(&self) -> FareyMapClass<BigInt> {
        FareyMapClass {
            m: self.m.map(BigInt::from),
        }
    }
}

impl<I: IntScalar> fmt::Display for FareyMapClass<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// `|trace| < 2` elliptic, `= 2` reducible, `> 2` pseudo-Anosov.
pub fn classify<I: IntScalar>(m: &FareyMapClass<I>) -> Dynamics {
    let t = m.trace().abs();
    let two = I::one() + I::one();
    if t < two {
        Dynamics::Elliptic
    } else if t == two {
        Dynamics::Reducible
    } else {
        Dynamics::PseudoAnosov
    }
}

/// The two standard twists and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    T,
    TInv,
    S,
    SInv,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::T, Generator::TInv, Generator::S, Generator::SInv];

    pub fn matrix<I: IntScalar>(self) -> FareyMapClass<I> {
        let (o, z) = (I::one(), I::zero());
        let m = match self {
            Generator::T => [o.clone(), o.clone(), z.clone(), o],
            Generator::TInv => [o.clone(), -o.clone(), z.clone(), o],
            Generator::S => [o.clone(), z.clone(), o.clone(), o],
            Generator::SInv => [o.clone(), z.clone(), -o.clone(), o],
        };
        FareyMapClass { m }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Generator::T => "T",
            Generator::TInv => "t",
            Generator::S => "S",
            Generator::SInv => "s",
        }
    }

    /// Product of a word, read left to right as matrices.
    pub fn word<I: IntScalar>(word: &[Generator]) -> FareyMapClass<I> {
        word.iter()
            .fold(FareyMapClass::identity(), |acc, g| acc.mul(&g.matrix()))
    }
}
