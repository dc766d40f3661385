//! Scalar abstraction shared by weight systems, band widths and map entries.
//!
//! Everything that only needs ring/field operations and an order is written
//! against [`Scalar`]. Exact types (`i64`, `Ratio<i64>`, [`BigRational`]) give
//! exact answers; `f64` is accepted where a caller wants a quick approximate
//! run, with ties then decided by floating equality.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// Ordered ring element usable as a weight, width or matrix entry.
pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug + Display + FromPrimitive {
    /// True when arithmetic on this type is exact (no rounding).
    const EXACT: bool;

    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }

    fn is_positive_strict(&self) -> bool {
        !self.is_zero() && self.is_positive()
    }
}

impl Scalar for i64 {
    const EXACT: bool = true;
}

impl Scalar for i128 {
    const EXACT: bool = true;
}

impl Scalar for BigInt {
    const EXACT: bool = true;
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

impl<T> Scalar for Ratio<T>
where
    T: Integer + Signed + Clone + Debug + Display + FromPrimitive,
    Ratio<T>: FromPrimitive,
{
    const EXACT: bool = true;
}

/// Integer-valued scalar: what an SL(2,Z) entry has to be.
pub trait IntScalar: Scalar + Integer {}

impl<T: Scalar + Integer> IntScalar for T {}

/// Parse `"p/q"` or `"p"` into a big rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Render a big rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
