//! Desk-scale computations around curve graphs: electrified graphs and their
//! metric diagnostics, orbifold covers of the exceptional surfaces, train
//! tracks, non-classical interval exchanges under Rauzy induction, and the
//! Farey model of the curve graphs of `S_{1,1}` and `S_{0,4}`.
//!
//! Weight systems, band widths and matrix entries are generic over
//! [`scalar::Scalar`]; the aliases below fix the exact types used by the CLI.

pub mod farey;
pub mod graphcore;
pub mod ncie;
pub mod orbifolds;
pub mod scalar;
pub mod traintrack;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Interval exchange with exact rational widths.
pub type RationalNcie = ncie::Ncie<Rational>;
/// Interval exchange with integer widths.
pub type IntegerNcie = ncie::Ncie<i64>;
/// Rational weight system on a train track.
pub type RationalWeights = traintrack::WeightVector<Rational>;
/// Passage counts with unbounded entries.
pub type BigPassageMatrix = ncie::PassageMatrix<num_bigint::BigInt>;
/// Map class with unbounded entries, for long random products.
pub type BigMapClass = farey::FareyMapClass<num_bigint::BigInt>;
/// Map class with machine-word entries.
pub type MapClass = farey::FareyMapClass<i64>;
