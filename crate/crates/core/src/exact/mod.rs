//! Exact scalars, polynomials, truncated Laurent series and rational functions.
//!
//! Everything here is exact: rationals are arbitrary precision and the complex
//! unit only ever enters through [`GaussianRational`]. Series carry their
//! truncation order explicitly so that callers can state precisely which
//! coefficients are known.

mod bridge;
mod gaussian;
mod linalg;
mod macmahon;
mod pade;
mod poly;
mod ratfunc;
mod series;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use bridge::{exp_iu_minus_one, substitute_exp};
pub use gaussian::GaussianRational;
pub use linalg::{bareiss_det, field_det, invert_matrix, nullspace, poly_det, ExactDiv};
pub use macmahon::macmahon;
pub use pade::pade_reconstruct;
pub use poly::{GaussPoly, Poly, UniPoly};
pub use ratfunc::RationalFunction;
pub use series::{LaurentSeries, Var};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// The operations every coefficient field in this crate supports.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Neg<Output = T>
{
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NonSquare { rows: usize, row: usize, len: usize },
    #[error("matrix must have side at least 1")]
    EmptyMatrix,
    #[error("cannot invert a series that is zero up to its truncation order {trunc}")]
    ZeroSeries { trunc: i64 },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("series has {have} known coefficients but reconstruction needs {need}")]
    InsufficientTerms { have: i64, need: i64 },
    #[error("no rational function with numerator degree <= {num_degree} and denominator degree <= {den_degree} matches the series")]
    ReconstructionFailure { num_degree: usize, den_degree: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"a/b"` or `"a"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let bad = || ExactError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form: `"a/b"`, or `"a"` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses a comma separated list of rational literals, e.g. `"0,1,-1/2"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>, ExactError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Serde adapter that stores a [`Rational`] as its canonical string.
pub mod rational_serde {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RationalLiteral::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts both `"1/2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalLiteral {
        Text(String),
        Int(i64),
    }

    impl RationalLiteral {
        pub(crate) fn into_rational(self) -> Result<Rational, super::ExactError> {
            match self {
                RationalLiteral::Text(s) => parse_rational(&s),
                RationalLiteral::Int(n) => Ok(super::rat(n)),
            }
        }
    }
}

/// Serde adapter for `Vec<Rational>` as a list of strings.
pub mod rational_vec_serde {
    use super::rational_serde::RationalLiteral;
    use super::{rational_to_string, Rational};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&rational_to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RationalLiteral>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}
