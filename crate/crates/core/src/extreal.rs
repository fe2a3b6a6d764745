//! Extended real numbers `ℝ ∪ {−∞, +∞}`.
//!
//! `ExtReal` is a small value type with a total order (`−∞ < finite < +∞`)
//! and the arithmetic needed by translative functionals: sums where `±∞`
//! absorbs finite values, shifts by finite amounts and positive scaling.
//! The forbidden form `+∞ + (−∞)` is an error, never a silent NaN.
//!
//! JSON encoding: finite values are numbers, `+∞` is `"inf"`, `−∞` is `"-inf"`.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Maps `f64` infinities to the matching variant. NaN is rejected.
    pub fn from_f64(x: f64) -> Option<ExtReal> {
        if x.is_nan() {
            None
        } else if x == f64::INFINITY {
            Some(ExtReal::PosInf)
        } else if x == f64::NEG_INFINITY {
            Some(ExtReal::NegInf)
        } else {
            Some(ExtReal::Finite(x))
        }
    }

    /// Finite constructor; panics on NaN or infinite input.
    pub fn finite(x: f64) -> ExtReal {
        assert!(x.is_finite(), "ExtReal::finite called with {x}");
        ExtReal::Finite(x)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        self == ExtReal::PosInf
    }

    pub fn is_neg_inf(self) -> bool {
        self == ExtReal::NegInf
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    /// Lossy conversion, `±∞` map to `f64` infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(x) => x,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    /// Sum with the usual conventions; `+∞ + (−∞)` is [`Error::IndeterminateSum`].
    pub fn checked_add(self, other: ExtReal) -> Result<ExtReal> {
        use ExtReal::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IndeterminateSum),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(ExtReal::from_sum(a + b)),
        }
    }

    /// `self + t` for finite `t`; infinities absorb.
    pub fn add_finite(self, t: f64) -> ExtReal {
        debug_assert!(t.is_finite());
        match self {
            ExtReal::Finite(a) => ExtReal::from_sum(a + t),
            inf => inf,
        }
    }

    pub fn sub_finite(self, t: f64) -> ExtReal {
        self.add_finite(-t)
    }

    /// `λ · self` for `λ > 0`.
    pub fn scale_pos(self, lambda: f64) -> ExtReal {
        debug_assert!(lambda > 0.0 && lambda.is_finite());
        match self {
            ExtReal::Finite(a) => ExtReal::from_sum(lambda * a),
            inf => inf,
        }
    }

    /// `self ≤ other + tol`, with `±∞` compared as themselves regardless of `tol`.
    pub fn le_tol(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a <= b + tol,
            (a, b) => a <= b,
        }
    }

    /// Both infinite with the same sign, or both finite and within `tol`.
    pub fn approx_eq(self, other: ExtReal, tol: f64) -> bool {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs() <= tol,
            (a, b) => a == b,
        }
    }

    // Overflow of a finite sum lands on the matching infinity.
    fn from_sum(x: f64) -> ExtReal {
        ExtReal::from_f64(x).expect("sum of finite non-NaN values is not NaN")
    }
}

impl std::ops::Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::Finite(x) => ExtReal::Finite(-x),
            ExtReal::PosInf => ExtReal::NegInf,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x).expect("NaN is not an extended real")
    }
}

impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp(b).expect("finite values are never NaN"),
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => f.write_str("-inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::PosInf => f.write_str("inf"),
        }
    }
}

/// Infimum of a possibly empty collection. `inf ∅ = +∞`; `unbounded_below`
/// lets the caller signal a collection with no finite lower bound.
pub fn inf_of<I>(values: I, unbounded_below: bool) -> ExtReal
where
    I: IntoIterator<Item = f64>,
{
    if unbounded_below {
        return ExtReal::NegInf;
    }
    values
        .into_iter()
        .filter_map(ExtReal::from_f64)
        .min()
        .unwrap_or(ExtReal::PosInf)
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::NegInf => serializer.serialize_str("-inf"),
            ExtReal::Finite(x) => serializer.serialize_f64(*x),
            ExtReal::PosInf => serializer.serialize_str("inf"),
        }
    }
}

struct ExtRealVisitor;

impl<'de> Visitor<'de> for ExtRealVisitor {
    type Value = ExtReal;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a finite number, \"inf\" or \"-inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtReal, E> {
        if v.is_finite() {
            Ok(ExtReal::Finite(v))
        } else {
            Err(E::custom(format!("non-finite number {v}")))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<ExtReal, E> {
        match v {
            "inf" | "+inf" => Ok(ExtReal::PosInf),
            "-inf" => Ok(ExtReal::NegInf),
            other => Err(E::custom(format!("invalid extended real {other:?}"))),
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<ExtReal, D::Error> {
        deserializer.deserialize_any(ExtRealVisitor)
    }
}
