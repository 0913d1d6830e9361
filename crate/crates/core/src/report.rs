//! Serialization helpers shared by report types.

use num_rational::BigRational;
use serde::Serializer;

use crate::count::BigCount;

/// Counts are written as decimal strings; they overflow 64 bits quickly.
pub fn ser_count<S: Serializer>(x: &BigCount, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_counts<S: Serializer>(xs: &[BigCount], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

pub fn ser_opt_count<S: Serializer>(x: &Option<BigCount>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Rationals as `"p/q"` (or `"p"` when integral).
pub fn ser_ratio<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(x))
}

pub fn format_ratio(x: &BigRational) -> String {
    if x.denom() == &1.into() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
