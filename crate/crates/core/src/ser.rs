//! Serde helpers for values that must reach JSON verbatim.

use std::fmt::Display;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// A JSON number given by its exact decimal text.
#[derive(Debug, Clone)]
pub struct RawNumber(pub String);

impl Serialize for RawNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.0.clone()).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

pub fn display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn display_opt<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    RawNumber(v.to_string()).serialize(s)
}
