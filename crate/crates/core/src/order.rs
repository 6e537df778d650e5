//! Sobolev orders as map keys.
//!
//! Orders are plain `f64` throughout the public API; `OrderKey` wraps a
//! finite order so it can key a `BTreeMap` (total order, hashable, stable
//! serialization).

use crate::error::{Error, Result};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A finite Sobolev order usable as a sorted map key.
///
/// Serializes as the shortest round-trip decimal string so it can key JSON
/// maps ("2.5": ...); deserializes from either a string or a number.
#[derive(Clone, Copy, PartialEq)]
pub struct OrderKey(f64);

impl OrderKey {
    pub fn new(p: f64) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::InvalidOrder {
                value: p,
                reason: "must be finite".into(),
            });
        }
        // normalize -0.0 so Eq/Hash agree with ==
        Ok(OrderKey(if p == 0.0 { 0.0 } else { p }))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Eq for OrderKey {}

impl Ord for OrderKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for OrderKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for OrderKey {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Debug for OrderKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for OrderKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for OrderKey {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.0)
    }
}

struct OrderKeyVisitor;

impl Visitor<'_> for OrderKeyVisitor {
    type Value = OrderKey;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "a finite Sobolev order as a number or decimal string")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<OrderKey, E> {
        OrderKey::new(v).map_err(|e| E::custom(e.to_string()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<OrderKey, E> {
        self.visit_f64(v as f64)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<OrderKey, E> {
        self.visit_f64(v as f64)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<OrderKey, E> {
        let parsed: f64 = v.parse().map_err(|_| E::custom(format!("bad order `{v}`")))?;
        self.visit_f64(parsed)
    }
}

impl<'de> Deserialize<'de> for OrderKey {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_any(OrderKeyVisitor)
    }
}
