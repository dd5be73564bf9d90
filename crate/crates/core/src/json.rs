//! JSON helpers for arbitrary-precision integers.
//!
//! Integers that fit into an `i64` are written as JSON numbers, anything
//! larger is written as a decimal string. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Wire wrapper around [`BigInt`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct JsonInt(pub BigInt);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => IntRepr::Small(v).serialize(serializer),
            None => IntRepr::Big(self.0.to_string()).serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match IntRepr::deserialize(deserializer)? {
            IntRepr::Small(v) => Ok(JsonInt(BigInt::from(v))),
            IntRepr::Big(s) => s
                .trim()
                .parse::<BigInt>()
                .map(JsonInt)
                .map_err(|e| serde::de::Error::custom(format!("bad integer {s:?}: {e}"))),
        }
    }
}

impl From<BigInt> for JsonInt {
    fn from(v: BigInt) -> Self {
        JsonInt(v)
    }
}

impl From<&BigInt> for JsonInt {
    fn from(v: &BigInt) -> Self {
        JsonInt(v.clone())
    }
}

pub(crate) fn wrap_all(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().map(JsonInt::from).collect()
}

pub(crate) fn unwrap_all(v: Vec<JsonInt>) -> Vec<BigInt> {
    v.into_iter().map(|x| x.0).collect()
}
