//! Serde helpers that emit arbitrary-precision integers as JSON numbers.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub(crate) fn int<S: Serializer>(value: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    let number: serde_json::Number = value
        .to_string()
        .parse()
        .expect("decimal integer is a valid JSON number");
    number.serialize(serializer)
}

pub(crate) fn number(value: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        value
            .to_string()
            .parse()
            .expect("decimal integer is a valid JSON number"),
    )
}
