//! Text form of rationals: `"p/q"` in lowest terms, or `"p"` for integers.

use crate::{Q, Z};
use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serializer};

/// Formats `x` as `p/q` (or `p` when integral).
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Parses `p/q`, `p` or a decimal-free signed integer.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: Z = n.parse().map_err(|_| format!("bad rational {s:?}"))?;
    let d: Z = d.parse().map_err(|_| format!("bad rational {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Q::new(n, d))
}

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Text(String),
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    match Raw::deserialize(d)? {
        Raw::Int(n) => Ok(crate::qi(n)),
        Raw::Text(t) => parse_q(&t).map_err(de::Error::custom),
    }
}

/// Serde adapter for `Option<Q>`.
pub mod opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&fmt_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        match Option::<Raw>::deserialize(d)? {
            None => Ok(None),
            Some(Raw::Int(n)) => Ok(Some(crate::qi(n))),
            Some(Raw::Text(t)) => parse_q(&t).map(Some).map_err(de::Error::custom),
        }
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_q(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        Vec::<Raw>::deserialize(d)?
            .into_iter()
            .map(|r| match r {
                Raw::Int(n) => Ok(crate::qi(n)),
                Raw::Text(t) => parse_q(&t).map_err(de::Error::custom),
            })
            .collect()
    }
}
