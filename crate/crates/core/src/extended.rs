//! Extended reals for inverse temperatures and temperatures.
//!
//! Serialized as a plain number when finite, the strings `"inf"` / `"-inf"`
//! for the infinities, and `{"value": "undefined", "reason": "..."}` otherwise.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum ExtendedReal {
    Finite(f64),
    PosInfinity,
    NegInfinity,
    Undefined(String),
}

impl ExtendedReal {
    pub fn undefined(reason: impl Into<String>) -> Self {
        ExtendedReal::Undefined(reason.into())
    }

    /// Maps non-finite floats onto the corresponding variants.
    pub fn from_f64(value: f64) -> Self {
        if value.is_nan() {
            ExtendedReal::undefined("NaN")
        } else if value == f64::INFINITY {
            ExtendedReal::PosInfinity
        } else if value == f64::NEG_INFINITY {
            ExtendedReal::NegInfinity
        } else {
            ExtendedReal::Finite(value)
        }
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtendedReal::Finite(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// IEEE view: infinities map to `±inf`, undefined to NaN.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedReal::Finite(v) => *v,
            ExtendedReal::PosInfinity => f64::INFINITY,
            ExtendedReal::NegInfinity => f64::NEG_INFINITY,
            ExtendedReal::Undefined(_) => f64::NAN,
        }
    }

    /// `1/x` with `1/±0 = +inf` (the sign of zero is not tracked) and `1/±inf = 0`.
    pub fn recip(&self) -> Self {
        match self {
            ExtendedReal::Finite(v) if *v == 0.0 => ExtendedReal::PosInfinity,
            ExtendedReal::Finite(v) => ExtendedReal::from_f64(1.0 / v),
            ExtendedReal::PosInfinity | ExtendedReal::NegInfinity => ExtendedReal::Finite(0.0),
            ExtendedReal::Undefined(r) => ExtendedReal::Undefined(r.clone()),
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(value: f64) -> Self {
        ExtendedReal::from_f64(value)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::PosInfinity => f.write_str("inf"),
            ExtendedReal::NegInfinity => f.write_str("-inf"),
            ExtendedReal::Undefined(reason) => write!(f, "undefined ({reason})"),
        }
    }
}

impl Serialize for ExtendedReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedReal::Finite(v) => serializer.serialize_f64(*v),
            ExtendedReal::PosInfinity => serializer.serialize_str("inf"),
            ExtendedReal::NegInfinity => serializer.serialize_str("-inf"),
            ExtendedReal::Undefined(reason) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("value", "undefined")?;
                map.serialize_entry("reason", reason)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtendedVisitor;

        impl<'de> Visitor<'de> for ExtendedVisitor {
            type Value = ExtendedReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number, \"inf\", \"-inf\" or an undefined record")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Ok(ExtendedReal::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(ExtendedReal::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(ExtendedReal::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                match v {
                    "inf" => Ok(ExtendedReal::PosInfinity),
                    "-inf" => Ok(ExtendedReal::NegInfinity),
                    "undefined" => Ok(ExtendedReal::undefined("unspecified")),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut value: Option<String> = None;
                let mut reason: Option<String> = None;
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "value" => value = Some(map.next_value()?),
                        "reason" => reason = Some(map.next_value()?),
                        _ => {
                            map.next_value::<de::IgnoredAny>()?;
                        }
                    }
                }
                match value.as_deref() {
                    Some("undefined") => Ok(ExtendedReal::Undefined(reason.unwrap_or_default())),
                    _ => Err(de::Error::custom("expected {\"value\": \"undefined\", ...}")),
                }
            }
        }

        deserializer.deserialize_any(ExtendedVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_edges() {
        assert_eq!(ExtendedReal::Finite(0.0).recip(), ExtendedReal::PosInfinity);
        assert_eq!(ExtendedReal::PosInfinity.recip(), ExtendedReal::Finite(0.0));
        assert_eq!(ExtendedReal::NegInfinity.recip(), ExtendedReal::Finite(0.0));
        assert_eq!(ExtendedReal::Finite(-4.0).recip(), ExtendedReal::Finite(-0.25));
        assert!(matches!(
            ExtendedReal::undefined("x").recip(),
            ExtendedReal::Undefined(_)
        ));
    }

    #[test]
    fn serde_round_trip() {
        let values = vec![
            ExtendedReal::Finite(-1.234_567_890_123_456_7e-3),
            ExtendedReal::PosInfinity,
            ExtendedReal::NegInfinity,
            ExtendedReal::undefined("pure state with zero energy contrast"),
        ];
        let text = serde_json::to_string(&values).unwrap();
        assert!(text.contains("\"inf\""));
        assert!(text.contains("\"-inf\""));
        assert!(text.contains("\"undefined\""));
        let back: Vec<ExtendedReal> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, values);
    }
}
