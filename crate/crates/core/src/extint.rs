use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer or one of the two infinities. Serialized as a JSON integer, `"-inf"` or
/// `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Finite(_))
    }

    /// Adds a finite offset; infinities absorb it.
    pub fn offset(self, by: i64) -> ExtInt {
        match self {
            ExtInt::Finite(v) => ExtInt::Finite(v + by),
            other => other,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Finite(v)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtInt::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Finite(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(v) => s.serialize_i64(*v),
            ExtInt::NegInf => s.serialize_str("-inf"),
            ExtInt::PosInf => s.serialize_str("inf"),
        }
    }
}

struct ExtIntVisitor;

impl Visitor<'_> for ExtIntVisitor {
    type Value = ExtInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, \"-inf\" or \"inf\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
        Ok(ExtInt::Finite(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
        i64::try_from(v)
            .map(ExtInt::Finite)
            .map_err(|_| E::custom("integer out of range"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
        match v {
            "-inf" => Ok(ExtInt::NegInf),
            "inf" | "+inf" => Ok(ExtInt::PosInf),
            _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(ExtIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_json() {
        assert!(ExtInt::NegInf < ExtInt::Finite(-100));
        assert!(ExtInt::Finite(7) < ExtInt::PosInf);
        for x in [ExtInt::NegInf, ExtInt::Finite(-3), ExtInt::PosInf] {
            let s = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<ExtInt>(&s).unwrap(), x);
        }
        assert_eq!(serde_json::to_string(&ExtInt::NegInf).unwrap(), "\"-inf\"");
    }
}
