use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Which index set a [`DataVector`] lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Point,
    Block,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::Point => "points",
            Role::Block => "blocks",
        }
    }
}

/// An exact rational function on points or on blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataVector {
    pub role: Role,
    #[serde(serialize_with = "ser_values", deserialize_with = "de_values")]
    pub values: Vec<BigRational>,
}

impl DataVector {
    pub fn new(role: Role, values: Vec<BigRational>) -> Self {
        Self { role, values }
    }

    pub fn zeros(role: Role, len: usize) -> Self {
        Self::new(role, vec![BigRational::zero(); len])
    }

    pub fn from_integers(role: Role, values: &[i64]) -> Self {
        Self::new(role, values.iter().map(|&v| int(v)).collect())
    }

    /// Indicator of a single index.
    pub fn delta(role: Role, len: usize, at: usize) -> Self {
        let mut v = Self::zeros(role, len);
        v.values[at] = BigRational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> BigRational {
        self.values.iter().sum()
    }

    pub fn dot(&self, other: &DataVector) -> BigRational {
        self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn expect(&self, role: Role, len: usize) -> Result<()> {
        if self.role != role {
            return Err(Error::RoleMismatch { expected: role.name(), found: self.role.name() });
        }
        if self.values.len() != len {
            return Err(Error::LengthMismatch { expected: len, found: self.values.len() });
        }
        Ok(())
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Renders as `p` or reduced `p/q`.
pub fn render(v: &BigRational) -> String {
    v.to_string()
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(p.trim()).ok()?, q))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

/// Parses whitespace- or newline-separated rationals; `#` starts a comment.
pub fn parse_values(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for token in body.split_whitespace() {
            let v = parse_rational(token).ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: format!("`{token}` is not a rational number"),
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

fn ser_values<S: Serializer>(values: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(render))
}

fn de_values<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| parse_rational(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
        .collect()
}

/// Serde adapter for a single rational rendered as `p/q`.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).ok_or_else(|| D::Error::custom(format!("bad rational `{raw}`")))
    }
}

/// Serde adapter for a list of rationals rendered as `p/q`.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        ser_values(v, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        de_values(d)
    }
}

impl fmt::Display for DataVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(render).collect();
        write!(f, "{}", parts.join(" "))
    }
}
