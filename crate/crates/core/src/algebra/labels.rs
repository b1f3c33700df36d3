use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Name of a basis generator. Indices are 1-based.
///
/// `E(k)`/`F(k)` with `k` up to the even rank are the simple root vectors;
/// larger `k` index the remaining even positive roots. The derived order
/// (Cartan, hypercharge, centre, raising, lowering, odd raising, odd lowering)
/// is the canonical basis order used in exports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorLabel {
    H(usize),
    Y,
    Z0,
    E(usize),
    F(usize),
    U(usize),
    V(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl GeneratorLabel {
    pub fn parity(self) -> Parity {
        match self {
            Self::U(_) | Self::V(_) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self.parity() == Parity::Odd
    }

    /// Eigenvalue of `ad y`: +1 on `U`, -1 on `V`, 0 on even generators.
    pub fn y_grade(self) -> i32 {
        match self {
            Self::U(_) => 1,
            Self::V(_) => -1,
            _ => 0,
        }
    }

    pub fn is_cartan(self) -> bool {
        matches!(self, Self::H(_) | Self::Y | Self::Z0)
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::H(i) => write!(f, "h{i}"),
            Self::Y => write!(f, "y"),
            Self::Z0 => write!(f, "z0"),
            Self::E(i) => write!(f, "e{i}"),
            Self::F(i) => write!(f, "f{i}"),
            Self::U(i) => write!(f, "u{i}"),
            Self::V(i) => write!(f, "v{i}"),
        }
    }
}

impl FromStr for GeneratorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y" => return Ok(Self::Y),
            "z0" => return Ok(Self::Z0),
            _ => {}
        }
        let bad = || Error::Parse(format!("unknown generator label `{s}`"));
        let (head, digits) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        if digits.starts_with('0') {
            return Err(bad());
        }
        let i: usize = digits.parse().map_err(|_| bad())?;
        match head {
            "h" => Ok(Self::H(i)),
            "e" => Ok(Self::E(i)),
            "f" => Ok(Self::F(i)),
            "u" => Ok(Self::U(i)),
            "v" => Ok(Self::V(i)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for GeneratorLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
