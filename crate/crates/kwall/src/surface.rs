//! Identifiers and coordinate data for the four admissible degeneration
//! surfaces.

use serde::{Deserialize, Serialize};
use std::fmt;

/// The four surfaces that can carry a pair in the moduli problem.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SurfaceId {
    P2,
    P114,
    P1425,
    X26,
}

impl SurfaceId {
    pub const ALL: [SurfaceId; 4] = [
        SurfaceId::P2,
        SurfaceId::P114,
        SurfaceId::P1425,
        SurfaceId::X26,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SurfaceId::P2 => "p2",
            SurfaceId::P114 => "p114",
            SurfaceId::P1425 => "p1425",
            SurfaceId::X26 => "x26",
        }
    }

    pub fn parse(s: &str) -> Option<SurfaceId> {
        match s.to_ascii_lowercase().as_str() {
            "p2" => Some(SurfaceId::P2),
            "p114" => Some(SurfaceId::P114),
            "p1425" => Some(SurfaceId::P1425),
            "x26" => Some(SurfaceId::X26),
            _ => None,
        }
    }

    pub fn is_toric(self) -> bool {
        self != SurfaceId::X26
    }

    pub fn coordinate_names(self) -> &'static [&'static str] {
        match self {
            SurfaceId::X26 => &["x", "y", "z", "w"],
            _ => &["x", "y", "z"],
        }
    }

    /// Weights of the homogeneous coordinates (ambient weights for X26).
    pub fn coordinate_weights(self) -> &'static [u64] {
        match self {
            SurfaceId::P2 => &[1, 1, 1],
            SurfaceId::P114 => &[1, 1, 4],
            SurfaceId::P1425 => &[1, 4, 25],
            SurfaceId::X26 => &[1, 2, 13, 25],
        }
    }

    /// Weighted degree of the quintic-side curve Q ~ −(5/3)K.
    pub fn degree_q(self) -> u64 {
        match self {
            SurfaceId::P2 => 5,
            SurfaceId::P114 => 10,
            SurfaceId::P1425 => 50,
            SurfaceId::X26 => 25,
        }
    }

    /// Weighted degree of the line-side curve L ~ −(1/3)K.
    pub fn degree_l(self) -> u64 {
        match self {
            SurfaceId::P2 => 1,
            SurfaceId::P114 => 2,
            SurfaceId::P1425 => 10,
            SurfaceId::X26 => 5,
        }
    }
}

impl fmt::Display for SurfaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for SurfaceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for SurfaceId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        SurfaceId::parse(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown surface id {s:?}")))
    }
}
