use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Deserializer, Serialize};

/// An angle in radians, kept in `[0, 2π)` by every constructor.
///
/// Used both for polarizer settings and for the hidden source phase σ.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    /// Wraps `radians` into `[0, 2π)`.
    ///
    /// Panics on non-finite input; callers taking untrusted values must
    /// validate first.
    pub fn new(radians: f64) -> Self {
        assert!(radians.is_finite(), "angle must be finite, got {radians}");
        let mut r = radians.rem_euclid(TAU);
        // rem_euclid rounds up to 2π itself for tiny negative inputs
        if r >= TAU {
            r = 0.0;
        }
        Angle(r)
    }

    /// Exact conversion `deg · π / 180`, then wrapped.
    pub fn from_degrees(degrees: f64) -> Self {
        Angle::new(degrees * PI / 180.0)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0 * 180.0 / PI
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: Deserializer<'de>,
    {
        let value = f64::deserialize(deserializer)?;
        if !value.is_finite() {
            return Err(serde::de::Error::custom("angle must be finite"));
        }
        Ok(Angle::new(value))
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
