//! Exact rational thresholds.
//!
//! Every richness and degree threshold in the pipeline is a product of a
//! ratio and a vertex count. Requirements round up, targets round down, and
//! both are computed exactly so that boundary cases such as `n/8` with
//! `n = 8` never depend on floating-point rounding.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio as Rational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(Rational<u64>);

impl Ratio {
    pub fn new(numer: u64, denom: u64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::invalid("ratio with zero denominator"));
        }
        Ok(Ratio(Rational::new(numer, denom)))
    }

    /// `numer / denom`; panics on a zero denominator. For constants.
    pub const fn of(numer: u64, denom: u64) -> Self {
        Ratio(Rational::new_raw(numer, denom))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }

    /// True when `0 < self <= 1`.
    pub fn is_unit_interval(&self) -> bool {
        self.is_positive() && self.numer() <= self.denom()
    }

    /// `ceil(self * n)`.
    pub fn ceil_mul(&self, n: usize) -> usize {
        let num = self.numer() as u128 * n as u128;
        let den = self.denom() as u128;
        num.div_ceil(den) as usize
    }

    /// `floor(self * n)`.
    pub fn floor_mul(&self, n: usize) -> usize {
        (self.numer() as u128 * n as u128 / self.denom() as u128) as usize
    }

    pub fn mul(&self, other: Ratio) -> Ratio {
        Ratio(self.0 * other.0)
    }

    pub fn div_int(&self, k: u64) -> Ratio {
        Ratio(self.0 / k)
    }

    pub fn mul_int(&self, k: u64) -> Ratio {
        Ratio(self.0 * k)
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

/// `floor(r^2 * n / divisor)`, exact.
pub fn floor_square_ratio(r: Ratio, n: usize, divisor: u64) -> usize {
    let num = r.numer() as u128 * r.numer() as u128 * n as u128;
    let den = r.denom() as u128 * r.denom() as u128 * divisor as u128;
    (num / den) as usize
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a finite decimal such as `0.125`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse ratio {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            return Ratio::new(p, q);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let int: u64 = if int.is_empty() {
                0
            } else {
                int.parse().map_err(|_| bad())?
            };
            let denom = 10u64.pow(frac.len() as u32);
            let frac: u64 = frac.parse().map_err(|_| bad())?;
            let numer = int
                .checked_mul(denom)
                .and_then(|x| x.checked_add(frac))
                .ok_or_else(bad)?;
            return Ratio::new(numer, denom);
        }
        let p: u64 = s.parse().map_err(|_| bad())?;
        Ratio::new(p, 1)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
