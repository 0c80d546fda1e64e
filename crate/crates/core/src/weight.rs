//! Exact element and point weights.
//!
//! Weights are rationals so that sums compare exactly; on disk they are
//! written as decimal strings (or `p/q` when no finite decimal exists).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{ElementId, Error};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Rational64);

impl Weight {
    pub const fn integer(v: i64) -> Self {
        Weight(Rational64::new_raw(v, 1))
    }

    pub fn zero() -> Self {
        Weight(Rational64::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Weight {
    fn from(v: i64) -> Self {
        Weight(Rational64::from_integer(v))
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight(self.0 + rhs.0)
    }
}

impl std::ops::AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        self.0 += rhs.0;
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(-self.0)
    }
}

impl std::iter::Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        let mut den = *r.denom();
        let mut twos = 0u32;
        let mut fives = 0u32;
        while den % 2 == 0 {
            den /= 2;
            twos += 1;
        }
        while den % 5 == 0 {
            den /= 5;
            fives += 1;
        }
        if den != 1 {
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        let places = twos.max(fives);
        if places == 0 {
            return write!(f, "{}", r.numer());
        }
        let scale = 10i128.pow(places);
        let scaled = *r.numer() as i128 * (scale / *r.denom() as i128);
        let sign = if r.is_negative() { "-" } else { "" };
        let abs = scaled.abs();
        let int = abs / scale;
        let frac = abs % scale;
        write!(f, "{sign}{int}.{frac:0width$}", width = places as usize)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::schema("weight", format!("cannot parse {s:?} as a decimal or p/q"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Weight(Rational64::new(n, d)));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let numer: i64 = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| bad())?
        };
        let denom = 10i64.pow(frac.len() as u32);
        let r = Rational64::new(numer, denom);
        Ok(Weight(if neg { -r } else { r }))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Element weights together with the strict priority order used for every
/// argmax: heavier first, then earlier arrival.
#[derive(Clone, Debug, Default)]
pub struct WeightFn {
    weights: HashMap<ElementId, Weight>,
    arrival: HashMap<ElementId, usize>,
}

impl WeightFn {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a weight function whose arrival order is the iteration order.
    pub fn from_ordered(items: impl IntoIterator<Item = (ElementId, Weight)>) -> Self {
        let mut w = Self::new();
        for (e, x) in items {
            w.insert(e, x);
        }
        w
    }

    /// Inserts `e` with the next arrival index. Re-inserting keeps the
    /// original arrival index and replaces the weight.
    pub fn insert(&mut self, e: ElementId, weight: Weight) {
        let next = self.arrival.len();
        self.arrival.entry(e).or_insert(next);
        self.weights.insert(e, weight);
    }

    pub fn weight(&self, e: ElementId) -> Weight {
        self.weights.get(&e).copied().unwrap_or_default()
    }

    pub fn arrival(&self, e: ElementId) -> usize {
        self.arrival.get(&e).copied().unwrap_or(usize::MAX)
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.weights.contains_key(&e)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Less` means `a` has higher priority than `b`.
    pub fn priority_cmp(&self, a: ElementId, b: ElementId) -> Ordering {
        self.weight(b)
            .cmp(&self.weight(a))
            .then_with(|| self.arrival(a).cmp(&self.arrival(b)))
            .then_with(|| a.cmp(&b))
    }

    pub fn total<'a>(&self, set: impl IntoIterator<Item = &'a ElementId>) -> Weight {
        set.into_iter().map(|&e| self.weight(e)).sum()
    }
}
