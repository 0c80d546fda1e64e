//! Exact kernels for maximizing linear and coverage objectives under
//! ℓ-matchoid constraints, in both the offline and the streaming setting.
//!
//! Matroids are accessed only through independence oracles. The crate
//! ships brute-force oracles ([`bruteforce`]) that certify every kernel
//! against its defining property on small instances.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub mod bruteforce;
pub mod colorcode;
pub mod coverage_oracle;
pub mod error;
pub mod instances;
pub mod matchoid;
pub mod matroids;
pub mod repset;
pub mod search;
pub mod stream;
pub mod weight;

pub use error::{Error, Result};
pub use matchoid::Matchoid;
pub use matroids::{Block, Matroid, MatroidKind};
pub use weight::{Weight, WeightFn};

/// Identifier of an element of the ground set. Unique within an instance.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type ElementSet = BTreeSet<ElementId>;

/// Identifier of a point of a coverage universe.
pub type PointId = u32;

/// Convenience constructor used heavily in tests.
pub fn set<I: IntoIterator<Item = u32>>(ids: I) -> ElementSet {
    ids.into_iter().map(ElementId).collect()
}
