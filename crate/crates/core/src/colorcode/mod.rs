//! Color coding over joint z-representative sets for weighted coverage
//! with explicit point sets.

mod driver;
pub mod field;
mod hash;
mod kernel;

use std::fmt;

pub use driver::{
    perfect_driver, planted_driver, randomized_driver, realized_universe, repetition_seeds,
    run_colorings, well_coloring_seed, DriverResult, RepetitionReport, PLANTED_SEARCH_LIMIT,
};
pub use hash::{
    is_perfect, perfect_family, perfect_family_cap, repetitions, HashFunction,
    PERFECT_FAMILY_POINT_LIMIT,
};
pub use kernel::{
    extract_weighted_solution, f_c, streaming_max_coverage, top_z_weight, w_c, ColorCodingStream,
    ColorKernel, ColorMemoryReport, WeightedPointSet,
};

/// Largest supported number of colors.
pub const MAX_ZBAR: usize = 8;

/// Smallest power of two that is at least `z`.
pub fn zbar(z: usize) -> usize {
    z.max(1).next_power_of_two()
}

/// A subset of the colors `[z̄]` as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(pub u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_colors(colors: impl IntoIterator<Item = u32>) -> Self {
        ColorSet(colors.into_iter().fold(0, |m, c| m | 1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: u32) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ColorSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |&c| self.contains(c))
    }

    /// All subsets of `[zbar]`, the empty set included.
    pub fn all_subsets(zbar: usize) -> impl Iterator<Item = ColorSet> {
        (0..1u32 << zbar).map(ColorSet)
    }

    pub fn nonempty_subsets(zbar: usize) -> impl Iterator<Item = ColorSet> {
        Self::all_subsets(zbar).skip(1)
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let colors: Vec<String> = self.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", colors.join(","))
    }
}
