use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::{ElementId, PointId, Weight};

/// Black-box access to a coverage function `f(S) = |P(S)|`.
pub trait ValueOracle {
    /// `f(S)`; `s` is treated as a set. Each call counts as one query.
    fn value(&self, s: &[ElementId]) -> u64;

    fn queries(&self) -> u64;
}

/// Explicit point sets over a universe `{0, …, m−1}` with point weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageInstance {
    universe_size: usize,
    pointsets: BTreeMap<ElementId, BTreeSet<PointId>>,
    point_weights: BTreeMap<PointId, Weight>,
}

impl CoverageInstance {
    /// Points must lie below `universe_size`; missing point weights are 1.
    pub fn new(
        universe_size: usize,
        pointsets: BTreeMap<ElementId, BTreeSet<PointId>>,
        point_weights: BTreeMap<PointId, Weight>,
    ) -> crate::Result<Self> {
        for (&e, ps) in &pointsets {
            if let Some(&p) = ps.iter().find(|&&p| p as usize >= universe_size) {
                return Err(crate::Error::Parameter(format!(
                    "point {p} of {e} is outside the universe of size {universe_size}"
                )));
            }
        }
        if let Some((p, w)) = point_weights.iter().find(|(_, w)| **w < Weight::zero()) {
            return Err(crate::Error::Parameter(format!(
                "point {p} has negative weight {w}"
            )));
        }
        Ok(CoverageInstance {
            universe_size,
            pointsets,
            point_weights,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn points(&self, e: ElementId) -> &BTreeSet<PointId> {
        static EMPTY: BTreeSet<PointId> = BTreeSet::new();
        self.pointsets.get(&e).unwrap_or(&EMPTY)
    }

    pub fn pointsets(&self) -> &BTreeMap<ElementId, BTreeSet<PointId>> {
        &self.pointsets
    }

    pub fn point_weight(&self, p: PointId) -> Weight {
        self.point_weights
            .get(&p)
            .copied()
            .unwrap_or(Weight::integer(1))
    }

    pub fn covered(&self, s: &[ElementId]) -> BTreeSet<PointId> {
        s.iter()
            .flat_map(|&e| self.points(e).iter().copied())
            .collect()
    }

    /// Point sets as sorted vectors, the shape the brute-force oracles take.
    pub fn pointset_vectors(&self) -> BTreeMap<ElementId, Vec<PointId>> {
        self.pointsets
            .iter()
            .map(|(&e, ps)| (e, ps.iter().copied().collect()))
            .collect()
    }
}

/// Unweighted value oracle over a [`CoverageInstance`], counting queries.
#[derive(Debug)]
pub struct CountingOracle<'a> {
    instance: &'a CoverageInstance,
    queries: AtomicU64,
}

impl<'a> CountingOracle<'a> {
    pub fn new(instance: &'a CoverageInstance) -> Self {
        CountingOracle {
            instance,
            queries: AtomicU64::new(0),
        }
    }
}

impl ValueOracle for CountingOracle<'_> {
    fn value(&self, s: &[ElementId]) -> u64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.instance.covered(s).len() as u64
    }

    fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

/// Value oracle backed by an arbitrary function of the queried set.
pub struct OpaqueOracle<F> {
    f: F,
    queries: AtomicU64,
}

impl<F: Fn(&[ElementId]) -> u64> OpaqueOracle<F> {
    pub fn new(f: F) -> Self {
        OpaqueOracle {
            f,
            queries: AtomicU64::new(0),
        }
    }
}

impl<F: Fn(&[ElementId]) -> u64> ValueOracle for OpaqueOracle<F> {
    fn value(&self, s: &[ElementId]) -> u64 {
        self.queries.fetch_add(1, Ordering::Relaxed);
        (self.f)(s)
    }

    fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }
}

fn f<V: ValueOracle + ?Sized>(oracle: &V, items: &[ElementId]) -> i64 {
    let mut s = items.to_vec();
    s.sort_unstable();
    s.dedup();
    oracle.value(&s) as i64
}

/// `P(a) ∩ P(x) = P(b) ∩ P(x)`, decided as `f(x|a) = f(x|b) = f(x|{a,b})`.
/// Uses 6 queries (none when `a = b`).
pub fn same_points_within<V: ValueOracle + ?Sized>(
    oracle: &V,
    a: ElementId,
    b: ElementId,
    x: ElementId,
) -> bool {
    if a == b {
        return true;
    }
    let x_given_a = f(oracle, &[a, x]) - f(oracle, &[a]);
    let x_given_b = f(oracle, &[b, x]) - f(oracle, &[b]);
    let x_given_ab = f(oracle, &[a, b, x]) - f(oracle, &[a, b]);
    x_given_a == x_given_b && x_given_b == x_given_ab
}

/// `(P(a) \ P(x)) ∩ (P(b) \ P(x)) = ∅`, decided as `f(a|x) = f(a|{b,x})`.
/// Uses 4 queries.
pub fn disjoint_outside<V: ValueOracle + ?Sized>(
    oracle: &V,
    a: ElementId,
    b: ElementId,
    x: ElementId,
) -> bool {
    let a_given_x = f(oracle, &[a, x]) - f(oracle, &[x]);
    let a_given_bx = f(oracle, &[a, b, x]) - f(oracle, &[b, x]);
    a_given_x == a_given_bx
}
