//! Exhaustive ground-truth oracles. These deliberately share no search code
//! with the algorithms they check: every candidate set is tested with the
//! public [`Matchoid::is_feasible`] from scratch.

use std::collections::BTreeMap;

use crate::colorcode::HashFunction;
use crate::{ElementId, ElementSet, Error, Matchoid, PointId, Result, Weight, WeightFn};

pub const MAX_WEIGHT_LIMIT: usize = 20;
pub const COVERAGE_LIMIT: usize = 16;
pub const REP_SET_CHECK_LIMIT: usize = 14;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceResult {
    pub value: Weight,
    pub witness: ElementSet,
    /// Feasible sets visited.
    pub enumerated: u64,
    /// For coverage objectives: the counted (top-z) points of the witness.
    pub points: Vec<PointId>,
}

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeGuard { size: n, limit })
    } else {
        Ok(())
    }
}

/// Visits every feasible subset of `items` of size at most `max_size`.
fn feasible_subsets(
    mc: &Matchoid,
    items: &[ElementId],
    max_size: usize,
    visit: &mut dyn FnMut(&ElementSet),
) {
    fn go(
        mc: &Matchoid,
        items: &[ElementId],
        idx: usize,
        max_size: usize,
        current: &mut ElementSet,
        visit: &mut dyn FnMut(&ElementSet),
    ) {
        if idx == items.len() {
            visit(current);
            return;
        }
        go(mc, items, idx + 1, max_size, current, visit);
        if current.len() < max_size {
            current.insert(items[idx]);
            if mc.is_feasible(current).expect("items are in the universe") {
                go(mc, items, idx + 1, max_size, current, visit);
            }
            current.remove(&items[idx]);
        }
    }
    let mut current = ElementSet::new();
    go(mc, items, 0, max_size, &mut current, visit);
}

/// Number of subsets of an `n`-set with at most `k` elements.
pub fn subsets_up_to(n: usize, k: usize) -> u64 {
    let mut total = 0u64;
    let mut binom = 1u64;
    for j in 0..=k.min(n) {
        total += binom;
        binom = binom * (n - j) as u64 / (j + 1) as u64;
    }
    total
}

/// Maximum-weight feasible set with at most `k` elements.
pub fn brute_max_weight_feasible(
    mc: &Matchoid,
    w: &WeightFn,
    k: usize,
) -> Result<BruteForceResult> {
    let items: Vec<ElementId> = mc.universe().iter().copied().collect();
    guard(items.len(), MAX_WEIGHT_LIMIT)?;
    let mut best = BruteForceResult {
        value: Weight::zero(),
        witness: ElementSet::new(),
        enumerated: 0,
        points: Vec::new(),
    };
    feasible_subsets(mc, &items, k, &mut |s| {
        best.enumerated += 1;
        let value: Weight = s.iter().map(|&e| w.weight(e)).sum();
        if value > best.value {
            best.value = value;
            best.witness = s.clone();
        }
    });
    Ok(best)
}

/// Covered points of `s`, heaviest first (ties by point id), truncated to `z`.
pub fn top_points(
    s: &ElementSet,
    pointsets: &BTreeMap<ElementId, Vec<PointId>>,
    point_weight: &dyn Fn(PointId) -> Weight,
    z: usize,
) -> Vec<PointId> {
    let mut covered: Vec<PointId> = s
        .iter()
        .flat_map(|e| pointsets.get(e).into_iter().flatten().copied())
        .collect();
    covered.sort_unstable();
    covered.dedup();
    covered.sort_by(|&a, &b| point_weight(b).cmp(&point_weight(a)).then(a.cmp(&b)));
    covered.truncate(z);
    covered
}

/// Best total weight of the `z` heaviest covered points over all feasible
/// sets (of any size).
pub fn brute_max_coverage(
    mc: &Matchoid,
    pointsets: &BTreeMap<ElementId, Vec<PointId>>,
    point_weight: &dyn Fn(PointId) -> Weight,
    z: usize,
) -> Result<BruteForceResult> {
    let items: Vec<ElementId> = mc.universe().iter().copied().collect();
    guard(items.len(), COVERAGE_LIMIT)?;
    let mut best = BruteForceResult {
        value: Weight::zero(),
        witness: ElementSet::new(),
        enumerated: 0,
        points: Vec::new(),
    };
    feasible_subsets(mc, &items, items.len(), &mut |s| {
        best.enumerated += 1;
        let top = top_points(s, pointsets, point_weight, z);
        let value: Weight = top.iter().map(|&p| point_weight(p)).sum();
        if value > best.value {
            best.value = value;
            best.witness = s.clone();
            best.points = top;
        }
    });
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSetViolation {
    /// `R` contains an element outside `T`.
    NotSubset(ElementId),
    /// No representative exists for `b` inside the feasible set `b_set`.
    Unrepresented { b_set: ElementSet, b: ElementId },
}

/// Checks the joint k-representative property of `r` for `(t, mc, w)` by
/// enumerating every feasible `B ⊆ X` with `|B| ≤ k`.
pub fn check_joint_rep_set(
    r: &ElementSet,
    t: &ElementSet,
    mc: &Matchoid,
    w: &WeightFn,
    k: usize,
) -> Result<Option<RepSetViolation>> {
    let items: Vec<ElementId> = mc.universe().iter().copied().collect();
    guard(items.len(), REP_SET_CHECK_LIMIT)?;
    if let Some(&e) = r.iter().find(|e| !t.contains(e)) {
        return Ok(Some(RepSetViolation::NotSubset(e)));
    }
    let mut violation = None;
    feasible_subsets(mc, &items, k, &mut |b_set| {
        if violation.is_some() {
            return;
        }
        for &b in b_set.iter().filter(|b| t.contains(b)) {
            let represented = r.iter().any(|&e| {
                if w.weight(e) < w.weight(b) {
                    return false;
                }
                let mut swapped = b_set.clone();
                swapped.remove(&b);
                swapped.insert(e);
                mc.is_feasible(&swapped)
                    .expect("elements are in the universe")
            });
            if !represented {
                violation = Some(RepSetViolation::Unrepresented {
                    b_set: b_set.clone(),
                    b,
                });
                return;
            }
        }
    });
    Ok(violation)
}

/// Whether `h` gives the points of `z` pairwise distinct colors.
pub fn check_well_colored(h: &HashFunction, z: &[PointId]) -> bool {
    let mut colors: Vec<u32> = z.iter().map(|&p| h.color(p)).collect();
    colors.sort_unstable();
    colors.windows(2).all(|w| w[0] != w[1])
}
