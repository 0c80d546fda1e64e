//! Exhaustive enumeration of small feasible subsets, used to extract a
//! solution from a kernel.

use std::ops::ControlFlow;

use crate::{ElementId, Matchoid, Weight, WeightFn};

/// Visits every feasible subset of `candidates` with at most `max_size`
/// elements, in lexicographic order of candidate positions, starting with
/// the empty set. Infeasible prefixes are pruned (feasibility is hereditary).
pub fn for_each_feasible_subset<F>(
    mc: &Matchoid,
    candidates: &[ElementId],
    max_size: usize,
    mut visit: F,
) where
    F: FnMut(&[ElementId]) -> ControlFlow<()>,
{
    let mut current = Vec::with_capacity(max_size);
    let _ = extend(mc, candidates, 0, max_size, &mut current, &mut visit);
}

fn extend<F>(
    mc: &Matchoid,
    candidates: &[ElementId],
    from: usize,
    max_size: usize,
    current: &mut Vec<ElementId>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[ElementId]) -> ControlFlow<()>,
{
    visit(current)?;
    if current.len() == max_size {
        return ControlFlow::Continue(());
    }
    for i in from..candidates.len() {
        let e = candidates[i];
        if mc.feasible_extension(current, e) {
            current.push(e);
            let flow = extend(mc, candidates, i + 1, max_size, current, visit);
            current.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// A maximum-weight feasible subset of `candidates` of size at most `k`.
/// Ties keep the first set found.
pub fn max_weight_feasible(
    mc: &Matchoid,
    candidates: &[ElementId],
    w: &WeightFn,
    k: usize,
) -> (Vec<ElementId>, Weight) {
    let mut best = (Vec::new(), Weight::zero());
    for_each_feasible_subset(mc, candidates, k, |s| {
        let value = w.total(s);
        if value > best.1 {
            best = (s.to_vec(), value);
        }
        ControlFlow::Continue(())
    });
    best
}
