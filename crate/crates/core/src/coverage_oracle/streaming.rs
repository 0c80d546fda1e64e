//! Per-value trees of joint z-representative sets.
//!
//! One tree per value `j ∈ 1..z`, holding only elements with `f(e) = j`.
//! Every node keeps `z` disjoint slots `R_1, …, R_z`; children hang off a
//! stored element `r` and collect elements that meet `P(r)` in the same
//! set of points. The parent element of a root is the empty dummy `⊥`,
//! represented here as `None`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::Serialize;

use super::oracle::{same_points_within, ValueOracle};
use crate::repset::{gamma, rep_set};
use crate::{search, ElementId, ElementSet, Error, Matchoid, Result, Weight, WeightFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    parent_elem: Option<ElementId>,
    depth: usize,
    slots: Vec<Vec<ElementId>>,
    children: Vec<(ElementId, Vec<usize>)>,
}

impl Node {
    fn new(parent_elem: Option<ElementId>, depth: usize, z: usize) -> Self {
        Node {
            parent_elem,
            depth,
            slots: vec![Vec::new(); z],
            children: Vec::new(),
        }
    }

    pub fn parent_elem(&self) -> Option<ElementId> {
        self.parent_elem
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The representative slots, each in arrival order.
    pub fn slots(&self) -> &[Vec<ElementId>] {
        &self.slots
    }

    /// `AllReps(n)`: slot by slot, each in arrival order.
    pub fn all_reps(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.slots.iter().flatten().copied()
    }

    pub fn stored(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    /// Child node indices grouped by owning element, in creation order.
    pub fn children(&self) -> &[(ElementId, Vec<usize>)] {
        &self.children
    }

    fn children_of(&self, r: ElementId) -> &[usize] {
        self.children
            .iter()
            .find(|(owner, _)| *owner == r)
            .map(|(_, c)| c.as_slice())
            .unwrap_or(&[])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    /// Nodes by index; index 0 is the root.
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn stored(&self) -> usize {
        self.nodes.iter().map(Node::stored).sum()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.nodes.iter().flat_map(Node::all_reps)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ArrivalStats {
    pub element: ElementId,
    pub value: u64,
    pub value_queries: u64,
    pub descent_tests: u64,
    pub match_tests: u64,
    pub independence_queries: u64,
    /// Elements stored in the target tree before this arrival.
    pub tree_size_before: usize,
    /// `(tree value, node index)` where the element was processed.
    pub node: Option<(usize, usize)>,
    pub created_node: bool,
    /// Slot that received the element, if any.
    pub slot: Option<usize>,
}

impl ArrivalStats {
    /// Value-query budget from the per-test accounting: one query for
    /// `f(e)`, 4 per descent test and 6 per child-match test.
    pub fn query_budget(&self) -> u64 {
        1 + 4 * self.descent_tests + 6 * self.match_tests
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PushOutcome {
    /// `f(e) ≥ z`: `{e}` is the kernel and the stream is finished.
    EarlyExit,
    /// `f(e) = 0`: the element can never help and is dropped.
    Ignored,
    Processed,
    /// An early exit already happened; the element was not looked at.
    Finished,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageKernel {
    pub elements: ElementSet,
    pub early_exit: Option<ElementId>,
}

pub struct StreamingCoverage<'a, V: ValueOracle> {
    oracle: &'a V,
    mc: &'a Matchoid,
    z: usize,
    literal_match: bool,
    trees: Vec<Tree>,
    order: WeightFn,
    seen: HashSet<ElementId>,
    early_exit: Option<ElementId>,
    stats: Vec<ArrivalStats>,
}

impl<'a, V: ValueOracle> StreamingCoverage<'a, V> {
    /// `literal_match` tests every stored element of a child node when
    /// matching, instead of a single representative.
    pub fn new(oracle: &'a V, mc: &'a Matchoid, z: usize, literal_match: bool) -> Result<Self> {
        if z < 1 {
            return Err(Error::Parameter("z must be at least 1".into()));
        }
        Ok(StreamingCoverage {
            oracle,
            mc,
            z,
            literal_match,
            trees: (1..z)
                .map(|_| Tree {
                    nodes: vec![Node::new(None, 0, z)],
                })
                .collect(),
            order: WeightFn::new(),
            seen: HashSet::new(),
            early_exit: None,
            stats: Vec::new(),
        })
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Tree for value `j` is at index `j − 1`.
    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn stats(&self) -> &[ArrivalStats] {
        &self.stats
    }

    pub fn early_exit(&self) -> Option<ElementId> {
        self.early_exit
    }

    /// `f(x | A)` where `None` in `given` is `⊥`.
    fn marginal(&self, x: ElementId, given: &[Option<ElementId>]) -> i64 {
        let mut base: Vec<ElementId> = given.iter().flatten().copied().collect();
        base.sort_unstable();
        base.dedup();
        let without = if base.is_empty() {
            0
        } else {
            self.oracle.value(&base) as i64
        };
        if !base.contains(&x) {
            base.push(x);
            base.sort_unstable();
        }
        self.oracle.value(&base) as i64 - without
    }

    pub fn push(&mut self, e: ElementId) -> Result<PushOutcome> {
        if self.early_exit.is_some() {
            return Ok(PushOutcome::Finished);
        }
        if !self.mc.universe().contains(&e) {
            return Err(Error::Domain {
                element: e,
                context: "the matchoid universe".into(),
            });
        }
        if !self.seen.insert(e) {
            return Err(Error::Stream(format!("element {e} arrived twice")));
        }
        // Later arrivals are strictly lighter.
        self.order
            .insert(e, Weight::from(-(self.seen.len() as i64)));

        let start = self.oracle.queries();
        let value = self.oracle.value(&[e]);
        let mut stats = ArrivalStats {
            element: e,
            value,
            ..ArrivalStats::default()
        };
        let outcome = if value as usize >= self.z {
            self.early_exit = Some(e);
            PushOutcome::EarlyExit
        } else if value == 0 {
            PushOutcome::Ignored
        } else {
            let t = value as usize - 1;
            stats.tree_size_before = self.trees[t].stored();
            let (node, created) = self.find_node(t, e, &mut stats);
            stats.node = Some((value as usize, node));
            stats.created_node = created;
            stats.slot = self.process_elem(t, node, e, &mut stats)?;
            debug_assert!(self.trees[t].nodes[node].stored() > 0);
            PushOutcome::Processed
        };
        stats.value_queries = self.oracle.queries() - start;
        self.stats.push(stats);
        Ok(outcome)
    }

    /// Descends from the root of tree `t` to a node whose stored elements
    /// agree with `e` on the parent element's points and are otherwise
    /// disjoint from it, creating at most one new child on the way.
    fn find_node(&mut self, t: usize, e: ElementId, stats: &mut ArrivalStats) -> (usize, bool) {
        let mut current = 0;
        'descend: loop {
            let node = &self.trees[t].nodes[current];
            let p = node.parent_elem;
            let reps: Vec<ElementId> = node.all_reps().collect();
            for r in reps {
                stats.descent_tests += 1;
                if self.marginal(e, &[p]) == self.marginal(e, &[Some(r), p]) {
                    continue;
                }
                // P(e) \ P(p) meets P(r) \ P(p).
                let children = self.trees[t].nodes[current].children_of(r).to_vec();
                for child in children {
                    if self.child_matches(t, child, r, e, stats) {
                        current = child;
                        continue 'descend;
                    }
                }
                let depth = self.trees[t].nodes[current].depth + 1;
                let tree = &mut self.trees[t];
                let idx = tree.nodes.len();
                tree.nodes.push(Node::new(Some(r), depth, self.z));
                let node = &mut tree.nodes[current];
                match node.children.iter_mut().find(|(owner, _)| *owner == r) {
                    Some((_, list)) => list.push(idx),
                    None => node.children.push((r, vec![idx])),
                }
                return (idx, true);
            }
            return (current, false);
        }
    }

    /// `f(r|r') = f(r|e) = f(r|{r',e})` for the stored elements `r'` of the
    /// child (all of them in literal mode, else the first one).
    fn child_matches(
        &self,
        t: usize,
        child: usize,
        r: ElementId,
        e: ElementId,
        stats: &mut ArrivalStats,
    ) -> bool {
        let node = &self.trees[t].nodes[child];
        assert!(node.stored() > 0, "empty child node persisted");
        let take = if self.literal_match { usize::MAX } else { 1 };
        node.all_reps().take(take).all(|r2| {
            stats.match_tests += 1;
            same_points_within(self.oracle, r2, e, r)
        })
    }

    /// Tries `RepSet(R_j + e)` with `k = z` for `j = 1..z`, stopping at the
    /// first slot that keeps `e`.
    fn process_elem(
        &mut self,
        t: usize,
        node: usize,
        e: ElementId,
        stats: &mut ArrivalStats,
    ) -> Result<Option<usize>> {
        for j in 0..self.z {
            let mut input = self.trees[t].nodes[node].slots[j].clone();
            input.push(e);
            let run = rep_set(&input, self.mc, &self.order, self.z)?;
            stats.independence_queries += run.queries;
            if run.set.contains(&e) {
                let mut slot: Vec<ElementId> = run.set.into_iter().collect();
                slot.sort_by_key(|&x| self.order.arrival(x));
                self.trees[t].nodes[node].slots[j] = slot;
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn finish(&self) -> CoverageKernel {
        match self.early_exit {
            Some(e) => CoverageKernel {
                elements: ElementSet::from([e]),
                early_exit: Some(e),
            },
            None => CoverageKernel {
                elements: self.trees.iter().flat_map(Tree::elements).collect(),
                early_exit: None,
            },
        }
    }
}

/// Upper bound on the kernel size from the tree accounting:
/// `(z−1)` trees, `Σ_{d<z} (2^{z−1}·Γ_{ℓ,z}·z)^d` nodes per tree and
/// `Γ_{ℓ,z}·z` elements per node.
pub fn n_bound(ell: usize, z: usize) -> Result<u64> {
    if z == 0 {
        return Err(Error::Parameter("z must be at least 1".into()));
    }
    let g = gamma(ell, z)?;
    let per_node = g.checked_mul(z as u64).ok_or(Error::Overflow("n_bound"))?;
    let branching = 1u64
        .checked_shl(z as u32 - 1)
        .filter(|_| z <= 64)
        .and_then(|b| b.checked_mul(per_node))
        .ok_or(Error::Overflow("n_bound"))?;
    let mut nodes = 0u64;
    let mut level = 1u64;
    for d in 0..z {
        nodes = nodes.checked_add(level).ok_or(Error::Overflow("n_bound"))?;
        if d + 1 < z {
            level = level
                .checked_mul(branching)
                .ok_or(Error::Overflow("n_bound"))?;
        }
    }
    ((z - 1) as u64)
        .checked_mul(nodes)
        .and_then(|x| x.checked_mul(per_node))
        .ok_or(Error::Overflow("n_bound"))
}

/// A feasible `S ⊆ R` with `|S| ≤ z` and `f(S) ≥ z`, by exhaustive search.
pub fn extract_coverage_solution<V: ValueOracle + ?Sized>(
    oracle: &V,
    kernel: &ElementSet,
    mc: &Matchoid,
    z: usize,
) -> Option<ElementSet> {
    let candidates: Vec<ElementId> = kernel.iter().copied().collect();
    let mut found = None;
    search::for_each_feasible_subset(mc, &candidates, z, |s| {
        if !s.is_empty() && oracle.value(s) as usize >= z {
            found = Some(s.iter().copied().collect());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    found
}
