//! Streaming maintenance of a joint k-representative set: on each arrival
//! `R ← RepSet(R + e)`.

use std::collections::HashSet;

use serde::Serialize;

use crate::repset::{gamma, rep_set};
use crate::{ElementId, ElementSet, Error, Matchoid, Result, Weight, WeightFn};

/// An element as it arrives: its weight and the indices of the matroids
/// whose ground contains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrival {
    pub id: ElementId,
    pub weight: Weight,
    pub incidence: Vec<usize>,
}

impl Arrival {
    pub fn from_matchoid(mc: &Matchoid, id: ElementId, weight: Weight) -> Self {
        Arrival {
            id,
            weight,
            incidence: mc.incidence(id).to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepReport {
    pub step: usize,
    pub element: ElementId,
    pub kept: bool,
    pub kernel_size: usize,
    pub queries: u64,
    pub guess_calls: u64,
    pub max_depth: usize,
    pub aux_bits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemoryReport {
    pub arrivals: usize,
    pub kernel_size: usize,
    pub peak_kernel_size: usize,
    /// Peak working storage for one update, with `J` stored implicitly as
    /// the (element, matroid index) pairs on the current recursion path.
    pub peak_aux_bits: u64,
    pub aux_bits_limit: u64,
    pub independence_queries: u64,
    pub max_queries_per_push: u64,
    pub gamma: u64,
}

#[derive(Debug)]
pub struct StreamState<'a> {
    mc: &'a Matchoid,
    k: usize,
    gamma: u64,
    weights: WeightFn,
    current: ElementSet,
    seen: HashSet<ElementId>,
    queries: u64,
    max_queries_per_push: u64,
    peak_kernel: usize,
    peak_aux_bits: u64,
}

fn ceil_log2(n: usize) -> u64 {
    (usize::BITS - n.max(2).saturating_sub(1).leading_zeros()) as u64
}

impl<'a> StreamState<'a> {
    pub fn new(mc: &'a Matchoid, k: usize) -> Result<Self> {
        let gamma = gamma(mc.ell(), k)?;
        Ok(StreamState {
            mc,
            k,
            gamma,
            weights: WeightFn::new(),
            current: ElementSet::new(),
            seen: HashSet::new(),
            queries: 0,
            max_queries_per_push: 0,
            peak_kernel: 0,
            peak_aux_bits: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn current(&self) -> &ElementSet {
        &self.current
    }

    /// Weights of every element seen so far, with arrival order.
    pub fn weights(&self) -> &WeightFn {
        &self.weights
    }

    pub fn arrivals(&self) -> usize {
        self.seen.len()
    }

    fn entry_bits(&self) -> u64 {
        ceil_log2(self.seen.len()) + ceil_log2(self.mc.len())
    }

    pub fn push(&mut self, arrival: Arrival) -> Result<StepReport> {
        let e = arrival.id;
        if !self.mc.universe().contains(&e) {
            return Err(Error::Domain {
                element: e,
                context: "the matchoid universe".into(),
            });
        }
        if self.seen.contains(&e) {
            return Err(Error::Stream(format!("element {e} arrived twice")));
        }
        let mut incidence = arrival.incidence.clone();
        incidence.sort_unstable();
        if incidence != self.mc.incidence(e) {
            return Err(Error::Stream(format!(
                "incidence {:?} of {e} disagrees with the matchoid ({:?})",
                arrival.incidence,
                self.mc.incidence(e)
            )));
        }
        self.seen.insert(e);
        self.weights.insert(e, arrival.weight);

        let mut t: Vec<ElementId> = self.current.iter().copied().collect();
        t.push(e);
        let run = rep_set(&t, self.mc, &self.weights, self.k)?;
        self.current = run.set;
        self.queries += run.queries;
        self.max_queries_per_push = self.max_queries_per_push.max(run.queries);
        self.peak_kernel = self.peak_kernel.max(self.current.len());
        let aux_bits = run.max_depth as u64 * self.entry_bits();
        self.peak_aux_bits = self.peak_aux_bits.max(aux_bits);
        Ok(StepReport {
            step: self.seen.len(),
            element: e,
            kept: self.current.contains(&e),
            kernel_size: self.current.len(),
            queries: run.queries,
            guess_calls: run.calls,
            max_depth: run.max_depth,
            aux_bits,
        })
    }

    pub fn memory_report(&self) -> MemoryReport {
        let path = ((self.k - 1) * self.mc.ell()) as u64;
        MemoryReport {
            arrivals: self.seen.len(),
            kernel_size: self.current.len(),
            peak_kernel_size: self.peak_kernel,
            peak_aux_bits: self.peak_aux_bits,
            aux_bits_limit: path * self.entry_bits(),
            independence_queries: self.queries,
            max_queries_per_push: self.max_queries_per_push,
            gamma: self.gamma,
        }
    }

    pub fn finish(self) -> ElementSet {
        self.current
    }
}

/// Streams `order` through a fresh state, with weights and incidences taken
/// from `w` and `mc`.
pub fn run_stream(
    mc: &Matchoid,
    w: &WeightFn,
    order: &[ElementId],
    k: usize,
) -> Result<(ElementSet, Vec<StepReport>, MemoryReport)> {
    let mut state = StreamState::new(mc, k)?;
    let mut steps = Vec::with_capacity(order.len());
    for &e in order {
        steps.push(state.push(Arrival::from_matchoid(mc, e, w.weight(e)))?);
    }
    let report = state.memory_report();
    Ok((state.finish(), steps, report))
}
