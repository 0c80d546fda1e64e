use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::Serialize;

use super::hash::HashFunction;
use super::ColorSet;
use crate::coverage_oracle::CoverageInstance;
use crate::repset::gamma;
use crate::stream::{Arrival, StreamState};
use crate::{search, ElementId, ElementSet, Error, Matchoid, PointId, Result, Weight};

/// The points of one element after coloring, keeping only the heaviest
/// point of each color (ties go to the smaller point id).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPointSet {
    element: ElementId,
    /// `(point, weight, color)`, sorted by color.
    points: Vec<(PointId, Weight, u32)>,
}

impl WeightedPointSet {
    pub fn new(
        element: ElementId,
        points: impl IntoIterator<Item = (PointId, Weight)>,
        h: &HashFunction,
    ) -> Self {
        let mut best: BTreeMap<u32, (PointId, Weight)> = BTreeMap::new();
        for (p, w) in points {
            let c = h.color(p);
            match best.get(&c) {
                Some(&(q, v)) if v > w || (v == w && q < p) => {}
                _ => {
                    best.insert(c, (p, w));
                }
            }
        }
        WeightedPointSet {
            element,
            points: best.into_iter().map(|(c, (p, w))| (p, w, c)).collect(),
        }
    }

    pub fn element(&self) -> ElementId {
        self.element
    }

    pub fn points(&self) -> &[(PointId, Weight, u32)] {
        &self.points
    }

    /// `h(e)`.
    pub fn colors(&self) -> ColorSet {
        ColorSet::from_colors(self.points.iter().map(|&(_, _, c)| c))
    }

    fn heaviest(&self, c: u32) -> Option<Weight> {
        self.points
            .iter()
            .find(|&&(_, _, d)| d == c)
            .map(|&(_, w, _)| w)
    }
}

/// `w_C(e)`: the heaviest point of each color of `C`, summed.
pub fn w_c(e: &WeightedPointSet, c: ColorSet) -> Result<Weight> {
    f_c(std::slice::from_ref(e), c)
}

/// `f_C(S)`: for each color of `C`, the heaviest point of that color
/// covered by `S`, summed.
pub fn f_c(s: &[WeightedPointSet], c: ColorSet) -> Result<Weight> {
    let mut total = Weight::zero();
    for color in c.iter() {
        let best = s.iter().filter_map(|e| e.heaviest(color)).max();
        match best {
            Some(w) => total += w,
            None => {
                return Err(Error::Domain {
                    element: s.first().map(|e| e.element).unwrap_or_default(),
                    context: format!("X_C for C = {c}: color {color} is not covered"),
                })
            }
        }
    }
    Ok(total)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ColorMemoryReport {
    pub rep_set_instances: usize,
    pub kernel_size: usize,
    pub max_instance_size: usize,
    /// `Γ_{ℓ,z}`, the per-instance size bound.
    pub gamma: u64,
    /// Points retained for the kernel elements (at most `z̄` each).
    pub retained_points: usize,
    pub retained_points_bound_zbar: usize,
    pub retained_points_bound_z: usize,
    pub independence_queries: u64,
    pub hash_seed_bits: u64,
}

/// One run of the streaming kernel for a fixed coloring `h`: a streaming
/// rep-set instance per nonempty `C ⊆ [z̄]` with weights `w_C`.
pub struct ColorCodingStream<'a> {
    mc: &'a Matchoid,
    h: &'a HashFunction,
    z: usize,
    instances: Vec<(ColorSet, StreamState<'a>)>,
    retained: BTreeMap<ElementId, WeightedPointSet>,
    seen: BTreeSet<ElementId>,
}

impl<'a> ColorCodingStream<'a> {
    pub fn new(mc: &'a Matchoid, h: &'a HashFunction) -> Result<Self> {
        let z = h.z();
        let instances = ColorSet::nonempty_subsets(h.zbar())
            .map(|c| Ok((c, StreamState::new(mc, z)?)))
            .collect::<Result<_>>()?;
        Ok(ColorCodingStream {
            mc,
            h,
            z,
            instances,
            retained: BTreeMap::new(),
            seen: BTreeSet::new(),
        })
    }

    pub fn instance_count(&self) -> usize {
        self.instances.len()
    }

    /// Colors and prunes the points of `e`, then feeds `e` with weight
    /// `w_C(e)` to every instance `C ⊆ h(e)`. Returns the number of
    /// instances touched.
    pub fn push(
        &mut self,
        e: ElementId,
        points: impl IntoIterator<Item = (PointId, Weight)>,
    ) -> Result<usize> {
        if !self.seen.insert(e) {
            return Err(Error::Stream(format!("element {e} arrived twice")));
        }
        let ws = WeightedPointSet::new(e, points, self.h);
        let colors = ws.colors();
        let mut touched = 0;
        for (c, state) in &mut self.instances {
            if c.is_subset(colors) {
                let weight = w_c(&ws, *c)?;
                state.push(Arrival::from_matchoid(self.mc, e, weight))?;
                touched += 1;
            }
        }
        self.retained.insert(e, ws);
        Ok(touched)
    }

    /// `R_C` for every nonempty `C`.
    pub fn rep_sets(&self) -> impl Iterator<Item = (ColorSet, &ElementSet)> + '_ {
        self.instances.iter().map(|(c, s)| (*c, s.current()))
    }

    pub fn kernel(&self) -> ElementSet {
        self.instances
            .iter()
            .flat_map(|(_, s)| s.current().iter().copied())
            .collect()
    }

    /// The pruned points of the kernel elements.
    pub fn kernel_points(&self) -> BTreeMap<ElementId, Vec<(PointId, Weight)>> {
        self.kernel()
            .into_iter()
            .map(|e| {
                (
                    e,
                    self.retained[&e]
                        .points
                        .iter()
                        .map(|&(p, w, _)| (p, w))
                        .collect(),
                )
            })
            .collect()
    }

    pub fn memory_report(&self) -> Result<ColorMemoryReport> {
        let kernel = self.kernel();
        Ok(ColorMemoryReport {
            rep_set_instances: self.instances.len(),
            kernel_size: kernel.len(),
            max_instance_size: self
                .instances
                .iter()
                .map(|(_, s)| s.current().len())
                .max()
                .unwrap_or(0),
            gamma: gamma(self.mc.ell(), self.z)?,
            retained_points: kernel.iter().map(|e| self.retained[e].points.len()).sum(),
            retained_points_bound_zbar: kernel.len() * self.h.zbar(),
            retained_points_bound_z: kernel.len() * self.z,
            independence_queries: self
                .instances
                .iter()
                .map(|(_, s)| s.memory_report().independence_queries)
                .sum(),
            hash_seed_bits: self.h.seed_bits(),
        })
    }
}

/// Kernel elements with their retained points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColorKernel {
    pub elements: ElementSet,
    pub points: BTreeMap<ElementId, Vec<(PointId, Weight)>>,
}

impl ColorKernel {
    pub fn merge(&mut self, other: ColorKernel) {
        self.elements.extend(other.elements);
        for (e, pts) in other.points {
            let entry = self.points.entry(e).or_default();
            for pw in pts {
                if !entry.contains(&pw) {
                    entry.push(pw);
                }
            }
            entry.sort_unstable();
        }
    }
}

/// Runs one coloring over the stream `order` of `instance`.
pub fn streaming_max_coverage(
    instance: &CoverageInstance,
    mc: &Matchoid,
    order: &[ElementId],
    h: &HashFunction,
) -> Result<(ColorKernel, ColorMemoryReport)> {
    let mut run = ColorCodingStream::new(mc, h)?;
    for &e in order {
        let points: Vec<(PointId, Weight)> = instance
            .points(e)
            .iter()
            .map(|&p| (p, instance.point_weight(p)))
            .collect();
        run.push(e, points)?;
    }
    let report = run.memory_report()?;
    Ok((
        ColorKernel {
            elements: run.kernel(),
            points: run.kernel_points(),
        },
        report,
    ))
}

/// Total weight of the `z` heaviest distinct points covered by `s`.
pub fn top_z_weight(
    s: &[ElementId],
    points: &BTreeMap<ElementId, Vec<(PointId, Weight)>>,
    z: usize,
) -> Weight {
    let mut covered: BTreeMap<PointId, Weight> = BTreeMap::new();
    for e in s {
        for &(p, w) in points.get(e).into_iter().flatten() {
            covered.insert(p, w);
        }
    }
    let mut weights: Vec<Weight> = covered.into_values().collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    weights.into_iter().take(z).sum()
}

/// The feasible `S ⊆ R`, `|S| ≤ z`, maximizing the weight of its `z`
/// heaviest covered points.
pub fn extract_weighted_solution(
    kernel: &ElementSet,
    mc: &Matchoid,
    z: usize,
    points: &BTreeMap<ElementId, Vec<(PointId, Weight)>>,
) -> (ElementSet, Weight) {
    let candidates: Vec<ElementId> = kernel.iter().copied().collect();
    let mut best = (ElementSet::new(), Weight::zero());
    search::for_each_feasible_subset(mc, &candidates, z, |s| {
        let v = top_z_weight(s, points, z);
        if v > best.1 {
            best = (s.iter().copied().collect(), v);
        }
        ControlFlow::Continue(())
    });
    best
}
