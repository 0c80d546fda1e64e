//! ℓ-matchoids: a family of matroids on overlapping ground sets where each
//! element lies in at most ℓ of the grounds.

use std::collections::BTreeMap;

use crate::{ElementId, ElementSet, Error, Matroid, Result};

#[derive(Clone, Debug)]
pub struct Matchoid {
    matroids: Vec<Matroid>,
    incidence: BTreeMap<ElementId, Vec<usize>>,
    universe: ElementSet,
    max_incidence: usize,
}

impl Matchoid {
    /// Builds the matchoid and its incidence map.
    ///
    /// Fails if a ground set leaves the universe, if some element is a loop
    /// in one of its matroids, or if `s > n·ℓ`.
    pub fn new(universe: ElementSet, matroids: Vec<Matroid>) -> Result<Self> {
        let mut incidence: BTreeMap<ElementId, Vec<usize>> =
            universe.iter().map(|&e| (e, Vec::new())).collect();
        for (i, m) in matroids.iter().enumerate() {
            for &e in m.ground() {
                incidence
                    .get_mut(&e)
                    .ok_or_else(|| Error::Domain {
                        element: e,
                        context: "the matchoid universe".into(),
                    })?
                    .push(i);
            }
        }
        for (&e, owners) in &incidence {
            for &i in owners {
                if !matroids[i].evaluate(&[e]) {
                    return Err(Error::Loop(e, i));
                }
            }
        }
        let max_incidence = incidence.values().map(Vec::len).max().unwrap_or(0);
        let mc = Matchoid {
            matroids,
            incidence,
            universe,
            max_incidence,
        };
        if mc.matroids.len() > mc.universe.len() * mc.ell() {
            return Err(Error::Parameter(format!(
                "{} matroids over {} elements exceeds n·ℓ = {}",
                mc.matroids.len(),
                mc.universe.len(),
                mc.universe.len() * mc.ell()
            )));
        }
        Ok(mc)
    }

    pub fn matroids(&self) -> &[Matroid] {
        &self.matroids
    }

    pub fn matroid(&self, i: usize) -> &Matroid {
        &self.matroids[i]
    }

    /// Number of matroids `s`.
    pub fn len(&self) -> usize {
        self.matroids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matroids.is_empty()
    }

    pub fn universe(&self) -> &ElementSet {
        &self.universe
    }

    /// Indices of the matroids whose ground contains `e` (`X(e)`).
    pub fn incidence(&self, e: ElementId) -> &[usize] {
        self.incidence.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `ℓ`: the largest incidence over all elements, and at least 1.
    pub fn ell(&self) -> usize {
        self.max_incidence.max(1)
    }

    /// The raw maximum incidence, which is 0 when no element is constrained.
    pub fn max_incidence(&self) -> usize {
        self.max_incidence
    }

    /// Sum of the query counters of all matroids.
    pub fn independence_queries(&self) -> u64 {
        self.matroids.iter().map(Matroid::queries).sum()
    }

    pub fn is_feasible(&self, s: &ElementSet) -> Result<bool> {
        if let Some(&e) = s.iter().find(|e| !self.universe.contains(e)) {
            return Err(Error::Domain {
                element: e,
                context: "the matchoid universe".into(),
            });
        }
        let items: Vec<ElementId> = s.iter().copied().collect();
        Ok(self.feasible_slice(&items))
    }

    /// Feasibility of a slice of distinct universe elements. Only the
    /// matroids touched by some element are queried.
    pub(crate) fn feasible_slice(&self, s: &[ElementId]) -> bool {
        let mut touched: Vec<usize> = s.iter().flat_map(|&e| self.incidence(e)).copied().collect();
        touched.sort_unstable();
        touched.dedup();
        touched.into_iter().all(|i| {
            let m = &self.matroids[i];
            let trace: Vec<ElementId> = s
                .iter()
                .copied()
                .filter(|e| m.ground().contains(e))
                .collect();
            m.evaluate(&trace)
        })
    }

    /// Feasibility of `s + e` restricted to the matroids containing `e`,
    /// assuming `s` itself is feasible.
    pub(crate) fn feasible_extension(&self, s: &[ElementId], e: ElementId) -> bool {
        self.incidence(e).iter().all(|&i| {
            let m = &self.matroids[i];
            let mut trace: Vec<ElementId> = s
                .iter()
                .copied()
                .filter(|x| m.ground().contains(x))
                .collect();
            trace.push(e);
            m.evaluate(&trace)
        })
    }

    /// An upper bound on the size of any feasible set (not the exact rank).
    ///
    /// Minimum of `|X|`, `Σ_i rank(M_i) + |uncovered|` and, for each `i`,
    /// `rank(M_i) + |X \ X_i|`.
    pub fn rank_upper(&self) -> usize {
        let n = self.universe.len();
        let ranks: Vec<usize> = self
            .matroids
            .iter()
            .map(|m| m.rank(m.ground()).expect("ground is within the ground"))
            .collect();
        let uncovered = self.incidence.values().filter(|v| v.is_empty()).count();
        let mut bound = n.min(ranks.iter().sum::<usize>() + uncovered);
        for (m, r) in self.matroids.iter().zip(&ranks) {
            bound = bound.min(r + (n - m.ground().len()));
        }
        bound
    }
}
