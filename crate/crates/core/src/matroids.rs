//! Matroids behind an independence oracle, and the concrete families the
//! instance format can describe.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::{ElementId, ElementSet, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub elements: Vec<ElementId>,
    pub capacity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    Uniform {
        rank: usize,
    },
    Partition {
        blocks: Vec<Block>,
    },
    /// Each element is an edge between two vertices.
    Graphic {
        edges: BTreeMap<ElementId, (u32, u32)>,
    },
    /// A set is independent iff it is contained in one of the listed sets.
    Explicit {
        independent: Vec<ElementSet>,
    },
}

impl MatroidKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatroidKind::Uniform { .. } => "uniform",
            MatroidKind::Partition { .. } => "partition",
            MatroidKind::Graphic { .. } => "graphic",
            MatroidKind::Explicit { .. } => "explicit",
        }
    }
}

#[derive(Debug)]
enum Oracle {
    Uniform(usize),
    Partition {
        block_of: HashMap<ElementId, usize>,
        capacities: Vec<usize>,
    },
    Graphic {
        endpoints: HashMap<ElementId, (usize, usize)>,
        vertices: usize,
    },
    Explicit(Vec<ElementSet>),
}

/// A matroid `(X_i, I_i)` given by its ground set and an independence oracle.
///
/// Every oracle evaluation bumps a monotone query counter.
#[derive(Debug)]
pub struct Matroid {
    ground: ElementSet,
    kind: MatroidKind,
    oracle: Oracle,
    queries: AtomicU64,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        // The oracle tables are rebuilt from the kind; they are derived data.
        let mut m = Matroid::build(self.ground.clone(), self.kind.clone());
        m.queries = AtomicU64::new(self.queries());
        m
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.kind == other.kind
    }
}

impl Matroid {
    fn build(ground: ElementSet, kind: MatroidKind) -> Self {
        let oracle = match &kind {
            MatroidKind::Uniform { rank } => Oracle::Uniform(*rank),
            MatroidKind::Partition { blocks } => Oracle::Partition {
                block_of: blocks
                    .iter()
                    .enumerate()
                    .flat_map(|(i, b)| b.elements.iter().map(move |&e| (e, i)))
                    .collect(),
                capacities: blocks.iter().map(|b| b.capacity).collect(),
            },
            MatroidKind::Graphic { edges } => {
                let mut index = HashMap::new();
                let mut endpoints = HashMap::new();
                for (&e, &(u, v)) in edges {
                    let next = index.len();
                    let a = *index.entry(u).or_insert(next);
                    let next = index.len();
                    let b = *index.entry(v).or_insert(next);
                    endpoints.insert(e, (a, b));
                }
                Oracle::Graphic {
                    endpoints,
                    vertices: index.len(),
                }
            }
            MatroidKind::Explicit { independent } => Oracle::Explicit(independent.clone()),
        };
        Matroid {
            ground,
            kind,
            oracle,
            queries: AtomicU64::new(0),
        }
    }

    pub fn uniform(ground: ElementSet, rank: usize) -> Self {
        Self::build(ground, MatroidKind::Uniform { rank })
    }

    /// Blocks must be pairwise disjoint; the ground set is their union.
    pub fn partition(blocks: Vec<Block>) -> Result<Self> {
        let mut ground = ElementSet::new();
        for b in &blocks {
            for &e in &b.elements {
                if !ground.insert(e) {
                    return Err(Error::Parameter(format!(
                        "element {e} appears in more than one partition block"
                    )));
                }
            }
        }
        Ok(Self::build(ground, MatroidKind::Partition { blocks }))
    }

    pub fn graphic(edges: BTreeMap<ElementId, (u32, u32)>) -> Self {
        let ground = edges.keys().copied().collect();
        Self::build(ground, MatroidKind::Graphic { edges })
    }

    /// The independent family is the downward closure of `independent`.
    /// Call [`Matroid::check_exchange`] to validate the augmentation axiom.
    pub fn explicit(ground: ElementSet, independent: Vec<ElementSet>) -> Result<Self> {
        for s in &independent {
            if let Some(&e) = s.iter().find(|e| !ground.contains(e)) {
                return Err(Error::Domain {
                    element: e,
                    context: "an explicit matroid".into(),
                });
            }
        }
        Ok(Self::build(ground, MatroidKind::Explicit { independent }))
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    /// Total number of oracle evaluations made so far.
    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn is_independent(&self, s: &ElementSet) -> Result<bool> {
        if let Some(&e) = s.iter().find(|e| !self.ground.contains(e)) {
            return Err(Error::Domain {
                element: e,
                context: format!("{} matroid", self.kind.name()),
            });
        }
        let items: Vec<ElementId> = s.iter().copied().collect();
        Ok(self.evaluate(&items))
    }

    /// Oracle call on a slice of distinct elements of the ground set.
    pub(crate) fn evaluate(&self, s: &[ElementId]) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        match &self.oracle {
            Oracle::Uniform(rank) => s.len() <= *rank,
            Oracle::Partition {
                block_of,
                capacities,
            } => {
                let mut used = vec![0usize; capacities.len()];
                s.iter().all(|e| {
                    let b = block_of[e];
                    used[b] += 1;
                    used[b] <= capacities[b]
                })
            }
            Oracle::Graphic {
                endpoints,
                vertices,
            } => {
                let mut forest = DisjointSets::new(*vertices);
                s.iter().all(|e| {
                    let (u, v) = endpoints[e];
                    forest.union(u, v)
                })
            }
            Oracle::Explicit(family) => family
                .iter()
                .any(|basis| s.iter().all(|e| basis.contains(e))),
        }
    }

    /// Size of a largest independent subset of `s`, computed greedily.
    pub fn rank(&self, s: &ElementSet) -> Result<usize> {
        self.check_ground(s)?;
        let mut basis: Vec<ElementId> = Vec::new();
        for &e in s {
            basis.push(e);
            if !self.evaluate(&basis) {
                basis.pop();
            }
        }
        Ok(basis.len())
    }

    /// `span(T) = T ∪ { e ∉ T : T + e dependent }` for independent `T`.
    pub fn span(&self, t: &ElementSet) -> Result<ElementSet> {
        if !self.is_independent(t)? {
            return Err(Error::Contract(format!(
                "span requested for a dependent set in a {} matroid",
                self.kind.name()
            )));
        }
        let mut items: Vec<ElementId> = t.iter().copied().collect();
        let mut out = t.clone();
        for &e in &self.ground {
            if t.contains(&e) {
                continue;
            }
            items.push(e);
            if !self.evaluate(&items) {
                out.insert(e);
            }
            items.pop();
        }
        Ok(out)
    }

    /// Whether `independent + e` is dependent, i.e. `e ∈ span(independent)`
    /// for `e` outside the set. Elements outside the ground set are never
    /// spanned; elements of the set always are.
    pub(crate) fn spans(&self, independent: &[ElementId], e: ElementId) -> bool {
        if !self.ground.contains(&e) {
            return false;
        }
        if independent.contains(&e) {
            return true;
        }
        let mut items = independent.to_vec();
        items.push(e);
        !self.evaluate(&items)
    }

    fn check_ground(&self, s: &ElementSet) -> Result<()> {
        match s.iter().find(|e| !self.ground.contains(e)) {
            Some(&e) => Err(Error::Domain {
                element: e,
                context: format!("{} matroid", self.kind.name()),
            }),
            None => Ok(()),
        }
    }

    /// Enumerates every independent set. Exponential; only for tiny grounds.
    pub fn independent_sets(&self) -> Result<Vec<ElementSet>> {
        let items: Vec<ElementId> = self.ground.iter().copied().collect();
        if items.len() > 20 {
            return Err(Error::SizeGuard {
                size: items.len(),
                limit: 20,
            });
        }
        let mut out = Vec::new();
        for mask in 0u32..(1 << items.len()) {
            let s: Vec<ElementId> = (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i])
                .collect();
            if self.evaluate(&s) {
                out.push(s.into_iter().collect());
            }
        }
        Ok(out)
    }

    /// The same matroid with an explicitly listed independent family.
    pub fn to_explicit(&self) -> Result<Matroid> {
        Matroid::explicit(self.ground.clone(), self.independent_sets()?)
    }

    /// Checks the augmentation axiom over all pairs of independent sets.
    /// Returns a violating pair `(A, B)` with `|A| < |B|` if one exists.
    pub fn check_exchange(&self) -> Result<Option<(ElementSet, ElementSet)>> {
        if self.ground.len() > 12 {
            return Err(Error::SizeGuard {
                size: self.ground.len(),
                limit: 12,
            });
        }
        let family = self.independent_sets()?;
        for a in &family {
            for b in family.iter().filter(|b| b.len() > a.len()) {
                let ok = b.difference(a).any(|&e| {
                    let mut s: Vec<ElementId> = a.iter().copied().collect();
                    s.push(e);
                    self.evaluate(&s)
                });
                if !ok {
                    return Ok(Some((a.clone(), b.clone())));
                }
            }
        }
        Ok(None)
    }
}

/// Union-find with path halving and union by size; rebuilt per query.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already connected (a cycle).
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
