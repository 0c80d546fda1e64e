//! Joint k-representative sets via the branching `Guess` recursion, and the
//! offline kernel for maximum-weight feasible sets.
//!
//! A subset `R ⊆ T` is a joint k-representative set for `(T, M, w)` if for
//! every feasible `B` with `|B| ≤ k` and every `b ∈ T ∩ B` there is some
//! `e ∈ R` with `w(e) ≥ w(b)` and `B − b + e` feasible.

use crate::{search, ElementId, ElementSet, Error, Matchoid, Result, Weight, WeightFn};

/// `Γ_{ℓ,k} = Σ_{q=0}^{(k−1)ℓ} ℓ^q`, the bound on the recursion tree size
/// and hence on the representative set.
pub fn gamma(ell: usize, k: usize) -> Result<u64> {
    if ell == 0 || k == 0 {
        return Err(Error::Parameter(format!(
            "gamma needs ell, k >= 1 (got {ell}, {k})"
        )));
    }
    let top = (k - 1)
        .checked_mul(ell)
        .ok_or(Error::Overflow("gamma exponent"))?;
    let ell = ell as u64;
    let mut total: u64 = 0;
    let mut term: u64 = 1;
    for q in 0..=top {
        total = total.checked_add(term).ok_or(Error::Overflow("gamma"))?;
        if q < top {
            term = term.checked_mul(ell).ok_or(Error::Overflow("gamma"))?;
        }
    }
    Ok(total)
}

/// The tuple `J = (J_1, …, J_s)`; each `J_i` is independent in `M_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MultiDimSet {
    parts: Vec<Vec<ElementId>>,
    norm: usize,
}

impl MultiDimSet {
    pub fn empty(s: usize) -> Self {
        MultiDimSet {
            parts: vec![Vec::new(); s],
            norm: 0,
        }
    }

    /// `‖J‖ = Σ |J_i|`.
    pub fn norm(&self) -> usize {
        self.norm
    }

    pub fn part(&self, i: usize) -> &[ElementId] {
        &self.parts[i]
    }

    /// `J +_i e`, in place.
    pub fn push(&mut self, i: usize, e: ElementId) {
        self.parts[i].push(e);
        self.norm += 1;
    }

    pub fn pop(&mut self, i: usize) -> Option<ElementId> {
        let e = self.parts[i].pop();
        if e.is_some() {
            self.norm -= 1;
        }
        e
    }
}

/// Output of one `RepSet(T)` call together with its cost accounting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepSetRun {
    pub set: ElementSet,
    /// Independence-oracle evaluations made by this call.
    pub queries: u64,
    /// Number of `Guess` invocations (nodes of the recursion tree).
    pub calls: u64,
    /// Largest `‖J‖` seen at any call.
    pub max_depth: usize,
    /// Largest number of recursive calls made by a single call.
    pub max_children: usize,
    pub input_size: usize,
}

/// Context for the `Guess` recursion.
pub struct RepSetBuilder<'a> {
    mc: &'a Matchoid,
    w: &'a WeightFn,
    k: usize,
    depth_limit: usize,
    queries: u64,
    calls: u64,
    max_depth: usize,
    max_children: usize,
}

impl<'a> RepSetBuilder<'a> {
    pub fn new(mc: &'a Matchoid, w: &'a WeightFn, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::Parameter("k must be at least 1".into()));
        }
        Ok(RepSetBuilder {
            mc,
            w,
            k,
            depth_limit: (k - 1) * mc.ell(),
            queries: 0,
            calls: 0,
            max_depth: 0,
            max_children: 0,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `RepSet(T)`: runs `Guess((∅,…,∅), T)`.
    pub fn run(mut self, t: &[ElementId]) -> Result<RepSetRun> {
        let mut seen = ElementSet::new();
        for &e in t {
            if !self.mc.universe().contains(&e) {
                return Err(Error::Domain {
                    element: e,
                    context: "the matchoid universe".into(),
                });
            }
            if !seen.insert(e) {
                return Err(Error::Parameter(format!("element {e} repeated in T")));
            }
        }
        let mut y = t.to_vec();
        y.sort_by(|&a, &b| self.w.priority_cmp(a, b));
        let mut j = MultiDimSet::empty(self.mc.len());
        let mut out = ElementSet::new();
        self.guess(&mut j, &y, &mut out);
        Ok(RepSetRun {
            set: out,
            queries: self.queries,
            calls: self.calls,
            max_depth: self.max_depth,
            max_children: self.max_children,
            input_size: t.len(),
        })
    }

    /// One `Guess(J, Y)` call. `y` must be sorted by priority, so its head is
    /// the argmax. Selected elements are added to `out`.
    pub fn guess(&mut self, j: &mut MultiDimSet, y: &[ElementId], out: &mut ElementSet) {
        self.calls += 1;
        self.max_depth = self.max_depth.max(j.norm());
        let Some(&e) = y.first() else {
            return;
        };
        out.insert(e);
        if j.norm() >= self.depth_limit {
            return;
        }
        let owners = self.mc.incidence(e);
        self.max_children = self.max_children.max(owners.len());
        for &i in owners {
            j.push(i, e);
            let m = self.mc.matroid(i);
            // Y_i = Y \ span_{M_i}(J_i + e); the head e is always spanned.
            let mut y_i = Vec::with_capacity(y.len());
            for &x in &y[1..] {
                let spanned = if m.ground().contains(&x) {
                    self.queries += 1;
                    m.spans(j.part(i), x)
                } else {
                    false
                };
                if !spanned {
                    y_i.push(x);
                }
            }
            self.guess(j, &y_i, out);
            j.pop(i);
        }
    }
}

/// Joint k-representative set of `t` for `(mc, w)`.
pub fn rep_set(t: &[ElementId], mc: &Matchoid, w: &WeightFn, k: usize) -> Result<RepSetRun> {
    RepSetBuilder::new(mc, w, k)?.run(t)
}

#[derive(Clone, Debug)]
pub struct KernelSolution {
    pub kernel: RepSetRun,
    pub solution: ElementSet,
    pub value: Weight,
}

/// Kernel `RepSet(X)` and a maximum-weight feasible subset of it of size at
/// most `k`, found by exhaustive search over the kernel.
pub fn kernel_max_weight(mc: &Matchoid, w: &WeightFn, k: usize) -> Result<KernelSolution> {
    let all: Vec<ElementId> = mc.universe().iter().copied().collect();
    let kernel = rep_set(&all, mc, w, k)?;
    let mut candidates: Vec<ElementId> = kernel.set.iter().copied().collect();
    candidates.sort_by(|&a, &b| w.priority_cmp(a, b));
    let (solution, value) = search::max_weight_feasible(mc, &candidates, w, k);
    Ok(KernelSolution {
        kernel,
        solution: solution.into_iter().collect(),
        value,
    })
}
