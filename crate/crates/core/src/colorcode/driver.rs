use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hash::{perfect_family, repetitions, HashFunction};
use super::kernel::{
    extract_weighted_solution, streaming_max_coverage, ColorKernel, ColorMemoryReport,
};
use crate::coverage_oracle::CoverageInstance;
use crate::{ElementId, ElementSet, Error, Matchoid, PointId, Result, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepetitionReport {
    pub seed: u64,
    pub memory: ColorMemoryReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DriverResult {
    pub kernel: ColorKernel,
    pub repetitions: Vec<RepetitionReport>,
    pub solution: ElementSet,
    pub value: Weight,
}

/// Seeds for `u` independent hash functions derived from `seed`.
pub fn repetition_seeds(seed: u64, u: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..u).map(|_| rng.next_u64()).collect()
}

/// Runs one streaming pass per hash function, unions the kernels and
/// extracts once from the union. `threads > 1` runs the passes on a
/// dedicated pool; the result does not depend on it.
pub fn run_colorings(
    instance: &CoverageInstance,
    mc: &Matchoid,
    order: &[ElementId],
    hashes: &[HashFunction],
    threads: usize,
) -> Result<DriverResult> {
    let one = |h: &HashFunction| streaming_max_coverage(instance, mc, order, h);
    let runs: Vec<Result<(ColorKernel, ColorMemoryReport)>> = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
        pool.install(|| hashes.par_iter().map(one).collect())
    } else {
        hashes.iter().map(one).collect()
    };
    let mut kernel = ColorKernel::default();
    let mut repetitions = Vec::with_capacity(hashes.len());
    for (h, run) in hashes.iter().zip(runs) {
        let (k, memory) = run?;
        kernel.merge(k);
        repetitions.push(RepetitionReport {
            seed: h.seed(),
            memory,
        });
    }
    let z = hashes.first().map(HashFunction::z).unwrap_or(1);
    let (solution, value) = extract_weighted_solution(&kernel.elements, mc, z, &kernel.points);
    Ok(DriverResult {
        kernel,
        repetitions,
        solution,
        value,
    })
}

/// `⌈e^z ln(1/ε)⌉` independently seeded colorings.
pub fn randomized_driver(
    instance: &CoverageInstance,
    mc: &Matchoid,
    order: &[ElementId],
    z: usize,
    eps: f64,
    seed: u64,
    threads: usize,
) -> Result<DriverResult> {
    let u = repetitions(z, eps)?;
    let hashes = repetition_seeds(seed, u)
        .into_iter()
        .map(|s| HashFunction::draw(s, z, instance.universe_size()))
        .collect::<Result<Vec<_>>>()?;
    run_colorings(instance, mc, order, &hashes, threads)
}

/// Points that occur in some pointset.
pub fn realized_universe(instance: &CoverageInstance) -> Vec<PointId> {
    let mut u: Vec<PointId> = instance.pointsets().values().flatten().copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// One coloring per member of a family that is perfect on the realized
/// universe.
pub fn perfect_driver(
    instance: &CoverageInstance,
    mc: &Matchoid,
    order: &[ElementId],
    z: usize,
    threads: usize,
) -> Result<DriverResult> {
    let family = perfect_family(z, &realized_universe(instance), instance.universe_size())?;
    run_colorings(instance, mc, order, &family, threads)
}

pub const PLANTED_SEARCH_LIMIT: u64 = 100_000;

/// The first seed from `start` whose hash is injective on `target`.
pub fn well_coloring_seed(
    target: &[PointId],
    z: usize,
    m: usize,
    start: u64,
) -> Result<HashFunction> {
    for seed in start..start.saturating_add(PLANTED_SEARCH_LIMIT) {
        let h = HashFunction::draw(seed, z, m)?;
        if h.is_injective_on(target) {
            return Ok(h);
        }
    }
    Err(Error::Family(format!(
        "no seed in {start}..+{PLANTED_SEARCH_LIMIT} colors {target:?} injectively"
    )))
}

/// A single coloring that is injective on `target`.
pub fn planted_driver(
    instance: &CoverageInstance,
    mc: &Matchoid,
    order: &[ElementId],
    z: usize,
    target: &[PointId],
    seed: u64,
) -> Result<DriverResult> {
    let h = well_coloring_seed(target, z, instance.universe_size(), seed)?;
    run_colorings(instance, mc, order, &[h], 1)
}
