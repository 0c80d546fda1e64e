//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use matchoid_kernel::bruteforce::{
    brute_max_coverage, brute_max_weight_feasible, check_joint_rep_set, check_well_colored,
};
use matchoid_kernel::colorcode::{
    extract_weighted_solution, f_c, randomized_driver, repetitions, streaming_max_coverage, w_c,
    well_coloring_seed, zbar, ColorSet, HashFunction, WeightedPointSet,
};
use matchoid_kernel::coverage_oracle::{
    disjoint_outside, extract_coverage_solution, same_points_within, CountingOracle,
    CoverageInstance, OpaqueOracle, StreamingCoverage, ValueOracle,
};
use matchoid_kernel::instances::{
    gen_coverage_matchoid, gen_random_matchoid, Instance, Kind, MatroidSpec,
};
use matchoid_kernel::repset::{gamma, kernel_max_weight, rep_set};
use matchoid_kernel::stream::{Arrival, StreamState};
use matchoid_kernel::{search, ElementId, ElementSet, Matchoid, PointId, Weight};
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn first(items: &[String]) -> String {
    items
        .first()
        .map(|f| format!("; first: {f}"))
        .unwrap_or_default()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// A random matchoid; every third instance has its first matroid rewritten
/// as an explicit independent-set list.
fn random_instance(rng: &mut ChaCha8Rng, n_max: usize, ell_max: usize) -> (Instance, Matchoid) {
    let n = rng.random_range(3..=n_max);
    let ell = rng.random_range(1..=ell_max);
    let s = rng.random_range(ell..=(ell + 2).min(n * ell));
    let seed = rng.random();
    let mut inst = gen_random_matchoid(n, s, ell, &Kind::ALL, seed).unwrap();
    if seed % 3 == 0 {
        let m = inst.matroids[0].build().unwrap().to_explicit().unwrap();
        if let matchoid_kernel::MatroidKind::Explicit { independent } = m.kind() {
            inst.matroids[0] = MatroidSpec::Explicit {
                ground: m.ground().iter().copied().collect(),
                independent: independent
                    .iter()
                    .map(|s| s.iter().copied().collect())
                    .collect(),
            };
        }
    }
    let mc = inst.to_matchoid().unwrap();
    (inst, mc)
}

fn random_subset(rng: &mut ChaCha8Rng, universe: &ElementSet) -> ElementSet {
    universe
        .iter()
        .copied()
        .filter(|_| rng.random_bool(0.7))
        .collect()
}

fn representativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut failures = Vec::new();
    let mut with_explicit = 0;
    for i in 0..200 {
        let (inst, mc) = random_instance(&mut rng, 12, 2);
        with_explicit += inst
            .matroids
            .iter()
            .any(|m| matches!(m, MatroidSpec::Explicit { .. })) as usize;
        let k = rng.random_range(1..=3);
        let w = inst.weights();
        let t = if i % 2 == 0 {
            mc.universe().clone()
        } else {
            random_subset(&mut rng, mc.universe())
        };
        let items: Vec<ElementId> = t.iter().copied().collect();
        let run = rep_set(&items, &mc, &w, k).unwrap();
        if let Some(v) = check_joint_rep_set(&run.set, &t, &mc, &w, k).unwrap() {
            failures.push(format!("instance {i}: {v:?}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "200 instances ({with_explicit} with an explicit matroid), {} counterexamples{}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn kernel_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut mismatches = Vec::new();
    for i in 0..100 {
        let (inst, mc) = random_instance(&mut rng, 14, 3);
        let k = rng.random_range(1..=4);
        let w = inst.weights();
        let got = kernel_max_weight(&mc, &w, k).unwrap();
        let best = brute_max_weight_feasible(&mc, &w, k).unwrap();
        let feasible = mc.is_feasible(&got.solution).unwrap() && got.solution.len() <= k;
        if got.value != best.value || !feasible || w.total(&got.solution) != got.value {
            mismatches.push(format!(
                "instance {i}: kernel {} vs brute {}",
                got.value, best.value
            ));
        }
    }
    outcome(
        mismatches.is_empty(),
        format!(
            "100 instances, {} mismatches{}",
            mismatches.len(),
            first(&mismatches)
        ),
    )
}

fn size_and_query_bounds() -> Outcome {
    let spots = gamma(1, 5).unwrap() == 5 && gamma(2, 3).unwrap() == 31;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut violations = Vec::new();
    let mut runs = 0;
    let mut tightest = 0.0f64;
    for i in 0..300 {
        let (inst, mc) = if i < 200 {
            random_instance(&mut rng, 14, 3)
        } else {
            let n = rng.random_range(15..=40);
            let ell = rng.random_range(1..=3);
            let inst =
                gen_random_matchoid(n, rng.random_range(ell..=6), ell, &Kind::ALL, rng.random())
                    .unwrap();
            let mc = inst.to_matchoid().unwrap();
            (inst, mc)
        };
        let w = inst.weights();
        for k in 1..=4 {
            let g = gamma(mc.ell(), k).unwrap();
            let items: Vec<ElementId> = mc.universe().iter().copied().collect();
            let run = rep_set(&items, &mc, &w, k).unwrap();
            runs += 1;
            tightest = tightest.max(run.set.len() as f64 / g as f64);
            if run.set.len() as u64 > g || run.queries > g * items.len() as u64 {
                violations.push(format!(
                    "instance {i}, k {k}: |R| {} queries {} Γ {g}",
                    run.set.len(),
                    run.queries
                ));
            }
            let mut state = StreamState::new(&mc, k).unwrap();
            for &e in &inst.stream_order {
                let before = state.current().len() as u64;
                let step = state
                    .push(Arrival::from_matchoid(&mc, e, w.weight(e)))
                    .unwrap();
                runs += 1;
                if step.kernel_size as u64 > g || step.queries > g * (before + 1) {
                    violations.push(format!("instance {i}, k {k}, stream step {}", step.step));
                }
            }
        }
    }
    outcome(
        spots && violations.is_empty(),
        format!(
            "Γ(1,5)=5, Γ(2,3)=31 {}; {runs} rep-set runs, {} violations, max |R|/Γ = {tightest:.2}",
            if spots { "ok" } else { "WRONG" },
            violations.len()
        ),
    )
}

fn streaming_prefixes() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut failures = Vec::new();
    let mut checks = 0;
    for i in 0..50 {
        let (inst, mc) = random_instance(&mut rng, 10, 2);
        let k = rng.random_range(1..=3);
        let w = inst.weights();
        let mut state = StreamState::new(&mc, k).unwrap();
        let mut prefix = ElementSet::new();
        for &e in &inst.stream_order {
            state
                .push(Arrival::from_matchoid(&mc, e, w.weight(e)))
                .unwrap();
            prefix.insert(e);
            checks += 1;
            if let Some(v) =
                check_joint_rep_set(state.current(), &prefix, &mc, state.weights(), k).unwrap()
            {
                failures.push(format!("instance {i} after {e}: {v:?}"));
            }
        }
        let kernel: Vec<ElementId> = state.current().iter().copied().collect();
        let (_, value) = search::max_weight_feasible(&mc, &kernel, &w, k);
        let best = brute_max_weight_feasible(&mc, &w, k).unwrap();
        if value != best.value {
            failures.push(format!(
                "instance {i}: extracted {value} vs optimum {}",
                best.value
            ));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "50 instances, {checks} prefix checks, {} failures{}",
            failures.len(),
            first(&failures)
        ),
    )
}

/// Checks the tree invariants against the hidden point sets. `stored`
/// maps each element seen in a tree so far to its (tree, node, slot).
fn tree_violations<V: ValueOracle>(
    alg: &StreamingCoverage<'_, V>,
    cov: &CoverageInstance,
    gamma_lz: u64,
    stored: &mut BTreeMap<ElementId, (usize, usize, usize)>,
) -> Vec<String> {
    let z = alg.z();
    let mut bad = Vec::new();
    let empty = BTreeSet::new();
    let mut now = BTreeMap::new();
    for (t, tree) in alg.trees().iter().enumerate() {
        for (idx, node) in tree.nodes().iter().enumerate() {
            let pp = node.parent_elem().map(|p| cov.points(p)).unwrap_or(&empty);
            let reps: Vec<ElementId> = node.all_reps().collect();
            if idx > 0 && reps.is_empty() {
                bad.push(format!("empty node {t}/{idx}"));
            }
            if node.depth() > z - 1 {
                bad.push(format!("node {t}/{idx} depth {}", node.depth()));
            }
            for (j, slot) in node.slots().iter().enumerate() {
                if slot.len() as u64 > gamma_lz {
                    bad.push(format!("slot {t}/{idx}/{j} holds {}", slot.len()));
                }
                for &e in slot {
                    if now.insert(e, (t, idx, j)).is_some() {
                        bad.push(format!("{e} stored twice"));
                    }
                    if cov.points(e).len() != t + 1 {
                        bad.push(format!("{e} in the tree of value {}", t + 1));
                    }
                }
            }
            let traces: Vec<BTreeSet<PointId>> = reps
                .iter()
                .map(|&e| cov.points(e).intersection(pp).copied().collect())
                .collect();
            if traces.windows(2).any(|w| w[0] != w[1]) {
                bad.push(format!("node {t}/{idx}: traces on the parent differ"));
            }
            if traces.iter().any(|tr| tr.len() < node.depth()) {
                bad.push(format!(
                    "node {t}/{idx}: trace smaller than depth {}",
                    node.depth()
                ));
            }
            for (a, &x) in reps.iter().enumerate() {
                for &y in &reps[a + 1..] {
                    let rx: BTreeSet<_> = cov.points(x).difference(pp).collect();
                    if cov.points(y).difference(pp).any(|p| rx.contains(p)) {
                        bad.push(format!("node {t}/{idx}: residuals of {x} and {y} meet"));
                    }
                }
            }
            for (_, children) in node.children() {
                if children.len() > 1 << (z - 1) {
                    bad.push(format!(
                        "node {t}/{idx}: {} children for one element",
                        children.len()
                    ));
                }
            }
        }
    }
    for (e, place) in stored.iter() {
        if now.get(e) != Some(place) {
            bad.push(format!("{e} moved or vanished"));
        }
    }
    *stored = now;
    bad
}

/// Two thirds of the instances have point sets smaller than `z`, so no
/// single element settles the question.
fn coverage_instance(
    rng: &mut ChaCha8Rng,
    weighted: bool,
    z: usize,
) -> (Instance, Matchoid, CoverageInstance) {
    let n = rng.random_range(6..=10);
    let ell = rng.random_range(1..=2);
    let s = rng.random_range(ell..=(ell + 3));
    let m = rng.random_range(4..=8);
    let max_set = if rng.random_bool(2.0 / 3.0) {
        (z - 1).max(1)
    } else {
        rng.random_range(1..=3)
    };
    let inst =
        gen_coverage_matchoid(n, s, ell, &Kind::ALL, m, max_set, weighted, rng.random()).unwrap();
    let mc = inst.to_matchoid().unwrap();
    let cov = inst.coverage().unwrap();
    (inst, mc, cov)
}

fn coverage_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let (mut misses, mut coverable, mut spurious, mut needs_several) = (0, 0, 0, 0);
    let mut invariant_failures = Vec::new();
    let mut arrivals = 0;
    for i in 0..100 {
        let z = [1, 2, 3, 3][i % 4];
        let (inst, mc, cov) = coverage_instance(&mut rng, false, z);
        let oracle = CountingOracle::new(&cov);
        let g = gamma(mc.ell(), z).unwrap();
        let mut alg = StreamingCoverage::new(&oracle, &mc, z, i % 2 == 1).unwrap();
        let mut stored = BTreeMap::new();
        for &e in &inst.stream_order {
            alg.push(e).unwrap();
            arrivals += 1;
            for v in tree_violations(&alg, &cov, g, &mut stored) {
                invariant_failures.push(format!("instance {i}: {v}"));
            }
        }
        let kernel = alg.finish();
        let best =
            brute_max_coverage(&mc, &cov.pointset_vectors(), &|_| Weight::integer(1), z).unwrap();
        let found = extract_coverage_solution(&oracle, &kernel.elements, &mc, z);
        if best.value >= Weight::integer(z as i64) {
            coverable += 1;
            misses += found.is_none() as usize;
            needs_several += kernel.early_exit.is_none() as usize;
        } else {
            spurious += found.is_some() as usize;
        }
    }
    outcome(
        misses == 0 && spurious == 0 && invariant_failures.is_empty(),
        format!(
            "100 instances, {coverable} coverable ({needs_several} without early exit), {misses} misses, {spurious} spurious, {arrivals} arrivals checked, {} invariant violations{}", invariant_failures.len(), first(&invariant_failures)
        ),
    )
}

fn value_oracle_isolation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut problems = Vec::new();

    // Predicates against direct set computation.
    let ids: Vec<ElementId> = (0..3).map(ElementId).collect();
    for trial in 0..10_000 {
        let m = rng.random_range(1..=8u32);
        let sets: BTreeMap<ElementId, BTreeSet<PointId>> = ids
            .iter()
            .map(|&e| (e, (0..m).filter(|_| rng.random_bool(0.4)).collect()))
            .collect();
        let (a, b, x) = (ids[0], ids[1], ids[2]);
        let cov = CoverageInstance::new(m as usize, sets.clone(), BTreeMap::new()).unwrap();
        let oracle = CountingOracle::new(&cov);
        let same = same_points_within(&oracle, a, b, x);
        let q_same = oracle.queries();
        let disjoint = disjoint_outside(&oracle, a, b, x);
        let q_disjoint = oracle.queries() - q_same;
        let ia: BTreeSet<_> = sets[&a].intersection(&sets[&x]).collect();
        let ib: BTreeSet<_> = sets[&b].intersection(&sets[&x]).collect();
        let ra: BTreeSet<_> = sets[&a].difference(&sets[&x]).collect();
        let rb: BTreeSet<_> = sets[&b].difference(&sets[&x]).collect();
        if same != (ia == ib) || disjoint != ra.is_disjoint(&rb) || q_same > 6 || q_disjoint > 4 {
            problems.push(format!("triple {trial}"));
        }
    }

    // The algorithm driven through a closure-backed oracle gives the same
    // kernel and query counts as the counting oracle.
    let mut runs = 0;
    let mut arrivals = 0;
    for i in 0..60 {
        let z = rng.random_range(2..=3);
        let (inst, mc, cov) = coverage_instance(&mut rng, false, z);
        let hidden = cov.pointset_vectors();
        let opaque = OpaqueOracle::new(move |s: &[ElementId]| {
            s.iter()
                .flat_map(|e| hidden[e].iter())
                .collect::<BTreeSet<_>>()
                .len() as u64
        });
        let counting = CountingOracle::new(&cov);
        let mut a = StreamingCoverage::new(&opaque, &mc, z, false).unwrap();
        let mut b = StreamingCoverage::new(&counting, &mc, z, false).unwrap();
        for &e in &inst.stream_order {
            a.push(e).unwrap();
            b.push(e).unwrap();
        }
        runs += 1;
        if a.finish() != b.finish() || opaque.queries() != counting.queries() {
            problems.push(format!("instance {i}: oracles disagree"));
        }
        for s in a.stats() {
            arrivals += 1;
            if s.value_queries > s.query_budget()
                || s.descent_tests + s.match_tests > 2 * s.tree_size_before as u64
            {
                problems.push(format!("instance {i}: arrival {} over budget", s.element));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "10000 triples, {runs} opaque-oracle runs, {arrivals} arrivals within 1+4·descent+6·match, {} problems{}", problems.len(), first(&problems)
        ),
    )
}

/// `f_C(S)` straight from the definition, without pruning.
fn f_c_direct(
    s: &[ElementId],
    c: ColorSet,
    pts: &BTreeMap<ElementId, Vec<(PointId, Weight)>>,
    h: &HashFunction,
) -> Option<Weight> {
    c.iter()
        .map(|color| {
            s.iter()
                .flat_map(|e| pts[e].iter())
                .filter(|(p, _)| h.color(*p) == color)
                .map(|&(_, w)| w)
                .max()
        })
        .sum()
}

fn monotone_combination() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let (mut checked, mut violations, mut disagreements) = (0u64, 0u64, 0u64);
    for z in 1..=3usize {
        for m in 1..=6usize {
            for _ in 0..6 {
                let n = 4;
                let pts: BTreeMap<ElementId, Vec<(PointId, Weight)>> = (0..n)
                    .map(|e| {
                        let mut ps = Vec::new();
                        for p in 0..m as PointId {
                            if rng.random_bool(0.5) {
                                ps.push((p, Weight::integer(rng.random_range(0..=5))));
                            }
                        }
                        (ElementId(e), ps)
                    })
                    .collect();
                let h = HashFunction::draw(rng.random(), z, m).unwrap();
                let ws: BTreeMap<ElementId, WeightedPointSet> = pts
                    .iter()
                    .map(|(&e, p)| (e, WeightedPointSet::new(e, p.iter().copied(), &h)))
                    .collect();
                let zb = zbar(z);
                for mask in 0u32..1 << n {
                    let a: Vec<ElementId> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(ElementId)
                        .collect();
                    let a_sets: Vec<WeightedPointSet> = a.iter().map(|e| ws[e].clone()).collect();
                    let colors_a = a_sets
                        .iter()
                        .fold(ColorSet::EMPTY, |acc, e| acc.union(e.colors()));
                    for b in (0..n).map(ElementId) {
                        let mut ab = a_sets.clone();
                        ab.push(ws[&b].clone());
                        let mut ab_ids = a.clone();
                        ab_ids.push(b);
                        for c in ColorSet::all_subsets(zb).filter(|c| c.is_subset(colors_a)) {
                            for c2 in ColorSet::all_subsets(zb)
                                .filter(|c2| c2.is_subset(ws[&b].colors()) && c2.is_disjoint(c))
                            {
                                checked += 1;
                                let lhs = f_c(&a_sets, c).unwrap() + w_c(&ws[&b], c2).unwrap();
                                let rhs = f_c(&ab, c.union(c2)).unwrap();
                                if lhs > rhs {
                                    violations += 1;
                                }
                                if f_c_direct(&ab_ids, c.union(c2), &pts, &h) != Some(rhs) {
                                    disagreements += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    outcome(
        violations == 0 && disagreements == 0,
        format!("{checked} (A, b, C, C') combinations over m ≤ 6, z ≤ 3: {violations} violations, {disagreements} f_C mismatches"),
    )
}

fn rational_weights(inst: &mut Instance, rng: &mut ChaCha8Rng) {
    if let Some(pw) = inst.point_weights.as_mut() {
        for w in pw.values_mut() {
            *w = Weight(w.0 / Rational64::from_integer(rng.random_range(1..=6)));
        }
    }
}

fn planted_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut failures = Vec::new();
    let mut gained_by_full_points = 0;
    for i in 0..100 {
        let n = rng.random_range(3..=10);
        let ell = rng.random_range(1..=2);
        let mut inst = gen_coverage_matchoid(
            n,
            rng.random_range(ell..=ell + 2),
            ell,
            &Kind::ALL,
            8,
            3,
            true,
            rng.random(),
        )
        .unwrap();
        rational_weights(&mut inst, &mut rng);
        let mc = inst.to_matchoid().unwrap();
        let cov = inst.coverage().unwrap();
        let z = rng.random_range(1..=3);
        let best =
            brute_max_coverage(&mc, &cov.pointset_vectors(), &|p| cov.point_weight(p), z).unwrap();
        let h = well_coloring_seed(&best.points, z, cov.universe_size(), rng.random()).unwrap();
        assert!(check_well_colored(&h, &best.points));
        let (kernel, report) = streaming_max_coverage(&cov, &mc, &inst.stream_order, &h).unwrap();
        let (_, pruned) = extract_weighted_solution(&kernel.elements, &mc, z, &kernel.points);
        let full_points = kernel
            .elements
            .iter()
            .map(|&e| {
                (
                    e,
                    cov.points(e)
                        .iter()
                        .map(|&p| (p, cov.point_weight(p)))
                        .collect(),
                )
            })
            .collect();
        let (_, full) = extract_weighted_solution(&kernel.elements, &mc, z, &full_points);
        gained_by_full_points += (full > pruned) as usize;
        if pruned < best.value
            || full < pruned
            || report.max_instance_size as u64 > gamma(mc.ell(), z).unwrap()
        {
            failures.push(format!(
                "instance {i}: pruned {pruned}, full {full}, optimum {}",
                best.value
            ));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "100 planted instances, {} below the optimum, full point sets did better on {gained_by_full_points}{}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn randomized_success() -> Outcome {
    let (z, eps) = (3, 0.1);
    let u = repetitions(z, eps).unwrap();
    let results: Vec<bool> = (0..200u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + trial);
            let (inst, mc, cov) = coverage_instance(&mut rng, true, z);
            let best =
                brute_max_coverage(&mc, &cov.pointset_vectors(), &|p| cov.point_weight(p), z)
                    .unwrap();
            let run = randomized_driver(&cov, &mc, &inst.stream_order, z, eps, trial, 1).unwrap();
            run.value >= best.value
        })
        .collect();
    let successes = results.iter().filter(|&&ok| ok).count();
    let freq = successes as f64 / 200.0;
    let threshold = 0.90 - 3.0 * (0.09f64 / 200.0).sqrt();
    outcome(
        freq >= threshold,
        format!("u = {u} colorings per trial, {successes}/200 trials optimal, frequency {freq:.3} ≥ {threshold:.3}"),
    )
}

fn well_colored_calibration() -> Outcome {
    let trials = 10_000u64;
    let mut worst = f64::INFINITY;
    let targets: [[PointId; 3]; 3] = [[0, 1, 2], [3, 9, 14], [5, 6, 15]];
    let p = 0.375;
    let threshold = p - 3.0 * (p * (1.0 - p) / trials as f64).sqrt();
    for target in &targets {
        let hits = (0..trials)
            .filter(|&seed| check_well_colored(&HashFunction::draw(seed, 3, 16).unwrap(), target))
            .count();
        worst = worst.min(hits as f64 / trials as f64);
    }
    outcome(
        worst >= threshold,
        format!("3 fixed triples, 10000 seeds each, z̄ = 4: lowest frequency {worst:.4} ≥ {threshold:.4}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("representativity", representativity),
        ("offline kernel optimality", kernel_optimality),
        ("size and query bounds", size_and_query_bounds),
        ("streaming prefix representativity", streaming_prefixes),
        ("value-oracle coverage completeness", coverage_completeness),
        ("value-oracle isolation", value_oracle_isolation),
        ("monotone color combination", monotone_combination),
        ("planted coloring completeness", planted_completeness),
        ("randomized driver success rate", randomized_success),
        ("well-colored probability", well_colored_calibration),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} [{name}] {} ({:.1}s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        failed += (!o.pass) as usize;
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
