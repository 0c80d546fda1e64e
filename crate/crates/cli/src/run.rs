use matchoid_kernel::bruteforce::brute_max_coverage;
use matchoid_kernel::colorcode::{self, DriverResult};
use matchoid_kernel::coverage_oracle::{
    extract_coverage_solution, n_bound, CountingOracle, StreamingCoverage, ValueOracle,
};
use matchoid_kernel::instances::Instance;
use matchoid_kernel::repset::{gamma, kernel_max_weight};
use matchoid_kernel::stream::run_stream;
use matchoid_kernel::{search, ElementId, Result, Weight};
use serde::Serialize;

use crate::report::{Bound, Params, ReportWriter, RunReport};
use crate::ColorMode;

#[derive(Serialize)]
struct RepSetStats {
    input_size: usize,
    kernel_size: usize,
    queries: u64,
    guess_calls: u64,
    max_depth: usize,
    max_children: usize,
}

fn saturating(r: Result<u64>) -> u64 {
    r.unwrap_or(u64::MAX)
}

pub fn kernel(inst: &Instance, path: &str, k: usize) -> Result<(RunReport, ReportWriter)> {
    let mc = inst.to_matchoid()?;
    let w = inst.weights();
    let before = mc.independence_queries();
    let result = kernel_max_weight(&mc, &w, k)?;
    let g = gamma(mc.ell(), k)?;
    let mut report = RunReport::new(
        "kernel",
        path,
        Params {
            k: Some(k),
            ell: mc.ell(),
            ..Params::default()
        },
    );
    report.kernel = result.kernel.set.iter().copied().collect();
    report.kernel_size = result.kernel.set.len();
    report.solution = Some(result.solution.iter().copied().collect());
    report.value = Some(result.value);
    report.independence_queries = mc.independence_queries() - before;
    report.bounds = vec![
        Bound::new("kernel_size", report.kernel_size as u64, g),
        Bound::new(
            "independence_queries",
            result.kernel.queries,
            g.saturating_mul(result.kernel.input_size as u64),
        ),
    ];
    let mut steps = ReportWriter::default();
    steps.step(
        "rep_set",
        &RepSetStats {
            input_size: result.kernel.input_size,
            kernel_size: result.kernel.set.len(),
            queries: result.kernel.queries,
            guess_calls: result.kernel.calls,
            max_depth: result.kernel.max_depth,
            max_children: result.kernel.max_children,
        },
    );
    Ok((report, steps))
}

pub fn stream(inst: &Instance, path: &str, k: usize) -> Result<(RunReport, ReportWriter)> {
    let mc = inst.to_matchoid()?;
    let w = inst.weights();
    let before = mc.independence_queries();
    let (kernel, steps, memory) = run_stream(&mc, &w, &inst.stream_order, k)?;
    let candidates: Vec<ElementId> = kernel.iter().copied().collect();
    let (solution, value) = search::max_weight_feasible(&mc, &candidates, &w, k);
    let g = gamma(mc.ell(), k)?;
    let mut writer = ReportWriter::default();
    let mut prev = 0usize;
    let mut over_budget = 0;
    for s in &steps {
        if s.queries > g.saturating_mul(prev as u64 + 1) {
            over_budget += 1;
        }
        prev = s.kernel_size;
        writer.step("step", s);
    }
    let mut report = RunReport::new(
        "stream",
        path,
        Params {
            k: Some(k),
            ell: mc.ell(),
            ..Params::default()
        },
    );
    report.kernel = candidates;
    report.kernel_size = kernel.len();
    report.solution = Some(solution);
    report.value = Some(value);
    report.independence_queries = mc.independence_queries() - before;
    report.bounds = vec![
        Bound::new("peak_kernel_size", memory.peak_kernel_size as u64, g),
        Bound::new("steps_over_query_budget", over_budget, 0),
        Bound::new("peak_aux_bits", memory.peak_aux_bits, memory.aux_bits_limit),
    ];
    writer.step("memory", &memory);
    Ok((report, writer))
}

pub fn cover_oracle(
    inst: &Instance,
    path: &str,
    z: usize,
    literal: bool,
) -> Result<(RunReport, ReportWriter)> {
    let mc = inst.to_matchoid()?;
    let cov = inst.coverage()?;
    let oracle = CountingOracle::new(&cov);
    let before = mc.independence_queries();
    let mut alg = StreamingCoverage::new(&oracle, &mc, z, literal)?;
    let mut writer = ReportWriter::default();
    for &e in &inst.stream_order {
        alg.push(e)?;
    }
    let mut over_queries = 0;
    let mut over_tests = 0;
    for s in alg.stats() {
        if s.value_queries > s.query_budget() {
            over_queries += 1;
        }
        if s.descent_tests + s.match_tests > 2 * s.tree_size_before as u64 {
            over_tests += 1;
        }
        writer.step("arrival", s);
    }
    let g = gamma(mc.ell(), z)?;
    let (mut slot, mut per_node, mut depth, mut children) = (0, 0, 0, 0);
    for tree in alg.trees() {
        for node in tree.nodes() {
            slot = slot.max(node.slots().iter().map(Vec::len).max().unwrap_or(0));
            per_node = per_node.max(node.stored());
            depth = depth.max(node.depth());
            children = children.max(
                node.children()
                    .iter()
                    .map(|(_, c)| c.len())
                    .max()
                    .unwrap_or(0),
            );
        }
    }
    let kernel = alg.finish();
    let algorithm_queries = oracle.queries();
    let solution = extract_coverage_solution(&oracle, &kernel.elements, &mc, z);

    let mut report = RunReport::new(
        "cover-oracle",
        path,
        Params {
            z: Some(z),
            ell: mc.ell(),
            literal_match: Some(literal),
            ..Params::default()
        },
    );
    report.kernel = kernel.elements.iter().copied().collect();
    report.kernel_size = kernel.elements.len();
    report.value = solution
        .as_ref()
        .map(|s| Weight::from(cov.covered(&s.iter().copied().collect::<Vec<_>>()).len() as i64));
    report.solution = solution.map(|s| s.into_iter().collect());
    report.independence_queries = mc.independence_queries() - before;
    report.value_queries = algorithm_queries;
    let limit = 1u64.checked_shl(z as u32 - 1).unwrap_or(u64::MAX);
    report.bounds = vec![
        Bound::new(
            "kernel_size",
            report.kernel_size as u64,
            saturating(n_bound(mc.ell(), z)),
        ),
        Bound::new("arrivals_over_value_query_budget", over_queries, 0),
        Bound::new("arrivals_over_test_budget", over_tests, 0),
        Bound::new("slot_size", slot as u64, g),
        Bound::new("node_size", per_node as u64, g.saturating_mul(z as u64)),
        Bound::new("tree_depth", depth as u64, z as u64 - 1),
        Bound::new("children_per_element", children as u64, limit),
    ];
    Ok((report, writer))
}

pub struct ColorArgs {
    pub z: usize,
    pub eps: f64,
    pub seed: u64,
    pub mode: ColorMode,
    pub parallel: usize,
}

pub fn cover_color(
    inst: &Instance,
    path: &str,
    args: &ColorArgs,
) -> Result<(RunReport, ReportWriter)> {
    let mc = inst.to_matchoid()?;
    let cov = inst.coverage()?;
    let order = &inst.stream_order;
    let z = args.z;
    let before = mc.independence_queries();
    let (result, u): (DriverResult, Option<u64>) = match args.mode {
        ColorMode::Random => (
            colorcode::randomized_driver(&cov, &mc, order, z, args.eps, args.seed, args.parallel)?,
            Some(colorcode::repetitions(z, args.eps)?),
        ),
        ColorMode::Perfect => (
            colorcode::perfect_driver(&cov, &mc, order, z, args.parallel)?,
            None,
        ),
        ColorMode::Planted => {
            let brute =
                brute_max_coverage(&mc, &cov.pointset_vectors(), &|p| cov.point_weight(p), z)?;
            (
                colorcode::planted_driver(&cov, &mc, order, z, &brute.points, args.seed)?,
                None,
            )
        }
    };
    let g = gamma(mc.ell(), z)?;
    let mut writer = ReportWriter::default();
    let mut over_points = 0;
    let mut largest = 0;
    for r in &result.repetitions {
        if r.memory.retained_points > r.memory.retained_points_bound_zbar {
            over_points += 1;
        }
        largest = largest.max(r.memory.max_instance_size);
        writer.step("repetition", r);
    }
    let mut report = RunReport::new(
        "cover-color",
        path,
        Params {
            z: Some(z),
            ell: mc.ell(),
            eps: (args.mode == ColorMode::Random).then_some(args.eps),
            seed: Some(args.seed),
            color_mode: Some(args.mode.name().into()),
            parallel: Some(args.parallel),
            ..Params::default()
        },
    );
    report.kernel = result.kernel.elements.iter().copied().collect();
    report.kernel_size = result.kernel.elements.len();
    report.solution = Some(result.solution.iter().copied().collect());
    report.value = Some(result.value);
    report.independence_queries = mc.independence_queries() - before;
    report.repetitions = u.or(Some(result.repetitions.len() as u64));
    let hashes = result.repetitions.len() as u64;
    let instances = (1u64 << colorcode::zbar(z)) - 1;
    report.bounds = vec![
        Bound::new("rep_set_size", largest as u64, g),
        Bound::new(
            "kernel_size",
            report.kernel_size as u64,
            hashes.saturating_mul(instances).saturating_mul(g),
        ),
        Bound::new("repetitions_over_point_budget", over_points, 0),
    ];
    Ok((report, writer))
}
