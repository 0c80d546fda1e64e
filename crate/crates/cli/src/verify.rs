use std::collections::BTreeMap;

use matchoid_kernel::bruteforce::{
    brute_max_coverage, brute_max_weight_feasible, check_joint_rep_set, REP_SET_CHECK_LIMIT,
};
use matchoid_kernel::colorcode::top_z_weight;
use matchoid_kernel::coverage_oracle::n_bound;
use matchoid_kernel::instances::Instance;
use matchoid_kernel::repset::gamma;
use matchoid_kernel::{ElementId, ElementSet, PointId, Result, Weight};

use crate::report::RunReport;

/// Replays `report` against the exhaustive oracles. Returns the list of
/// failed checks; an empty list means the report is consistent.
pub fn verify(inst: &Instance, report: &RunReport) -> Result<Vec<String>> {
    let mc = inst.to_matchoid()?;
    let w = inst.weights();
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    let kernel: ElementSet = report.kernel.iter().copied().collect();
    check(
        kernel.len() == report.kernel.len(),
        "kernel lists an element twice".into(),
    );
    check(
        report.kernel_size == kernel.len(),
        "kernel_size disagrees with kernel".into(),
    );
    check(
        kernel.is_subset(mc.universe()),
        "kernel leaves the universe".into(),
    );
    for b in &report.bounds {
        check(
            b.ok == (b.value <= b.limit),
            format!("bound {} flag does not match its counters", b.name),
        );
    }
    let solution: Option<ElementSet> = report
        .solution
        .as_ref()
        .map(|s| s.iter().copied().collect());
    if let Some(s) = &solution {
        check(
            s.is_subset(&kernel),
            "solution is not inside the kernel".into(),
        );
        check(
            s.is_subset(mc.universe()) && mc.is_feasible(s)?,
            "solution is infeasible".into(),
        );
    }

    match report.mode.as_str() {
        "kernel" | "stream" => {
            let k = report.params.k.unwrap_or(0);
            let g = gamma(mc.ell(), k)?;
            let limit = report
                .bounds
                .iter()
                .find(|b| b.name.ends_with("kernel_size"))
                .map(|b| b.limit);
            check(
                limit == Some(g),
                format!("kernel size limit is not Γ = {g}"),
            );
            check(
                kernel.len() as u64 <= g,
                format!("kernel larger than Γ = {g}"),
            );
            let best = brute_max_weight_feasible(&mc, &w, k)?;
            check(
                report.value == Some(best.value),
                format!("value differs from the optimum {}", best.value),
            );
            if let Some(s) = &solution {
                check(s.len() <= k, "solution larger than k".into());
                check(
                    report.value == Some(w.total(s)),
                    "value is not the solution's weight".into(),
                );
            }
            if mc.universe().len() <= REP_SET_CHECK_LIMIT {
                let violation = check_joint_rep_set(&kernel, mc.universe(), &mc, &w, k)?;
                check(
                    violation.is_none(),
                    format!("kernel is not representative: {violation:?}"),
                );
            }
        }
        "cover-oracle" => {
            let z = report.params.z.unwrap_or(1);
            let cov = inst.coverage()?;
            let best =
                brute_max_coverage(&mc, &cov.pointset_vectors(), &|_| Weight::integer(1), z)?;
            let coverable = best.value >= Weight::integer(z as i64);
            check(
                coverable == solution.is_some(),
                format!("brute force says coverable = {coverable}"),
            );
            if let Some(s) = &solution {
                let covered = cov.covered(&s.iter().copied().collect::<Vec<_>>()).len();
                check(
                    s.len() <= z && covered >= z,
                    "solution does not cover z points".into(),
                );
                check(
                    report.value == Some(Weight::integer(covered as i64)),
                    "value is not the coverage".into(),
                );
            }
            let nb = n_bound(mc.ell(), z).unwrap_or(u64::MAX);
            check(
                kernel.len() as u64 <= nb,
                format!("kernel larger than {nb}"),
            );
        }
        "cover-color" => {
            let z = report.params.z.unwrap_or(1);
            let cov = inst.coverage()?;
            let best =
                brute_max_coverage(&mc, &cov.pointset_vectors(), &|p| cov.point_weight(p), z)?;
            let value = report.value.unwrap_or(Weight::zero());
            check(
                value <= best.value,
                format!("value exceeds the optimum {}", best.value),
            );
            if let Some(s) = &solution {
                check(s.len() <= z, "solution larger than z".into());
                let points: BTreeMap<ElementId, Vec<(PointId, Weight)>> = s
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
                let actual = top_z_weight(&s.iter().copied().collect::<Vec<_>>(), &points, z);
                check(
                    value <= actual,
                    format!("value exceeds the solution's top-z weight {actual}"),
                );
            }
            if report.params.color_mode.as_deref() == Some("planted") {
                check(
                    value == best.value,
                    format!("planted run missed the optimum {}", best.value),
                );
            }
        }
        other => check(false, format!("unknown mode {other:?}")),
    }
    Ok(failures)
}
