//! Solvers backed directly by bipartite b-matching: machine-dependent
//! tolerances, the two-value {0, k} case, and uniform tolerances.

use crate::bipartite::{max_b_matching, CapacitatedBipartiteGraph};
use crate::classify::classify;
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

fn b_matching_on_positive_edges(inst: &Instance, caps: Vec<u64>) -> Matching {
    let mut edges = Vec::new();
    for j in 0..inst.jobs() {
        for i in 0..inst.machines() {
            if inst.tolerance(j, i) > 0 {
                edges.push((j, i));
            }
        }
    }
    let graph = CapacitatedBipartiteGraph::new(inst.jobs(), inst.machines(), edges, caps)
        .expect("instance dimensions produce a well-formed graph");
    Matching::new(max_b_matching(&graph))
}

/// Maximum PD-matching for machine-dependent instances, where every column
/// holds a single nonzero value `b_i`. Any set of positive-tolerance edges
/// with machine degrees capped at `b_i` is feasible, and conversely, so the
/// b-matching optimum transfers exactly.
pub fn solve_vdep(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    let params = report.vdep_params.ok_or_else(|| Error::ClassMismatch {
        required: "vdep",
        reason: "some machine has two distinct nonzero tolerances".into(),
    })?;
    let caps = params.iter().map(|p| p.tolerance).collect();
    Ok(b_matching_on_positive_edges(inst, caps))
}

/// Maximum PD-matching when all tolerances lie in {0, k}: a special case of
/// the machine-dependent class with every cap equal to `k`.
pub fn solve_zero_k(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    let nonzero: Vec<u64> = report
        .tolerance_set
        .iter()
        .copied()
        .filter(|&v| v > 0)
        .collect();
    if nonzero.len() > 1 {
        return Err(Error::ClassMismatch {
            required: "zero-k",
            reason: format!(
                "tolerances {:?} are not of the form {{0, k}}",
                report.tolerance_set
            ),
        });
    }
    let Some(&k) = nonzero.first() else {
        return Ok(Matching::empty());
    };
    Ok(b_matching_on_positive_edges(inst, vec![k; inst.machines()]))
}

/// Maximum PD-matching when every tolerance equals the same `k >= 1`:
/// `k` jobs go to each machine in index order, `min(n, k * m)` in total.
pub fn solve_uniform_tolerance(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    if report.tolerance_set.contains(&0) || report.tolerance_set.len() > 1 {
        return Err(Error::ClassMismatch {
            required: "uniform",
            reason: format!(
                "tolerances {:?} are not a single positive value",
                report.tolerance_set
            ),
        });
    }
    let Some(&k) = report.tolerance_set.first() else {
        return Ok(Matching::empty());
    };

    let total = (inst.jobs() as u128).min(k as u128 * inst.machines() as u128) as usize;
    let mut edges = Vec::with_capacity(total);
    for j in 0..total {
        edges.push((j, j / k as usize));
    }
    Ok(Matching::new(edges))
}
