//! Maximum PD-matching when every tolerance is 1 or 2, via perfect
//! matchings in an auxiliary general graph.

use crate::blossom::{max_general_matching, GeneralGraph};
use crate::classify::classify;
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

/// The auxiliary graph for a guess of `x` machines hosting two jobs each:
/// every machine contributes a vertex pair, connected to each other and to
/// the jobs with tolerance 2 on it, and `n - 2x` dummy vertices absorb the
/// jobs left over. A perfect matching exists iff some PD-matching pairs
/// exactly `x` machines and leaves the rest empty.
fn build_gx(inst: &Instance, x: usize) -> GeneralGraph {
    let (n, m) = (inst.jobs(), inst.machines());
    let dummy_count = n - 2 * x;
    let machine_base = n;
    let dummy_base = n + 2 * m;

    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..m {
            if inst.tolerance(j, i) == 2 {
                edges.push((j, machine_base + 2 * i));
                edges.push((j, machine_base + 2 * i + 1));
            }
        }
    }
    for i in 0..m {
        edges.push((machine_base + 2 * i, machine_base + 2 * i + 1));
    }
    for j in 0..n {
        for l in 0..dummy_count {
            edges.push((j, dummy_base + l));
        }
    }
    GeneralGraph::new(dummy_base + dummy_count, edges).expect("gadget graph is well-formed")
}

pub(crate) fn gx_has_perfect_matching(inst: &Instance, x: usize) -> bool {
    let g = build_gx(inst, x);
    2 * max_general_matching(&g).len() == g.vertex_count()
}

/// Maximum PD-matching for instances with every tolerance 1 or 2. Binary
/// search finds the largest `x` whose gadget graph has a perfect matching
/// (feasibility is monotone in `x`); the paired jobs are read off that
/// matching and every remaining machine takes one leftover job, for
/// `min(n, m + x)` matched jobs overall.
pub fn solve_one_two(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    let tol = &report.tolerance_set;
    if tol.is_empty() {
        return Ok(Matching::empty());
    }
    if !tol.iter().all(|&v| v == 1 || v == 2) {
        return Err(Error::ClassMismatch {
            required: "one-two",
            reason: format!("tolerances {tol:?} are not within {{1, 2}}"),
        });
    }

    let (n, m) = (inst.jobs(), inst.machines());

    // x = 0 always admits a perfect matching: machine pairs self-match and
    // every job takes a dummy.
    let mut lo = 0;
    let mut hi = (n / 2).min(m);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if gx_has_perfect_matching(inst, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let x = lo;

    let g = build_gx(inst, x);
    let pm = max_general_matching(&g);
    debug_assert_eq!(2 * pm.len(), g.vertex_count());

    let machine_base = n;
    let mut edges = Vec::new();
    let mut job_used = vec![false; n];
    let mut machine_used = vec![false; m];
    for &(u, v) in &pm {
        // Matching edges are normalized (u < v), so a job-machine pair
        // always appears as (job, machine vertex).
        if u < n && (machine_base..machine_base + 2 * m).contains(&v) {
            let i = (v - machine_base) / 2;
            edges.push((u, i));
            job_used[u] = true;
            machine_used[i] = true;
        }
    }

    // Each still-empty machine hosts one leftover job; every tolerance is
    // at least 1, so a single job is always feasible.
    let mut next_job = 0;
    for i in 0..m {
        if machine_used[i] {
            continue;
        }
        while next_job < n && job_used[next_job] {
            next_job += 1;
        }
        if next_job == n {
            break;
        }
        job_used[next_job] = true;
        edges.push((next_job, i));
    }

    Ok(Matching::new(edges))
}
