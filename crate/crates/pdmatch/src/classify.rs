//! Structural classification of instances: monotone orderings, job- and
//! machine-dependent tolerance shapes, tolerance sets, and job types.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::instance::Instance;

/// Job and machine permutations under which the tolerance matrix is
/// non-decreasing along every row and every column. Viewing the matrix as
/// `b[job_order[r]][machine_order[c]]` yields the monotone form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneWitness {
    pub job_order: Vec<usize>,
    pub machine_order: Vec<usize>,
}

/// Per-job shape of a job-dependent instance: the job's single tolerance
/// value and the machines that accept it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobParam {
    pub tolerance: u64,
    pub machines: Vec<usize>,
}

/// Per-machine shape of a machine-dependent instance: the machine's single
/// tolerance value and the jobs it accepts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineParam {
    pub tolerance: u64,
    pub jobs: Vec<usize>,
}

/// A job type: one distinct tolerance row together with the number of jobs
/// sharing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeProfile {
    pub tau: Vec<u64>,
    pub count: usize,
}

/// Everything [`classify`] can determine about an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    /// Present iff some pair of orderings makes the matrix monotone.
    pub monotonizable: Option<MonotoneWitness>,
    /// Every row has at most one distinct nonzero value.
    pub is_udep: bool,
    /// Per-job (tolerance, machine set), present iff `is_udep`. Rows of
    /// zeros get tolerance 0 and an empty machine set.
    pub udep_params: Option<Vec<JobParam>>,
    /// Every column has at most one distinct nonzero value.
    pub is_vdep: bool,
    /// Per-machine (tolerance, job set), present iff `is_vdep`.
    pub vdep_params: Option<Vec<MachineParam>>,
    /// `is_udep` and every job may run on every machine.
    pub udep_complete: bool,
    /// Sorted distinct matrix entries.
    pub tolerance_set: Vec<u64>,
    /// Number of distinct tolerance rows.
    pub type_count: usize,
    /// Distinct rows in first-occurrence order, with multiplicities.
    pub type_profiles: Vec<TypeProfile>,
}

/// True iff the matrix is non-decreasing along every row and every column
/// in its given order.
pub fn is_monotone(inst: &Instance) -> bool {
    let (n, m) = (inst.jobs(), inst.machines());
    for j in 0..n {
        for i in 1..m {
            if inst.tolerance(j, i - 1) > inst.tolerance(j, i) {
                return false;
            }
        }
    }
    for i in 0..m {
        for j in 1..n {
            if inst.tolerance(j - 1, i) > inst.tolerance(j, i) {
                return false;
            }
        }
    }
    true
}

/// Sorts rows by (sum, lexicographic, index) and columns likewise, then
/// tests monotonicity of the reordered matrix.
///
/// This canonicalization is exact: a monotonizing pair of orderings exists
/// iff the rows form a chain under componentwise comparison and the columns
/// do too, and chain comparability is independent of the other axis's
/// order, so the sum-sort finds a witness whenever one exists.
fn monotone_witness(inst: &Instance) -> Option<MonotoneWitness> {
    let (n, m) = (inst.jobs(), inst.machines());

    let mut job_order: Vec<usize> = (0..n).collect();
    job_order.sort_by(|&a, &b| {
        let sa: u128 = inst.row(a).iter().map(|&v| v as u128).sum();
        let sb: u128 = inst.row(b).iter().map(|&v| v as u128).sum();
        sa.cmp(&sb).then_with(|| inst.row(a).cmp(inst.row(b)))
    });

    let columns: Vec<Vec<u64>> = (0..m).map(|i| inst.column(i)).collect();
    let mut machine_order: Vec<usize> = (0..m).collect();
    machine_order.sort_by(|&a, &b| {
        let sa: u128 = columns[a].iter().map(|&v| v as u128).sum();
        let sb: u128 = columns[b].iter().map(|&v| v as u128).sum();
        sa.cmp(&sb).then_with(|| columns[a].cmp(&columns[b]))
    });

    for r in 1..n {
        let (prev, cur) = (job_order[r - 1], job_order[r]);
        if (0..m).any(|c| inst.tolerance(prev, c) > inst.tolerance(cur, c)) {
            return None;
        }
    }
    for c in 1..m {
        let (prev, cur) = (machine_order[c - 1], machine_order[c]);
        if (0..n).any(|r| inst.tolerance(r, prev) > inst.tolerance(r, cur)) {
            return None;
        }
    }

    Some(MonotoneWitness {
        job_order,
        machine_order,
    })
}

fn udep_params(inst: &Instance) -> Option<Vec<JobParam>> {
    let mut params = Vec::with_capacity(inst.jobs());
    for j in 0..inst.jobs() {
        let mut tolerance = 0u64;
        let mut machines = Vec::new();
        for i in 0..inst.machines() {
            let v = inst.tolerance(j, i);
            if v == 0 {
                continue;
            }
            if tolerance == 0 {
                tolerance = v;
            } else if tolerance != v {
                return None;
            }
            machines.push(i);
        }
        params.push(JobParam {
            tolerance,
            machines,
        });
    }
    Some(params)
}

fn vdep_params(inst: &Instance) -> Option<Vec<MachineParam>> {
    let mut params = Vec::with_capacity(inst.machines());
    for i in 0..inst.machines() {
        let mut tolerance = 0u64;
        let mut jobs = Vec::new();
        for j in 0..inst.jobs() {
            let v = inst.tolerance(j, i);
            if v == 0 {
                continue;
            }
            if tolerance == 0 {
                tolerance = v;
            } else if tolerance != v {
                return None;
            }
            jobs.push(j);
        }
        params.push(MachineParam { tolerance, jobs });
    }
    Some(params)
}

/// Computes the full structural report for an instance.
pub fn classify(inst: &Instance) -> ClassReport {
    let monotonizable = monotone_witness(inst);
    let udep = udep_params(inst);
    let vdep = vdep_params(inst);

    let udep_complete = match &udep {
        Some(params) => params.iter().all(|p| p.machines.len() == inst.machines()),
        None => false,
    };

    let tolerance_set: Vec<u64> = inst
        .matrix()
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut type_profiles: Vec<TypeProfile> = Vec::new();
    for j in 0..inst.jobs() {
        match type_profiles.iter_mut().find(|p| p.tau == inst.row(j)) {
            Some(p) => p.count += 1,
            None => type_profiles.push(TypeProfile {
                tau: inst.row(j).to_vec(),
                count: 1,
            }),
        }
    }

    ClassReport {
        monotonizable,
        is_udep: udep.is_some(),
        udep_params: udep,
        is_vdep: vdep.is_some(),
        vdep_params: vdep,
        udep_complete,
        tolerance_set,
        type_count: type_profiles.len(),
        type_profiles,
    }
}

/// The instance reordered through a monotone witness, with the maps back
/// to original indices. Solvers for monotone classes run on `inst` and
/// translate edges through `job_of`/`machine_of`.
pub(crate) struct MonotoneView {
    pub inst: Instance,
    pub job_of: Vec<usize>,
    pub machine_of: Vec<usize>,
}

pub(crate) fn monotone_view(inst: &Instance, witness: &MonotoneWitness) -> MonotoneView {
    let rows: Vec<Vec<u64>> = witness
        .job_order
        .iter()
        .map(|&j| {
            witness
                .machine_order
                .iter()
                .map(|&i| inst.tolerance(j, i))
                .collect()
        })
        .collect();
    let reordered = Instance::new(inst.jobs(), inst.machines(), rows)
        .expect("permuted matrix keeps its dimensions");
    MonotoneView {
        inst: reordered,
        job_of: witness.job_order.clone(),
        machine_of: witness.machine_order.clone(),
    }
}
