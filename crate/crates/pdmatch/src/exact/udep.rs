//! Solvers for job-dependent tolerances: identical machines, the monotone
//! two-pointer sweep, and the same sweep run heuristically on arbitrary
//! monotone instances.

use crate::classify::{classify, monotone_view};
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

/// Maximum PD-matching when every job may run on every machine with a
/// single job tolerance. Jobs are taken in descending tolerance; each
/// machine receives the longest feasible prefix of the remaining jobs.
pub fn solve_udep_complete(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    if !report.is_udep || !report.udep_complete {
        return Err(Error::ClassMismatch {
            required: "udep-complete",
            reason: "jobs must carry a single tolerance valid on every machine".into(),
        });
    }

    let mut ranked: Vec<(u64, usize)> = (0..inst.jobs())
        .map(|j| (inst.tolerance(j, 0), j))
        .collect();
    ranked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut edges = Vec::new();
    let mut pos = 0;
    for i in 0..inst.machines() {
        // Longest prefix of remaining jobs whose tolerances all cover the
        // prefix length.
        let mut k = 0;
        while pos + k < ranked.len() && ranked[pos + k].0 > k as u64 {
            k += 1;
        }
        if k == 0 {
            break;
        }
        for offset in 0..k {
            edges.push((ranked[pos + offset].1, i));
        }
        pos += k;
    }
    Ok(Matching::new(edges))
}

/// A job-dependent monotone instance in compact form: job tolerances are
/// non-decreasing, and job `j` may run exactly on the machine suffix
/// starting at `first_machine[j]`, with the suffixes nested (non-increasing
/// start). This form scales to millions of jobs where a dense tolerance
/// matrix could not be materialized.
#[derive(Debug, Clone)]
pub struct UdepMonoInstance {
    tolerances: Vec<u64>,
    first_machine: Vec<usize>,
    machine_count: usize,
}

impl UdepMonoInstance {
    pub fn new(
        tolerances: Vec<u64>,
        first_machine: Vec<usize>,
        machine_count: usize,
    ) -> Result<Self> {
        if tolerances.len() != first_machine.len() {
            return Err(Error::InvalidParam(format!(
                "{} tolerances but {} machine starts",
                tolerances.len(),
                first_machine.len()
            )));
        }
        if tolerances.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParam(
                "job tolerances must be non-decreasing".into(),
            ));
        }
        if first_machine.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParam(
                "machine suffixes must be nested (non-increasing start)".into(),
            ));
        }
        if first_machine.iter().any(|&s| s > machine_count) {
            return Err(Error::InvalidParam(
                "machine suffix start out of range".into(),
            ));
        }
        Ok(UdepMonoInstance {
            tolerances,
            first_machine,
            machine_count,
        })
    }

    pub fn jobs(&self) -> usize {
        self.tolerances.len()
    }

    pub fn machines(&self) -> usize {
        self.machine_count
    }
}

/// The two-pointer sweep: the most tolerant unmatched job goes to the least
/// capable machine that accepts it below its tolerance, otherwise the
/// machine pointer advances. Runs in O(jobs + machines) and returns a
/// maximum PD-matching of the compact instance.
pub fn udep_mono_sweep(inst: &UdepMonoInstance) -> Vec<(usize, usize)> {
    let n = inst.jobs();
    let m = inst.machines();
    let mut edges = Vec::new();
    let mut degree = vec![0u64; m];

    let mut i = 0;
    let mut j = n;
    while j > 0 && i < m {
        let job = j - 1;
        if inst.first_machine[job] <= i && degree[i] < inst.tolerances[job] {
            degree[i] += 1;
            edges.push((job, i));
            j -= 1;
        } else {
            i += 1;
        }
    }
    edges
}

fn compact_from_monotone(view: &Instance) -> Result<UdepMonoInstance> {
    let m = view.machines();
    let mut tolerances = Vec::with_capacity(view.jobs());
    let mut first_machine = Vec::with_capacity(view.jobs());
    for j in 0..view.jobs() {
        let row = view.row(j);
        let first = row.iter().position(|&v| v > 0).unwrap_or(m);
        tolerances.push(row.last().copied().unwrap_or(0));
        first_machine.push(first);
    }
    UdepMonoInstance::new(tolerances, first_machine, m)
}

/// Maximum PD-matching for monotone job-dependent instances. The instance
/// is reordered through the classifier's monotone witness, solved by the
/// compact sweep, and mapped back to the original indices.
pub fn solve_udep_mono(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    if !report.is_udep {
        return Err(Error::ClassMismatch {
            required: "udep-mono",
            reason: "some job has two distinct nonzero tolerances".into(),
        });
    }
    let witness = report.monotonizable.ok_or_else(|| Error::ClassMismatch {
        required: "udep-mono",
        reason: "no job/machine ordering makes the matrix monotone".into(),
    })?;
    let view = monotone_view(inst, &witness);
    let compact = compact_from_monotone(&view.inst)?;
    let edges = udep_mono_sweep(&compact)
        .into_iter()
        .map(|(j, i)| (view.job_of[j], view.machine_of[i]))
        .collect();
    Ok(Matching::new(edges))
}

/// The monotone sweep with its acceptance condition generalized to
/// `degree(i) < b(j, i)`, run on any monotone instance. Well-defined
/// everywhere but only about half-optimal in the worst case; not a
/// certified-exact solver.
pub fn solve_mono_general_greedy(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    let witness = report.monotonizable.ok_or_else(|| Error::ClassMismatch {
        required: "mono-greedy",
        reason: "no job/machine ordering makes the matrix monotone".into(),
    })?;
    let view = monotone_view(inst, &witness);

    let n = view.inst.jobs();
    let m = view.inst.machines();
    let mut degree = vec![0u64; m];
    let mut edges = Vec::new();
    let mut i = 0;
    let mut j = n;
    while j > 0 && i < m {
        let job = j - 1;
        if degree[i] < view.inst.tolerance(job, i) {
            degree[i] += 1;
            edges.push((view.job_of[job], view.machine_of[i]));
            j -= 1;
        } else {
            i += 1;
        }
    }
    Ok(Matching::new(edges))
}
