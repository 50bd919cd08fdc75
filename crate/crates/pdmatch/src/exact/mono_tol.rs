//! Maximum PD-matching for monotone instances with at most three distinct
//! tolerance values.
//!
//! Some maximum matching uses only the most tolerant jobs and most capable
//! machines, fills every machine outside the capable set to exactly the
//! smallest tolerance, and has at most one machine with a degree strictly
//! inside each gap between consecutive tolerance values. The solver guesses
//! that shape (job cutoff, machine cutoff, and up to one specially-sized
//! machine per gap) and completes each guess greedily, keeping the best
//! result over all guesses.

use crate::classify::{classify, monotone_view};
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

/// Tracks the pool of guessed jobs in monotone order; jobs are consumed
/// from the least tolerant end.
struct JobPool {
    /// Monotone-order indices still available, ascending tolerance.
    available: Vec<usize>,
    /// Cursor into `available`; everything before it is matched or skipped.
    cursor: usize,
}

impl JobPool {
    fn new(jobs: std::ops::Range<usize>) -> Self {
        JobPool {
            available: jobs.collect(),
            cursor: 0,
        }
    }

    fn peek(&self) -> Option<usize> {
        self.available.get(self.cursor).copied()
    }

    fn take(&mut self) -> Option<usize> {
        let job = self.peek();
        if job.is_some() {
            self.cursor += 1;
        }
        job
    }

    /// Takes the least tolerant remaining jobs whose tolerance on `machine`
    /// is at least `threshold`, up to `count` of them.
    fn take_with_tolerance(
        &mut self,
        inst: &Instance,
        machine: usize,
        threshold: u64,
        count: u64,
    ) -> Vec<usize> {
        let mut taken = Vec::new();
        let mut idx = self.cursor;
        while idx < self.available.len() && (taken.len() as u64) < count {
            let job = self.available[idx];
            if inst.tolerance(job, machine) >= threshold {
                taken.push(job);
                self.available.remove(idx);
            } else {
                idx += 1;
            }
        }
        taken
    }
}

/// One guessed shape, completed greedily. `inst` must already be in
/// monotone order. Returns monotone-order edges.
fn complete_guess(
    inst: &Instance,
    tol: &[u64],
    job_cutoff: usize,        // the job_cutoff most tolerant jobs participate
    machine_cutoff: usize,    // the machine_cutoff most capable machines stay flexible
    special: &[(usize, u64)], // (machine, target degree) inside tolerance gaps
) -> Vec<(usize, usize)> {
    let (n, m) = (inst.jobs(), inst.machines());
    let k1 = tol.first().copied().unwrap_or(0);
    let capable_start = m - machine_cutoff;

    let mut pool = JobPool::new(n - job_cutoff..n);
    let mut edges = Vec::new();
    let mut degree = vec![0u64; m];

    // Machines below the capable cutoff each absorb the smallest tolerance
    // worth of the least tolerant guessed jobs; every job tolerates that.
    if k1 >= 1 {
        for i in 0..capable_start {
            for _ in 0..k1 {
                match pool.take() {
                    Some(job) => {
                        edges.push((job, i));
                        degree[i] += 1;
                    }
                    None => break,
                }
            }
        }
    }

    // The specially-sized machines take their target count of the least
    // tolerant jobs that tolerate the target.
    for &(i, target) in special {
        for job in pool.take_with_tolerance(inst, i, target, target) {
            edges.push((job, i));
            degree[i] += 1;
        }
    }

    // Remaining capable machines fill greedily: for the least tolerant
    // unmatched job, pick the largest tolerance value some empty capable
    // machine still admits, and fill the least capable such machine.
    let special_set: Vec<usize> = special.iter().map(|&(i, _)| i).collect();
    while let Some(job) = pool.peek() {
        let empty: Vec<usize> = (capable_start..m)
            .filter(|&i| degree[i] == 0 && !special_set.contains(&i))
            .collect();
        if empty.is_empty() {
            break;
        }

        let fill = tol.iter().rev().filter(|&&k| k >= 1).find_map(|&k| {
            empty
                .iter()
                .copied()
                .find(|&i| inst.tolerance(job, i) >= k)
                .map(|i| (i, k))
        });
        match fill {
            None => {
                // The least tolerant job fits nowhere; drop it and retry
                // with the next one.
                pool.take();
            }
            Some((i, k)) => {
                for _ in 0..k {
                    match pool.take() {
                        Some(job) => {
                            edges.push((job, i));
                            degree[i] += 1;
                        }
                        None => break,
                    }
                }
            }
        }
    }

    edges
}

/// Integer degrees strictly between consecutive tolerance values, capped at
/// the job count.
fn gap_targets(tol: &[u64], gap: usize, n: usize) -> Vec<u64> {
    if gap + 1 >= tol.len() {
        return Vec::new();
    }
    let lo = tol[gap];
    let hi = tol[gap + 1].min(n as u64 + 1);
    (lo + 1..hi).collect()
}

/// Estimated guess-completion steps; the dispatcher skips this solver when
/// the estimate is out of budget.
pub(crate) fn estimated_steps(inst: &Instance, tol: &[u64]) -> u128 {
    let (n, m) = (inst.jobs(), inst.machines());
    let g1 = gap_targets(tol, 0, n).len() as u128;
    let g2 = gap_targets(tol, 1, n).len() as u128;
    let shapes = (n as u128 + 1)
        .saturating_mul(m as u128 + 1)
        .saturating_mul(1 + (m as u128) * g1)
        .saturating_mul(1 + (m as u128) * g2);
    shapes.saturating_mul((n + m) as u128 + 1)
}

/// Maximum PD-matching for monotone instances with at most three distinct
/// tolerance values.
pub fn solve_mono_three_tol(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    let witness = report.monotonizable.ok_or_else(|| Error::ClassMismatch {
        required: "mono-3tol",
        reason: "no job/machine ordering makes the matrix monotone".into(),
    })?;
    if report.tolerance_set.len() > 3 {
        return Err(Error::ClassMismatch {
            required: "mono-3tol",
            reason: format!(
                "{} distinct tolerances, at most 3 supported",
                report.tolerance_set.len()
            ),
        });
    }
    let tol = report.tolerance_set;
    let view = monotone_view(inst, &witness);
    let (n, m) = (inst.jobs(), inst.machines());

    let mut best: Vec<(usize, usize)> = Vec::new();
    for job_cutoff in 0..=n {
        for machine_cutoff in 0..=m {
            let capable_start = m - machine_cutoff;

            // At most one specially-sized machine per tolerance gap, drawn
            // from the capable set; `None` leaves the gap unused.
            let mut low_options: Vec<Option<(usize, u64)>> = vec![None];
            for i in capable_start..m {
                for t in gap_targets(&tol, 0, n) {
                    low_options.push(Some((i, t)));
                }
            }
            let mut high_options: Vec<Option<(usize, u64)>> = vec![None];
            for i in capable_start..m {
                for t in gap_targets(&tol, 1, n) {
                    high_options.push(Some((i, t)));
                }
            }

            for &low in &low_options {
                for &high in &high_options {
                    if let (Some((i1, _)), Some((i2, _))) = (low, high) {
                        if i1 == i2 {
                            continue;
                        }
                    }
                    let special: Vec<(usize, u64)> = [low, high].into_iter().flatten().collect();
                    let edges =
                        complete_guess(&view.inst, &tol, job_cutoff, machine_cutoff, &special);
                    debug_assert!(
                        crate::instance::verify(&view.inst, &Matching::new(edges.clone())).valid,
                        "guess produced an infeasible matching"
                    );
                    if edges.len() > best.len() {
                        best = edges;
                    }
                }
            }
        }
    }

    let edges = best
        .into_iter()
        .map(|(j, i)| (view.job_of[j], view.machine_of[i]))
        .collect();
    Ok(Matching::new(edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixtures, Fixture};
    use crate::instance::verify;

    fn inst(rows: Vec<Vec<u64>>) -> Instance {
        Instance::from_rows(rows).unwrap()
    }

    #[test]
    fn recovers_optimum_on_monobad() {
        for k in 2..=4 {
            let i = fixtures(Fixture::Monobad, k).unwrap();
            let mat = solve_mono_three_tol(&i).unwrap();
            assert!(verify(&i, &mat).valid);
            assert_eq!(mat.len(), 2 * k, "k = {k}");
        }
    }

    #[test]
    fn uniform_matrix_matches_closed_form() {
        let i = inst(vec![vec![2, 2]; 5]);
        assert_eq!(solve_mono_three_tol(&i).unwrap().len(), 4);
    }

    #[test]
    fn zero_tolerances_stay_unmatched() {
        let i = inst(vec![vec![0, 0], vec![0, 2], vec![0, 2]]);
        let mat = solve_mono_three_tol(&i).unwrap();
        assert!(verify(&i, &mat).valid);
        assert_eq!(mat.len(), 2);
    }

    #[test]
    fn rejects_four_tolerances() {
        let i = inst(vec![vec![1, 2], vec![3, 4]]);
        assert!(solve_mono_three_tol(&i).is_err());
    }

    #[test]
    fn rejects_non_monotone() {
        let i = inst(vec![vec![1, 2], vec![2, 1]]);
        assert!(solve_mono_three_tol(&i).is_err());
    }

    #[test]
    fn empty_instance() {
        let i = Instance::new(0, 0, vec![]).unwrap();
        assert!(solve_mono_three_tol(&i).unwrap().is_empty());
    }
}
