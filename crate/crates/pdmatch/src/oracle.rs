//! Two independent exact solvers for desk-scale instances. The assignment
//! enumeration and the threshold-vector scan share no algorithmic machinery
//! beyond the instance itself, so agreement between them is meaningful
//! ground truth.

use crate::exact::threshold_scan;
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Largest degree machine `i` can reach on its own: the biggest `k` such
/// that `k` jobs tolerate at least `k` on it.
fn machine_capacity(inst: &Instance, machine: usize) -> usize {
    let mut col = inst.column(machine);
    col.sort_unstable_by(|a, b| b.cmp(a));
    let mut k = 0;
    while k < col.len() && col[k] > k as u64 {
        k += 1;
    }
    k
}

struct Search<'a> {
    inst: &'a Instance,
    /// Jobs in search order (descending best tolerance).
    jobs: Vec<usize>,
    /// Positive-tolerance machines per job, ascending.
    allowed: Vec<Vec<usize>>,
    degree: Vec<u64>,
    min_tol: Vec<u64>,
    assignment: Vec<Option<usize>>,
    best: Vec<Option<usize>>,
    best_size: usize,
    /// No matching can beat this; reaching it stops the search.
    ceiling: usize,
}

impl Search<'_> {
    fn run(&mut self, at: usize, matched: usize) {
        if self.best_size == self.ceiling {
            return;
        }
        if matched + (self.jobs.len() - at) <= self.best_size {
            return;
        }
        if at == self.jobs.len() {
            self.best_size = matched;
            self.best = self.assignment.clone();
            return;
        }

        let job = self.jobs[at];
        for idx in 0..self.allowed[job].len() {
            let i = self.allowed[job][idx];
            let b = self.inst.tolerance(job, i);
            let new_degree = self.degree[i] + 1;
            if new_degree > b.min(self.min_tol[i]) {
                continue;
            }
            let saved_min = self.min_tol[i];
            self.degree[i] = new_degree;
            self.min_tol[i] = saved_min.min(b);
            self.assignment[job] = Some(i);

            self.run(at + 1, matched + 1);

            self.assignment[job] = None;
            self.degree[i] = new_degree - 1;
            self.min_tol[i] = saved_min;
        }
        self.run(at + 1, matched);
    }
}

/// Maximum PD-matching by assigning every job to a machine or leaving it
/// out, pruning branches that overload a machine or cannot beat the
/// incumbent. Requires `(m + 1)^n` within `budget`.
pub fn oracle_enumerate_assignments(inst: &Instance, budget: u64) -> Result<Matching> {
    let (n, m) = (inst.jobs(), inst.machines());
    let states = (m as u128 + 1)
        .checked_pow(n.try_into().unwrap_or(u32::MAX))
        .unwrap_or(u128::MAX);
    if states > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "(m+1)^n = {states} assignment states exceed budget {budget}"
        )));
    }
    if n == 0 || m == 0 {
        return Ok(Matching::empty());
    }

    let mut jobs: Vec<usize> = (0..n).collect();
    jobs.sort_by_key(|&j| std::cmp::Reverse(inst.row(j).iter().copied().max().unwrap_or(0)));
    let allowed = (0..n)
        .map(|j| (0..m).filter(|&i| inst.tolerance(j, i) > 0).collect())
        .collect();
    let ceiling: usize = (0..m)
        .map(|i| machine_capacity(inst, i))
        .sum::<usize>()
        .min(n);

    let mut search = Search {
        inst,
        jobs,
        allowed,
        degree: vec![0; m],
        min_tol: vec![u64::MAX; m],
        assignment: vec![None; n],
        best: vec![None; n],
        best_size: 0,
        ceiling,
    };
    search.run(0, 0);

    let edges = search
        .best
        .iter()
        .enumerate()
        .filter_map(|(j, &i)| i.map(|i| (j, i)))
        .collect();
    Ok(Matching::new(edges))
}

/// Maximum PD-matching by enumerating per-machine degree thresholds and
/// taking the best b-matching over all guesses. Requires the pruned
/// candidate product within `budget`.
pub fn oracle_threshold_vectors(inst: &Instance, budget: u64) -> Result<Matching> {
    threshold_scan(inst, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixtures, gen_random, Fixture};
    use crate::instance::{is_maximal, verify};

    #[test]
    fn assignment_oracle_on_fixtures() {
        let ir = fixtures(Fixture::Ir, 3).unwrap();
        assert_eq!(
            oracle_enumerate_assignments(&ir, DEFAULT_ORACLE_BUDGET)
                .unwrap()
                .len(),
            3
        );

        let tight = fixtures(Fixture::Tight, 2).unwrap();
        assert_eq!(
            oracle_enumerate_assignments(&tight, DEFAULT_ORACLE_BUDGET)
                .unwrap()
                .len(),
            4
        );

        let zero = Instance::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(
            oracle_enumerate_assignments(&zero, DEFAULT_ORACLE_BUDGET)
                .unwrap()
                .len(),
            0
        );
    }

    #[test]
    fn threshold_oracle_on_fixtures() {
        let ir = fixtures(Fixture::Ir, 3).unwrap();
        assert_eq!(
            oracle_threshold_vectors(&ir, DEFAULT_ORACLE_BUDGET)
                .unwrap()
                .len(),
            3
        );

        let monobad = fixtures(Fixture::Monobad, 2).unwrap();
        assert_eq!(
            oracle_threshold_vectors(&monobad, DEFAULT_ORACLE_BUDGET)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn budget_is_enforced() {
        let inst = gen_random(10, 3, 3, 0.0, 5).unwrap();
        // 4^10 is around a million.
        assert!(oracle_enumerate_assignments(&inst, 1000).is_err());
    }

    #[test]
    fn oracles_agree_and_outputs_are_maximal() {
        for seed in 0..60 {
            let inst = gen_random(6, 3, 4, 0.25, seed).unwrap();
            let a = oracle_enumerate_assignments(&inst, DEFAULT_ORACLE_BUDGET).unwrap();
            let b = oracle_threshold_vectors(&inst, DEFAULT_ORACLE_BUDGET).unwrap();
            assert!(verify(&inst, &a).valid, "seed {seed}");
            assert!(verify(&inst, &b).valid, "seed {seed}");
            assert_eq!(a.len(), b.len(), "seed {seed}");
            assert!(is_maximal(&inst, &a).unwrap(), "seed {seed}");
            assert!(is_maximal(&inst, &b).unwrap(), "seed {seed}");
        }
    }
}
