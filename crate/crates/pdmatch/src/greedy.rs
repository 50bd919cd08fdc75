//! Greedy strongly-maximal matching: a 1/2-approximation for arbitrary
//! instances, plus a global-selection variant.

use crate::instance::{Instance, Matching};
use crate::{Error, Result};

/// Tie-breaking rule between jobs of equal tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowIndexFirst,
    HighIndexFirst,
}

/// Configuration for [`greedy_strongly_maximal`]. The machine order is a
/// free parameter of the algorithm; the default is ascending index.
#[derive(Debug, Clone, Default)]
pub struct GreedyConfig {
    /// Permutation of the machines; `None` means ascending index order.
    pub machine_order: Option<Vec<usize>>,
    pub job_tiebreak: TieBreak,
}

impl GreedyConfig {
    fn order(&self, m: usize) -> Result<Vec<usize>> {
        match &self.machine_order {
            None => Ok((0..m).collect()),
            Some(order) => {
                let mut seen = vec![false; m];
                if order.len() != m {
                    return Err(Error::InvalidParam(format!(
                        "machine order has {} entries for {} machines",
                        order.len(),
                        m
                    )));
                }
                for &i in order {
                    if i >= m || seen[i] {
                        return Err(Error::InvalidParam(format!(
                            "machine order is not a permutation of 0..{m}"
                        )));
                    }
                    seen[i] = true;
                }
                Ok(order.clone())
            }
        }
    }
}

/// Processes machines in the configured order; each machine takes the `k`
/// highest-tolerance unmatched jobs for the largest `k` such that `k`
/// unmatched jobs have tolerance at least `k` on it.
///
/// The result is always strongly maximal, hence at least half the size of a
/// maximum PD-matching.
pub fn greedy_strongly_maximal(inst: &Instance, cfg: &GreedyConfig) -> Result<Matching> {
    let order = cfg.order(inst.machines())?;
    let mut matched = vec![false; inst.jobs()];
    let mut edges = Vec::new();

    let mut ranked: Vec<(u64, usize)> = Vec::with_capacity(inst.jobs());
    for &i in &order {
        ranked.clear();
        for j in 0..inst.jobs() {
            if !matched[j] {
                ranked.push((inst.tolerance(j, i), j));
            }
        }
        // Sort by tolerance descending; equal tolerances resolve by the
        // configured job tie-break.
        match cfg.job_tiebreak {
            TieBreak::LowIndexFirst => {
                ranked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)))
            }
            TieBreak::HighIndexFirst => {
                ranked.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)))
            }
        }

        let mut k = 0;
        while k < ranked.len() && ranked[k].0 > k as u64 {
            k += 1;
        }
        for &(_, j) in &ranked[..k] {
            matched[j] = true;
            edges.push((j, i));
        }
    }
    Ok(Matching::new(edges))
}

/// Repeatedly matches a job with the globally largest tolerance among pairs
/// `(j, i)` with `j` unmatched and `degree(i) < b(j, i)`; ties resolve by
/// the given rule applied to the job index, then the machine index.
pub fn greedy_global(inst: &Instance, tiebreak: TieBreak) -> Matching {
    let (n, m) = (inst.jobs(), inst.machines());
    let mut matched = vec![false; n];
    let mut degree = vec![0u64; m];
    let mut edges = Vec::new();

    loop {
        let mut best: Option<(u64, usize, usize)> = None;
        for j in 0..n {
            if matched[j] {
                continue;
            }
            for i in 0..m {
                let b = inst.tolerance(j, i);
                if degree[i] >= b {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bv, bj, bi)) => match tiebreak {
                        TieBreak::LowIndexFirst => b > bv || (b == bv && (j, i) < (bj, bi)),
                        TieBreak::HighIndexFirst => b > bv || (b == bv && (j, i) > (bj, bi)),
                    },
                };
                if better {
                    best = Some((b, j, i));
                }
            }
        }
        match best {
            None => break,
            Some((_, j, i)) => {
                matched[j] = true;
                degree[i] += 1;
                edges.push((j, i));
            }
        }
    }
    Matching::new(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fixtures, Fixture};
    use crate::instance::{is_strongly_maximal, verify};

    #[test]
    fn ir3_is_solved_optimally() {
        let inst = fixtures(Fixture::Ir, 3).unwrap();
        let mat = greedy_strongly_maximal(&inst, &GreedyConfig::default()).unwrap();
        assert_eq!(mat.edges(), &[(1, 0), (2, 0), (3, 0)]);
    }

    #[test]
    fn tight_instance_hits_half_under_adversarial_config() {
        let inst = fixtures(Fixture::Tight, 2).unwrap();
        let cfg = GreedyConfig {
            machine_order: Some(vec![1, 0]),
            job_tiebreak: TieBreak::HighIndexFirst,
        };
        let mat = greedy_strongly_maximal(&inst, &cfg).unwrap();
        assert_eq!(mat.len(), 2);
        assert_eq!(mat.edges(), &[(2, 1), (3, 1)]);
        assert!(is_strongly_maximal(&inst, &mat).unwrap());

        // The default order recovers the optimum here.
        let mat = greedy_strongly_maximal(&inst, &GreedyConfig::default()).unwrap();
        assert_eq!(mat.len(), 4);
    }

    #[test]
    fn empty_instance() {
        let inst = Instance::new(0, 0, vec![]).unwrap();
        let mat = greedy_strongly_maximal(&inst, &GreedyConfig::default()).unwrap();
        assert!(mat.is_empty());
    }

    #[test]
    fn rejects_bad_machine_order() {
        let inst = fixtures(Fixture::Tight, 2).unwrap();
        let cfg = GreedyConfig {
            machine_order: Some(vec![0, 0]),
            job_tiebreak: TieBreak::LowIndexFirst,
        };
        assert!(greedy_strongly_maximal(&inst, &cfg).is_err());
    }

    #[test]
    fn output_is_valid_and_strongly_maximal() {
        let inst = Instance::from_rows(vec![
            vec![2, 1, 0],
            vec![3, 2, 2],
            vec![1, 2, 2],
            vec![2, 0, 1],
            vec![3, 3, 1],
        ])
        .unwrap();
        let mat = greedy_strongly_maximal(&inst, &GreedyConfig::default()).unwrap();
        assert!(verify(&inst, &mat).valid);
        assert!(is_strongly_maximal(&inst, &mat).unwrap());
    }

    #[test]
    fn global_on_ir3() {
        let inst = fixtures(Fixture::Ir, 3).unwrap();
        let mat = greedy_global(&inst, TieBreak::LowIndexFirst);
        assert_eq!(mat.len(), 3);
        assert!(is_strongly_maximal(&inst, &mat).unwrap());
    }

    #[test]
    fn global_on_all_zero() {
        let inst = Instance::from_rows(vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(greedy_global(&inst, TieBreak::LowIndexFirst).is_empty());
    }

    #[test]
    fn global_tight_adversarial_tiebreak() {
        let inst = fixtures(Fixture::Tight, 2).unwrap();
        let mat = greedy_global(&inst, TieBreak::HighIndexFirst);
        assert_eq!(mat.len(), 2);
        let mat = greedy_global(&inst, TieBreak::LowIndexFirst);
        assert_eq!(mat.len(), 4);
    }
}
