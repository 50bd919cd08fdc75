//! Maximum PD-matching by enumerating per-machine degree thresholds and
//! solving a b-matching for each guess. Exact for any instance; the
//! enumeration is practical when the candidate product is small, which a
//! constant machine count guarantees.

use crate::bipartite::{max_b_matching, CapacitatedBipartiteGraph};
use crate::instance::{Instance, Matching};
use crate::{Error, Result};

pub const DEFAULT_CONST_M_BUDGET: u64 = 10_000_000;

/// Per-machine degree thresholds. With threshold `t_i`, machine `i` accepts
/// only jobs of tolerance at least `t_i` and at most `t_i` of them, so any
/// resulting b-matching is a feasible PD-matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdVector {
    pub thresholds: Vec<u64>,
}

impl ThresholdVector {
    /// The b-matching problem this vector induces on an instance: edges
    /// where the tolerance reaches the machine's threshold, capped at it.
    pub fn induced_graph(&self, inst: &Instance) -> CapacitatedBipartiteGraph {
        let mut edges = Vec::new();
        for j in 0..inst.jobs() {
            for (i, &t) in self.thresholds.iter().enumerate() {
                if t > 0 && inst.tolerance(j, i) >= t {
                    edges.push((j, i));
                }
            }
        }
        CapacitatedBipartiteGraph::new(inst.jobs(), inst.machines(), edges, self.thresholds.clone())
            .expect("threshold count must match the machine count")
    }
}

/// Candidate thresholds for each machine: zero plus the distinct values of
/// its column. Raising a threshold inside a gap between consecutive column
/// values removes no edge and lowers no usable cap, so restricting the
/// enumeration to these values preserves the optimum.
pub(crate) fn threshold_candidates(inst: &Instance) -> Vec<Vec<u64>> {
    (0..inst.machines())
        .map(|i| {
            let mut values: Vec<u64> = inst.column(i);
            values.push(0);
            values.sort_unstable();
            values.dedup();
            values
        })
        .collect()
}

/// Enumerates all pruned threshold vectors, returning a best matching over
/// every guess. Errors when the candidate product exceeds `budget`.
pub(crate) fn threshold_scan(inst: &Instance, budget: u64) -> Result<Matching> {
    let (n, m) = (inst.jobs(), inst.machines());
    if n == 0 || m == 0 {
        return Ok(Matching::empty());
    }

    let candidates = threshold_candidates(inst);
    let combinations = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    if combinations > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{combinations} threshold combinations exceed budget {budget}"
        )));
    }

    // Columns sorted descending, for counting jobs at or above a threshold.
    let sorted_columns: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut col = inst.column(i);
            col.sort_unstable_by(|a, b| b.cmp(a));
            col
        })
        .collect();
    let takers_at = |i: usize, threshold: u64| -> usize {
        sorted_columns[i].partition_point(|&v| v >= threshold)
    };

    let mut best: Option<Matching> = None;
    let mut best_size = 0usize;
    let mut indices = vec![0usize; m];
    loop {
        let guess = ThresholdVector {
            thresholds: (0..m).map(|i| candidates[i][indices[i]]).collect(),
        };

        // Degree of machine i is capped by both its threshold and the
        // number of jobs tolerating it, bounding the achievable size.
        let mut bound: u128 = 0;
        for (i, &t) in guess.thresholds.iter().enumerate() {
            if t > 0 {
                bound += (t as u128).min(takers_at(i, t) as u128);
            }
        }
        let bound = bound.min(n as u128) as usize;

        if bound > best_size || (best.is_none() && bound == best_size) {
            let matched = max_b_matching(&guess.induced_graph(inst));
            if matched.len() > best_size || best.is_none() {
                best_size = matched.len();
                best = Some(Matching::new(matched));
            }
        }

        // Next vector in mixed-radix order.
        let mut pos = 0;
        loop {
            if pos == m {
                return Ok(best.unwrap_or_else(Matching::empty));
            }
            indices[pos] += 1;
            if indices[pos] < candidates[pos].len() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

/// Maximum PD-matching via threshold enumeration, with the default budget.
pub fn solve_const_m(inst: &Instance) -> Result<Matching> {
    solve_const_m_budget(inst, DEFAULT_CONST_M_BUDGET)
}

/// Maximum PD-matching via threshold enumeration with an explicit cap on
/// the candidate product.
pub fn solve_const_m_budget(inst: &Instance, budget: u64) -> Result<Matching> {
    threshold_scan(inst, budget)
}
