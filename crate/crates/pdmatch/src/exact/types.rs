//! Job-type machinery: the exchange step that concentrates shared machines,
//! and the dynamic program for instances with few distinct tolerance rows.

use crate::classify::classify;
use crate::instance::{verify, Instance, Matching};
use crate::{Error, Result};

const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Maps each job to a type id, types numbered in first-occurrence order.
fn type_ids(inst: &Instance) -> (Vec<usize>, Vec<Vec<usize>>, Vec<Vec<u64>>) {
    let mut profiles: Vec<Vec<u64>> = Vec::new();
    let mut of_job = Vec::with_capacity(inst.jobs());
    let mut jobs_of: Vec<Vec<usize>> = Vec::new();
    for j in 0..inst.jobs() {
        let row = inst.row(j);
        match profiles.iter().position(|p| p == row) {
            Some(t) => {
                of_job.push(t);
                jobs_of[t].push(j);
            }
            None => {
                of_job.push(profiles.len());
                profiles.push(row.to_vec());
                jobs_of.push(vec![j]);
            }
        }
    }
    (of_job, jobs_of, profiles)
}

/// Rearranges a valid matching, preserving its size and validity, so that
/// every pair of job types shares at most one machine.
///
/// While two machines both host both types of some pair, the smaller of the
/// four (type, machine) groups is swapped with equally many jobs of the
/// other type on the other machine. Degrees never change, and both machines
/// already host both types, so every tolerance constraint survives the
/// swap; each swap empties at least one (type, machine) group, so the loop
/// terminates.
pub fn normalize_shared_machines(inst: &Instance, mat: &Matching) -> Result<Matching> {
    let report = verify(inst, mat);
    if !report.valid {
        return Err(Error::InvalidMatching(format!(
            "{} violation(s)",
            report.violations.len()
        )));
    }

    let (type_of, _, profiles) = type_ids(inst);
    let t = profiles.len();
    let m = inst.machines();

    // jobs grouped by (type, machine), kept sorted for determinism
    let mut group: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); m]; t];
    for &(j, i) in mat.edges() {
        group[type_of[j]][i].push(j);
    }

    loop {
        let mut swapped = false;
        'scan: for t1 in 0..t {
            for t2 in (t1 + 1)..t {
                let hosts: Vec<usize> = (0..m)
                    .filter(|&i| !group[t1][i].is_empty() && !group[t2][i].is_empty())
                    .collect();
                if hosts.len() < 2 {
                    continue;
                }
                let (i1, i2) = (hosts[0], hosts[1]);

                let cells = [
                    (t1, i1, t2, i2),
                    (t2, i1, t1, i2),
                    (t1, i2, t2, i1),
                    (t2, i2, t1, i1),
                ];
                let &(ta, ia, tb, ib) = cells
                    .iter()
                    .min_by_key(|&&(ty, mach, _, _)| group[ty][mach].len())
                    .expect("candidate list is non-empty");
                let count = group[ta][ia].len();

                let moved_a: Vec<usize> = group[ta][ia].drain(..).collect();
                let moved_b: Vec<usize> = group[tb][ib].drain(..count).collect();
                group[ta][ib].extend(moved_a);
                group[ta][ib].sort_unstable();
                group[tb][ia].extend(moved_b);
                group[tb][ia].sort_unstable();

                swapped = true;
                break 'scan;
            }
        }
        if !swapped {
            break;
        }
    }

    let mut edges = Vec::new();
    for by_machine in group.iter() {
        for (i, jobs) in by_machine.iter().enumerate() {
            for &j in jobs {
                edges.push((j, i));
            }
        }
    }
    Ok(Matching::new(edges))
}

/// Mixed-radix addressing of the remaining-jobs-per-type vectors.
struct Box_ {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl Box_ {
    fn new(counts: &[usize]) -> Self {
        let dims: Vec<usize> = counts.iter().map(|&q| q + 1).collect();
        let mut strides = vec![1usize; dims.len()];
        for i in 1..dims.len() {
            strides[i] = strides[i - 1] * dims[i - 1];
        }
        let size = dims.iter().product::<usize>().max(1);
        Box_ {
            dims,
            strides,
            size,
        }
    }

    fn index(&self, w: &[usize]) -> usize {
        w.iter().zip(&self.strides).map(|(&v, &s)| v * s).sum()
    }

    fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.dims
            .iter()
            .map(|&d| {
                let v = idx % d;
                idx /= d;
                v
            })
            .collect()
    }
}

struct Meter {
    remaining: u64,
}

impl Meter {
    fn spend(&mut self, amount: u64) -> Result<()> {
        if self.remaining < amount {
            return Err(Error::BudgetExceeded(
                "type-count solver exceeded its work budget".into(),
            ));
        }
        self.remaining -= amount;
        Ok(())
    }
}

/// Value table for one choice of excluded machines: `table[i][w]` is the
/// best matched count using the first `i` remaining machines and at most
/// `w` jobs of each type, where each used machine hosts a single type and
/// takes as many of its jobs as tolerance and supply allow.
fn run_dp(
    profiles: &[Vec<u64>],
    machines: &[usize],
    grid: &Box_,
    meter: &mut Meter,
) -> Result<Vec<Vec<u32>>> {
    let t = profiles.len();
    let mut layers: Vec<Vec<u32>> = Vec::with_capacity(machines.len() + 1);
    layers.push(vec![0u32; grid.size]);

    for &machine in machines {
        meter.spend((grid.size * (t + 1)) as u64)?;
        let prev = layers.last().expect("at least the base layer exists");
        let mut cur = vec![0u32; grid.size];
        for idx in 0..grid.size {
            let w = grid.decode(idx);
            let mut best = prev[idx];
            for (l, profile) in profiles.iter().enumerate() {
                let take = (w[l] as u64).min(profile[machine]) as usize;
                if take == 0 {
                    continue;
                }
                let mut reduced = w.clone();
                reduced[l] -= take;
                let cand = prev[grid.index(&reduced)] + take as u32;
                if cand > best {
                    best = cand;
                }
            }
            cur[idx] = best;
        }
        layers.push(cur);
    }
    Ok(layers)
}

/// Running totals while one machine's load vector is being built.
#[derive(Clone, Copy)]
struct PartialLoad {
    sum: usize,
    min_tol: u64,
    used_types: usize,
}

/// Enumerates multi-type load vectors for the machines in `subset`: each
/// machine hosts at least two types and a total within the smallest
/// tolerance among the types it hosts. `visit` runs once per complete
/// assignment with the loads and the per-type remainders.
struct LoadEnumerator<'a, F>
where
    F: FnMut(&[Vec<usize>], &[usize], &mut Meter) -> Result<()>,
{
    profiles: &'a [Vec<u64>],
    subset: &'a [usize],
    remaining: Vec<usize>,
    current: Vec<Vec<usize>>,
    visit: F,
}

impl<F> LoadEnumerator<'_, F>
where
    F: FnMut(&[Vec<usize>], &[usize], &mut Meter) -> Result<()>,
{
    fn machines(&mut self, at: usize, meter: &mut Meter) -> Result<()> {
        if at == self.subset.len() {
            meter.spend(1)?;
            return (self.visit)(&self.current, &self.remaining, meter);
        }
        let mut load = vec![0usize; self.profiles.len()];
        let start = PartialLoad {
            sum: 0,
            min_tol: u64::MAX,
            used_types: 0,
        };
        self.types(at, 0, &mut load, start, meter)
    }

    fn types(
        &mut self,
        at: usize,
        l: usize,
        load: &mut Vec<usize>,
        partial: PartialLoad,
        meter: &mut Meter,
    ) -> Result<()> {
        if l == self.profiles.len() {
            if partial.used_types >= 2 && (partial.sum as u64) <= partial.min_tol {
                self.current.push(load.clone());
                self.machines(at + 1, meter)?;
                self.current.pop();
            }
            return Ok(());
        }
        let tol = self.profiles[l][self.subset[at]];
        let cap = self.remaining[l].min(tol as usize);
        for c in 0..=cap {
            meter.spend(1)?;
            if c > 0 && (partial.sum + c) as u64 > tol.min(partial.min_tol) {
                break;
            }
            load[l] = c;
            self.remaining[l] -= c;
            let next = if c > 0 {
                PartialLoad {
                    sum: partial.sum + c,
                    min_tol: partial.min_tol.min(tol),
                    used_types: partial.used_types + 1,
                }
            } else {
                partial
            };
            self.types(at, l + 1, load, next, meter)?;
            self.remaining[l] += c;
            load[l] = 0;
        }
        Ok(())
    }
}

fn subsets_up_to(m: usize, max_size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for base in &frontier {
            let start = base.last().map_or(0, |&v| v + 1);
            for i in start..m {
                let mut s = base.clone();
                s.push(i);
                out.push(s.clone());
                next.push(s);
            }
        }
        frontier = next;
    }
    out
}

fn solve_t_types_inner(inst: &Instance, max_t: usize, work_budget: u64) -> Result<Matching> {
    let (_, jobs_of, profiles) = type_ids(inst);
    let t = profiles.len();
    if t > max_t {
        return Err(Error::BudgetExceeded(format!(
            "{t} job types exceed the configured limit of {max_t}"
        )));
    }
    if t == 0 || inst.machines() == 0 {
        return Ok(Matching::empty());
    }

    let counts: Vec<usize> = jobs_of.iter().map(Vec::len).collect();
    let grid = Box_::new(&counts);
    let m = inst.machines();
    let mut meter = Meter {
        remaining: work_budget,
    };

    // Every pair of types shares at most one machine in some optimum, so at
    // most t(t-1)/2 machines host more than one type.
    let max_shared = t * (t - 1) / 2;

    struct Best {
        value: usize,
        subset: Vec<usize>,
        loads: Vec<Vec<usize>>,
    }
    let mut best = Best {
        value: 0,
        subset: vec![],
        loads: vec![],
    };

    for subset in subsets_up_to(m, max_shared.min(m)) {
        let dp_machines: Vec<usize> = (0..m).filter(|i| !subset.contains(i)).collect();
        let layers = run_dp(&profiles, &dp_machines, &grid, &mut meter)?;
        let final_layer = layers.last().expect("base layer always present");

        let mut enumerator = LoadEnumerator {
            profiles: &profiles,
            subset: &subset,
            remaining: counts.clone(),
            current: Vec::new(),
            visit: |loads: &[Vec<usize>], remaining: &[usize], _: &mut Meter| {
                let used: usize = loads.iter().flatten().sum();
                let value = used + final_layer[grid.index(remaining)] as usize;
                if value > best.value {
                    best = Best {
                        value,
                        subset: subset.clone(),
                        loads: loads.to_vec(),
                    };
                }
                Ok(())
            },
        };
        enumerator.machines(0, &mut meter)?;
    }

    // Reconstruct: replay the winning subset's DP and walk the layers back.
    let dp_machines: Vec<usize> = (0..m).filter(|i| !best.subset.contains(i)).collect();
    let layers = run_dp(&profiles, &dp_machines, &grid, &mut meter)?;

    let mut w: Vec<usize> = counts.clone();
    for loads in &best.loads {
        for (l, &c) in loads.iter().enumerate() {
            w[l] -= c;
        }
    }

    // (machine, type, count) picks, starting with the shared machines.
    let mut picks: Vec<(usize, usize, usize)> = Vec::new();
    for (pos, &machine) in best.subset.iter().enumerate() {
        for (l, &c) in best.loads[pos].iter().enumerate() {
            if c > 0 {
                picks.push((machine, l, c));
            }
        }
    }
    for layer in (1..layers.len()).rev() {
        let machine = dp_machines[layer - 1];
        let here = layers[layer][grid.index(&w)];
        if here == layers[layer - 1][grid.index(&w)] {
            continue;
        }
        let mut chosen = None;
        for (l, profile) in profiles.iter().enumerate() {
            let take = (w[l] as u64).min(profile[machine]) as usize;
            if take == 0 {
                continue;
            }
            let mut reduced = w.clone();
            reduced[l] -= take;
            if layers[layer - 1][grid.index(&reduced)] + take as u32 == here {
                chosen = Some((l, take));
                break;
            }
        }
        let (l, take) = chosen.expect("table value must be reproducible");
        picks.push((machine, l, take));
        w[l] -= take;
    }

    picks.sort_unstable();
    let mut cursor = vec![0usize; t];
    let mut edges = Vec::new();
    for (machine, l, count) in picks {
        for _ in 0..count {
            edges.push((jobs_of[l][cursor[l]], machine));
            cursor[l] += 1;
        }
    }
    Ok(Matching::new(edges))
}

/// Maximum PD-matching for instances with at most `max_t` distinct
/// tolerance rows: guesses the machines hosting multiple types and their
/// loads, and fills the single-type machines by dynamic programming over
/// per-type job budgets.
pub fn solve_t_types(inst: &Instance, max_t: usize) -> Result<Matching> {
    solve_t_types_inner(inst, max_t, DEFAULT_WORK_BUDGET)
}

pub(crate) fn solve_t_types_budget(
    inst: &Instance,
    max_t: usize,
    work_budget: u64,
) -> Result<Matching> {
    solve_t_types_inner(inst, max_t, work_budget)
}

/// The two-type specialization; output is identical to
/// `solve_t_types(inst, 2)`.
pub fn solve_two_types(inst: &Instance) -> Result<Matching> {
    let report = classify(inst);
    if report.type_count > 2 {
        return Err(Error::ClassMismatch {
            required: "two-types",
            reason: format!("{} job types, at most 2 supported", report.type_count),
        });
    }
    solve_t_types_inner(inst, 2, DEFAULT_WORK_BUDGET)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_vdep;

    fn inst(rows: Vec<Vec<u64>>) -> Instance {
        Instance::from_rows(rows).unwrap()
    }

    fn shared_machines_per_pair(inst: &Instance, mat: &Matching) -> usize {
        let (type_of, _, profiles) = type_ids(inst);
        let t = profiles.len();
        let mut hosts = vec![vec![false; inst.machines()]; t];
        for &(j, i) in mat.edges() {
            hosts[type_of[j]][i] = true;
        }
        let mut worst = 0;
        for t1 in 0..t {
            for t2 in (t1 + 1)..t {
                let shared = (0..inst.machines())
                    .filter(|&i| hosts[t1][i] && hosts[t2][i])
                    .count();
                worst = worst.max(shared);
            }
        }
        worst
    }

    #[test]
    fn normalize_concentrates_pairs() {
        // Two types spread over two machines, every tolerance 2.
        let i = inst(vec![vec![2, 2], vec![2, 2], vec![3, 3], vec![3, 3]]);
        let mat = Matching::new(vec![(0, 0), (2, 0), (1, 1), (3, 1)]);
        let out = normalize_shared_machines(&i, &mat).unwrap();
        assert_eq!(out.len(), mat.len());
        assert!(verify(&i, &out).valid);
        assert!(shared_machines_per_pair(&i, &out) <= 1);
    }

    #[test]
    fn normalize_leaves_single_type_untouched() {
        let i = inst(vec![vec![2, 2], vec![2, 2]]);
        let mat = Matching::new(vec![(0, 0), (1, 0)]);
        assert_eq!(normalize_shared_machines(&i, &mat).unwrap(), mat);
    }

    #[test]
    fn normalize_empty() {
        let i = inst(vec![vec![1]]);
        assert!(normalize_shared_machines(&i, &Matching::empty())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn normalize_rejects_invalid() {
        let i = inst(vec![vec![1]]);
        assert!(normalize_shared_machines(&i, &Matching::new(vec![(0, 0), (0, 0)])).is_err());
    }

    #[test]
    fn single_type_equals_vdep() {
        let i = inst(vec![vec![2, 1]; 4]);
        let by_types = solve_t_types(&i, 3).unwrap();
        let by_vdep = solve_vdep(&i).unwrap();
        assert_eq!(by_types.len(), by_vdep.len());
        assert!(verify(&i, &by_types).valid);
    }

    #[test]
    fn two_complementary_types() {
        let i = inst(vec![vec![2, 1], vec![2, 1], vec![1, 2], vec![1, 2]]);
        let mat = solve_t_types(&i, 3).unwrap();
        assert!(verify(&i, &mat).valid);
        assert_eq!(mat.len(), 4);
    }

    #[test]
    fn two_types_matches_t_types_exactly() {
        let cases = [
            vec![vec![2, 1], vec![2, 1], vec![1, 2], vec![1, 2]],
            vec![vec![3, 0], vec![3, 0], vec![1, 2]],
            vec![vec![2, 2]; 4],
        ];
        for rows in cases {
            let i = inst(rows);
            assert_eq!(solve_two_types(&i).unwrap(), solve_t_types(&i, 2).unwrap());
        }
    }

    #[test]
    fn two_types_rejects_three() {
        let i = inst(vec![vec![1, 1], vec![2, 2], vec![3, 3]]);
        assert!(matches!(
            solve_two_types(&i),
            Err(Error::ClassMismatch { .. })
        ));
        // The general solver takes it.
        assert!(solve_t_types(&i, 3).is_ok());
    }

    #[test]
    fn type_limit_is_a_budget_error() {
        let i = inst(vec![vec![1], vec![2], vec![3], vec![4]]);
        assert!(matches!(
            solve_t_types(&i, 3),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn empty_instance() {
        let i = Instance::new(0, 0, vec![]).unwrap();
        assert!(solve_t_types(&i, 3).unwrap().is_empty());
    }

    #[test]
    fn shared_machine_needed_for_optimum() {
        // One machine must host both types to match everything.
        let i = inst(vec![vec![3, 1], vec![3, 1], vec![3, 2]]);
        let mat = solve_t_types(&i, 3).unwrap();
        assert!(verify(&i, &mat).valid);
        assert_eq!(mat.len(), 3);
    }
}
