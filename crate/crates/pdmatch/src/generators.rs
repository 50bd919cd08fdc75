//! Seeded instance factories: random families, hardness-reduction
//! constructions, and canonical adversarial fixtures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{Instance, Matching};
use crate::{Error, Result};

// Guard against absurd allocation requests from generator parameters.
const MAX_CELLS: u128 = 1_000_000_000;

fn check_size(n: u128, m: u128) -> Result<()> {
    if n.saturating_mul(m.max(1)) > MAX_CELLS || n > MAX_CELLS {
        return Err(Error::InvalidParam(format!(
            "instance of {n} x {m} tolerances is too large"
        )));
    }
    Ok(())
}

/// Uniform random instance: each entry is 0 with probability `zero_prob`,
/// otherwise uniform in `[1, max_tol]`. Deterministic for a fixed seed.
pub fn gen_random(n: usize, m: usize, max_tol: u64, zero_prob: f64, seed: u64) -> Result<Instance> {
    if max_tol < 1 {
        return Err(Error::InvalidParam("max_tol must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&zero_prob) {
        return Err(Error::InvalidParam("zero_prob must lie in [0, 1]".into()));
    }
    check_size(n as u128, m as u128)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.random_bool(zero_prob) {
                        0
                    } else {
                        rng.random_range(1..=max_tol)
                    }
                })
                .collect()
        })
        .collect();
    Instance::new(n, m, b)
}

/// Random monotone instance: nonnegative increments accumulated along rows
/// and columns, then rescaled into `[0, max_tol]`. The result is always
/// non-decreasing in both axes under the identity orderings.
pub fn gen_monotonous(n: usize, m: usize, max_tol: u64, seed: u64) -> Result<Instance> {
    if max_tol < 1 {
        return Err(Error::InvalidParam("max_tol must be at least 1".into()));
    }
    check_size(n as u128, m as u128)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Cumulative sums of increments in {0..=2} per axis.
    let mut job_level = vec![0u64; n];
    let mut acc = 0u64;
    for level in job_level.iter_mut() {
        acc += rng.random_range(0..=2u64);
        *level = acc;
    }
    let mut machine_level = vec![0u64; m];
    acc = 0;
    for level in machine_level.iter_mut() {
        acc += rng.random_range(0..=2u64);
        *level = acc;
    }

    let peak = job_level.last().copied().unwrap_or(0) + machine_level.last().copied().unwrap_or(0);
    let scale = |raw: u64| (raw * max_tol).checked_div(peak).unwrap_or(max_tol);
    let b = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| scale(job_level[j] + machine_level[i]))
                .collect()
        })
        .collect();
    Instance::new(n, m, b)
}

/// Random job-dependent instance: each job gets one tolerance in
/// `[1, max_tol]` and a machine set drawn by keeping each machine with
/// probability `1 - zero_prob`.
pub fn gen_udep(n: usize, m: usize, max_tol: u64, zero_prob: f64, seed: u64) -> Result<Instance> {
    if max_tol < 1 {
        return Err(Error::InvalidParam("max_tol must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&zero_prob) {
        return Err(Error::InvalidParam("zero_prob must lie in [0, 1]".into()));
    }
    check_size(n as u128, m as u128)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = (0..n)
        .map(|_| {
            let tol = rng.random_range(1..=max_tol);
            (0..m)
                .map(|_| if rng.random_bool(zero_prob) { 0 } else { tol })
                .collect()
        })
        .collect();
    Instance::new(n, m, b)
}

/// Instance produced by the 3-partition reduction, plus the level of each
/// job (jobs of level `l` have tolerance `l * x_i` on machine `i`).
#[derive(Debug, Clone)]
pub struct ThreePartitionInstance {
    pub instance: Instance,
    /// `job_level[j]` is the level (1-based) of job `j`.
    pub job_level: Vec<usize>,
    /// `machine_value[i]` is the element of the input multiset machine `i`
    /// corresponds to.
    pub machine_value: Vec<u64>,
}

/// Encodes a 3-partition input as a PD-matching instance with
/// `(k(k+1)/2) * target` jobs and `3k` machines. The instance has a
/// matching covering every job iff the multiset splits into `k` triples of
/// sum `target`. Monotone whenever `values` is sorted ascending.
pub fn gen_3partition(values: &[u64], target: u64, k: usize) -> Result<ThreePartitionInstance> {
    if values.len() != 3 * k {
        return Err(Error::InvalidParam(format!(
            "expected {} values, found {}",
            3 * k,
            values.len()
        )));
    }
    let sum: u128 = values.iter().map(|&x| x as u128).sum();
    if sum != (k as u128) * (target as u128) {
        return Err(Error::InvalidParam(format!(
            "values sum to {sum}, expected k * target = {}",
            (k as u128) * (target as u128)
        )));
    }
    for &x in values {
        if 4 * (x as u128) <= target as u128 || 2 * (x as u128) >= target as u128 {
            return Err(Error::InvalidParam(format!(
                "value {x} outside (target/4, target/2)"
            )));
        }
    }

    let n_big: u128 = (k as u128) * (k as u128 + 1) / 2 * (target as u128);
    check_size(n_big, (3 * k) as u128)?;
    let n = n_big as usize;
    let m = 3 * k;

    let mut b = Vec::with_capacity(n);
    let mut job_level = Vec::with_capacity(n);
    for level in 1..=k {
        let row: Vec<u64> = values.iter().map(|&x| x * level as u64).collect();
        for _ in 0..(level as u64 * target) {
            b.push(row.clone());
            job_level.push(level);
        }
    }

    Ok(ThreePartitionInstance {
        instance: Instance::new(n, m, b)?,
        job_level,
        machine_value: values.to_vec(),
    })
}

/// A system of triples over three `k`-element ground sets, with every
/// element occurring in at most 3 triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSystem {
    pub k: usize,
    pub triples: Vec<(usize, usize, usize)>,
}

impl TripleSystem {
    pub fn new(k: usize, triples: Vec<(usize, usize, usize)>) -> Result<Self> {
        let mut occ = vec![[0usize; 3]; k];
        for &(x, y, z) in &triples {
            if x >= k || y >= k || z >= k {
                return Err(Error::InvalidParam(format!(
                    "triple ({x},{y},{z}) out of range for k = {k}"
                )));
            }
            occ[x][0] += 1;
            occ[y][1] += 1;
            occ[z][2] += 1;
        }
        for (e, counts) in occ.iter().enumerate() {
            for (axis, &c) in counts.iter().enumerate() {
                if c > 3 {
                    return Err(Error::InvalidParam(format!(
                        "element {e} occurs {c} times on axis {axis}"
                    )));
                }
            }
        }
        let mut sorted = triples.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != triples.len() {
            return Err(Error::InvalidParam("duplicate triple".into()));
        }
        Ok(TripleSystem { k, triples })
    }
}

/// Role of each job in an instance produced by [`gen_3dm`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeDmRole {
    /// Element job for the `e`-th element of the Y axis.
    ElementY(usize),
    /// Element job for the `e`-th element of the Z axis.
    ElementZ(usize),
    /// Dummy job tied to triples whose X element is `e`.
    Dummy(usize),
}

/// Instance produced by the 3-dimensional-matching reduction, plus the job
/// roles and the machine-to-triple map needed to pull a triple system
/// solution back out of a matching.
#[derive(Debug, Clone)]
pub struct ThreeDmInstance {
    pub instance: Instance,
    pub roles: Vec<ThreeDmRole>,
    pub triples: Vec<(usize, usize, usize)>,
    pub k: usize,
}

/// Encodes a bounded 3-dimensional-matching system as a job-dependent
/// instance with tolerances in {1, 2}: one machine per triple, one
/// tolerance-2 element job per Y and Z element, and one tolerance-1 dummy
/// per occurrence of each X element beyond the first.
///
/// Every X element must occur in some triple, so that the dummy counts are
/// defined; the instance then has exactly `|triples| + k` jobs, and the
/// maximum matching covers all of them iff the system has a perfect
/// three-dimensional matching.
pub fn gen_3dm(ts: &TripleSystem) -> Result<ThreeDmInstance> {
    let m = ts.triples.len();
    let k = ts.k;

    let mut x_count = vec![0usize; k];
    for &(x, _, _) in &ts.triples {
        x_count[x] += 1;
    }
    if let Some(missing) = x_count.iter().position(|&c| c == 0) {
        return Err(Error::InvalidParam(format!(
            "X element {missing} occurs in no triple"
        )));
    }

    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut roles = Vec::new();
    for e in 0..k {
        let row = ts
            .triples
            .iter()
            .map(|&(_, y, _)| if y == e { 2 } else { 0 })
            .collect();
        rows.push(row);
        roles.push(ThreeDmRole::ElementY(e));
    }
    for e in 0..k {
        let row = ts
            .triples
            .iter()
            .map(|&(_, _, z)| if z == e { 2 } else { 0 })
            .collect();
        rows.push(row);
        roles.push(ThreeDmRole::ElementZ(e));
    }
    for (e, &count) in x_count.iter().enumerate() {
        // One dummy per occurrence beyond the first.
        for _ in 1..count {
            let row = ts
                .triples
                .iter()
                .map(|&(x, _, _)| if x == e { 1 } else { 0 })
                .collect();
            rows.push(row);
            roles.push(ThreeDmRole::Dummy(e));
        }
    }

    Ok(ThreeDmInstance {
        instance: Instance::new(rows.len(), m, rows)?,
        roles,
        triples: ts.triples.clone(),
        k,
    })
}

/// Maps a matching on a [`gen_3dm`] instance back to a set of triples: the
/// triples of exactly the machines hosting two jobs.
pub fn extract_3dm_solution(
    gen: &ThreeDmInstance,
    mat: &Matching,
) -> Result<Vec<(usize, usize, usize)>> {
    let report = crate::instance::verify(&gen.instance, mat);
    if !report.valid {
        return Err(Error::InvalidMatching(
            "matching is not feasible for the generated instance".into(),
        ));
    }
    let degrees = mat.machine_degrees(gen.instance.machines());
    Ok(degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d == 2)
        .map(|(i, _)| gen.triples[i])
        .collect())
}

/// A system of `d`-ary tuples over `d` ground sets of `k` elements each,
/// with every element occurring in at most `d` tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSystem {
    pub d: usize,
    pub k: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl TupleSystem {
    pub fn new(d: usize, k: usize, tuples: Vec<Vec<usize>>) -> Result<Self> {
        let mut occ = vec![vec![0usize; k]; d];
        for tuple in &tuples {
            if tuple.len() != d {
                return Err(Error::InvalidParam(format!(
                    "tuple {tuple:?} has arity {}, expected {d}",
                    tuple.len()
                )));
            }
            for (axis, &e) in tuple.iter().enumerate() {
                if e >= k {
                    return Err(Error::InvalidParam(format!(
                        "element {e} out of range for k = {k}"
                    )));
                }
                occ[axis][e] += 1;
                if occ[axis][e] > d {
                    return Err(Error::InvalidParam(format!(
                        "element {e} occurs more than {d} times on axis {axis}"
                    )));
                }
            }
        }
        let mut sorted = tuples.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != tuples.len() {
            return Err(Error::InvalidParam("duplicate tuple".into()));
        }
        Ok(TupleSystem { d, k, tuples })
    }
}

/// Instance produced by the d-dimensional-matching reduction.
#[derive(Debug, Clone)]
pub struct DdmInstance {
    pub instance: Instance,
    /// (axis, element) of each element job; dummies carry `None`.
    pub roles: Vec<Option<(usize, usize)>>,
    pub tuples: Vec<Vec<usize>>,
}

/// Encodes a d-dimensional-matching system (arity `k2`) as a two-tolerance
/// instance: element jobs have tolerance `k2` on machines of tuples
/// containing them and `k1` elsewhere, and `k1 * (t - k)` dummies have
/// tolerance `k1` everywhere. All jobs are matchable iff the system has a
/// perfect matching.
pub fn gen_ddm(ts: &TupleSystem, k1: u64, k2: u64) -> Result<DdmInstance> {
    if ts.d as u64 != k2 {
        return Err(Error::InvalidParam(format!(
            "tuple arity {} must equal k2 = {k2}",
            ts.d
        )));
    }
    if k1 < 1 || k2 <= k1.max(2) {
        return Err(Error::InvalidParam(
            "need k1 >= 1 and k2 > max(2, k1)".into(),
        ));
    }
    let t = ts.tuples.len();
    if t < ts.k {
        return Err(Error::InvalidParam(format!(
            "need at least k = {} tuples, found {t}",
            ts.k
        )));
    }

    let dummy_count = (k1 as usize) * (t - ts.k);
    check_size((ts.k * ts.d + dummy_count) as u128, t as u128)?;

    let mut rows = Vec::new();
    let mut roles = Vec::new();
    for axis in 0..ts.d {
        for e in 0..ts.k {
            let row = ts
                .tuples
                .iter()
                .map(|tuple| if tuple[axis] == e { k2 } else { k1 })
                .collect();
            rows.push(row);
            roles.push(Some((axis, e)));
        }
    }
    for _ in 0..dummy_count {
        rows.push(vec![k1; t]);
        roles.push(None);
    }

    Ok(DdmInstance {
        instance: Instance::new(rows.len(), t, rows)?,
        roles,
        tuples: ts.tuples.clone(),
    })
}

/// Canonical adversarial fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fixture {
    /// `r + 1` jobs on one machine: one job of tolerance 1, `r` of
    /// tolerance `r`. A maximal matching can be `r` times smaller than the
    /// maximum; parameter is `r`.
    Ir,
    /// `2k` jobs on two machines. The first `k` jobs fit only on machine 1,
    /// all tolerances are `k`; greedy orders exist that reach exactly half
    /// of the optimum `2k`. Parameter is `k`.
    Tight,
    /// `2k` jobs on `k + 1` machines: `k` jobs of tolerance 1 everywhere,
    /// `k` jobs with tolerance 1 on the first `k` machines and `k` on the
    /// last. The monotone sweep reaches only `k + 1` of the optimum `2k`.
    /// Parameter is `k`.
    Monobad,
    /// The worked 3-partition encoding ({26,30,31,33,36,44}, target 100,
    /// k = 2): 300 jobs, 6 machines, fully matchable. Parameter ignored.
    ThreePartExample,
}

/// Builds a canonical fixture instance.
pub fn fixtures(name: Fixture, param: usize) -> Result<Instance> {
    match name {
        Fixture::Ir => {
            let r = param;
            if r < 1 {
                return Err(Error::InvalidParam("r must be at least 1".into()));
            }
            let mut rows = vec![vec![1u64]];
            rows.extend(std::iter::repeat_n(vec![r as u64], r));
            Instance::from_rows(rows)
        }
        Fixture::Tight => {
            let k = param;
            if k < 1 {
                return Err(Error::InvalidParam("k must be at least 1".into()));
            }
            let mut rows = Vec::with_capacity(2 * k);
            rows.extend(std::iter::repeat_n(vec![0, k as u64], k));
            rows.extend(std::iter::repeat_n(vec![k as u64, k as u64], k));
            Instance::from_rows(rows)
        }
        Fixture::Monobad => {
            let k = param;
            if k < 1 {
                return Err(Error::InvalidParam("k must be at least 1".into()));
            }
            let mut rows = Vec::with_capacity(2 * k);
            rows.extend(std::iter::repeat_n(vec![1u64; k + 1], k));
            let mut tolerant = vec![1u64; k + 1];
            tolerant[k] = k as u64;
            rows.extend(std::iter::repeat_n(tolerant, k));
            Instance::from_rows(rows)
        }
        Fixture::ThreePartExample => {
            Ok(gen_3partition(&[26, 30, 31, 33, 36, 44], 100, 2)?.instance)
        }
    }
}
