//! Seeded in-class instance samplers shared by the integration suites.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pdmatch::Instance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dims(rng: &mut ChaCha8Rng) -> (usize, usize) {
    (rng.random_range(0..=10), rng.random_range(1..=4))
}

fn shuffle_instance(rng: &mut ChaCha8Rng, inst: &Instance) -> Instance {
    let mut jobs: Vec<usize> = (0..inst.jobs()).collect();
    let mut machines: Vec<usize> = (0..inst.machines()).collect();
    jobs.shuffle(rng);
    machines.shuffle(rng);
    let rows = jobs
        .iter()
        .map(|&j| machines.iter().map(|&i| inst.tolerance(j, i)).collect())
        .collect();
    Instance::new(inst.jobs(), inst.machines(), rows).unwrap()
}

/// Arbitrary instance: entries 0 with probability 1/4, else 1..=4.
pub fn sample_general(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.random_bool(0.25) {
                        0
                    } else {
                        rng.random_range(1..=4)
                    }
                })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Every column holds a single nonzero value.
pub fn sample_vdep(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let caps: Vec<u64> = (0..m).map(|_| rng.random_range(1..=4)).collect();
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|i| if rng.random_bool(0.3) { 0 } else { caps[i] })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Constant positive rows: one tolerance per job, every machine allowed.
pub fn sample_udep_complete(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let rows = (0..n)
        .map(|_| {
            let tol = rng.random_range(1..=4);
            vec![tol; m]
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Job-dependent and monotone: non-decreasing job tolerances on nested
/// machine suffixes, then job/machine orders shuffled away.
pub fn sample_udep_mono(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let mut tols: Vec<u64> = (0..n).map(|_| rng.random_range(0..=4)).collect();
    tols.sort_unstable();
    let mut starts: Vec<usize> = (0..n).map(|_| rng.random_range(0..=m)).collect();
    starts.sort_unstable_by(|a, b| b.cmp(a));
    let rows = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| if i >= starts[j] { tols[j] } else { 0 })
                .collect()
        })
        .collect();
    shuffle_instance(rng, &Instance::new(n, m, rows).unwrap())
}

/// All entries equal.
pub fn sample_uniform(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let k = rng.random_range(1..=4);
    Instance::new(n, m, vec![vec![k; m]; n]).unwrap()
}

/// Entries in {0, k} for one k.
pub fn sample_zero_k(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let k = rng.random_range(1..=4);
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| if rng.random_bool(0.35) { 0 } else { k })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Entries in {1, 2}.
pub fn sample_one_two(rng: &mut ChaCha8Rng) -> Instance {
    let (n, m) = dims(rng);
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| if rng.random_bool(0.5) { 1 } else { 2 })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Monotone under the identity orderings, entries from at most `values`
/// distinct levels in 0..=4.
pub fn sample_monotone_limited(rng: &mut ChaCha8Rng, values: usize) -> Instance {
    let (n, m) = dims(rng);

    let mut levels: Vec<u64> = Vec::new();
    while levels.len() < values {
        let v = rng.random_range(0..=4);
        if !levels.contains(&v) {
            levels.push(v);
        }
    }
    levels.sort_unstable();

    // Additive ramp, then collapse onto the chosen levels; a non-decreasing
    // value map keeps the matrix monotone.
    let mut job_level = vec![0u64; n];
    let mut acc = 0;
    for l in job_level.iter_mut() {
        acc += rng.random_range(0..=2);
        *l = acc;
    }
    let mut machine_level = vec![0u64; m];
    acc = 0;
    for l in machine_level.iter_mut() {
        acc += rng.random_range(0..=2);
        *l = acc;
    }
    let peak = job_level.last().copied().unwrap_or(0) + machine_level.last().copied().unwrap_or(0);

    let rows = (0..n)
        .map(|j| {
            (0..m)
                .map(|i| {
                    let raw = job_level[j] + machine_level[i];
                    let bucket = if peak == 0 {
                        levels.len() - 1
                    } else {
                        ((raw as u128 * levels.len() as u128) / (peak as u128 + 1)) as usize
                    };
                    levels[bucket]
                })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// At most `t` distinct tolerance rows.
pub fn sample_t_types(rng: &mut ChaCha8Rng, t: usize) -> Instance {
    let (n, m) = dims(rng);
    let profiles: Vec<Vec<u64>> = (0..t)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.random_bool(0.2) {
                        0
                    } else {
                        rng.random_range(1..=4)
                    }
                })
                .collect()
        })
        .collect();
    let rows = (0..n)
        .map(|_| profiles[rng.random_range(0..t)].clone())
        .collect();
    Instance::new(n, m, rows).unwrap()
}

/// Arbitrary instance with few machines, suitable for threshold
/// enumeration.
pub fn sample_small_m(rng: &mut ChaCha8Rng, max_m: usize) -> Instance {
    let n = rng.random_range(0..=10);
    let m = rng.random_range(1..=max_m);
    let rows = (0..n)
        .map(|_| {
            (0..m)
                .map(|_| {
                    if rng.random_bool(0.25) {
                        0
                    } else {
                        rng.random_range(1..=4)
                    }
                })
                .collect()
        })
        .collect();
    Instance::new(n, m, rows).unwrap()
}
