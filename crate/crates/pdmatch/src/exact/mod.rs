//! Exact polynomial-time solvers for the tractable instance classes, and a
//! dispatcher that routes an instance to the first applicable algorithm.

mod const_m;
mod mono_tol;
mod one_two;
mod types;
mod udep;
mod vdep;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use const_m::{solve_const_m, solve_const_m_budget, ThresholdVector, DEFAULT_CONST_M_BUDGET};
pub use mono_tol::solve_mono_three_tol;
pub use one_two::solve_one_two;
pub use types::{normalize_shared_machines, solve_t_types, solve_two_types};
pub use udep::{
    solve_mono_general_greedy, solve_udep_complete, solve_udep_mono, udep_mono_sweep,
    UdepMonoInstance,
};
pub use vdep::{solve_uniform_tolerance, solve_vdep, solve_zero_k};

pub(crate) use const_m::threshold_scan;

use crate::classify::classify;
use crate::greedy::{greedy_strongly_maximal, GreedyConfig};
use crate::instance::{Instance, Matching};
use crate::oracle;

/// Algorithm identifiers; the `Display` strings are the stable names used
/// by the CLI and in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Greedy,
    GreedyGlobal,
    Vdep,
    UdepComplete,
    UdepMono,
    MonoGreedy,
    ConstM,
    Uniform,
    ZeroK,
    OneTwo,
    MonoThreeTol,
    TTypes,
    TwoTypes,
    Oracle,
    Auto,
}

impl Algorithm {
    pub const ALL: [Algorithm; 15] = [
        Algorithm::Greedy,
        Algorithm::GreedyGlobal,
        Algorithm::Vdep,
        Algorithm::UdepComplete,
        Algorithm::UdepMono,
        Algorithm::MonoGreedy,
        Algorithm::ConstM,
        Algorithm::Uniform,
        Algorithm::ZeroK,
        Algorithm::OneTwo,
        Algorithm::MonoThreeTol,
        Algorithm::TTypes,
        Algorithm::TwoTypes,
        Algorithm::Oracle,
        Algorithm::Auto,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::GreedyGlobal => "greedy-global",
            Algorithm::Vdep => "vdep",
            Algorithm::UdepComplete => "udep-complete",
            Algorithm::UdepMono => "udep-mono",
            Algorithm::MonoGreedy => "mono-greedy",
            Algorithm::ConstM => "const-m",
            Algorithm::Uniform => "uniform",
            Algorithm::ZeroK => "zero-k",
            Algorithm::OneTwo => "one-two",
            Algorithm::MonoThreeTol => "mono-3tol",
            Algorithm::TTypes => "t-types",
            Algorithm::TwoTypes => "two-types",
            Algorithm::Oracle => "oracle",
            Algorithm::Auto => "auto",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| crate::Error::InvalidParam(format!("unknown algorithm `{s}`")))
    }
}

/// Outcome of a solve: the matching, which algorithm produced it, whether
/// that algorithm certifies optimality, and how long it took.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub matching: Matching,
    pub algorithm: Algorithm,
    pub optimal: bool,
    pub elapsed: Duration,
}

/// Work budgets for the enumeration-based fallbacks of [`dispatch`].
#[derive(Debug, Clone)]
pub struct DispatchConfig {
    /// Cap on the threshold-vector product for the constant-machine solver.
    pub const_m_budget: u64,
    /// Cap on the assignment-state count for the enumeration oracle.
    pub oracle_budget: u64,
    /// Cap on the estimated step count for the type-count and monotone
    /// limited-tolerance solvers.
    pub work_budget: u64,
}

impl Default for DispatchConfig {
    fn default() -> Self {
        DispatchConfig {
            const_m_budget: DEFAULT_CONST_M_BUDGET,
            oracle_budget: oracle::DEFAULT_ORACLE_BUDGET,
            work_budget: 100_000_000,
        }
    }
}

/// Routes an instance to the first applicable solver, in fixed priority:
/// uniform, zero-k, one-two, vdep, udep-complete, udep-mono, t-types,
/// mono-3tol, const-m, oracle, and finally greedy. The report is marked
/// optimal exactly when a certified-exact path ran.
pub fn dispatch(inst: &Instance) -> SolveReport {
    dispatch_with(inst, &DispatchConfig::default())
}

pub fn dispatch_with(inst: &Instance, cfg: &DispatchConfig) -> SolveReport {
    let start = Instant::now();
    let report = classify(inst);
    let tol = &report.tolerance_set;
    let nonzero = tol.iter().filter(|&&v| v > 0).count();

    let from = |matching: Matching, algorithm: Algorithm, optimal: bool| SolveReport {
        matching,
        algorithm,
        optimal,
        elapsed: start.elapsed(),
    };

    if !tol.contains(&0) && nonzero <= 1 {
        if let Ok(mat) = solve_uniform_tolerance(inst) {
            return from(mat, Algorithm::Uniform, true);
        }
    }
    if nonzero <= 1 {
        if let Ok(mat) = solve_zero_k(inst) {
            return from(mat, Algorithm::ZeroK, true);
        }
    }
    if tol.first() == Some(&1) && tol.iter().all(|&v| v <= 2) {
        if let Ok(mat) = solve_one_two(inst) {
            return from(mat, Algorithm::OneTwo, true);
        }
    }
    if report.is_vdep {
        if let Ok(mat) = solve_vdep(inst) {
            return from(mat, Algorithm::Vdep, true);
        }
    }
    if report.is_udep && report.udep_complete {
        if let Ok(mat) = solve_udep_complete(inst) {
            return from(mat, Algorithm::UdepComplete, true);
        }
    }
    if report.is_udep && report.monotonizable.is_some() {
        if let Ok(mat) = solve_udep_mono(inst) {
            return from(mat, Algorithm::UdepMono, true);
        }
    }
    if report.type_count <= 3 {
        if let Ok(mat) = types::solve_t_types_budget(inst, 3, cfg.work_budget) {
            return from(mat, Algorithm::TTypes, true);
        }
    }
    if report.monotonizable.is_some()
        && tol.len() <= 3
        && mono_tol::estimated_steps(inst, tol) <= cfg.work_budget as u128
    {
        if let Ok(mat) = solve_mono_three_tol(inst) {
            return from(mat, Algorithm::MonoThreeTol, true);
        }
    }
    if let Ok(mat) = solve_const_m_budget(inst, cfg.const_m_budget) {
        return from(mat, Algorithm::ConstM, true);
    }
    if let Ok(mat) = oracle::oracle_enumerate_assignments(inst, cfg.oracle_budget) {
        return from(mat, Algorithm::Oracle, true);
    }

    let mat = greedy_strongly_maximal(inst, &GreedyConfig::default())
        .expect("default greedy configuration is always valid");
    from(mat, Algorithm::Greedy, false)
}
