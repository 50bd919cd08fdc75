//! Maximum bipartite PD-matching.
//!
//! Jobs are matched to machines, at most one machine per job. Each entry
//! `b(j, i)` of the tolerance matrix bounds the total number of jobs machine
//! `i` may host *if job `j` is among them*; an entry of 0 forbids the
//! assignment altogether. A PD-matching is a set of job-machine edges in
//! which every matched edge `(j, i)` satisfies `degree(i) <= b(j, i)`, and
//! the objective is to maximize the number of matched jobs.
//!
//! The crate provides:
//!
//! - the instance/matching data model with JSON serialization and a
//!   feasibility verifier ([`instance`]),
//! - structural classification of instances (monotone orderings, job- and
//!   machine-dependent tolerances, tolerance sets, job types)
//!   ([`classify`](mod@classify)),
//! - reusable matching engines: capacitated bipartite b-matching and
//!   general-graph maximum matching ([`bipartite`], [`blossom`]),
//! - a greedy 1/2-approximation and its global-selection variant
//!   ([`greedy`]),
//! - exact polynomial solvers for the tractable instance classes, plus a
//!   dispatcher that routes each instance to the best applicable algorithm
//!   ([`exact`]),
//! - two independent brute-force oracles for desk-scale ground truth
//!   ([`oracle`]),
//! - seeded instance generators, hardness-reduction constructions and
//!   canonical adversarial fixtures ([`generators`]).
//!
//! All types are immutable values and all operations are pure, so everything
//! here is safe to call concurrently on distinct inputs.

// Job and machine indices are the domain vocabulary; plain indexed loops
// over parallel per-job and per-machine arrays read better here than
// iterator chains.
#![allow(clippy::needless_range_loop)]

pub mod bipartite;
pub mod blossom;
pub mod classify;
pub mod exact;
pub mod generators;
pub mod greedy;
pub mod instance;
pub mod oracle;

pub use classify::{classify, ClassReport, MonotoneWitness, TypeProfile};
pub use exact::{dispatch, dispatch_with, Algorithm, DispatchConfig, SolveReport};
pub use greedy::{greedy_global, greedy_strongly_maximal, GreedyConfig, TieBreak};
pub use instance::{
    is_maximal, is_strongly_maximal, parse_instance, parse_matching, verify, Instance, Matching,
    ValidityReport, Violation, ViolationKind,
};

/// Errors shared by the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input text could not be parsed into an instance or matching.
    #[error("parse error: {0}")]
    Parse(String),

    /// A solver was invoked on an instance outside its class.
    #[error("instance is not in class `{required}`: {reason}")]
    ClassMismatch {
        required: &'static str,
        reason: String,
    },

    /// An enumeration-based routine would exceed its work budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A matching argument failed verification against its instance.
    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    /// A generator or constructor was given out-of-range parameters.
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
