//! Instance and matching data model, JSON formats, and the feasibility
//! verifier with its maximality predicates.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A PD-matching instance: `n` jobs, `m` machines, and an `n x m` tolerance
/// matrix. `b[j][i]` is the largest degree machine `i` may have in a matching
/// that assigns job `j` to it; 0 forbids the assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    m: usize,
    b: Vec<Vec<u64>>,
}

impl Instance {
    /// Builds an instance, checking that `b` is exactly `n x m`.
    pub fn new(n: usize, m: usize, b: Vec<Vec<u64>>) -> Result<Self> {
        if b.len() != n {
            return Err(Error::Parse(format!(
                "expected {} rows, found {}",
                n,
                b.len()
            )));
        }
        for (j, row) in b.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {}",
                    j,
                    row.len(),
                    m
                )));
            }
        }
        Ok(Instance { n, m, b })
    }

    /// Builds an instance from its rows; the machine count is taken from the
    /// first row (0 when there are no rows).
    pub fn from_rows(b: Vec<Vec<u64>>) -> Result<Self> {
        let n = b.len();
        let m = b.first().map_or(0, Vec::len);
        Instance::new(n, m, b)
    }

    /// Number of jobs.
    pub fn jobs(&self) -> usize {
        self.n
    }

    /// Number of machines.
    pub fn machines(&self) -> usize {
        self.m
    }

    /// Tolerance of job `j` on machine `i`.
    pub fn tolerance(&self, job: usize, machine: usize) -> u64 {
        self.b[job][machine]
    }

    /// Tolerance row of a single job.
    pub fn row(&self, job: usize) -> &[u64] {
        &self.b[job]
    }

    /// Tolerance column of a single machine, materialized.
    pub fn column(&self, machine: usize) -> Vec<u64> {
        self.b.iter().map(|row| row[machine]).collect()
    }

    /// The full matrix.
    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.b
    }

    /// Serializes to the canonical JSON instance format.
    pub fn to_json(&self) -> String {
        let raw = RawInstance {
            n: self.n as u64,
            m: self.m as u64,
            b: self
                .b
                .iter()
                .map(|row| row.iter().map(|&v| v as i64).collect())
                .collect(),
        };
        serde_json::to_string(&raw).expect("instance serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: u64,
    m: u64,
    b: Vec<Vec<i64>>,
}

/// Parses the JSON instance format `{"n": .., "m": .., "b": [[..]]}`.
///
/// Rejects malformed syntax, dimension mismatches, and negative or
/// non-integer entries, reporting the offending position.
pub fn parse_instance(raw: &[u8]) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_slice(raw).map_err(|e| Error::Parse(format!("instance JSON: {e}")))?;
    let n = usize::try_from(raw.n).map_err(|_| Error::Parse("job count out of range".into()))?;
    let m =
        usize::try_from(raw.m).map_err(|_| Error::Parse("machine count out of range".into()))?;
    let mut b = Vec::with_capacity(raw.b.len());
    for (j, row) in raw.b.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (i, &v) in row.iter().enumerate() {
            if v < 0 {
                return Err(Error::Parse(format!("negative entry at ({j},{i})")));
            }
            out.push(v as u64);
        }
        b.push(out);
    }
    Instance::new(n, m, b)
}

/// A set of job-machine edges. Edges are kept sorted by job, then machine.
///
/// The structure itself does not enforce feasibility; [`verify`] reports
/// violations instead of rejecting them, so that externally supplied
/// matchings can be audited.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new(mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    /// Edges as (job, machine) pairs, sorted by job then machine.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of matched edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Per-machine degrees. Edges pointing outside `[0, m)` are ignored.
    pub fn machine_degrees(&self, m: usize) -> Vec<usize> {
        let mut deg = vec![0usize; m];
        for &(_, i) in &self.edges {
            if i < m {
                deg[i] += 1;
            }
        }
        deg
    }

    /// Serializes to the canonical JSON matching format.
    pub fn to_json(&self) -> String {
        let raw = RawMatching {
            size: self.edges.len() as u64,
            edges: self
                .edges
                .iter()
                .map(|&(j, i)| vec![j as u64, i as u64])
                .collect(),
        };
        serde_json::to_string(&raw).expect("matching serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
struct RawMatching {
    size: u64,
    edges: Vec<Vec<u64>>,
}

/// Parses the JSON matching format `{"size": .., "edges": [[job, machine], ..]}`.
pub fn parse_matching(raw: &[u8]) -> Result<Matching> {
    let raw: RawMatching =
        serde_json::from_slice(raw).map_err(|e| Error::Parse(format!("matching JSON: {e}")))?;
    let mut edges = Vec::with_capacity(raw.edges.len());
    for (k, pair) in raw.edges.iter().enumerate() {
        if pair.len() != 2 {
            return Err(Error::Parse(format!(
                "edge {} has {} components, expected 2",
                k,
                pair.len()
            )));
        }
        let j = usize::try_from(pair[0])
            .map_err(|_| Error::Parse(format!("edge {k}: job index out of range")))?;
        let i = usize::try_from(pair[1])
            .map_err(|_| Error::Parse(format!("edge {k}: machine index out of range")))?;
        edges.push((j, i));
    }
    if raw.size as usize != edges.len() {
        return Err(Error::Parse(format!(
            "declared size {} does not match {} edges",
            raw.size,
            edges.len()
        )));
    }
    Ok(Matching::new(edges))
}

/// Kinds of feasibility violations a matching can exhibit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    JobMatchedTwice,
    IndexOutOfRange,
    ToleranceExceeded,
}

/// One violation: the kind, the offending edge, and the relevant degree
/// (the job's multiplicity for [`ViolationKind::JobMatchedTwice`], the
/// machine degree for [`ViolationKind::ToleranceExceeded`], 0 otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub edge: (usize, usize),
    pub degree: usize,
}

/// Outcome of verifying a matching against an instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks whether `mat` is a PD-matching of `inst`: every job matched at
/// most once, all indices in range, and every matched edge `(j, i)`
/// satisfying `degree(i) <= b(j, i)`.
pub fn verify(inst: &Instance, mat: &Matching) -> ValidityReport {
    let mut violations = Vec::new();

    let mut job_count = vec![0usize; inst.jobs()];
    for &(j, i) in mat.edges() {
        if j >= inst.jobs() || i >= inst.machines() {
            violations.push(Violation {
                kind: ViolationKind::IndexOutOfRange,
                edge: (j, i),
                degree: 0,
            });
        } else {
            job_count[j] += 1;
        }
    }
    for &(j, i) in mat.edges() {
        if j < inst.jobs() && i < inst.machines() && job_count[j] > 1 {
            violations.push(Violation {
                kind: ViolationKind::JobMatchedTwice,
                edge: (j, i),
                degree: job_count[j],
            });
        }
    }

    let degrees = mat.machine_degrees(inst.machines());
    for &(j, i) in mat.edges() {
        if j < inst.jobs() && i < inst.machines() {
            let d = degrees[i];
            if (d as u64) > inst.tolerance(j, i) {
                violations.push(Violation {
                    kind: ViolationKind::ToleranceExceeded,
                    edge: (j, i),
                    degree: d,
                });
            }
        }
    }

    ValidityReport {
        valid: violations.is_empty(),
        violations,
    }
}

fn require_valid(inst: &Instance, mat: &Matching) -> Result<()> {
    let report = verify(inst, mat);
    if report.valid {
        Ok(())
    } else {
        Err(Error::InvalidMatching(format!(
            "{} violation(s), first: {:?}",
            report.violations.len(),
            report.violations[0]
        )))
    }
}

/// True iff no single absent edge can be added to `mat` without breaking
/// feasibility. Rejects invalid matchings.
pub fn is_maximal(inst: &Instance, mat: &Matching) -> Result<bool> {
    require_valid(inst, mat)?;
    let degrees = mat.machine_degrees(inst.machines());

    // Smallest tolerance among the jobs currently on each machine; adding a
    // job to machine i raises its degree past b(j', i) for a resident j'
    // exactly when min_tol[i] < degree + 1.
    let mut min_tol = vec![u64::MAX; inst.machines()];
    let mut matched = vec![false; inst.jobs()];
    for &(j, i) in mat.edges() {
        matched[j] = true;
        min_tol[i] = min_tol[i].min(inst.tolerance(j, i));
    }

    for j in 0..inst.jobs() {
        if matched[j] {
            continue;
        }
        for i in 0..inst.machines() {
            let new_degree = degrees[i] as u64 + 1;
            if inst.tolerance(j, i) >= new_degree && min_tol[i] >= new_degree {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every unmatched job `j` satisfies `b(j, i) <= degree(i)` on
/// every machine `i`. Strictly stronger than [`is_maximal`].
pub fn is_strongly_maximal(inst: &Instance, mat: &Matching) -> Result<bool> {
    require_valid(inst, mat)?;
    let degrees = mat.machine_degrees(inst.machines());
    let mut matched = vec![false; inst.jobs()];
    for &(j, _) in mat.edges() {
        matched[j] = true;
    }
    for j in 0..inst.jobs() {
        if matched[j] {
            continue;
        }
        for i in 0..inst.machines() {
            if inst.tolerance(j, i) > degrees[i] as u64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
