use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use pdmatch::exact::Algorithm;
use pdmatch::generators as gen;
use pdmatch::oracle::{oracle_enumerate_assignments, DEFAULT_ORACLE_BUDGET};
use pdmatch::{classify, ClassReport, Instance};

use crate::commands::{exit_code_for, solve_by_name, SolveOptions, EXIT_BAD_INPUT, EXIT_OK};
use crate::FormatArg;

pub const CSV_HEADER: &str = "instance_id,n,m,class,algorithm,size,opt_size,ratio,elapsed_us";

#[derive(Debug, Serialize)]
struct BenchRecord {
    instance_id: String,
    n: usize,
    m: usize,
    class: String,
    algorithm: String,
    size: Option<usize>,
    opt_size: Option<usize>,
    ratio: Option<f64>,
    elapsed_us: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl BenchRecord {
    fn csv_line(&self) -> String {
        let opt = |v: &Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.instance_id,
            self.n,
            self.m,
            self.class,
            self.algorithm,
            opt(&self.size),
            opt(&self.opt_size),
            self.ratio.map(|r| format!("{r:.6}")).unwrap_or_default(),
            self.elapsed_us,
        )
    }
}

fn class_label(report: &ClassReport) -> String {
    let mut parts = Vec::new();
    if report.monotonizable.is_some() {
        parts.push("mono".to_string());
    }
    if report.udep_complete {
        parts.push("udep-complete".to_string());
    } else if report.is_udep {
        parts.push("udep".to_string());
    }
    if report.is_vdep {
        parts.push("vdep".to_string());
    }
    parts.push(format!("T{}", report.tolerance_set.len()));
    parts.push(format!("types{}", report.type_count));
    parts.join("+")
}

struct CorpusClause {
    family: String,
    count: usize,
    n: usize,
    m: usize,
    max_tol: u64,
    zero_prob: f64,
}

fn parse_corpus(spec: &str) -> Result<Vec<CorpusClause>, String> {
    let mut clauses = Vec::new();
    for raw in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let (family, params) = match raw.split_once(':') {
            Some((f, p)) => (f.trim().to_string(), p),
            None => (raw.trim().to_string(), ""),
        };
        let mut clause = CorpusClause {
            family,
            count: 100,
            n: 8,
            m: 3,
            max_tol: 4,
            zero_prob: 0.25,
        };
        for pair in params.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, found `{pair}`"))?;
            let value = value.trim();
            match key.trim() {
                "count" => clause.count = value.parse().map_err(|e| format!("count: {e}"))?,
                "n" => clause.n = value.parse().map_err(|e| format!("n: {e}"))?,
                "m" => clause.m = value.parse().map_err(|e| format!("m: {e}"))?,
                "max-tol" => clause.max_tol = value.parse().map_err(|e| format!("max-tol: {e}"))?,
                "zero-prob" => {
                    clause.zero_prob = value.parse().map_err(|e| format!("zero-prob: {e}"))?
                }
                other => return Err(format!("unknown corpus key `{other}`")),
            }
        }
        match clause.family.as_str() {
            "random" | "mono" | "udep" => {}
            other => return Err(format!("unknown corpus family `{other}`")),
        }
        clauses.push(clause);
    }
    Ok(clauses)
}

fn build_instance(clause: &CorpusClause, seed: u64) -> pdmatch::Result<Instance> {
    match clause.family.as_str() {
        "random" => gen::gen_random(clause.n, clause.m, clause.max_tol, clause.zero_prob, seed),
        "mono" => gen::gen_monotonous(clause.n, clause.m, clause.max_tol, seed),
        "udep" => gen::gen_udep(clause.n, clause.m, clause.max_tol, clause.zero_prob, seed),
        other => unreachable!("family `{other}` rejected during parsing"),
    }
}

pub fn run(
    corpus: &str,
    algorithms: &str,
    report_path: Option<&str>,
    seed: u64,
    budget: Option<u64>,
    format: FormatArg,
) -> u8 {
    let clauses = match parse_corpus(corpus) {
        Ok(clauses) => clauses,
        Err(e) => {
            eprintln!("error: corpus spec: {e}");
            return EXIT_BAD_INPUT;
        }
    };
    let algorithms: Vec<Algorithm> = match algorithms
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse())
        .collect()
    {
        Ok(list) => list,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_BAD_INPUT;
        }
    };

    let opts = SolveOptions {
        machine_order: None,
        tiebreak: pdmatch::TieBreak::LowIndexFirst,
        budget,
        max_types: 3,
    };
    let oracle_budget = budget.unwrap_or(DEFAULT_ORACLE_BUDGET);

    let mut records: Vec<BenchRecord> = Vec::new();
    let mut failures = 0usize;
    for clause in &clauses {
        for index in 0..clause.count {
            let instance_seed = seed.wrapping_add(index as u64);
            let inst = match build_instance(clause, instance_seed) {
                Ok(inst) => inst,
                Err(e) => {
                    eprintln!("error: generating {}-{index}: {e}", clause.family);
                    return exit_code_for(&e);
                }
            };
            let instance_id = format!("{}-{index:05}", clause.family);
            let class = class_label(&classify(&inst));
            let opt_size = oracle_enumerate_assignments(&inst, oracle_budget)
                .ok()
                .map(|m| m.len());

            for &algorithm in &algorithms {
                let start = Instant::now();
                let outcome = solve_by_name(&inst, algorithm, &opts);
                let elapsed_us = start.elapsed().as_micros();
                match outcome {
                    Ok((mat, _, _)) => {
                        let ratio = match opt_size {
                            Some(opt) if opt > 0 => Some(mat.len() as f64 / opt as f64),
                            _ => None,
                        };
                        records.push(BenchRecord {
                            instance_id: instance_id.clone(),
                            n: inst.jobs(),
                            m: inst.machines(),
                            class: class.clone(),
                            algorithm: algorithm.name().to_string(),
                            size: Some(mat.len()),
                            opt_size,
                            ratio,
                            elapsed_us,
                            error: None,
                        });
                    }
                    Err(e) => {
                        failures += 1;
                        records.push(BenchRecord {
                            instance_id: instance_id.clone(),
                            n: inst.jobs(),
                            m: inst.machines(),
                            class: class.clone(),
                            algorithm: algorithm.name().to_string(),
                            size: None,
                            opt_size,
                            ratio: None,
                            elapsed_us,
                            error: Some(e.to_string()),
                        });
                    }
                }
            }
        }
    }

    let csv: String = std::iter::once(CSV_HEADER.to_string())
        .chain(records.iter().map(BenchRecord::csv_line))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let json =
        serde_json::to_string_pretty(&records).expect("record serialization cannot fail") + "\n";

    if let Some(path) = report_path {
        if let Err(e) = fs::write(path, &csv) {
            eprintln!("error: {path}: {e}");
            return EXIT_BAD_INPUT;
        }
        let json_path = Path::new(path).with_extension("json");
        if let Err(e) = fs::write(&json_path, &json) {
            eprintln!("error: {}: {e}", json_path.display());
            return EXIT_BAD_INPUT;
        }
    } else {
        match format {
            FormatArg::Csv => print!("{csv}"),
            FormatArg::Json => print!("{json}"),
        }
    }

    // Per-algorithm ratio summary.
    let mut by_algorithm: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for record in &records {
        if let Some(ratio) = record.ratio {
            by_algorithm
                .entry(&record.algorithm)
                .or_default()
                .push(ratio);
        }
    }
    for (algorithm, ratios) in &by_algorithm {
        let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        println!(
            "summary algorithm={algorithm} records={} min_ratio={min:.6} mean_ratio={mean:.6}",
            ratios.len()
        );
    }
    if records.is_empty() {
        println!("summary empty corpus");
    }

    if !records.is_empty() && failures == records.len() {
        eprintln!("error: every solve failed");
        return EXIT_BAD_INPUT;
    }
    EXIT_OK
}
