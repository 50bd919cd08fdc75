use std::fs;

use pdmatch::exact::{
    solve_const_m_budget, solve_mono_general_greedy, solve_mono_three_tol, solve_one_two,
    solve_t_types, solve_two_types, solve_udep_complete, solve_udep_mono, solve_uniform_tolerance,
    solve_vdep, solve_zero_k, Algorithm, DispatchConfig, DEFAULT_CONST_M_BUDGET,
};
use pdmatch::generators as gen;
use pdmatch::oracle::{oracle_enumerate_assignments, DEFAULT_ORACLE_BUDGET};
use pdmatch::{
    classify as classify_instance, dispatch_with, greedy_global, greedy_strongly_maximal,
    is_maximal, is_strongly_maximal, parse_instance, parse_matching, verify as verify_matching,
    Error, GreedyConfig, Instance, Matching, TieBreak,
};

use crate::TieBreakArg;

pub const EXIT_OK: u8 = 0;
pub const EXIT_BAD_INPUT: u8 = 1;
pub const EXIT_CLASS_MISMATCH: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ClassMismatch { .. } => EXIT_CLASS_MISMATCH,
        Error::BudgetExceeded(_) => EXIT_BUDGET,
        _ => EXIT_BAD_INPUT,
    }
}

fn fail(err: impl std::fmt::Display, code: u8) -> u8 {
    eprintln!("error: {err}");
    code
}

fn read_instance(path: &str) -> Result<Instance, u8> {
    let raw = fs::read(path).map_err(|e| fail(format_args!("{path}: {e}"), EXIT_BAD_INPUT))?;
    parse_instance(&raw).map_err(|e| fail(e, EXIT_BAD_INPUT))
}

fn write_or_print(output: Option<&str>, content: &str) -> Result<(), u8> {
    match output {
        Some(path) => {
            fs::write(path, content).map_err(|e| fail(format_args!("{path}: {e}"), EXIT_BAD_INPUT))
        }
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

pub struct SolveOptions {
    pub machine_order: Option<Vec<usize>>,
    pub tiebreak: TieBreak,
    pub budget: Option<u64>,
    pub max_types: usize,
}

/// Runs a named algorithm; the flag says whether the path certifies
/// optimality.
pub fn solve_by_name(
    inst: &Instance,
    algorithm: Algorithm,
    opts: &SolveOptions,
) -> pdmatch::Result<(Matching, bool, Algorithm)> {
    let mat = match algorithm {
        Algorithm::Greedy => {
            let cfg = GreedyConfig {
                machine_order: opts.machine_order.clone(),
                job_tiebreak: opts.tiebreak,
            };
            return Ok((greedy_strongly_maximal(inst, &cfg)?, false, algorithm));
        }
        Algorithm::GreedyGlobal => {
            return Ok((greedy_global(inst, opts.tiebreak), false, algorithm))
        }
        Algorithm::MonoGreedy => return Ok((solve_mono_general_greedy(inst)?, false, algorithm)),
        Algorithm::Vdep => solve_vdep(inst)?,
        Algorithm::UdepComplete => solve_udep_complete(inst)?,
        Algorithm::UdepMono => solve_udep_mono(inst)?,
        Algorithm::ConstM => {
            solve_const_m_budget(inst, opts.budget.unwrap_or(DEFAULT_CONST_M_BUDGET))?
        }
        Algorithm::Uniform => solve_uniform_tolerance(inst)?,
        Algorithm::ZeroK => solve_zero_k(inst)?,
        Algorithm::OneTwo => solve_one_two(inst)?,
        Algorithm::MonoThreeTol => solve_mono_three_tol(inst)?,
        Algorithm::TTypes => solve_t_types(inst, opts.max_types)?,
        Algorithm::TwoTypes => solve_two_types(inst)?,
        Algorithm::Oracle => {
            oracle_enumerate_assignments(inst, opts.budget.unwrap_or(DEFAULT_ORACLE_BUDGET))?
        }
        Algorithm::Auto => {
            let mut cfg = DispatchConfig::default();
            if let Some(budget) = opts.budget {
                cfg.const_m_budget = budget;
                cfg.oracle_budget = budget;
                cfg.work_budget = budget;
            }
            let report = dispatch_with(inst, &cfg);
            return Ok((report.matching, report.optimal, report.algorithm));
        }
    };
    Ok((mat, true, algorithm))
}

fn parse_machine_order(raw: &str) -> Result<Vec<usize>, u8> {
    raw.split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| fail(format_args!("machine order: {e}"), EXIT_BAD_INPUT))
}

#[allow(clippy::too_many_arguments)]
pub fn solve(
    input: &str,
    algorithm: &str,
    output: Option<&str>,
    machine_order: Option<&str>,
    tiebreak: TieBreakArg,
    budget: Option<u64>,
    max_types: usize,
) -> u8 {
    let inst = match read_instance(input) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let algorithm: Algorithm = match algorithm.parse() {
        Ok(a) => a,
        Err(e) => return fail(e, EXIT_BAD_INPUT),
    };
    let opts = SolveOptions {
        machine_order: match machine_order {
            Some(raw) => match parse_machine_order(raw) {
                Ok(order) => Some(order),
                Err(code) => return code,
            },
            None => None,
        },
        tiebreak: match tiebreak {
            TieBreakArg::Low => TieBreak::LowIndexFirst,
            TieBreakArg::High => TieBreak::HighIndexFirst,
        },
        budget,
        max_types,
    };

    match solve_by_name(&inst, algorithm, &opts) {
        Ok((mat, optimal, used)) => {
            println!("size={} optimal={} algorithm={}", mat.len(), optimal, used);
            match output {
                Some(path) => match fs::write(path, mat.to_json()) {
                    Ok(()) => EXIT_OK,
                    Err(e) => fail(format_args!("{path}: {e}"), EXIT_BAD_INPUT),
                },
                None => {
                    println!("{}", mat.to_json());
                    EXIT_OK
                }
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            fail(e, code)
        }
    }
}

pub fn verify(input: &str, matching: &str) -> u8 {
    let inst = match read_instance(input) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let raw = match fs::read(matching) {
        Ok(raw) => raw,
        Err(e) => return fail(format_args!("{matching}: {e}"), EXIT_BAD_INPUT),
    };
    let mat = match parse_matching(&raw) {
        Ok(mat) => mat,
        Err(e) => return fail(e, EXIT_BAD_INPUT),
    };

    let report = verify_matching(&inst, &mat);
    let maximal = report.valid && is_maximal(&inst, &mat).unwrap_or(false);
    let strongly = report.valid && is_strongly_maximal(&inst, &mat).unwrap_or(false);
    println!(
        "{}",
        serde_json::json!({
            "valid": report.valid,
            "violations": report.violations,
            "maximal": maximal,
            "strongly_maximal": strongly,
            "size": mat.len(),
        })
    );
    if report.valid {
        EXIT_OK
    } else {
        EXIT_BAD_INPUT
    }
}

pub fn classify(input: &str, output: Option<&str>) -> u8 {
    let inst = match read_instance(input) {
        Ok(inst) => inst,
        Err(code) => return code,
    };
    let report = classify_instance(&inst);
    let rendered = serde_json::to_string(&report).expect("class report serialization cannot fail");
    match write_or_print(output, &rendered) {
        Ok(()) => EXIT_OK,
        Err(code) => code,
    }
}

pub struct GenerateArgs {
    pub family: String,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub max_tol: u64,
    pub zero_prob: f64,
    pub a: Option<String>,
    pub b: Option<u64>,
    pub k: Option<usize>,
    pub triples: Option<String>,
    pub tuples: Option<String>,
    pub k1: Option<u64>,
    pub k2: Option<u64>,
    pub name: Option<String>,
    pub param: Option<usize>,
    pub output: Option<String>,
    pub metadata: Option<String>,
}

fn parse_u64_list(raw: &str) -> pdmatch::Result<Vec<u64>> {
    raw.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| Error::InvalidParam(format!("`{part}`: {e}")))
        })
        .collect()
}

fn parse_tuple_list(raw: &str) -> pdmatch::Result<Vec<Vec<usize>>> {
    raw.split(';')
        .map(|group| {
            group
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::InvalidParam(format!("`{part}`: {e}")))
                })
                .collect()
        })
        .collect()
}

fn required<T>(value: Option<T>, flag: &str) -> pdmatch::Result<T> {
    value.ok_or_else(|| Error::InvalidParam(format!("--{flag} is required for this family")))
}

fn generate_inner(args: &GenerateArgs) -> pdmatch::Result<(Instance, Option<String>)> {
    match args.family.as_str() {
        "random" => Ok((
            gen::gen_random(args.n, args.m, args.max_tol, args.zero_prob, args.seed)?,
            None,
        )),
        "mono" => Ok((
            gen::gen_monotonous(args.n, args.m, args.max_tol, args.seed)?,
            None,
        )),
        "udep" => Ok((
            gen::gen_udep(args.n, args.m, args.max_tol, args.zero_prob, args.seed)?,
            None,
        )),
        "3partition" => {
            let values = parse_u64_list(required(args.a.as_deref(), "a")?)?;
            let target = required(args.b, "b")?;
            let k = required(args.k, "k")?;
            let out = gen::gen_3partition(&values, target, k)?;
            let metadata = serde_json::json!({
                "job_level": out.job_level,
                "machine_value": out.machine_value,
            });
            Ok((out.instance, Some(metadata.to_string())))
        }
        "3dm" => {
            let k = required(args.k, "k")?;
            let triples: Vec<(usize, usize, usize)> =
                parse_tuple_list(required(args.triples.as_deref(), "triples")?)?
                    .into_iter()
                    .map(|t| {
                        if t.len() == 3 {
                            Ok((t[0], t[1], t[2]))
                        } else {
                            Err(Error::InvalidParam(format!("triple {t:?} has arity 3")))
                        }
                    })
                    .collect::<pdmatch::Result<_>>()?;
            let ts = gen::TripleSystem::new(k, triples)?;
            let out = gen::gen_3dm(&ts)?;
            let roles: Vec<String> = out
                .roles
                .iter()
                .map(|r| match r {
                    gen::ThreeDmRole::ElementY(e) => format!("element-y:{e}"),
                    gen::ThreeDmRole::ElementZ(e) => format!("element-z:{e}"),
                    gen::ThreeDmRole::Dummy(e) => format!("dummy-x:{e}"),
                })
                .collect();
            let metadata = serde_json::json!({
                "triples": out.triples,
                "roles": roles,
                "k": out.k,
            });
            Ok((out.instance, Some(metadata.to_string())))
        }
        "ddm" => {
            let k = required(args.k, "k")?;
            let k1 = required(args.k1, "k1")?;
            let k2 = required(args.k2, "k2")?;
            let tuples = parse_tuple_list(required(args.tuples.as_deref(), "tuples")?)?;
            let ts = gen::TupleSystem::new(k2 as usize, k, tuples)?;
            let out = gen::gen_ddm(&ts, k1, k2)?;
            let metadata = serde_json::json!({
                "tuples": out.tuples,
                "roles": out.roles,
            });
            Ok((out.instance, Some(metadata.to_string())))
        }
        "fixture" => {
            let name = required(args.name.as_deref(), "name")?;
            let fixture = match name {
                "ir" => gen::Fixture::Ir,
                "tight" => gen::Fixture::Tight,
                "monobad" => gen::Fixture::Monobad,
                "3part-example" => gen::Fixture::ThreePartExample,
                other => return Err(Error::InvalidParam(format!("unknown fixture `{other}`"))),
            };
            Ok((gen::fixtures(fixture, args.param.unwrap_or(0))?, None))
        }
        other => Err(Error::InvalidParam(format!(
            "unknown generator family `{other}`"
        ))),
    }
}

pub fn generate(args: GenerateArgs) -> u8 {
    match generate_inner(&args) {
        Ok((inst, metadata)) => {
            if let (Some(path), Some(content)) = (&args.metadata, &metadata) {
                if let Err(e) = fs::write(path, content) {
                    return fail(format_args!("{path}: {e}"), EXIT_BAD_INPUT);
                }
            }
            match write_or_print(args.output.as_deref(), &inst.to_json()) {
                Ok(()) => EXIT_OK,
                Err(code) => code,
            }
        }
        Err(e) => {
            let code = exit_code_for(&e);
            fail(e, code)
        }
    }
}
