use serde::Serialize;
use serde_json::Value;
use stabkit_core::codes::parse_code;
use stabkit_core::exrec::{
    build_protocol, cnot_exrec, count_failures, fault_set_bound, level_reduction_bound,
    levels_needed, log_grid, malignant_pairs, sample_circuit, threshold_from_count, GadgetSet,
    MalignantReport, MonteCarloReport, NoiseModel, Protocol, ProtocolOptions,
};
use stabkit_core::ft::{
    broken_steane_ec, check_property_with, check_support_claim, knill_ec, knill_measure,
    logical_projection, measure_logical, pi8_teleport_check, prep_logical, shor_ec, steane_ec,
    transversal_gate, Basis, CheckOptions, CircuitBuilder, EcKind, Gadget, GadgetCheckReport,
    LogicalGate, PrepStrategy, Property, SupportClaimReport,
};
use stabkit_core::StabilizerCode;

use super::{bundled_code, read_text};
use crate::cli::{ExRecArgs, Format, FtCommand, GadgetArgs, NoiseArg, PrepArg};
use crate::config::RunConfig;
use crate::emit::{threshold_csv, to_json};
use crate::error::CliError;
use crate::parallel::{shards, split_range};
use crate::Output;

/// Tolerance on teleportation fidelities and branch probabilities.
const TELEPORT_TOLERANCE: f64 = 1e-9;

fn code_arg(name: &str) -> Result<StabilizerCode, CliError> {
    let path = std::path::Path::new(name);
    if path.is_file() {
        let stem = path
            .file_stem()
            .map_or_else(|| "code".into(), |s| s.to_string_lossy().into_owned());
        return Ok(parse_code(&read_text(path)?, &stem)?);
    }
    bundled_code(name)
}

fn strategy(p: PrepArg) -> PrepStrategy {
    match p {
        PrepArg::Verify => PrepStrategy::VerifyDiscard,
        PrepArg::Project => PrepStrategy::ShorProject,
    }
}

/// The gadget named by `--gadget` on the code named by `--code`.
pub fn resolve_gadget(args: &GadgetArgs) -> Result<Gadget, CliError> {
    let code = code_arg(&args.code)?;
    let name = args.gadget.to_ascii_lowercase();
    let name = name.strip_prefix("transversal-").unwrap_or(&name);
    let basis = |s: &str| match s {
        "z" | "0" => Ok(Basis::Z),
        "x" | "+" => Ok(Basis::X),
        _ => Err(CliError::Usage(format!("unknown basis {s:?}; use z or x"))),
    };
    let gate = match name {
        "x" => Some(LogicalGate::X),
        "z" => Some(LogicalGate::Z),
        "h" => Some(LogicalGate::H),
        "p" => Some(LogicalGate::P),
        "cnot" => Some(LogicalGate::Cnot),
        _ => None,
    };
    if let Some(g) = gate {
        return Ok(transversal_gate(&code, g)?);
    }
    let g = match name {
        "steane-ec" => steane_ec(&code)?,
        "broken-steane-ec" => broken_steane_ec(&code)?,
        "knill-ec" => knill_ec(&code)?,
        "knill-measure" => knill_measure(&code)?,
        "shor-ec" => {
            let rounds = match args.rounds {
                Some(r) => r,
                None => 2 * ((code.distance()?.max(1) - 1) / 2) + 1,
            };
            shor_ec(&code, rounds)?
        }
        other => match other.split_once('-') {
            Some(("measure", b)) => measure_logical(&code, basis(b)?)?,
            Some(("prep", b)) => prep_logical(&code, basis(b)?, strategy(args.prep))?,
            Some(("projection", b)) => logical_projection(&code, basis(b)?)?,
            _ => return Err(CliError::Usage(format!("unknown gadget {other:?}"))),
        },
    };
    Ok(g)
}

/// The protocol named by `--exrec`.
pub fn build_exrec(args: &ExRecArgs) -> Result<Protocol, CliError> {
    let code = code_arg(&args.code)?;
    let gadgets = GadgetSet {
        ec: EcKind::Steane,
        prep: strategy(args.prep),
    };
    Ok(match args.exrec.as_str() {
        "cnot" => cnot_exrec(&code, gadgets)?,
        "sample" => build_protocol(
            &sample_circuit(),
            &code,
            gadgets,
            ProtocolOptions::default(),
        )?,
        "prep-measure" => {
            let mut b = CircuitBuilder::new();
            let q = b.add_qubits(1)[0];
            b.prep(q, Basis::Z);
            b.measure(q, Basis::Z);
            build_protocol(&b.finish(), &code, gadgets, ProtocolOptions::default())?
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown exrec {other:?}; use cnot, sample or prep-measure"
            )))
        }
    })
}

fn parse_float(s: &str, what: &str) -> Result<f64, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad {what} {s:?}")))
}

/// `lo:hi:logN`, `lo:hi:linN`, or `p1,p2,...`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let grid = match text.split(':').collect::<Vec<_>>()[..] {
        [lo, hi, shape] => {
            let (lo, hi) = (parse_float(lo, "grid end")?, parse_float(hi, "grid end")?);
            let count = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| CliError::Usage(format!("bad grid size in {text:?}")))
            };
            if let Some(n) = shape.strip_prefix("log") {
                log_grid(lo, hi, count(n)?).map_err(|e| CliError::Usage(e.to_string()))?
            } else if let Some(n) = shape.strip_prefix("lin") {
                let n = count(n)?;
                if n == 1 {
                    vec![lo]
                } else {
                    (0..n)
                        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                        .collect()
                }
            } else {
                return Err(CliError::Usage(format!(
                    "grid shape must be logN or linN, got {shape:?}"
                )));
            }
        }
        [_] => text
            .split(',')
            .map(|s| parse_float(s, "grid point"))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(CliError::Usage(format!("bad grid {text:?}"))),
    };
    if grid.iter().any(|&p| !(p > 0.0 && p <= 1.0)) {
        return Err(CliError::Usage("grid points must lie in (0, 1]".into()));
    }
    Ok(grid)
}

/// Trial counts such as `1000` or `1e6`.
pub fn parse_trials(s: &str) -> Result<u64, CliError> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x = parse_float(s, "trial count")?;
    if x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64 {
        Ok(x as u64)
    } else {
        Err(CliError::Usage(format!(
            "trial count {s:?} is not a whole number"
        )))
    }
}

/// Failure counts at every grid point, with trials split across `jobs`
/// threads. Each trial has its own random stream, so the result does not
/// depend on `jobs`.
pub fn sweep(
    protocol: &Protocol,
    noise: &NoiseModel,
    grid: &[f64],
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<Vec<MonteCarloReport>, CliError> {
    let ranges = split_range(trials, jobs);
    let parts = shards(jobs, |j| {
        count_failures(protocol, noise, grid, seed, ranges[j].clone())
    });
    let mut totals = vec![0u64; grid.len()];
    for part in parts {
        for (t, f) in totals.iter_mut().zip(part?) {
            *t += f;
        }
    }
    Ok(grid
        .iter()
        .zip(totals)
        .map(|(&p, f)| MonteCarloReport::new(p, trials, f, seed))
        .collect())
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct CountOutput {
    exrec: String,
    locations: usize,
    t: usize,
    A: Value,
    p_T_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    malignant_pairs: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_assignments: Option<u64>,
    /// Leading coefficient of the depolarizing failure rate.
    #[serde(skip_serializing_if = "Option::is_none")]
    malignant_weight: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_T_malignant_bound: Option<f64>,
}

#[derive(Serialize)]
struct LevelsOutput {
    levels: u32,
    threshold: f64,
    rates: Vec<f64>,
}

pub(super) fn run(cmd: &FtCommand, cfg: &RunConfig) -> Result<Output, CliError> {
    match cmd {
        FtCommand::Check {
            gadget,
            property,
            t,
        } => {
            let g = resolve_gadget(gadget)?;
            let mut opts = CheckOptions::new(*t);
            opts.cap = cfg.enumeration_cap;
            if property.eq_ignore_ascii_case("support") {
                let reports = shards(cfg.jobs, |s| {
                    check_support_claim(&g, opts.shard(s, cfg.jobs))
                });
                let mut merged: Option<SupportClaimReport> = None;
                for r in reports {
                    let r = r?;
                    merged = Some(match merged {
                        None => r,
                        Some(m) => m.merge(r),
                    });
                }
                let r = merged.expect("at least one shard");
                return Ok(Output {
                    body: to_json(&r)?,
                    failure: (!r.passed())
                        .then(|| format!("{}: {} support violation(s)", r.gadget, r.violations)),
                });
            }
            let prop = Property::parse(property).ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown property {property:?}; use prepa, prepb, gatea, gateb, meas, eca, ecb or support"
                ))
            })?;
            let reports = shards(cfg.jobs, |s| {
                check_property_with(&g, prop, opts.shard(s, cfg.jobs))
            });
            let mut merged: Option<GadgetCheckReport> = None;
            for r in reports {
                let r = r?;
                merged = Some(match merged {
                    None => r,
                    Some(m) => m.merge(r),
                });
            }
            let r = merged.expect("at least one shard");
            Ok(Output {
                body: to_json(&r)?,
                failure: (!r.passed).then(|| {
                    format!(
                        "{} violates {} in {} of {} cases",
                        r.gadget,
                        r.property.name(),
                        r.failures,
                        r.cases
                    )
                }),
            })
        }
        FtCommand::BuildGadget { gadget } => {
            Ok(Output::ok(resolve_gadget(gadget)?.circuit.to_text()))
        }
        FtCommand::Threshold {
            exrec,
            noise,
            p_grid,
            trials,
        } => {
            let protocol = build_exrec(exrec)?;
            let grid = parse_grid(p_grid)?;
            let trials = parse_trials(trials)?;
            let p_max = grid.iter().copied().fold(0.0, f64::max);
            let model = match noise {
                NoiseArg::Depolarizing => NoiseModel::depolarizing(p_max)?,
            };
            let reports = sweep(&protocol, &model, &grid, trials, cfg.seed, cfg.jobs)?;
            Ok(Output::ok(match cfg.format {
                Some(Format::Json) => to_json(&reports)?,
                _ => threshold_csv(&reports)?,
            }))
        }
        FtCommand::Count {
            exrec,
            t,
            malignant,
        } => {
            let protocol = build_exrec(exrec)?;
            let a = fault_set_bound(&protocol, *t);
            let p_t = threshold_from_count(&a, *t)?;
            let a_text = a.to_string();
            let mut out = CountOutput {
                exrec: exrec.exrec.clone(),
                locations: protocol.num_locations(),
                t: *t,
                A: a_text
                    .parse::<u64>()
                    .map_or(Value::String(a_text), Value::from),
                p_T_bound: p_t,
                malignant_pairs: None,
                failing_assignments: None,
                malignant_weight: None,
                p_T_malignant_bound: None,
            };
            if *malignant {
                if *t != 1 {
                    return Err(CliError::Usage(
                        "--malignant enumerates fault pairs and needs --t 1".into(),
                    ));
                }
                let reports = shards(cfg.jobs, |s| malignant_pairs(&protocol, s, cfg.jobs));
                let mut m = MalignantReport::default();
                for r in reports {
                    m = m.merge(&r?);
                }
                out.malignant_pairs = Some(m.malignant_pairs);
                out.failing_assignments = Some(m.failing_assignments);
                out.malignant_weight = Some(m.weighted);
                out.p_T_malignant_bound =
                    (m.malignant_pairs > 0).then(|| 1.0 / m.malignant_pairs as f64);
            }
            Ok(Output::ok(to_json(&out)?))
        }
        FtCommand::Teleport => {
            let r = pi8_teleport_check(cfg.dense_limit)?;
            let ok = r.passed(TELEPORT_TOLERANCE);
            Ok(Output {
                body: to_json(&r)?,
                failure: (!ok).then(|| "teleported pi/8 gate does not match".to_string()),
            })
        }
        FtCommand::Levels {
            p,
            threshold,
            target,
            t,
        } => {
            let levels = levels_needed(*target, *p, *threshold, *t)?;
            let a = threshold.powi(-(*t as i32));
            let bound = level_reduction_bound(*p, a, *t, levels as usize)?;
            Ok(Output::ok(to_json(&LevelsOutput {
                levels,
                threshold: bound.threshold,
                rates: bound.rates,
            })?))
        }
    }
}
