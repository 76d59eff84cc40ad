use std::fmt::Write;
use std::path::Path;

use serde::Serialize;
use stabkit_core::codes::{
    css_construct, gv_bound, hamming_bound, singleton_bound, verify_knill_laflamme, write_code,
    BoundCheck, ClassicalLinearCode, PauliLeaderTable,
};
use stabkit_core::pauli::paulis_of_weight;
use stabkit_core::{BitMatrix, PauliOperator, StabilizerCode};

use super::{load_code, read_text};
use crate::cli::{CodeCommand, CssCommand, Format};
use crate::config::RunConfig;
use crate::emit::{to_csv, to_json};
use crate::error::CliError;
use crate::Output;

fn require_valid(code: &StabilizerCode) -> Result<(), CliError> {
    let v = code.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(CliError::Domain(format!(
            "{} is not a valid stabilizer code ({}); run `code check` for details",
            code.name(),
            v[0]
        )))
    }
}

#[derive(Serialize)]
struct KlOutput {
    code: String,
    weight: usize,
    errors: usize,
    is_code: bool,
    is_degenerate: bool,
    max_violation: f64,
    rank: usize,
}

#[derive(Serialize)]
struct BoundRow {
    n: u64,
    k: u64,
    d: u64,
    hamming: &'static str,
    gv: &'static str,
    singleton: &'static str,
}

fn verdict(b: &BoundCheck) -> &'static str {
    match (b.holds, b.is_tight()) {
        (true, true) => "tight",
        (true, false) => "holds",
        (false, _) => "fails",
    }
}

/// Every `[[n, k, d]]` with `1 ≤ n ≤ max_n`, `k ≤ min(max_k, n)` and
/// `1 ≤ d ≤ n`; the Hamming column uses `t = ⌊(d-1)/2⌋`.
fn bound_rows(max_n: u64, max_k: u64) -> Result<Vec<BoundRow>, CliError> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for k in 0..=max_k.min(n) {
            for d in 1..=n {
                rows.push(BoundRow {
                    n,
                    k,
                    d,
                    hamming: verdict(&hamming_bound(n, k, (d - 1) / 2)?),
                    gv: verdict(&gv_bound(n, k, d)?),
                    singleton: verdict(&singleton_bound(n, k, d)?),
                });
            }
        }
    }
    Ok(rows)
}

pub(super) fn run(cmd: &CodeCommand, cfg: &RunConfig) -> Result<Output, CliError> {
    match cmd {
        CodeCommand::Distance { source } => {
            let code = load_code(source)?;
            require_valid(&code)?;
            Ok(Output::ok(format!("{}\n", code.distance()?)))
        }
        CodeCommand::Params { source } => {
            let code = load_code(source)?;
            require_valid(&code)?;
            Ok(Output::ok(format!(
                "[[{},{},{}]]\n",
                code.n(),
                code.k(),
                code.distance()?
            )))
        }
        CodeCommand::Check { source } => {
            let code = load_code(source)?;
            let violations = code.validate();
            if violations.is_empty() {
                return Ok(Output::ok(format!(
                    "ok: {} generators on {} qubits, k = {}\n",
                    code.num_generators(),
                    code.n(),
                    code.k()
                )));
            }
            let mut body = String::new();
            for v in &violations {
                let _ = writeln!(body, "violation: {v}");
            }
            Ok(Output {
                body,
                failure: Some(format!(
                    "{} has {} violation(s)",
                    code.name(),
                    violations.len()
                )),
            })
        }
        CodeCommand::Syndrome { source, error } => {
            let code = load_code(source)?;
            require_valid(&code)?;
            let e: PauliOperator = error
                .parse()
                .map_err(|err| CliError::Usage(format!("bad --error: {err}")))?;
            let s = code.syndrome(&e)?;
            let table = PauliLeaderTable::new(&code)?;
            let correction = table.leader(&s).clone();
            let residual = e.multiply(&correction)?;
            let class = code.logical_class(&residual)?;
            Ok(Output::ok(format!(
                "syndrome {s}\ncorrection {correction}\nlogical {}\n",
                if class.is_identity() {
                    "identity"
                } else {
                    "error"
                }
            )))
        }
        CodeCommand::Show { source } => Ok(Output::ok(write_code(&load_code(source)?))),
        CodeCommand::Kl { source, weight } => {
            let code = load_code(source)?;
            require_valid(&code)?;
            let errors: Vec<PauliOperator> = (0..=*weight)
                .flat_map(|w| paulis_of_weight(code.n(), w))
                .collect();
            let r = verify_knill_laflamme(&code, &errors, cfg.dense_limit)?;
            let out = KlOutput {
                code: code.name().into(),
                weight: *weight,
                errors: errors.len(),
                is_code: r.is_code,
                is_degenerate: r.is_degenerate,
                max_violation: r.max_violation,
                rank: r.rank,
            };
            Ok(Output {
                body: to_json(&out)?,
                failure: (!r.is_code).then(|| {
                    format!(
                        "{} does not correct all errors of weight {weight}",
                        code.name()
                    )
                }),
            })
        }
        CodeCommand::Bounds { max_n, max_k } => {
            let rows = bound_rows(*max_n, *max_k)?;
            Ok(Output::ok(match cfg.format {
                Some(Format::Json) => to_json(&rows)?,
                _ => to_csv(&rows)?,
            }))
        }
    }
}

fn load_classical(source: &str) -> Result<ClassicalLinearCode, CliError> {
    if source == "hamming" {
        return Ok(ClassicalLinearCode::hamming_7_4());
    }
    let h = BitMatrix::parse(&read_text(Path::new(source))?)?;
    Ok(ClassicalLinearCode::from_parity_check(h))
}

pub(super) fn run_css(cmd: &CssCommand) -> Result<Output, CliError> {
    match cmd {
        CssCommand::Build { c1, c2, name } => {
            let mut code = css_construct(&load_classical(c1)?, &load_classical(c2)?)?;
            code.set_name(name.as_str());
            Ok(Output::ok(write_code(&code)))
        }
    }
}
