//! Text format for stabilizer codes.
//!
//! ```text
//! n=5 k=1
//! XZZXI
//! IXZZX
//! XIXZZ
//! ZXIXZ
//! LX:
//! XXXXX
//! LZ:
//! ZZZZZ
//! ```
//!
//! `#` starts a comment. The `LX:`/`LZ:` sections are optional; without
//! them logical operators are computed when the generators are valid.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::StabilizerCode;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

enum Section {
    Generators,
    LogicalX,
    LogicalZ,
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let mut n = None;
    let mut k = None;
    for tok in line.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| Error::Parse(alloc::format!("bad header token {tok:?}")))?;
        let v: usize = value
            .parse()
            .map_err(|_| Error::Parse(alloc::format!("bad integer in {tok:?}")))?;
        match key {
            "n" => n = Some(v),
            "k" => k = Some(v),
            other => return Err(Error::Parse(alloc::format!("unknown header key {other:?}"))),
        }
    }
    match (n, k) {
        (Some(n), Some(k)) => Ok((n, k)),
        _ => Err(Error::Parse("header must be `n=<int> k=<int>`".into())),
    }
}

/// Parses a code file. The result is not validated beyond lengths and the
/// declared `k` (checked only when the generators are themselves valid).
pub fn parse_code(text: &str, name: &str) -> Result<StabilizerCode> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty code file".into()))?;
    let (n, k) = parse_header(header)?;
    let mut section = Section::Generators;
    let mut gens = Vec::new();
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    let mut saw_logicals = false;
    for line in lines {
        match line {
            "LX:" => {
                section = Section::LogicalX;
                saw_logicals = true;
                continue;
            }
            "LZ:" => {
                section = Section::LogicalZ;
                saw_logicals = true;
                continue;
            }
            _ => {}
        }
        let p: PauliOperator = line.parse()?;
        if p.num_qubits() != n {
            return Err(Error::Parse(alloc::format!(
                "operator {line:?} has {} qubits, header says {n}",
                p.num_qubits()
            )));
        }
        match section {
            Section::Generators => gens.push(p),
            Section::LogicalX => lx.push(p),
            Section::LogicalZ => lz.push(p),
        }
    }
    let mut code = StabilizerCode::new_unchecked(name, n, gens, lx, lz);
    if code.validate_generators().is_empty() {
        if code.k() != k {
            return Err(Error::Parse(alloc::format!(
                "header declares k={k} but the generators give k={}",
                code.k()
            )));
        }
        if !saw_logicals {
            let (x, z) = code.logical_operators();
            code = StabilizerCode::new_unchecked(name, n, code.generators().to_vec(), x, z);
        }
    }
    Ok(code)
}

fn label(p: &PauliOperator) -> String {
    let s = alloc::format!("{p}");
    match s.strip_prefix('+') {
        Some(rest) if !rest.starts_with('i') => String::from(rest),
        _ => s,
    }
}

/// Writes a code in the format read by [`parse_code`], including the
/// logical sections.
pub fn write_code(code: &StabilizerCode) -> String {
    let mut out = String::new();
    let k = code.n() - code.symplectic_matrix().rank();
    let _ = writeln!(out, "n={} k={}", code.n(), k);
    for g in code.generators() {
        let _ = writeln!(out, "{}", label(g));
    }
    if !code.logical_x().is_empty() || !code.logical_z().is_empty() {
        out.push_str("LX:\n");
        for l in code.logical_x() {
            let _ = writeln!(out, "{}", label(l));
        }
        out.push_str("LZ:\n");
        for l in code.logical_z() {
            let _ = writeln!(out, "{}", label(l));
        }
    }
    out
}
