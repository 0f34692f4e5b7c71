//! Loading colorings by name or from files, and the on-disk assignment and
//! rainbow-coloring formats.
//!
//! A multiplicative coloring serializes as JSON: a default rule plus
//! explicit `[prime, sign]` overrides. Sign-table files use EDPSIGNS v1.
//! Rainbow colorings are plain `n color` lines.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use edp_core::rainbow::KColoring;
use edp_core::signs::{Coloring, DefaultRule, PrimeAssignment, Sign};

use crate::signs_file;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssignmentDto {
    pub default_rule: String,
    pub overrides: Vec<(u64, i64)>,
}

impl AssignmentDto {
    pub fn from_core(a: &PrimeAssignment) -> Self {
        AssignmentDto {
            default_rule: rule_name(a.default_rule()).to_owned(),
            overrides: a.overrides().map(|(p, s)| (p, s.value())).collect(),
        }
    }

    pub fn to_core(&self) -> Result<PrimeAssignment, String> {
        let rule = parse_rule(&self.default_rule)?;
        let mut a = PrimeAssignment::new(rule);
        for &(p, v) in &self.overrides {
            let sign = Sign::from_value(v).ok_or_else(|| format!("bad sign {v} for {p}"))?;
            a.set_override(p, sign).map_err(|e| e.to_string())?;
        }
        Ok(a)
    }
}

pub fn rule_name(rule: DefaultRule) -> &'static str {
    match rule {
        DefaultRule::AllMinus => "all_minus",
        DefaultRule::ResidueMod3 => "residue_mod3",
        DefaultRule::ConstantPlus => "constant_plus",
    }
}

fn parse_rule(name: &str) -> Result<DefaultRule, String> {
    match name {
        "all_minus" => Ok(DefaultRule::AllMinus),
        "residue_mod3" => Ok(DefaultRule::ResidueMod3),
        "constant_plus" => Ok(DefaultRule::ConstantPlus),
        other => Err(format!("unknown default rule {other:?}")),
    }
}

/// Resolves a `--coloring` argument: a builtin name, an EDPSIGNS file, or an
/// assignment JSON file.
pub fn load_coloring(spec: &str) -> Result<Coloring, String> {
    match spec {
        "liouville" => return Ok(Coloring::liouville()),
        "bcc" => return Ok(Coloring::bcc()),
        "alternating" => return Ok(Coloring::Alternating),
        _ => {}
    }
    let path = Path::new(spec);
    let mut file = File::open(path).map_err(|e| format!("cannot open {spec}: {e}"))?;
    let mut magic = [0u8; 8];
    let got = file.read(&mut magic).map_err(|e| format!("cannot read {spec}: {e}"))?;
    if &magic[..got.min(8)] == b"EDPSIGNS" {
        let file = File::open(path).map_err(|e| e.to_string())?;
        let seq = signs_file::read_signs(BufReader::new(file))
            .map_err(|e| format!("{spec}: {e}"))?;
        return Ok(Coloring::TableBacked(seq));
    }
    let mut text = String::new();
    let mut file = File::open(path).map_err(|e| e.to_string())?;
    file.read_to_string(&mut text).map_err(|e| format!("cannot read {spec}: {e}"))?;
    let dto: AssignmentDto =
        serde_json::from_str(&text).map_err(|e| format!("{spec}: not EDPSIGNS or assignment JSON: {e}"))?;
    Ok(Coloring::Multiplicative(dto.to_core().map_err(|e| format!("{spec}: {e}"))?))
}

pub fn write_kcoloring<W: Write>(w: W, coloring: &KColoring) -> std::io::Result<()> {
    let mut w = BufWriter::new(w);
    for (i, &c) in coloring.colors().iter().enumerate() {
        writeln!(w, "{} {}", i + 1, c)?;
    }
    w.flush()
}

/// Reads `n color` lines; vertices must be 1..=N consecutive.
pub fn read_kcoloring<R: BufRead>(r: R, k: u64) -> Result<KColoring, String> {
    let mut colors = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        let mut parts = line.split_whitespace();
        let n: u64 = parts
            .next()
            .ok_or_else(|| format!("line {}: missing vertex", idx + 1))?
            .parse()
            .map_err(|_| format!("line {}: bad vertex", idx + 1))?;
        let c: u32 = parts
            .next()
            .ok_or_else(|| format!("line {}: missing color", idx + 1))?
            .parse()
            .map_err(|_| format!("line {}: bad color", idx + 1))?;
        if parts.next().is_some() {
            return Err(format!("line {}: trailing fields", idx + 1));
        }
        if n as usize != idx + 1 {
            return Err(format!("line {}: expected vertex {}, got {n}", idx + 1, idx + 1));
        }
        colors.push(c);
    }
    KColoring::new(k, colors).map_err(|e| e.to_string())
}
