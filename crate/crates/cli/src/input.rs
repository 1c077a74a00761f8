//! Algebra definition files, preset targets and parameter bindings.
//!
//! ```text
//! # comments run to the end of the line
//! algebra W params a b
//! gen L offset=1 shift=0
//! gen W
//! vir L
//! [L,L] = (d + 2*x) L
//! [L,W] = (d + a*x + b) W
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use confalg_core::algebra::{AlgebraBuilder, ConformalAlgebra, Generator};
use confalg_core::presets::{instantiate, PresetId};
use confalg_core::rational::parse_rational;
use confalg_core::{Rational, VarId};

use crate::error::CliError;

pub fn parse_algebra(text: &str) -> Result<ConformalAlgebra, CliError> {
    let mut builder: Option<AlgebraBuilder> = None;
    let mut seen = BTreeSet::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| CliError::Line { line: line_no, message };
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or("");
        if head == "algebra" {
            if builder.is_some() {
                return Err(fail("duplicate `algebra` header".into()));
            }
            let name = words.next().ok_or_else(|| fail("`algebra` needs a name".into()))?;
            let mut b = AlgebraBuilder::new(name);
            match words.next() {
                None => {}
                Some("params") => {
                    for p in words {
                        b.param(p).map_err(|e| CliError::at_line(line_no, e))?;
                    }
                }
                Some(other) => return Err(fail(format!("expected `params`, found `{}`", other))),
            }
            builder = Some(b);
            continue;
        }
        let b = builder
            .as_mut()
            .ok_or_else(|| fail("the file must start with an `algebra` header".into()))?;
        match head {
            "gen" => {
                let name = words.next().ok_or_else(|| fail("`gen` needs a name".into()))?;
                let mut g = Generator::new(name);
                for opt in words {
                    let (key, value) = opt
                        .split_once('=')
                        .ok_or_else(|| fail(format!("expected key=value, found `{}`", opt)))?;
                    let r = parse_rational(value).map_err(|e| CliError::at_line(line_no, e))?;
                    g = match key {
                        "offset" => g.with_offset(r),
                        "shift" => g.with_shift(r),
                        _ => return Err(fail(format!("unknown generator option `{}`", key))),
                    };
                }
                b.generator(g).map_err(|e| CliError::at_line(line_no, e))?;
            }
            "vir" => {
                let name = words.next().ok_or_else(|| fail("`vir` needs a generator name".into()))?;
                b.virasoro(name).map_err(|e| CliError::at_line(line_no, e))?;
            }
            _ if line.starts_with('[') => {
                let (lhs, rhs) = line
                    .split_once('=')
                    .ok_or_else(|| fail("bracket lines look like `[A,B] = ...`".into()))?;
                let inner = lhs
                    .trim()
                    .strip_prefix('[')
                    .and_then(|s| s.strip_suffix(']'))
                    .ok_or_else(|| fail(format!("malformed bracket `{}`", lhs.trim())))?;
                let (left, right) = inner
                    .split_once(',')
                    .ok_or_else(|| fail(format!("malformed bracket `{}`", lhs.trim())))?;
                let (left, right) = (left.trim().to_string(), right.trim().to_string());
                if !seen.insert((left.clone(), right.clone())) {
                    return Err(fail(format!("[{},{}] is defined twice", left, right)));
                }
                b.bracket_str(&left, &right, rhs.trim()).map_err(|e| CliError::at_line(line_no, e))?;
            }
            _ => return Err(fail(format!("unrecognized line `{}`", line))),
        }
    }
    let b = builder.ok_or_else(|| CliError::Input("empty algebra definition".into()))?;
    Ok(b.build()?)
}

/// A loaded algebra, with the preset it came from when applicable.
#[derive(Debug, Clone)]
pub struct Target {
    pub algebra: ConformalAlgebra,
    pub preset: Option<PresetId>,
    pub label: String,
}

/// Preset names win over file names.
pub fn load_target(spec: &str) -> Result<Target, CliError> {
    if let Ok(id) = PresetId::from_name(spec) {
        return Ok(Target { algebra: instantiate(id, &[])?, preset: Some(id), label: spec.to_string() });
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(CliError::Input(format!(
            "`{}` is neither a preset (vir, w, wb, tsv, tsvc) nor a readable file",
            spec
        )));
    }
    let text = std::fs::read_to_string(path)?;
    Ok(Target { algebra: parse_algebra(&text)?, preset: None, label: spec.to_string() })
}

/// Parses `name=value` pairs and checks the names against the algebra.
pub fn parse_bindings(alg: &ConformalAlgebra, items: &[String]) -> Result<BTreeMap<VarId, Rational>, CliError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected name=value, found `{}`", item)))?;
        let v = alg
            .params()
            .iter()
            .copied()
            .find(|p| p.name() == name.trim())
            .ok_or_else(|| CliError::Input(format!("`{}` is not a parameter of {}", name.trim(), alg.name)))?;
        let r = parse_rational(value.trim())?;
        if out.insert(v, r).is_some() {
            return Err(CliError::Input(format!("`{}` is bound twice", name.trim())));
        }
    }
    Ok(out)
}

/// `a=0..2` (inclusive integers) or `a=0,1/2,1`.
pub fn parse_grid(alg: &ConformalAlgebra, items: &[String]) -> Result<Vec<(VarId, Vec<Rational>)>, CliError> {
    let mut out = Vec::new();
    for item in items {
        let (name, range) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected name=lo..hi, found `{}`", item)))?;
        let v = alg
            .params()
            .iter()
            .copied()
            .find(|p| p.name() == name.trim())
            .ok_or_else(|| CliError::Input(format!("`{}` is not a parameter of {}", name.trim(), alg.name)))?;
        let values = if let Some((lo, hi)) = range.split_once("..") {
            let lo: i64 = lo.trim().parse().map_err(|_| CliError::Input(format!("bad grid bound `{}`", lo)))?;
            let hi: i64 = hi.trim().parse().map_err(|_| CliError::Input(format!("bad grid bound `{}`", hi)))?;
            (lo..=hi).map(confalg_core::rational::int).collect()
        } else {
            range.split(',').map(|s| parse_rational(s.trim())).collect::<Result<Vec<_>, _>>()?
        };
        out.push((v, values));
    }
    Ok(out)
}

/// All points of a product grid, in lexicographic order.
pub fn grid_points(grid: &[(VarId, Vec<Rational>)]) -> Vec<BTreeMap<VarId, Rational>> {
    let mut points = vec![BTreeMap::new()];
    for (v, values) in grid {
        points = points
            .into_iter()
            .flat_map(|p| {
                values.iter().map(move |r| {
                    let mut q = p.clone();
                    q.insert(*v, r.clone());
                    q
                })
            })
            .collect();
    }
    points
}

pub fn show_bindings(bindings: &BTreeMap<VarId, Rational>) -> String {
    let parts: Vec<String> = bindings.iter().map(|(v, r)| format!("{}={}", v, r)).collect();
    parts.join(" ")
}
