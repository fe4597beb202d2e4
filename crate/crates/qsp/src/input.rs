//! Builtin Cartan data and command line argument parsing.

use std::path::Path;

use qsp_core::algebra::{parse_element, Element, Engine};
use qsp_core::cartan::{CartanDatum, DiagramMap, GimMatrix};
use qsp_core::{Error, ParamPoly, Result};

use crate::io::{node_index, parse_coeff, CartanJson, PairJson};

/// Names accepted in place of a Cartan file.
pub const BUILTIN_NAMES: &[&str] = &["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "B2", "G2", "affine-sl2", "A1xA1"];

/// The builtin data: `A1`..`A9`, `B2`, `G2`, `affine-sl2`, `A1xA1`.
pub fn builtin_datum(name: &str) -> Option<CartanDatum> {
    if let Some(n) = name.strip_prefix('A').and_then(|r| r.parse::<usize>().ok()) {
        return (1..=9).contains(&n).then(|| CartanDatum::type_a(n));
    }
    match name {
        "B2" => CartanDatum::from_matrix(vec![vec![2, -2], vec![-1, 2]]).ok(),
        "G2" => CartanDatum::from_matrix(vec![vec![2, -1], vec![-3, 2]]).ok(),
        "affine-sl2" => Some(CartanDatum::affine_sl2()),
        "A1xA1" => CartanDatum::from_matrix(vec![vec![2, 0], vec![0, 2]]).ok(),
        _ => None,
    }
}

/// The 3×3 mixed-sign unoriented GIM.
pub fn gim3() -> GimMatrix {
    GimMatrix::from_matrix(vec![vec![2, -1, 1], vec![-1, 2, -1], vec![1, -1, 2]]).expect("valid GIM")
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

/// A builtin name or a JSON file.
pub fn load_cartan(arg: &str) -> Result<CartanDatum> {
    if let Some(d) = builtin_datum(arg) {
        return Ok(d);
    }
    if !Path::new(arg).exists() {
        return Err(Error::Parse(format!("`{arg}` is neither a builtin datum nor a file")));
    }
    read_json::<CartanJson>(arg)?.to_datum()
}

/// A builtin GIM name (`gim3`) or a JSON file.
pub fn load_gim(arg: &str) -> Result<GimMatrix> {
    if arg == "gim3" {
        return Ok(gim3());
    }
    read_json::<CartanJson>(arg)?.to_gim()
}

pub fn load_pair_file(path: &str) -> Result<PairJson> {
    read_json(path)
}

/// `"1,3"` (labels), `""` for the empty set.
pub fn parse_x(d: &CartanDatum, s: &str) -> Result<Vec<usize>> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(|t| node_index(&d.labels, t)).collect()
}

/// `id`, a cycle list `(1 3)(2 4)`, or explicit images `3,2,1`.
pub fn parse_tau(d: &CartanDatum, s: &str) -> Result<DiagramMap> {
    let n = d.rank();
    let s = s.trim();
    if s.is_empty() || s == "id" {
        return Ok(DiagramMap::identity(n));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    if s.starts_with('(') {
        for cyc in s.split(')').map(|c| c.trim().trim_start_matches('(')).filter(|c| !c.is_empty()) {
            let nodes = cyc
                .split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| node_index(&d.labels, t))
                .collect::<Result<Vec<_>>>()?;
            for k in 0..nodes.len() {
                perm[nodes[k]] = nodes[(k + 1) % nodes.len()];
            }
        }
    } else {
        let imgs = parse_x(d, s)?;
        if imgs.len() != n {
            return Err(Error::Parse(format!("tau needs {n} images")));
        }
        perm = imgs;
    }
    let mut seen = vec![false; n];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::Parse(format!("tau `{s}` is not a permutation")));
        }
    }
    Ok(DiagramMap { perm })
}

/// Comma separated coefficient expressions, one per node.
pub fn parse_param_list(d: &CartanDatum, s: &str) -> Result<Vec<ParamPoly>> {
    let out = split_top_level(s).iter().map(|t| parse_coeff(&d.labels, t)).collect::<Result<Vec<_>>>()?;
    if out.len() != d.rank() {
        return Err(Error::Parse(format!("expected {} parameters, got {}", d.rank(), out.len())));
    }
    Ok(out)
}

/// Splits at commas outside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur.trim().to_string());
    out
}

/// Parses an element of `U_q(g')` with numeric coefficients.
pub fn parse_numeric_element(eng: &Engine, s: &str) -> Result<Element<qsp_core::Scalar>> {
    parse_element(eng, s)?
        .to_scalar_element()
        .ok_or_else(|| Error::InvalidParameters("element has symbolic coefficients".into()))
}
