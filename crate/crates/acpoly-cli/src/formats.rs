//! Text and JSON formats for polynomials, matrices, circuits, tropical
//! circuits, multiplicity tables and multiplicity profiles.
//!
//! Every writer here has a matching reader, and reading what a writer
//! produced gives back the same value.

use acpoly::circuit::{ArithCircuit, Gate};
use acpoly::gcdlib::{DenseMultiplicityFunction, TropicalCircuit, TropicalGate, TropicalOp};
use acpoly::matrix::Matrix;
use acpoly::oracle::{MultiplicityProfile, ProfileEntry};
use acpoly::upoly::{format_poly, parse_poly};
use acpoly::{DensePoly, Error, FieldCtx, Result};
use serde::{Deserialize, Serialize};

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Reads a polynomial in expression syntax (`x^2-3*x+2`) or as an ascending
/// coefficient list, with or without brackets (`2,-3,1` or `[2,-3,1]`).
pub fn read_poly(ctx: FieldCtx, s: &str) -> Result<DensePoly> {
    let t = s.trim();
    let t = match t.strip_prefix('[') {
        Some(rest) => rest.strip_suffix(']').ok_or_else(|| parse_err(format!("unbalanced brackets in '{s}'")))?,
        None => t,
    };
    parse_poly(ctx, t)
}

/// Expression syntax with descending powers.
pub fn write_poly(f: &DensePoly) -> String {
    format_poly(f)
}

/// Ascending coefficients as canonical residues.
pub fn poly_json(f: &DensePoly) -> serde_json::Value {
    serde_json::json!(f.coeffs())
}

/// A field element as a signed integer in `(-p/2, p/2]`.
pub fn write_scalar(ctx: FieldCtx, v: u64) -> String {
    ctx.signed(v).to_string()
}

/// Reads a comma-separated list of integers, each reduced mod p.
pub fn read_values(ctx: FieldCtx, s: &str) -> Result<Vec<u64>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|tok| read_int(ctx, tok.trim())).collect()
}

fn read_int(ctx: FieldCtx, tok: &str) -> Result<u64> {
    let v: i128 = tok.parse().map_err(|_| parse_err(format!("bad integer literal '{tok}'")))?;
    Ok(reduce_i128(ctx, v))
}

fn reduce_i128(ctx: FieldCtx, v: i128) -> u64 {
    v.rem_euclid(ctx.p() as i128) as u64
}

/// Row-major JSON array of signed entries, e.g. `[[1,0],[-2,1]]`.
pub fn write_matrix(m: &Matrix) -> String {
    serde_json::to_string(&m.signed_rows()).expect("integer arrays serialize")
}

/// Reads a row-major JSON array of integers; entries are reduced mod p.
pub fn read_matrix(ctx: FieldCtx, s: &str) -> Result<Matrix> {
    let rows: Vec<Vec<i128>> = serde_json::from_str(s).map_err(parse_err)?;
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|row| row.len() != c) {
        return Err(parse_err("matrix rows have different lengths"));
    }
    let mut m = Matrix::zeros(ctx, r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, reduce_i128(ctx, v));
        }
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    inputs: usize,
    gates: Vec<GateJson>,
    outputs: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateJson {
    op: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    args: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<i128>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    value: Option<i128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
}

impl GateJson {
    fn new(op: &str, args: Vec<usize>) -> Self {
        GateJson { op: op.to_string(), args, weights: None, value: None, index: None }
    }
}

/// Serializes a circuit, with an optional degree bound for multivariate
/// inputs. Add gates whose weights are all one omit the `weights` field.
pub fn write_circuit(c: &ArithCircuit, degree: Option<usize>) -> String {
    let gates = c
        .gates()
        .iter()
        .map(|g| match g {
            Gate::Input(i) => GateJson { index: Some(*i), ..GateJson::new("input", Vec::new()) },
            Gate::Const(v) => GateJson { value: Some(*v as i128), ..GateJson::new("const", Vec::new()) },
            Gate::Add(terms) => {
                let args = terms.iter().map(|&(a, _)| a).collect();
                let weights = if terms.iter().all(|&(_, w)| w == 1) {
                    None
                } else {
                    Some(terms.iter().map(|&(_, w)| w as i128).collect())
                };
                GateJson { weights, ..GateJson::new("add", args) }
            }
            Gate::Mul(args) => GateJson::new("mul", args.clone()),
            Gate::Div(a, b) => GateJson::new("div", vec![*a, *b]),
            Gate::Select(args) => GateJson::new("select", args.clone()),
        })
        .collect();
    let json = CircuitJson { inputs: c.inputs(), gates, outputs: c.outputs().to_vec(), degree };
    serde_json::to_string(&json).expect("circuit serializes")
}

fn need<T>(v: Option<T>, gate: usize, field: &str) -> Result<T> {
    v.ok_or_else(|| parse_err(format!("gate {gate}: missing '{field}'")))
}

/// Reads a circuit and its optional `degree` field.
pub fn read_circuit(ctx: FieldCtx, s: &str) -> Result<(ArithCircuit, Option<usize>)> {
    let json: CircuitJson = serde_json::from_str(s).map_err(parse_err)?;
    let mut gates = Vec::with_capacity(json.gates.len());
    for (k, g) in json.gates.into_iter().enumerate() {
        let gate = match g.op.as_str() {
            "input" => Gate::Input(need(g.index, k, "index")?),
            "const" => Gate::Const(reduce_i128(ctx, need(g.value, k, "value")?)),
            "add" => {
                let weights = match g.weights {
                    Some(w) if w.len() != g.args.len() => {
                        return Err(parse_err(format!("gate {k}: {} weights for {} args", w.len(), g.args.len())))
                    }
                    Some(w) => w.into_iter().map(|v| reduce_i128(ctx, v)).collect(),
                    None => vec![1; g.args.len()],
                };
                Gate::Add(g.args.into_iter().zip(weights).collect())
            }
            "mul" => Gate::Mul(g.args),
            "div" => match g.args.as_slice() {
                &[a, b] => Gate::Div(a, b),
                _ => return Err(parse_err(format!("gate {k}: div takes two args"))),
            },
            "select" => Gate::Select(g.args),
            other => return Err(parse_err(format!("gate {k}: unknown op '{other}'"))),
        };
        gates.push(gate);
    }
    Ok((ArithCircuit::new(ctx, json.inputs, gates, json.outputs)?, json.degree))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TropicalJson {
    inputs: usize,
    gates: Vec<TropicalGateJson>,
    output: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TropicalGateJson {
    op: String,
    args: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<u64>>,
}

/// Reads a tropical circuit: `{"inputs": m, "gates": [...], "output": k}`.
pub fn read_tropical(s: &str) -> Result<TropicalCircuit> {
    let json: TropicalJson = serde_json::from_str(s).map_err(parse_err)?;
    let mut gates = Vec::with_capacity(json.gates.len());
    for (k, g) in json.gates.into_iter().enumerate() {
        let op = match (g.op.as_str(), g.c, g.r) {
            ("add", None, None) => TropicalOp::Add,
            ("min", None, None) => TropicalOp::Min,
            ("max", None, None) => TropicalOp::Max,
            ("cmul", Some(c), None) => TropicalOp::CMul(c),
            ("thr", None, Some(r)) => TropicalOp::Thr(r),
            ("nthr", None, Some(r)) => TropicalOp::NThr(r),
            (op, _, _) => return Err(parse_err(format!("gate {k}: bad fields for op '{op}'"))),
        };
        gates.push(TropicalGate { op, args: g.args });
    }
    let c = TropicalCircuit { inputs: json.inputs, gates, output: json.output };
    c.validate()?;
    Ok(c)
}

pub fn write_tropical(c: &TropicalCircuit) -> String {
    let gates = c
        .gates
        .iter()
        .map(|g| {
            let (cv, r) = match &g.op {
                TropicalOp::CMul(v) => (Some(*v), None),
                TropicalOp::Thr(r) | TropicalOp::NThr(r) => (None, Some(r.clone())),
                _ => (None, None),
            };
            TropicalGateJson { op: g.op.name().to_string(), args: g.args.clone(), c: cv, r }
        })
        .collect();
    serde_json::to_string(&TropicalJson { inputs: c.inputs, gates, output: c.output }).expect("tropical circuit serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    arity: usize,
    entries: Vec<TableEntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntryJson {
    mults: Vec<usize>,
    value: u64,
}

/// Reads a multiplicity function by its nonzero values:
/// `{"arity": m, "entries": [{"mults": [..], "value": v}]}`. The function is
/// defined on `{0..cap}^m` with `cap` the largest multiplicity mentioned or
/// `degree_cap`, whichever is larger.
pub fn read_table(s: &str, degree_cap: usize) -> Result<DenseMultiplicityFunction> {
    let json: TableJson = serde_json::from_str(s).map_err(parse_err)?;
    let cap = json.entries.iter().flat_map(|e| e.mults.iter().copied()).fold(degree_cap, usize::max);
    let mut p = DenseMultiplicityFunction::new(json.arity, cap);
    for e in &json.entries {
        p.set(&e.mults, e.value).map_err(|e| parse_err(e.to_string()))?;
    }
    Ok(p)
}

pub fn write_table(p: &DenseMultiplicityFunction) -> String {
    let entries = p.entries().map(|(t, v)| TableEntryJson { mults: t.to_vec(), value: v }).collect();
    serde_json::to_string(&TableJson { arity: p.arity(), entries }).expect("table serializes")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileJson {
    roots: Vec<ProfileEntryJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileEntryJson {
    root: i128,
    mults: Vec<usize>,
}

/// Reads `{"roots": [{"root": r, "mults": [..]}]}`; roots are reduced mod p.
pub fn read_profile(ctx: FieldCtx, s: &str) -> Result<MultiplicityProfile> {
    let json: ProfileJson = serde_json::from_str(s).map_err(parse_err)?;
    let arity = json.roots.first().map_or(0, |e| e.mults.len());
    if json.roots.iter().any(|e| e.mults.len() != arity) {
        return Err(parse_err("profile entries have different arities"));
    }
    let entries = json
        .roots
        .into_iter()
        .map(|e| ProfileEntry { root: reduce_i128(ctx, e.root), mults: e.mults })
        .collect();
    Ok(MultiplicityProfile { entries })
}

pub fn write_profile(ctx: FieldCtx, prof: &MultiplicityProfile) -> String {
    let roots = prof
        .entries
        .iter()
        .map(|e| ProfileEntryJson { root: ctx.signed(e.root), mults: e.mults.clone() })
        .collect();
    serde_json::to_string(&ProfileJson { roots }).expect("profile serializes")
}
