//! JSON persistence for instances, Graver bases, and solve results.
//!
//! Output is pretty-printed with sorted keys and a trailing newline. Integers
//! with magnitude above 2^53 are written as decimal strings; readers accept
//! either form for every integer.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::cost::CostModel;
use crate::error::{Error, Result};
use crate::graver::{hex, GraverBasis};
use crate::instances::{Instance, McfData, Provenance, Transport3Data};
use crate::linalg::{IntMatrix, IntVector};
use crate::robust::{Method, RobustReport, Sense, SolveStats, Variant};
use crate::set::StandardFormSet;

pub const INSTANCE_SCHEMA: &str = "robustip.instance/1";
pub const GRAVER_SCHEMA: &str = "robustip.graver/1";
pub const RESULT_SCHEMA: &str = "robustip.result/1";

const EXACT_LIMIT: i64 = 1 << 53;

pub fn int_value(v: i64) -> Value {
    if v.unsigned_abs() > EXACT_LIMIT as u64 {
        Value::String(v.to_string())
    } else {
        Value::from(v)
    }
}

fn vec_value(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|&x| int_value(x)).collect())
}

fn vecs_value<'a>(vs: impl IntoIterator<Item = &'a [i64]>) -> Value {
    Value::Array(vs.into_iter().map(vec_value).collect())
}

/// Canonical text: sorted keys, two-space indent, arrays of scalars on one
/// line, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = String::new();
    write_value(v, 0, &mut s);
    s.push('\n');
    s
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(&x.to_string());
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                pad(depth + 1, out);
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            // serde_json's default map is ordered by key
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

fn parse_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub(crate) fn get_int(v: &Value, path: &str) -> Result<i64> {
    match v {
        Value::Number(n) => n.as_i64().ok_or_else(|| parse_err(path, format!("{n} is not a 64-bit integer"))),
        Value::String(s) => s.parse().map_err(|_| parse_err(path, format!("'{s}' is not a decimal integer"))),
        other => Err(parse_err(path, format!("expected an integer, found {other}"))),
    }
}

fn get_vec(v: &Value, path: &str) -> Result<Vec<i64>> {
    let arr = v.as_array().ok_or_else(|| parse_err(path, "expected an array of integers"))?;
    arr.iter().enumerate().map(|(i, x)| get_int(x, &format!("{path}[{i}]"))).collect()
}

fn get_vec_len(v: &Value, path: &str, n: usize) -> Result<IntVector> {
    let out = get_vec(v, path)?;
    if out.len() != n {
        return Err(Error::dim(format!("{path} has length {}, expected {n}", out.len())));
    }
    Ok(out.into())
}

fn get_vecs_len(v: &Value, path: &str, n: usize) -> Result<Vec<IntVector>> {
    let arr = v.as_array().ok_or_else(|| parse_err(path, "expected an array of vectors"))?;
    arr.iter().enumerate().map(|(i, x)| get_vec_len(x, &format!("{path}[{i}]"), n)).collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(path, format!("missing field '{key}'")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(path, "expected an object"))
}

fn get_usize(v: &Value, path: &str) -> Result<usize> {
    let x = get_int(v, path)?;
    usize::try_from(x).map_err(|_| parse_err(path, format!("{x} is not a valid size")))
}

fn check_schema(obj: &Map<String, Value>, want: &str) -> Result<()> {
    match obj.get("schema").and_then(Value::as_str) {
        Some(s) if s == want => Ok(()),
        Some(s) => Err(parse_err("$.schema", format!("expected '{want}', found '{s}'"))),
        None => Err(parse_err("$", format!("missing field 'schema' (expected '{want}')"))),
    }
}

fn costs_value(c: &CostModel) -> Value {
    match c {
        CostModel::List(cs) => json!({"kind": "list", "vectors": vecs_value(cs.iter().map(|v| v.as_slice()))}),
        CostModel::Box { lo, hi } => json!({"kind": "box", "lo": vec_value(lo), "hi": vec_value(hi)}),
    }
}

fn costs_from(v: &Value, path: &str, n: usize) -> Result<CostModel> {
    let obj = object(v, path)?;
    match field(obj, "kind", path)?.as_str() {
        Some("list") => CostModel::list(get_vecs_len(field(obj, "vectors", path)?, &format!("{path}.vectors"), n)?),
        Some("box") => CostModel::boxed(
            get_vec_len(field(obj, "lo", path)?, &format!("{path}.lo"), n)?,
            get_vec_len(field(obj, "hi", path)?, &format!("{path}.hi"), n)?,
        ),
        _ => Err(parse_err(&format!("{path}.kind"), "expected \"list\" or \"box\"")),
    }
}

fn set_fields(set: &StandardFormSet, out: &mut Map<String, Value>) {
    out.insert("n".into(), Value::from(set.dim()));
    out.insert("A".into(), vecs_value(set.matrix().row_vecs().iter().map(Vec::as_slice)));
    out.insert("b".into(), vec_value(set.rhs()));
    out.insert("lower".into(), vec_value(set.lower()));
    out.insert("upper".into(), vec_value(set.upper()));
}

/// SHA-256 over the compact canonical JSON of the set and cost model.
pub fn instance_fingerprint(set: &StandardFormSet, costs: &CostModel) -> String {
    let mut m = Map::new();
    set_fields(set, &mut m);
    m.insert("costs".into(), costs_value(costs));
    let text = serde_json::to_string(&Value::Object(m)).expect("values serialize");
    hex(&Sha256::digest(text.as_bytes()))
}

pub fn instance_to_value(inst: &Instance) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(INSTANCE_SCHEMA));
    set_fields(&inst.set, &mut m);
    m.insert("costs".into(), costs_value(&inst.costs));
    if let Some(g) = &inst.known_graver {
        m.insert("known_graver".into(), vecs_value(g.iter().map(|v| v.as_slice())));
    }
    if let Some(h) = &inst.feasible_hint {
        m.insert("feasible_hint".into(), vec_value(h));
    }
    if let Some(p) = &inst.provenance {
        let mut pm = Map::new();
        pm.insert("generator".into(), Value::from(p.generator.clone()));
        pm.insert("params".into(), Value::Object(p.params.clone().into_iter().collect()));
        if let Some(s) = p.seed {
            pm.insert("seed".into(), Value::from(s));
        }
        m.insert("provenance".into(), Value::Object(pm));
    }
    Value::Object(m)
}

pub fn instance_from_value(v: &Value) -> Result<Instance> {
    let obj = object(v, "$")?;
    check_schema(obj, INSTANCE_SCHEMA)?;
    let n = get_usize(field(obj, "n", "$")?, "$.n")?;
    let rows = field(obj, "A", "$")?.as_array().ok_or_else(|| parse_err("$.A", "expected an array of rows"))?;
    let rows: Vec<Vec<i64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| get_vec_len(r, &format!("$.A[{i}]"), n).map(IntVector::into_inner))
        .collect::<Result<_>>()?;
    let matrix = IntMatrix::from_rows_with_cols(&rows, n)?;
    let b = get_vec_len(field(obj, "b", "$")?, "$.b", rows.len())?;
    let bound = |key: &str| -> Result<IntVector> {
        match obj.get(key) {
            None | Some(Value::Null) => Err(parse_err("$", format!("missing '{key}': unbounded sets are not supported"))),
            Some(x) => get_vec_len(x, &format!("$.{key}"), n),
        }
    };
    let set = StandardFormSet::new(matrix, b, bound("lower")?, bound("upper")?)?;
    let costs = costs_from(field(obj, "costs", "$")?, "$.costs", n)?;
    let mut inst = Instance::new(set, costs)?;
    if let Some(g) = obj.get("known_graver").filter(|g| !g.is_null()) {
        inst.known_graver = Some(get_vecs_len(g, "$.known_graver", n)?);
    }
    if let Some(h) = obj.get("feasible_hint").filter(|h| !h.is_null()) {
        inst.feasible_hint = Some(get_vec_len(h, "$.feasible_hint", n)?);
    }
    if let Some(p) = obj.get("provenance").filter(|p| !p.is_null()) {
        let pm = object(p, "$.provenance")?;
        let generator = field(pm, "generator", "$.provenance")?
            .as_str()
            .ok_or_else(|| parse_err("$.provenance.generator", "expected a string"))?;
        let mut prov = Provenance::new(generator);
        if let Some(params) = pm.get("params") {
            prov.params = object(params, "$.provenance.params")?.clone().into_iter().collect();
        }
        if let Some(s) = pm.get("seed") {
            let s = get_int(s, "$.provenance.seed")?;
            prov.seed = Some(u64::try_from(s).map_err(|_| parse_err("$.provenance.seed", "must be nonnegative"))?);
        }
        inst.provenance = Some(prov);
    }
    Ok(inst)
}

pub fn write_instance(inst: &Instance) -> String {
    to_canonical_string(&instance_to_value(inst))
}

pub fn read_instance(text: &str) -> Result<Instance> {
    instance_from_value(&serde_json::from_str(text)?)
}

pub fn graver_to_value(g: &GraverBasis) -> Value {
    json!({
        "schema": GRAVER_SCHEMA,
        "matrix_sha": g.matrix_sha(),
        "n": g.dim(),
        "elements": vecs_value(g.elements().iter().map(|v| v.as_slice())),
        "negation_closed": true,
    })
}

pub fn write_graver(g: &GraverBasis) -> String {
    to_canonical_string(&graver_to_value(g))
}

/// Elements may be listed in any order and sign; they are canonicalized.
pub fn read_graver(text: &str) -> Result<GraverBasis> {
    let v: Value = serde_json::from_str(text)?;
    let obj = object(&v, "$")?;
    check_schema(obj, GRAVER_SCHEMA)?;
    let n = get_usize(field(obj, "n", "$")?, "$.n")?;
    let sha = field(obj, "matrix_sha", "$")?.as_str().ok_or_else(|| parse_err("$.matrix_sha", "expected a string"))?;
    if field(obj, "negation_closed", "$")?.as_bool() != Some(true) {
        return Err(parse_err("$.negation_closed", "must be true"));
    }
    GraverBasis::new(sha.to_string(), n, get_vecs_len(field(obj, "elements", "$")?, "$.elements", n)?)
}

/// A solve outcome tied to the instance it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultFile {
    pub instance_fingerprint: String,
    pub report: RobustReport,
    /// Omitted unless requested, to keep output byte-deterministic.
    pub wall_time_ms: Option<u64>,
}

fn sense_str(s: Sense) -> &'static str {
    match s {
        Sense::Cost => "cost",
        Sense::Profit => "profit",
    }
}

pub fn result_to_value(r: &ResultFile) -> Value {
    let rep = &r.report;
    let mut m = Map::new();
    m.insert("schema".into(), Value::from(RESULT_SCHEMA));
    m.insert("instance_fingerprint".into(), Value::from(r.instance_fingerprint.clone()));
    m.insert("variant".into(), Value::from(rep.variant.flag()));
    m.insert("sense".into(), Value::from(sense_str(rep.sense)));
    m.insert("value".into(), int_value(rep.value));
    m.insert("optimizer".into(), vec_value(&rep.optimizer));
    m.insert("witness".into(), vec_value(&rep.witness));
    m.insert("method".into(), Value::from(rep.method.as_str()));
    m.insert(
        "trace".into(),
        json!({
            "augmentation_steps": rep.stats.augmentation_steps,
            "inner_solves": rep.stats.inner_solves,
            "points_enumerated": rep.stats.points_enumerated,
            "costs_enumerated": rep.stats.costs_enumerated,
        }),
    );
    if let Some(t) = r.wall_time_ms {
        m.insert("wall_time_ms".into(), Value::from(t));
    }
    Value::Object(m)
}

pub fn write_result(r: &ResultFile) -> String {
    to_canonical_string(&result_to_value(r))
}

pub fn read_result(text: &str) -> Result<ResultFile> {
    let v: Value = serde_json::from_str(text)?;
    let obj = object(&v, "$")?;
    check_schema(obj, RESULT_SCHEMA)?;
    let text_field = |key: &str| -> Result<&str> {
        field(obj, key, "$")?.as_str().ok_or_else(|| parse_err(&format!("$.{key}"), "expected a string"))
    };
    let variant: Variant = text_field("variant")?.parse().map_err(|e: Error| parse_err("$.variant", e))?;
    let sense = match text_field("sense")? {
        "cost" => Sense::Cost,
        "profit" => Sense::Profit,
        s => return Err(parse_err("$.sense", format!("unknown sense '{s}'"))),
    };
    let method = match text_field("method")? {
        "graver" => Method::Graver,
        "exact-enumeration" => Method::ExactEnumeration,
        s => return Err(parse_err("$.method", format!("unknown method '{s}'"))),
    };
    let optimizer: IntVector = get_vec(field(obj, "optimizer", "$")?, "$.optimizer")?.into();
    let witness = get_vec_len(field(obj, "witness", "$")?, "$.witness", optimizer.len())?;
    let trace = object(field(obj, "trace", "$")?, "$.trace")?;
    let count = |key: &str| -> Result<u64> {
        let x = get_int(field(trace, key, "$.trace")?, &format!("$.trace.{key}"))?;
        u64::try_from(x).map_err(|_| parse_err(&format!("$.trace.{key}"), "must be nonnegative"))
    };
    let stats = SolveStats {
        augmentation_steps: count("augmentation_steps")?,
        inner_solves: count("inner_solves")?,
        points_enumerated: count("points_enumerated")?,
        costs_enumerated: count("costs_enumerated")?,
    };
    let wall_time_ms = match obj.get("wall_time_ms") {
        None | Some(Value::Null) => None,
        Some(t) => Some(u64::try_from(get_int(t, "$.wall_time_ms")?).map_err(|_| parse_err("$.wall_time_ms", "must be nonnegative"))?),
    };
    Ok(ResultFile {
        instance_fingerprint: text_field("instance_fingerprint")?.to_string(),
        report: RobustReport {
            variant,
            sense,
            value: get_int(field(obj, "value", "$")?, "$.value")?,
            optimizer,
            witness,
            method,
            stats,
        },
        wall_time_ms,
    })
}

fn get_rows(v: &Value, path: &str) -> Result<Vec<Vec<i64>>> {
    let arr = v.as_array().ok_or_else(|| parse_err(path, "expected an array of rows"))?;
    arr.iter().enumerate().map(|(i, r)| get_vec(r, &format!("{path}[{i}]"))).collect()
}

/// Raw flow data: `supply[k][i]`, `demand[k][j]`, `capacity[i][j]` and costs
/// over `(k·m + i)·n + j`.
pub fn read_mcf_data(text: &str) -> Result<McfData> {
    let v: Value = serde_json::from_str(text)?;
    let obj = object(&v, "$")?;
    let supply = get_rows(field(obj, "supply", "$")?, "$.supply")?;
    let demand = get_rows(field(obj, "demand", "$")?, "$.demand")?;
    let capacity = get_rows(field(obj, "capacity", "$")?, "$.capacity")?;
    let len = supply.len() * capacity.len() * capacity.first().map_or(0, Vec::len);
    let costs = costs_from(field(obj, "costs", "$")?, "$.costs", len)?;
    Ok(McfData { supply, demand, capacity, costs })
}

/// Raw transportation data: `u[j][k]`, `v[i][k]`, `w[i][j]` and costs over
/// `(i·m + j)·n + k`.
pub fn read_transport3_data(text: &str) -> Result<Transport3Data> {
    let v: Value = serde_json::from_str(text)?;
    let obj = object(&v, "$")?;
    let u = get_rows(field(obj, "u", "$")?, "$.u")?;
    let vv = get_rows(field(obj, "v", "$")?, "$.v")?;
    let w = get_rows(field(obj, "w", "$")?, "$.w")?;
    let len = w.len() * u.len() * u.first().map_or(0, Vec::len);
    let costs = costs_from(field(obj, "costs", "$")?, "$.costs", len)?;
    Ok(Transport3Data { u, v: vv, w, costs })
}

pub const MATRIX_SCHEMA: &str = "robustip.matrix/1";

/// The matrix of an instance file or of a bare matrix file
/// `{"schema": "robustip.matrix/1", "n": .., "A": [..]}`.
pub fn read_matrix(text: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(text)?;
    let obj = object(&v, "$")?;
    match obj.get("schema").and_then(Value::as_str) {
        Some(MATRIX_SCHEMA) => {
            let n = get_usize(field(obj, "n", "$")?, "$.n")?;
            let rows = field(obj, "A", "$")?.as_array().ok_or_else(|| parse_err("$.A", "expected an array of rows"))?;
            let rows: Vec<Vec<i64>> = rows
                .iter()
                .enumerate()
                .map(|(i, r)| get_vec_len(r, &format!("$.A[{i}]"), n).map(IntVector::into_inner))
                .collect::<Result<_>>()?;
            IntMatrix::from_rows_with_cols(&rows, n)
        }
        _ => Ok(instance_from_value(&v)?.set.matrix().clone()),
    }
}

pub fn write_matrix(a: &IntMatrix) -> String {
    to_canonical_string(&json!({
        "schema": MATRIX_SCHEMA,
        "n": a.cols(),
        "A": vecs_value(a.row_vecs().iter().map(Vec::as_slice)),
    }))
}
