//! JSON inputs: matrices (row-major), frames, paths and phase charts.
//!
//! Every input argument is either inline JSON, a bare keyword, or a path to
//! a file holding JSON.

use std::fs;

use maslov_core::generate::{self, UnitaryLoop};
use maslov_core::{LagrangianFrame, LagrangianPath, Matrix, PhaseChart, TestFunction, Tolerances};
use serde_json::{Map, Value};

use crate::report::CliError;

type Result<T> = std::result::Result<T, CliError>;

const KEYWORDS: [&str; 3] = ["vertical", "horizontal", "auto"];
const MIN_RESOLUTION: u64 = 16;
const DEFAULT_RESOLUTION: u64 = 64;
/// Size of the null-homotopic wobble in generated loops.
const LOOP_AMPLITUDE: f64 = 0.6;

pub fn load(arg: &str) -> Result<Value> {
    let trimmed = arg.trim();
    if KEYWORDS.contains(&trimmed) {
        return Ok(Value::String(trimmed.into()));
    }
    if let Ok(v) = serde_json::from_str(trimmed) {
        return Ok(v);
    }
    let text = fs::read_to_string(arg)
        .map_err(|e| CliError::input(format!("`{arg}` is neither valid JSON nor a readable file: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("{arg}: malformed JSON: {e}")))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| CliError::input(format!("{what}: expected a number, got {v}")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| CliError::input(format!("{what}: missing field `{key}`")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| CliError::input(format!("{what}: expected a JSON object")))
}

fn uint(obj: &Map<String, Value>, key: &str, what: &str) -> Result<Option<u64>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => v.as_u64().map(Some).ok_or_else(|| CliError::input(format!("{what}.{key}: expected a non-negative integer"))),
    }
}

fn dim(obj: &Map<String, Value>, key: &str, what: &str) -> Result<usize> {
    match uint(obj, key, what)? {
        Some(n) if n >= 1 => Ok(n as usize),
        Some(_) => Err(CliError::input(format!("{what}.{key} must be at least 1"))),
        None => Err(CliError::input(format!("{what}: missing field `{key}`"))),
    }
}

/// Nested rows; a flat row-major list of the right length; or a bare number
/// for a 1×1 matrix.
pub fn matrix(v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if let (Some(x), 1, 1) = (v.as_f64(), rows, cols) {
        return Ok(Matrix::from_element(1, 1, x));
    }
    let items = v.as_array().ok_or_else(|| CliError::input(format!("{what}: expected an array")))?;
    let flat: Vec<f64> = if items.iter().all(Value::is_array) && !items.is_empty() {
        if items.len() != rows {
            return Err(CliError::input(format!("{what}: expected {rows} rows, got {}", items.len())));
        }
        let mut out = Vec::with_capacity(rows * cols);
        for (i, row) in items.iter().enumerate() {
            let row = row.as_array().expect("checked above");
            if row.len() != cols {
                return Err(CliError::input(format!("{what}: row {i} has {} entries, expected {cols}", row.len())));
            }
            for x in row {
                out.push(number(x, what)?);
            }
        }
        out
    } else {
        if items.len() != rows * cols {
            return Err(CliError::input(format!(
                "{what}: expected {rows}×{cols} = {} entries, got {}",
                rows * cols,
                items.len()
            )));
        }
        items.iter().map(|x| number(x, what)).collect::<Result<_>>()?
    };
    Ok(Matrix::from_row_slice(rows, cols, &flat))
}

/// Shape read off the data: nested rows, or a flat list taken as one column.
pub fn matrix_any(v: &Value, what: &str) -> Result<Matrix> {
    let items = v.as_array().ok_or_else(|| CliError::input(format!("{what}: expected an array")))?;
    match items.first() {
        None => Err(CliError::input(format!("{what}: empty matrix"))),
        Some(Value::Array(row)) => matrix(v, items.len(), row.len(), what),
        Some(_) => matrix(v, items.len(), 1, what),
    }
}

/// Half-dimension implied by a frame literal, if it carries one.
pub fn frame_dim(v: &Value) -> Option<usize> {
    let items = v.as_array()?;
    match items.first()? {
        Value::Array(row) => Some(row.len()),
        _ => {
            let n = ((items.len() / 2) as f64).sqrt().round() as usize;
            (2 * n * n == items.len()).then_some(n)
        }
    }
}

pub fn frame(v: &Value, n: Option<usize>, tol: &Tolerances, what: &str) -> Result<LagrangianFrame> {
    if let Some(word) = v.as_str() {
        let n = n.ok_or_else(|| CliError::input(format!("{what}: cannot infer n for `{word}`")))?;
        return match word {
            "vertical" => Ok(LagrangianFrame::vertical(n)),
            "horizontal" => Ok(LagrangianFrame::horizontal(n)),
            _ => Err(CliError::input(format!("{what}: unknown frame keyword `{word}`"))),
        };
    }
    let found = frame_dim(v).ok_or_else(|| CliError::input(format!("{what}: expected a 2n×n array")))?;
    if let Some(n) = n {
        if n != found {
            return Err(CliError::input(format!("{what}: expected n = {n}, got n = {found}")));
        }
    }
    if found == 0 {
        return Err(CliError::input(format!("{what}: empty frame")));
    }
    Ok(LagrangianFrame::new(matrix(v, 2 * found, found, what)?, tol)?)
}

/// Inline `{"n", "samples", "params"?, "closed"?}` or a generated
/// `{"kind", "n", "winding"?, "resolution"?, "seed"?}` (plus `"frame"` for
/// `constant`).
pub fn path(v: &Value, default_seed: u64, tol: &Tolerances, what: &str) -> Result<LagrangianPath> {
    let obj = as_object(v, what)?;
    let n = dim(obj, "n", what)?;
    let Some(kind) = obj.get("kind") else {
        return inline_path(obj, n, tol, what);
    };
    let resolution = uint(obj, "resolution", what)?.unwrap_or(DEFAULT_RESOLUTION);
    if resolution < MIN_RESOLUTION {
        return Err(CliError::input(format!("{what}.resolution must be at least {MIN_RESOLUTION}")));
    }
    let resolution = resolution as usize;
    let winding = match obj.get("winding") {
        None => 0,
        Some(w) => w.as_i64().ok_or_else(|| CliError::input(format!("{what}.winding: expected an integer")))?,
    };
    let seed = uint(obj, "seed", what)?.unwrap_or(default_seed);
    let mut rng = generate::rng(seed);
    let generated = match kind.as_str() {
        Some("generator") => UnitaryLoop::generator(n, winding),
        Some("unitary_loop") => UnitaryLoop::based(&mut rng, Matrix::identity(2 * n, 2 * n), n, winding, LOOP_AMPLITUDE),
        Some("random") => UnitaryLoop::random(&mut rng, n, winding, LOOP_AMPLITUDE),
        Some("constant") => {
            let base = match obj.get("frame") {
                None => LagrangianFrame::horizontal(n),
                Some(f) => frame(f, Some(n), tol, &format!("{what}.frame"))?,
            };
            return Ok(LagrangianPath::constant(&base, resolution));
        }
        _ => {
            return Err(CliError::input(format!(
                "{what}.kind must be one of generator, unitary_loop, random, constant; got {kind}"
            )))
        }
    };
    Ok(generated.resolved(resolution, tol)?)
}

fn inline_path(obj: &Map<String, Value>, n: usize, tol: &Tolerances, what: &str) -> Result<LagrangianPath> {
    let samples = field(obj, "samples", what)?
        .as_array()
        .ok_or_else(|| CliError::input(format!("{what}.samples: expected an array of frames")))?
        .iter()
        .enumerate()
        .map(|(k, s)| frame(s, Some(n), tol, &format!("{what}.samples[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let closed = match obj.get("closed") {
        None => false,
        Some(c) => c.as_bool().ok_or_else(|| CliError::input(format!("{what}.closed: expected a boolean")))?,
    };
    match obj.get("params") {
        None | Some(Value::Null) => Ok(LagrangianPath::uniform(samples, closed, tol)?),
        Some(p) => {
            let params = p
                .as_array()
                .ok_or_else(|| CliError::input(format!("{what}.params: expected an array")))?
                .iter()
                .map(|x| number(x, &format!("{what}.params")))
                .collect::<Result<Vec<_>>>()?;
            Ok(LagrangianPath::new(samples, params, closed, tol)?)
        }
    }
}

pub struct ChartFile {
    pub chart: PhaseChart,
    pub psi: TestFunction,
}

/// `{"n", "N", "hess_xx", "hess_xtheta", "hess_thetatheta", "psi_xx"?}`;
/// a missing `psi_xx` means ψ = 0.
pub fn chart(v: &Value, tol: &Tolerances, what: &str) -> Result<ChartFile> {
    let obj = as_object(v, what)?;
    let n = dim(obj, "n", what)?;
    let big_n = dim(obj, "N", what)?;
    let get = |key: &str, r: usize, c: usize| matrix(field(obj, key, what)?, r, c, &format!("{what}.{key}"));
    let chart = PhaseChart::new(
        get("hess_xx", n, n)?,
        get("hess_xtheta", n, big_n)?,
        get("hess_thetatheta", big_n, big_n)?,
        tol,
    )?;
    let psi = match obj.get("psi_xx") {
        None => Matrix::zeros(n, n),
        Some(p) => matrix(p, n, n, &format!("{what}.psi_xx"))?,
    };
    Ok(ChartFile { chart, psi: TestFunction::new(psi, tol)? })
}

pub fn frame_rows(f: &LagrangianFrame) -> Value {
    let m = f.columns();
    Value::Array((0..m.nrows()).map(|i| Value::from((0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const TOL: Tolerances = Tolerances::DEFAULT;

    #[test]
    fn matrices_accept_nested_flat_and_scalar() {
        let a = matrix(&json!([[1, 2], [3, 4]]), 2, 2, "m").unwrap();
        let b = matrix(&json!([1, 2, 3, 4]), 2, 2, "m").unwrap();
        assert_eq!(a, b);
        assert_eq!(a[(0, 1)], 2.0);
        assert_eq!(matrix(&json!(-1.5), 1, 1, "m").unwrap()[(0, 0)], -1.5);
        assert!(matrix(&json!([[1, 2], [3]]), 2, 2, "m").is_err());
        assert!(matrix(&json!([1, 2, 3]), 2, 2, "m").is_err());
        assert_eq!(matrix_any(&json!([0, 1, 0, 0]), "d").unwrap().shape(), (4, 1));
    }

    #[test]
    fn frames_and_keywords() {
        let v = frame(&json!("vertical"), Some(2), &TOL, "f").unwrap();
        assert!(v.same_subspace(&LagrangianFrame::vertical(2), &TOL).unwrap());
        assert!(frame(&json!("vertical"), None, &TOL, "f").is_err());
        let f = frame(&json!([[1], [1]]), None, &TOL, "f").unwrap();
        assert_eq!(f.n(), 1);
        assert_eq!(frame_dim(&json!([1, 0, 0, 0, 0, 0, 1, 0])), Some(2));
        // span{e1, f1} is symplectic, not Lagrangian
        assert_eq!(frame(&json!([[1, 0], [0, 0], [0, 1], [0, 0]]), None, &TOL, "f").unwrap_err().class, crate::report::Class::Input);
    }

    #[test]
    fn path_specs() {
        let g = path(&json!({"kind": "generator", "n": 1, "winding": 1, "resolution": 64}), 0, &TOL, "p").unwrap();
        assert!(g.is_closed());
        assert!(path(&json!({"kind": "generator", "n": 1, "resolution": 8}), 0, &TOL, "p").is_err());
        assert!(path(&json!({"kind": "spiral", "n": 1}), 0, &TOL, "p").is_err());
        let c = path(&json!({"n": 1, "samples": [[[1], [0]], [[1], [0]]], "closed": true}), 0, &TOL, "p").unwrap();
        assert_eq!(c.len(), 2);
        let open = path(&json!({"n": 1, "samples": [[1, 0], [1, 1]], "params": [0, 1]}), 0, &TOL, "p").unwrap();
        assert!(!open.is_closed());
    }

    #[test]
    fn chart_file() {
        let c = chart(
            &json!({"n": 1, "N": 1, "hess_xx": [[0]], "hess_xtheta": [[1]], "hess_thetatheta": [[-1]], "psi_xx": [[0]]}),
            &TOL,
            "c",
        )
        .unwrap();
        assert_eq!(c.chart.fiber_dim(), 1);
        assert!(chart(&json!({"n": 1, "N": 1, "hess_xx": 0, "hess_xtheta": 0, "hess_thetatheta": 0}), &TOL, "c").is_err());
    }
}
