//! JSON documents for functions and sets.
//!
//! function: `{"kind":"function","dim":n,"window":{"lo":[..],"hi":[..]},"values":[{"x":[..],"v":"p/q"}]}`
//! set:      `{"kind":"set","dim":n,"points":[[..],..]}` with an optional `"window"`.
//!
//! Values are strings holding an integer or a reduced-or-not fraction; plain
//! JSON integers are also accepted. `"inf"` is rejected: omit the point.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{DcaError, Result};
use crate::lattice::Point;
use crate::model::{LatticeFunction, LatticeSet, Window, COORD_LIMIT};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Function(LatticeFunction),
    Set(LatticeSet),
}

impl Object {
    pub fn dim(&self) -> usize {
        match self {
            Object::Function(f) => f.dim(),
            Object::Set(s) => s.dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Object::Function(_) => "function",
            Object::Set(_) => "set",
        }
    }
}

fn perr(msg: impl Into<String>) -> DcaError {
    DcaError::Parse(msg.into())
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| perr(format!("missing field `{name}`")))
}

fn parse_point(v: &Value, dim: usize, what: &str) -> Result<Point> {
    let arr = v.as_array().ok_or_else(|| perr(format!("{what}: expected an array of integers")))?;
    if arr.len() != dim {
        return Err(DcaError::DimensionMismatch { expected: dim, found: arr.len() });
    }
    arr.iter()
        .map(|c| {
            let k = c.as_i64().ok_or_else(|| perr(format!("{what}: `{c}` is not an integer")))?;
            if k.abs() > COORD_LIMIT {
                return Err(perr(format!("{what}: coordinate {k} exceeds ±2^31")));
            }
            Ok(k)
        })
        .collect()
}

pub fn parse_rat_value(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => s.parse::<Rat>().map_err(|e| perr(e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(Rat::int)
            .ok_or_else(|| perr(format!("value `{n}` is not an integer; use a \"p/q\" string"))),
        other => Err(perr(format!("value `{other}` is not a rational string"))),
    }
}

pub fn parse_window(v: &Value, dim: usize) -> Result<Window> {
    let obj = v.as_object().ok_or_else(|| perr("window: expected an object"))?;
    let lo = parse_point(field(obj, "lo")?, dim, "window.lo")?;
    let hi = parse_point(field(obj, "hi")?, dim, "window.hi")?;
    Window::new(lo, hi)
}

pub fn window_json(w: &Window) -> Value {
    json!({"lo": w.lo(), "hi": w.hi()})
}

pub fn from_value(v: &Value) -> Result<Object> {
    let obj = v.as_object().ok_or_else(|| perr("expected a JSON object"))?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| perr("`kind` must be a string"))?;
    let dim = field(obj, "dim")?.as_u64().ok_or_else(|| perr("`dim` must be a nonnegative integer"))? as usize;
    if dim == 0 {
        return Err(DcaError::ZeroDimension);
    }
    match kind {
        "function" => {
            let window = parse_window(field(obj, "window")?, dim)?;
            let vals = field(obj, "values")?.as_array().ok_or_else(|| perr("`values` must be an array"))?;
            let mut map = BTreeMap::new();
            for (k, e) in vals.iter().enumerate() {
                let eo = e.as_object().ok_or_else(|| perr(format!("values[{k}]: expected an object")))?;
                let x = parse_point(field(eo, "x")?, dim, &format!("values[{k}].x"))?;
                let val = parse_rat_value(field(eo, "v")?)?;
                if map.insert(x.clone(), val).is_some() {
                    return Err(perr(format!("values[{k}]: duplicate point {x:?}")));
                }
            }
            Ok(Object::Function(LatticeFunction::new(window, map)?))
        }
        "set" => {
            let pts = field(obj, "points")?.as_array().ok_or_else(|| perr("`points` must be an array"))?;
            let points = pts
                .iter()
                .enumerate()
                .map(|(k, p)| parse_point(p, dim, &format!("points[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            if points.is_empty() {
                return Err(DcaError::EmptyDomain);
            }
            match obj.get("window") {
                Some(w) => Ok(Object::Set(LatticeSet::with_window(points, parse_window(w, dim)?)?)),
                None => Ok(Object::Set(LatticeSet::new(points)?)),
            }
        }
        other => Err(perr(format!("unknown kind `{other}`"))),
    }
}

pub fn function_json(f: &LatticeFunction) -> Value {
    let values: Vec<Value> = f.iter().map(|(x, v)| json!({"x": x, "v": v.to_string()})).collect();
    json!({"kind": "function", "dim": f.dim(), "window": window_json(f.window()), "values": values})
}

/// The window is written only when it differs from the bounding box.
pub fn set_json(s: &LatticeSet) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!("set"));
    m.insert("dim".into(), json!(s.dim()));
    m.insert("points".into(), json!(s.to_vec()));
    if *s.window() != s.bounding_box() {
        m.insert("window".into(), window_json(s.window()));
    }
    Value::Object(m)
}

pub fn to_value(o: &Object) -> Value {
    match o {
        Object::Function(f) => function_json(f),
        Object::Set(s) => set_json(s),
    }
}

pub fn parse_str(s: &str) -> Result<Object> {
    let v: Value = serde_json::from_str(s).map_err(|e| perr(e.to_string()))?;
    from_value(&v)
}

pub fn parse_bytes(b: &[u8]) -> Result<Object> {
    let v: Value = serde_json::from_slice(b).map_err(|e| perr(e.to_string()))?;
    from_value(&v)
}

pub fn load(path: impl AsRef<Path>) -> Result<Object> {
    let bytes = std::fs::read(path.as_ref()).map_err(|e| DcaError::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_bytes(&bytes)
}

pub fn to_string(o: &Object) -> String {
    serde_json::to_string_pretty(&to_value(o)).expect("json")
}

pub fn store(o: &Object, path: impl AsRef<Path>) -> Result<Vec<u8>> {
    let mut bytes = to_string(o).into_bytes();
    bytes.push(b'\n');
    std::fs::write(path.as_ref(), &bytes).map_err(|e| DcaError::Io(format!("{}: {e}", path.as_ref().display())))?;
    Ok(bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_document() {
        let o = parse_str(r#"{"kind":"set","dim":1,"points":[[0],[2]]}"#).unwrap();
        match &o {
            Object::Set(s) => assert_eq!(s.to_vec(), vec![vec![0], vec![2]]),
            _ => panic!("expected set"),
        }
        assert_eq!(parse_str(&to_string(&o)).unwrap(), o);
    }

    #[test]
    fn missing_dim_is_named() {
        let e = parse_str(r#"{"kind":"set","points":[[0]]}"#).unwrap_err();
        assert!(e.to_string().contains("`dim`"), "{e}");
    }

    #[test]
    fn function_values() {
        let doc = r#"{"kind":"function","dim":2,"window":{"lo":[0,0],"hi":[1,1]},
            "values":[{"x":[0,0],"v":"−1/2"},{"x":[1,1],"v":"4/6"}]}"#;
        let o = parse_str(doc).unwrap();
        let Object::Function(f) = &o else { panic!() };
        assert_eq!(f.get(&[0, 0]), Some(&Rat::frac(-1, 2)));
        assert_eq!(f.get(&[1, 1]), Some(&Rat::frac(2, 3)));
        assert_eq!(parse_str(&to_string(&o)).unwrap(), o);
    }

    #[test]
    fn rejects_bad_documents() {
        let inf = r#"{"kind":"function","dim":1,"window":{"lo":[0],"hi":[1]},"values":[{"x":[0],"v":"inf"}]}"#;
        assert!(parse_str(inf).is_err());
        let outside = r#"{"kind":"function","dim":1,"window":{"lo":[0],"hi":[1]},"values":[{"x":[5],"v":"1"}]}"#;
        assert!(matches!(parse_str(outside), Err(DcaError::OutsideWindow { .. })));
        let dims = r#"{"kind":"set","dim":2,"points":[[0]]}"#;
        assert!(matches!(parse_str(dims), Err(DcaError::DimensionMismatch { .. })));
        let empty = r#"{"kind":"function","dim":1,"window":{"lo":[0],"hi":[1]},"values":[]}"#;
        assert!(matches!(parse_str(empty), Err(DcaError::EmptyDomain)));
    }
}
