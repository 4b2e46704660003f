//! Whole-function checks used by the conjugacy table and the fixtures.

use serde_json::{json, Value};

use crate::lattice::Point;
use crate::lp::envelope_value;
use crate::model::{Ext, LatticeFunction};
use crate::rat::Rat;
use crate::error::Result;

/// A lattice point of the hull where the convex closure falls below f.
/// Outside the domain f is +∞, so any hull point missing from the domain
/// is a gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGap {
    pub x: Point,
    pub closure: Ext,
    pub value: Ext,
}

impl ExtensionGap {
    pub fn to_json(&self) -> Value {
        json!({"x": self.x, "closure": self.closure.to_string(), "value": self.value.to_string()})
    }
}

fn gap_at(pairs: &[(Point, Rat)], active: &[usize], f: &LatticeFunction, x: &[i64]) -> Option<ExtensionGap> {
    let z: Vec<Rat> = x.iter().map(|&v| Rat::int(v)).collect();
    let closure = envelope_value(pairs, &z, active);
    let value = f.eval_raw(x);
    (closure.is_finite() && closure < value).then(|| ExtensionGap { x: x.to_vec(), closure, value })
}

/// Scans the lattice points of the bounding box, or only `at` when given.
pub fn convex_extension_gap(f: &LatticeFunction, at: Option<&[i64]>) -> Result<Option<ExtensionGap>> {
    let pairs: Vec<(Point, Rat)> = f.iter().map(|(x, v)| (x.clone(), v.clone())).collect();
    let active: Vec<usize> = (0..f.dim()).collect();
    if let Some(x) = at {
        crate::lattice::check_pair(x, &pairs[0].0)?;
        return Ok(gap_at(&pairs, &active, f, x));
    }
    let tight = f.tight();
    Ok(tight.window().points().find_map(|x| gap_at(&pairs, &active, f, &x)))
}

/// Same scan restricted to the given candidate points.
pub fn convex_extension_gap_among(f: &LatticeFunction, candidates: &[Point]) -> Option<ExtensionGap> {
    let pairs: Vec<(Point, Rat)> = f.iter().map(|(x, v)| (x.clone(), v.clone())).collect();
    let active: Vec<usize> = (0..f.dim()).collect();
    candidates.iter().find_map(|x| gap_at(&pairs, &active, f, x))
}
