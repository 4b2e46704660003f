//! Counterexample and illustration fixtures.
//!
//! A fixture is a handful of named objects in the function-model JSON format,
//! a list of derivation steps producing further objects, and a list of
//! claims about them. Every claim is re-derived by the checkers when the
//! fixture runs; nothing is taken on trust.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{
    check_fn, check_set, quadratic_multimodular, recheck, to_bidiagonal_preimage, FnClass, SetClass, Witness,
};
use crate::conjugacy::{biconjugate_at, conjugate, has_integer_subgradient, subdifferential_box};
use crate::error::{DcaError, Result};
use crate::io::{self, Object};
use crate::lattice::{join_raw, meet_raw, mid_ceil, mid_floor, HalfPoint, Point};
use crate::lp::{hull_membership, local_extension_value};
use crate::model::{Ext, LatticeFunction, LatticeSet, Window};
use crate::rat::Rat;
use crate::transform::{
    apply_change, apply_change_set, convolve, intersect, intersect_box, minkowski, project, project_set, restrict,
    restrict_box, restrict_set, value_scale, CoordinateChange,
};

use super::checks::convex_extension_gap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub summary: String,
    pub objects: BTreeMap<String, Value>,
    #[serde(default)]
    pub derive: Vec<Derivation>,
    pub expected: Vec<Claim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub lo: Point,
    pub hi: Point,
}

impl WindowSpec {
    pub fn window(&self) -> Result<Window> {
        Window::new(self.lo.clone(), self.hi.clone())
    }
}

impl From<&Window> for WindowSpec {
    fn from(w: &Window) -> WindowSpec {
        WindowSpec { lo: w.lo().to_vec(), hi: w.hi().to_vec() }
    }
}

/// One derived object. Coordinate lists and permutations are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub name: String,
    #[serde(flatten)]
    pub step: Step,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Step {
    Shift { input: String, by: Point },
    InvertAll { input: String },
    InvertSigns { input: String, signs: Vec<i64> },
    /// Coordinate i of the input becomes coordinate sigma[i] of the output.
    Permute { input: String, sigma: Vec<usize> },
    Varscale { input: String, alpha: i64 },
    ValueScale { input: String, factor: Rat },
    Restrict { input: String, coords: Vec<usize> },
    Project { input: String, coords: Vec<usize> },
    IntersectBox { input: String, window: WindowSpec },
    /// Sum of functions; intersection when every input is a set.
    Add { inputs: Vec<String> },
    /// Infimal convolution; Minkowski sum when every input is a set.
    Convolve { inputs: Vec<String> },
    /// Cut to a window on which the exact result is known to agree.
    Reframe { input: String, window: WindowSpec },
    Conjugate { input: String, window: WindowSpec },
}

impl Step {
    pub fn inputs(&self) -> Vec<&str> {
        match self {
            Step::Add { inputs } | Step::Convolve { inputs } => inputs.iter().map(String::as_str).collect(),
            Step::Shift { input, .. }
            | Step::InvertAll { input }
            | Step::InvertSigns { input, .. }
            | Step::Permute { input, .. }
            | Step::Varscale { input, .. }
            | Step::ValueScale { input, .. }
            | Step::Restrict { input, .. }
            | Step::Project { input, .. }
            | Step::IntersectBox { input, .. }
            | Step::Reframe { input, .. }
            | Step::Conjugate { input, .. } => vec![input.as_str()],
        }
    }

    fn change(&self) -> Option<CoordinateChange> {
        Some(match self {
            Step::Shift { by, .. } => CoordinateChange::Shift(by.clone()),
            Step::InvertAll { .. } => CoordinateChange::InvertAll,
            Step::InvertSigns { signs, .. } => CoordinateChange::InvertSigns(signs.clone()),
            Step::Permute { sigma, .. } => CoordinateChange::Permute(sigma.iter().map(|s| s.wrapping_sub(1)).collect()),
            Step::Varscale { alpha, .. } => CoordinateChange::VarScale(*alpha),
            _ => return None,
        })
    }
}

/// A violation as printed alongside an example; indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum Cited {
    Midpoint { x: Point, y: Point },
    Submodular { x: Point, y: Point },
    LocalExtension { x: Point, y: Point },
    HullLocal { x: Point, y: Point },
    MnatExchange { x: Point, y: Point, i: usize },
    MExchange { x: Point, y: Point, i: usize },
    JumpNatExchange { x: Point, y: Point, s: Point },
    /// The inner violation lives on the preimage g(p) = f(Dp).
    Bidiagonal { inner: Box<Cited> },
}

fn pair(f: &LatticeFunction, x: &[i64], y: &[i64]) -> Ext {
    f.eval_raw(x) + f.eval_raw(y)
}

impl Cited {
    /// The matching checker witness, with the values filled in from f.
    pub fn to_witness(&self, f: &LatticeFunction) -> Witness {
        match self {
            Cited::Midpoint { x, y } => Witness::Midpoint {
                x: x.clone(),
                y: y.clone(),
                lhs: pair(f, x, y),
                rhs: pair(f, &mid_ceil(x, y), &mid_floor(x, y)),
            },
            Cited::Submodular { x, y } => Witness::Submodular {
                x: x.clone(),
                y: y.clone(),
                lhs: pair(f, x, y),
                rhs: pair(f, &join_raw(x, y), &meet_raw(x, y)),
            },
            Cited::LocalExtension { x, y } => {
                let z = HalfPoint::midpoint(x, y).expect("same dimension");
                let extension = local_extension_value(f, &z).unwrap_or(Ext::Inf);
                let average = match pair(f, x, y) {
                    Ext::Fin(s) => s * Rat::half(),
                    Ext::Inf => Rat::zero(),
                };
                Witness::LocalExtension { x: x.clone(), y: y.clone(), extension, average }
            }
            Cited::HullLocal { x, y } => Witness::HullLocal { x: x.clone(), y: y.clone() },
            Cited::MnatExchange { x, y, i } => Witness::ExchangeMNat {
                x: x.clone(),
                y: y.clone(),
                i: i.wrapping_sub(1),
                lhs: pair(f, x, y),
                best: Ext::Inf,
            },
            Cited::MExchange { x, y, i } => {
                Witness::ExchangeM { x: x.clone(), y: y.clone(), i: i.wrapping_sub(1), lhs: pair(f, x, y), best: Ext::Inf }
            }
            Cited::JumpNatExchange { x, y, s } => Witness::JumpNatExchange {
                x: x.clone(),
                y: y.clone(),
                s: s.clone(),
                lhs: pair(f, x, y),
                best: Ext::Inf,
            },
            Cited::Bidiagonal { inner } => {
                let g = to_bidiagonal_preimage(f).unwrap_or_else(|_| f.clone());
                Witness::Bidiagonal(Box::new(inner.to_witness(&g)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "claim", rename_all = "kebab-case")]
pub enum Claim {
    /// Membership of an object in a set class or function class. A set
    /// tested against a function class is tested through its indicator; a
    /// function tested against a set class is tested through its domain.
    Class {
        object: String,
        class: String,
        holds: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<Cited>,
    },
    /// Exact equality of domains and values; windows are ignored.
    Equals { object: String, expected: Value },
    /// The point lies in the convex hull but not in the set.
    HullHole { object: String, point: Point },
    LocalExtension { object: String, x: Point, y: Point, extension: Rat, average: Rat },
    Value { object: String, at: Point, value: String },
    Biconjugate { object: String, at: Point, value: String },
    IntegerSubgradient { object: String, at: Point, holds: bool },
    SubgradientBox { object: String, at: Point, lo: Vec<Rat>, hi: Vec<Rat> },
    /// Whether the convex closure agrees with f at every lattice point of
    /// the hull; `point`, when given, must be a place where it does not.
    ConvexExtension {
        object: String,
        holds: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        point: Option<Point>,
    },
    Argmin { object: String, expected: Value },
    QuadraticMultimodular { matrix: Vec<Vec<i64>>, holds: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassRef {
    Set(SetClass),
    Fn(FnClass),
}

impl ClassRef {
    pub fn parse(s: &str) -> Result<ClassRef> {
        s.parse::<SetClass>()
            .map(ClassRef::Set)
            .or_else(|_| s.parse::<FnClass>().map(ClassRef::Fn))
            .map_err(|_| DcaError::InvalidArgument(format!("unknown class `{s}`")))
    }
}

/// Verdict of an object against a class, plus whether the checker's own
/// witness (if any) survives re-evaluation.
pub fn judge(o: &Object, class: &ClassRef) -> (bool, Option<Witness>, bool) {
    let f = as_function(o);
    let v = match class {
        ClassRef::Set(c) => check_set(&f.support_set(), *c),
        ClassRef::Fn(c) => check_fn(&f, *c),
    };
    let rechecked = match (&v.witness, class) {
        (Some(w), ClassRef::Set(_)) => recheck(&LatticeFunction::indicator(&f.support_set()), w),
        (Some(w), ClassRef::Fn(_)) => recheck(&f, w),
        (None, _) => true,
    };
    (v.holds, v.witness, rechecked)
}

pub fn as_function(o: &Object) -> LatticeFunction {
    match o {
        Object::Function(f) => f.clone(),
        Object::Set(s) => LatticeFunction::indicator(s),
    }
}

fn coords0(c: &[usize]) -> Vec<usize> {
    c.iter().map(|i| i.wrapping_sub(1)).collect()
}

fn apply_step(step: &Step, objs: &BTreeMap<String, Object>) -> Result<Object> {
    let get = |name: &str| {
        objs.get(name).cloned().ok_or_else(|| DcaError::InvalidArgument(format!("unknown object `{name}`")))
    };
    if let Some(c) = step.change() {
        return Ok(match get(step.inputs()[0])? {
            Object::Set(s) => Object::Set(apply_change_set(&s, &c)?),
            Object::Function(f) => Object::Function(apply_change(&f, &c)?),
        });
    }
    Ok(match step {
        Step::ValueScale { input, factor } => Object::Function(value_scale(&as_function(&get(input)?), factor)?),
        Step::Restrict { input, coords } => match get(input)? {
            Object::Set(s) => Object::Set(restrict_set(&s, &coords0(coords))?),
            Object::Function(f) => Object::Function(restrict(&f, &coords0(coords))?),
        },
        Step::Project { input, coords } => match get(input)? {
            Object::Set(s) => Object::Set(project_set(&s, &coords0(coords))?),
            Object::Function(f) => Object::Function(project(&f, &coords0(coords))?),
        },
        Step::IntersectBox { input, window } => match get(input)? {
            Object::Set(s) => Object::Set(intersect_box(&s, &window.window()?)?),
            Object::Function(f) => Object::Function(restrict_box(&f, &window.window()?)?),
        },
        Step::Reframe { input, window } => {
            let w = window.window()?;
            match get(input)? {
                Object::Set(s) => {
                    let pts: Vec<Point> = s.points().iter().filter(|x| w.contains(x)).cloned().collect();
                    Object::Set(LatticeSet::with_window(pts, w)?)
                }
                Object::Function(f) => Object::Function(f.with_window(w)?),
            }
        }
        Step::Conjugate { input, window } => {
            Object::Function(conjugate(&as_function(&get(input)?), &window.window()?)?.function)
        }
        Step::Add { inputs } | Step::Convolve { inputs } => {
            let ops: Vec<Object> = inputs.iter().map(|n| get(n)).collect::<Result<_>>()?;
            if ops.is_empty() {
                return Err(DcaError::InvalidArgument("no inputs".into()));
            }
            let sum = matches!(step, Step::Add { .. });
            if ops.iter().all(|o| matches!(o, Object::Set(_))) {
                let sets: Vec<LatticeSet> = ops
                    .into_iter()
                    .map(|o| match o {
                        Object::Set(s) => s,
                        Object::Function(_) => unreachable!(),
                    })
                    .collect();
                let mut acc = sets[0].clone();
                for s in &sets[1..] {
                    acc = if sum { intersect(&acc, s)? } else { minkowski(&acc, s)? };
                }
                Object::Set(acc)
            } else {
                let fs: Vec<LatticeFunction> = ops.iter().map(as_function).collect();
                let mut acc = fs[0].clone();
                for f in &fs[1..] {
                    acc = if sum { crate::transform::add(&acc, f)? } else { convolve(&acc, f)? };
                }
                Object::Function(acc)
            }
        }
        _ => unreachable!("coordinate changes handled above"),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimOutcome {
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixtureOutcome {
    pub id: String,
    pub passed: bool,
    pub claims: Vec<ClaimOutcome>,
    pub error: Option<String>,
}

impl FixtureOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "outcome": if self.passed { "pass" } else { "fail" },
            "claims": self.claims.iter().map(|c| json!({
                "outcome": if c.passed { "pass" } else { "fail" },
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "error": self.error,
        })
    }
}

fn same_object(a: &Object, b: &Object) -> bool {
    as_function(a).values() == as_function(b).values()
}

fn ext_str(e: &Ext) -> String {
    e.to_string()
}

fn parse_ext(s: &str) -> Result<Ext> {
    if s == "+inf" {
        Ok(Ext::Inf)
    } else {
        Ok(Ext::Fin(s.parse::<Rat>().map_err(|e| DcaError::Parse(e.to_string()))?))
    }
}

impl Fixture {
    /// Base objects and every derived object, by name.
    pub fn evaluate(&self) -> Result<BTreeMap<String, Object>> {
        let mut objs = BTreeMap::new();
        for (name, v) in &self.objects {
            objs.insert(name.clone(), io::from_value(v)?);
        }
        for d in &self.derive {
            let o = apply_step(&d.step, &objs)
                .map_err(|e| DcaError::InvalidArgument(format!("deriving `{}`: {e}", d.name)))?;
            objs.insert(d.name.clone(), o);
        }
        Ok(objs)
    }

    pub fn step_of(&self, name: &str) -> Option<&Step> {
        self.derive.iter().find(|d| d.name == name).map(|d| &d.step)
    }

    pub fn run(&self) -> FixtureOutcome {
        let objs = match self.evaluate() {
            Ok(o) => o,
            Err(e) => {
                return FixtureOutcome { id: self.id.clone(), passed: false, claims: vec![], error: Some(e.to_string()) }
            }
        };
        let claims: Vec<ClaimOutcome> = self
            .expected
            .iter()
            .map(|c| match eval_claim(c, &objs) {
                Ok(o) => o,
                Err(e) => ClaimOutcome {
                    passed: false,
                    detail: json!({"claim": serde_json::to_value(c).expect("json"), "error": e.to_string()}),
                },
            })
            .collect();
        FixtureOutcome { id: self.id.clone(), passed: claims.iter().all(|c| c.passed), claims, error: None }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("fixtures serialize")
    }

    pub fn to_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixtures serialize");
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Result<Fixture> {
        serde_json::from_value(v.clone()).map_err(|e| DcaError::Parse(e.to_string()))
    }
}

fn eval_claim(c: &Claim, objs: &BTreeMap<String, Object>) -> Result<ClaimOutcome> {
    let get = |name: &str| objs.get(name).ok_or_else(|| DcaError::InvalidArgument(format!("unknown object `{name}`")));
    let claim = serde_json::to_value(c).expect("json");
    let out = |passed: bool, extra: Value| ClaimOutcome { passed, detail: json!({"claim": claim, "observed": extra}) };
    Ok(match c {
        Claim::Class { object, class, holds, witness } => {
            let o = get(object)?;
            let cls = ClassRef::parse(class)?;
            let (v, w, rechecked) = judge(o, &cls);
            let mut ok = v == *holds && rechecked;
            let mut cited_ok = Value::Null;
            if let Some(cw) = witness {
                let f = match cls {
                    ClassRef::Set(_) => LatticeFunction::indicator(&as_function(o).support_set()),
                    ClassRef::Fn(_) => as_function(o),
                };
                let r = recheck(&f, &cw.to_witness(&f));
                ok &= r;
                cited_ok = json!(r);
            }
            out(
                ok,
                json!({"holds": v, "witness": w.as_ref().map(Witness::to_json), "witness_rechecked": rechecked, "cited_rechecked": cited_ok}),
            )
        }
        Claim::Equals { object, expected } => {
            let e = io::from_value(expected)?;
            out(same_object(get(object)?, &e), io::to_value(get(object)?))
        }
        Claim::HullHole { object, point } => {
            let s = as_function(get(object)?).support_set();
            let z: Vec<Rat> = point.iter().map(|&v| Rat::int(v)).collect();
            let inside = hull_membership(&s, &z)?;
            let absent = !s.contains(point);
            out(inside && absent, json!({"in_hull": inside, "absent": absent}))
        }
        Claim::LocalExtension { object, x, y, extension, average } => {
            let f = as_function(get(object)?);
            let z = HalfPoint::midpoint(x, y)?;
            let ext = local_extension_value(&f, &z)?;
            let avg = match pair(&f, x, y) {
                Ext::Fin(s) => Ext::Fin(s * Rat::half()),
                Ext::Inf => Ext::Inf,
            };
            let ok = ext == Ext::Fin(extension.clone()) && avg == Ext::Fin(average.clone());
            out(ok, json!({"extension": ext_str(&ext), "average": ext_str(&avg)}))
        }
        Claim::Value { object, at, value } => {
            let v = as_function(get(object)?).eval(at)?;
            out(v == parse_ext(value)?, json!(ext_str(&v)))
        }
        Claim::Biconjugate { object, at, value } => {
            let b = biconjugate_at(&as_function(get(object)?), at)?;
            out(b.value == parse_ext(value)?, b.to_json())
        }
        Claim::IntegerSubgradient { object, at, holds } => {
            let s = has_integer_subgradient(&as_function(get(object)?), at)?;
            out(s.holds == *holds, s.to_json())
        }
        Claim::SubgradientBox { object, at, lo, hi } => {
            let b = subdifferential_box(&as_function(get(object)?), at)?;
            let want = |v: &[Rat]| v.iter().cloned().map(Some).collect::<Vec<_>>();
            out(!b.empty && b.lo == want(lo) && b.hi == want(hi), b.to_json())
        }
        Claim::ConvexExtension { object, holds, point } => {
            let f = as_function(get(object)?);
            let gap = convex_extension_gap(&f, point.as_deref())?;
            let ok = gap.is_none() == *holds && (point.is_none() || *holds || gap.is_some());
            out(ok, json!(gap.map(|g| g.to_json())))
        }
        Claim::Argmin { object, expected } => {
            let f = as_function(get(object)?);
            let e = as_function(&io::from_value(expected)?);
            let got: Vec<Point> = f.argmin();
            let want: Vec<Point> = e.iter().map(|(x, _)| x.clone()).collect();
            out(got == want, json!(got))
        }
        Claim::QuadraticMultimodular { matrix, holds } => {
            let a: Vec<Vec<Rat>> = matrix.iter().map(|r| r.iter().map(|&v| Rat::int(v)).collect()).collect();
            let v = quadratic_multimodular(&a);
            out(v == *holds, json!(v))
        }
    })
}

// ---------------------------------------------------------------------------
// Registry

fn pt(x: &[i64]) -> Point {
    x.to_vec()
}

fn pts(a: &[&[i64]]) -> Vec<Point> {
    a.iter().map(|x| x.to_vec()).collect()
}

fn set_value(points: Vec<Point>) -> Value {
    io::set_json(&LatticeSet::new(points).expect("nonempty fixture set"))
}

fn set_value_in(points: Vec<Point>, w: Window) -> Value {
    io::set_json(&LatticeSet::with_window(points, w).expect("fixture set inside its window"))
}

fn fn_value(f: &LatticeFunction) -> Value {
    io::function_json(f)
}

fn cube(n: usize, lo: i64, hi: i64) -> Window {
    Window::cube(n, lo, hi).expect("valid cube")
}

fn win(lo: &[i64], hi: &[i64]) -> Window {
    Window::new(lo.to_vec(), hi.to_vec()).expect("valid window")
}

fn spec(w: &Window) -> WindowSpec {
    WindowSpec::from(w)
}

/// {t·d : t ∈ ℤ} cut to the cube [−r, r]ⁿ.
fn line(d: &[i64], r: i64) -> (Vec<Point>, Window) {
    let w = cube(d.len(), -r, r);
    let pts = (-r..=r).map(|t| d.iter().map(|c| c * t).collect::<Point>()).filter(|x| w.contains(x)).collect();
    (pts, w)
}

/// B + {t𝟏 : t ∈ ℤ} cut to the cube [−r, r]ⁿ.
fn along_ones(base: &[Point], r: i64) -> (Vec<Point>, Window) {
    let n = base[0].len();
    let w = cube(n, -r, r);
    let mut out = Vec::new();
    for b in base {
        for t in -2 * r..=2 * r {
            let x: Point = b.iter().map(|c| c + t).collect();
            if w.contains(&x) {
                out.push(x);
            }
        }
    }
    (out, w)
}

fn function_from(w: Window, f: impl Fn(&[i64]) -> Option<i64>) -> LatticeFunction {
    LatticeFunction::from_fn(w, |x| f(x).map(Rat::int)).expect("nonempty fixture function")
}

fn indicator_fn(points: Vec<Point>, w: Option<Window>) -> LatticeFunction {
    let s = match w {
        Some(w) => LatticeSet::with_window(points, w),
        None => LatticeSet::new(points),
    }
    .expect("nonempty");
    LatticeFunction::indicator(&s)
}

struct Builder(Fixture);

impl Builder {
    fn new(id: &str, summary: &str) -> Builder {
        Builder(Fixture {
            id: id.into(),
            summary: summary.into(),
            objects: BTreeMap::new(),
            derive: vec![],
            expected: vec![],
        })
    }

    fn object(mut self, name: &str, v: Value) -> Builder {
        self.0.objects.insert(name.into(), v);
        self
    }

    fn set(self, name: &str, points: Vec<Point>) -> Builder {
        self.object(name, set_value(points))
    }

    fn set_in(self, name: &str, (points, w): (Vec<Point>, Window)) -> Builder {
        self.object(name, set_value_in(points, w))
    }

    fn func(self, name: &str, f: &LatticeFunction) -> Builder {
        self.object(name, fn_value(f))
    }

    fn step(mut self, name: &str, step: Step) -> Builder {
        self.0.derive.push(Derivation { name: name.into(), step });
        self
    }

    fn claim(mut self, c: Claim) -> Builder {
        self.0.expected.push(c);
        self
    }

    fn is(self, object: &str, class: &str, holds: bool) -> Builder {
        self.claim(Claim::Class { object: object.into(), class: class.into(), holds, witness: None })
    }

    fn cited(self, object: &str, class: &str, w: Cited) -> Builder {
        self.claim(Claim::Class { object: object.into(), class: class.into(), holds: false, witness: Some(w) })
    }

    fn equals(self, object: &str, expected: Value) -> Builder {
        self.claim(Claim::Equals { object: object.into(), expected })
    }

    fn hole(self, object: &str, point: &[i64]) -> Builder {
        self.claim(Claim::HullHole { object: object.into(), point: point.to_vec() })
    }

    fn build(self) -> Fixture {
        self.0
    }
}

fn s(x: &str) -> String {
    x.to_string()
}

fn names(a: &[&str]) -> Vec<String> {
    a.iter().map(|x| x.to_string()).collect()
}

fn mid(x: &[i64], y: &[i64]) -> Cited {
    Cited::Midpoint { x: pt(x), y: pt(y) }
}

/// The four-point multimodular set whose permutation and projection fail.
fn mm_four() -> Vec<Point> {
    pts(&[&[0, 0, 0], &[0, 1, -1], &[0, 1, 0], &[1, 0, 0]])
}

fn scaled_ic_set() -> Vec<Point> {
    let mut out = Vec::new();
    for x1 in 0..=4i64 {
        for x2 in 0..=2i64 {
            let d = x1 - x2;
            if x2 <= 1 && (0..=3).contains(&d) {
                out.push(vec![x1, x2, 0]);
            }
            if x2 <= x1 {
                out.push(vec![x1, x2, 1]);
            }
            if (1..=3).contains(&d) {
                out.push(vec![x1, x2, 2]);
            }
        }
    }
    out
}

fn scaled_ic_function() -> LatticeFunction {
    // rows x₂ = 2, 1, 0 from top, columns x₁ = 0..4, one block per x₃
    let blocks: [[[i64; 5]; 3]; 3] = [
        [[3, 1, 1, 1, 3], [1, 0, 0, 0, 0], [0, 0, 0, 0, 3]],
        [[2, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 0, 0]],
        [[3, 2, 1, 0, 0], [2, 1, 0, 0, 0], [3, 0, 0, 0, 3]],
    ];
    function_from(win(&[0, 0, 0], &[4, 2, 2]), |x| Some(blocks[x[2] as usize][(2 - x[1]) as usize][x[0] as usize]))
}

fn mnat_cube_sum() -> Vec<Point> {
    let gens = [[1, 0, -1], [1, 0, 0], [0, 1, -1], [0, 1, 0]];
    (0..16u32)
        .map(|m| (0..3).map(|k| (0..4).filter(|&g| m >> g & 1 == 1).map(|g| gens[g][k]).sum()).collect())
        .collect()
}

fn m_cube_sum() -> Vec<Point> {
    let gens = [[1, 0, -1, 0], [1, 0, 0, -1], [0, 1, -1, 0], [0, 1, 0, -1]];
    (0..16u32)
        .map(|m| (0..4).map(|k| (0..4).filter(|&g| m >> g & 1 == 1).map(|g| gens[g][k]).sum()).collect())
        .collect()
}

fn quad(a: &[[i64; 3]; 3]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.to_vec()).collect()
}

fn quadratic_fn(a: &[[i64; 3]; 3], w: Window) -> LatticeFunction {
    let ar: Vec<Vec<Rat>> = a.iter().map(|r| r.iter().map(|&v| Rat::int(v)).collect()).collect();
    LatticeFunction::quadratic(&ar, w).expect("quadratic")
}

fn jmnat_square(a: i64, b: i64) -> LatticeFunction {
    function_from(cube(2, 0, 1), |x| Some(if x[0] == x[1] { a } else { b }))
}

/// Every fixture, in a fixed order.
pub fn registry() -> Vec<Fixture> {
    let mut out = Vec::new();

    out.push(
        Builder::new("jumpdim1", "{0, 2} is a constant-parity jump system but not M♮-convex; its indicator has a parity gap at 1 where the convex closure and the biconjugate are 0 instead of +∞.")
            .set("S", pts(&[&[0], &[2]]))
            .is("S", "cp-jump", true)
            .is("S", "jump-system", true)
            .cited("S", "mnat-set", Cited::MnatExchange { x: pt(&[2]), y: pt(&[0]), i: 1 })
            .is("S", "jump-m", true)
            .is("S", "jump-mnat", true)
            .claim(Claim::ConvexExtension { object: s("S"), holds: false, point: Some(pt(&[1])) })
            .claim(Claim::Biconjugate { object: s("S"), at: pt(&[1]), value: s("0") })
            .claim(Claim::Biconjugate { object: s("S"), at: pt(&[2]), value: s("0") })
            .build(),
    );

    out.push(
        Builder::new("nonsejumpdim1", "{0, 2, 3} satisfies the 2-step axiom but not simultaneous exchange.")
            .set("S", pts(&[&[0], &[2], &[3]]))
            .is("S", "jump-system", true)
            .cited("S", "se-jump", Cited::JumpNatExchange { x: pt(&[0]), y: pt(&[3]), s: pt(&[1]) })
            .build(),
    );

    out.push(
        Builder::new("nonsejump", "A five-point delta-matroid in {0,1}³ that is a jump system without simultaneous exchange.")
            .set("S", pts(&[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]))
            .is("S", "jump-system", true)
            .cited("S", "se-jump", Cited::JumpNatExchange { x: pt(&[0, 0, 0]), y: pt(&[1, 1, 1]), s: pt(&[1, 0, 0]) })
            .build(),
    );

    out.push(
        Builder::new("jmnatmnat", "On {0,1}² with f = a on the diagonal and b off it, M♮-exchange holds iff a ≥ b while jump M♮-exchange always holds.")
            .func("f_a2_b1", &jmnat_square(2, 1))
            .func("f_a1_b2", &jmnat_square(1, 2))
            .func("f_a1_b1", &jmnat_square(1, 1))
            .is("f_a2_b1", "mnat", true)
            .is("f_a2_b1", "jump-mnat", true)
            .is("f_a1_b1", "mnat", true)
            .is("f_a1_b2", "mnat", false)
            .is("f_a1_b2", "jump-mnat", true)
            .build(),
    );

    out.push(
        Builder::new("lsetsigninv", "Flipping one sign of the diagonal line {(t,t)} gives the anti-diagonal, which is not L-, L♮- or midpoint convex.")
            .set_in("S", line(&[1, 1], 3))
            .step("T", Step::InvertSigns { input: s("S"), signs: vec![1, -1] })
            .is("S", "l-set", true)
            .is("S", "lnat-set", true)
            .is("S", "dmc-set", true)
            .is("T", "l-set", false)
            .is("T", "lnat-set", false)
            .is("T", "dmc-set", false)
            .build(),
    );

    out.push(
        Builder::new("msetsigninv", "Flipping one sign of the anti-diagonal {(t,−t)} gives the diagonal, which is not M-, M♮-convex or multimodular.")
            .set_in("S", line(&[1, -1], 3))
            .step("T", Step::InvertSigns { input: s("S"), signs: vec![1, -1] })
            .is("S", "m-set", true)
            .is("S", "mnat-set", true)
            .is("S", "multimodular-set", true)
            .is("T", "m-set", false)
            .is("T", "mnat-set", false)
            .is("T", "multimodular-set", false)
            .build(),
    );

    out.push(
        Builder::new("mmsetperm", "Swapping the first two coordinates of a multimodular set destroys multimodularity.")
            .set("S", mm_four())
            .step("T", Step::Permute { input: s("S"), sigma: vec![2, 1, 3] })
            .equals("T", set_value(pts(&[&[0, 0, 0], &[1, 0, -1], &[1, 0, 0], &[0, 1, 0]])))
            .is("S", "multimodular-set", true)
            .cited("T", "multimodular-set", Cited::Bidiagonal { inner: Box::new(mid(&[1, 1, 0], &[0, 1, 1])) })
            .build(),
    );

    out.push(
        Builder::new("mnatsetscdim3", "Scaling an M♮-convex set by 2 leaves two points at distance 2 in two coordinates, which is neither M♮-convex nor a simultaneous-exchange jump system.")
            .set("S", mnat_cube_sum())
            .step("T", Step::Varscale { input: s("S"), alpha: 2 })
            .equals("T", set_value(pts(&[&[0, 0, 0], &[1, 1, -1]])))
            .is("S", "mnat-set", true)
            .is("S", "se-jump", true)
            .is("T", "mnat-set", false)
            .is("T", "se-jump", false)
            .build(),
    );

    out.push(
        Builder::new("msetscdim3", "Scaling an M-convex set in ℤ⁴ by 2 gives a two-point set that is neither M-convex nor a constant-parity jump system.")
            .set("S", m_cube_sum())
            .step("T", Step::Varscale { input: s("S"), alpha: 2 })
            .equals("T", set_value(pts(&[&[0, 0, 0, 0], &[1, 1, -1, -1]])))
            .is("S", "m-set", true)
            .is("S", "cp-jump", true)
            .is("T", "m-set", false)
            .is("T", "cp-jump", false)
            .build(),
    );

    out.push(
        Builder::new("scICsetNG422", "An integrally convex set in ℤ³ whose 2-scaling is not integrally convex.")
            .set("S", scaled_ic_set())
            .step("T", Step::Varscale { input: s("S"), alpha: 2 })
            .equals("T", set_value(pts(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 1], &[2, 1, 1]])))
            .is("S", "ic-set", true)
            .cited("T", "ic-set", Cited::HullLocal { x: pt(&[0, 0, 0]), y: pt(&[2, 1, 1]) })
            .build(),
    );

    out.push(
        Builder::new("lsetrestr", "Restricting the diagonal line to the first coordinate gives {0}, which is not L-convex.")
            .set_in("S", line(&[1, 1], 3))
            .step("T", Step::Restrict { input: s("S"), coords: vec![1] })
            .equals("T", set_value(pts(&[&[0]])))
            .is("S", "l-set", true)
            .is("T", "l-set", false)
            .build(),
    );

    out.push(
        Builder::new("msetproj", "Projecting the anti-diagonal line onto one coordinate gives a full interval: not M-convex and not a constant-parity jump system.")
            .set_in("S", line(&[1, -1], 3))
            .step("T", Step::Project { input: s("S"), coords: vec![1] })
            .equals("T", set_value((-3..=3).map(|t| vec![t]).collect()))
            .is("S", "m-set", true)
            .is("S", "cp-jump", true)
            .is("T", "m-set", false)
            .is("T", "cp-jump", false)
            .build(),
    );

    out.push(
        Builder::new("mmsetproj", "Projecting a multimodular set onto coordinates 1 and 3 loses multimodularity.")
            .set("S", mm_four())
            .step("T", Step::Project { input: s("S"), coords: vec![1, 3] })
            .equals("T", set_value(pts(&[&[0, 0], &[0, -1], &[1, 0]])))
            .is("S", "multimodular-set", true)
            .cited("T", "multimodular-set", Cited::Bidiagonal { inner: Box::new(mid(&[0, -1], &[1, 1])) })
            .build(),
    );

    out.push(
        Builder::new("icsetinter", "Two integrally convex sets whose intersection is two points at distance 2.")
            .set("S1", pts(&[&[0, 0, 0], &[0, 1, 1], &[1, 1, 0], &[1, 2, 1]]))
            .set("S2", pts(&[&[0, 0, 0], &[0, 1, 0], &[1, 1, 1], &[1, 2, 1]]))
            .step("T", Step::Add { inputs: names(&["S1", "S2"]) })
            .equals("T", set_value(pts(&[&[0, 0, 0], &[1, 2, 1]])))
            .is("S1", "ic-set", true)
            .is("S2", "ic-set", true)
            .cited("T", "ic-set", Cited::HullLocal { x: pt(&[0, 0, 0]), y: pt(&[1, 2, 1]) })
            .build(),
    );

    let s0 = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1]]);
    let with = |extra: &[i64]| {
        let mut v = s0.clone();
        v.push(extra.to_vec());
        v
    };
    out.push(
        Builder::new("mnatsetinter", "Two M♮-convex sets whose intersection fails the M♮-exchange.")
            .set("S1", with(&[0, 1, 1]))
            .set("S2", with(&[1, 1, 0]))
            .step("S0", Step::Add { inputs: names(&["S1", "S2"]) })
            .equals("S0", set_value(s0.clone()))
            .is("S1", "mnat-set", true)
            .is("S2", "mnat-set", true)
            .cited("S0", "mnat-set", Cited::MnatExchange { x: pt(&[1, 0, 1]), y: pt(&[0, 1, 0]), i: 1 })
            .build(),
    );

    let m0 = pts(&[&[0, 0, 0, 0], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1], &[1, 0, 1, -2]]);
    let mwith = |extra: &[i64]| {
        let mut v = m0.clone();
        v.push(extra.to_vec());
        v
    };
    out.push(
        Builder::new("msetinter", "Two M-convex sets whose intersection is constant-sum but not M-convex, hence not a jump system at all.")
            .set("S1", mwith(&[0, 1, 1, -2]))
            .set("S2", mwith(&[1, 1, 0, -2]))
            .step("S0", Step::Add { inputs: names(&["S1", "S2"]) })
            .equals("S0", set_value(m0.clone()))
            .is("S1", "m-set", true)
            .is("S2", "m-set", true)
            .is("S1", "cp-jump", true)
            .is("S2", "se-jump", true)
            .cited("S0", "m-set", Cited::MExchange { x: pt(&[1, 0, 1, -2]), y: pt(&[0, 1, 0, -1]), i: 1 })
            .is("S0", "jump-system", false)
            .is("S0", "se-jump", false)
            .is("S0", "cp-jump", false)
            .build(),
    );

    out.push(
        Builder::new("lnatsetMinter2", "The intersection of the two M-convex sets above is still integrally convex.")
            .set("S1", mwith(&[0, 1, 1, -2]))
            .set("S2", mwith(&[1, 1, 0, -2]))
            .step("S0", Step::Add { inputs: names(&["S1", "S2"]) })
            .is("S0", "ic-set", true)
            .is("S0", "m-set", false)
            .build(),
    );

    out.push(
        Builder::new("icdim2sumhole", "The Minkowski sum of two integrally convex sets in ℤ² misses (1,1), a point of its hull.")
            .set("S1", pts(&[&[0, 0], &[1, 1]]))
            .set("S2", pts(&[&[1, 0], &[0, 1]]))
            .step("T", Step::Convolve { inputs: names(&["S1", "S2"]) })
            .equals("T", set_value(pts(&[&[1, 0], &[0, 1], &[2, 1], &[1, 2]])))
            .hole("T", &[1, 1])
            .is("S1", "ic-set", true)
            .is("S2", "ic-set", true)
            .is("S1", "dmc-set", true)
            .is("S2", "dmc-set", true)
            .is("T", "ic-set", false)
            .is("T", "dmc-set", false)
            .build(),
    );

    let l1 = pts(&[&[0, 0, 0], &[1, 1, 0]]);
    let l2 = pts(&[&[0, 0, 0], &[0, 1, 1]]);
    let l3 = pts(&[&[0, 0, 0], &[1, 0, 1]]);
    let l12 = pts(&[&[0, 0, 0], &[0, 1, 1], &[1, 1, 0], &[1, 2, 1]]);
    out.push(
        Builder::new("lnatsetMsum", "The Minkowski sum of two L♮-convex sets fails the discrete midpoint property.")
            .set("S1", l1.clone())
            .set("S2", l2.clone())
            .step("T", Step::Convolve { inputs: names(&["S1", "S2"]) })
            .equals("T", set_value(l12.clone()))
            .is("S1", "lnat-set", true)
            .is("S2", "lnat-set", true)
            .cited("T", "lnat-set", mid(&[0, 1, 1], &[1, 1, 0]))
            .is("T", "dmc-set", false)
            .build(),
    );

    let base1 = pts(&[&[0, 0, 0, 0], &[1, 1, 0, 0]]);
    let base2 = pts(&[&[0, 0, 0, 0], &[0, 1, 1, 0]]);
    out.push(
        Builder::new("lsetsum", "Adding the all-ones line to the two L♮-sets above gives L-convex sets whose Minkowski sum is not L-convex. The sets are cut to [−3,3]⁴; on [−2,4]⁴ the cut sum agrees with the exact one.")
            .set_in("S1", along_ones(&base1, 3))
            .set_in("S2", along_ones(&base2, 3))
            .step("T0", Step::Convolve { inputs: names(&["S1", "S2"]) })
            .step("T", Step::Reframe { input: s("T0"), window: spec(&cube(4, -2, 4)) })
            .is("S1", "l-set", true)
            .is("S2", "l-set", true)
            .cited("T", "l-set", Cited::Submodular { x: pt(&[0, 1, 1, 0]), y: pt(&[1, 1, 0, 0]) })
            .build(),
    );

    out.push(
        Builder::new("mmsetMsum", "A multimodular set plus an integer box is not multimodular.")
            .set("S1", pts(&[&[0, 0, 0], &[1, 0, -1]]))
            .set("S2", pts(&[&[0, 0, 0], &[0, 1, 0]]))
            .step("T", Step::Convolve { inputs: names(&["S1", "S2"]) })
            .equals("T", set_value(pts(&[&[0, 0, 0], &[1, 0, -1], &[0, 1, 0], &[1, 1, -1]])))
            .is("S1", "multimodular-set", true)
            .is("S2", "multimodular-set", true)
            .is("S2", "integer-box", true)
            .cited("T", "multimodular-set", Cited::Bidiagonal { inner: Box::new(mid(&[0, 1, 1], &[1, 1, 0])) })
            .build(),
    );

    out.push(
        Builder::new("lnatsetMsum2", "The Minkowski sum of the two L♮-sets is not L♮-convex but is integrally convex.")
            .set("S1", l1.clone())
            .set("S2", l2.clone())
            .step("T", Step::Convolve { inputs: names(&["S1", "S2"]) })
            .is("T", "ic-set", true)
            .is("T", "lnat-set", false)
            .build(),
    );

    out.push(
        Builder::new("minkow3lnatset", "The Minkowski sum of three L♮-sets has a hole at (1,1,1); it is also the sum of two integrally convex sets.")
            .set("S1", l1.clone())
            .set("S2", l2.clone())
            .set("S3", l3.clone())
            .step("S23", Step::Convolve { inputs: names(&["S2", "S3"]) })
            .step("S", Step::Convolve { inputs: names(&["S1", "S23"]) })
            .equals(
                "S",
                set_value(pts(&[
                    &[0, 0, 0],
                    &[0, 1, 1],
                    &[1, 1, 0],
                    &[1, 0, 1],
                    &[2, 1, 1],
                    &[1, 1, 2],
                    &[1, 2, 1],
                    &[2, 2, 2],
                ])),
            )
            .hole("S", &[1, 1, 1])
            .is("S1", "lnat-set", true)
            .is("S2", "lnat-set", true)
            .is("S3", "lnat-set", true)
            .is("S1", "ic-set", true)
            .is("S23", "ic-set", true)
            .is("S", "ic-set", false)
            .build(),
    );

    out.push(
        Builder::new("msetboxsum", "An M-convex set plus a unit box has two component sums.")
            .set("S", pts(&[&[1, 0], &[0, 1]]))
            .set("B", pts(&[&[0, 0], &[1, 0]]))
            .step("T", Step::Convolve { inputs: names(&["S", "B"]) })
            .equals("T", set_value(pts(&[&[1, 0], &[0, 1], &[2, 0], &[1, 1]])))
            .is("S", "m-set", true)
            .is("S", "cp-jump", true)
            .is("B", "integer-box", true)
            .is("T", "m-set", false)
            .is("T", "cp-jump", false)
            .build(),
    );

    let d_s = pts(&[&[0, 0, 1], &[1, 1, 0]]);
    let d_b = pts(&[&[0, 0, 0], &[1, 0, 0]]);
    let d_sb = pts(&[&[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[2, 1, 0]]);
    out.push(
        Builder::new("dicdim3set", "A discrete midpoint convex set plus a unit box is not discrete midpoint convex.")
            .set("S", d_s.clone())
            .set("B", d_b.clone())
            .step("T", Step::Convolve { inputs: names(&["S", "B"]) })
            .equals("T", set_value(d_sb.clone()))
            .is("S", "dmc-set", true)
            .is("B", "integer-box", true)
            .cited("T", "dmc-set", mid(&[0, 0, 1], &[2, 1, 0]))
            .build(),
    );

    out.push(
        Builder::new("lsetboxinter", "The diagonal line meets the unit square in two points; as a finite set that is not L-convex. The exact intersection is shown on [−1,2]².")
            .set_in("S", line(&[1, 1], 3))
            .step("T0", Step::IntersectBox { input: s("S"), window: spec(&cube(2, 0, 1)) })
            .step("T", Step::Reframe { input: s("T0"), window: spec(&cube(2, -1, 2)) })
            .equals("T", set_value(pts(&[&[0, 0], &[1, 1]])))
            .is("S", "l-set", true)
            .is("T", "l-set", false)
            .build(),
    );

    let lf = function_from(win(&[-1, -4], &[4, 1]), |x| Some((x[0] - x[1] - 3).abs()));
    out.push(
        Builder::new("lfnsigninv", "f = |x₁ − x₂ − 3| is L-convex; flipping the sign of x₂ gives |x₁ + x₂ − 3|, which fails the midpoint inequality at distance 3.")
            .func("f", &lf)
            .step("g", Step::InvertSigns { input: s("f"), signs: vec![1, -1] })
            .is("f", "l", true)
            .is("f", "lnat", true)
            .is("f", "global-dmc", true)
            .is("g", "l", false)
            .is("g", "lnat", false)
            .cited("g", "global-dmc", mid(&[3, 0], &[0, 3]))
            .claim(Claim::Value { object: s("g"), at: pt(&[2, 2]), value: s("1") })
            .build(),
    );

    let lf3 = function_from(win(&[-1, -2, -1], &[2, 1, 2]), |x| Some((x[0] - x[1] - 1).abs()));
    out.push(
        Builder::new("lfnsigninv3", "f = |x₁ − x₂ − 1| on ℤ³ is L-convex; flipping x₂ breaks local discrete midpoint convexity.")
            .func("f", &lf3)
            .step("g", Step::InvertSigns { input: s("f"), signs: vec![1, -1, 1] })
            .is("f", "l", true)
            .is("f", "local-dmc", true)
            .cited("g", "local-dmc", mid(&[0, 1, 2], &[1, 0, 0]))
            .build(),
    );

    let mf = function_from(cube(2, -2, 2), |x| Some((x[0] + x[1]).abs()));
    out.push(
        Builder::new("mfnsigninv", "f = |x₁ + x₂| is M♮-convex and multimodular; |x₁ − x₂| is neither. On a full box the domain is not constant-sum, so f itself is not M-convex.")
            .func("f", &mf)
            .step("g", Step::InvertSigns { input: s("f"), signs: vec![1, -1] })
            .is("f", "mnat", true)
            .is("f", "multimodular", true)
            .is("f", "m", false)
            .is("g", "mnat", false)
            .is("g", "multimodular", false)
            .build(),
    );

    out.push(
        Builder::new("mmfnperm3", "The indicator of the four-point multimodular set, permuted, is not multimodular.")
            .func("f", &indicator_fn(mm_four(), None))
            .step("g", Step::Permute { input: s("f"), sigma: vec![2, 1, 3] })
            .is("f", "multimodular", true)
            .is("g", "multimodular", false)
            .build(),
    );

    let a = [[1, 1, 0], [1, 2, 1], [0, 1, 1]];
    let at = [[2, 1, 1], [1, 1, 0], [1, 0, 1]];
    out.push(
        Builder::new("mmfnperm1", "A multimodular quadratic form whose transposed and cyclically permuted versions are not multimodular.")
            .func("f", &quadratic_fn(&a, cube(3, -2, 2)))
            .step("g", Step::Permute { input: s("f"), sigma: vec![2, 1, 3] })
            .step("h", Step::Permute { input: s("f"), sigma: vec![3, 1, 2] })
            .claim(Claim::QuadraticMultimodular { matrix: quad(&a), holds: true })
            .claim(Claim::QuadraticMultimodular { matrix: quad(&at), holds: false })
            .equals("g", fn_value(&quadratic_fn(&at, cube(3, -2, 2))))
            .equals("h", fn_value(&quadratic_fn(&at, cube(3, -2, 2))))
            .is("f", "multimodular", true)
            .is("g", "multimodular", false)
            .is("h", "multimodular", false)
            .build(),
    );

    out.push(
        Builder::new("scICfnNG422indic", "The indicator of the scaled-set example: the 2-scaled indicator is not integrally convex.")
            .func("f", &indicator_fn(scaled_ic_set(), None))
            .step("g", Step::Varscale { input: s("f"), alpha: 2 })
            .equals("g", fn_value(&indicator_fn(pts(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 1], &[2, 1, 1]]), None)))
            .is("f", "integrally-convex", true)
            .is("g", "integrally-convex", false)
            .build(),
    );

    out.push(
        Builder::new("scICfnNG422", "An integrally convex function on [0,4]×[0,2]×[0,2] whose 2-scaling has local extension 1/2 above the average 0 at the midpoint of (0,0,0) and (2,1,1).")
            .func("f", &scaled_ic_function())
            .step("g", Step::Varscale { input: s("f"), alpha: 2 })
            .is("f", "integrally-convex", true)
            .cited("g", "integrally-convex", Cited::LocalExtension { x: pt(&[0, 0, 0]), y: pt(&[2, 1, 1]) })
            .claim(Claim::LocalExtension {
                object: s("g"),
                x: pt(&[0, 0, 0]),
                y: pt(&[2, 1, 1]),
                extension: Rat::half(),
                average: Rat::zero(),
            })
            .claim(Claim::Argmin { object: s("f"), expected: set_value(scaled_ic_set()) })
            .build(),
    );

    let (diag, dw) = line(&[1, 1], 3);
    out.push(
        Builder::new("lfnrestr", "The indicator of the diagonal line restricted to one coordinate is the indicator of {0}, which is not L-convex.")
            .func("f", &indicator_fn(diag.clone(), Some(dw.clone())))
            .step("g", Step::Restrict { input: s("f"), coords: vec![1] })
            .equals("g", fn_value(&indicator_fn(pts(&[&[0]]), None)))
            .is("f", "l", true)
            .is("g", "l", false)
            .build(),
    );

    let (anti, aw) = line(&[1, -1], 3);
    out.push(
        Builder::new("mfnproj", "Projecting the indicator of the anti-diagonal line gives the zero function on an interval: neither M-convex nor jump M-convex.")
            .func("f", &indicator_fn(anti.clone(), Some(aw.clone())))
            .step("g", Step::Project { input: s("f"), coords: vec![1] })
            .equals("g", fn_value(&function_from(cube(1, -3, 3), |_| Some(0))))
            .is("f", "m", true)
            .is("f", "jump-m", true)
            .is("g", "m", false)
            .is("g", "jump-m", false)
            .build(),
    );

    out.push(
        Builder::new("mmfnproj3", "Projecting the indicator of the four-point multimodular set onto coordinates 1 and 3 is not multimodular.")
            .func("f", &indicator_fn(mm_four(), None))
            .step("g", Step::Project { input: s("f"), coords: vec![1, 3] })
            .equals("g", fn_value(&indicator_fn(pts(&[&[0, 0], &[0, -1], &[1, 0]]), None)))
            .is("f", "multimodular", true)
            .is("g", "multimodular", false)
            .build(),
    );

    out.push(
        Builder::new("dicdim3indic", "Convolving a discrete midpoint convex indicator with a separable box indicator loses discrete midpoint convexity.")
            .func("f", &indicator_fn(d_s.clone(), None))
            .func("phi", &indicator_fn(d_b.clone(), None))
            .step("h", Step::Convolve { inputs: names(&["f", "phi"]) })
            .equals("h", fn_value(&indicator_fn(d_sb.clone(), None)))
            .is("f", "global-dmc", true)
            .is("f", "local-dmc", true)
            .is("phi", "separable-convex", true)
            .is("phi", "global-dmc", true)
            .is("phi", "local-dmc", true)
            .is("h", "global-dmc", false)
            .is("h", "local-dmc", false)
            .build(),
    );

    let ds_contains = |x: &[i64]| d_s.iter().any(|p| p.as_slice() == x);
    let dsb_contains = |x: &[i64]| d_sb.iter().any(|p| p.as_slice() == x);
    out.push(
        Builder::new("dicdim3fn", "On the unit cube, 0 on two points and 1 elsewhere is discrete midpoint convex; its convolution with a box indicator is not.")
            .func("f", &function_from(cube(3, 0, 1), |x| Some(i64::from(!ds_contains(x)))))
            .func("phi", &indicator_fn(d_b.clone(), None))
            .step("h", Step::Convolve { inputs: names(&["f", "phi"]) })
            .equals("h", fn_value(&function_from(win(&[0, 0, 0], &[2, 1, 1]), |x| Some(i64::from(!dsb_contains(x))))))
            .is("f", "global-dmc", true)
            .is("f", "local-dmc", true)
            .is("phi", "separable-convex", true)
            .is("phi", "global-dmc", true)
            .is("phi", "local-dmc", true)
            .is("h", "global-dmc", false)
            .cited("h", "local-dmc", mid(&[0, 0, 1], &[2, 1, 0]))
            .build(),
    );

    let la1_dom = pts(&[&[0, 0, 0], &[1, 1, 0], &[-1, -1, 0], &[0, 1, 1], &[0, -1, -1], &[1, 0, 1], &[-1, 0, -1]]);
    let la1 = LatticeFunction::from_pairs(
        la1_dom.iter().map(|x| (x.clone(), Rat::int(x.iter().sum::<i64>() / 2))).collect(),
    )
    .expect("nonempty");
    let la1_conj = function_from(cube(3, -2, 2), |p| {
        Some([p[0] + p[1] - 1, p[1] + p[2] - 1, p[2] + p[0] - 1].iter().map(|v| v.abs()).max().unwrap().max(0))
    });
    out.push(
        Builder::new("la1", "A hole-free function on seven points whose domain is not integrally convex; its biconjugate at the origin is −1 and its subdifferential there is the single non-integral point (1/2,1/2,1/2).")
            .func("f", &la1)
            .step("fc", Step::Conjugate { input: s("f"), window: spec(&cube(3, -2, 2)) })
            .equals("fc", fn_value(&la1_conj))
            .claim(Claim::Value { object: s("f"), at: pt(&[0, 0, 0]), value: s("0") })
            .claim(Claim::Biconjugate { object: s("f"), at: pt(&[0, 0, 0]), value: s("-1") })
            .claim(Claim::IntegerSubgradient { object: s("f"), at: pt(&[0, 0, 0]), holds: false })
            .claim(Claim::SubgradientBox {
                object: s("f"),
                at: pt(&[0, 0, 0]),
                lo: vec![Rat::half(); 3],
                hi: vec![Rat::half(); 3],
            })
            .cited("f", "ic-set", Cited::HullLocal { x: pt(&[1, 1, 0]), y: pt(&[-1, 0, -1]) })
            .is("f", "integrally-convex", false)
            .build(),
    );

    let cic = pts(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 0, 0, 1]]);
    let cic_conj = function_from(cube(4, -2, 2), |p| Some(*[p[0] + p[1], p[1] + p[2], p[0] + p[2], p[3]].iter().max().unwrap()));
    out.push(
        Builder::new("conjIC", "The indicator of a four-point subset of {0,1}⁴ is integrally convex but its integral conjugate is not: the local extension at (1/2,1/2,1/2,1) is 5/4 against an average of 1.")
            .set("S", cic)
            .step("g", Step::Conjugate { input: s("S"), window: spec(&cube(4, -2, 2)) })
            .equals("g", fn_value(&cic_conj))
            .is("S", "ic-set", true)
            .is("S", "integrally-convex", true)
            .claim(Claim::LocalExtension {
                object: s("g"),
                x: pt(&[0, 0, 0, 0]),
                y: pt(&[1, 1, 1, 2]),
                extension: Rat::frac(5, 4),
                average: Rat::one(),
            })
            .cited("g", "integrally-convex", Cited::LocalExtension { x: pt(&[0, 0, 0, 0]), y: pt(&[1, 1, 1, 2]) })
            .build(),
    );

    out.push(
        Builder::new("minkow3lnatfn", "The convolution of three L♮-convex indicators is the indicator of a set with a hole, so it is not integrally convex.")
            .func("f1", &indicator_fn(l1.clone(), None))
            .func("f2", &indicator_fn(l2.clone(), None))
            .func("f3", &indicator_fn(l3.clone(), None))
            .step("h", Step::Convolve { inputs: names(&["f1", "f2", "f3"]) })
            .equals(
                "h",
                fn_value(&indicator_fn(
                    pts(&[&[0, 0, 0], &[0, 1, 1], &[1, 1, 0], &[1, 0, 1], &[2, 1, 1], &[1, 1, 2], &[1, 2, 1], &[2, 2, 2]]),
                    None,
                )),
            )
            .is("f1", "lnat", true)
            .is("f2", "lnat", true)
            .is("f3", "lnat", true)
            .is("f1", "integrally-convex", true)
            .is("h", "integrally-convex", false)
            .build(),
    );

    out
}

pub fn find(id: &str) -> Option<Fixture> {
    registry().into_iter().find(|f| f.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let reg = registry();
        let mut ids: Vec<&str> = reg.iter().map(|f| f.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), reg.len());
    }

    #[test]
    fn json_round_trip() {
        for f in registry() {
            assert_eq!(Fixture::from_json(&f.to_json()).unwrap(), f, "{}", f.id);
        }
    }
}
