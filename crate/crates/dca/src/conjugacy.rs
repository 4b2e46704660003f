//! Integral conjugacy for integer-valued functions with finite domain.
//!
//! f•(p) = max { ⟨p,x⟩ − f(x) : x ∈ dom f } is finite for every integer p, so
//! the conjugate is tabulated exactly on any p-window. The biconjugate needs a
//! search over all of ℤⁿ; it is bracketed between the best integer value seen
//! and ⌊h*(x)⌋, where h* is the convex envelope of f, and the search stops as
//! soon as the bracket closes.

use serde_json::{json, Value};

use crate::classify::{check_fn, FnClass, Verdict};
use crate::error::{same_dim, DcaError, Result};
use crate::lattice::{d_transpose_apply, Point};
use crate::lp::{envelope_value, solve, Bound, LpInstance, LpOutcome, Sense};
use crate::model::{Ext, LConvexForm, LatticeFunction, Window};
use crate::rat::Rat;
use crate::transform::mm_to_lnat;

/// Growth cap of the biconjugate search: the radius never exceeds this
/// multiple of the initial radius.
pub const SEARCH_CAP_FACTOR: i64 = 64;

/// Domain points with values as machine integers.
struct IntTable {
    pts: Vec<Point>,
    vals: Vec<i128>,
}

impl IntTable {
    fn new(f: &LatticeFunction) -> Result<IntTable> {
        f.require_integer_valued()?;
        let mut pts = Vec::with_capacity(f.dom_size());
        let mut vals = Vec::with_capacity(f.dom_size());
        for (x, v) in f.iter() {
            let k = v
                .to_i64()
                .ok_or_else(|| DcaError::InvalidArgument(format!("value {v} at {x:?} exceeds 64 bits")))?;
            pts.push(x.clone());
            vals.push(k as i128);
        }
        Ok(IntTable { pts, vals })
    }

    fn range(&self) -> i128 {
        let max = self.vals.iter().max().copied().unwrap_or(0);
        let min = self.vals.iter().min().copied().unwrap_or(0);
        max - min
    }

    /// max over dom of ⟨p,x⟩ − f(x).
    fn conj(&self, p: &[i64]) -> i128 {
        self.pts
            .iter()
            .zip(&self.vals)
            .map(|(x, v)| dot(p, x) - v)
            .max()
            .expect("nonempty domain")
    }
}

fn dot(p: &[i64], x: &[i64]) -> i128 {
    p.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum()
}

fn to_rat(v: i128) -> Result<Rat> {
    i64::try_from(v)
        .map(Rat::int)
        .map_err(|_| DcaError::InvalidArgument(format!("conjugate value {v} exceeds 64 bits")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateResult {
    pub function: LatticeFunction,
    pub p_window: Window,
    /// The minimum of f• over the window is attained on the window boundary,
    /// so the window may not contain the whole region of interest.
    pub boundary_attained: bool,
}

pub fn conjugate(f: &LatticeFunction, p_window: &Window) -> Result<ConjugateResult> {
    same_dim(f.dim(), p_window.dim())?;
    let t = IntTable::new(f)?;
    let mut values = std::collections::BTreeMap::new();
    for p in p_window.points() {
        let v = to_rat(t.conj(&p))?;
        values.insert(p, v);
    }
    finish(values, p_window)
}

fn finish(values: std::collections::BTreeMap<Point, Rat>, p_window: &Window) -> Result<ConjugateResult> {
    let function = LatticeFunction::new(p_window.clone(), values)?;
    let min = function.min_value();
    let boundary_attained = function.iter().any(|(p, v)| *v == min && p_window.on_boundary(p));
    Ok(ConjugateResult { function, p_window: p_window.clone(), boundary_attained })
}

/// Conjugate of f(x) = g(x₂−x₁, …, xₙ−x₁) + r·x₁ on ℤⁿ.
///
/// f•(p) is finite only where p(N) = r, and there equals g•(p₂, …, pₙ).
pub fn conjugate_lform(form: &LConvexForm, p_window: &Window) -> Result<ConjugateResult> {
    same_dim(form.dim(), p_window.dim())?;
    let r = form
        .slope
        .to_i64()
        .ok_or_else(|| DcaError::NonInteger(form.slope.to_string(), vec![]))?;
    let t = IntTable::new(&form.base)?;
    let mut values = std::collections::BTreeMap::new();
    for p in p_window.points() {
        if p.iter().sum::<i64>() == r {
            values.insert(p.clone(), to_rat(t.conj(&p[1..]))?);
        }
    }
    if values.is_empty() {
        return Err(DcaError::EmptyResult(format!("no p with component sum {r} in the window")));
    }
    finish(values, p_window)
}

/// [−r, r]ⁿ.
pub fn centered_window(n: usize, r: i64) -> Result<Window> {
    Window::cube(n, -r, r)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biconjugate {
    /// f••(x); +∞ exactly when x is outside the convex hull of dom f.
    pub value: Ext,
    /// The convex envelope value h*(x), an upper bound on f••(x).
    pub envelope: Ext,
    /// An integer p attaining the value.
    pub argmax: Option<Point>,
    /// Final search radius.
    pub radius: i64,
    /// The value met ⌊h*(x)⌋, so no larger p can do better.
    pub bracket_closed: bool,
}

impl Biconjugate {
    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value,
            "envelope": self.envelope,
            "argmax": self.argmax,
            "radius": self.radius,
            "bracket_closed": self.bracket_closed,
        })
    }
}

/// Incremental search for max ⟨p,x⟩ − f•(p) over integer p, shell by shell.
struct Search<'a> {
    x: &'a [i64],
    /// x − y for every y ∈ dom f, paired with f(y)
    diffs: Vec<(Point, i128)>,
    best: Option<i128>,
    argmax: Option<Point>,
    /// largest ∞-norm among maximizers
    argmax_norm: i64,
    done: i64,
}

impl<'a> Search<'a> {
    fn new(t: &IntTable, x: &'a [i64]) -> Search<'a> {
        let diffs = t
            .pts
            .iter()
            .zip(&t.vals)
            .map(|(y, v)| (x.iter().zip(y).map(|(a, b)| a - b).collect(), *v))
            .collect();
        Search { x, diffs, best: None, argmax: None, argmax_norm: 0, done: -1 }
    }

    /// ⟨p,x⟩ − f•(p) = min over y of f(y) + ⟨p, x − y⟩; `None` once below `floor`.
    fn value(&self, p: &[i64], floor: Option<i128>) -> Option<i128> {
        let mut m: Option<i128> = None;
        for (d, v) in &self.diffs {
            let c = v + dot(p, d);
            if floor.is_some_and(|f| c < f) {
                return None;
            }
            m = Some(m.map_or(c, |m| m.min(c)));
        }
        m
    }

    /// Scans every p with done < ‖p‖∞ ≤ r, one shell at a time so that small
    /// subgradients are met first. Returns early once `target` is hit.
    fn scan_to(&mut self, r: i64, target: i128) -> bool {
        let n = self.x.len();
        for shell in self.done + 1..=r {
            let mut p = vec![-shell; n];
            loop {
                let norm = p.iter().map(|v| v.abs()).max().unwrap_or(0);
                if norm == shell {
                    if let Some(v) = self.value(&p, self.best) {
                        match self.best {
                            Some(b) if v < b => {}
                            Some(b) if v == b => self.argmax_norm = self.argmax_norm.max(norm),
                            _ => {
                                self.best = Some(v);
                                self.argmax = Some(p.clone());
                                self.argmax_norm = norm;
                                if v >= target {
                                    self.done = shell;
                                    return true;
                                }
                            }
                        }
                    }
                }
                // odometer step; a full turn ends the shell
                let mut i = 0;
                while i < n && p[i] == shell {
                    p[i] = -shell;
                    i += 1;
                }
                if i == n {
                    break;
                }
                p[i] += 1;
            }
            self.done = shell;
        }
        false
    }
}

pub fn biconjugate_at(f: &LatticeFunction, x: &[i64]) -> Result<Biconjugate> {
    same_dim(f.dim(), x.len())?;
    let t = IntTable::new(f)?;
    let z: Vec<Rat> = x.iter().map(|&v| Rat::int(v)).collect();
    let pts: Vec<(Point, Rat)> = f.iter().map(|(p, v)| (p.clone(), v.clone())).collect();
    let active: Vec<usize> = (0..x.len()).collect();
    let envelope = envelope_value(&pts, &z, &active);
    let upper = match &envelope {
        Ext::Inf => {
            return Ok(Biconjugate { value: Ext::Inf, envelope, argmax: None, radius: 0, bracket_closed: true });
        }
        Ext::Fin(h) => i128::try_from(h.floor()).expect("envelope of 64-bit values"),
    };
    let b0 = i64::try_from(1 + t.range()).map_err(|_| DcaError::InvalidArgument("value range too large".into()))?;
    let cap = b0.saturating_mul(SEARCH_CAP_FACTOR);
    let mut s = Search::new(&t, x);
    let mut r = b0;
    let mut previous: Option<i128> = None;
    loop {
        let closed = s.scan_to(r, upper);
        let best = s.best.expect("nonempty scan");
        if closed {
            return Ok(Biconjugate {
                value: Ext::Fin(to_rat(best)?),
                envelope,
                argmax: s.argmax,
                radius: r,
                bracket_closed: true,
            });
        }
        let touches = s.argmax_norm == r;
        if !touches && previous == Some(best) {
            return Ok(Biconjugate {
                value: Ext::Fin(to_rat(best)?),
                envelope,
                argmax: s.argmax,
                radius: r,
                bracket_closed: false,
            });
        }
        if r.saturating_mul(2) > cap {
            return Err(DcaError::Inconclusive { radius: r, lower: best.to_string(), upper: upper.to_string() });
        }
        previous = Some(best);
        r *= 2;
    }
}

/// Per-coordinate LP bounds of ∂f(x) = {p : f(y) − f(x) ≥ ⟨p, y−x⟩ ∀y ∈ dom f}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdifferentialBox {
    /// `None` for an unbounded direction.
    pub lo: Vec<Option<Rat>>,
    pub hi: Vec<Option<Rat>>,
    /// The polyhedron is empty: f is not convex-extensible at x.
    pub empty: bool,
}

impl SubdifferentialBox {
    pub fn is_bounded(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(Option::is_some)
    }

    pub fn to_json(&self) -> Value {
        let side = |v: &Vec<Option<Rat>>| -> Value {
            v.iter().map(|b| b.as_ref().map_or(Value::Null, |r| json!(r.to_string()))).collect()
        };
        json!({"lo": side(&self.lo), "hi": side(&self.hi), "empty": self.empty})
    }
}

fn subgradient_lp(f: &LatticeFunction, x: &[i64], fx: &Rat, objective: Vec<Rat>) -> LpInstance {
    let mut lp = LpInstance::new(objective);
    lp.bounds = vec![Bound::free(); x.len()];
    for (y, v) in f.iter() {
        if y.as_slice() == x {
            continue;
        }
        lp.push(y.iter().zip(x).map(|(a, b)| Rat::int(a - b)).collect(), Sense::Le, v - fx);
    }
    lp
}

fn in_subdifferential(f: &LatticeFunction, x: &[i64], fx: &Rat, p: &[i64]) -> bool {
    f.iter().all(|(y, v)| {
        let d: i128 = p.iter().zip(y).zip(x).map(|((pi, yi), xi)| *pi as i128 * (yi - xi) as i128).sum();
        Rat::from_bigint(d.into()) <= v - fx
    })
}

pub fn subdifferential_box(f: &LatticeFunction, x: &[i64]) -> Result<SubdifferentialBox> {
    same_dim(f.dim(), x.len())?;
    let fx = f.get(x).ok_or_else(|| DcaError::NotInDomain(x.to_vec()))?.clone();
    let n = x.len();
    let mut lo = vec![None; n];
    let mut hi = vec![None; n];
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut c = vec![Rat::zero(); n];
            c[i] = Rat::int(sign);
            match solve(&subgradient_lp(f, x, &fx, c))? {
                LpOutcome::Infeasible { .. } => {
                    return Ok(SubdifferentialBox { lo: vec![None; n], hi: vec![None; n], empty: true });
                }
                LpOutcome::Unbounded { .. } => {}
                LpOutcome::Optimal { value, .. } => {
                    if sign == 1 {
                        lo[i] = Some(value);
                    } else {
                        hi[i] = Some(-value);
                    }
                }
            }
        }
    }
    Ok(SubdifferentialBox { lo, hi, empty: false })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSubgradient {
    pub holds: bool,
    pub subgradient: Option<Point>,
    /// An unbounded direction was cut at `clamp_radius` around the bounded part;
    /// a negative answer is then only valid inside the clamp.
    pub clamped: bool,
    pub clamp_radius: i64,
    pub region: SubdifferentialBox,
}

impl IntegerSubgradient {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "subgradient": self.subgradient,
            "clamped": self.clamped,
            "clamp_radius": self.clamp_radius,
            "box": self.region.to_json(),
        })
    }
}

/// Whether ∂f(x) contains an integer vector; searches the integer points of
/// the LP box, clamping unbounded sides at 1 + (max f − min f).
pub fn has_integer_subgradient(f: &LatticeFunction, x: &[i64]) -> Result<IntegerSubgradient> {
    let region = subdifferential_box(f, x)?;
    let fx = f.get(x).expect("checked by subdifferential_box").clone();
    let clamp_radius = {
        let r = (f.max_value() - f.min_value()).ceil();
        1 + i64::try_from(r).map_err(|_| DcaError::InvalidArgument("value range too large".into()))?
    };
    let mut out = IntegerSubgradient { holds: false, subgradient: None, clamped: false, clamp_radius, region };
    if out.region.empty {
        return Ok(out);
    }
    let n = x.len();
    let mut lo = Vec::with_capacity(n);
    let mut hi = Vec::with_capacity(n);
    for i in 0..n {
        let (l, h) = (&out.region.lo[i], &out.region.hi[i]);
        let l = match l {
            Some(v) => i64::try_from(v.ceil()).unwrap_or(i64::MAX),
            None => {
                out.clamped = true;
                h.as_ref().map_or(-clamp_radius, |h| i64::try_from(h.floor()).unwrap_or(0) - clamp_radius)
            }
        };
        let h = match h {
            Some(v) => i64::try_from(v.floor()).unwrap_or(i64::MIN),
            None => {
                out.clamped = true;
                l + 2 * clamp_radius
            }
        };
        if l > h {
            return Ok(out);
        }
        lo.push(l);
        hi.push(h);
    }
    let window = Window::new(lo, hi)?;
    if let Some(p) = window.points().find(|p| in_subdifferential(f, x, &fx, p)) {
        out.holds = true;
        out.subgradient = Some(p);
    }
    Ok(out)
}

/// Outcome of checking that f• lands in the class the theory predicts.
#[derive(Clone, Debug)]
pub struct ConjugateCheck {
    pub input_class: FnClass,
    pub output_class: FnClass,
    pub verdict: Verdict,
    pub conjugate: LatticeFunction,
    /// For M-convex input: (component sum of dom f, whether every observed
    /// f•(p+𝟏) − f•(p) equals it).
    pub slope: Option<(Rat, bool)>,
    /// For multimodular input: whether f•(p) = h(Dᵀp) held at every p with
    /// Dᵀp inside h's window.
    pub transpose_identity: Option<bool>,
}

impl ConjugateCheck {
    /// The verdict together with the side conditions.
    pub fn holds(&self) -> bool {
        self.verdict.holds && self.slope.as_ref().is_none_or(|s| s.1) && self.transpose_identity.unwrap_or(true)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": self.input_class.name(),
            "output": self.output_class.name(),
            "holds": self.holds(),
            "verdict": self.verdict.to_json(),
            "slope": self.slope.as_ref().map(|(s, ok)| json!({"expected": s.to_string(), "matches": ok})),
            "transpose_identity": self.transpose_identity,
        })
    }
}

/// The class that f• belongs to when f is in `c`; `None` where no statement exists.
pub fn conjugate_class(c: FnClass) -> Option<FnClass> {
    Some(match c {
        FnClass::SeparableConvex => FnClass::SeparableConvex,
        FnClass::LNat => FnClass::MNat,
        FnClass::L => FnClass::M,
        FnClass::MNat => FnClass::LNat,
        FnClass::M => FnClass::L,
        // f•(p) = h(Dᵀp) with h M♮-convex
        FnClass::Multimodular => FnClass::MNat,
        _ => return None,
    })
}

/// Default conjugate radius: 2·(max f − min f) + 2.
pub fn default_radius(f: &LatticeFunction) -> i64 {
    let r = (f.max_value() - f.min_value()).ceil();
    2 * i64::try_from(r).unwrap_or(i64::MAX / 4) + 2
}

pub fn conjugate_class_check(f: &LatticeFunction, claimed: FnClass) -> Result<ConjugateCheck> {
    conjugate_class_check_in(f, claimed, default_radius(f))
}

/// As [`conjugate_class_check`] on the p-window [−radius, radius]ⁿ.
pub fn conjugate_class_check_in(f: &LatticeFunction, claimed: FnClass, radius: i64) -> Result<ConjugateCheck> {
    if claimed == FnClass::L {
        return Err(DcaError::NotApplicable("L-convex input needs the structural form; see lform_conjugate_check".into()));
    }
    let output_class = conjugate_class(claimed)
        .ok_or_else(|| DcaError::NotApplicable(format!("no conjugate class is stated for {claimed}")))?;
    let premise = check_fn(f, claimed);
    if !premise.holds {
        return Err(DcaError::Premise(format!("input is not {claimed}")));
    }
    let window = centered_window(f.dim(), radius)?;
    let conj = conjugate(f, &window)?.function;
    let mut out = ConjugateCheck {
        input_class: claimed,
        output_class,
        verdict: Verdict::yes(),
        conjugate: conj,
        slope: None,
        transpose_identity: None,
    };
    match claimed {
        FnClass::Multimodular => {
            let g = mm_to_lnat(f)?;
            let h = conjugate(&g, &window)?.function;
            let identity = out.conjugate.iter().all(|(p, v)| {
                let q = d_transpose_apply(p);
                !h.window().contains(&q) || h.get(&q) == Some(v)
            });
            out.transpose_identity = Some(identity);
            out.verdict = check_fn(&h, FnClass::MNat);
        }
        FnClass::M => {
            let s = Rat::int(f.iter().next().expect("nonempty").0.iter().sum());
            let form_ok = out.conjugate.iter().all(|(p, v)| {
                let q: Point = p.iter().map(|c| c + 1).collect();
                out.conjugate.get(&q).is_none_or(|w| w - v == s)
            });
            out.slope = Some((s, form_ok));
            out.verdict = check_fn(&out.conjugate, FnClass::L);
        }
        _ => out.verdict = check_fn(&out.conjugate, output_class),
    }
    Ok(out)
}

/// Conjugate of an L-convex function in structural form, checked for M-convexity.
pub fn lform_conjugate_check(form: &LConvexForm, radius: i64) -> Result<ConjugateCheck> {
    let window = centered_window(form.dim(), radius)?;
    let conj = conjugate_lform(form, &window)?.function;
    let verdict = check_fn(&conj, FnClass::M);
    Ok(ConjugateCheck {
        input_class: FnClass::L,
        output_class: FnClass::M,
        verdict,
        conjugate: conj,
        slope: None,
        transpose_identity: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abs1(r: i64) -> LatticeFunction {
        LatticeFunction::from_fn(Window::cube(1, -r, r).unwrap(), |x| Some(Rat::int(x[0].abs()))).unwrap()
    }

    #[test]
    fn conjugate_of_point_indicator_is_zero() {
        let f = LatticeFunction::from_pairs(vec![(vec![0, 0], Rat::zero())]).unwrap();
        let c = conjugate(&f, &centered_window(2, 3).unwrap()).unwrap();
        assert!(c.function.iter().all(|(_, v)| v.is_zero()));
        let b = biconjugate_at(&f, &[0, 0]).unwrap();
        assert_eq!(b.value, Ext::int(0));
        assert_eq!(biconjugate_at(&f, &[1, 0]).unwrap().value, Ext::Inf);
    }

    #[test]
    fn absolute_value_subdifferential() {
        let f = abs1(2);
        let b = subdifferential_box(&f, &[0]).unwrap();
        assert_eq!(b.lo, vec![Some(Rat::int(-1))]);
        assert_eq!(b.hi, vec![Some(Rat::int(1))]);
        let s = has_integer_subgradient(&f, &[0]).unwrap();
        assert!(s.holds && !s.clamped);
        assert_eq!(biconjugate_at(&f, &[1]).unwrap().value, Ext::int(1));
    }

    #[test]
    fn non_integer_values_are_rejected() {
        let f = LatticeFunction::from_pairs(vec![(vec![0], Rat::half())]).unwrap();
        assert!(matches!(conjugate(&f, &centered_window(1, 1).unwrap()), Err(DcaError::NonInteger(..))));
    }

    #[test]
    fn hole_gives_finite_biconjugate_outside_domain() {
        let f = LatticeFunction::from_pairs(vec![(vec![0], Rat::zero()), (vec![2], Rat::zero())]).unwrap();
        assert_eq!(biconjugate_at(&f, &[1]).unwrap().value, Ext::int(0));
    }

    #[test]
    fn lower_dimensional_domain_is_clamped() {
        let f = LatticeFunction::from_pairs(vec![(vec![0, 0], Rat::zero()), (vec![1, -1], Rat::int(1))]).unwrap();
        let s = has_integer_subgradient(&f, &[0, 0]).unwrap();
        assert!(s.clamped);
        assert!(s.holds);
    }
}
