//! Checks every table cell: seeded trials for closure ("Y") cells, fixture
//! refutations for "N" cells, and the two negative controls that make sure
//! a wrong expectation is actually caught.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::classify::{check_fn, check_set, recheck, FnClass, SetClass, Witness};
use crate::conjugacy::{
    biconjugate_at, conjugate_class_check_in, has_integer_subgradient, lform_conjugate_check,
};
use crate::error::{DcaError, Result};
use crate::io::{self, Object};
use crate::lattice::{sub_raw, Point};
use crate::model::{Ext, LatticeFunction, Window};
use crate::rat::Rat;
use crate::transform::{
    add, apply_change, convolve, project, restrict, restrict_box, value_scale, CoordinateChange,
};

use super::checks::convex_extension_gap_among;
use super::fixtures::{self, judge, ClassRef, Fixture, FixtureOutcome, Step};
use super::generate::{generate_fn, generate_set, trial_rng, GenConfig, Member, TrialRng, L_RADIUS};
use super::tables::{all_cells, table, Cell, Expected, OpKind, Refutation, RowClass, TableId};

pub const DEFAULT_SEED: u64 = 20_190_601;
/// Trials per cell at each dimension.
pub const DEFAULT_TRIALS: usize = 200;
pub const DIMS: [usize; 2] = [2, 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Successful trials required at each dimension.
    pub trials: usize,
    pub dims: Vec<usize>,
    pub tables: Vec<TableId>,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig { seed: DEFAULT_SEED, trials: DEFAULT_TRIALS, dims: DIMS.to_vec(), tables: TableId::ALL.to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CellReport {
    pub table: TableId,
    pub class: RowClass,
    pub op: OpKind,
    pub expected: Expected,
    pub outcome: Outcome,
    /// Completed trials per dimension, in `VerifyConfig::dims` order.
    pub trials: Vec<(usize, usize)>,
    /// Attempts abandoned because an input could not be drawn or the
    /// operation had an empty result.
    pub skipped: usize,
    pub witness: Value,
}

impl CellReport {
    pub fn total_trials(&self) -> usize {
        self.trials.iter().map(|(_, k)| k).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.table.name(),
            "class": self.class.name(),
            "op": self.op.name(),
            "expected": self.expected.symbol(),
            "outcome": self.outcome.name(),
            "trials": self.total_trials(),
            "trials_by_dim": self.trials.iter().map(|(n, k)| json!({"n": n, "trials": k})).collect::<Vec<_>>(),
            "skipped": self.skipped,
            "witness": self.witness,
        })
    }
}

/// A trial whose result left the class, kept in a form that can be re-read
/// and re-checked without the runner.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialFailure {
    pub n: usize,
    pub index: u64,
    pub inputs: Vec<LatticeFunction>,
    pub result: LatticeFunction,
    pub params: Value,
    pub witness: Option<Witness>,
    pub note: String,
}

impl TrialFailure {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "trial": self.index,
            "inputs": self.inputs.iter().map(io::function_json).collect::<Vec<_>>(),
            "params": self.params,
            "result": io::function_json(&self.result),
            "witness": self.witness.as_ref().map(Witness::to_json),
            "note": self.note,
        })
    }

    /// Re-reads the result from its JSON and re-evaluates the witness on it.
    pub fn recheck(&self) -> bool {
        let Some(w) = &self.witness else { return false };
        match io::from_value(&io::function_json(&self.result)) {
            Ok(Object::Function(g)) => recheck(&g, w),
            _ => false,
        }
    }
}

enum TrialResult {
    Held,
    Skipped,
    Failed(Box<TrialFailure>),
}

// ---------------------------------------------------------------------------
// Operands

struct Operand {
    f: LatticeFunction,
    member: Member,
    /// Radius of the cube an L-convex member was cut to; 0 for finite ones.
    radius: i64,
}

impl Operand {
    fn linear(&self) -> bool {
        matches!(self.member, Member::Linear(_))
    }
}

fn radius_for(m: &Member) -> i64 {
    L_RADIUS.max(m.span() + 2)
}

fn operand(cell: &Cell, cfg: &GenConfig, rng: &mut TrialRng) -> Result<Operand> {
    let member = match cell.class {
        RowClass::Set(c) => generate_set(c, cfg, rng)?,
        RowClass::Fn(c) => generate_fn(c, cfg, rng)?,
    };
    let radius = if matches!(member, Member::Linear(_)) { radius_for(&member) } else { 0 };
    let f = member.materialize(radius.max(1))?;
    Ok(Operand { f, member, radius })
}

fn in_class(class: RowClass, f: &LatticeFunction) -> (bool, Option<Witness>) {
    let v = match class {
        RowClass::Set(c) => check_set(&f.support_set(), c),
        RowClass::Fn(c) => check_fn(f, c),
    };
    (v.holds, v.witness)
}

fn pick_point(rng: &mut TrialRng, f: &LatticeFunction) -> Point {
    let k = rng.gen_range(0..f.dom_size());
    f.iter().nth(k).expect("index in range").0.clone()
}

fn shift(f: &LatticeFunction, b: Point) -> Result<LatticeFunction> {
    apply_change(f, &CoordinateChange::Shift(b))
}

fn to_origin(rng: &mut TrialRng, f: &LatticeFunction) -> Result<LatticeFunction> {
    let p = pick_point(rng, f);
    shift(f, p.iter().map(|v| -v).collect())
}

fn proper_subset(rng: &mut TrialRng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut u = idx[..k].to_vec();
    u.sort_unstable();
    u
}

fn mixed_signs(rng: &mut TrialRng, n: usize) -> Vec<i64> {
    loop {
        let t: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        if n == 1 || (t.contains(&1) && t.contains(&-1)) {
            return t;
        }
    }
}

/// A box inside [−1, 1]ⁿ, so that a sum with it moves no point by more than 1.
fn small_box(rng: &mut TrialRng, n: usize) -> Window {
    let (lo, hi): (Point, Point) = (0..n)
        .map(|_| {
            let a = rng.gen_range(-1..=1);
            let b = rng.gen_range(-1..=1);
            (a.min(b), a.max(b))
        })
        .unzip();
    Window::new(lo, hi).expect("ordered bounds")
}

/// A separable convex function whose domain lies in [−1, 1]ⁿ.
fn small_separable(rng: &mut TrialRng, n: usize) -> Result<LatticeFunction> {
    let cfg = GenConfig { n, width: 3, values: 2 };
    let Member::Finite(phi) = generate_fn(FnClass::SeparableConvex, &cfg, rng)? else {
        return Err(DcaError::Generation("separable members are finite".into()));
    };
    shift(&phi, vec![-1; n])
}

fn box_indicator(w: &Window) -> LatticeFunction {
    LatticeFunction::from_fn(w.clone(), |_| Some(Rat::zero())).expect("boxes are nonempty")
}

/// A second member of the row class positioned so that its domain meets
/// dom f. L-convex members are cut to the same cube as f after the shift.
fn second_aligned(cell: &Cell, first: &Operand, cfg: &GenConfig, rng: &mut TrialRng) -> Result<LatticeFunction> {
    let g = operand(cell, cfg, rng)?;
    let x = pick_point(rng, &first.f);
    if first.linear() || g.linear() {
        let r = first.radius.max(g.radius);
        let y = pick_point(rng, &g.f);
        let b = sub_raw(&x, &y);
        let reach = r + b.iter().map(|v| v.abs()).max().unwrap_or(0);
        let wide = g.member.materialize(reach)?;
        let moved = shift(&wide, b)?;
        let cube = first.f.window().clone();
        return restrict_box(&moved, &cube);
    }
    let y = pick_point(rng, &g.f);
    shift(&g.f, sub_raw(&x, &y))
}

fn cut(f: LatticeFunction, w: Option<Window>) -> Result<LatticeFunction> {
    match w {
        Some(w) => restrict_box(&f, &w),
        None => Ok(f),
    }
}

/// Applies the column operation with random parameters. Returns the inputs
/// (first operand first), the parameters, and the exact result.
fn apply_op(
    cell: &Cell,
    first: &Operand,
    cfg: &GenConfig,
    rng: &mut TrialRng,
) -> Result<(Vec<LatticeFunction>, Value, LatticeFunction)> {
    let n = cfg.n;
    let f = &first.f;
    let one = |g: LatticeFunction, p: Value| Ok((vec![f.clone()], p, g));
    match cell.op {
        OpKind::Shift => {
            let b: Point = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            one(shift(f, b.clone())?, json!({"by": b}))
        }
        OpKind::InvertAll => one(apply_change(f, &CoordinateChange::InvertAll)?, json!({})),
        OpKind::InvertSigns => {
            let t = mixed_signs(rng, n);
            one(apply_change(f, &CoordinateChange::InvertSigns(t.clone()))?, json!({"signs": t}))
        }
        OpKind::Permute => {
            let mut s: Vec<usize> = (0..n).collect();
            s.shuffle(rng);
            let shown: Vec<usize> = s.iter().map(|i| i + 1).collect();
            one(apply_change(f, &CoordinateChange::Permute(s))?, json!({"sigma": shown}))
        }
        OpKind::Varscale => {
            let g = to_origin(rng, f)?;
            let h = apply_change(&g, &CoordinateChange::VarScale(2))?;
            Ok((vec![g], json!({"alpha": 2}), h))
        }
        OpKind::ValueScale => {
            let a = [Rat::half(), Rat::int(2), Rat::int(3)][rng.gen_range(0..3)].clone();
            one(value_scale(f, &a)?, json!({"factor": a.to_string()}))
        }
        OpKind::Restrict => {
            let g = to_origin(rng, f)?;
            let u = proper_subset(rng, n);
            let h = restrict(&g, &u)?;
            Ok((vec![g], json!({"coords": u.iter().map(|i| i + 1).collect::<Vec<_>>()}), h))
        }
        OpKind::Project => {
            let u = proper_subset(rng, n);
            let h = project(f, &u)?;
            // an L-convex cut is exact where every fibre stays inside the cube
            let w = if first.linear() {
                let r = first.radius - first.member.span();
                Some(Window::cube(u.len(), -r, r)?)
            } else {
                None
            };
            one(cut(h, w)?, json!({"coords": u.iter().map(|i| i + 1).collect::<Vec<_>>()}))
        }
        OpKind::IntersectBox => {
            let p = pick_point(rng, f);
            let lo: Point = p.iter().map(|v| v - rng.gen_range(0..=2)).collect();
            let hi: Point = p.iter().map(|v| v + rng.gen_range(0..=2)).collect();
            let b = Window::new(lo, hi)?;
            let h = restrict_box(f, &b)?;
            Ok((vec![f.clone(), box_indicator(&b)], json!({"box": io::window_json(&b)}), h))
        }
        OpKind::AddSeparable => {
            let phi = small_separable(rng, n)?;
            let x = pick_point(rng, f);
            let y = pick_point(rng, &phi);
            let phi = shift(&phi, sub_raw(&x, &y))?;
            let h = add(f, &phi)?;
            Ok((vec![f.clone(), phi], json!({}), h))
        }
        OpKind::Intersect | OpKind::AddGeneral => {
            let g = second_aligned(cell, first, cfg, rng)?;
            let h = add(f, &g)?;
            Ok((vec![f.clone(), g], json!({}), h))
        }
        OpKind::MinkowskiBox | OpKind::ConvolveSeparable => {
            let phi = if cell.op == OpKind::MinkowskiBox {
                box_indicator(&small_box(rng, n))
            } else {
                small_separable(rng, n)?
            };
            let h = convolve(f, &phi)?;
            let w = if first.linear() { Some(Window::cube(n, -first.radius + 1, first.radius - 1)?) } else { None };
            Ok((vec![f.clone(), phi], json!({}), cut(h, w)?))
        }
        OpKind::MinkowskiGeneral | OpKind::ConvolveGeneral => {
            let small = GenConfig { width: cfg.width.min(3), ..cfg.clone() };
            let g = operand(cell, &small, rng)?;
            if first.linear() || g.linear() {
                return Err(DcaError::NotApplicable("no closure claim for this pair".into()));
            }
            let h = convolve(f, &g.f)?;
            Ok((vec![f.clone(), g.f], json!({}), h))
        }
        OpKind::ConvexExtension | OpKind::IntegralBiconjugacy | OpKind::ConjugateClass => {
            Err(DcaError::NotApplicable("conjugacy columns have their own trials".into()))
        }
    }
}

fn closure_trial(cell: &Cell, cfg: &GenConfig, rng: &mut TrialRng, index: u64) -> TrialResult {
    let first = match operand(cell, cfg, rng) {
        Ok(o) => o,
        Err(_) => return TrialResult::Skipped,
    };
    let (inputs, params, result) = match apply_op(cell, &first, cfg, rng) {
        Ok(t) => t,
        Err(_) => return TrialResult::Skipped,
    };
    let (holds, witness) = in_class(cell.class, &result);
    if holds {
        return TrialResult::Held;
    }
    TrialResult::Failed(Box::new(TrialFailure {
        n: cfg.n,
        index,
        inputs,
        result,
        params,
        witness,
        note: format!("result is not {}", cell.class.name()),
    }))
}

// ---------------------------------------------------------------------------
// Conjugacy properties

fn sample_box_points(rng: &mut TrialRng, f: &LatticeFunction, k: usize) -> Vec<Point> {
    let w = f.tight().window().clone();
    (0..k).map(|_| w.lo().iter().zip(w.hi()).map(|(&l, &h)| rng.gen_range(l..=h)).collect()).collect()
}

fn conjugacy_trial(cell: &Cell, cfg: &GenConfig, rng: &mut TrialRng, index: u64) -> TrialResult {
    let RowClass::Fn(class) = cell.class else { return TrialResult::Skipped };
    let Ok(first) = operand(cell, cfg, rng) else { return TrialResult::Skipped };
    let f = first.f.clone();
    let fail = |witness: Option<Witness>, note: String, params: Value, result: LatticeFunction| {
        TrialResult::Failed(Box::new(TrialFailure {
            n: cfg.n,
            index,
            inputs: vec![f.clone()],
            result,
            params,
            witness,
            note,
        }))
    };
    match cell.op {
        OpKind::ConvexExtension => {
            // integral convexity is the certificate; sampled hull points back it up
            let v = check_fn(&f, FnClass::IntegrallyConvex);
            if !v.holds {
                return fail(v.witness, "member is not integrally convex".into(), json!({}), f.clone());
            }
            let pts = sample_box_points(rng, &f, 4);
            match convex_extension_gap_among(&f, &pts) {
                None => TrialResult::Held,
                Some(g) => fail(None, "convex closure below f".into(), g.to_json(), f.clone()),
            }
        }
        OpKind::IntegralBiconjugacy => {
            let mut at: Vec<Point> = (0..3).map(|_| pick_point(rng, &f)).collect();
            at.dedup();
            for x in &at {
                let Ok(b) = biconjugate_at(&f, x) else { return TrialResult::Skipped };
                if b.value != f.eval_raw(x) {
                    return fail(None, "f•• differs from f".into(), json!({"at": x, "biconjugate": b.to_json()}), f.clone());
                }
                let Ok(s) = has_integer_subgradient(&f, x) else { return TrialResult::Skipped };
                if !s.holds {
                    return fail(None, "no integer subgradient".into(), json!({"at": x, "subgradient": s.to_json()}), f.clone());
                }
            }
            if let Some(y) = sample_box_points(rng, &f, 8).into_iter().find(|y| !f.in_dom(y)) {
                let Ok(b) = biconjugate_at(&f, &y) else { return TrialResult::Skipped };
                if b.value != Ext::Inf {
                    return fail(None, "f•• finite off the domain".into(), json!({"at": y, "biconjugate": b.to_json()}), f.clone());
                }
            }
            TrialResult::Held
        }
        OpKind::ConjugateClass => {
            let check = match &first.member {
                Member::Linear(form) => lform_conjugate_check(form, 2),
                Member::Finite(g) => conjugate_class_check_in(g, class, 2),
            };
            match check {
                Ok(c) if c.holds() => TrialResult::Held,
                Ok(c) => {
                    let w = c.verdict.witness.clone();
                    fail(w, format!("conjugate is not {}", c.output_class.name()), c.to_json(), c.conjugate.clone())
                }
                Err(_) => TrialResult::Skipped,
            }
        }
        _ => TrialResult::Skipped,
    }
}

// ---------------------------------------------------------------------------
// Cells

fn cell_label(cell: &Cell, n: usize) -> String {
    format!("{}/{}/{}/n{}", cell.table.name(), cell.class.name(), cell.op.name(), n)
}

fn run_trials(cell: &Cell, vc: &VerifyConfig) -> CellReport {
    let mut trials = Vec::new();
    let mut skipped = 0;
    let mut failure: Option<Box<TrialFailure>> = None;
    let mut short = Vec::new();
    'dims: for &n in &vc.dims {
        let cfg = GenConfig::new(n);
        let label = cell_label(cell, n);
        let mut done = 0;
        let mut index = 0u64;
        let attempts = 4 * vc.trials as u64 + 20;
        while done < vc.trials && index < attempts {
            let mut rng = trial_rng(vc.seed, &label, index);
            let r = if cell.table == TableId::Conjugacy {
                conjugacy_trial(cell, &cfg, &mut rng, index)
            } else {
                closure_trial(cell, &cfg, &mut rng, index)
            };
            index += 1;
            match r {
                TrialResult::Held => done += 1,
                TrialResult::Skipped => skipped += 1,
                TrialResult::Failed(f) => {
                    done += 1;
                    trials.push((n, done));
                    failure = Some(f);
                    break 'dims;
                }
            }
        }
        if done < vc.trials {
            short.push(n);
        }
        trials.push((n, done));
    }
    let (outcome, witness) = match failure {
        Some(f) => {
            let rechecked = f.recheck();
            (Outcome::Fail, json!({"counterexample": f.to_json(), "witness_rechecked": rechecked}))
        }
        None if !short.is_empty() => (Outcome::Fail, json!({"insufficient_trials_at": short})),
        None => (Outcome::Pass, Value::Null),
    };
    CellReport {
        table: cell.table,
        class: cell.class,
        op: cell.op,
        expected: cell.expected,
        outcome,
        trials,
        skipped,
        witness,
    }
}

fn other_operands<'a>(step: &'a Step, inputs: &[&str]) -> Vec<&'a str> {
    step.inputs().into_iter().filter(|i| !inputs.contains(i)).collect()
}

/// The step that produced `name`, looking through reframing.
fn producing_step<'a>(fx: &'a Fixture, name: &str) -> Option<&'a Step> {
    let mut s = fx.step_of(name)?;
    while let Step::Reframe { input, .. } = s {
        s = fx.step_of(input)?;
    }
    Some(s)
}

fn step_matches(step: &Step, op: OpKind, set_table: bool) -> bool {
    match (step, op) {
        (Step::Shift { .. }, OpKind::Shift)
        | (Step::InvertAll { .. }, OpKind::InvertAll)
        | (Step::InvertSigns { .. }, OpKind::InvertSigns)
        | (Step::Permute { .. }, OpKind::Permute)
        | (Step::Varscale { .. }, OpKind::Varscale)
        | (Step::ValueScale { .. }, OpKind::ValueScale)
        | (Step::Restrict { .. }, OpKind::Restrict)
        | (Step::Project { .. }, OpKind::Project) => true,
        (Step::IntersectBox { .. }, OpKind::IntersectBox) => set_table,
        (Step::IntersectBox { .. }, OpKind::AddSeparable) => !set_table,
        (Step::Add { .. }, OpKind::Intersect) => set_table,
        (Step::Add { .. }, OpKind::AddGeneral | OpKind::AddSeparable) => !set_table,
        (Step::Convolve { .. }, OpKind::MinkowskiBox | OpKind::MinkowskiGeneral) => set_table,
        (Step::Convolve { .. }, OpKind::ConvolveSeparable | OpKind::ConvolveGeneral) => !set_table,
        _ => false,
    }
}

/// Re-derives one refutation from its fixture.
pub fn check_refutation(cell: &Cell, r: &Refutation) -> Result<Value> {
    let fx = fixtures::find(r.fixture)
        .ok_or_else(|| DcaError::InvalidArgument(format!("no fixture `{}`", r.fixture)))?;
    let objs = fx.evaluate()?;
    let get = |name: &str| {
        objs.get(name).ok_or_else(|| DcaError::InvalidArgument(format!("{}: no object `{name}`", r.fixture)))
    };
    let class = match cell.class {
        RowClass::Set(c) => ClassRef::Set(c),
        RowClass::Fn(c) => ClassRef::Fn(c),
    };
    let bad = |why: String| Err(DcaError::InvalidArgument(format!("{}: {why}", r.fixture)));
    for i in r.inputs {
        if !judge(get(i)?, &class).0 {
            return bad(format!("input `{i}` is not {}", cell.class.name()));
        }
    }
    let result = fixtures::as_function(get(r.result)?);
    if cell.table == TableId::Conjugacy {
        return conjugacy_refutation(cell, &result).map(|v| json!({"fixture": r.fixture, "object": r.result, "gap": v}));
    }
    let step = producing_step(&fx, r.result).ok_or_else(|| DcaError::InvalidArgument("result is not derived".into()))?;
    if !step_matches(step, cell.op, cell.table.is_set_table()) {
        return bad(format!("`{}` is not produced by {}", r.result, cell.op));
    }
    if cell.op.second_is_separable() {
        let sep = match cell.class {
            RowClass::Set(_) => ClassRef::Set(SetClass::IntegerBox),
            RowClass::Fn(_) => ClassRef::Fn(FnClass::SeparableConvex),
        };
        for o in other_operands(step, r.inputs) {
            if !judge(get(o)?, &sep).0 {
                return bad(format!("operand `{o}` is not separable"));
            }
        }
    } else if cell.op.is_binary() && !matches!(step, Step::IntersectBox { .. }) {
        for o in other_operands(step, r.inputs) {
            if !judge(get(o)?, &class).0 {
                return bad(format!("operand `{o}` is not {}", cell.class.name()));
            }
        }
    }
    let (holds, witness, rechecked) = judge(get(r.result)?, &class);
    if holds || witness.is_none() || !rechecked {
        return bad(format!("`{}` is not refuted by a re-checkable witness", r.result));
    }
    Ok(json!({
        "fixture": r.fixture,
        "object": r.result,
        "witness": witness.as_ref().map(Witness::to_json),
        "witness_rechecked": rechecked,
    }))
}

/// A lattice point where the convex closure, or f••, departs from f.
fn conjugacy_refutation(cell: &Cell, f: &LatticeFunction) -> Result<Value> {
    let w = f.tight().window().clone();
    for x in w.points() {
        if f.in_dom(&x) {
            continue;
        }
        match cell.op {
            OpKind::ConvexExtension => {
                if let Some(g) = convex_extension_gap_among(f, std::slice::from_ref(&x)) {
                    return Ok(g.to_json());
                }
            }
            _ => {
                let b = biconjugate_at(f, &x)?;
                if b.value != f.eval_raw(&x) {
                    return Ok(json!({"at": x, "value": f.eval_raw(&x).to_string(), "biconjugate": b.to_json()}));
                }
            }
        }
    }
    Err(DcaError::InvalidArgument("no gap found".into()))
}

fn refute_cell(cell: &Cell) -> CellReport {
    let mut evidence = Vec::new();
    let mut ok = !cell.refutations.is_empty();
    for r in &cell.refutations {
        match check_refutation(cell, r) {
            Ok(v) => evidence.push(v),
            Err(e) => {
                ok = false;
                evidence.push(json!({"fixture": r.fixture, "error": e.to_string()}));
            }
        }
    }
    CellReport {
        table: cell.table,
        class: cell.class,
        op: cell.op,
        expected: cell.expected,
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        trials: vec![],
        skipped: 0,
        witness: Value::Array(evidence),
    }
}

pub fn verify_cell(cell: &Cell, vc: &VerifyConfig) -> CellReport {
    match cell.expected {
        Expected::Yes => run_trials(cell, vc),
        Expected::No => refute_cell(cell),
        Expected::NotApplicable => CellReport {
            table: cell.table,
            class: cell.class,
            op: cell.op,
            expected: cell.expected,
            outcome: Outcome::NotApplicable,
            trials: vec![],
            skipped: 0,
            witness: Value::Null,
        },
    }
}

pub fn run_registry() -> Vec<FixtureOutcome> {
    fixtures::registry().iter().map(Fixture::run).collect()
}

// ---------------------------------------------------------------------------
// Negative controls

#[derive(Clone, Debug, PartialEq)]
pub struct ControlReport {
    pub name: &'static str,
    /// The corrupted input was rejected.
    pub caught: bool,
    /// The rejection carries a witness that survives re-evaluation.
    pub witness_rechecked: bool,
    pub detail: Value,
}

impl ControlReport {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "caught": self.caught, "witness_rechecked": self.witness_rechecked, "detail": self.detail})
    }
}

/// The diagonal/off-diagonal example with a and b swapped in the object
/// that is claimed M♮-convex; the claim must now fail.
pub fn corrupted_fixture() -> Fixture {
    let mut fx = fixtures::find("jmnatmnat").expect("registered");
    let swapped = fx.objects["f_a1_b2"].clone();
    fx.objects.insert("f_a2_b1".into(), swapped);
    fx.id = "jmnatmnat-corrupted".into();
    fx
}

pub fn control_corrupted_fixture() -> ControlReport {
    let fx = corrupted_fixture();
    let out = fx.run();
    let failing: Vec<&fixtures::ClaimOutcome> = out.claims.iter().filter(|c| !c.passed).collect();
    // re-derive the failing verdict from the object alone
    let objs = fx.evaluate().expect("fixture evaluates");
    let (holds, witness, rechecked) = judge(&objs["f_a2_b1"], &ClassRef::Fn(FnClass::MNat));
    ControlReport {
        name: "corrupted-fixture",
        caught: !out.passed && !failing.is_empty() && !holds,
        witness_rechecked: witness.is_some() && rechecked,
        detail: json!({
            "fixture": fx.id,
            "failing_claims": failing.iter().map(|c| c.detail.clone()).collect::<Vec<_>>(),
            "witness": witness.as_ref().map(Witness::to_json),
        }),
    }
}

/// L-convex sets under independent sign inversion, wrongly marked closed.
pub fn wrong_cell() -> Cell {
    let mut cell = table(TableId::SetsCoordinate)
        .into_iter()
        .find(|c| c.class == RowClass::Set(SetClass::LSet) && c.op == OpKind::InvertSigns)
        .expect("cell exists");
    cell.expected = Expected::Yes;
    cell.refutations.clear();
    cell
}

pub fn control_wrong_cell(vc: &VerifyConfig) -> ControlReport {
    let cell = wrong_cell();
    let rep = run_trials(&cell, vc);
    let rechecked = rep.witness.get("witness_rechecked").and_then(Value::as_bool).unwrap_or(false);
    ControlReport {
        name: "wrong-cell",
        caught: rep.outcome == Outcome::Fail,
        witness_rechecked: rechecked,
        detail: rep.to_json(),
    }
}

// ---------------------------------------------------------------------------
// Report

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub config: VerifyConfig,
    pub cells: Vec<CellReport>,
    pub fixtures: Vec<FixtureOutcome>,
    pub controls: Vec<ControlReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.cells.iter().all(|c| c.outcome != Outcome::Fail)
            && self.fixtures.iter().all(|f| f.passed)
            && self.controls.iter().all(|c| c.caught && c.witness_rechecked)
    }

    pub fn to_json(&self) -> Value {
        let count = |o: Outcome| self.cells.iter().filter(|c| c.outcome == o).count();
        let expected = |e: Expected| self.cells.iter().filter(|c| c.expected == e).count();
        json!({
            "cells": self.cells.iter().map(CellReport::to_json).collect::<Vec<_>>(),
            "fixtures": self.fixtures.iter().map(FixtureOutcome::to_json).collect::<Vec<_>>(),
            "negative_controls": self.controls.iter().map(ControlReport::to_json).collect::<Vec<_>>(),
            "summary": {
                "seed": self.config.seed,
                "trials_per_dim": self.config.trials,
                "dims": self.config.dims,
                "tables": self.config.tables.iter().map(|t| t.name()).collect::<Vec<_>>(),
                "cells": self.cells.len(),
                "yes_cells": expected(Expected::Yes),
                "no_cells": expected(Expected::No),
                "not_applicable_cells": expected(Expected::NotApplicable),
                "pass": count(Outcome::Pass),
                "fail": count(Outcome::Fail),
                "trials": self.cells.iter().map(CellReport::total_trials).sum::<usize>(),
                "fixtures_passed": self.fixtures.iter().filter(|f| f.passed).count(),
                "fixtures": self.fixtures.len(),
                "controls_caught": self.controls.iter().filter(|c| c.caught && c.witness_rechecked).count(),
                "outcome": if self.passed() { "pass" } else { "fail" },
            },
        })
    }
}

/// Every cell of the selected tables, the fixture registry, and the
/// negative controls. The output depends only on the configuration.
pub fn verify_all(vc: &VerifyConfig) -> Report {
    verify_with(vc, |_| {})
}

/// As [`verify_all`], calling `progress` after each cell.
pub fn verify_with(vc: &VerifyConfig, mut progress: impl FnMut(&CellReport)) -> Report {
    let cells: Vec<CellReport> = all_cells()
        .iter()
        .filter(|c| vc.tables.contains(&c.table))
        .map(|c| {
            let r = verify_cell(c, vc);
            progress(&r);
            r
        })
        .collect();
    let controls = vec![control_corrupted_fixture(), control_wrong_cell(vc)];
    Report { config: vc.clone(), cells, fixtures: run_registry(), controls }
}
