//! Seeded generators of class members.
//!
//! Every generator draws a candidate from a construction that lands in the
//! class by a known closure rule (separable sums, difference-constrained
//! L♮ functions, laminar M♮ functions, conjugates, lifts, bidiagonal images,
//! convolutions of two-point jump pieces), then re-validates it with the
//! checker. A candidate that the checker rejects is discarded and redrawn;
//! after [`BUDGET`] rejections generation fails loudly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{check_fn, check_set, FnClass, SetClass};
use crate::conjugacy::{centered_window, conjugate};
use crate::error::{DcaError, Result};
use crate::lattice::{add_raw, sub_raw, Point};
use crate::model::{LConvexForm, LatticeFunction, LatticeSet, Window};
use crate::rat::Rat;
use crate::transform::{add, apply_change, convolve, lift_jump_mnat_to_m, lift_mnat_to_m, lnat_to_mm, CoordinateChange};

pub type TrialRng = ChaCha8Rng;

/// Rejections tolerated before a generator gives up.
pub const BUDGET: usize = 200;

/// Radius of the cube on which L-convex members are materialized.
pub const L_RADIUS: i64 = 4;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The stream for one trial depends only on (seed, label, index), so trials
/// can run in any order and still reproduce.
pub fn trial_rng(seed: u64, label: &str, index: u64) -> TrialRng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(splitmix(seed ^ splitmix(h ^ splitmix(index))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub n: usize,
    /// Lattice points per axis of the base window [0, width−1]ⁿ.
    pub width: i64,
    /// Bound on the random increments that shape the values.
    pub values: i64,
}

impl GenConfig {
    pub fn new(n: usize) -> GenConfig {
        GenConfig { n, width: 4, values: 3 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=4).contains(&self.n) {
            return Err(DcaError::InvalidArgument(format!("generator dimension {} is outside 1..=4", self.n)));
        }
        if !(1..=6).contains(&self.width) {
            return Err(DcaError::InvalidArgument(format!("generator width {} is outside 1..=6", self.width)));
        }
        if self.values < 0 {
            return Err(DcaError::InvalidArgument("value bound must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn window(&self) -> Window {
        Window::cube(self.n, 0, self.width - 1).expect("validated")
    }

    fn with_dim(&self, n: usize) -> GenConfig {
        GenConfig { n, ..self.clone() }
    }

    fn hi(&self) -> i64 {
        self.width - 1
    }
}

/// A generated member. L-convex members are unbounded along 𝟏 and stay in
/// structural form until an operation needs a finite window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Finite(LatticeFunction),
    Linear(LConvexForm),
}

impl Member {
    pub fn dim(&self) -> usize {
        match self {
            Member::Finite(f) => f.dim(),
            Member::Linear(l) => l.dim(),
        }
    }

    /// Finite members come back unchanged; L-convex ones are cut to [−r, r]ⁿ.
    pub fn materialize(&self, r: i64) -> Result<LatticeFunction> {
        match self {
            Member::Finite(f) => Ok(f.clone()),
            Member::Linear(l) => l.materialize(Window::cube(l.dim(), -r, r)?),
        }
    }

    /// max |xᵢ − xⱼ| over the domain; bounded for L-convex members.
    pub fn span(&self) -> i64 {
        let spread = |x: &[i64]| x.iter().max().unwrap() - x.iter().min().unwrap();
        match self {
            Member::Finite(f) => f.iter().map(|(x, _)| spread(x)).max().unwrap_or(0),
            Member::Linear(l) => l
                .base
                .iter()
                .map(|(b, _)| {
                    let mut x = vec![0];
                    x.extend_from_slice(b);
                    spread(&x)
                })
                .max()
                .unwrap_or(0),
        }
    }
}

fn interval(rng: &mut TrialRng, lo: i64, hi: i64) -> (i64, i64) {
    if rng.gen_bool(0.5) {
        return (lo, hi);
    }
    let a = rng.gen_range(lo..=hi);
    let b = rng.gen_range(lo..=hi);
    (a.min(b), a.max(b))
}

/// Values of a convex sequence of the given length.
fn convex_seq(rng: &mut TrialRng, len: usize, bound: i64, zero: bool) -> Vec<i64> {
    if zero || bound == 0 {
        return vec![0; len];
    }
    let mut slopes: Vec<i64> = (1..len).map(|_| rng.gen_range(-bound..=bound)).collect();
    slopes.sort_unstable();
    let mut v = rng.gen_range(-bound..=bound);
    let mut out = vec![v];
    for s in slopes {
        v += s;
        out.push(v);
    }
    out
}

fn finish(window: Window, mut f: impl FnMut(&[i64]) -> Option<i64>) -> Option<LatticeFunction> {
    LatticeFunction::from_fn(window, |x| f(x).map(Rat::int)).ok()
}

fn random_box(rng: &mut TrialRng, cfg: &GenConfig) -> Window {
    let (lo, hi): (Point, Point) = (0..cfg.n).map(|_| interval(rng, 0, cfg.hi())).unzip();
    Window::new(lo, hi).expect("ordered")
}

fn separable(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let b = random_box(rng, cfg);
    let phis: Vec<Vec<i64>> =
        (0..cfg.n).map(|i| convex_seq(rng, (b.hi()[i] - b.lo()[i] + 1) as usize, cfg.values, zero)).collect();
    let lo = b.lo().to_vec();
    finish(cfg.window(), |x| {
        b.contains(x).then(|| (0..x.len()).map(|i| phis[i][(x[i] - lo[i]) as usize]).sum())
    })
}

/// Σ φᵢ(xᵢ) + Σ ψᵢⱼ(xᵢ − xⱼ) on a box cut by difference constraints.
fn lnat(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let n = cfg.n;
    let hi = cfg.hi();
    let b = random_box(rng, cfg);
    let mut diff_bounds = Vec::new();
    let mut psis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                let (l, u) = interval(rng, -hi, hi);
                diff_bounds.push((i, j, l, u));
            }
            if rng.gen_bool(0.6) {
                psis.push((i, j, convex_seq(rng, (2 * hi + 1) as usize, cfg.values, zero)));
            }
        }
    }
    let phis: Vec<Vec<i64>> = (0..n).map(|_| convex_seq(rng, (hi + 1) as usize, cfg.values, zero)).collect();
    finish(cfg.window(), |x| {
        if !b.contains(x) || diff_bounds.iter().any(|&(i, j, l, u)| x[i] - x[j] < l || x[i] - x[j] > u) {
            return None;
        }
        let mut v: i64 = (0..n).map(|i| phis[i][x[i] as usize]).sum();
        for (i, j, psi) in &psis {
            v += psi[(x[*i] - x[*j] + hi) as usize];
        }
        Some(v)
    })
}

/// A random laminar family on 0..n that always contains the singletons.
fn laminar(rng: &mut TrialRng, n: usize) -> Vec<Vec<usize>> {
    let mut fam: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // nested prefixes of a random order, plus a disjoint pair when n = 4
    let mut k = 2;
    while k < n {
        if rng.gen_bool(0.5) {
            let mut a = order[..k].to_vec();
            a.sort_unstable();
            fam.push(a);
        }
        k += 1;
    }
    if n == 4 && rng.gen_bool(0.3) {
        let mut a = order[2..].to_vec();
        a.sort_unstable();
        fam.push(a);
    }
    if n >= 2 && rng.gen_bool(0.6) {
        fam.push((0..n).collect());
    }
    fam.dedup();
    fam
}

/// Σ_A φ_A(x(A)) over a laminar family, each φ_A convex on an interval.
fn laminar_mnat(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let hi = cfg.hi();
    let parts: Vec<(Vec<usize>, i64, Vec<i64>)> = laminar(rng, cfg.n)
        .into_iter()
        .map(|a| {
            let (l, u) = interval(rng, 0, hi * a.len() as i64);
            let phi = convex_seq(rng, (u - l + 1) as usize, cfg.values, zero);
            (a, l, phi)
        })
        .collect();
    finish(cfg.window(), |x| {
        let mut v = 0;
        for (a, l, phi) in &parts {
            let s: i64 = a.iter().map(|&i| x[i]).sum();
            let k = s - l;
            if k < 0 || k >= phi.len() as i64 {
                return None;
            }
            v += phi[k as usize];
        }
        Some(v)
    })
}

/// The conjugate of a small L♮ function, cut to a box of slopes.
fn conjugate_mnat(rng: &mut TrialRng, cfg: &GenConfig) -> Option<LatticeFunction> {
    let small = GenConfig { width: cfg.width.min(3), values: cfg.values.min(2), ..cfg.clone() };
    let g = lnat(rng, &small, false)?;
    let r = rng.gen_range(1..=2);
    conjugate(&g, &centered_window(cfg.n, r).ok()?).ok().map(|c| c.function)
}

fn random_shift(rng: &mut TrialRng, n: usize, r: i64) -> Point {
    (0..n).map(|_| rng.gen_range(-r..=r)).collect()
}

fn pick_point(rng: &mut TrialRng, f: &LatticeFunction) -> Point {
    let k = rng.gen_range(0..f.dom_size());
    f.iter().nth(k).expect("index in range").0.clone()
}

/// Translates g so that a random point of its domain lands on a random point of dom f.
pub fn align(rng: &mut TrialRng, f: &LatticeFunction, g: &LatticeFunction) -> Result<LatticeFunction> {
    let x = pick_point(rng, f);
    let y = pick_point(rng, g);
    apply_change(g, &CoordinateChange::Shift(sub_raw(&x, &y)))
}

fn mnat(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    if !zero && rng.gen_bool(0.3) {
        conjugate_mnat(rng, cfg)
    } else {
        laminar_mnat(rng, cfg, zero)
    }
}

fn m(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    if cfg.n == 1 {
        let v = if zero { 0 } else { rng.gen_range(-cfg.values..=cfg.values) };
        return LatticeFunction::from_pairs(vec![(vec![rng.gen_range(0..=cfg.hi())], Rat::int(v))]).ok();
    }
    let base = mnat(rng, &cfg.with_dim(cfg.n - 1), zero)?;
    let lifted = lift_mnat_to_m(&base).ok()?;
    let b = random_shift(rng, cfg.n, 2);
    apply_change(&lifted, &CoordinateChange::Shift(b)).ok()
}

/// δ-style two-point function {a ↦ v₁, a + s ↦ v₂} with s a 2-step.
fn jump_piece(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let n = cfg.n;
    let mut s = vec![0; n];
    let i = rng.gen_range(0..n);
    if n == 1 || rng.gen_bool(0.3) {
        s[i] = if rng.gen_bool(0.5) { 2 } else { -2 };
    } else {
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        s[i] = if rng.gen_bool(0.5) { 1 } else { -1 };
        s[j] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    let a: Point = (0..n).map(|_| rng.gen_range(0..=1)).collect();
    let (v1, v2) = if zero {
        (0, 0)
    } else {
        (rng.gen_range(-cfg.values..=cfg.values), rng.gen_range(-cfg.values..=cfg.values))
    };
    LatticeFunction::from_pairs(vec![(a.clone(), Rat::int(v1)), (add_raw(&a, &s), Rat::int(v2))]).ok()
}

fn jump_mnat(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let small = GenConfig { width: cfg.width.min(3), ..cfg.clone() };
    let mut f = if rng.gen_bool(0.7) { mnat(rng, &small, zero)? } else { jump_piece(rng, cfg, zero)? };
    for _ in 0..rng.gen_range(0..=2) {
        f = convolve(&f, &jump_piece(rng, cfg, zero)?).ok()?;
    }
    Some(f)
}

fn jump_m(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    match rng.gen_range(0..3) {
        0 => m(rng, cfg, zero),
        1 if cfg.n >= 2 => lift_jump_mnat_to_m(&jump_mnat(rng, &cfg.with_dim(cfg.n - 1), zero)?).ok(),
        _ => {
            let small = GenConfig { width: cfg.width.min(3), ..cfg.clone() };
            let mut f = m(rng, &small, zero)?;
            for _ in 0..rng.gen_range(1..=2) {
                f = convolve(&f, &jump_piece(rng, cfg, zero)?).ok()?;
            }
            Some(f)
        }
    }
}

/// Arbitrary values on a random subset of a unit cube: no pair is two apart,
/// so every midpoint condition at distance ≥ 2 is vacuous.
fn unit_cube(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let base: Point = (0..cfg.n).map(|_| rng.gen_range(0..cfg.hi().max(1))).collect();
    let cube = Window::new(base.clone(), base.iter().map(|v| v + 1).collect()).ok()?;
    let mut pairs = Vec::new();
    for x in cube.points() {
        if rng.gen_bool(0.7) {
            let v = if zero { 0 } else { rng.gen_range(-cfg.values..=cfg.values) };
            pairs.push((x, Rat::int(v)));
        }
    }
    LatticeFunction::from_pairs(pairs).ok()
}

fn integrally_convex(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    let small = GenConfig { width: cfg.width.min(3), ..cfg.clone() };
    match rng.gen_range(0..5) {
        0 => lnat(rng, cfg, zero),
        1 => mnat(rng, cfg, zero),
        2 => lnat_to_mm(&lnat(rng, &small, zero)?).ok(),
        3 => {
            let f = mnat(rng, cfg, zero)?;
            let g = mnat(rng, cfg, zero)?;
            add(&f, &align(rng, &f, &g).ok()?).ok()
        }
        _ => {
            let tiny = GenConfig { width: cfg.width.min(2), ..cfg.clone() };
            convolve(&lnat(rng, &small, zero)?, &lnat(rng, &tiny, zero)?).ok()
        }
    }
}

fn dmc(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LatticeFunction> {
    if rng.gen_bool(0.6) {
        lnat(rng, cfg, zero)
    } else {
        unit_cube(rng, cfg, zero)
    }
}

fn lform(rng: &mut TrialRng, cfg: &GenConfig, zero: bool) -> Option<LConvexForm> {
    if cfg.n < 2 {
        return None;
    }
    let base_cfg = GenConfig { n: cfg.n - 1, width: cfg.width.min(3), values: cfg.values.min(2) };
    let base = lnat(rng, &base_cfg, zero)?;
    let slope = if zero { 0 } else { rng.gen_range(-cfg.values..=cfg.values) };
    Some(LConvexForm::new(base, Rat::int(slope)))
}

fn draw_fn(rng: &mut TrialRng, class: FnClass, cfg: &GenConfig, zero: bool) -> Option<Member> {
    let f = match class {
        FnClass::SeparableConvex => separable(rng, cfg, zero),
        FnClass::IntegrallyConvex => integrally_convex(rng, cfg, zero),
        FnClass::LNat => lnat(rng, cfg, zero),
        FnClass::L => return lform(rng, cfg, zero).map(Member::Linear),
        FnClass::MNat => mnat(rng, cfg, zero),
        FnClass::M => m(rng, cfg, zero),
        FnClass::Multimodular => lnat_to_mm(&lnat(rng, cfg, zero)?).ok(),
        FnClass::GlobalDmc | FnClass::LocalDmc => dmc(rng, cfg, zero),
        FnClass::JumpMNat => jump_mnat(rng, cfg, zero),
        FnClass::JumpM => jump_m(rng, cfg, zero),
        // submodular and supermodular members come from their natural subclasses
        FnClass::Submodular => lnat(rng, cfg, zero),
        FnClass::Supermodular => mnat(rng, cfg, zero),
    };
    f.map(Member::Finite)
}

fn validated_fn(m: &Member, class: FnClass) -> bool {
    match m {
        Member::Finite(f) => check_fn(f, class).holds,
        Member::Linear(l) => {
            let r = L_RADIUS.max(m.span() + 2);
            l.materialize(Window::cube(l.dim(), -r, r).expect("valid")).is_ok_and(|f| check_fn(&f, class).holds)
        }
    }
}

/// A member of a function class, redrawn until the checker accepts it.
pub fn generate_fn(class: FnClass, cfg: &GenConfig, rng: &mut TrialRng) -> Result<Member> {
    cfg.validate()?;
    for _ in 0..BUDGET {
        if let Some(m) = draw_fn(rng, class, cfg, false) {
            if m.materialize(L_RADIUS).is_ok() && validated_fn(&m, class) {
                return Ok(m);
            }
        }
    }
    Err(DcaError::Generation(format!("no {class} member of dimension {} after {BUDGET} draws", cfg.n)))
}

fn set_source(class: SetClass) -> FnClass {
    match class {
        SetClass::JumpSystem => FnClass::JumpMNat,
        c => c.indicator_class().expect("every other set class has an indicator class"),
    }
}

/// A member of a set class, as a zero-valued function (its indicator).
pub fn generate_set(class: SetClass, cfg: &GenConfig, rng: &mut TrialRng) -> Result<Member> {
    cfg.validate()?;
    let source = set_source(class);
    for _ in 0..BUDGET {
        let Some(m) = draw_fn(rng, source, cfg, true) else { continue };
        let ok = match &m {
            Member::Finite(f) => check_set(&f.support_set(), class).holds,
            Member::Linear(_) => m.materialize(L_RADIUS).is_ok_and(|f| check_set(&f.support_set(), class).holds),
        };
        if ok {
            return Ok(m);
        }
    }
    Err(DcaError::Generation(format!("no {class} member of dimension {} after {BUDGET} draws", cfg.n)))
}

/// A member of a set class as a [`LatticeSet`]; L-sets are cut to [−L_RADIUS, L_RADIUS]ⁿ.
pub fn generate_lattice_set(class: SetClass, cfg: &GenConfig, seed: u64) -> Result<LatticeSet> {
    let mut rng = trial_rng(seed, class.name(), 0);
    Ok(generate_set(class, cfg, &mut rng)?.materialize(L_RADIUS)?.support_set())
}

/// A member of a function class; L-convex members are cut to [−L_RADIUS, L_RADIUS]ⁿ.
pub fn generate_function(class: FnClass, cfg: &GenConfig, seed: u64) -> Result<LatticeFunction> {
    let mut rng = trial_rng(seed, class.name(), 0);
    generate_fn(class, cfg, &mut rng)?.materialize(L_RADIUS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::total;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = trial_rng(7, "x", 3).gen();
        let b: u64 = trial_rng(7, "x", 3).gen();
        let c: u64 = trial_rng(7, "x", 4).gen();
        let d: u64 = trial_rng(7, "y", 3).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_ne!(a, d);
    }

    #[test]
    fn every_function_class_generates_at_dims_two_and_three() {
        for n in [2, 3] {
            for c in FnClass::ALL {
                for t in 0..5 {
                    let mut rng = trial_rng(1, c.name(), t);
                    let m = generate_fn(c, &GenConfig::new(n), &mut rng).unwrap();
                    assert_eq!(m.dim(), n);
                }
            }
        }
    }

    #[test]
    fn every_set_class_generates() {
        for n in [2, 3] {
            for c in SetClass::ALL {
                for t in 0..5 {
                    let mut rng = trial_rng(2, c.name(), t);
                    generate_set(c, &GenConfig::new(n), &mut rng).unwrap();
                }
            }
        }
    }

    #[test]
    fn cp_jump_members_share_parity() {
        for t in 0..20 {
            let mut rng = trial_rng(3, "cp", t);
            let f = generate_set(SetClass::CpJump, &GenConfig::new(2), &mut rng).unwrap().materialize(0).unwrap();
            let parities: std::collections::BTreeSet<i64> = f.iter().map(|(x, _)| total(x).rem_euclid(2)).collect();
            assert_eq!(parities.len(), 1);
        }
    }

    #[test]
    fn bad_config_is_rejected() {
        let mut rng = trial_rng(0, "", 0);
        assert!(generate_fn(FnClass::LNat, &GenConfig::new(5), &mut rng).is_err());
        let wide = GenConfig { width: 7, ..GenConfig::new(2) };
        assert!(generate_fn(FnClass::LNat, &wide, &mut rng).is_err());
    }
}
