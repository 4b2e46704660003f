//! Operations on lattice functions and sets.
//!
//! Every result carries an explicitly computed window, and +∞ outside the
//! domain makes each operation exact rather than a truncation. Set operations
//! go through indicators, so δ_{S₁} □ δ_{S₂} = δ_{S₁+S₂} and
//! δ_{S₁} + δ_{S₂} = δ_{S₁∩S₂} hold by construction.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{same_dim, DcaError, Result};
use crate::lattice::{add_raw, d_apply, d_inverse_apply, total, Point};
use crate::model::{LConvexForm, LatticeFunction, LatticeSet, Window};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoordinateChange {
    /// g(y) = f(y − b)
    Shift(Point),
    /// g(y) = f(−y)
    InvertAll,
    /// g(y) = f(τ₁y₁, …, τₙyₙ) with τᵢ = ±1
    InvertSigns(Vec<i64>),
    /// g(y) = f(y_σ(1), …, y_σ(n)); σ is 0-based
    Permute(Vec<usize>),
    /// g(y) = f(αy), α ≥ 1
    VarScale(i64),
}

impl CoordinateChange {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            CoordinateChange::Shift(b) => same_dim(n, b.len()),
            CoordinateChange::InvertAll => Ok(()),
            CoordinateChange::InvertSigns(t) => {
                same_dim(n, t.len())?;
                if t.iter().all(|&v| v == 1 || v == -1) {
                    Ok(())
                } else {
                    Err(DcaError::InvalidArgument(format!("sign vector {t:?} must have entries ±1")))
                }
            }
            CoordinateChange::Permute(s) => {
                same_dim(n, s.len())?;
                let mut seen = vec![false; n];
                for &i in s {
                    if i >= n || std::mem::replace(&mut seen[i], true) {
                        return Err(DcaError::InvalidArgument(format!("{s:?} is not a permutation")));
                    }
                }
                Ok(())
            }
            CoordinateChange::VarScale(a) => {
                if *a >= 1 {
                    Ok(())
                } else {
                    Err(DcaError::InvalidArgument(format!("scaling factor {a} must be at least 1")))
                }
            }
        }
    }

    /// The inverse change, when there is one (every variant but scaling by α > 1).
    pub fn inverse(&self) -> Option<CoordinateChange> {
        Some(match self {
            CoordinateChange::Shift(b) => CoordinateChange::Shift(b.iter().map(|v| -v).collect()),
            CoordinateChange::Permute(s) => {
                let mut inv = vec![0; s.len()];
                for (i, &j) in s.iter().enumerate() {
                    inv[j] = i;
                }
                CoordinateChange::Permute(inv)
            }
            CoordinateChange::VarScale(1) => CoordinateChange::VarScale(1),
            CoordinateChange::VarScale(_) => return None,
            other => other.clone(),
        })
    }
}

impl fmt::Display for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateChange::Shift(b) => write!(f, "shift{b:?}"),
            CoordinateChange::InvertAll => f.write_str("invert-all"),
            CoordinateChange::InvertSigns(t) => write!(f, "invert-signs{t:?}"),
            CoordinateChange::Permute(s) => write!(f, "permute{s:?}"),
            CoordinateChange::VarScale(a) => write!(f, "varscale({a})"),
        }
    }
}

fn negate_where(w: &Window, flip: impl Fn(usize) -> bool) -> Result<Window> {
    let n = w.dim();
    let lo = (0..n).map(|i| if flip(i) { -w.hi()[i] } else { w.lo()[i] }).collect();
    let hi = (0..n).map(|i| if flip(i) { -w.lo()[i] } else { w.hi()[i] }).collect();
    Window::new(lo, hi)
}

/// Rebuilds f through a bijection of points: the value at x moves to `map(x)`.
fn transport(f: &LatticeFunction, window: Window, map: impl Fn(&[i64]) -> Point) -> Result<LatticeFunction> {
    let values = f.iter().map(|(x, v)| (map(x), v.clone())).collect();
    LatticeFunction::new(window, values)
}

pub fn apply_change(f: &LatticeFunction, c: &CoordinateChange) -> Result<LatticeFunction> {
    let n = f.dim();
    c.validate(n)?;
    let w = f.window();
    match c {
        CoordinateChange::Shift(b) => transport(f, w.shifted(b)?, |x| add_raw(x, b)),
        CoordinateChange::InvertAll => transport(f, negate_where(w, |_| true)?, |x| x.iter().map(|v| -v).collect()),
        CoordinateChange::InvertSigns(t) => {
            transport(f, negate_where(w, |i| t[i] < 0)?, |x| x.iter().zip(t).map(|(v, s)| v * s).collect())
        }
        CoordinateChange::Permute(s) => {
            // g(y) = f(x) with xᵢ = y_σ(i), so y_σ(i) = xᵢ.
            let place = |x: &[i64]| {
                let mut y = vec![0; n];
                for i in 0..n {
                    y[s[i]] = x[i];
                }
                y
            };
            let window = Window::new(place(w.lo()), place(w.hi()))?;
            transport(f, window, place)
        }
        CoordinateChange::VarScale(a) => {
            let lo: Point = w.lo().iter().map(|v| v.div_euclid(*a) + i64::from(v.rem_euclid(*a) != 0)).collect();
            let hi: Point = w.hi().iter().map(|v| v.div_euclid(*a)).collect();
            if lo.iter().zip(&hi).any(|(l, h)| l > h) {
                return Err(DcaError::EmptyResult("scaled window contains no integer point".into()));
            }
            let values: BTreeMap<Point, Rat> = f
                .iter()
                .filter(|(x, _)| x.iter().all(|v| v % a == 0))
                .map(|(x, v)| (x.iter().map(|c| c / a).collect(), v.clone()))
                .collect();
            if values.is_empty() {
                return Err(DcaError::EmptyResult("scaled domain is empty".into()));
            }
            LatticeFunction::new(Window::new(lo, hi)?, values)
        }
    }
}

pub fn apply_change_set(s: &LatticeSet, c: &CoordinateChange) -> Result<LatticeSet> {
    Ok(apply_change(&LatticeFunction::indicator(s), c)?.support_set())
}

/// g = a·f, with dom g = dom f even for a = 0.
pub fn value_scale(f: &LatticeFunction, a: &Rat) -> Result<LatticeFunction> {
    if a.is_negative() {
        return Err(DcaError::InvalidArgument(format!("value scale {a} must be nonnegative")));
    }
    Ok(f.map_values(|_, v| v * a))
}

fn check_subset(n: usize, u: &[usize]) -> Result<()> {
    if u.is_empty() {
        return Err(DcaError::ZeroDimension);
    }
    if u.iter().any(|&i| i >= n) || u.windows(2).any(|p| p[0] >= p[1]) {
        return Err(DcaError::InvalidArgument(format!("{u:?} is not an increasing index subset of 0..{n}")));
    }
    Ok(())
}

fn pick(x: &[i64], u: &[usize]) -> Point {
    u.iter().map(|&i| x[i]).collect()
}

fn sub_window(w: &Window, u: &[usize]) -> Result<Window> {
    Window::new(pick(w.lo(), u), pick(w.hi(), u))
}

/// g(y) = f(y, 𝟎) with y on the coordinates in `u` (0-based, increasing).
pub fn restrict(f: &LatticeFunction, u: &[usize]) -> Result<LatticeFunction> {
    check_subset(f.dim(), u)?;
    let values: BTreeMap<Point, Rat> = f
        .iter()
        .filter(|(x, _)| (0..x.len()).all(|i| u.contains(&i) || x[i] == 0))
        .map(|(x, v)| (pick(x, u), v.clone()))
        .collect();
    if values.is_empty() {
        return Err(DcaError::EmptyResult("restriction has an empty domain".into()));
    }
    LatticeFunction::new(sub_window(f.window(), u)?, values)
}

/// f on the box, +∞ elsewhere; the result's window is the box.
pub fn restrict_box(f: &LatticeFunction, b: &Window) -> Result<LatticeFunction> {
    same_dim(f.dim(), b.dim())?;
    f.with_window(b.clone()).map_err(|e| match e {
        DcaError::EmptyDomain => DcaError::EmptyResult("restriction to the box has an empty domain".into()),
        e => e,
    })
}

/// g(y) = min_z f(y, z) with y on the coordinates in `u`.
pub fn project(f: &LatticeFunction, u: &[usize]) -> Result<LatticeFunction> {
    check_subset(f.dim(), u)?;
    let mut values: BTreeMap<Point, Rat> = BTreeMap::new();
    for (x, v) in f.iter() {
        values
            .entry(pick(x, u))
            .and_modify(|m| {
                if v < m {
                    *m = v.clone();
                }
            })
            .or_insert_with(|| v.clone());
    }
    LatticeFunction::new(sub_window(f.window(), u)?, values)
}

pub fn add(f1: &LatticeFunction, f2: &LatticeFunction) -> Result<LatticeFunction> {
    same_dim(f1.dim(), f2.dim())?;
    let empty = || DcaError::EmptyResult("the domains do not intersect".into());
    let window = f1.window().intersect(f2.window()).ok_or_else(empty)?;
    let values: BTreeMap<Point, Rat> =
        f1.iter().filter_map(|(x, v)| f2.get(x).map(|w| (x.clone(), v + w))).collect();
    if values.is_empty() {
        return Err(empty());
    }
    LatticeFunction::new(window, values)
}

pub fn intersect(s1: &LatticeSet, s2: &LatticeSet) -> Result<LatticeSet> {
    Ok(add(&LatticeFunction::indicator(s1), &LatticeFunction::indicator(s2))?.support_set())
}

pub fn intersect_box(s: &LatticeSet, b: &Window) -> Result<LatticeSet> {
    Ok(restrict_box(&LatticeFunction::indicator(s), b)?.support_set())
}

/// Infimal convolution (f₁ □ f₂)(x) = min_{y+z=x} f₁(y) + f₂(z), by double enumeration.
pub fn convolve(f1: &LatticeFunction, f2: &LatticeFunction) -> Result<LatticeFunction> {
    same_dim(f1.dim(), f2.dim())?;
    let window = f1.window().sum(f2.window())?;
    let mut values: BTreeMap<Point, Rat> = BTreeMap::new();
    for (y, a) in f1.iter() {
        for (z, b) in f2.iter() {
            let v = a + b;
            values
                .entry(add_raw(y, z))
                .and_modify(|m| {
                    if v < *m {
                        *m = v.clone();
                    }
                })
                .or_insert(v);
        }
    }
    LatticeFunction::new(window, values)
}

pub fn minkowski(s1: &LatticeSet, s2: &LatticeSet) -> Result<LatticeSet> {
    Ok(convolve(&LatticeFunction::indicator(s1), &LatticeFunction::indicator(s2))?.support_set())
}

/// Minkowski sum of several sets, folded left to right.
pub fn minkowski_all(sets: &[LatticeSet]) -> Result<LatticeSet> {
    let (first, rest) = sets.split_first().ok_or_else(|| DcaError::InvalidArgument("no sets to add".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| minkowski(&acc, s))
}

pub fn restrict_set(s: &LatticeSet, u: &[usize]) -> Result<LatticeSet> {
    Ok(restrict(&LatticeFunction::indicator(s), u)?.support_set())
}

pub fn project_set(s: &LatticeSet, u: &[usize]) -> Result<LatticeSet> {
    Ok(project(&LatticeFunction::indicator(s), u)?.support_set())
}

fn prepend(window: &Window, lo0: i64, hi0: i64) -> Result<Window> {
    let mut lo = vec![lo0];
    lo.extend_from_slice(window.lo());
    let mut hi = vec![hi0];
    hi.extend_from_slice(window.hi());
    Window::new(lo, hi)
}

/// f̃(x₀, x) = f(x) if x₀ = −x(N), +∞ otherwise. f̃ is M-convex iff f is M♮-convex.
pub fn lift_mnat_to_m(f: &LatticeFunction) -> Result<LatticeFunction> {
    let w = f.window();
    let window = prepend(w, -total(w.hi()), -total(w.lo()))?;
    transport(f, window, |x| {
        let mut p = vec![-total(x)];
        p.extend_from_slice(x);
        p
    })
}

/// f̃(x₀, x) = f(x) if x₀ = π(x), the parity of x(N). f̃ is jump M-convex iff f is jump M♮-convex.
pub fn lift_jump_mnat_to_m(f: &LatticeFunction) -> Result<LatticeFunction> {
    let window = prepend(f.window(), 0, 1)?;
    transport(f, window, |x| {
        let mut p = vec![total(x).rem_euclid(2)];
        p.extend_from_slice(x);
        p
    })
}

/// f̃(x₀, x) = f(x − x₀𝟏), an L-convex function when f is L♮-convex.
///
/// In structural form f̃(y) = f(y₁ − y₀, …, yₙ − y₀) + 0·y₀, so the base is f
/// itself and the slope along 𝟏 is zero.
pub fn lift_lnat_to_l(f: &LatticeFunction) -> LConvexForm {
    LConvexForm::new(f.clone(), Rat::zero())
}

/// g(p) = f(Dp). f is multimodular iff g is L♮-convex.
pub fn mm_to_lnat(f: &LatticeFunction) -> Result<LatticeFunction> {
    let pts: Vec<Point> = f.iter().map(|(x, _)| d_inverse_apply(x)).collect();
    let window = Window::bounding(pts.iter()).ok_or(DcaError::EmptyDomain)??;
    transport(f, window, d_inverse_apply)
}

/// f(x) = g(D⁻¹x), the inverse of [`mm_to_lnat`].
pub fn lnat_to_mm(g: &LatticeFunction) -> Result<LatticeFunction> {
    let pts: Vec<Point> = g.iter().map(|(p, _)| d_apply(p)).collect();
    let window = Window::bounding(pts.iter()).ok_or(DcaError::EmptyDomain)??;
    transport(g, window, d_apply)
}
