//! Finite-window functions ℤⁿ → ℚ ∪ {+∞} and explicit lattice sets.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use crate::error::{same_dim, DcaError, Result};
use crate::lattice::Point;
use crate::rat::Rat;

/// Hard cap on window cardinality; keeps dense views addressable.
pub const MAX_WINDOW_POINTS: u128 = 1 << 26;

/// Coordinates are limited to ±2³¹ so sums of a few points never overflow i64.
pub const COORD_LIMIT: i64 = 1 << 31;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ext {
    Fin(Rat),
    Inf,
}

impl Ext {
    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn fin(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            Ext::Inf => None,
        }
    }

    pub fn from_opt(v: Option<&Rat>) -> Ext {
        v.map_or(Ext::Inf, |r| Ext::Fin(r.clone()))
    }

    pub fn int(v: i64) -> Ext {
        Ext::Fin(Rat::int(v))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Ext) -> Ordering {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
            (Ext::Fin(_), Ext::Inf) => Ordering::Less,
            (Ext::Inf, Ext::Fin(_)) => Ordering::Greater,
            (Ext::Inf, Ext::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Ext) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Ext {
    type Output = Ext;
    fn add(self, rhs: &Ext) -> Ext {
        match (self, rhs) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        &self + &rhs
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Fin(r) => write!(f, "{r}"),
            Ext::Inf => write!(f, "+inf"),
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Integer box [lo, hi].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    lo: Point,
    hi: Point,
}

impl Window {
    pub fn new(lo: Point, hi: Point) -> Result<Window> {
        same_dim(lo.len(), hi.len())?;
        if lo.is_empty() {
            return Err(DcaError::ZeroDimension);
        }
        let mut card: u128 = 1;
        for i in 0..lo.len() {
            if lo[i] > hi[i] {
                return Err(DcaError::InvalidWindow(format!(
                    "lo[{i}] = {} exceeds hi[{i}] = {}",
                    lo[i], hi[i]
                )));
            }
            if lo[i] < -COORD_LIMIT || hi[i] > COORD_LIMIT {
                return Err(DcaError::InvalidWindow(format!("coordinate {i} exceeds ±2^31")));
            }
            card = card.saturating_mul((hi[i] - lo[i] + 1) as u128);
        }
        if card > MAX_WINDOW_POINTS {
            return Err(DcaError::InvalidWindow(format!("{card} points exceed the window cap")));
        }
        Ok(Window { lo, hi })
    }

    /// [lo, hi]ⁿ.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Window> {
        Window::new(vec![lo; n], vec![hi; n])
    }

    pub fn single(x: &[i64]) -> Result<Window> {
        Window::new(x.to_vec(), x.to_vec())
    }

    /// Smallest box containing every point; `None` for an empty iterator.
    pub fn bounding<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Option<Result<Window>> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in it {
            if p.len() != lo.len() {
                return Some(Err(DcaError::DimensionMismatch { expected: lo.len(), found: p.len() }));
            }
            for i in 0..p.len() {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        Some(Window::new(lo, hi))
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn card(&self) -> usize {
        (0..self.dim()).map(|i| (self.hi[i] - self.lo[i] + 1) as usize).product()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.dim() && (0..x.len()).all(|i| self.lo[i] <= x[i] && x[i] <= self.hi[i])
    }

    pub fn contains_window(&self, w: &Window) -> bool {
        self.contains(&w.lo) && self.contains(&w.hi)
    }

    pub fn on_boundary(&self, x: &[i64]) -> bool {
        (0..x.len()).any(|i| x[i] == self.lo[i] || x[i] == self.hi[i])
    }

    /// Minkowski sum of boxes.
    pub fn sum(&self, other: &Window) -> Result<Window> {
        same_dim(self.dim(), other.dim())?;
        Window::new(
            crate::lattice::add_raw(&self.lo, &other.lo),
            crate::lattice::add_raw(&self.hi, &other.hi),
        )
    }

    pub fn intersect(&self, other: &Window) -> Option<Window> {
        if self.dim() != other.dim() {
            return None;
        }
        let lo = crate::lattice::join_raw(&self.lo, &other.lo);
        let hi = crate::lattice::meet_raw(&self.hi, &other.hi);
        Window::new(lo, hi).ok()
    }

    pub fn expand(&self, r: i64) -> Result<Window> {
        Window::new(
            self.lo.iter().map(|v| v - r).collect(),
            self.hi.iter().map(|v| v + r).collect(),
        )
    }

    /// Shrinks each side by `r`; `None` if nothing is left.
    pub fn shrink(&self, r: i64) -> Option<Window> {
        Window::new(
            self.lo.iter().map(|v| v + r).collect(),
            self.hi.iter().map(|v| v - r).collect(),
        )
        .ok()
    }

    pub fn shifted(&self, b: &[i64]) -> Result<Window> {
        same_dim(self.dim(), b.len())?;
        Window::new(crate::lattice::add_raw(&self.lo, b), crate::lattice::add_raw(&self.hi, b))
    }

    /// Position of x in the lexicographic enumeration; x must be inside.
    pub fn index(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        for i in 0..self.dim() {
            let w = (self.hi[i] - self.lo[i] + 1) as usize;
            idx = idx * w + (x[i] - self.lo[i]) as usize;
        }
        idx
    }

    pub fn points(&self) -> WindowIter<'_> {
        WindowIter { w: self, next: Some(self.lo.clone()) }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}, {:?}]", self.lo, self.hi)
    }
}

/// Lexicographic walk over a window.
pub struct WindowIter<'a> {
    w: &'a Window,
    next: Option<Point>,
}

impl Iterator for WindowIter<'_> {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut i = nxt.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if nxt[i] < self.w.hi[i] {
                nxt[i] += 1;
                self.next = Some(nxt);
                break;
            }
            nxt[i] = self.w.lo[i];
        }
        Some(cur)
    }
}

/// A function with finite values on a subset of a window, +∞ elsewhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeFunction {
    window: Window,
    values: BTreeMap<Point, Rat>,
}

impl LatticeFunction {
    pub fn new(window: Window, values: BTreeMap<Point, Rat>) -> Result<LatticeFunction> {
        if values.is_empty() {
            return Err(DcaError::EmptyDomain);
        }
        for x in values.keys() {
            same_dim(window.dim(), x.len())?;
            if !window.contains(x) {
                return Err(DcaError::OutsideWindow { point: x.clone() });
            }
        }
        Ok(LatticeFunction { window, values })
    }

    /// Tabulates `f` over the window; `None` means +∞.
    pub fn from_fn(window: Window, mut f: impl FnMut(&[i64]) -> Option<Rat>) -> Result<LatticeFunction> {
        let mut values = BTreeMap::new();
        for x in window.points() {
            if let Some(v) = f(&x) {
                values.insert(x, v);
            }
        }
        LatticeFunction::new(window, values)
    }

    /// Values given as (point, value) pairs; the window is their bounding box.
    pub fn from_pairs(pairs: Vec<(Point, Rat)>) -> Result<LatticeFunction> {
        let window = Window::bounding(pairs.iter().map(|(x, _)| x)).ok_or(DcaError::EmptyDomain)??;
        LatticeFunction::new(window, pairs.into_iter().collect())
    }

    /// xᵀAx tabulated on a window.
    pub fn quadratic(a: &[Vec<Rat>], window: Window) -> Result<LatticeFunction> {
        let n = window.dim();
        same_dim(n, a.len())?;
        for row in a {
            same_dim(n, row.len())?;
        }
        LatticeFunction::from_fn(window, |x| {
            let mut s = Rat::zero();
            for i in 0..n {
                for j in 0..n {
                    if x[i] != 0 && x[j] != 0 && !a[i][j].is_zero() {
                        s = s + &a[i][j] * Rat::int(x[i] * x[j]);
                    }
                }
            }
            Some(s)
        })
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn values(&self) -> &BTreeMap<Point, Rat> {
        &self.values
    }

    pub fn get(&self, x: &[i64]) -> Option<&Rat> {
        self.values.get(x)
    }

    pub fn eval(&self, x: &[i64]) -> Result<Ext> {
        same_dim(self.dim(), x.len())?;
        Ok(Ext::from_opt(self.values.get(x)))
    }

    pub fn eval_raw(&self, x: &[i64]) -> Ext {
        Ext::from_opt(self.values.get(x))
    }

    pub fn in_dom(&self, x: &[i64]) -> bool {
        self.values.contains_key(x)
    }

    pub fn dom(&self) -> Vec<Point> {
        self.values.keys().cloned().collect()
    }

    pub fn dom_size(&self) -> usize {
        self.values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Rat)> {
        self.values.iter()
    }

    pub fn support_set(&self) -> LatticeSet {
        LatticeSet {
            points: self.values.keys().cloned().collect(),
            window: self.window.clone(),
        }
    }

    pub fn indicator(s: &LatticeSet) -> LatticeFunction {
        LatticeFunction {
            window: s.window.clone(),
            values: s.points.iter().map(|x| (x.clone(), Rat::zero())).collect(),
        }
    }

    pub fn min_value(&self) -> Rat {
        self.values.values().min().cloned().unwrap_or_default()
    }

    pub fn max_value(&self) -> Rat {
        self.values.values().max().cloned().unwrap_or_default()
    }

    /// Points attaining the minimum.
    pub fn argmin(&self) -> Vec<Point> {
        let m = self.min_value();
        self.values.iter().filter(|(_, v)| **v == m).map(|(x, _)| x.clone()).collect()
    }

    pub fn is_integer_valued(&self) -> bool {
        self.values.values().all(Rat::is_integer)
    }

    /// First point whose value is not an integer.
    pub fn require_integer_valued(&self) -> Result<()> {
        match self.values.iter().find(|(_, v)| !v.is_integer()) {
            None => Ok(()),
            Some((x, v)) => Err(DcaError::NonInteger(v.to_string(), x.clone())),
        }
    }

    /// Same values, a different declared window. Points outside it are dropped.
    pub fn with_window(&self, window: Window) -> Result<LatticeFunction> {
        same_dim(self.dim(), window.dim())?;
        let values = self
            .values
            .iter()
            .filter(|(x, _)| window.contains(x))
            .map(|(x, v)| (x.clone(), v.clone()))
            .collect();
        LatticeFunction::new(window, values)
    }

    /// Window shrunk to the bounding box of the domain.
    pub fn tight(&self) -> LatticeFunction {
        let w = Window::bounding(self.values.keys()).expect("nonempty").expect("valid");
        LatticeFunction { window: w, values: self.values.clone() }
    }

    pub fn map_values(&self, mut g: impl FnMut(&Point, &Rat) -> Rat) -> LatticeFunction {
        LatticeFunction {
            window: self.window.clone(),
            values: self.values.iter().map(|(x, v)| (x.clone(), g(x, v))).collect(),
        }
    }

    pub fn dense(&self) -> Dense {
        Dense::new(self)
    }
}

impl fmt::Debug for LatticeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeFunction {} {{", self.window)?;
        for (i, (x, v)) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {x:?}: {v}")?;
        }
        write!(f, " }}")
    }
}

/// Array-backed lookup for hot loops. Out-of-window reads are +∞.
pub struct Dense {
    window: Window,
    cells: Vec<Option<Rat>>,
}

impl Dense {
    fn new(f: &LatticeFunction) -> Dense {
        let mut cells = vec![None; f.window.card()];
        for (x, v) in &f.values {
            cells[f.window.index(x)] = Some(v.clone());
        }
        Dense { window: f.window.clone(), cells }
    }

    pub fn get(&self, x: &[i64]) -> Option<&Rat> {
        if self.window.contains(x) {
            self.cells[self.window.index(x)].as_ref()
        } else {
            None
        }
    }

    pub fn ext(&self, x: &[i64]) -> Ext {
        Ext::from_opt(self.get(x))
    }

    pub fn window(&self) -> &Window {
        &self.window
    }
}

/// An explicit finite set of lattice points together with a declared window.
///
/// The window defaults to the bounding box. It only matters for checks that
/// quantify over an infinite orbit (L-convexity), where it marks how far the
/// set is known.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    points: BTreeSet<Point>,
    window: Window,
}

impl LatticeSet {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<LatticeSet> {
        let points: BTreeSet<Point> = points.into_iter().collect();
        let window = Window::bounding(points.iter()).ok_or(DcaError::EmptyResult("empty set".into()))??;
        Ok(LatticeSet { points, window })
    }

    pub fn with_window(points: impl IntoIterator<Item = Point>, window: Window) -> Result<LatticeSet> {
        let points: BTreeSet<Point> = points.into_iter().collect();
        if points.is_empty() {
            return Err(DcaError::EmptyResult("empty set".into()));
        }
        for x in &points {
            same_dim(window.dim(), x.len())?;
            if !window.contains(x) {
                return Err(DcaError::OutsideWindow { point: x.clone() });
            }
        }
        Ok(LatticeSet { points, window })
    }

    /// All points of a box.
    pub fn boxed(window: Window) -> LatticeSet {
        LatticeSet { points: window.points().collect(), window }
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn points(&self) -> &BTreeSet<Point> {
        &self.points
    }

    pub fn to_vec(&self) -> Vec<Point> {
        self.points.iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.points.contains(x)
    }

    pub fn bounding_box(&self) -> Window {
        Window::bounding(self.points.iter()).expect("nonempty").expect("valid")
    }

    pub fn reframe(&self, window: Window) -> Result<LatticeSet> {
        let pts: Vec<Point> = self.points.iter().filter(|x| window.contains(x)).cloned().collect();
        LatticeSet::with_window(pts, window)
    }

    pub fn tight(&self) -> LatticeSet {
        LatticeSet { points: self.points.clone(), window: self.bounding_box() }
    }
}

impl fmt::Debug for LatticeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeSet {} {:?}", self.window, self.points)
    }
}

/// An L-convex function in structural form f(x) = g(x₂−x₁, …, xₙ−x₁) + r·x₁.
///
/// `base` is g on ℤⁿ⁻¹; f is then linear along 𝟏 with slope `slope` by
/// construction, so only the submodular part needs checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LConvexForm {
    pub base: LatticeFunction,
    pub slope: Rat,
}

impl LConvexForm {
    pub fn new(base: LatticeFunction, slope: Rat) -> LConvexForm {
        LConvexForm { base, slope }
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    fn reduce(x: &[i64]) -> Point {
        x[1..].iter().map(|v| v - x[0]).collect()
    }

    pub fn eval(&self, x: &[i64]) -> Result<Ext> {
        same_dim(self.dim(), x.len())?;
        Ok(match self.base.get(&Self::reduce(x)) {
            Some(v) => Ext::Fin(v + &self.slope * Rat::int(x[0])),
            None => Ext::Inf,
        })
    }

    /// The finite restriction of f to a window.
    pub fn materialize(&self, window: Window) -> Result<LatticeFunction> {
        same_dim(self.dim(), window.dim())?;
        LatticeFunction::from_fn(window, |x| self.eval(x).ok().and_then(|e| e.fin().cloned()))
    }

    /// f(x₀ + 𝟏) − f(x₀) on the materialized window, for every pair inside.
    pub fn observed_slopes(&self, window: &Window) -> Vec<Rat> {
        let mut out = Vec::new();
        for x in window.points() {
            let y: Point = x.iter().map(|v| v + 1).collect();
            if !window.contains(&y) {
                continue;
            }
            if let (Ok(Ext::Fin(a)), Ok(Ext::Fin(b))) = (self.eval(&x), self.eval(&y)) {
                out.push(b - a);
            }
        }
        out
    }
}
