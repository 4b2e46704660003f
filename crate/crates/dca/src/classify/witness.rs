//! Violation witnesses and their independent re-evaluation.

use serde_json::{json, Value};

use crate::lattice::{
    add_raw, cheb_raw, join_raw, meet_raw, mid_ceil, mid_floor, sub_raw, total, unit, HalfPoint, Point,
};
use crate::lp::{local_extension_with, local_hull_contains};
use crate::model::{Ext, LatticeFunction, LatticeSet};
use crate::rat::Rat;

/// A concrete violation of a named axiom. Indices are 0-based in memory and
/// written 1-based in JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The domain misses a point of its bounding box.
    NotBox { missing: Point },
    /// f(x) differs from f(base) + Σᵢ (f(base with xᵢ) − f(base)).
    Separable { x: Point, base: Point, expected: Ext, actual: Ext },
    /// f(x − eᵢ) + f(x + eᵢ) < 2 f(x).
    UnivariateConvexity { x: Point, i: usize },
    /// f(x) + f(y) < f(⌈(x+y)/2⌉) + f(⌊(x+y)/2⌋).
    Midpoint { x: Point, y: Point, lhs: Ext, rhs: Ext },
    /// f(x) + f(y) < f(x∨y) + f(x∧y).
    Submodular { x: Point, y: Point, lhs: Ext, rhs: Ext },
    /// f(x) + f(y) > f(x∨y) + f(x∧y) with both sides finite.
    Supermodular { x: Point, y: Point, lhs: Ext, rhs: Ext },
    /// f̃((x+y)/2) > (f(x) + f(y))/2 at ‖x−y‖∞ = 2.
    LocalExtension { x: Point, y: Point, extension: Ext, average: Rat },
    /// (x+y)/2 is not in the local convex hull of the set.
    HullLocal { x: Point, y: Point },
    /// No j ∈ supp⁻(x−y) ∪ {0} makes the exchange inequality hold.
    ExchangeMNat { x: Point, y: Point, i: usize, lhs: Ext, best: Ext },
    /// No j ∈ supp⁻(x−y) makes the exchange inequality hold.
    ExchangeM { x: Point, y: Point, i: usize, lhs: Ext, best: Ext },
    ConstantSum { x: Point, y: Point },
    ConstantParity { x: Point, y: Point },
    /// x+s ∉ S and no (x+s,y)-increment t has x+s+t ∈ S.
    TwoStep { x: Point, y: Point, s: Point },
    /// Neither a simultaneous step t after s nor (for the ♮ variant) s alone works.
    JumpExchange { x: Point, y: Point, s: Point, lhs: Ext, best: Ext },
    JumpNatExchange { x: Point, y: Point, s: Point, lhs: Ext, best: Ext },
    /// y = x ± 𝟏 inside the window breaks linearity along 𝟏; `reference` is a
    /// pair fixing the slope, absent when y is simply missing from the domain.
    ShiftLinear { x: Point, y: Point, reference: Option<(Point, Point)> },
    TranslationSubmodular { x: Point, y: Point, mu: i64, lhs: Ext, rhs: Ext },
    /// f(x) + f(y) < f(x − e_A) + f(y + e_A) with A = argmax (xᵢ − yᵢ).
    ArgmaxStep { x: Point, y: Point, lhs: Ext, rhs: Ext },
    /// The inner witness lives on g(p) = f(Dp).
    Bidiagonal(Box<Witness>),
    /// The inner witness lives on f̃(x₀, x) = f(x − x₀𝟏).
    Lifted(Box<Witness>),
    /// The inner witness is about the indicator of the effective domain.
    Domain(Box<Witness>),
}

fn pj(p: &[i64]) -> Value {
    json!(p)
}

impl Witness {
    pub fn axiom(&self) -> &'static str {
        match self {
            Witness::NotBox { .. } => "box",
            Witness::Separable { .. } => "separability",
            Witness::UnivariateConvexity { .. } => "univariate-convexity",
            Witness::Midpoint { .. } => "discrete-midpoint",
            Witness::Submodular { .. } => "submodularity",
            Witness::Supermodular { .. } => "supermodularity",
            Witness::LocalExtension { .. } => "local-extension",
            Witness::HullLocal { .. } => "local-hull",
            Witness::ExchangeMNat { .. } => "mnat-exchange",
            Witness::ExchangeM { .. } => "m-exchange",
            Witness::ConstantSum { .. } => "constant-sum",
            Witness::ConstantParity { .. } => "constant-parity",
            Witness::TwoStep { .. } => "two-step",
            Witness::JumpExchange { .. } => "jump-exchange",
            Witness::JumpNatExchange { .. } => "jump-nat-exchange",
            Witness::ShiftLinear { .. } => "shift-linearity",
            Witness::TranslationSubmodular { .. } => "translation-submodularity",
            Witness::ArgmaxStep { .. } => "argmax-step",
            Witness::Bidiagonal(_) => "bidiagonal",
            Witness::Lifted(_) => "lifted",
            Witness::Domain(_) => "domain",
        }
    }

    /// Strips wrappers.
    pub fn innermost(&self) -> &Witness {
        match self {
            Witness::Bidiagonal(w) | Witness::Lifted(w) | Witness::Domain(w) => w.innermost(),
            w => w,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = match self {
            Witness::NotBox { missing } => json!({"missing": pj(missing)}),
            Witness::Separable { x, base, expected, actual } => {
                json!({"x": pj(x), "base": pj(base), "expected": expected, "actual": actual})
            }
            Witness::UnivariateConvexity { x, i } => json!({"x": pj(x), "i": i + 1}),
            Witness::Midpoint { x, y, lhs, rhs }
            | Witness::Submodular { x, y, lhs, rhs }
            | Witness::Supermodular { x, y, lhs, rhs }
            | Witness::ArgmaxStep { x, y, lhs, rhs } => {
                json!({"x": pj(x), "y": pj(y), "lhs": lhs, "rhs": rhs})
            }
            Witness::LocalExtension { x, y, extension, average } => json!({
                "x": pj(x), "y": pj(y),
                "midpoint": HalfPoint::midpoint(x, y).map(|z| z.to_string()).unwrap_or_default(),
                "extension": extension, "average": average.to_string()
            }),
            Witness::HullLocal { x, y } | Witness::ConstantSum { x, y } | Witness::ConstantParity { x, y } => {
                json!({"x": pj(x), "y": pj(y)})
            }
            Witness::ExchangeMNat { x, y, i, lhs, best } | Witness::ExchangeM { x, y, i, lhs, best } => {
                json!({"x": pj(x), "y": pj(y), "i": i + 1, "lhs": lhs, "best": best})
            }
            Witness::TwoStep { x, y, s } => json!({"x": pj(x), "y": pj(y), "s": pj(s)}),
            Witness::JumpExchange { x, y, s, lhs, best } | Witness::JumpNatExchange { x, y, s, lhs, best } => {
                json!({"x": pj(x), "y": pj(y), "s": pj(s), "lhs": lhs, "best": best})
            }
            Witness::ShiftLinear { x, y, reference } => json!({
                "x": pj(x), "y": pj(y),
                "reference": reference.as_ref().map(|(a, b)| json!([a, b]))
            }),
            Witness::TranslationSubmodular { x, y, mu, lhs, rhs } => {
                json!({"x": pj(x), "y": pj(y), "mu": mu, "lhs": lhs, "rhs": rhs})
            }
            Witness::Bidiagonal(w) | Witness::Lifted(w) | Witness::Domain(w) => json!({"inner": w.to_json()}),
        };
        v.as_object_mut().unwrap().insert("axiom".into(), json!(self.axiom()));
        v
    }
}

fn val(f: &LatticeFunction, x: &[i64]) -> Ext {
    f.eval_raw(x)
}

fn pair(f: &LatticeFunction, x: &[i64], y: &[i64]) -> Ext {
    val(f, x) + val(f, y)
}

/// (x,y)-increments: sign(yᵢ − xᵢ)·eᵢ for every coordinate where they differ.
pub(crate) fn increments(x: &[i64], y: &[i64]) -> Vec<Point> {
    let n = x.len();
    (0..n)
        .filter(|&i| x[i] != y[i])
        .map(|i| {
            let mut s = vec![0; n];
            s[i] = if y[i] > x[i] { 1 } else { -1 };
            s
        })
        .collect()
}

pub(crate) fn bidiagonal_pullback(f: &LatticeFunction) -> Option<LatticeFunction> {
    super::functions::to_bidiagonal_preimage(f).ok()
}

pub(crate) fn lifted_translation(f: &LatticeFunction) -> Option<LatticeFunction> {
    super::profile::translation_lift(f).ok()
}

/// Does the witness describe a genuine violation for f? Evaluates only f.
pub fn recheck(f: &LatticeFunction, w: &Witness) -> bool {
    let n = f.dim();
    let dims_ok = |p: &[i64]| p.len() == n;
    match w {
        Witness::NotBox { missing } => {
            let bb = f.tight();
            dims_ok(missing) && bb.window().contains(missing) && !f.in_dom(missing)
        }
        Witness::Separable { x, base, actual, .. } => {
            if !dims_ok(x) || !dims_ok(base) || val(f, x) != *actual {
                return false;
            }
            let Some(fb) = f.get(base) else { return false };
            let mut expected = Ext::Fin(fb.clone());
            for i in 0..n {
                let mut z = base.clone();
                z[i] = x[i];
                expected = match (expected, val(f, &z)) {
                    (Ext::Fin(e), Ext::Fin(v)) => Ext::Fin(e + v - fb),
                    _ => Ext::Inf,
                };
            }
            expected != val(f, x)
        }
        Witness::UnivariateConvexity { x, i } => {
            let (mut a, mut b) = (x.clone(), x.clone());
            a[*i] -= 1;
            b[*i] += 1;
            match (val(f, &a), val(f, x), val(f, &b)) {
                (Ext::Fin(l), Ext::Fin(m), Ext::Fin(r)) => l + r < Rat::int(2) * m,
                _ => false,
            }
        }
        Witness::Midpoint { x, y, .. } => {
            dims_ok(x) && dims_ok(y) && pair(f, x, y) < pair(f, &mid_ceil(x, y), &mid_floor(x, y))
        }
        Witness::Submodular { x, y, .. } => {
            dims_ok(x) && dims_ok(y) && pair(f, x, y) < pair(f, &join_raw(x, y), &meet_raw(x, y))
        }
        Witness::Supermodular { x, y, .. } => {
            if !dims_ok(x) || !dims_ok(y) {
                return false;
            }
            let rhs = pair(f, &join_raw(x, y), &meet_raw(x, y));
            rhs.is_finite() && pair(f, x, y) > rhs
        }
        Witness::LocalExtension { x, y, .. } => {
            if !dims_ok(x) || !dims_ok(y) || cheb_raw(x, y) != 2 {
                return false;
            }
            let Ext::Fin(s) = pair(f, x, y) else { return false };
            let z = HalfPoint::midpoint(x, y).expect("dims");
            local_extension_with(|p| f.get(p).cloned(), &z) > Ext::Fin(s * Rat::half())
        }
        Witness::HullLocal { x, y } => {
            f.in_dom(x) && f.in_dom(y) && {
                let z = HalfPoint::midpoint(x, y).expect("dims");
                !local_hull_contains(|p| f.in_dom(p), &z)
            }
        }
        Witness::ExchangeMNat { x, y, i, .. } | Witness::ExchangeM { x, y, i, .. } => {
            let d = sub_raw(x, y);
            let Ext::Fin(lhs) = pair(f, x, y) else { return false };
            if d[*i] <= 0 {
                return false;
            }
            let ei = unit(n, *i);
            let mut options: Vec<Ext> = Vec::new();
            if matches!(w, Witness::ExchangeMNat { .. }) {
                options.push(pair(f, &sub_raw(x, &ei), &add_raw(y, &ei)));
            }
            for j in (0..n).filter(|&j| d[j] < 0) {
                let ej = unit(n, j);
                options.push(pair(f, &add_raw(&sub_raw(x, &ei), &ej), &sub_raw(&add_raw(y, &ei), &ej)));
            }
            options.into_iter().all(|v| v > Ext::Fin(lhs.clone()))
        }
        Witness::ConstantSum { x, y } => f.in_dom(x) && f.in_dom(y) && total(x) != total(y),
        Witness::ConstantParity { x, y } => f.in_dom(x) && f.in_dom(y) && (total(x) - total(y)).rem_euclid(2) == 1,
        Witness::TwoStep { x, y, s } => {
            let xs = add_raw(x, s);
            f.in_dom(x)
                && f.in_dom(y)
                && increments(x, y).contains(s)
                && !f.in_dom(&xs)
                && increments(&xs, y).iter().all(|t| !f.in_dom(&add_raw(&xs, t)))
        }
        Witness::JumpExchange { x, y, s, .. } | Witness::JumpNatExchange { x, y, s, .. } => {
            let Ext::Fin(lhs) = pair(f, x, y) else { return false };
            if !increments(x, y).contains(s) {
                return false;
            }
            let lhs = Ext::Fin(lhs);
            let xs = add_raw(x, s);
            let ys = sub_raw(y, s);
            if matches!(w, Witness::JumpNatExchange { .. }) && pair(f, &xs, &ys) <= lhs {
                return false;
            }
            increments(&xs, y).iter().all(|t| pair(f, &add_raw(&xs, t), &sub_raw(&ys, t)) > lhs)
        }
        Witness::ShiftLinear { x, y, reference } => {
            if !f.in_dom(x) || !f.window().contains(y) || cheb_raw(x, y) != 1 {
                return false;
            }
            let d = sub_raw(y, x);
            if !(d.iter().all(|&v| v == 1) || d.iter().all(|&v| v == -1)) {
                return false;
            }
            match reference {
                None => !f.in_dom(y),
                Some((a, b)) => {
                    let (Some(fa), Some(fb)) = (f.get(a), f.get(b)) else { return false };
                    if sub_raw(b, a).iter().any(|&v| v != 1) {
                        return false;
                    }
                    match (f.get(x), f.get(y)) {
                        (Some(fx), Some(fy)) => {
                            let step = if d[0] == 1 { fy - fx } else { fx - fy };
                            step != fb - fa
                        }
                        _ => !f.in_dom(y),
                    }
                }
            }
        }
        Witness::TranslationSubmodular { x, y, mu, .. } => {
            if *mu < 0 || !dims_ok(x) || !dims_ok(y) {
                return false;
            }
            let xm: Point = x.iter().map(|v| v - mu).collect();
            let yp: Point = y.iter().map(|v| v + mu).collect();
            pair(f, x, y) < pair(f, &join_raw(&xm, y), &meet_raw(x, &yp))
        }
        Witness::ArgmaxStep { x, y, .. } => {
            if !dims_ok(x) || !dims_ok(y) {
                return false;
            }
            let d = sub_raw(x, y);
            let m = *d.iter().max().unwrap();
            if m <= 0 {
                return false;
            }
            let ea: Point = d.iter().map(|&v| i64::from(v == m)).collect();
            pair(f, x, y) < pair(f, &sub_raw(x, &ea), &add_raw(y, &ea))
        }
        Witness::Bidiagonal(inner) => bidiagonal_pullback(f).is_some_and(|g| recheck(&g, inner)),
        Witness::Lifted(inner) => lifted_translation(f).is_some_and(|g| recheck(&g, inner)),
        Witness::Domain(inner) => recheck(&LatticeFunction::indicator(&f.support_set()), inner),
    }
}

pub fn recheck_set(s: &LatticeSet, w: &Witness) -> bool {
    recheck(&LatticeFunction::indicator(s), w)
}
