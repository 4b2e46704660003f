//! Six equivalent characterizations of L♮-convexity, evaluated independently,
//! and the two-variable coincidences between L♮, M♮ and multimodularity.

use serde_json::{json, Value};

use crate::error::{DcaError, Result};
use crate::lattice::{add_raw, join_raw, meet_raw, sub_raw, Point};
use crate::model::{LatticeFunction, Window};
use crate::rat::Rat;

use super::functions::{midpoint, submodular, Table};
use super::witness::Witness;
use super::{check_fn, check_set, FnClass, SetClass, Verdict};

#[derive(Clone, Debug)]
pub struct LNatProfile {
    /// midpoint inequality for all pairs
    pub a: Verdict,
    /// L♮ domain plus the midpoint inequality at distance ≤ 2
    pub b: Verdict,
    /// integrally convex and submodular
    pub c: Verdict,
    /// translation-submodular for all μ ≥ 0
    pub d: Verdict,
    /// the argmax step inequality
    pub e: Verdict,
    /// submodularity of f̃(x₀, x) = f(x − x₀𝟏)
    pub f: Verdict,
}

impl LNatProfile {
    pub fn bools(&self) -> [bool; 6] {
        [self.a.holds, self.b.holds, self.c.holds, self.d.holds, self.e.holds, self.f.holds]
    }

    pub fn all_agree(&self) -> bool {
        let b = self.bools();
        b.iter().all(|&v| v == b[0])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_json(), "b": self.b.to_json(), "c": self.c.to_json(),
            "d": self.d.to_json(), "e": self.e.to_json(), "f": self.f.to_json(),
            "agree": self.all_agree(),
        })
    }
}

/// f̃(x₀, x) = f(x − x₀𝟏) on x₀ ∈ [0, D] with D the largest side of the
/// domain's bounding box. Pairs with larger |x₀ − y₀| satisfy the submodular
/// inequality with equality, so this finite piece decides submodularity.
pub(crate) fn translation_lift(f: &LatticeFunction) -> Result<LatticeFunction> {
    let bb = f.tight();
    let w = bb.window();
    let n = f.dim();
    let span = (0..n).map(|i| w.hi()[i] - w.lo()[i]).max().unwrap_or(0).max(1);
    let mut lo = vec![0];
    lo.extend_from_slice(w.lo());
    let mut hi = vec![span];
    hi.extend(w.hi().iter().map(|v| v + span));
    let window = Window::new(lo, hi)?;
    let mut values = std::collections::BTreeMap::new();
    for x0 in 0..=span {
        for (x, v) in f.iter() {
            let mut p = vec![x0];
            p.extend(x.iter().map(|c| c + x0));
            values.insert(p, v.clone());
        }
    }
    LatticeFunction::new(window, values)
}

fn translation_submodular(t: &Table) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let (x, y) = (&t.dom[a], &t.dom[b]);
            let top = sub_raw(x, y).into_iter().max().unwrap_or(0);
            let lhs = t.lhs(a, b);
            for mu in 0..top.max(0) {
                let xm: Point = x.iter().map(|v| v - mu).collect();
                let yp: Point = y.iter().map(|v| v + mu).collect();
                let rhs = t.pair(&join_raw(&xm, y), &meet_raw(x, &yp));
                if rhs > lhs {
                    return Some(Witness::TranslationSubmodular { x: x.clone(), y: y.clone(), mu, lhs, rhs });
                }
            }
        }
    }
    None
}

fn argmax_step(t: &Table) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let (x, y) = (&t.dom[a], &t.dom[b]);
            let d = sub_raw(x, y);
            let top = *d.iter().max().unwrap();
            if top <= 0 {
                continue;
            }
            let ea: Point = d.iter().map(|&v| i64::from(v == top)).collect();
            let rhs = t.pair(&sub_raw(x, &ea), &add_raw(y, &ea));
            let lhs = t.lhs(a, b);
            if rhs > lhs {
                return Some(Witness::ArgmaxStep { x: x.clone(), y: y.clone(), lhs, rhs });
            }
        }
    }
    None
}

pub fn lnat_profile(f: &LatticeFunction) -> LNatProfile {
    let t = Table::new(f);
    let a = Verdict::from_witness(midpoint(&t, |_| true));
    let dom = check_set(&f.support_set(), SetClass::LNatSet);
    let b = match dom.witness {
        Some(w) => Verdict::no(Witness::Domain(Box::new(w))),
        None => Verdict::from_witness(midpoint(&t, |d| d <= 2)),
    };
    let ic = check_fn(f, FnClass::IntegrallyConvex);
    let c = if ic.holds { Verdict::from_witness(submodular(&t)) } else { ic };
    let d = Verdict::from_witness(translation_submodular(&t));
    let e = Verdict::from_witness(argmax_step(&t));
    let lifted = translation_lift(f).expect("lift of a nonempty function");
    let f_ = Verdict::from_witness(submodular(&Table::new(&lifted)).map(|w| Witness::Lifted(Box::new(w))))
        .window_certified();
    LNatProfile { a, b, c, d, e, f: f_ }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dim2Bits {
    pub lnat: bool,
    pub mnat: bool,
    pub multimodular: bool,
    /// L♮ of g(x₁, x₂) = f(x₁, −x₂)
    pub lnat_of_flip: bool,
    pub mnat_of_flip: bool,
}

impl Dim2Bits {
    /// M♮ ⟺ multimodular ⟺ L♮ of the flip, and L♮ ⟺ M♮ of the flip.
    pub fn consistent(&self) -> bool {
        self.mnat == self.multimodular && self.mnat == self.lnat_of_flip && self.lnat == self.mnat_of_flip
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lnat": self.lnat, "mnat": self.mnat, "multimodular": self.multimodular,
            "lnat_of_flip": self.lnat_of_flip, "mnat_of_flip": self.mnat_of_flip,
            "consistent": self.consistent(),
        })
    }
}

fn flip_second(f: &LatticeFunction) -> LatticeFunction {
    let pairs: Vec<(Point, Rat)> = f.iter().map(|(x, v)| (vec![x[0], -x[1]], v.clone())).collect();
    LatticeFunction::from_pairs(pairs).expect("nonempty")
}

pub fn dim2_crosscheck(f: &LatticeFunction) -> Result<Dim2Bits> {
    if f.dim() != 2 {
        return Err(DcaError::DimensionMismatch { expected: 2, found: f.dim() });
    }
    let g = flip_second(f);
    Ok(Dim2Bits {
        lnat: check_fn(f, FnClass::LNat).holds,
        mnat: check_fn(f, FnClass::MNat).holds,
        multimodular: check_fn(f, FnClass::Multimodular).holds,
        lnat_of_flip: check_fn(&g, FnClass::LNat).holds,
        mnat_of_flip: check_fn(&g, FnClass::MNat).holds,
    })
}
