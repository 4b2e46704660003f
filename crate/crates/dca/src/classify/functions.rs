use crate::error::Result;
use crate::lattice::{
    add_raw, cheb_raw, d_inverse_apply, join_raw, meet_raw, mid_ceil, mid_floor, sub_raw, total, HalfPoint, Point,
};
use crate::lp::local_extension_with;
use crate::model::{Dense, Ext, LatticeFunction, Window};
use crate::rat::Rat;

use super::witness::{increments, Witness};
use super::{sets, FnClass, Verdict};

pub(crate) struct Table {
    pub dense: Dense,
    pub dom: Vec<Point>,
    pub vals: Vec<Rat>,
}

impl Table {
    pub fn new(f: &LatticeFunction) -> Table {
        let (dom, vals) = f.iter().map(|(x, v)| (x.clone(), v.clone())).unzip();
        Table { dense: f.dense(), dom, vals }
    }

    pub fn pair(&self, x: &[i64], y: &[i64]) -> Ext {
        match (self.dense.get(x), self.dense.get(y)) {
            (Some(a), Some(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }

    pub fn has(&self, x: &[i64]) -> bool {
        self.dense.get(x).is_some()
    }

    pub fn lhs(&self, a: usize, b: usize) -> Ext {
        Ext::Fin(&self.vals[a] + &self.vals[b])
    }
}

pub(crate) fn check(f: &LatticeFunction, c: FnClass) -> Verdict {
    let t = Table::new(f);
    match c {
        FnClass::SeparableConvex => Verdict::from_witness(separable(f, &t)),
        FnClass::IntegrallyConvex => Verdict::from_witness(integrally_convex(f, &t)),
        FnClass::LNat => Verdict::from_witness(midpoint(&t, |_| true)),
        // L = L♮ + linearity along 𝟏; the midpoint test keeps the verdict
        // honest when the window leaves no room for a translate
        FnClass::L => Verdict::from_witness(
            submodular(&t).or_else(|| midpoint(&t, |_| true)).or_else(|| shift_linear(f, &t)),
        )
        .window_certified(),
        FnClass::MNat => Verdict::from_witness(exchange(&t, true)),
        FnClass::M => Verdict::from_witness(constant_sum(&t.dom).or_else(|| exchange(&t, false))),
        FnClass::Multimodular => match to_bidiagonal_preimage(f) {
            Ok(g) => {
                let tg = Table::new(&g);
                Verdict::from_witness(midpoint(&tg, |_| true).map(|w| Witness::Bidiagonal(Box::new(w))))
            }
            Err(_) => unreachable!("preimage of a nonempty function is nonempty"),
        },
        FnClass::GlobalDmc => Verdict::from_witness(midpoint(&t, |d| d >= 2)),
        FnClass::LocalDmc => {
            let dom_check = sets::dmc_set(&f.support_set()).map(|w| Witness::Domain(Box::new(w)));
            Verdict::from_witness(dom_check.or_else(|| midpoint(&t, |d| d == 2)))
        }
        FnClass::JumpMNat => Verdict::from_witness(jump_exchange(&t, true)),
        FnClass::JumpM => Verdict::from_witness(jump_exchange(&t, false)),
        FnClass::Submodular => Verdict::from_witness(submodular(&t)),
        FnClass::Supermodular => Verdict::from_witness(supermodular(&t)),
    }
}

pub fn is_box(dom_size: usize, bounding: &Window) -> bool {
    dom_size == bounding.card()
}

fn separable(f: &LatticeFunction, t: &Table) -> Option<Witness> {
    let bb = f.tight();
    let w = bb.window();
    if !is_box(t.dom.len(), w) {
        let missing = w.points().find(|x| !t.has(x)).expect("box has a gap");
        return Some(Witness::NotBox { missing });
    }
    let n = f.dim();
    let base = w.lo().to_vec();
    let fb = f.get(&base).expect("box corner").clone();
    // marginal[i][k] = f(base with coordinate i set to lo_i + k) − f(base)
    let marginal: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (w.lo()[i]..=w.hi()[i])
                .map(|v| {
                    let mut z = base.clone();
                    z[i] = v;
                    f.get(&z).expect("inside box") - &fb
                })
                .collect()
        })
        .collect();
    for (x, v) in t.dom.iter().zip(&t.vals) {
        let mut e = fb.clone();
        for i in 0..n {
            e = e + &marginal[i][(x[i] - w.lo()[i]) as usize];
        }
        if &e != v {
            return Some(Witness::Separable {
                x: x.clone(),
                base,
                expected: Ext::Fin(e),
                actual: Ext::Fin(v.clone()),
            });
        }
    }
    for (i, m) in marginal.iter().enumerate() {
        for k in 1..m.len().saturating_sub(1) {
            if &m[k - 1] + &m[k + 1] < Rat::int(2) * &m[k] {
                let mut x = base.clone();
                x[i] = w.lo()[i] + k as i64;
                return Some(Witness::UnivariateConvexity { x, i });
            }
        }
    }
    None
}

fn integrally_convex(f: &LatticeFunction, t: &Table) -> Option<Witness> {
    if let Some(w) = sets::ic_set(&f.support_set()) {
        return Some(Witness::Domain(Box::new(w)));
    }
    let m = t.dom.len();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (&t.dom[a], &t.dom[b]);
            if cheb_raw(x, y) != 2 {
                continue;
            }
            let avg = (&t.vals[a] + &t.vals[b]) * Rat::half();
            let z = HalfPoint::midpoint(x, y).expect("dims");
            let ext = local_extension_with(|p| t.dense.get(p).cloned(), &z);
            if ext > Ext::Fin(avg.clone()) {
                return Some(Witness::LocalExtension { x: x.clone(), y: y.clone(), extension: ext, average: avg });
            }
        }
    }
    None
}

/// Discrete midpoint inequality over pairs whose ℓ∞ distance passes `keep`.
pub(crate) fn midpoint(t: &Table, keep: impl Fn(i64) -> bool) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (&t.dom[a], &t.dom[b]);
            if !keep(cheb_raw(x, y)) {
                continue;
            }
            let rhs = t.pair(&mid_ceil(x, y), &mid_floor(x, y));
            let lhs = t.lhs(a, b);
            if rhs > lhs {
                return Some(Witness::Midpoint { x: x.clone(), y: y.clone(), lhs, rhs });
            }
        }
    }
    None
}

fn comparable(x: &[i64], y: &[i64]) -> bool {
    x.iter().zip(y).all(|(a, b)| a <= b) || x.iter().zip(y).all(|(a, b)| a >= b)
}

pub(crate) fn submodular(t: &Table) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (&t.dom[a], &t.dom[b]);
            if comparable(x, y) {
                continue;
            }
            let rhs = t.pair(&join_raw(x, y), &meet_raw(x, y));
            let lhs = t.lhs(a, b);
            if rhs > lhs {
                return Some(Witness::Submodular { x: x.clone(), y: y.clone(), lhs, rhs });
            }
        }
    }
    None
}

fn supermodular(t: &Table) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in a + 1..m {
            let (x, y) = (&t.dom[a], &t.dom[b]);
            if comparable(x, y) {
                continue;
            }
            let rhs = t.pair(&join_raw(x, y), &meet_raw(x, y));
            let lhs = t.lhs(a, b);
            if rhs.is_finite() && lhs > rhs {
                return Some(Witness::Supermodular { x: x.clone(), y: y.clone(), lhs, rhs });
            }
        }
    }
    None
}

/// Linearity along 𝟏 inside the window: both neighbours x ± 𝟏 that fit in
/// the window must be in the domain, and every step has the same slope.
fn shift_linear(f: &LatticeFunction, t: &Table) -> Option<Witness> {
    let w = f.window();
    let mut reference: Option<(Point, Point, Rat)> = None;
    for (x, v) in t.dom.iter().zip(&t.vals) {
        for dir in [1i64, -1] {
            let y: Point = x.iter().map(|c| c + dir).collect();
            if !w.contains(&y) {
                continue;
            }
            let Some(fy) = t.dense.get(&y) else {
                return Some(Witness::ShiftLinear {
                    x: x.clone(),
                    y,
                    reference: reference.map(|(a, b, _)| (a, b)),
                });
            };
            let (lo, hi, step) = if dir == 1 { (x.clone(), y.clone(), fy - v) } else { (y.clone(), x.clone(), v - fy) };
            match &reference {
                None => reference = Some((lo, hi, step)),
                Some((a, b, r)) if *r != step => {
                    return Some(Witness::ShiftLinear { x: x.clone(), y, reference: Some((a.clone(), b.clone())) });
                }
                Some(_) => {}
            }
        }
    }
    None
}

pub(crate) fn constant_sum(dom: &[Point]) -> Option<Witness> {
    let s0 = total(&dom[0]);
    dom.iter()
        .find(|x| total(x) != s0)
        .map(|x| Witness::ConstantSum { x: dom[0].clone(), y: x.clone() })
}

/// M♮-EXC when `natural`, otherwise M-EXC.
fn exchange(t: &Table, natural: bool) -> Option<Witness> {
    let m = t.dom.len();
    let n = t.dense.window().dim();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let (x, y) = (&t.dom[a], &t.dom[b]);
            let d = sub_raw(x, y);
            let lhs = t.lhs(a, b);
            for i in (0..n).filter(|&i| d[i] > 0) {
                let mut xi = x.clone();
                xi[i] -= 1;
                let mut yi = y.clone();
                yi[i] += 1;
                let mut best = if natural { t.pair(&xi, &yi) } else { Ext::Inf };
                if best <= lhs {
                    continue;
                }
                let mut ok = false;
                for j in (0..n).filter(|&j| d[j] < 0) {
                    xi[j] += 1;
                    yi[j] -= 1;
                    let v = t.pair(&xi, &yi);
                    xi[j] -= 1;
                    yi[j] += 1;
                    if v <= lhs {
                        ok = true;
                        break;
                    }
                    if v < best {
                        best = v;
                    }
                }
                if !ok {
                    let (x, y) = (x.clone(), y.clone());
                    return Some(if natural {
                        Witness::ExchangeMNat { x, y, i, lhs, best }
                    } else {
                        Witness::ExchangeM { x, y, i, lhs, best }
                    });
                }
            }
        }
    }
    None
}

/// JM♮-EXC when `natural`, otherwise JM-EXC.
fn jump_exchange(t: &Table, natural: bool) -> Option<Witness> {
    let m = t.dom.len();
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let (x, y) = (&t.dom[a], &t.dom[b]);
            let lhs = t.lhs(a, b);
            for s in increments(x, y) {
                let xs = add_raw(x, &s);
                let ys = sub_raw(y, &s);
                let mut best = Ext::Inf;
                if natural {
                    best = t.pair(&xs, &ys);
                    if best <= lhs {
                        continue;
                    }
                }
                let mut ok = false;
                for tt in increments(&xs, y) {
                    let v = t.pair(&add_raw(&xs, &tt), &sub_raw(&ys, &tt));
                    if v <= lhs {
                        ok = true;
                        break;
                    }
                    if v < best {
                        best = v;
                    }
                }
                if !ok {
                    let (x, y) = (x.clone(), y.clone());
                    return Some(if natural {
                        Witness::JumpNatExchange { x, y, s, lhs, best }
                    } else {
                        Witness::JumpExchange { x, y, s, lhs, best }
                    });
                }
            }
        }
    }
    None
}

/// g(p) = f(Dp), whose domain is D⁻¹(dom f).
pub fn to_bidiagonal_preimage(f: &LatticeFunction) -> Result<LatticeFunction> {
    let pairs: Vec<(Point, Rat)> = f.iter().map(|(x, v)| (d_inverse_apply(x), v.clone())).collect();
    LatticeFunction::from_pairs(pairs)
}

/// Coefficient test for multimodularity of xᵀAx:
/// a(i,j) − a(i,j+1) − a(i+1,j) + a(i+1,j+1) ≤ 0 for 0 ≤ i < j ≤ n, with
/// a = 0 whenever an index is 0 or n+1 (1-based).
pub fn quadratic_multimodular(a: &[Vec<Rat>]) -> bool {
    let n = a.len();
    let at = |i: usize, j: usize| -> Rat {
        if i == 0 || j == 0 || i > n || j > n {
            Rat::zero()
        } else {
            a[i - 1][j - 1].clone()
        }
    };
    for i in 0..n {
        for j in i + 1..=n {
            let v = at(i, j) - at(i, j + 1) - at(i + 1, j) + at(i + 1, j + 1);
            if v.is_positive() {
                return false;
            }
        }
    }
    true
}
