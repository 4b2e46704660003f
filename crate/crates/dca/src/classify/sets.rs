//! Set tests, written as pure membership logic. They are deliberately not
//! routed through the function tests so that the two can be compared.

use crate::lattice::{add_raw, cheb_raw, d_inverse_apply, join_raw, meet_raw, mid_ceil, mid_floor, sub_raw, total, HalfPoint, Point};
use crate::lp::local_hull_contains;
use crate::model::{Ext, LatticeSet};

use super::functions::is_box;
use super::witness::{increments, Witness};
use super::{SetClass, Verdict};

fn zero() -> Ext {
    Ext::int(0)
}

pub(crate) fn check(s: &LatticeSet, c: SetClass) -> Verdict {
    match c {
        SetClass::IntegerBox => Verdict::from_witness(integer_box(s)),
        SetClass::IntegrallyConvexSet => Verdict::from_witness(ic_set(s)),
        SetClass::LNatSet => Verdict::from_witness(midpoint_closed(s, |_| true)),
        SetClass::LSet => Verdict::from_witness(
            sublattice(s).or_else(|| midpoint_closed(s, |_| true)).or_else(|| ones_invariant(s)),
        )
        .window_certified(),
        SetClass::MNatSet => Verdict::from_witness(b_exchange(s, true)),
        SetClass::MSet => Verdict::from_witness(constant_sum(s).or_else(|| b_exchange(s, false))),
        SetClass::MultimodularSet => {
            let t = LatticeSet::new(s.points().iter().map(|x| d_inverse_apply(x))).expect("nonempty");
            Verdict::from_witness(midpoint_closed(&t, |_| true).map(|w| Witness::Bidiagonal(Box::new(w))))
        }
        SetClass::DmcSet => Verdict::from_witness(dmc_set(s)),
        SetClass::JumpSystem => Verdict::from_witness(two_step(s)),
        SetClass::SeJump => Verdict::from_witness(jump_exchange(s, true)),
        SetClass::CpJump => Verdict::from_witness(constant_parity(s).or_else(|| jump_exchange(s, false))),
    }
}

fn integer_box(s: &LatticeSet) -> Option<Witness> {
    let bb = s.bounding_box();
    if is_box(s.len(), &bb) {
        None
    } else {
        Some(Witness::NotBox { missing: bb.points().find(|x| !s.contains(x)).expect("gap") })
    }
}

/// For every pair at ℓ∞ distance ≥ 2, the midpoint lies in the local hull.
/// Pairs at distance ≤ 1 always pass since both ends are in N((x+y)/2).
pub(crate) fn ic_set(s: &LatticeSet) -> Option<Witness> {
    if is_box(s.len(), &s.bounding_box()) {
        return None;
    }
    let pts = s.to_vec();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let (x, y) = (&pts[a], &pts[b]);
            if cheb_raw(x, y) < 2 {
                continue;
            }
            let z = HalfPoint::midpoint(x, y).expect("dims");
            if !local_hull_contains(|p| s.contains(p), &z) {
                return Some(Witness::HullLocal { x: x.clone(), y: y.clone() });
            }
        }
    }
    None
}

fn midpoint_closed(s: &LatticeSet, keep: impl Fn(i64) -> bool) -> Option<Witness> {
    let pts = s.to_vec();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let (x, y) = (&pts[a], &pts[b]);
            if !keep(cheb_raw(x, y)) {
                continue;
            }
            if !s.contains(&mid_ceil(x, y)) || !s.contains(&mid_floor(x, y)) {
                return Some(Witness::Midpoint { x: x.clone(), y: y.clone(), lhs: zero(), rhs: Ext::Inf });
            }
        }
    }
    None
}

pub(crate) fn dmc_set(s: &LatticeSet) -> Option<Witness> {
    midpoint_closed(s, |d| d >= 2)
}

fn sublattice(s: &LatticeSet) -> Option<Witness> {
    let pts = s.to_vec();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            let (x, y) = (&pts[a], &pts[b]);
            if !s.contains(&join_raw(x, y)) || !s.contains(&meet_raw(x, y)) {
                return Some(Witness::Submodular { x: x.clone(), y: y.clone(), lhs: zero(), rhs: Ext::Inf });
            }
        }
    }
    None
}

fn ones_invariant(s: &LatticeSet) -> Option<Witness> {
    for x in s.points() {
        for dir in [1i64, -1] {
            let y: Point = x.iter().map(|c| c + dir).collect();
            if s.window().contains(&y) && !s.contains(&y) {
                return Some(Witness::ShiftLinear { x: x.clone(), y, reference: None });
            }
        }
    }
    None
}

fn constant_sum(s: &LatticeSet) -> Option<Witness> {
    let first = s.points().iter().next().expect("nonempty");
    let s0 = total(first);
    s.points().iter().find(|x| total(x) != s0).map(|x| Witness::ConstantSum { x: first.clone(), y: x.clone() })
}

fn constant_parity(s: &LatticeSet) -> Option<Witness> {
    let first = s.points().iter().next().expect("nonempty");
    let s0 = total(first);
    s.points()
        .iter()
        .find(|x| (total(x) - s0).rem_euclid(2) == 1)
        .map(|x| Witness::ConstantParity { x: first.clone(), y: x.clone() })
}

/// B♮-EXC when `natural`, B-EXC otherwise.
fn b_exchange(s: &LatticeSet, natural: bool) -> Option<Witness> {
    let pts = s.to_vec();
    let n = s.dim();
    for x in &pts {
        for y in &pts {
            if x == y {
                continue;
            }
            let d = sub_raw(x, y);
            for i in (0..n).filter(|&i| d[i] > 0) {
                let mut xi = x.clone();
                xi[i] -= 1;
                let mut yi = y.clone();
                yi[i] += 1;
                if natural && s.contains(&xi) && s.contains(&yi) {
                    continue;
                }
                let found = (0..n).filter(|&j| d[j] < 0).any(|j| {
                    let mut xj = xi.clone();
                    xj[j] += 1;
                    let mut yj = yi.clone();
                    yj[j] -= 1;
                    s.contains(&xj) && s.contains(&yj)
                });
                if !found {
                    let (x, y) = (x.clone(), y.clone());
                    return Some(if natural {
                        Witness::ExchangeMNat { x, y, i, lhs: zero(), best: Ext::Inf }
                    } else {
                        Witness::ExchangeM { x, y, i, lhs: zero(), best: Ext::Inf }
                    });
                }
            }
        }
    }
    None
}

fn two_step(s: &LatticeSet) -> Option<Witness> {
    let pts = s.to_vec();
    for x in &pts {
        for y in &pts {
            if x == y {
                continue;
            }
            for st in increments(x, y) {
                let xs = add_raw(x, &st);
                if s.contains(&xs) {
                    continue;
                }
                if !increments(&xs, y).iter().any(|t| s.contains(&add_raw(&xs, t))) {
                    return Some(Witness::TwoStep { x: x.clone(), y: y.clone(), s: st });
                }
            }
        }
    }
    None
}

/// J♮-EXC when `natural`, J-EXC otherwise.
fn jump_exchange(s: &LatticeSet, natural: bool) -> Option<Witness> {
    let pts = s.to_vec();
    for x in &pts {
        for y in &pts {
            if x == y {
                continue;
            }
            for st in increments(x, y) {
                let xs = add_raw(x, &st);
                let ys = sub_raw(y, &st);
                if natural && s.contains(&xs) && s.contains(&ys) {
                    continue;
                }
                let ok = increments(&xs, y)
                    .iter()
                    .any(|t| s.contains(&add_raw(&xs, t)) && s.contains(&sub_raw(&ys, t)));
                if !ok {
                    let (x, y) = (x.clone(), y.clone());
                    return Some(if natural {
                        Witness::JumpNatExchange { x, y, s: st, lhs: zero(), best: Ext::Inf }
                    } else {
                        Witness::JumpExchange { x, y, s: st, lhs: zero(), best: Ext::Inf }
                    });
                }
            }
        }
    }
    None
}
