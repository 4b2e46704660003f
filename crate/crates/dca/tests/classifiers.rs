use dca::classify::{check_fn, check_set, recheck, recheck_set, FnClass, SetClass, Witness};
use dca::{LatticeFunction, LatticeSet, Rat, Window};

fn set(pts: &[&[i64]]) -> LatticeSet {
    LatticeSet::new(pts.iter().map(|p| p.to_vec())).unwrap()
}

fn assert_set(s: &LatticeSet, c: SetClass, expect: bool) {
    let v = check_set(s, c);
    assert_eq!(v.holds, expect, "{c} on {s:?}: {:?}", v.witness);
    if let Some(w) = &v.witness {
        assert!(recheck_set(s, w), "witness does not recheck: {w:?}");
    }
}

fn assert_fn(f: &LatticeFunction, c: FnClass, expect: bool) -> Option<Witness> {
    let v = check_fn(f, c);
    assert_eq!(v.holds, expect, "{c} on {f:?}: {:?}", v.witness);
    if let Some(w) = &v.witness {
        assert!(recheck(f, w), "witness does not recheck: {w:?}");
    }
    v.witness
}

#[test]
fn parity_gap_is_constant_parity_jump() {
    let s = set(&[&[0], &[2]]);
    assert_set(&s, SetClass::CpJump, true);
    assert_set(&s, SetClass::JumpSystem, true);
    assert_set(&s, SetClass::MNatSet, false);
}

#[test]
fn three_point_line_fails_simultaneous_exchange() {
    let s = set(&[&[0], &[2], &[3]]);
    assert_set(&s, SetClass::JumpSystem, true);
    assert_set(&s, SetClass::SeJump, false);
    let w = check_set(&s, SetClass::SeJump).witness.unwrap();
    assert_eq!(w, Witness::JumpNatExchange { x: vec![0], y: vec![3], s: vec![1], lhs: dca::Ext::int(0), best: dca::Ext::Inf });
}

#[test]
fn delta_matroid_fails_simultaneous_exchange() {
    let s = set(&[&[0, 0, 0], &[1, 1, 0], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
    assert_set(&s, SetClass::JumpSystem, true);
    assert_set(&s, SetClass::SeJump, false);
}

#[test]
fn singleton_is_m_convex() {
    assert_set(&set(&[&[5, -3]]), SetClass::MSet, true);
}

#[test]
fn scaled_set_is_not_integrally_convex() {
    let t = set(&[&[0, 0, 0], &[1, 0, 0], &[1, 0, 1], &[2, 1, 1]]);
    assert_set(&t, SetClass::IntegrallyConvexSet, false);
}

#[test]
fn exchange_depends_on_values() {
    let f = |a: i64, b: i64| {
        LatticeFunction::from_pairs(vec![
            (vec![0, 0], Rat::int(a)),
            (vec![1, 1], Rat::int(a)),
            (vec![1, 0], Rat::int(b)),
            (vec![0, 1], Rat::int(b)),
        ])
        .unwrap()
    };
    assert_fn(&f(0, 1), FnClass::MNat, false);
    assert_fn(&f(0, 1), FnClass::JumpMNat, true);
    assert_fn(&f(1, 0), FnClass::MNat, true);
    assert_fn(&f(1, 2), FnClass::MNat, false);
}

#[test]
fn zero_function_on_cube_is_in_every_finite_class() {
    let f = LatticeFunction::from_fn(Window::cube(3, 0, 1).unwrap(), |_| Some(Rat::zero())).unwrap();
    for c in [
        FnClass::SeparableConvex,
        FnClass::IntegrallyConvex,
        FnClass::LNat,
        FnClass::MNat,
        FnClass::Multimodular,
        FnClass::GlobalDmc,
        FnClass::LocalDmc,
        FnClass::Submodular,
        FnClass::Supermodular,
    ] {
        assert_fn(&f, c, true);
    }
}

#[test]
fn l_verdict_is_not_vacuous_in_a_tight_window() {
    // a nonconvex chain along e₂; no translate by 𝟏 fits in the window
    let f = LatticeFunction::from_pairs(
        [(1, 1), (2, -4), (3, 4), (4, -1)].iter().map(|&(y, v)| (vec![1, y, 2], Rat::int(v))).collect(),
    )
    .unwrap();
    assert_fn(&f, FnClass::L, false);
    let s = set(&[&[0, 0], &[0, 2]]);
    assert_set(&s, SetClass::LSet, false);
}
