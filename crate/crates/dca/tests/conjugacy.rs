use dca::conjugacy::{biconjugate_at, centered_window, conjugate, has_integer_subgradient, subdifferential_box};
use dca::lattice::HalfPoint;
use dca::lp::local_extension_value;
use dca::{Ext, LatticeFunction, LatticeSet, Rat};

fn odd_sum_example() -> LatticeFunction {
    let s = [[0, 0, 0], [1, 1, 0], [-1, -1, 0], [0, 1, 1], [0, -1, -1], [1, 0, 1], [-1, 0, -1]];
    LatticeFunction::from_pairs(s.iter().map(|x| (x.to_vec(), Rat::int(x.iter().sum::<i64>() / 2))).collect()).unwrap()
}

#[test]
fn conjugate_matches_closed_form_and_biconjugate_drops() {
    let f = odd_sum_example();
    let c = conjugate(&f, &centered_window(3, 2).unwrap()).unwrap();
    for (p, v) in c.function.iter() {
        let e = [p[0] + p[1] - 1, p[1] + p[2] - 1, p[2] + p[0] - 1].iter().map(|a| a.abs()).max().unwrap().max(0);
        assert_eq!(v, &Rat::int(e), "at {p:?}");
    }
    assert_eq!(biconjugate_at(&f, &[0, 0, 0]).unwrap().value, Ext::int(-1));
    let b = subdifferential_box(&f, &[0, 0, 0]).unwrap();
    assert!(b.lo.iter().chain(&b.hi).all(|v| v == &Some(Rat::half())));
    assert!(!has_integer_subgradient(&f, &[0, 0, 0]).unwrap().holds);
}

#[test]
fn conjugate_of_ic_indicator_is_not_ic() {
    let s = LatticeSet::new(vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
    let g = conjugate(&LatticeFunction::indicator(&s), &centered_window(4, 2).unwrap()).unwrap().function;
    for (p, v) in g.iter() {
        let e = *[p[0] + p[1], p[1] + p[2], p[0] + p[2], p[3]].iter().max().unwrap();
        assert_eq!(v, &Rat::int(e));
    }
    let z = HalfPoint::midpoint(&[0, 0, 0, 0], &[1, 1, 1, 2]).unwrap();
    assert_eq!(local_extension_value(&g, &z).unwrap(), Ext::Fin(Rat::frac(5, 4)));
    assert!(!dca::classify::check_fn(&g, dca::classify::FnClass::IntegrallyConvex).holds);
}
