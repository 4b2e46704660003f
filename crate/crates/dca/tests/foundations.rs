//! Lattice arithmetic, serialization and the exact LP layer.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{arb_function, arb_set, caratheodory};
use dca::io::{self, Object};
use dca::lattice::{d_apply, d_inverse_apply, integral_neighborhood, join, meet, midpoint_ceil, midpoint_floor, HalfPoint};
use dca::lp::{hull_membership, local_extension_value, solve, Bound, LpInstance, Sense};
use dca::{Ext, LatticeFunction, LatticeSet, Rat};

fn pair(max_n: usize) -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (1..=max_n).prop_flat_map(|n| (prop::collection::vec(-50i64..50, n), prop::collection::vec(-50i64..50, n)))
}

proptest! {
    #[test]
    fn midpoints_split_the_sum((x, y) in pair(6)) {
        let f = midpoint_floor(&x, &y).unwrap();
        let c = midpoint_ceil(&x, &y).unwrap();
        for i in 0..x.len() {
            prop_assert_eq!(f[i] + c[i], x[i] + y[i]);
            prop_assert!(c[i] - f[i] <= 1);
        }
    }

    #[test]
    fn join_and_meet_split_the_sum((x, y) in pair(6)) {
        let j = join(&x, &y).unwrap();
        let m = meet(&x, &y).unwrap();
        for i in 0..x.len() {
            prop_assert_eq!(j[i] + m[i], x[i] + y[i]);
        }
    }

    #[test]
    fn neighbourhood_has_two_to_the_half_coordinates(d in prop::collection::vec(-9i64..9, 1..=6)) {
        let z = HalfPoint::from_doubled(d);
        let nb = integral_neighborhood(&z);
        prop_assert_eq!(nb.len(), 1usize << z.half_coords().len());
        let zc = z.coords();
        for w in &nb {
            for (a, b) in w.iter().zip(&zc) {
                prop_assert!((Rat::int(*a) - b).abs() < Rat::one());
            }
        }
    }

    #[test]
    fn indicator_and_support_are_inverse(s in arb_set(3, 3)) {
        let back = LatticeFunction::indicator(&s).support_set();
        prop_assert_eq!(back.points(), s.points());
    }

    #[test]
    fn json_round_trip_is_lossless(
        vals in prop::collection::vec((any::<i64>(), 1u64..=u64::MAX, prop::collection::vec(0i64..3, 2)), 1..6),
        base in prop::collection::vec(-(1i64 << 31)..=(1i64 << 31), 2),
    ) {
        let pairs: Vec<(Vec<i64>, Rat)> = vals
            .iter()
            .map(|(num, den, x)| {
                let r = Rat::from_big(BigRational::new(BigInt::from(*num), BigInt::from(*den)));
                (x.iter().zip(&base).map(|(c, b)| b + c).collect(), r)
            })
            .collect();
        // last writer wins on repeated points, as in a map
        let f = LatticeFunction::from_pairs(pairs).unwrap();
        let text = io::to_string(&Object::Function(f.clone()));
        match io::parse_str(&text).unwrap() {
            Object::Function(g) => prop_assert_eq!(&g, &f),
            Object::Set(_) => prop_assert!(false, "came back as a set"),
        }
        let s = f.support_set();
        match io::parse_str(&io::to_string(&Object::Set(s.clone()))).unwrap() {
            Object::Set(t) => prop_assert_eq!(t.points(), s.points()),
            Object::Function(_) => prop_assert!(false, "came back as a function"),
        }
    }

    #[test]
    fn lp_solve_is_deterministic(
        n in 1usize..4,
        rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 0u8..3, -5i64..=5), 0..5),
        obj in prop::collection::vec(-3i64..=3, 3),
    ) {
        let mut lp = LpInstance::new(obj[..n].iter().map(|&c| Rat::int(c)).collect());
        lp.bounds = vec![Bound::range(Rat::int(-4), Rat::int(4)); n];
        for (r, s, b) in rows {
            let sense = [Sense::Le, Sense::Eq, Sense::Ge][s as usize];
            lp.push(r[..n].iter().map(|&c| Rat::int(c)).collect(), sense, Rat::int(b));
        }
        let a = solve(&lp).unwrap();
        prop_assert_eq!(&a, &solve(&lp.clone()).unwrap());
        if let dca::lp::LpOutcome::Optimal { x, value, .. } = &a {
            prop_assert!(lp.is_feasible(x));
            prop_assert_eq!(&lp.objective_at(x), value);
        }
    }

    #[test]
    fn local_extension_matches_values_and_hulls(f in arb_function(3, 3), d in prop::collection::vec(-1i64..=5, 3)) {
        let n = f.dim();
        let z = HalfPoint::from_doubled(d[..n].to_vec());
        let ext = local_extension_value(&f, &z).unwrap();
        if let Some(y) = z.to_point() {
            prop_assert_eq!(&ext, &f.eval_raw(&y));
        }
        let local: Vec<Vec<i64>> = z.neighborhood().into_iter().filter(|w| f.in_dom(w)).collect();
        let inside = !local.is_empty() && caratheodory(&local, &z.coords());
        prop_assert_eq!(ext == Ext::Inf, !inside);
        // never above any neighbour value that could carry z alone
        if let (Some(y), Ext::Fin(v)) = (z.to_point(), &ext) {
            prop_assert!(f.get(&y).is_some_and(|fy| fy == v));
        }
    }

    #[test]
    fn hull_membership_agrees_with_caratheodory(
        n in 1usize..=3,
        pts in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 1..=8),
        z in prop::collection::vec(-5i64..=5, 3),
    ) {
        let points: Vec<Vec<i64>> = pts.iter().map(|p| p[..n].to_vec()).collect();
        let s = LatticeSet::new(points.clone()).unwrap();
        let zq: Vec<Rat> = z[..n].iter().map(|&c| Rat::frac(c, 2)).collect();
        let uniq: Vec<Vec<i64>> = s.to_vec();
        prop_assert_eq!(hull_membership(&s, &zq).unwrap(), caratheodory(&uniq, &zq));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bidiagonal_map_inverts(x in prop::collection::vec(-1000i64..1000, 1..=6)) {
        prop_assert_eq!(d_apply(&d_inverse_apply(&x)), x.clone());
        prop_assert_eq!(d_inverse_apply(&d_apply(&x)), x);
    }
}
