//! Witness soundness, class inclusions and the equivalent characterisations,
//! on arbitrary functions and on generated class members.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;

use common::{arb_function, arb_set, member};
use dca::classify::{
    check_fn, check_set, classify_fn_all, dim2_crosscheck, lnat_profile, recheck, recheck_set, FnClass, SetClass,
};
use dca::LatticeFunction;

const MEMBER_CLASSES: [FnClass; 9] = [
    FnClass::SeparableConvex,
    FnClass::IntegrallyConvex,
    FnClass::LNat,
    FnClass::L,
    FnClass::MNat,
    FnClass::M,
    FnClass::Multimodular,
    FnClass::GlobalDmc,
    FnClass::JumpMNat,
];

fn arb_member(max_n: usize) -> impl Strategy<Value = (FnClass, LatticeFunction)> {
    (0..MEMBER_CLASSES.len(), 1..=max_n, any::<u64>()).prop_map(|(c, n, seed)| {
        let class = MEMBER_CLASSES[c];
        (class, member(class, n, seed))
    })
}

fn inclusions(f: &LatticeFunction) -> Result<(), TestCaseError> {
    let v: BTreeMap<FnClass, bool> = classify_fn_all(f).into_iter().map(|(c, v)| (c, v.holds)).collect();
    for (a, b) in [
        (FnClass::LNat, FnClass::GlobalDmc),
        (FnClass::GlobalDmc, FnClass::IntegrallyConvex),
        (FnClass::GlobalDmc, FnClass::LocalDmc),
        (FnClass::L, FnClass::LNat),
        (FnClass::M, FnClass::MNat),
        (FnClass::MNat, FnClass::IntegrallyConvex),
        (FnClass::MNat, FnClass::JumpMNat),
        (FnClass::M, FnClass::JumpM),
        (FnClass::JumpM, FnClass::JumpMNat),
        (FnClass::Multimodular, FnClass::IntegrallyConvex),
        (FnClass::MNat, FnClass::Supermodular),
        (FnClass::LNat, FnClass::Submodular),
    ] {
        prop_assert!(!v[&a] || v[&b], "{} without {} on {:?}", a, b, f);
    }
    prop_assert_eq!(v[&FnClass::SeparableConvex], v[&FnClass::LNat] && v[&FnClass::MNat], "separable on {:?}", f);
    Ok(())
}

proptest! {
    #[test]
    fn function_witnesses_recheck(f in arb_function(3, 3)) {
        for (c, v) in classify_fn_all(&f) {
            prop_assert_eq!(v.holds, v.witness.is_none(), "{}", c);
            if let Some(w) = &v.witness {
                prop_assert!(recheck(&f, w), "{} witness {:?} does not recheck on {:?}", c, w, f);
            }
        }
    }

    #[test]
    fn set_witnesses_recheck(s in arb_set(3, 3)) {
        for c in SetClass::ALL {
            let v = check_set(&s, c);
            prop_assert_eq!(v.holds, v.witness.is_none(), "{}", c);
            if let Some(w) = &v.witness {
                prop_assert!(recheck_set(&s, w), "{} witness {:?} does not recheck on {:?}", c, w, s);
            }
        }
    }

    #[test]
    fn set_and_indicator_verdicts_agree(s in arb_set(3, 3)) {
        let ind = LatticeFunction::indicator(&s);
        for c in SetClass::ALL {
            if let Some(fc) = c.indicator_class() {
                prop_assert_eq!(check_set(&s, c).holds, check_fn(&ind, fc).holds, "{} vs {}", c, fc);
            }
        }
    }

    #[test]
    fn inclusions_hold_on_arbitrary_functions(f in arb_function(3, 3)) {
        inclusions(&f)?;
    }

    #[test]
    fn members_are_members_and_respect_inclusions((class, f) in arb_member(3)) {
        prop_assert!(check_fn(&f, class).holds, "generated {} member rejected: {:?}", class, f);
        inclusions(&f)?;
    }

    #[test]
    fn lnat_characterisations_agree(f in arb_function(3, 3)) {
        let p = lnat_profile(&f);
        prop_assert!(p.all_agree(), "{:?} on {:?}", p.bools(), f);
        prop_assert_eq!(p.a.holds, check_fn(&f, FnClass::LNat).holds);
    }

    #[test]
    fn lnat_characterisations_agree_on_members((_, f) in arb_member(3)) {
        let p = lnat_profile(&f);
        prop_assert!(p.all_agree(), "{:?} on {:?}", p.bools(), f);
    }

    #[test]
    fn two_variable_coincidences(f in arb_function(2, 4).prop_filter("n = 2", |f| f.dim() == 2)) {
        let b = dim2_crosscheck(&f).unwrap();
        prop_assert!(b.consistent(), "{:?} on {:?}", b, f);
    }

    #[test]
    fn two_variable_coincidences_on_members((_, f) in arb_member(2).prop_filter("n = 2", |(_, f)| f.dim() == 2)) {
        let b = dim2_crosscheck(&f).unwrap();
        prop_assert!(b.consistent(), "{:?} on {:?}", b, f);
    }

    #[test]
    fn mnat_members_are_supermodular(n in 1usize..=3, seed in any::<u64>()) {
        let f = member(FnClass::MNat, n, seed);
        prop_assert!(check_fn(&f, FnClass::Supermodular).holds, "{:?}", f);
    }
}
