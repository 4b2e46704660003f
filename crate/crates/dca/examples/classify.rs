//! Classifies a quadratic and a small set against every class and prints
//! each verdict, with the violated axiom where there is one.

use dca::classify::{classify_fn_all, classify_set_all, FnClass};
use dca::{LatticeFunction, LatticeSet, Rat, Window};

fn main() -> dca::Result<()> {
    // xᵀAx with a nonpositive off-diagonal: L♮ but not M♮
    let a = vec![vec![Rat::int(2), Rat::int(-1)], vec![Rat::int(-1), Rat::int(2)]];
    let f = LatticeFunction::quadratic(&a, Window::cube(2, -2, 2)?)?;
    println!("quadratic on {}:", f.window());
    for (c, v) in classify_fn_all(&f) {
        println!("  {:<12} {}", c.to_string(), v.to_json());
    }

    let s = LatticeSet::new(vec![vec![0, 0], vec![1, 1], vec![2, 0]])?;
    println!("set {:?}:", s.to_vec());
    for (c, v) in classify_set_all(&s) {
        println!("  {:<12} {}", c.to_string(), v.to_json());
    }

    let v = dca::classify::check_fn(&f, FnClass::MNat);
    if let Some(w) = &v.witness {
        println!("M♮ witness rechecks: {}", dca::classify::recheck(&f, w));
    }
    Ok(())
}
