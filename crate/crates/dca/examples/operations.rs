//! Coordinate changes and structural operations on lattice functions and sets.

use dca::classify::{check_fn, check_set, FnClass, SetClass};
use dca::transform::{add, apply_change, apply_change_set, convolve, minkowski, project, restrict, CoordinateChange};
use dca::{LatticeFunction, Rat, Window};

fn main() -> dca::Result<()> {
    // f(x) = |x₁ − x₂| + x₁² on a box: L♮
    let f = LatticeFunction::from_fn(Window::cube(2, -2, 2)?, |x| Some(Rat::int((x[0] - x[1]).abs() + x[0] * x[0])))?;
    println!("f L♮: {}", check_fn(&f, FnClass::LNat).holds);

    let g = apply_change(&f, &CoordinateChange::InvertSigns(vec![1, -1]))?;
    println!("f(x₁, −x₂) L♮: {}  M♮: {}", check_fn(&g, FnClass::LNat).holds, check_fn(&g, FnClass::MNat).holds);

    let h = apply_change(&f, &CoordinateChange::Permute(vec![1, 0]))?;
    println!("f + f∘swap L♮: {}", check_fn(&add(&f, &h)?, FnClass::LNat).holds);
    println!("f □ f L♮: {}", check_fn(&convolve(&f, &f)?, FnClass::LNat).holds);
    println!("projection onto x₁: {:?}", project(&f, &[0])?.values());
    println!("restriction to x₁ (x₂ = 0): {:?}", restrict(&f, &[0])?.values());

    // an M♮-set whose scaling y ↦ S ∩ 2y stops being M♮
    let objs = dca::lab::fixtures::find("mnatsetscdim3").expect("registry fixture").evaluate()?;
    let s = dca::lab::fixtures::as_function(&objs["S"]).support_set();
    let t = apply_change_set(&s, &CoordinateChange::VarScale(2))?;
    println!("S M♮-set: {}  scaled M♮-set: {}", check_set(&s, SetClass::MNatSet).holds, check_set(&t, SetClass::MNatSet).holds);
    let sum = minkowski(&s, &s)?;
    println!("S + S has {} points, M♮-set: {}", sum.to_vec().len(), check_set(&sum, SetClass::MNatSet).holds);
    Ok(())
}
