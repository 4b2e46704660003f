//! Integral conjugate, biconjugate and integer subgradients.

use dca::classify::{check_fn, FnClass};
use dca::conjugacy::{biconjugate_at, centered_window, conjugate, has_integer_subgradient, subdifferential_box};
use dca::{LatticeFunction, Rat, Window};

fn main() -> dca::Result<()> {
    let f = LatticeFunction::from_fn(Window::cube(2, 0, 2)?, |x| Some(Rat::int((x[0] - x[1]).pow(2) + x[0])))?;
    let c = conjugate(&f, &centered_window(2, 3)?)?;
    println!("f L♮: {}   f• M♮: {}", check_fn(&f, FnClass::LNat).holds, check_fn(&c.function, FnClass::MNat).holds);
    println!("f• minimum on window boundary: {}", c.boundary_attained);

    for x in [vec![1, 1], vec![2, 0]] {
        let b = biconjugate_at(&f, &x)?;
        println!(
            "x = {:?}: f = {}  f•• = {}  bracket closed: {}  ∂f box: {}  integer subgradient: {}",
            x,
            f.get(&x).unwrap(),
            b.value,
            b.bracket_closed,
            subdifferential_box(&f, &x)?.to_json(),
            has_integer_subgradient(&f, &x)?.holds
        );
    }

    // a parity function: f•• undercuts f where no integer slope supports it
    let p = LatticeFunction::from_fn(Window::cube(2, -1, 1)?, |x| Some(Rat::int(-((x[0] + x[1]) % 2).abs())))?;
    let b = biconjugate_at(&p, &[0, 0])?;
    println!("parity at 0: f = {}  f•• = {}", p.get(&[0, 0]).unwrap(), b.value);
    Ok(())
}
