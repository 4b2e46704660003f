//! Strategies and brute-force oracles shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;

use dca::classify::FnClass;
use dca::lab::{generate_function, GenConfig};
use dca::{LatticeFunction, LatticeSet, Point, Rat, Window};

/// Arbitrary functions on [0, w−1]ⁿ with about a quarter of the points off the domain.
pub fn arb_function(max_n: usize, max_w: i64) -> impl Strategy<Value = LatticeFunction> {
    (1..=max_n, 1..=max_w)
        .prop_flat_map(|(n, w)| {
            let card = (w as usize).pow(n as u32);
            (Just((n, w)), prop::collection::vec(prop::option::weighted(0.75, -4i64..=4), card))
        })
        .prop_filter_map("empty domain", |((n, w), vals)| {
            let window = Window::cube(n, 0, w - 1).unwrap();
            let mut it = vals.into_iter();
            LatticeFunction::from_fn(window, |_| it.next().unwrap().map(Rat::int)).ok().filter(|f| f.dom_size() > 0)
        })
}

pub fn arb_set(max_n: usize, max_w: i64) -> impl Strategy<Value = LatticeSet> {
    arb_function(max_n, max_w).prop_map(|f| f.support_set())
}

/// A generated class member; L and M need at least two variables.
pub fn member(class: FnClass, n: usize, seed: u64) -> LatticeFunction {
    member_in(class, &GenConfig::new(n), seed)
}

pub fn member_in(class: FnClass, cfg: &GenConfig, seed: u64) -> LatticeFunction {
    let n = if matches!(class, FnClass::L | FnClass::M) { cfg.n.max(2) } else { cfg.n };
    generate_function(class, &GenConfig { n, ..cfg.clone() }, seed).unwrap()
}

/// g translated so that its lexicographically first point meets f's.
pub fn aligned(f: &LatticeFunction, g: &LatticeFunction) -> LatticeFunction {
    let a = f.dom()[0].clone();
    let b = g.dom()[0].clone();
    let shift: Point = a.iter().zip(&b).map(|(x, y)| x - y).collect();
    dca::transform::apply_change(g, &dca::transform::CoordinateChange::Shift(shift)).unwrap()
}

/// Solves A λ = b exactly; `None` unless the solution is unique.
fn solve_unique(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Option<Vec<Rat>> {
    let (rows, cols) = (a.len(), a[0].len());
    let mut piv = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !a[i][c].is_zero())?;
        a.swap(r, p);
        b.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let m = &a[i][c] / &a[r][c];
                for k in 0..cols {
                    let d = &m * &a[r][k];
                    a[i][k] = &a[i][k] - &d;
                }
                let d = &m * &b[r];
                b[i] = &b[i] - &d;
            }
        }
        piv.push(r);
        r += 1;
    }
    // leftover rows must be consistent
    if (r..rows).any(|i| !b[i].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| &b[piv[c]] / &a[piv[c]][c]).collect())
}

/// z ∈ conv(points) by Carathéodory: some affinely independent subset of at
/// most n+1 points carries z with nonnegative weights.
pub fn caratheodory(points: &[Point], z: &[Rat]) -> bool {
    let n = z.len();
    let m = points.len();
    for mask in 1u32..(1 << m) {
        let pick: Vec<&Point> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| &points[i]).collect();
        if pick.len() > n + 1 {
            continue;
        }
        // rows: n coordinates and the weight sum
        let mut a = vec![vec![Rat::zero(); pick.len()]; n + 1];
        for (j, p) in pick.iter().enumerate() {
            for i in 0..n {
                a[i][j] = Rat::int(p[i]);
            }
            a[n][j] = Rat::one();
        }
        let mut b: Vec<Rat> = z.to_vec();
        b.push(Rat::one());
        if let Some(l) = solve_unique(a, b) {
            if l.iter().all(|v| !v.is_negative()) {
                return true;
            }
        }
    }
    false
}
