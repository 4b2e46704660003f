//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the terminal; exits non-zero on any
//! failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;

use dca::classify::{
    check_fn, check_set, classify_fn_all, dim2_crosscheck, lnat_profile, Certification, FnClass, SetClass,
};
use dca::conjugacy::{
    biconjugate_at, centered_window, conjugate, conjugate_class_check_in, has_integer_subgradient, subdifferential_box,
};
use dca::lab::runner::{control_corrupted_fixture, control_wrong_cell, verify_all, Outcome, VerifyConfig};
use dca::lab::tables::Expected;
use dca::lab::{generate_fn, trial_rng, GenConfig, Member};
use dca::lattice::HalfPoint;
use dca::lp::{hull_membership, local_extension_value};
use dca::transform::{apply_change, minkowski, CoordinateChange};
use dca::{Ext, LatticeFunction, LatticeSet, Point, Rat};

// Pinned limits. Values are compared exactly; there is no numeric tolerance.
const LA1_BUDGET: Duration = Duration::from_secs(5);
const CONJ_IC_BUDGET: Duration = Duration::from_secs(10);
const SCALED_IC_BUDGET: Duration = Duration::from_secs(5);
const VERIFY_BUDGET: Duration = Duration::from_secs(300);
const MIN_TRIALS_PER_DIM: usize = 200;
const PROFILE_INSTANCES: usize = 500;
const DIM2_INSTANCES: usize = 200;
const SUPERMODULAR_INSTANCES: usize = 200;
const BICONJUGATE_INSTANCES: usize = 100;
const CONJUGATE_CLASS_INSTANCES: usize = 100;
const M_TO_L_INSTANCES: usize = 50;
const SEED: u64 = 20_190_601;
/// p-window radius for the conjugate class checks; restriction to a box keeps
/// L♮ and M♮ in their classes, so any radius is sound.
const CONJ_RADIUS: i64 = 3;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, budget: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < budget, || format!("took {e:.1?}, budget {budget:?}"))?;
    Ok(e)
}

fn member(class: FnClass, n: usize, label: &str, i: u64) -> LatticeFunction {
    // L and M members are single points or lines in one variable
    let n = if matches!(class, FnClass::L | FnClass::M) { n.max(2) } else { n };
    let mut rng = trial_rng(SEED, label, i);
    match generate_fn(class, &GenConfig::new(n), &mut rng).unwrap() {
        Member::Finite(f) => f,
        m @ Member::Linear(_) => m.materialize(3).unwrap(),
    }
}

/// Adds a random positive bump at one domain point.
fn perturb(f: &LatticeFunction, label: &str, i: u64) -> LatticeFunction {
    let mut rng = trial_rng(SEED, label, i);
    let dom = f.dom();
    let at = dom[rng.gen_range(0..dom.len())].clone();
    let bump = Rat::int(rng.gen_range(1..=3));
    f.map_values(|x, v| if *x == at { v + &bump } else { v.clone() })
}

fn criterion_1() -> Check {
    let t = Instant::now();
    let s: [[i64; 3]; 7] = [[0, 0, 0], [1, 1, 0], [-1, -1, 0], [0, 1, 1], [0, -1, -1], [1, 0, 1], [-1, 0, -1]];
    let f = LatticeFunction::from_pairs(s.iter().map(|x| (x.to_vec(), Rat::int(x.iter().sum::<i64>() / 2))).collect())
        .unwrap();
    let c = conjugate(&f, &centered_window(3, 2).unwrap()).unwrap().function;
    ensure(c.dom_size() == 125, || format!("conjugate has {} points", c.dom_size()))?;
    let mut lowest = None::<Rat>;
    for (p, v) in c.iter() {
        let e = [p[0] + p[1] - 1, p[1] + p[2] - 1, p[2] + p[0] - 1].iter().map(|a| a.abs()).max().unwrap().max(0);
        ensure(*v == Rat::int(e), || format!("f•{p:?} = {v}, closed form {e}"))?;
        lowest = Some(lowest.map_or(v.clone(), |l| l.min(v.clone())));
    }
    // f••(0) = −min f•, and the closed form is odd-sum so it never reaches 0
    let from_window = -lowest.unwrap();
    let b = biconjugate_at(&f, &[0, 0, 0]).unwrap();
    ensure(b.value == Ext::Fin(Rat::int(-1)), || format!("f••(0) = {}", b.value))?;
    ensure(b.value == Ext::Fin(from_window.clone()), || format!("window oracle gives {from_window}"))?;
    let sub = has_integer_subgradient(&f, &[0, 0, 0]).unwrap();
    ensure(!sub.holds, || "integer subgradient found at the origin".into())?;
    let bx = subdifferential_box(&f, &[0, 0, 0]).unwrap();
    ensure(bx.lo.iter().chain(&bx.hi).all(|v| *v == Some(Rat::half())), || format!("box {bx:?}"))?;
    let e = within(t, LA1_BUDGET)?;
    Ok(format!("125 closed-form values, f••(0) = -1, box (1/2,1/2,1/2), {e:.2?}"))
}

fn criterion_2() -> Check {
    let t = Instant::now();
    let s = LatticeSet::new(vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
    let g = conjugate(&LatticeFunction::indicator(&s), &centered_window(4, 2).unwrap()).unwrap().function;
    ensure(g.dom_size() == 625, || format!("conjugate has {} points", g.dom_size()))?;
    for (p, v) in g.iter() {
        let e = *[p[0] + p[1], p[1] + p[2], p[0] + p[2], p[3]].iter().max().unwrap();
        ensure(*v == Rat::int(e), || format!("g{p:?} = {v}, closed form {e}"))?;
    }
    let (x, y) = ([0, 0, 0, 0], [1, 1, 1, 2]);
    let ext = local_extension_value(&g, &HalfPoint::midpoint(&x, &y).unwrap()).unwrap();
    let avg = (g.get(&x).unwrap() + g.get(&y).unwrap()) / &Rat::int(2);
    ensure(ext == Ext::Fin(Rat::frac(5, 4)), || format!("extension {ext}"))?;
    ensure(avg == Rat::int(1), || format!("average {avg}"))?;
    let v = check_fn(&g, FnClass::IntegrallyConvex);
    ensure(!v.holds, || "conjugate classified integrally convex".into())?;
    let e = within(t, CONJ_IC_BUDGET)?;
    Ok(format!("625 closed-form values, extension 5/4 > average 1, not integrally convex, {e:.2?}"))
}

fn criterion_3() -> Check {
    let t = Instant::now();
    let fx = dca::lab::fixtures::find("scICfnNG422").ok_or("fixture missing")?;
    let objs = fx.evaluate().map_err(|e| e.to_string())?;
    let f = dca::lab::fixtures::as_function(&objs["f"]);
    ensure(check_fn(&f, FnClass::IntegrallyConvex).holds, || "f is not integrally convex".into())?;
    let g = apply_change(&f, &CoordinateChange::VarScale(2)).unwrap();
    ensure(!check_fn(&g, FnClass::IntegrallyConvex).holds, || "scaled f is integrally convex".into())?;
    let (x, y) = ([0, 0, 0], [2, 1, 1]);
    let ext = local_extension_value(&g, &HalfPoint::midpoint(&x, &y).unwrap()).unwrap();
    // z = (1, 1/2, 1/2): the cheapest split of z over its four neighbours is
    // one of the two diagonals
    let gv = |p: [i64; 3]| f.get(&p.map(|c| 2 * c)).cloned().unwrap();
    let two = Rat::int(2);
    let diag1 = (gv([1, 1, 0]) + gv([1, 0, 1])) / &two;
    let diag2 = (gv([1, 0, 0]) + gv([1, 1, 1])) / &two;
    let oracle = diag1.min(diag2);
    let avg = (gv(x) + gv(y)) / &two;
    ensure(ext == Ext::Fin(Rat::half()) && ext == Ext::Fin(oracle.clone()), || format!("extension {ext}, oracle {oracle}"))?;
    ensure(avg == Rat::zero(), || format!("average {avg}"))?;
    let e = within(t, SCALED_IC_BUDGET)?;
    Ok(format!("f integrally convex; 2-scaling gives 1/2 vs 0 at (0,0,0),(2,1,1), {e:.2?}"))
}

fn brute_sum(a: &LatticeSet, b: &LatticeSet) -> BTreeSet<Point> {
    a.points().iter().flat_map(|x| b.points().iter().map(move |y| x.iter().zip(y).map(|(p, q)| p + q).collect())).collect()
}

fn hole(a: &LatticeSet, b: &LatticeSet, z: &[i64]) -> Result<LatticeSet, String> {
    let s = minkowski(a, b).map_err(|e| e.to_string())?;
    ensure(*s.points() == brute_sum(a, b), || "Minkowski sum disagrees with enumeration".into())?;
    let zq: Vec<Rat> = z.iter().map(|&c| Rat::int(c)).collect();
    ensure(hull_membership(&s, &zq).unwrap(), || format!("{z:?} not in the hull"))?;
    ensure(!s.contains(z), || format!("{z:?} is in the sum"))?;
    Ok(s)
}

fn criterion_4() -> Check {
    let set = |p: &[&[i64]]| LatticeSet::new(p.iter().map(|x| x.to_vec())).unwrap();
    hole(&set(&[&[0, 0], &[1, 1]]), &set(&[&[0, 1], &[1, 0]]), &[1, 1])?;
    let s23 = minkowski(&set(&[&[0, 0, 0], &[0, 1, 1]]), &set(&[&[0, 0, 0], &[1, 0, 1]])).unwrap();
    let s1 = set(&[&[0, 0, 0], &[1, 1, 0]]);
    for s in [&s1, &s23] {
        ensure(check_set(s, SetClass::IntegrallyConvexSet).holds, || "summand not integrally convex".into())?;
    }
    hole(&s1, &s23, &[1, 1, 1])?;
    Ok("(1,1) and (1,1,1) lie in the hull and not in the sum".into())
}

fn criterion_5() -> Check {
    let t = Instant::now();
    let vc = VerifyConfig { trials: MIN_TRIALS_PER_DIM, ..VerifyConfig::default() };
    let rep = verify_all(&vc);
    let e = within(t, VERIFY_BUDGET)?;
    let (mut y, mut n) = (0, 0);
    for c in &rep.cells {
        let id = format!("{}/{}/{}", c.table.name(), c.class.name(), c.op.name());
        match c.expected {
            Expected::Yes => {
                y += 1;
                ensure(c.outcome == Outcome::Pass, || format!("{id} failed: {}", c.witness))?;
                for &d in &[2, 3] {
                    let k = c.trials.iter().find(|t| t.0 == d).map_or(0, |t| t.1);
                    ensure(k >= MIN_TRIALS_PER_DIM, || format!("{id} ran {k} trials at n = {d}"))?;
                }
            }
            Expected::No => {
                n += 1;
                ensure(c.outcome == Outcome::Pass && !c.witness.is_null(), || format!("{id} not witnessed"))?;
            }
            Expected::NotApplicable => {}
        }
    }
    ensure(rep.fixtures.iter().all(|f| f.passed), || "a fixture failed".into())?;
    ensure(rep.passed(), || "report did not pass".into())?;
    Ok(format!("{y} Y cells at >= {MIN_TRIALS_PER_DIM} trials per n in {{2,3}}, {n} N cells witnessed, {e:.1?}"))
}

/// The two inclusion chains, read off one full classification.
fn inclusions(f: &LatticeFunction) -> Result<(), String> {
    let v: std::collections::BTreeMap<FnClass, bool> = classify_fn_all(f).into_iter().map(|(c, v)| (c, v.holds)).collect();
    let implies = [
        (FnClass::LNat, FnClass::GlobalDmc),
        (FnClass::GlobalDmc, FnClass::IntegrallyConvex),
        (FnClass::GlobalDmc, FnClass::LocalDmc),
        (FnClass::M, FnClass::MNat),
        (FnClass::MNat, FnClass::IntegrallyConvex),
        (FnClass::MNat, FnClass::JumpMNat),
        (FnClass::M, FnClass::JumpM),
        (FnClass::Multimodular, FnClass::IntegrallyConvex),
        (FnClass::MNat, FnClass::Supermodular),
        (FnClass::LNat, FnClass::Submodular),
    ];
    for (a, b) in implies {
        ensure(!v[&a] || v[&b], || format!("{a} without {b} on {f:?}"))?;
    }
    let sep = v[&FnClass::SeparableConvex];
    ensure(sep == (v[&FnClass::LNat] && v[&FnClass::MNat]), || format!("separable mismatch on {f:?}"))?;
    let s = f.support_set();
    let sv: std::collections::BTreeMap<SetClass, bool> = SetClass::ALL.iter().map(|&c| (c, check_set(&s, c).holds)).collect();
    let set_implies = [
        (SetClass::LNatSet, SetClass::DmcSet),
        (SetClass::DmcSet, SetClass::IntegrallyConvexSet),
        (SetClass::MSet, SetClass::MNatSet),
        (SetClass::MNatSet, SetClass::IntegrallyConvexSet),
        (SetClass::MNatSet, SetClass::SeJump),
        (SetClass::MSet, SetClass::CpJump),
        (SetClass::MultimodularSet, SetClass::IntegrallyConvexSet),
        (SetClass::SeJump, SetClass::JumpSystem),
    ];
    for (a, b) in set_implies {
        ensure(!sv[&a] || sv[&b], || format!("{a} without {b} on {s:?}"))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    let pool = [
        FnClass::LNat,
        FnClass::L,
        FnClass::MNat,
        FnClass::M,
        FnClass::Multimodular,
        FnClass::SeparableConvex,
        FnClass::IntegrallyConvex,
        FnClass::GlobalDmc,
    ];
    let (mut agree, mut lnat_true, mut chained) = (0, 0, 0);
    for i in 0..PROFILE_INSTANCES as u64 {
        let n = 1 + (i % 3) as usize;
        let base = member(pool[(i / 3) as usize % pool.len()], n, "accept/profile", i);
        let f = if i % 2 == 0 { base } else { perturb(&base, "accept/profile/bump", i) };
        let p = lnat_profile(&f);
        ensure(p.all_agree(), || format!("profile {:?} on {f:?}", p.bools()))?;
        agree += 1;
        lnat_true += usize::from(p.a.holds);
        inclusions(&f)?;
        chained += 1;
    }
    ensure(lnat_true > 0 && lnat_true < agree, || format!("profile population is one-sided ({lnat_true}/{agree})"))?;
    let mut dim2 = 0;
    for i in 0..DIM2_INSTANCES as u64 {
        let base = member(pool[i as usize % pool.len()], 2, "accept/dim2", i);
        let f = if i % 3 == 2 { perturb(&base, "accept/dim2/bump", i) } else { base };
        let bits = dim2_crosscheck(&f).unwrap();
        ensure(bits.consistent(), || format!("{bits:?} on {f:?}"))?;
        inclusions(&f)?;
        dim2 += 1;
        chained += 1;
    }
    let mut superm = 0;
    for i in 0..SUPERMODULAR_INSTANCES as u64 {
        let f = member(FnClass::MNat, 2 + (i % 2) as usize, "accept/supermodular", i);
        ensure(check_fn(&f, FnClass::MNat).holds, || "generator left M♮".into())?;
        ensure(check_fn(&f, FnClass::Supermodular).holds, || format!("M♮ but not supermodular: {f:?}"))?;
        superm += 1;
    }
    Ok(format!(
        "profile agrees on {agree} ({lnat_true} L♮), dim-2 on {dim2}, M♮ supermodular on {superm}, inclusions on {chained}"
    ))
}

fn criterion_7() -> Check {
    let (mut count, mut points) = (0, 0);
    let mut i = 0u64;
    while count < BICONJUGATE_INSTANCES {
        let n = 1 + (i % 3) as usize;
        let f = member(FnClass::IntegrallyConvex, n, "accept/biconjugate", i);
        i += 1;
        ensure(f.is_integer_valued(), || "generator gave fractional values".into())?;
        for (x, v) in f.iter() {
            let b = biconjugate_at(&f, x).map_err(|e| e.to_string())?;
            let sub = has_integer_subgradient(&f, x).map_err(|e| e.to_string())?;
            ensure(b.value == Ext::Fin(v.clone()), || format!("f••{x:?} = {} but f = {v} on {f:?}", b.value))?;
            ensure(sub.holds, || format!("no integer subgradient at {x:?} on {f:?}"))?;
            points += 1;
        }
        count += 1;
    }
    Ok(format!("f•• = f at {points} domain points of {count} functions, each with an integer subgradient"))
}

fn criterion_8() -> Check {
    let mut counts = Vec::new();
    for (class, out) in [
        (FnClass::LNat, FnClass::MNat),
        (FnClass::MNat, FnClass::LNat),
        (FnClass::SeparableConvex, FnClass::SeparableConvex),
    ] {
        for i in 0..CONJUGATE_CLASS_INSTANCES as u64 {
            let f = member(class, 1 + (i % 3) as usize, &format!("accept/conj/{class}"), i);
            let c = conjugate_class_check_in(&f, class, CONJ_RADIUS).map_err(|e| e.to_string())?;
            ensure(c.holds(), || format!("{class} conjugate not {out} on {f:?}"))?;
            // second opinion through an independent characterisation
            if out == FnClass::LNat {
                ensure(lnat_profile(&c.conjugate).all_agree(), || "profile split on a conjugate".into())?;
            }
        }
        counts.push(format!("{class}->{out} {CONJUGATE_CLASS_INSTANCES}"));
    }
    for i in 0..M_TO_L_INSTANCES as u64 {
        let f = member(FnClass::M, 2 + (i % 2) as usize, "accept/conj/m", i);
        let c = conjugate_class_check_in(&f, FnClass::M, CONJ_RADIUS).map_err(|e| e.to_string())?;
        ensure(c.verdict.holds && c.verdict.certification == Certification::WindowCertified, || {
            format!("M conjugate not window-certified L on {f:?}")
        })?;
        let sums: BTreeSet<i64> = f.dom().iter().map(|x| x.iter().sum()).collect();
        ensure(sums.len() == 1, || "M member off a hyperplane".into())?;
        let s = Rat::int(*sums.first().unwrap());
        for (p, v) in c.conjugate.iter() {
            let q: Point = p.iter().map(|c| c + 1).collect();
            if let Some(w) = c.conjugate.get(&q) {
                ensure(w - v == s, || format!("slope {} at {p:?}, component sum {s}", w - v))?;
            }
        }
    }
    counts.push(format!("m->l {M_TO_L_INSTANCES} with slope = component sum"));
    Ok(counts.join(", "))
}

fn criterion_9() -> Check {
    let a = control_corrupted_fixture();
    ensure(a.caught && a.witness_rechecked, || format!("corrupted fixture: {}", a.detail))?;
    let b = control_wrong_cell(&VerifyConfig::default());
    ensure(b.caught && b.witness_rechecked, || format!("wrong cell: {}", b.detail))?;
    Ok(format!("{} and {} both caught with rechecked witnesses", a.name, b.name))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("la1 conjugate, biconjugate and subgradient box", criterion_1),
        ("conjugate of an integrally convex indicator", criterion_2),
        ("scaling an integrally convex function", criterion_3),
        ("Minkowski holes", criterion_4),
        ("closure tables", criterion_5),
        ("characterisations and inclusions", criterion_6),
        ("integral biconjugacy", criterion_7),
        ("conjugacy class mapping", criterion_8),
        ("negative controls", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let r = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match r {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
