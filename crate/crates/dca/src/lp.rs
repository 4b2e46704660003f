//! Exact dense simplex over rationals.
//!
//! Two-phase tableau method with Bland's rule, so it never cycles and the
//! pivot sequence (hence basis and solution) depends only on the instance.
//! Problems here are tiny: a few hundred rows at most.

use crate::error::{same_dim, DcaError, Result};
use crate::lattice::{HalfPoint, Point};
use crate::model::{Ext, LatticeFunction, LatticeSet};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub lower: Option<Rat>,
    pub upper: Option<Rat>,
}

impl Bound {
    pub fn nonneg() -> Bound {
        Bound { lower: Some(Rat::zero()), upper: None }
    }

    pub fn free() -> Bound {
        Bound { lower: None, upper: None }
    }

    pub fn range(lo: Rat, hi: Rat) -> Bound {
        Bound { lower: Some(lo), upper: Some(hi) }
    }
}

/// minimize objective·x subject to rows, senses, rhs and variable bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub objective: Vec<Rat>,
    pub rows: Vec<Vec<Rat>>,
    pub senses: Vec<Sense>,
    pub rhs: Vec<Rat>,
    pub bounds: Vec<Bound>,
}

impl LpInstance {
    /// No constraints yet; every variable nonnegative.
    pub fn new(objective: Vec<Rat>) -> LpInstance {
        let n = objective.len();
        LpInstance { objective, rows: Vec::new(), senses: Vec::new(), rhs: Vec::new(), bounds: vec![Bound::nonneg(); n] }
    }

    pub fn vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, row: Vec<Rat>, sense: Sense, rhs: Rat) {
        self.rows.push(row);
        self.senses.push(sense);
        self.rhs.push(rhs);
    }

    /// True if x satisfies every row and bound exactly.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        if x.len() != self.vars() {
            return false;
        }
        for (i, b) in self.bounds.iter().enumerate() {
            if b.lower.as_ref().is_some_and(|l| &x[i] < l) || b.upper.as_ref().is_some_and(|u| &x[i] > u) {
                return false;
            }
        }
        self.rows.iter().zip(&self.senses).zip(&self.rhs).all(|((row, s), b)| {
            let lhs: Rat = row.iter().zip(x).map(|(a, v)| a * v).sum();
            match s {
                Sense::Le => &lhs <= b,
                Sense::Eq => &lhs == b,
                Sense::Ge => &lhs >= b,
            }
        })
    }

    pub fn objective_at(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, x: Vec<Rat>, basis: Vec<usize> },
    /// `farkas` lives on the standard-form rows: yᵀA ≤ 0 and yᵀb > 0.
    Infeasible { farkas: Vec<Rat> },
    /// A feasible point and a direction along which the objective decreases forever.
    Unbounded { x: Vec<Rat>, ray: Vec<Rat> },
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
enum Col {
    /// original = shift + x'
    Up(usize, Rat),
    /// original = shift − x'
    Down(usize, Rat),
    /// negative part of a free variable
    FreeNeg(usize),
    Slack,
    Artificial,
}

struct Tableau {
    t: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    d: Vec<Rat>,
    obj: Rat,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        if p != Rat::one() {
            let inv = p.recip();
            for v in self.t[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
            self.rhs[r] = &self.rhs[r] * &inv;
        }
        let prow = self.t[r].clone();
        let prhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.t.len() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let m = self.t[i][c].clone();
            for &j in &nz {
                let v = &self.t[i][j] - &m * &prow[j];
                self.t[i][j] = v;
            }
            self.rhs[i] = &self.rhs[i] - &m * &prhs;
        }
        if !self.d[c].is_zero() {
            let m = self.d[c].clone();
            for &j in &nz {
                self.d[j] = &self.d[j] - &m * &prow[j];
            }
            self.obj = &self.obj - &m * &prhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule until optimal; returns the unbounded column if any.
    fn run(&mut self, allowed: &[bool]) -> Option<usize> {
        loop {
            let c = (0..self.d.len()).find(|&j| allowed[j] && self.d[j].is_negative())?;
            let mut best: Option<(usize, Rat)> = None;
            for i in 0..self.t.len() {
                if !self.t[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.t[i][c];
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn reset_costs(&mut self, cost: &[Rat]) {
        self.d = cost.to_vec();
        self.obj = Rat::zero();
        for i in 0..self.t.len() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.d.len() {
                if !self.t[i][j].is_zero() {
                    self.d[j] = &self.d[j] - cb * &self.t[i][j];
                }
            }
            self.obj = &self.obj - cb * &self.rhs[i];
        }
    }

    fn primal(&self) -> Vec<Rat> {
        let mut x = vec![Rat::zero(); self.d.len()];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.rhs[i].clone();
        }
        x
    }
}

pub fn solve(lp: &LpInstance) -> Result<LpOutcome> {
    let n = lp.vars();
    same_dim(n, lp.bounds.len())?;
    same_dim(lp.rows.len(), lp.senses.len())?;
    same_dim(lp.rows.len(), lp.rhs.len())?;
    for row in &lp.rows {
        same_dim(n, row.len())?;
    }

    // Substitute bounds: every standard column is nonnegative.
    let mut cols: Vec<Col> = Vec::new();
    let mut first_col = vec![0usize; n];
    let mut extra_rows: Vec<(usize, Rat)> = Vec::new();
    for (i, b) in lp.bounds.iter().enumerate() {
        first_col[i] = cols.len();
        match (&b.lower, &b.upper) {
            (Some(l), Some(u)) => {
                if l > u {
                    return Err(DcaError::InvalidArgument(format!("variable {i}: lower bound exceeds upper")));
                }
                cols.push(Col::Up(i, l.clone()));
                extra_rows.push((cols.len() - 1, u - l));
            }
            (Some(l), None) => cols.push(Col::Up(i, l.clone())),
            (None, Some(u)) => cols.push(Col::Down(i, u.clone())),
            (None, None) => {
                cols.push(Col::Up(i, Rat::zero()));
                cols.push(Col::FreeNeg(i));
            }
        }
    }
    let ns = cols.len();
    let coef = |c: &Col, a: &Rat| -> Rat {
        match c {
            Col::Up(..) => a.clone(),
            Col::Down(..) | Col::FreeNeg(_) => -a,
            _ => Rat::zero(),
        }
    };
    let shift_of = |i: usize| -> Rat {
        match &cols[first_col[i]] {
            Col::Up(_, s) | Col::Down(_, s) => s.clone(),
            _ => Rat::zero(),
        }
    };

    // Rows in structural columns, before slacks.
    let mut rows: Vec<(Vec<Rat>, Sense, Rat)> = Vec::new();
    for ((row, s), b) in lp.rows.iter().zip(&lp.senses).zip(&lp.rhs) {
        let mut r = vec![Rat::zero(); ns];
        let mut rhs = b.clone();
        for (i, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            rhs = rhs - a * shift_of(i);
            let c0 = first_col[i];
            r[c0] = coef(&cols[c0], a);
            if let Some(Col::FreeNeg(_)) = cols.get(c0 + 1) {
                r[c0 + 1] = -a;
            }
        }
        rows.push((r, *s, rhs));
    }
    for (c, cap) in extra_rows {
        let mut r = vec![Rat::zero(); ns];
        r[c] = Rat::one();
        rows.push((r, Sense::Le, cap));
    }
    let m = rows.len();
    let n_slack = rows.iter().filter(|(_, s, _)| *s != Sense::Eq).count();
    let total = ns + n_slack + m;
    let mut t = vec![vec![Rat::zero(); total]; m];
    let mut rhs = vec![Rat::zero(); m];
    let mut basis = vec![0usize; m];
    let mut init_col = vec![0usize; m];
    let mut row_sign = vec![Rat::one(); m];
    let mut col_kind = cols.clone();
    col_kind.extend(std::iter::repeat_n(Col::Slack, n_slack));
    col_kind.extend(std::iter::repeat_n(Col::Artificial, m));
    let mut slack = ns;
    let mut cost1 = vec![Rat::zero(); total];
    for (i, (r, s, b)) in rows.into_iter().enumerate() {
        t[i][..ns].clone_from_slice(&r);
        let mut slack_col = None;
        match s {
            Sense::Le => {
                t[i][slack] = Rat::one();
                slack_col = Some(slack);
                slack += 1;
            }
            Sense::Ge => {
                t[i][slack] = -Rat::one();
                slack_col = Some(slack);
                slack += 1;
            }
            Sense::Eq => {}
        }
        rhs[i] = b;
        if rhs[i].is_negative() {
            for v in t[i].iter_mut() {
                *v = -&*v;
            }
            rhs[i] = -&rhs[i];
            row_sign[i] = -Rat::one();
        }
        let art = ns + n_slack + i;
        t[i][art] = Rat::one();
        match slack_col {
            Some(sc) if t[i][sc] == Rat::one() => {
                basis[i] = sc;
                init_col[i] = sc;
            }
            _ => {
                basis[i] = art;
                init_col[i] = art;
                cost1[art] = Rat::one();
            }
        }
    }

    let mut tab = Tableau { t, rhs, basis, d: vec![], obj: Rat::zero() };
    tab.reset_costs(&cost1);
    let all = vec![true; total];
    tab.run(&all);
    // obj holds −(phase-one value)
    if tab.obj.is_negative() {
        let farkas = (0..m).map(|i| &row_sign[i] * (&cost1[init_col[i]] - &tab.d[init_col[i]])).collect();
        return Ok(LpOutcome::Infeasible { farkas });
    }

    // Drive artificials out of the basis; rows where that is impossible are redundant.
    let is_art = |j: usize| j >= ns + n_slack;
    let mut i = 0;
    while i < tab.t.len() {
        if is_art(tab.basis[i]) {
            if let Some(c) = (0..ns + n_slack).find(|&j| !tab.t[i][j].is_zero()) {
                tab.pivot(i, c);
            } else {
                tab.t.remove(i);
                tab.rhs.remove(i);
                tab.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let mut cost2 = vec![Rat::zero(); total];
    let mut offset = Rat::zero();
    for (i, c) in lp.objective.iter().enumerate() {
        offset = offset + c * shift_of(i);
        let c0 = first_col[i];
        cost2[c0] = coef(&cols[c0], c);
        if let Some(Col::FreeNeg(_)) = cols.get(c0 + 1) {
            cost2[c0 + 1] = -c;
        }
    }
    tab.reset_costs(&cost2);
    let allowed: Vec<bool> = (0..total).map(|j| !is_art(j)).collect();
    let unbounded = tab.run(&allowed);

    let xs = tab.primal();
    let recover = |xs: &[Rat], with_shift: bool| -> Vec<Rat> {
        let mut x = vec![Rat::zero(); n];
        for (j, c) in col_kind.iter().enumerate().take(ns) {
            match c {
                Col::Up(i, s) => x[*i] = &x[*i] + &xs[j] + if with_shift { s.clone() } else { Rat::zero() },
                Col::Down(i, s) => x[*i] = &x[*i] - &xs[j] + if with_shift { s.clone() } else { Rat::zero() },
                Col::FreeNeg(i) => x[*i] = &x[*i] - &xs[j],
                _ => {}
            }
        }
        x
    };
    let x = recover(&xs, true);
    match unbounded {
        Some(c) => {
            // Direction: increase column c, basic variables move by −t[i][c].
            let mut dir = vec![Rat::zero(); total];
            dir[c] = Rat::one();
            for (i, &b) in tab.basis.iter().enumerate() {
                dir[b] = -&tab.t[i][c];
            }
            Ok(LpOutcome::Unbounded { x, ray: recover(&dir, false) })
        }
        None => {
            let value = lp.objective_at(&x);
            debug_assert_eq!(value, &offset - &tab.obj);
            Ok(LpOutcome::Optimal { value, x, basis: tab.basis.clone() })
        }
    }
}

/// Is z in the convex hull of the points? `z` may be any rational point.
pub fn hull_contains(points: &[Point], z: &[Rat]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = z.len();
    if points.iter().any(|p| p.len() != n) {
        return false;
    }
    if let Some(zi) = z.iter().map(Rat::to_i64).collect::<Option<Vec<i64>>>() {
        if points.contains(&zi) {
            return true;
        }
    }
    // a coordinate outside the points' range settles it without an LP
    for i in 0..n {
        let lo = points.iter().map(|p| p[i]).min().unwrap();
        let hi = points.iter().map(|p| p[i]).max().unwrap();
        if z[i] < Rat::int(lo) || z[i] > Rat::int(hi) {
            return false;
        }
    }
    let mut lp = LpInstance::new(vec![Rat::zero(); points.len()]);
    lp.push(vec![Rat::one(); points.len()], Sense::Eq, Rat::one());
    for i in 0..n {
        lp.push(points.iter().map(|p| Rat::int(p[i])).collect(), Sense::Eq, z[i].clone());
    }
    solve(&lp).map(|o| o.is_optimal()).unwrap_or(false)
}

pub fn hull_membership(s: &LatticeSet, z: &[Rat]) -> Result<bool> {
    same_dim(s.dim(), z.len())?;
    Ok(hull_contains(&s.to_vec(), z))
}

/// min Σ λ_y v_y subject to Σ λ_y y = z, Σ λ_y = 1, λ ≥ 0; +∞ when infeasible.
///
/// Only coordinates listed in `active` get a row; the caller guarantees the
/// others agree with z at every point.
pub fn envelope_value(points: &[(Point, Rat)], z: &[Rat], active: &[usize]) -> Ext {
    if points.is_empty() {
        return Ext::Inf;
    }
    let mut lp = LpInstance::new(points.iter().map(|(_, v)| v.clone()).collect());
    lp.push(vec![Rat::one(); points.len()], Sense::Eq, Rat::one());
    for &i in active {
        lp.push(points.iter().map(|(p, _)| Rat::int(p[i])).collect(), Sense::Eq, z[i].clone());
    }
    match solve(&lp) {
        Ok(LpOutcome::Optimal { value, .. }) => Ext::Fin(value),
        _ => Ext::Inf,
    }
}

/// The local convex extension f̃(z) at a point of ½ℤⁿ.
pub fn local_extension_value(f: &LatticeFunction, z: &HalfPoint) -> Result<Ext> {
    same_dim(f.dim(), z.dim())?;
    Ok(local_extension_with(|y| f.get(y).cloned(), z))
}

/// Same as `local_extension_value`, reading values through a closure.
pub fn local_extension_with(get: impl Fn(&[i64]) -> Option<Rat>, z: &HalfPoint) -> Ext {
    let half = z.half_coords();
    match half.len() {
        0 => Ext::from_opt(get(&z.to_point().expect("integral")).as_ref()),
        1 => {
            let nb = z.neighborhood();
            match (get(&nb[0]), get(&nb[1])) {
                (Some(a), Some(b)) => Ext::Fin((a + b) * Rat::half()),
                _ => Ext::Inf,
            }
        }
        _ => {
            let pts: Vec<(Point, Rat)> = z.neighborhood().into_iter().filter_map(|y| get(&y).map(|v| (y, v))).collect();
            if pts.len() < 2 {
                return Ext::Inf;
            }
            envelope_value(&pts, &z.coords(), &half)
        }
    }
}

/// Whether z lies in conv(S ∩ N(z)).
pub fn local_hull_contains(contains: impl Fn(&[i64]) -> bool, z: &HalfPoint) -> bool {
    let half = z.half_coords();
    let pts: Vec<Point> = z.neighborhood().into_iter().filter(|y| contains(y)).collect();
    match half.len() {
        0 => !pts.is_empty(),
        1 => pts.len() == 2,
        k if pts.len() == 1 << k => true,
        _ => {
            if pts.len() < 2 {
                return false;
            }
            let zero: Vec<(Point, Rat)> = pts.into_iter().map(|p| (p, Rat::zero())).collect();
            envelope_value(&zero, &z.coords(), &half).is_finite()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rat {
        Rat::int(v)
    }

    #[test]
    fn midpoint_feasibility() {
        let pts = vec![vec![1, 0], vec![0, 1]];
        assert!(hull_contains(&pts, &[Rat::half(), Rat::half()]));
        assert!(!hull_contains(&pts, &[Rat::half(), Rat::zero()]));
    }

    #[test]
    fn infeasible_system() {
        let mut lp = LpInstance::new(vec![r(0)]);
        lp.bounds[0] = Bound::free();
        lp.push(vec![r(1)], Sense::Le, r(0));
        lp.push(vec![r(1)], Sense::Ge, r(1));
        let LpOutcome::Infeasible { farkas } = solve(&lp).unwrap() else { panic!() };
        assert_eq!(farkas.len(), 2);
    }

    #[test]
    fn hole_in_sum() {
        let pts = vec![vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 2]];
        assert!(hull_contains(&pts, &[r(1), r(1)]));
    }

    #[test]
    fn bounded_and_unbounded() {
        // max x + y with x + 2y ≤ 4, 3x + y ≤ 6
        let mut lp = LpInstance::new(vec![r(-1), r(-1)]);
        lp.push(vec![r(1), r(2)], Sense::Le, r(4));
        lp.push(vec![r(3), r(1)], Sense::Le, r(6));
        let LpOutcome::Optimal { value, x, .. } = solve(&lp).unwrap() else { panic!() };
        assert_eq!(value, Rat::frac(-14, 5));
        assert!(lp.is_feasible(&x));

        let mut lp = LpInstance::new(vec![r(-1), r(0)]);
        lp.bounds[1] = Bound::range(r(-1), r(1));
        lp.push(vec![r(1), r(-1)], Sense::Ge, r(-3));
        let LpOutcome::Unbounded { x, ray } = solve(&lp).unwrap() else { panic!() };
        assert!(lp.is_feasible(&x));
        assert!(lp.objective_at(&ray).is_negative());
    }

    #[test]
    fn shifted_and_free_bounds() {
        // min x subject to x ≥ −5 (free var) and x ≤ 7 upper-only var y with x + y = 2
        let mut lp = LpInstance::new(vec![r(1), r(0)]);
        lp.bounds[0] = Bound::free();
        lp.bounds[1] = Bound { lower: None, upper: Some(r(7)) };
        lp.push(vec![r(1), r(1)], Sense::Eq, r(2));
        lp.push(vec![r(1), r(0)], Sense::Ge, r(-5));
        let LpOutcome::Optimal { value, x, .. } = solve(&lp).unwrap() else { panic!() };
        assert_eq!(value, r(-5));
        assert_eq!(x, vec![r(-5), r(7)]);
    }
}
