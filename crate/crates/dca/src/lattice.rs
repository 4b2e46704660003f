//! Integer-vector primitives.
//!
//! Points are plain `Vec<i64>`; all functions here are pure. The checked
//! variants return `DimensionMismatch` on mixed lengths, the `*_raw` helpers
//! used in hot loops assume matching lengths.

use crate::error::{same_dim, Result};
use crate::rat::Rat;

pub type Point = Vec<i64>;

pub fn check_pair(x: &[i64], y: &[i64]) -> Result<()> {
    same_dim(x.len(), y.len())
}

pub fn midpoint_ceil(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(mid_ceil(x, y))
}

pub fn midpoint_floor(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(mid_floor(x, y))
}

pub(crate) fn mid_ceil(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| -((-(a + b)).div_euclid(2))).collect()
}

pub(crate) fn mid_floor(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| (a + b).div_euclid(2)).collect()
}

pub fn join(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(join_raw(x, y))
}

pub fn meet(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(meet_raw(x, y))
}

pub(crate) fn join_raw(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| *a.max(b)).collect()
}

pub(crate) fn meet_raw(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| *a.min(b)).collect()
}

/// Indices (0-based) with a positive entry.
pub fn supp_plus(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] > 0).collect()
}

pub fn supp_minus(v: &[i64]) -> Vec<usize> {
    (0..v.len()).filter(|&i| v[i] < 0).collect()
}

pub fn sub(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(sub_raw(x, y))
}

pub fn add(x: &[i64], y: &[i64]) -> Result<Point> {
    check_pair(x, y)?;
    Ok(add_raw(x, y))
}

pub(crate) fn sub_raw(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub(crate) fn add_raw(x: &[i64], y: &[i64]) -> Point {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn cheb_dist(x: &[i64], y: &[i64]) -> Result<i64> {
    check_pair(x, y)?;
    Ok(cheb_raw(x, y))
}

pub(crate) fn cheb_raw(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).max().unwrap_or(0)
}

pub fn l1_dist(x: &[i64], y: &[i64]) -> Result<i64> {
    check_pair(x, y)?;
    Ok(l1_raw(x, y))
}

pub(crate) fn l1_raw(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).sum()
}

pub fn inner(p: &[Rat], x: &[i64]) -> Result<Rat> {
    same_dim(p.len(), x.len())?;
    Ok(p.iter().zip(x).map(|(a, b)| a * Rat::int(*b)).sum())
}

pub fn inner_int(p: &[i64], x: &[i64]) -> Result<i128> {
    check_pair(p, x)?;
    Ok(p.iter().zip(x).map(|(a, b)| *a as i128 * *b as i128).sum())
}

/// x(A) for an index set A (0-based).
pub fn comp_sum(x: &[i64], a: &[usize]) -> i64 {
    a.iter().map(|&i| x[i]).sum()
}

pub fn total(x: &[i64]) -> i64 {
    x.iter().sum()
}

pub fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Characteristic vector of A (0-based indices).
pub fn char_vec(n: usize, a: &[usize]) -> Point {
    let mut e = vec![0; n];
    for &i in a {
        e[i] = 1;
    }
    e
}

/// A point with coordinates in ½ℤ, stored doubled so everything stays integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPoint {
    doubled: Vec<i64>,
}

impl HalfPoint {
    pub fn from_doubled(doubled: Vec<i64>) -> HalfPoint {
        HalfPoint { doubled }
    }

    pub fn from_point(x: &[i64]) -> HalfPoint {
        HalfPoint { doubled: x.iter().map(|v| 2 * v).collect() }
    }

    /// (x + y) / 2.
    pub fn midpoint(x: &[i64], y: &[i64]) -> Result<HalfPoint> {
        check_pair(x, y)?;
        Ok(HalfPoint { doubled: add_raw(x, y) })
    }

    /// Rejects coordinates whose denominator is not 1 or 2.
    pub fn from_rats(z: &[Rat]) -> Option<HalfPoint> {
        let mut doubled = Vec::with_capacity(z.len());
        for c in z {
            let d = (c * Rat::int(2)).to_i64()?;
            doubled.push(d);
        }
        Some(HalfPoint { doubled })
    }

    pub fn dim(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn coords(&self) -> Vec<Rat> {
        self.doubled.iter().map(|&d| Rat::frac(d, 2)).collect()
    }

    pub fn half_coords(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.doubled[i].rem_euclid(2) == 1).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d.rem_euclid(2) == 0)
    }

    pub fn to_point(&self) -> Option<Point> {
        if self.is_integral() {
            Some(self.doubled.iter().map(|d| d / 2).collect())
        } else {
            None
        }
    }

    /// N(z): integer points w with |zᵢ − wᵢ| < 1, in lexicographic order.
    pub fn neighborhood(&self) -> Vec<Point> {
        let base: Point = self.doubled.iter().map(|d| d.div_euclid(2)).collect();
        let half = self.half_coords();
        let k = half.len();
        let mut out = Vec::with_capacity(1 << k);
        // bit (k-1-j) of the mask drives half[j], so the mask order is lexicographic
        for mask in 0..(1u32 << k) {
            let mut w = base.clone();
            for (j, &i) in half.iter().enumerate() {
                if mask >> (k - 1 - j) & 1 == 1 {
                    w[i] += 1;
                }
            }
            out.push(w);
        }
        out
    }
}

impl std::fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn integral_neighborhood(z: &HalfPoint) -> Vec<Point> {
    z.neighborhood()
}

/// D p with (Dp)₁ = p₁ and (Dp)ᵢ = pᵢ − pᵢ₋₁.
pub fn d_apply(p: &[i64]) -> Point {
    (0..p.len()).map(|i| if i == 0 { p[0] } else { p[i] - p[i - 1] }).collect()
}

/// D⁻¹ x: prefix sums.
pub fn d_inverse_apply(x: &[i64]) -> Point {
    let mut acc = 0;
    x.iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect()
}

/// Dᵀ p with (Dᵀp)ᵢ = pᵢ − pᵢ₊₁ and (Dᵀp)ₙ = pₙ.
pub fn d_transpose_apply(p: &[i64]) -> Point {
    let n = p.len();
    (0..n).map(|i| if i + 1 < n { p[i] - p[i + 1] } else { p[i] }).collect()
}

/// (Dᵀ)⁻¹ x: suffix sums.
pub fn d_transpose_inverse_apply(x: &[i64]) -> Point {
    let mut out = vec![0; x.len()];
    let mut acc = 0;
    for i in (0..x.len()).rev() {
        acc += x[i];
        out[i] = acc;
    }
    out
}

/// The bidiagonal matrix D as explicit rows.
pub fn d_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            let mut row = vec![0; n];
            row[i] = 1;
            if i > 0 {
                row[i - 1] = -1;
            }
            row
        })
        .collect()
}

pub fn d_inverse_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(j <= i)).collect()).collect()
}

/// The n+1 directions −e₁, e₁−e₂, …, eₙ₋₁−eₙ, eₙ.
pub fn multimodular_directions(n: usize) -> Vec<Point> {
    let mut out = Vec::with_capacity(n + 1);
    let mut first = vec![0; n];
    first[0] = -1;
    out.push(first);
    for i in 0..n - 1 {
        let mut d = vec![0; n];
        d[i] = 1;
        d[i + 1] = -1;
        out.push(d);
    }
    out.push(unit(n, n - 1));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoints() {
        assert_eq!(mid_ceil(&[1, 1, 0], &[0, 1, 1]), vec![1, 1, 1]);
        assert_eq!(mid_floor(&[1, 1, 0], &[0, 1, 1]), vec![0, 1, 0]);
        assert_eq!(mid_ceil(&[0, 0, 1], &[2, 1, 0]), vec![1, 1, 1]);
        assert_eq!(mid_floor(&[0, 0, 1], &[2, 1, 0]), vec![1, 0, 0]);
        assert_eq!(mid_floor(&[-1], &[0]), vec![-1]);
        assert_eq!(mid_ceil(&[-1], &[0]), vec![0]);
        assert!(midpoint_ceil(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn supports() {
        let v = sub_raw(&[1, 0, 1], &[0, 1, 0]);
        assert_eq!(supp_plus(&v), vec![0, 2]);
        assert_eq!(supp_minus(&v), vec![1]);
        assert_eq!(cheb_raw(&[0, 0, 0], &[2, 1, 1]), 2);
    }

    #[test]
    fn neighborhood_order() {
        let z = HalfPoint::from_doubled(vec![2, 1, 1]);
        assert_eq!(
            z.neighborhood(),
            vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]]
        );
        let w = HalfPoint::from_doubled(vec![-1]);
        assert_eq!(w.neighborhood(), vec![vec![-1], vec![0]]);
    }

    #[test]
    fn bidiagonal() {
        assert_eq!(d_inverse_apply(&[0, 1, -1]), vec![0, 1, 0]);
        assert_eq!(d_inverse_apply(&[1, 1, -1]), vec![1, 2, 1]);
        assert_eq!(d_apply(&d_inverse_apply(&[3, -1, 4])), vec![3, -1, 4]);
        let dirs = multimodular_directions(4);
        assert_eq!(dirs.len(), 5);
        let s = dirs.iter().fold(vec![0; 4], |a, d| add_raw(&a, d));
        assert_eq!(s, vec![0; 4]);
    }
}
