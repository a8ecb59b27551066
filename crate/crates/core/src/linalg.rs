//! Exact linear algebra: fraction-free elimination over integral domains,
//! Gaussian elimination over Q and Smith normal form over Z.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rep_ring::LaurentPoly;

/// An integral domain with exact division.
pub trait ExactDomain: Clone + PartialEq {
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// Pivot cost; smaller is preferred.
    fn size(&self) -> usize;
}

impl ExactDomain for LaurentPoly {
    fn zero_value() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero_value(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        LaurentPoly::exact_div(self, d)
    }
    fn size(&self) -> usize {
        self.term_count()
    }
}

impl ExactDomain for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
    fn size(&self) -> usize {
        self.bits() as usize
    }
}

/// Result of fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Elimination<T> {
    pub rank: usize,
    /// Determinant, for square matrices only.
    pub determinant: Option<T>,
}

/// Bareiss elimination with row pivoting by smallest `size`.
pub fn bareiss<T: ExactDomain>(matrix: &[Vec<T>], cols: usize) -> Result<Elimination<T>> {
    let mut m: Vec<Vec<T>> = matrix.to_vec();
    let n = m.len();
    let mut prev: Option<T> = None;
    let mut r = 0;
    let mut negate = false;
    for col in 0..cols {
        if r == n {
            break;
        }
        let pivot = (r..n)
            .filter(|&i| !m[i][col].is_zero_value())
            .min_by_key(|&i| m[i][col].size());
        let Some(p) = pivot else { continue };
        if p != r {
            m.swap(p, r);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let prow = &top[r];
        for row in bottom.iter_mut() {
            for j in col + 1..cols {
                let num = prow[col].mul(&row[j]).sub(&row[col].mul(&prow[j]));
                row[j] = match &prev {
                    None => num,
                    Some(pv) => num
                        .exact_div(pv)
                        .ok_or_else(|| Error::invariant("fraction-free elimination lost exactness"))?,
                };
            }
            row[col] = T::zero_value();
        }
        prev = Some(m[r][col].clone());
        r += 1;
    }
    let determinant = if n == cols {
        Some(if r < n {
            T::zero_value()
        } else {
            let d = m[n - 1][n - 1].clone();
            if negate {
                d.neg()
            } else {
                d
            }
        })
    } else {
        None
    };
    Ok(Elimination { rank: r, determinant })
}

/// Rank over Q.
pub fn rational_rank(matrix: &[Vec<BigRational>], cols: usize) -> usize {
    let mut m = matrix.to_vec();
    let n = m.len();
    let mut r = 0;
    for col in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(p, r);
        let pivot = m[r][col].clone();
        let prow = m[r].clone();
        for row in m.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot;
            for j in col..cols {
                let delta = &f * &prow[j];
                row[j] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// The unique solution of `Σ_k x_k columns[k] = target` over Q, if any.
pub fn solve_rational(columns: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = target.len();
    let k = columns.len();
    let mut m: Vec<Vec<BigRational>> =
        (0..n).map(|i| columns.iter().map(|c| c[i].clone()).chain(std::iter::once(target[i].clone())).collect()).collect();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][col].is_zero()) else { return None };
        m.swap(p, r);
        let pivot = m[r][col].clone();
        for j in col..=k {
            m[r][j] = &m[r][j] / &pivot;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for j in col..=k {
                    row[j] -= &f * &prow[j];
                }
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|c| m[c][k].clone()).collect())
}

/// Nonzero invariant factors (positive, each dividing the next).
pub fn smith_invariants(matrix: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let mut a = matrix.to_vec();
    let n = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < n.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t, n, cols) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..n {
                if !a[i][t].is_zero() {
                    let q = &a[i][t] / &a[t][t];
                    for j in t..cols {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = &a[t][j] / &a[t][t];
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                // bring the smallest leftover of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..n {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn smallest_nonzero(a: &[Vec<BigInt>], t: usize, n: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().take(n).skip(t) {
        for (j, v) in row.iter().enumerate().take(cols).skip(t) {
            if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// A finitely generated abelian group `Z^r ⊕ ⊕ Z/d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for IntegerGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Dense integer matrix with explicit shape (needed for zero-row matrices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &self.entries[i][k] * &other.entries[k][j];
                    out.entries[i][j] += v;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn invariants(&self) -> Vec<BigInt> {
        smith_invariants(&self.entries, self.cols)
    }
}

/// Cohomology of `C^0 → C^1 → …` where `maps[n]` has shape `dims[n+1] × dims[n]`.
pub fn cochain_cohomology(dims: &[usize], maps: &[IntegerMatrix]) -> Vec<IntegerGroup> {
    let invariants: Vec<Vec<BigInt>> = maps.iter().map(IntegerMatrix::invariants).collect();
    (0..dims.len())
        .map(|n| {
            let out_rank = invariants.get(n).map_or(0, Vec::len);
            let (in_rank, torsion) = match n.checked_sub(1).and_then(|k| invariants.get(k)) {
                Some(inv) => (inv.len(), inv.iter().filter(|d| !d.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            IntegerGroup { free_rank: dims[n] - out_rank - in_rank, torsion }
        })
        .collect()
}

/// Homology of `… → C_1 → C_0` where `boundaries[n]` maps `C_n → C_{n-1}`
/// (index 0 unused, may be an empty matrix).
pub fn chain_homology(dims: &[usize], boundaries: &[IntegerMatrix]) -> Vec<IntegerGroup> {
    let invariants: Vec<Vec<BigInt>> = boundaries.iter().map(IntegerMatrix::invariants).collect();
    (0..dims.len())
        .map(|n| {
            let out_rank = if n == 0 { 0 } else { invariants.get(n).map_or(0, Vec::len) };
            let (in_rank, torsion) = match invariants.get(n + 1) {
                Some(inv) => (inv.len(), inv.iter().filter(|d| !d.is_one()).cloned().collect()),
                None => (0, Vec::new()),
            };
            IntegerGroup { free_rank: dims[n] - out_rank - in_rank, torsion }
        })
        .collect()
}
