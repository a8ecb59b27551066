#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use weylrank::root_system::{Weight, WeylGroup};
use weylrank::rep_ring::LaurentPoly;

/// `x1^a x2^b x3^c` in fundamental-weight coordinates of A2, using
/// x1 = ω1, x2 = ω2 − ω1, x3 = −ω2.
pub fn x_monomial(a: i64, b: i64, c: i64) -> Weight {
    Weight(vec![a - b, b - c])
}

pub fn poly(weights: &[Weight]) -> LaurentPoly {
    weights.iter().cloned().map(LaurentPoly::monomial).sum()
}

/// Determinant by Gaussian elimination over Q.
pub fn det_oracle(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else { return BigInt::zero() };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col].clone();
        for i in col + 1..n {
            let f = &a[i][col] / &a[col][col];
            for j in col..n {
                let d = &f * &a[col][j];
                a[i][j] -= d;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Rank over Q by elimination on a copy.
pub fn rank_oracle(m: &[Vec<BigInt>], cols: usize) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(p, rank);
        for i in 0..a.len() {
            if i != rank && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[rank][col];
                for j in 0..cols {
                    let d = &f * &a[rank][j];
                    a[i][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors > 0 from gcds of k×k minors.
pub fn invariant_factors_oracle(m: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut divisors = vec![BigInt::one()];
    for k in 1..=rows.min(cols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&det_oracle(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| (&w[1] / &w[0]).abs()).collect()
}

/// `p_v` recomputed from the definition.
pub fn p_weight_oracle(group: &WeylGroup, v: weylrank::WeylElement) -> Weight {
    let d = group.datum();
    let vinv = group.inv(v);
    let mut p = Weight::zero(d.lattice_rank);
    for (i, a) in d.simple_roots.iter().enumerate() {
        let img = group.act(vinv, a).unwrap();
        if d.positive_roots.contains(&img.neg()) {
            p = p.add(&d.fundamental_weights[i]);
        }
    }
    p
}
