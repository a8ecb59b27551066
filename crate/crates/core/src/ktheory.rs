//! Rank formulas for equivariant K-theory and chamber counts of central
//! hyperplane arrangements.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rational_rank;
use crate::root_system::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisRing {
    Integral,
    Rational,
}

impl fmt::Display for BasisRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisRing::Integral => "integral",
            BasisRing::Rational => "rational",
        })
    }
}

/// Ranks of `K⁰` and `K¹` plus an optional parity table of module names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTheoryReport {
    pub even_rank: usize,
    pub odd_rank: usize,
    /// `[even, odd]` module descriptions, when meaningful.
    pub graded_table: Option<[String; 2]>,
    pub basis_ring: BasisRing,
    pub note: Option<String>,
}

impl KTheoryReport {
    pub fn total(&self) -> usize {
        self.even_rank + self.odd_rank
    }

    fn from_ranks(even_rank: usize, odd_rank: usize, basis_ring: BasisRing, ring: &str) -> Self {
        KTheoryReport {
            even_rank,
            odd_rank,
            graded_table: Some([module_name(ring, even_rank), module_name(ring, odd_rank)]),
            basis_ring,
            note: None,
        }
    }
}

fn module_name(ring: &str, rank: usize) -> String {
    match rank {
        0 => "0".into(),
        1 => ring.into(),
        k => format!("{ring}^{k}"),
    }
}

/// Even and odd Betti sums of the fixed-point data.
pub fn kg_ranks(betti: &[usize]) -> KTheoryReport {
    let even = betti.iter().step_by(2).sum();
    let odd = betti.iter().skip(1).step_by(2).sum();
    let mut report = KTheoryReport::from_ranks(even, odd, BasisRing::Integral, "R(G)");
    report.graded_table = None;
    report.note = Some("parity split derived from collapse of the spectral sequence".into());
    report
}

/// Tables for the one-point compactification (reduced) and the unit sphere
/// of the adjoint representation, in that order.
pub fn adjoint_sphere_table(r: usize) -> Result<(KTheoryReport, KTheoryReport)> {
    if r == 0 {
        return Err(Error::Invalid("rank must be at least 1".into()));
    }
    let reduced = if r % 2 == 0 {
        KTheoryReport::from_ranks(1, 0, BasisRing::Integral, "R(G)")
    } else {
        KTheoryReport::from_ranks(0, 1, BasisRing::Integral, "R(G)")
    };
    let sphere = if r % 2 == 0 {
        KTheoryReport::from_ranks(1, 1, BasisRing::Integral, "R(G)")
    } else {
        KTheoryReport::from_ranks(2, 0, BasisRing::Integral, "R(G)")
    };
    Ok((reduced, sphere))
}

/// `2^{nr} · Σ betti`.
pub fn inertia_rank(n: u32, r: u32, betti: &[usize]) -> Result<u128> {
    let total: u128 = betti.iter().map(|&b| b as u128).sum();
    let exp = n.checked_mul(r).filter(|&e| e < 128).ok_or_else(|| Error::Invalid("2^(nr) overflows".into()))?;
    total.checked_mul(1u128 << exp).ok_or_else(|| Error::Invalid("rank overflows".into()))
}

/// Reduced rational table: rank one in degrees `≡ rn (mod 2)`.
pub fn commuting_variety_table(n: usize, r: usize) -> Result<KTheoryReport> {
    if n == 0 || r == 0 {
        return Err(Error::Invalid("n and r must be at least 1".into()));
    }
    let (even, odd) = if (r * n) % 2 == 0 { (1, 0) } else { (0, 1) };
    Ok(KTheoryReport::from_ranks(even, odd, BasisRing::Rational, "R(G)⊗Q"))
}

/// True when every factor is `SU`, `U` or `Sp`.
pub fn in_family_p<S: AsRef<str>>(factors: &[S]) -> bool {
    factors.iter().all(|f| {
        let tag: String = f.as_ref().chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        matches!(tag.as_str(), "SU" | "U" | "Sp")
    })
}

/// Splits `SU3xSp2xU1` into factor names; the empty string is the trivial group.
pub fn parse_group_descriptor(text: &str) -> Vec<String> {
    text.split('x').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

/// A central arrangement given by rational normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<BigRational>>,
}

impl Arrangement {
    pub fn new(dim: usize, normals: Vec<Vec<BigRational>>) -> Result<Self> {
        for (i, n) in normals.iter().enumerate() {
            if n.len() != dim {
                return Err(Error::RankMismatch { expected: dim, found: n.len() });
            }
            if n.iter().all(Zero::is_zero) {
                return Err(Error::Invalid(format!("normal {i} is zero")));
            }
        }
        for i in 0..normals.len() {
            for j in i + 1..normals.len() {
                if rational_rank(&[normals[i].clone(), normals[j].clone()], dim) < 2 {
                    return Err(Error::DuplicateHyperplane(i, j));
                }
            }
        }
        Ok(Arrangement { dim, normals })
    }

    pub fn from_integer_normals(dim: usize, normals: &[Vec<i64>]) -> Result<Self> {
        let q = normals.iter().map(|n| n.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        Self::new(dim, q)
    }

    /// One normal per line as comma-separated rationals; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut normals = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<BigRational>()
                        .map_err(|_| Error::Parse { position: lineno + 1, message: format!("bad rational `{}`", tok.trim()) })
                })
                .collect::<Result<Vec<_>>>()?;
            normals.push(row);
        }
        let dim = normals.first().map_or(0, Vec::len);
        Self::new(dim, normals)
    }

    /// The hyperplanes orthogonal to the positive roots.
    pub fn root_arrangement(datum: &RootDatum) -> Self {
        let normals: Vec<Vec<i64>> = datum.positive_roots.iter().map(|r| r.0.clone()).collect();
        Self::from_integer_normals(datum.lattice_rank, &normals).expect("positive roots are pairwise independent")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    pub fn normals(&self) -> &[Vec<BigRational>] {
        &self.normals
    }

    fn rank_of(&self, set: &[usize]) -> usize {
        let rows: Vec<Vec<BigRational>> = set.iter().map(|&i| self.normals[i].clone()).collect();
        rational_rank(&rows, self.dim)
    }

    /// Flats as closed index sets with their rank, in order of increasing rank.
    pub fn flats(&self) -> Vec<(BTreeSet<usize>, usize)> {
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut out = vec![(BTreeSet::new(), 0)];
        seen.insert(BTreeSet::new());
        let mut frontier = vec![BTreeSet::new()];
        while let Some(flat) = frontier.pop() {
            for h in 0..self.len() {
                if flat.contains(&h) {
                    continue;
                }
                let mut gens: Vec<usize> = flat.iter().copied().collect();
                gens.push(h);
                let rank = self.rank_of(&gens);
                let closed: BTreeSet<usize> = (0..self.len())
                    .filter(|k| gens.contains(k) || {
                        let mut with = gens.clone();
                        with.push(*k);
                        self.rank_of(&with) == rank
                    })
                    .collect();
                if seen.insert(closed.clone()) {
                    out.push((closed.clone(), rank));
                    frontier.push(closed);
                }
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Number of regions, `Σ_X |μ(0̂, X)|` over the intersection poset.
    pub fn chamber_count(&self) -> u128 {
        let flats = self.flats();
        let mut mu: Vec<BigInt> = Vec::with_capacity(flats.len());
        for (k, (set, _)) in flats.iter().enumerate() {
            if k == 0 {
                mu.push(BigInt::from(1));
                continue;
            }
            let below: BigInt = (0..k).filter(|&j| flats[j].0.is_subset(set)).map(|j| mu[j].clone()).sum();
            mu.push(-below);
        }
        let total: BigInt = mu.iter().map(|m| m.abs()).sum();
        u128::try_from(total).expect("region count fits")
    }
}

/// Independent region count for arrangements of rank at most three:
/// distinct zero-free sign vectors of explicit interior points.
pub fn sign_vector_chamber_count(arr: &Arrangement) -> Option<usize> {
    let ess = essentialize(arr);
    let k = ess.first().map_or(0, Vec::len);
    let candidates: Vec<Vec<BigRational>> = match k {
        0 => return Some(1),
        1 => return Some(2),
        2 => planar_candidates(&ess),
        3 => spatial_candidates(&ess),
        _ => return None,
    };
    let signs: BTreeSet<Vec<i8>> = candidates
        .iter()
        .map(|p| ess.iter().map(|n| sign(&dot(n, p))).collect::<Vec<i8>>())
        .filter(|s| s.iter().all(|&x| x != 0))
        .collect();
    Some(signs.len())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn scaled(v: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    v.iter().map(|x| x * s).collect()
}

fn plus(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Restricts the arrangement to the span of its normals.
fn essentialize(arr: &Arrangement) -> Vec<Vec<BigRational>> {
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    for n in arr.normals() {
        let mut trial = basis.clone();
        trial.push(n.clone());
        if rational_rank(&trial, arr.dim()) == trial.len() {
            basis = trial;
        }
    }
    arr.normals().iter().map(|n| basis.iter().map(|b| dot(n, b)).collect()).collect()
}

fn planar_candidates(normals: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let dirs: Vec<Vec<BigRational>> = normals.iter().map(|n| vec![-n[1].clone(), n[0].clone()]).collect();
    let one = BigRational::from_integer(1.into());
    let minus = -one.clone();
    let mut out = Vec::new();
    for a in &dirs {
        for b in &dirs {
            for sa in [&one, &minus] {
                for sb in [&one, &minus] {
                    out.push(plus(&scaled(a, sa), &scaled(b, sb)));
                }
            }
        }
    }
    out
}

fn cross(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn spatial_candidates(normals: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let one = BigRational::from_integer(1.into());
    let minus = -one.clone();
    let mut out = Vec::new();
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            let line = cross(&normals[i], &normals[j]);
            if line.iter().all(Zero::is_zero) {
                continue;
            }
            for vs in [&one, &minus] {
                let v = scaled(&line, vs);
                let through: Vec<&Vec<BigRational>> = normals.iter().filter(|n| dot(n, &v).is_zero()).collect();
                let tangents: Vec<Vec<BigRational>> = through.iter().map(|n| cross(&v, n)).collect();
                for a in &tangents {
                    for b in &tangents {
                        for sa in [&one, &minus] {
                            for sb in [&one, &minus] {
                                let u = plus(&scaled(a, sa), &scaled(b, sb));
                                out.push(plus(&v, &scaled(&u, &epsilon(normals, &v, &u))));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// A step small enough that `v + εu` stays on the same side as `v` of every
/// plane not through `v`.
fn epsilon(normals: &[Vec<BigRational>], v: &[BigRational], u: &[BigRational]) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let one = BigRational::from_integer(1.into());
    normals
        .iter()
        .filter_map(|n| {
            let nv = dot(n, v).abs();
            (!nv.is_zero()).then(|| nv / (&two * dot(n, u).abs() + &one))
        })
        .min()
        .unwrap_or(one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::build_root_datum;

    #[test]
    fn betti_of_torus() {
        let r = kg_ranks(&[1, 2, 1]);
        assert_eq!((r.even_rank, r.odd_rank), (2, 2));
        assert_eq!((kg_ranks(&[1]).even_rank, kg_ranks(&[1]).odd_rank), (1, 0));
    }

    #[test]
    fn sphere_tables() {
        let (reduced, sphere) = adjoint_sphere_table(1).unwrap();
        assert_eq!(reduced.graded_table.unwrap(), ["0".to_string(), "R(G)".to_string()]);
        assert_eq!(sphere.graded_table.unwrap(), ["R(G)^2".to_string(), "0".to_string()]);
        let (_, sphere2) = adjoint_sphere_table(2).unwrap();
        assert_eq!((sphere2.even_rank, sphere2.odd_rank), (1, 1));
        assert!(adjoint_sphere_table(0).is_err());
    }

    #[test]
    fn inertia_examples() {
        assert_eq!(inertia_rank(0, 3, &[1, 2, 1]).unwrap(), 4);
        assert_eq!(inertia_rank(2, 1, &[1]).unwrap(), 4);
        assert!(inertia_rank(64, 4, &[1]).is_err());
    }

    #[test]
    fn family_predicate() {
        assert!(in_family_p(&parse_group_descriptor("SU3xSp2xU1")));
        assert!(!in_family_p(&["Spin7"]));
        assert!(in_family_p::<&str>(&[]));
        assert!(in_family_p(&["SU(3)"]));
    }

    #[test]
    fn small_arrangements() {
        assert_eq!(Arrangement::new(2, vec![]).unwrap().chamber_count(), 1);
        let one = Arrangement::from_integer_normals(2, &[vec![1, 0]]).unwrap();
        assert_eq!(one.chamber_count(), 2);
        assert_eq!(sign_vector_chamber_count(&one), Some(2));
        assert!(matches!(
            Arrangement::from_integer_normals(2, &[vec![1, 1], vec![-2, -2]]),
            Err(Error::DuplicateHyperplane(0, 1))
        ));
    }

    #[test]
    fn coordinate_planes_in_space() {
        let arr = Arrangement::from_integer_normals(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(arr.chamber_count(), 8);
        assert_eq!(sign_vector_chamber_count(&arr), Some(8));
    }

    #[test]
    fn weyl_chambers() {
        for (spec, order) in [("A2", 6), ("C2", 8), ("A3", 24), ("B3", 48), ("A1xA1", 4)] {
            let arr = Arrangement::root_arrangement(&build_root_datum(spec).unwrap());
            assert_eq!(arr.chamber_count(), order, "{spec}");
            assert_eq!(sign_vector_chamber_count(&arr), Some(order as usize), "{spec}");
        }
    }

    #[test]
    fn parses_rational_lines() {
        let arr = Arrangement::parse("# lines\n1, 0\n1/2, 1/2\n0,1\n").unwrap();
        assert_eq!(arr.chamber_count(), 6);
        assert!(matches!(Arrangement::parse("1,x"), Err(Error::Parse { position: 1, .. })));
    }
}
