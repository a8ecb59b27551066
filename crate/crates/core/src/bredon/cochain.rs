use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::complex::WCWComplex;
use crate::error::{Error, Result};
use crate::linalg::{bareiss, cochain_cohomology, rational_rank, solve_rational, IntegerGroup, IntegerMatrix};
use crate::rep_ring::{coordinates_in_g_basis, group_ring_m, random_nonzero_rational, LaurentPoly};
use crate::root_system::WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientSystem {
    /// Invariants of the representation ring of the torus.
    Rt,
    /// Invariants of `R(G) ⊗ Z[W]`.
    Zw,
}

impl fmt::Display for CoefficientSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientSystem::Rt => "rt",
            CoefficientSystem::Zw => "zw",
        })
    }
}

impl FromStr for CoefficientSystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rt" | "r_t" => Ok(CoefficientSystem::Rt),
            "zw" | "z_w" => Ok(CoefficientSystem::Zw),
            other => Err(Error::Invalid(format!("unknown coefficient system `{other}`"))),
        }
    }
}

/// Dense matrix over the Laurent ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix { rows, cols, entries: vec![vec![LaurentPoly::zero(); cols]; rows] }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let mut out = LaurentMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.entries[k][j].is_zero() {
                        out.entries[i][j] = &out.entries[i][j] + &(&self.entries[i][k] * &other.entries[k][j]);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(LaurentPoly::is_zero)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(bareiss(&self.entries, self.cols)?.rank)
    }

    pub fn eval_signs(&self, signs: &[i64]) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|r| r.iter().map(|p| p.eval_signs(signs)).collect()).collect(),
        }
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> Vec<Vec<BigRational>> {
        self.entries.iter().map(|r| r.iter().map(|p| p.eval_rational(point)).collect()).collect()
    }
}

/// Equivariant cochains in the compatible bases.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    pub system: CoefficientSystem,
    pub lattice_rank: usize,
    /// Per degree, the basis `(cell, v)` with `v ∈ W_σ^ℓ`.
    pub basis: Vec<Vec<(usize, WeylElement)>>,
    /// `differentials[n]: C^n → C^{n+1}`, shape `dim C^{n+1} × dim C^n`.
    pub differentials: Vec<LaurentMatrix>,
}

impl CochainComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn d_squared_is_zero(&self) -> bool {
        self.differentials.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }
}

/// Assembles `C^n = ⊕_σ M(W/W_σ)` with `δ(x)_σ = Σ [τ:σ]·w·x_τ`.
pub fn cochain_complex(complex: &WCWComplex, system: CoefficientSystem) -> Result<CochainComplex> {
    let group = complex.group();
    let sf = complex.steinberg();
    let family = complex.family();
    let top = complex.top_dim().map_or(0, |d| d + 1);
    let mut basis: Vec<Vec<(usize, WeylElement)>> = vec![Vec::new(); top];
    for (c, cell) in complex.cells().iter().enumerate() {
        for &v in family.reps(cell.isotropy) {
            basis[cell.dim].push((c, v));
        }
    }
    let position: Vec<BTreeMap<(usize, WeylElement), usize>> =
        basis.iter().map(|b| b.iter().enumerate().map(|(k, &key)| (key, k)).collect()).collect();
    let lattice_rank = group.datum().lattice_rank;

    let mut differentials = Vec::new();
    for n in 0..top.saturating_sub(1) {
        let mut m = LaurentMatrix::zeros(basis[n + 1].len(), basis[n].len());
        for sigma in complex.cells_of_dim(n + 1) {
            let i_sigma = complex.cells()[sigma].isotropy;
            for term in complex.boundary(sigma) {
                let i_tau = complex.cells()[term.to].isotropy;
                let mult = BigInt::from(term.mult);
                for &v in family.reps(i_tau) {
                    let col = position[n][&(term.to, v)];
                    let image: Vec<(WeylElement, LaurentPoly)> = if term.translate == WeylElement::IDENTITY {
                        vec![(v, LaurentPoly::one(lattice_rank))]
                    } else {
                        match system {
                            CoefficientSystem::Rt => {
                                let g = sf.g(v).ok_or_else(|| Error::invariant("missing g"))?;
                                coordinates_in_g_basis(group, sf, i_sigma, &g.act(group, term.translate))?
                            }
                            CoefficientSystem::Zw => zw_coordinates(complex, i_sigma, v, term.translate)?,
                        }
                    };
                    for (u, c) in image {
                        let row = *position[n + 1].get(&(sigma, u)).ok_or_else(|| {
                            Error::Complex(format!(
                                "basis element {} of `{}` has no image in `{}`",
                                group.word_string(v),
                                complex.cells()[term.to].id,
                                complex.cells()[sigma].id
                            ))
                        })?;
                        m.entries[row][col] = &m.entries[row][col] + &c.scale(&mult);
                    }
                }
            }
        }
        differentials.push(m);
    }
    let cc = CochainComplex { system, lattice_rank, basis, differentials };
    if !cc.d_squared_is_zero() {
        return Err(Error::invariant("equivariant differential does not square to zero"));
    }
    Ok(cc)
}

/// Integer coordinates of `w·m_v` in `{m_u : u ∈ W_σ^ℓ}`.
fn zw_coordinates(
    complex: &WCWComplex,
    i_sigma: usize,
    v: WeylElement,
    w: WeylElement,
) -> Result<Vec<(WeylElement, LaurentPoly)>> {
    let group = complex.group();
    let sf = complex.steinberg();
    let order = group.order();
    let to_q = |e: &crate::rep_ring::GroupRingElement| -> Vec<BigRational> {
        e.dense(order).into_iter().map(BigRational::from_integer).collect()
    };
    let target = to_q(&group_ring_m(group, sf, v)?.left_mul(group, w));
    let reps = complex.family().reps(i_sigma);
    let columns: Vec<Vec<BigRational>> =
        reps.iter().map(|&u| Ok(to_q(&group_ring_m(group, sf, u)?))).collect::<Result<_>>()?;
    let x = solve_rational(&columns, &target)
        .ok_or_else(|| Error::invariant("translated group-ring element leaves the invariant span"))?;
    let rank = group.datum().lattice_rank;
    reps.iter()
        .zip(x)
        .map(|(&u, c)| {
            if !c.is_integer() {
                return Err(Error::invariant("group-ring coordinates are not integral"));
            }
            Ok((u, LaurentPoly::term(crate::root_system::Weight::zero(rank), c.to_integer())))
        })
        .collect()
}

/// Ranks over the fraction field, cross-checked at a random rational point.
pub fn rational_cohomology_ranks(cc: &CochainComplex, seed: u64) -> Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let point: Vec<BigRational> = (0..cc.lattice_rank).map(|_| random_nonzero_rational(&mut rng, 97)).collect();
    let mut ranks = Vec::with_capacity(cc.differentials.len());
    for d in &cc.differentials {
        let exact = d.rank()?;
        let witness = rational_rank(&d.eval_rational(&point), d.cols);
        if exact != witness {
            return Err(Error::invariant(format!(
                "symbolic rank {exact} disagrees with specialized rank {witness}"
            )));
        }
        ranks.push(exact);
    }
    let dims = cc.dims();
    Ok((0..dims.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = n.checked_sub(1).and_then(|k| ranks.get(k)).copied().unwrap_or(0);
            dims[n] - out - inc
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub point: Vec<i64>,
    pub cohomology: Vec<IntegerGroup>,
}

/// Integer cohomology of the complex specialized at a `±1` point.
pub fn specialize_probe(cc: &CochainComplex, signs: &[i64]) -> Result<ProbeResult> {
    if signs.len() != cc.lattice_rank {
        return Err(Error::RankMismatch { expected: cc.lattice_rank, found: signs.len() });
    }
    if signs.iter().any(|s| s.abs() != 1) {
        return Err(Error::Invalid("probe coordinates must be +1 or -1".into()));
    }
    let maps: Vec<IntegerMatrix> = cc.differentials.iter().map(|d| d.eval_signs(signs)).collect();
    Ok(ProbeResult { point: signs.to_vec(), cohomology: cochain_cohomology(&cc.dims(), &maps) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub system: CoefficientSystem,
    pub rational_ranks: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler_characteristic: i64,
    pub probes: Vec<ProbeResult>,
}

impl RankReport {
    pub fn total_rank(&self) -> usize {
        self.rational_ranks.iter().sum()
    }

    pub fn matches_betti(&self) -> bool {
        self.total_rank() == self.betti.iter().sum::<usize>()
    }
}

pub fn rank_report(
    complex: &WCWComplex,
    system: CoefficientSystem,
    probes: &[Vec<i64>],
    seed: u64,
) -> Result<RankReport> {
    let cc = cochain_complex(complex, system)?;
    let rational_ranks = rational_cohomology_ranks(&cc, seed)?;
    let betti = complex.expand_ordinary_complex().betti();
    let probes = probes.iter().map(|p| specialize_probe(&cc, p)).collect::<Result<_>>()?;
    Ok(RankReport { system, rational_ranks, betti, euler_characteristic: complex.euler_characteristic(), probes })
}

/// For complexes with identity translates only, the two systems yield the
/// same differential matrices in the `g ↔ m` identification.
pub fn psi_transport_agrees(complex: &WCWComplex) -> Result<Option<bool>> {
    if !complex.identity_translates_only() {
        return Ok(None);
    }
    let rt = cochain_complex(complex, CoefficientSystem::Rt)?;
    let zw = cochain_complex(complex, CoefficientSystem::Zw)?;
    Ok(Some(rt.basis == zw.basis && rt.differentials == zw.differentials))
}
