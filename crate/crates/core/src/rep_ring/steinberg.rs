use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::linalg::{bareiss, rational_rank};
use crate::root_system::{Weight, WeylElement, WeylGroup};
use crate::weyl::{coset_cells, min_rep_in, require_min_rep, right_min_reps, CellPartition, ReflectionSubgroup, SubgroupFamily};

/// `p_v` as a weight.
pub fn p_weight(group: &WeylGroup, v: WeylElement) -> Weight {
    group.p_weight(v)
}

/// Sum of the distinct monomials in the `W_i`-orbit of `λ`.
pub fn orbit_sum(group: &WeylGroup, sub: &ReflectionSubgroup, lambda: &Weight) -> LaurentPoly {
    let orbit: BTreeSet<Weight> = sub.elements().iter().map(|&w| group.act_unchecked(w, lambda)).collect();
    orbit.into_iter().map(LaurentPoly::monomial).sum()
}

/// Invariance under the reflections generating `W_i`.
pub fn is_invariant(group: &WeylGroup, p: &LaurentPoly, sub: &ReflectionSubgroup) -> bool {
    sub.positive_roots()
        .iter()
        .filter_map(|a| group.reflection(a).ok())
        .all(|s| &p.act(group, s) == p)
}

/// `f_v^{W_i}`: the orbit sum of `v⁻¹ p_v`.
pub fn steinberg_f(group: &WeylGroup, sub: &ReflectionSubgroup, v: WeylElement) -> Result<LaurentPoly> {
    require_min_rep(group, sub, v)?;
    let seed = group.act_unchecked(group.inv(v), &group.p_weight(v));
    Ok(orbit_sum(group, sub, &seed))
}

/// The distinct elements `v·x̃` for `x̃ = m_{j,i}(x)`, `x ∈ W_j^r(v)`.
pub fn lemma_expansion(
    group: &WeylGroup,
    wj: &ReflectionSubgroup,
    wi: &ReflectionSubgroup,
    v: WeylElement,
) -> Result<Vec<WeylElement>> {
    let mut out = Vec::new();
    for x in right_min_reps(group, wj, v)? {
        let u = group.mul(v, min_rep_in(group, wj, wi, x)?);
        if !out.contains(&u) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Checks `f_v^{W_j} = Σ f_{v x̃}^{W_i}` and `p_v = p_{vx}` for `x ∈ W_j^r(v)`.
pub fn check_lemma_identity(
    group: &WeylGroup,
    wj: &ReflectionSubgroup,
    wi: &ReflectionSubgroup,
    v: WeylElement,
) -> Result<bool> {
    let lhs = steinberg_f(group, wj, v)?;
    let rhs: LaurentPoly = lemma_expansion(group, wj, wi, v)?
        .into_iter()
        .map(|u| steinberg_f(group, wi, u))
        .sum::<Result<LaurentPoly>>()?;
    let pv = group.p_weight(v);
    let weights_agree = right_min_reps(group, wj, v)?
        .into_iter()
        .all(|x| group.p_weight(group.mul(v, x)) == pv);
    Ok(lhs == rhs && weights_agree)
}

/// Steinberg bases of every member of a CIP family and the compatible basis `g`.
#[derive(Clone, Debug)]
pub struct SteinbergFamily {
    family: SubgroupFamily,
    cells: CellPartition,
    f_basis: Vec<BTreeMap<WeylElement, LaurentPoly>>,
    g_basis: BTreeMap<WeylElement, LaurentPoly>,
}

impl SteinbergFamily {
    pub fn new(group: &WeylGroup, family: SubgroupFamily) -> Result<Self> {
        let cells = coset_cells(group, &family)?;
        let mut f_basis = Vec::with_capacity(family.len());
        for i in 0..family.len() {
            let wi = family.member(i);
            let mut basis = BTreeMap::new();
            for &v in family.reps(i) {
                let f = steinberg_f(group, wi, v)?;
                if !is_invariant(group, &f, wi) {
                    return Err(Error::invariant(format!("f_{} is not invariant", group.word_string(v))));
                }
                basis.insert(v, f);
            }
            f_basis.push(basis);
        }
        let mut g_basis = BTreeMap::new();
        for v in group.elements() {
            if let Some(i) = cells.owner(v) {
                g_basis.insert(v, f_basis[i][&v].clone());
            }
        }
        let sf = SteinbergFamily { family, cells, f_basis, g_basis };
        sf.check_nesting()?;
        Ok(sf)
    }

    fn check_nesting(&self) -> Result<()> {
        for i in 0..self.family.len() {
            for j in 0..self.family.len() {
                if i == j || !self.family.member(i).is_subgroup_of(self.family.member(j)) {
                    continue;
                }
                let inner: BTreeSet<_> = self.family.reps(i).iter().collect();
                if !self.family.reps(j).iter().all(|v| inner.contains(v)) {
                    return Err(Error::invariant(format!("g-basis of member {j} is not nested in member {i}")));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &SubgroupFamily {
        &self.family
    }

    pub fn cells(&self) -> &CellPartition {
        &self.cells
    }

    pub fn owner(&self, v: WeylElement) -> Option<usize> {
        self.cells.owner(v)
    }

    pub fn f(&self, i: usize, v: WeylElement) -> Option<&LaurentPoly> {
        self.f_basis.get(i)?.get(&v)
    }

    /// `g_v`, defined when `v` lies in some `W_i^ℓ`.
    pub fn g(&self, v: WeylElement) -> Option<&LaurentPoly> {
        self.g_basis.get(&v)
    }

    /// `{g_v : v ∈ W_i^ℓ}` in canonical order.
    pub fn g_basis(&self, i: usize) -> Vec<(WeylElement, &LaurentPoly)> {
        self.family.reps(i).iter().map(|&v| (v, &self.g_basis[&v])).collect()
    }

    pub fn f_basis(&self, i: usize) -> Vec<(WeylElement, &LaurentPoly)> {
        self.f_basis[i].iter().map(|(&v, p)| (v, p)).collect()
    }
}

/// `compatible_g` as a free function.
pub fn compatible_g(sf: &SteinbergFamily, v: WeylElement) -> Result<LaurentPoly> {
    sf.g(v).cloned().ok_or_else(|| Error::Family("element lies in no W_i^l of the family".into()))
}

/// Integer matrix expressing `{g_v}` in `{f_v^{W_i}}`, indexed by `W_i^ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub index: Vec<WeylElement>,
    /// `entries[row][col]`: coefficient of `f_{index[col]}` in `g_{index[row]}`.
    pub entries: Vec<Vec<i64>>,
    pub determinant: i64,
}

pub fn transition_f_to_g(group: &WeylGroup, sf: &SteinbergFamily, i: usize) -> Result<TransitionMatrix> {
    let family = sf.family();
    let wi = family.member(i);
    let index = family.reps(i).to_vec();
    let pos: BTreeMap<WeylElement, usize> = index.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let n = index.len();
    let mut entries = vec![vec![0i64; n]; n];
    for (row, &v) in index.iter().enumerate() {
        let j = sf.owner(v).ok_or_else(|| Error::invariant("representative without a cell"))?;
        if j == i {
            entries[row][row] = 1;
            continue;
        }
        let wj = family.member(j);
        if !wi.is_subgroup_of(wj) {
            return Err(Error::invariant("owning member does not contain W_i"));
        }
        for u in lemma_expansion(group, wj, wi, v)? {
            let col = *pos
                .get(&u)
                .ok_or_else(|| Error::invariant(format!("{} is not in W_i^l", group.word_string(u))))?;
            entries[row][col] += 1;
        }
    }
    // symbolic confirmation of every row
    for (row, &v) in index.iter().enumerate() {
        let expanded: LaurentPoly = entries[row]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(col, &c)| sf.f(i, index[col]).unwrap().scale(&BigInt::from(c)))
            .sum();
        if Some(&expanded) != sf.g(v) {
            return Err(Error::invariant(format!("transition row {} disagrees with g", group.word_string(v))));
        }
    }
    let big: Vec<Vec<BigInt>> = entries.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let det = bareiss(&big, n)?.determinant.unwrap_or_else(BigInt::one);
    if det.abs() != BigInt::one() {
        return Err(Error::invariant(format!("transition matrix has determinant {det}")));
    }
    let determinant = if det.is_positive() { 1 } else { -1 };
    Ok(TransitionMatrix { index, entries, determinant })
}

/// Outcome of the randomized independence witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankWitness {
    pub columns: usize,
    pub points: usize,
    /// Number of points at which the specialized matrix had full column rank.
    pub full_rank_points: usize,
}

impl RankWitness {
    pub fn passed(&self) -> bool {
        self.full_rank_points == self.points
    }
}

/// Nonzero rational with numerator and denominator in `1..=bound`.
pub fn random_nonzero_rational(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    let num = rng.gen_range(1..=bound) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den = rng.gen_range(1..=bound);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Specializes the `|W| × |W_i^ℓ|` matrix `(w·g_v)` at random torus points.
/// Full column rank at a point certifies independence of `{g_v}` over
/// `R(T)^W`.
pub fn specialization_rank_witness(
    group: &WeylGroup,
    sf: &SteinbergFamily,
    i: usize,
    points: usize,
    seed: u64,
) -> RankWitness {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let basis = sf.g_basis(i);
    let columns = basis.len();
    let rows: Vec<Vec<LaurentPoly>> = group
        .elements()
        .map(|w| basis.iter().map(|(_, g)| g.act(group, w)).collect())
        .collect();
    let lattice_rank = group.datum().lattice_rank;
    let mut full = 0;
    for _ in 0..points {
        let point: Vec<BigRational> = (0..lattice_rank).map(|_| random_nonzero_rational(&mut rng, 97)).collect();
        let numeric: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|p| p.eval_rational(&point)).collect()).collect();
        if rational_rank(&numeric, columns) == columns {
            full += 1;
        }
    }
    RankWitness { columns, points, full_rank_points: full }
}

/// Coordinates `c_v ∈ R(G)` with `p = Σ c_v g_v` over `v ∈ W_i^ℓ`, by
/// Cramer's rule on the system `Σ_v c_v (u·g_v) = u·p`, `u ∈ W_i^ℓ`.
/// `p` must be `W_i`-invariant.
pub fn coordinates_in_g_basis(
    group: &WeylGroup,
    sf: &SteinbergFamily,
    i: usize,
    p: &LaurentPoly,
) -> Result<Vec<(WeylElement, LaurentPoly)>> {
    let wi = sf.family().member(i);
    if !is_invariant(group, p, wi) {
        return Err(Error::Invalid(format!("element is not invariant under {}", wi.label())));
    }
    let basis = sf.g_basis(i);
    let reps: Vec<WeylElement> = basis.iter().map(|&(v, _)| v).collect();
    let n = reps.len();
    let a: Vec<Vec<LaurentPoly>> =
        reps.iter().map(|&u| basis.iter().map(|(_, g)| g.act(group, u)).collect()).collect();
    let rhs: Vec<LaurentPoly> = reps.iter().map(|&u| p.act(group, u)).collect();
    let det = bareiss(&a, n)?.determinant.unwrap_or_else(LaurentPoly::zero);
    if det.is_zero() {
        return Err(Error::invariant("g-basis system is singular"));
    }
    let mut coords = Vec::with_capacity(n);
    for b in 0..n {
        let mut ab = a.clone();
        for (row, r) in ab.iter_mut().zip(&rhs) {
            row[b] = r.clone();
        }
        let num = bareiss(&ab, n)?.determinant.unwrap_or_else(LaurentPoly::zero);
        let c = num
            .exact_div(&det)
            .ok_or_else(|| Error::invariant("Cramer quotient is not a Laurent polynomial"))?;
        coords.push((reps[b], c));
    }
    let whole = crate::weyl::ReflectionSubgroup::whole(group);
    let rebuilt: LaurentPoly = coords.iter().zip(&basis).map(|((_, c), (_, g))| c * *g).sum();
    if &rebuilt != p || coords.iter().any(|(_, c)| !is_invariant(group, c, &whole)) {
        return Err(Error::invariant("g-basis coordinates failed verification"));
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::SubgroupSpec;

    fn mono(e: &[i64]) -> LaurentPoly {
        LaurentPoly::monomial(Weight(e.to_vec()))
    }

    fn a2_chain() -> (WeylGroup, SteinbergFamily) {
        let g = WeylGroup::from_spec("A2").unwrap();
        let fam = SubgroupFamily::standard_chain(&g);
        let sf = SteinbergFamily::new(&g, fam).unwrap();
        (g, sf)
    }

    #[test]
    fn orbit_sum_examples() {
        let a1 = WeylGroup::from_spec("A1").unwrap();
        let sigma = orbit_sum(&a1, &ReflectionSubgroup::whole(&a1), &Weight(vec![1]));
        assert_eq!(sigma, &mono(&[1]) + &mono(&[-1]));
        let a2 = WeylGroup::from_spec("A2").unwrap();
        let s = orbit_sum(&a2, &ReflectionSubgroup::whole(&a2), &Weight(vec![1, 0]));
        assert_eq!(s.term_count(), 3);
        assert_eq!(orbit_sum(&a2, &ReflectionSubgroup::trivial(&a2), &Weight(vec![2, 1])), mono(&[2, 1]));
    }

    #[test]
    fn f_values_for_w1() {
        let (g, sf) = a2_chain();
        let w = |s: &str| g.parse_word(s).unwrap();
        // x1x3 = (1,-1), x2x3 = (-1,0), x3 = (0,-1)
        assert_eq!(sf.f(1, w("s2")).unwrap(), &(&mono(&[1, -1]) + &mono(&[-1, 0])));
        assert_eq!(sf.f(1, w("s1s2")).unwrap(), &mono(&[0, -1]));
        assert_eq!(sf.g(w("s2s1")).unwrap(), &mono(&[-1, 0]));
    }

    #[test]
    fn rejects_non_representative() {
        let g = WeylGroup::from_spec("A2").unwrap();
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert!(steinberg_f(&g, &w1, g.parse_word("s1").unwrap()).is_err());
    }

    #[test]
    fn transition_for_trivial_member_has_one_off_diagonal_unit() {
        let (g, sf) = a2_chain();
        let t = transition_f_to_g(&g, &sf, 2).unwrap();
        let off: usize = (0..6).map(|r| (0..6).filter(|&c| c != r && t.entries[r][c] != 0).count()).sum();
        assert_eq!(off, 1);
        let r = t.index.iter().position(|&v| v == g.parse_word("s2").unwrap()).unwrap();
        let c = t.index.iter().position(|&v| v == g.parse_word("s2s1").unwrap()).unwrap();
        assert_eq!(t.entries[r][c], 1);
        assert_eq!(t.determinant, 1);
    }

    #[test]
    fn cramer_coordinates_of_sigma_shift() {
        let g = WeylGroup::from_spec("A1").unwrap();
        let sf = SteinbergFamily::new(&g, SubgroupFamily::standard_chain(&g)).unwrap();
        // x = σ·1 − x⁻¹ in the basis {g_1 = 1, g_s = x⁻¹}
        let coords = coordinates_in_g_basis(&g, &sf, 1, &mono(&[1])).unwrap();
        assert_eq!(coords[0].1, &mono(&[1]) + &mono(&[-1]));
        assert_eq!(coords[1].1, LaurentPoly::constant(1, -1));
    }

    #[test]
    fn witness_is_full_rank() {
        let (g, sf) = a2_chain();
        for i in 0..3 {
            assert!(specialization_rank_witness(&g, &sf, i, 5, 7).passed());
        }
    }
}
