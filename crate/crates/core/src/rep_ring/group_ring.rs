use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPoly, SteinbergFamily};
use crate::error::{Error, Result};
use crate::root_system::{Weight, WeylElement, WeylGroup};
use crate::weyl::{require_min_rep, ReflectionSubgroup};

/// An element of `Z[W]` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<WeylElement, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: WeylElement) -> Self {
        let mut e = Self::zero();
        e.add_term(w, BigInt::one());
        e
    }

    pub fn add_term(&mut self, w: WeylElement, c: BigInt) {
        let slot = self.terms.entry(w).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (WeylElement, &BigInt)> {
        self.terms.iter().map(|(&w, c)| (w, c))
    }

    pub fn coefficient(&self, w: WeylElement) -> BigInt {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `u · a`.
    pub fn left_mul(&self, group: &WeylGroup, u: WeylElement) -> Self {
        GroupRingElement { terms: self.terms.iter().map(|(&w, c)| (group.mul(u, w), c.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        out
    }

    /// Coefficient vector indexed by `W` in canonical order.
    pub fn dense(&self, order: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); order];
        for (&w, c) in &self.terms {
            v[w.index()] = c.clone();
        }
        v
    }

    /// Invariance under left multiplication by `W_i`.
    pub fn is_left_invariant(&self, group: &WeylGroup, sub: &ReflectionSubgroup) -> bool {
        sub.elements().iter().all(|&u| &self.left_mul(group, u) == self)
    }

    pub fn display(&self, group: &WeylGroup) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let tokens: Vec<String> = self.terms.iter().map(|(&w, c)| format!("{}:{c}", group.word_string(w))).collect();
        tokens.join(" ")
    }
}

/// `l_v^{W_i} = Σ_{x∈W_i} x⁻¹ v⁻¹`.
pub fn group_ring_l(group: &WeylGroup, sub: &ReflectionSubgroup, v: WeylElement) -> Result<GroupRingElement> {
    require_min_rep(group, sub, v)?;
    let vinv = group.inv(v);
    let mut out = GroupRingElement::zero();
    for &x in sub.elements() {
        out.add_term(group.mul(group.inv(x), vinv), BigInt::one());
    }
    Ok(out)
}

/// `m_v = l_v^{W_{i(v)}}`.
pub fn group_ring_m(group: &WeylGroup, sf: &SteinbergFamily, v: WeylElement) -> Result<GroupRingElement> {
    let i = sf.owner(v).ok_or_else(|| Error::Family("element lies in no W_i^l of the family".into()))?;
    group_ring_l(group, sf.family().member(i), v)
}

/// One index of the correspondence `g_v ↔ m_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiEntry {
    pub v: WeylElement,
    pub g: LaurentPoly,
    pub m: GroupRingElement,
}

/// `ψ_{W_i}` on the basis indexed by `W_i^ℓ`.
pub fn psi_basis_map(group: &WeylGroup, sf: &SteinbergFamily, i: usize) -> Result<Vec<PsiEntry>> {
    let wi = sf.family().member(i);
    sf.family()
        .reps(i)
        .iter()
        .map(|&v| {
            let m = group_ring_m(group, sf, v)?;
            if !m.is_left_invariant(group, wi) {
                return Err(Error::invariant(format!("m_{} is not invariant", group.word_string(v))));
            }
            let g = sf.g(v).cloned().ok_or_else(|| Error::invariant("missing g"))?;
            Ok(PsiEntry { v, g, m })
        })
        .collect()
}

/// For every nested pair `W_i ⊆ W_j` the map of `W_j` is the restriction
/// of the map of `W_i` to the shared indices.
pub fn check_psi_compatibility(group: &WeylGroup, sf: &SteinbergFamily) -> Result<bool> {
    let n = sf.family().len();
    let maps: Vec<BTreeMap<WeylElement, PsiEntry>> = (0..n)
        .map(|i| Ok(psi_basis_map(group, sf, i)?.into_iter().map(|e| (e.v, e)).collect()))
        .collect::<Result<_>>()?;
    for i in 0..n {
        for j in 0..n {
            if i == j || !sf.family().member(i).is_subgroup_of(sf.family().member(j)) {
                continue;
            }
            for (v, e) in &maps[j] {
                if maps[i].get(v) != Some(e) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// An element of `A ⊗ R(T)`: pairs of a group element and a weight with
/// integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistElement {
    terms: BTreeMap<(WeylElement, Weight), BigInt>,
}

impl TwistElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(v: WeylElement, m: Weight) -> Self {
        let mut t = Self::zero();
        t.add_term(v, m, BigInt::one());
        t
    }

    pub fn from_parts(parts: &[(WeylElement, LaurentPoly)]) -> Self {
        let mut t = Self::zero();
        for (v, p) in parts {
            for (w, c) in p.terms() {
                t.add_term(*v, w.clone(), c.clone());
            }
        }
        t
    }

    pub fn add_term(&mut self, v: WeylElement, m: Weight, c: BigInt) {
        let key = (v, m);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WeylElement, Weight), &BigInt)> {
        self.terms.iter()
    }

    fn map(&self, f: impl Fn(WeylElement, &Weight) -> (WeylElement, Weight)) -> Self {
        let mut out = Self::zero();
        for ((v, m), c) in &self.terms {
            let (v2, m2) = f(*v, m);
            out.add_term(v2, m2, c.clone());
        }
        out
    }

    /// `u·(v⊗m) = uv⊗m`.
    pub fn act_source(&self, group: &WeylGroup, u: WeylElement) -> Self {
        self.map(|v, m| (group.mul(u, v), m.clone()))
    }

    /// `u·(v⊗m) = uv⊗u·m`.
    pub fn act_diagonal(&self, group: &WeylGroup, u: WeylElement) -> Self {
        self.map(|v, m| (group.mul(u, v), group.act_unchecked(u, m)))
    }
}

/// `φ(v⊗m) = v⊗v·m`.
pub fn regular_twist(group: &WeylGroup, x: &TwistElement) -> TwistElement {
    x.map(|v, m| (v, group.act_unchecked(v, m)))
}

/// `φ⁻¹(v⊗m) = v⊗v⁻¹·m`.
pub fn regular_twist_inverse(group: &WeylGroup, x: &TwistElement) -> TwistElement {
    x.map(|v, m| (v, group.act_unchecked(group.inv(v), m)))
}

/// Weights with `|λ|₁ ≤ degree`, closed under `W`.
pub fn monomial_truncation(group: &WeylGroup, degree: i64) -> BTreeSet<Weight> {
    let rank = group.datum().lattice_rank;
    let mut base = vec![Weight::zero(rank)];
    for k in 0..rank {
        base = base
            .into_iter()
            .flat_map(|w| {
                let used: i64 = w.coords().iter().map(|c| c.abs()).sum();
                let room = degree - used;
                (-room..=room).map(move |e| {
                    let mut next = w.clone();
                    next.0[k] = e;
                    next
                })
            })
            .collect();
    }
    base.into_iter()
        .flat_map(|w| group.elements().map(move |u| (u, w.clone())).collect::<Vec<_>>())
        .map(|(u, w)| group.act_unchecked(u, &w))
        .collect()
}

/// Exhaustive check that `φ` permutes the basis `W × M` of the truncation,
/// inverts with `φ⁻¹` and intertwines the two `W`-actions. Returns the
/// number of failing basis elements.
pub fn check_regular_twist(group: &WeylGroup, degree: i64) -> usize {
    let monomials = monomial_truncation(group, degree);
    let mut failures = 0;
    let mut images = BTreeSet::new();
    for v in group.elements() {
        for m in &monomials {
            let x = TwistElement::pure(v, m.clone());
            let y = regular_twist(group, &x);
            let image_ok = y.terms().count() == 1
                && y.terms().all(|((v2, m2), c)| *v2 == v && monomials.contains(m2) && c.is_one());
            let inverse_ok = regular_twist_inverse(group, &y) == x && regular_twist(group, &regular_twist_inverse(group, &x)) == x;
            let equivariant = group
                .elements()
                .all(|u| regular_twist(group, &x.act_source(group, u)) == y.act_diagonal(group, u));
            let fresh = y.terms().next().map(|(k, _)| images.insert(k.clone())).unwrap_or(false);
            if !(image_ok && inverse_ok && equivariant && fresh) {
                failures += 1;
            }
        }
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::SubgroupFamily;

    #[test]
    fn a1_chain_psi() {
        let g = WeylGroup::from_spec("A1").unwrap();
        let sf = SteinbergFamily::new(&g, SubgroupFamily::standard_chain(&g)).unwrap();
        let map = psi_basis_map(&g, &sf, 1).unwrap();
        let s = g.parse_word("s1").unwrap();
        assert_eq!(map.len(), 2);
        assert_eq!(map[0].m, GroupRingElement::basis(g.identity()).add(&GroupRingElement::basis(s)));
        assert_eq!(map[1].m, GroupRingElement::basis(s));
        assert_eq!(map[1].g, LaurentPoly::monomial(Weight(vec![-1])));
        assert!(check_psi_compatibility(&g, &sf).unwrap());
    }

    #[test]
    fn l_for_trivial_subgroup_is_inverse() {
        let g = WeylGroup::from_spec("A2").unwrap();
        let v = g.parse_word("s1s2").unwrap();
        let l = group_ring_l(&g, &ReflectionSubgroup::trivial(&g), v).unwrap();
        assert_eq!(l, GroupRingElement::basis(g.inv(v)));
    }

    #[test]
    fn twist_on_a1() {
        let g = WeylGroup::from_spec("A1").unwrap();
        let s = g.parse_word("s1").unwrap();
        let y = regular_twist(&g, &TwistElement::pure(s, Weight(vec![1])));
        assert_eq!(y, TwistElement::pure(s, Weight(vec![-1])));
        assert_eq!(check_regular_twist(&g, 3), 0);
    }
}
